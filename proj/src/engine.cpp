#include "leveldiff/engine.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace leveldiff {

bool check(nanoseconds m1, nanoseconds m2, double threshold)
{
    if (m1.count() <= 0 || m2.count() <= 0) {
        throw error(errc::non_positive_measurement, "measurements must be positive");
    }
    return compute_ratio(m1, m2) > threshold;
}

std::vector<program_candidate> prioritize(std::span<const program_candidate> programs, const history &h)
{
    struct keyed {
        const program_candidate *program;
        const measurement_record *latest;
    };
    std::vector<keyed> keys;
    keys.reserve(programs.size());
    for (const auto &p : programs) {
        keys.push_back({&p, h.latest(p.id)});
    }
    std::stable_sort(keys.begin(), keys.end(), [](const keyed &a, const keyed &b) {
        if ((a.latest != nullptr) != (b.latest != nullptr)) {
            return a.latest != nullptr;
        }
        if (a.latest != nullptr && a.latest->ratio != b.latest->ratio) {
            return a.latest->ratio > b.latest->ratio;
        }
        return a.program->id < b.program->id;
    });
    std::vector<program_candidate> ordered;
    ordered.reserve(keys.size());
    for (const auto &k : keys) {
        ordered.push_back(*k.program);
    }
    return ordered;
}

std::vector<program_candidate> select_top_k(std::span<const program_candidate> ordered,
                                            const std::map<std::string, bool> &active, std::int64_t k)
{
    std::vector<program_candidate> selected;
    if (k <= 0) {
        return selected;
    }
    for (const auto &p : ordered) {
        if (static_cast<std::int64_t>(selected.size()) == k) {
            break;
        }
        auto it = active.find(p.id);
        if (it != active.end() && it->second) {
            selected.push_back(p);
        }
    }
    return selected;
}

history update_history(history h, const std::string &program_id, measurement_record record)
{
    h.append(program_id, std::move(record));
    return h;
}

namespace {

struct level_task {
    const program_candidate *program = nullptr;
    measurement_record record;
    std::vector<std::string> notes;
    std::size_t executions = 0;
    bool reused = false;
};

void measure(level_task &task, const campaign_config &config, const executor &exec, std::size_t level)
{
    const auto &program = *task.program;
    const auto n = config.schedule.ns[level];
    auto &rec = task.record;
    rec.program_id = program.id;
    rec.pair_label = config.pair.label;
    rec.level_index = level;
    rec.iterations = n;

    auto run = [&](const runtime_configuration &c) {
        try {
            return exec.execute(program, c, n, level);
        } catch (const std::exception &e) {
            execution_result r;
            r.status = exec_status::failed;
            r.diagnostic = e.what();
            return r;
        }
    };
    auto failure = [](const execution_result &r, outcome as_error) {
        return r.status == exec_status::timeout ? outcome::timeout : as_error;
    };

    const auto base = run(config.pair.baseline);
    ++task.executions;
    rec.m1 = base.duration;
    rec.wall_time_total = base.wall;
    rec.exception_signature = base.exception_signature;
    if (base.source == timing_source::wall_clock) {
        task.notes.push_back("wall-clock timing (baseline, level " + std::to_string(level) + ")");
    }
    if (base.status != exec_status::ok || base.duration.count() <= 0) {
        rec.result = failure(base, outcome::baseline_error);
        task.notes.push_back("baseline: " + (base.diagnostic.empty() ? "non-positive measurement" : base.diagnostic));
        return;
    }

    const auto subj = run(config.pair.subject);
    ++task.executions;
    rec.m2 = subj.duration;
    rec.wall_time_total += subj.wall;
    if (subj.exception_signature) {
        rec.exception_signature = subj.exception_signature;
    }
    if (subj.source == timing_source::wall_clock) {
        task.notes.push_back("wall-clock timing (subject, level " + std::to_string(level) + ")");
    }
    if (subj.status != exec_status::ok || subj.duration.count() <= 0) {
        rec.result = failure(subj, outcome::subject_error);
        task.notes.push_back("subject: " + (subj.diagnostic.empty() ? "non-positive measurement" : subj.diagnostic));
        return;
    }
    rec.result = outcome::ok;
    rec.ratio = compute_ratio(rec.m1, rec.m2);
}

void measure_all(const std::vector<level_task *> &tasks, const campaign_config &config, const executor &exec,
                 std::size_t level)
{
    const std::size_t workers = std::min(std::max<std::size_t>(config.parallelism, 1), tasks.size());
    if (workers <= 1) {
        for (auto *t : tasks) {
            measure(*t, config, exec, level);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < tasks.size(); i = next++) {
                measure(*tasks[i], config, exec, level);
            }
        });
    }
}

} // namespace

campaign_result run_campaign(std::span<const program_candidate> corpus, const campaign_config &config,
                             const executor &exec, const record_sink &on_record)
{
    if (corpus.empty()) {
        throw error(errc::config_error, "campaign corpus is empty");
    }
    require_valid(config.schedule);
    if (config.pair.baseline.id == config.pair.subject.id) {
        throw error(errc::config_error, "baseline and subject configurations must differ");
    }
    std::set<std::string> ids;
    for (const auto &p : corpus) {
        if (!ids.insert(p.id).second) {
            throw error(errc::duplicate_id, "duplicate program id '" + p.id + "'");
        }
    }
    exec.ensure_available(corpus, config.pair);

    const auto &schedule = config.schedule;
    const std::size_t levels = schedule.levels();

    campaign_result result;
    result.cost.resize(levels);
    std::map<std::string, bool> active;
    for (const auto &p : corpus) {
        active[p.id] = true;
    }

    for (std::size_t level = 0; level < levels; ++level) {
        auto ordered = prioritize(corpus, result.history);
        std::vector<program_candidate> selected;
        if (level > 0 && schedule.top_ks[level - 1] > 0) {
            selected = select_top_k(ordered, active, schedule.top_ks[level - 1]);
        } else {
            for (auto &p : ordered) {
                if (active[p.id]) {
                    selected.push_back(std::move(p));
                }
            }
        }

        std::vector<level_task> tasks(selected.size());
        std::vector<level_task *> to_run;
        for (std::size_t i = 0; i < selected.size(); ++i) {
            tasks[i].program = &selected[i];
            auto provided = config.provided.end();
            if (level == 0 && config.first_level == first_level_policy::reuse_provided) {
                provided = config.provided.find(selected[i].id);
            }
            if (provided != config.provided.end()) {
                auto rec = provided->second;
                rec.program_id = selected[i].id;
                rec.level_index = 0;
                if (rec.pair_label.empty()) {
                    rec.pair_label = config.pair.label;
                }
                if (rec.result == outcome::ok) {
                    rec.ratio = compute_ratio(rec.m1, rec.m2);
                }
                tasks[i].record = std::move(rec);
                tasks[i].reused = true;
                tasks[i].notes.push_back("level 0 reused from provided measurements");
                ++result.cost[level].reused;
            } else {
                to_run.push_back(&tasks[i]);
            }
        }
        measure_all(to_run, config, exec, level);

        // Apply in prioritized order so logs and histories are independent of
        // worker scheduling.
        auto &cost = result.cost[level];
        for (auto &task : tasks) {
            const auto &id = task.program->id;
            const auto &rec = task.record;
            if (on_record) {
                on_record(rec);
            }
            if (!task.reused) {
                cost.executions += task.executions;
                ++cost.programs;
            }
            cost.measured += rec.m1 + rec.m2;
            cost.wall += rec.wall_time_total;
            auto &notes = result.annotations[id];
            notes.insert(notes.end(), task.notes.begin(), task.notes.end());

            result.history.append(id, rec);
            if (rec.result != outcome::ok) {
                active[id] = false;
                result.verdicts[id] = verdict::errored(rec.result);
            } else if (rec.m1.count() <= 0 || rec.m2.count() <= 0) {
                active[id] = false;
                result.verdicts[id] = verdict::errored(rec.m1.count() <= 0 ? outcome::baseline_error
                                                                           : outcome::subject_error);
                notes.push_back("non-positive measurement");
            } else if (!check(rec.m1, rec.m2, schedule.ths[level])) {
                active[id] = false;
                result.verdicts[id] = verdict::filtered(level);
            }
        }
    }

    for (const auto &p : corpus) {
        if (!active[p.id]) {
            continue;
        }
        result.verdicts[p.id] = verdict::survivor();
        const auto *latest = result.history.latest(p.id);
        survivor_entry entry{p.id, latest != nullptr ? latest->ratio : 0.0,
                             latest != nullptr ? latest->level_index : 0};
        if (latest != nullptr && latest->level_index + 1 < levels) {
            result.annotations[p.id].push_back("stale: last measured at level " +
                                               std::to_string(latest->level_index));
        }
        result.survivors.push_back(std::move(entry));
    }
    std::sort(result.survivors.begin(), result.survivors.end(), [](const auto &a, const auto &b) {
        return a.final_ratio != b.final_ratio ? a.final_ratio > b.final_ratio : a.program_id < b.program_id;
    });
    std::erase_if(result.annotations, [](const auto &kv) { return kv.second.empty(); });
    return result;
}

} // namespace leveldiff
