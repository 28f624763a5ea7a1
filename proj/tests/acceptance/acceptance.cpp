// Acceptance suite: one PASS/FAIL line per criterion.
//
//   leveldiff_acceptance [--only N]... [--skip N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "leveldiff/corpus.hpp"
#include "leveldiff/engine.hpp"
#include "leveldiff/executors.hpp"
#include "leveldiff/filters.hpp"
#include "support/oracles.hpp"

using namespace leveldiff;
using namespace leveldiff::testing;
using clock_type = std::chrono::steady_clock;

namespace {

struct outcome_line {
    bool pass = false;
    std::string detail;
};

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

configuration_pair synthetic_pair()
{
    configuration_pair pair;
    pair.label = "SIM";
    pair.baseline.id = "baseline";
    pair.baseline.command_prefix = {"sim"};
    pair.subject.id = "subject";
    pair.subject.command_prefix = {"sim"};
    return pair;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2 share the randomized trials.

struct random_trial {
    random_corpus corpus;
    level_schedule schedule;
    std::uint64_t stream_seed = 0;
    std::size_t parallelism = 1;
};

std::vector<random_trial> make_trials(std::size_t count)
{
    std::mt19937_64 rng(20240601);
    std::vector<random_trial> trials;
    for (std::size_t i = 0; i < count; ++i) {
        random_trial t;
        t.corpus = make_random_corpus(rng, 1 + rng() % 60);
        t.schedule = make_random_schedule(rng);
        t.stream_seed = rng();
        t.parallelism = 1 + rng() % 4;
        trials.push_back(std::move(t));
    }
    return trials;
}

constexpr std::size_t random_trial_count = 250;

outcome_line criterion_oracle_equivalence()
{
    const auto start = clock_type::now();
    const auto trials = make_trials(random_trial_count);
    std::size_t matched = 0, programs = 0, survivors = 0;
    for (const auto &t : trials) {
        simulated_executor exec(t.corpus.models, t.stream_seed);
        campaign_config cfg{t.corpus.pair, t.schedule};
        cfg.parallelism = t.parallelism;
        const auto result = run_campaign(t.corpus.programs, cfg, exec);
        std::set<std::string> got;
        for (const auto &s : result.survivors) {
            got.insert(s.program_id);
        }
        const auto want = brute_force_survivors(t.corpus.programs, t.corpus.models, t.corpus.pair, t.schedule,
                                                t.stream_seed);
        matched += got == want;
        programs += t.corpus.programs.size();
        survivors += want.size();
    }
    const double secs = seconds_since(start);
    return {matched == trials.size() && secs < 60.0,
            fmt("%zu/%zu trials match brute force (%zu programs, %zu survivors), %.1fs (limit 60s)", matched,
                trials.size(), programs, survivors, secs)};
}

outcome_line criterion_monotone_deactivation()
{
    const auto trials = make_trials(random_trial_count);
    std::size_t clean = 0, violations = 0, deactivated = 0;
    for (const auto &t : trials) {
        simulated_executor inner(t.corpus.models, t.stream_seed);
        call_logging_executor exec(inner);
        campaign_config cfg{t.corpus.pair, t.schedule};
        cfg.parallelism = t.parallelism;
        run_campaign(t.corpus.programs, cfg, exec);

        // Level of the first failed check, straight from the model function.
        std::map<std::string, std::size_t> failed_at;
        for (const auto &p : t.corpus.programs) {
            const auto &mb = t.corpus.models.at({p.id, t.corpus.pair.baseline.id});
            const auto &ms = t.corpus.models.at({p.id, t.corpus.pair.subject.id});
            for (std::size_t i = 0; i < t.schedule.ns.size(); ++i) {
                const auto m1 = execute_simulated(mb, t.schedule.ns[i], p.id, t.corpus.pair.baseline.id, i, t.stream_seed).count();
                const auto m2 = execute_simulated(ms, t.schedule.ns[i], p.id, t.corpus.pair.subject.id, i, t.stream_seed).count();
                if (static_cast<double>(m2) / static_cast<double>(m1) <= t.schedule.ths[i]) {
                    failed_at[p.id] = i;
                    break;
                }
            }
        }
        deactivated += failed_at.size();
        std::size_t bad = 0;
        for (const auto &c : exec.calls()) {
            const auto it = failed_at.find(c.program);
            bad += it != failed_at.end() && c.level > it->second;
        }
        violations += bad;
        clean += bad == 0;
    }
    return {clean == trials.size(),
            fmt("%zu/%zu trials clean, %zu executions after a failed check (%zu programs deactivated)", clean,
                trials.size(), violations, deactivated)};
}

// ---------------------------------------------------------------------------

outcome_line criterion_top_k()
{
    const std::vector<std::int64_t> ks{500, 100, 50};
    std::size_t checks = 0, failures = 0;
    std::vector<std::string> notes;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        synthetic_corpus_spec spec;
        spec.injected_bug = 600;
        spec.constant_overhead = 300;
        spec.neutral = 100;
        spec.seed = seed;
        const auto corpus = synthesize_corpus(spec);
        auto schedule = lp_preset_schedule();
        schedule.top_ks = ks;
        simulated_executor inner(corpus.models);
        call_logging_executor exec(inner);
        campaign_config cfg{synthetic_pair(), schedule};
        cfg.parallelism = 4;
        const auto result = run_campaign(corpus.manifest.programs, cfg, exec);

        std::vector<std::size_t> calls_per_level(schedule.ns.size());
        for (const auto &c : exec.calls()) {
            ++calls_per_level[c.level];
        }

        for (std::size_t level = 1; level < schedule.ns.size(); ++level) {
            // Reconstruct the state at the start of `level` from the history.
            std::set<std::string> active;
            std::vector<std::pair<double, std::string>> latest;
            std::set<std::string> selected;
            for (const auto &[id, records] : result.history.all()) {
                bool alive = true;
                const measurement_record *last = nullptr;
                for (const auto &r : records) {
                    if (r.level_index < level) {
                        alive = alive && r.result == outcome::ok && r.ratio > schedule.ths[r.level_index];
                        last = &r;
                    } else if (r.level_index == level) {
                        selected.insert(id);
                    }
                }
                if (alive && last) {
                    active.insert(id);
                    latest.emplace_back(last->ratio, id);
                }
            }
            std::sort(latest.begin(), latest.end(), [](const auto &a, const auto &b) {
                return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
            const auto k = static_cast<std::size_t>(ks[level - 1]);
            std::set<std::string> expected;
            for (std::size_t i = 0; i < std::min(k, latest.size()); ++i) {
                expected.insert(latest[i].second);
            }
            const std::size_t executed = calls_per_level[level] / 2;
            const bool ok = executed <= std::min(k, active.size()) && selected == expected &&
                            executed == selected.size();
            ++checks;
            failures += !ok;
            if (seed == 1) {
                notes.push_back(fmt("L%zu %zu/%zu", level, executed, active.size()));
            }
        }
    }
    std::string detail = fmt("%zu/%zu level checks match the reference sort; seed 1 executed/active:",
                             checks - failures, checks);
    for (const auto &n : notes) {
        detail += " " + n;
    }
    return {failures == 0, detail};
}

// ---------------------------------------------------------------------------
// Criteria 4-6 share the 20 LP-schedule corpora.

struct seed_run {
    synthetic_corpus corpus;
    campaign_result plain;
    campaign_result prioritized;
    double plain_secs = 0;
};

const std::vector<seed_run> &lp_runs()
{
    static const std::vector<seed_run> runs = [] {
        std::vector<seed_run> out;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            synthetic_corpus_spec spec;
            spec.injected_bug = 10;
            spec.constant_overhead = 100;
            spec.neutral = 890;
            spec.slowdown_factor = 1.5;
            spec.noise_sd = 0.02;
            spec.seed = seed;
            seed_run r;
            r.corpus = synthesize_corpus(spec);
            simulated_executor exec(r.corpus.models);
            campaign_config cfg{synthetic_pair(), lp_preset_schedule()};
            cfg.parallelism = 4;
            const auto start = clock_type::now();
            r.plain = run_campaign(r.corpus.manifest.programs, cfg, exec);
            r.plain_secs = seconds_since(start);
            cfg.schedule.top_ks = {500, 100, 50};
            r.prioritized = run_campaign(r.corpus.manifest.programs, cfg, exec);
            out.push_back(std::move(r));
        }
        return out;
    }();
    return runs;
}

std::map<std::string, bool> fp_keeps(const seed_run &r)
{
    std::vector<std::string> ids;
    for (const auto &s : r.plain.survivors) {
        ids.push_back(s.program_id);
    }
    std::map<std::string, bool> keep;
    for (const auto &d : false_positive_filter(r.plain.history, ids, lp_preset_schedule(), {})) {
        keep[d.program_id] = d.keep;
    }
    return keep;
}

std::set<std::string> surviving_bugs(const seed_run &r, const campaign_result &result)
{
    std::set<std::string> out;
    for (const auto &s : result.survivors) {
        if (r.corpus.ground_truth.at(s.program_id).label == ground_truth_label::injected_bug) {
            out.insert(s.program_id);
        }
    }
    return out;
}

outcome_line criterion_recall()
{
    const auto &runs = lp_runs();
    double secs = 0;
    std::size_t full_recall = 0, neutral_total = 0, neutral_unremoved = 0, worst_neutral = 0;
    std::vector<std::string> misses;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto &r = runs[i];
        secs += r.plain_secs;
        const auto bugs = surviving_bugs(r, r.plain);
        full_recall += bugs.size() == 10;
        if (bugs.size() != 10) {
            misses.push_back(fmt("seed %zu: %zu/10", i + 1, bugs.size()));
        }
        const auto keep = fp_keeps(r);
        std::size_t neutral = 0;
        for (const auto &s : r.plain.survivors) {
            if (r.corpus.ground_truth.at(s.program_id).label == ground_truth_label::neutral) {
                ++neutral;
                neutral_unremoved += keep.at(s.program_id);
            }
        }
        neutral_total += neutral;
        worst_neutral = std::max(worst_neutral, neutral);
    }
    std::string detail = fmt("full recall on %zu/20 seeds, neutral survivors %zu (max %zu per seed, %zu kept by the "
                             "FP filter), %.1fs (limit 120s)",
                             full_recall, neutral_total, worst_neutral, neutral_unremoved, secs);
    for (const auto &m : misses) {
        detail += "; " + m;
    }
    return {full_recall == runs.size() && worst_neutral <= 1 && neutral_unremoved == 0 && secs < 120.0, detail};
}

outcome_line criterion_fp_filter()
{
    std::size_t overhead_survivors = 0, overhead_dropped = 0, bug_survivors = 0, bugs_dropped = 0;
    for (const auto &r : lp_runs()) {
        const auto keep = fp_keeps(r);
        for (const auto &s : r.plain.survivors) {
            switch (r.corpus.ground_truth.at(s.program_id).label) {
            case ground_truth_label::constant_overhead:
                ++overhead_survivors;
                overhead_dropped += !keep.at(s.program_id);
                break;
            case ground_truth_label::injected_bug:
                ++bug_survivors;
                bugs_dropped += !keep.at(s.program_id);
                break;
            case ground_truth_label::neutral: break;
            }
        }
    }
    const double rate = overhead_survivors ? static_cast<double>(overhead_dropped) / overhead_survivors : 1.0;
    return {rate >= 0.95 && bugs_dropped == 0,
            fmt("dropped %zu/%zu constant-overhead survivors (%.1f%%, floor 95%%), %zu/%zu injected bugs dropped%s",
                overhead_dropped, overhead_survivors, 100.0 * rate, bugs_dropped, bug_survivors,
                overhead_survivors ? "" : " (no constant-overhead survivors: vacuous)")};
}

outcome_line criterion_prioritization()
{
    double plain = 0, prioritized = 0;
    std::size_t same_recall = 0, superset = 0;
    std::string differing;
    double worst = 1.0;
    const auto &runs = lp_runs();
    for (const auto &r : runs) {
        const double a = static_cast<double>(r.plain.measured_total(1).count());
        const double b = static_cast<double>(r.prioritized.measured_total(1).count());
        plain += a;
        prioritized += b;
        worst = std::min(worst, a > 0 ? 1.0 - b / a : 0.0);
        const auto a_bugs = surviving_bugs(r, r.plain), b_bugs = surviving_bugs(r, r.prioritized);
        same_recall += a_bugs == b_bugs;
        superset += std::includes(b_bugs.begin(), b_bugs.end(), a_bugs.begin(), a_bugs.end());
        if (a_bugs != b_bugs) {
            differing += fmt("; seed %llu: %zu/10 disabled vs %zu/10 enabled",
                             static_cast<unsigned long long>(&r - runs.data() + 1), a_bugs.size(), b_bugs.size());
        }
    }
    const double reduction = plain > 0 ? 1.0 - prioritized / plain : 0.0;
    return {reduction >= 0.30 && same_recall == runs.size(),
            fmt("cost from the second level on cut by %.1f%% (floor 30%%, worst seed %.1f%%), identical recall on "
                "%zu/20 seeds, no bug lost on %zu/20",
                100.0 * reduction, 100.0 * worst, same_recall, superset) +
                differing};
}

// ---------------------------------------------------------------------------

outcome_line criterion_dedup()
{
    std::mt19937_64 rng(77);
    const std::vector<std::string> generators{"lejit", "artemis", "jitfuzz"};
    std::size_t trials = 0, failed = 0, duplicates_seen = 0, chained = 0;
    std::string first_failure;
    for (; trials < 600; ++trials) {
        std::vector<dedup_entry> entries;
        const std::size_t n = rng() % 25;
        for (std::size_t i = 0; i < n; ++i) {
            dedup_entry e;
            e.program_id = "s" + std::to_string(i);
            e.generator = generators[rng() % generators.size()];
            if (rng() % 5) {
                e.template_id = "t" + std::to_string(rng() % 6);
            }
            if (rng() % 2) {
                e.exception_signature = "E" + std::to_string(rng() % 3);
            }
            // coarse ratios so ties happen
            e.final_ratio = 1.2 + 0.1 * static_cast<double>(rng() % 8);
            entries.push_back(e);
        }
        known_bug_set known;
        for (std::size_t i = rng() % 3; i > 0; --i) {
            known.insert({generators[rng() % generators.size()], "t" + std::to_string(rng() % 6)});
        }

        const auto r = duplicate_filter(entries, known);
        std::map<std::string, const dedup_entry *> by_id;
        for (const auto &e : entries) {
            by_id[e.program_id] = &e;
        }
        std::set<std::string> kept;
        for (const auto &e : r.unique) {
            kept.insert(e.program_id);
        }
        std::vector<std::string> problems;

        // idempotent
        const auto again = duplicate_filter(r.unique, known);
        if (again.unique != r.unique || !again.duplicates.empty()) {
            problems.push_back("not idempotent");
        }
        // partition
        if (kept.size() + r.duplicates.size() != entries.size()) {
            problems.push_back("not a partition");
        }
        // soundness and dominance
        for (const auto &[id, info] : r.duplicates) {
            ++duplicates_seen;
            const auto &self = *by_id.at(id);
            if (info.reason == duplicate_reason::known_template) {
                if (info.of != known_bug_marker || !self.template_id ||
                    !known.contains({self.generator, *self.template_id})) {
                    problems.push_back(id + " wrongly known");
                }
                continue;
            }
            if (!kept.contains(info.of) || by_id.at(info.of)->final_ratio < self.final_ratio) {
                problems.push_back(id + " representative not kept or weaker");
            }
            const auto &m = *by_id.at(info.matched);
            chained += info.matched != info.of;
            const bool related = info.reason == duplicate_reason::same_template
                                     ? m.generator == self.generator && m.template_id == self.template_id
                                     : m.generator == self.generator && m.exception_signature &&
                                           m.exception_signature == self.exception_signature;
            if (!related || m.final_ratio < self.final_ratio) {
                problems.push_back(id + " matched chain unsound");
            }
        }
        // pass order against the reference
        const auto ref = reference_duplicate_filter(entries, known);
        std::map<std::string, std::string> tmpl, exc;
        std::set<std::string> known_hit;
        for (const auto &[id, info] : r.duplicates) {
            switch (info.reason) {
            case duplicate_reason::known_template: known_hit.insert(id); break;
            case duplicate_reason::same_template: tmpl[id] = info.matched; break;
            case duplicate_reason::same_exception: exc[id] = info.of; break;
            }
        }
        if (tmpl != ref.template_absorbed || exc != ref.exception_absorbed || known_hit != ref.known_absorbed ||
            kept != ref.kept) {
            problems.push_back("differs from the template-then-exception reference");
        }
        if (!problems.empty()) {
            ++failed;
            if (first_failure.empty()) {
                first_failure = fmt("; trial %zu: ", trials) + problems.front();
            }
        }
    }
    return {failed == 0, fmt("%zu/%zu random sets sound, idempotent and reference-ordered (%zu duplicates, %zu via "
                             "re-pointed chains)%s",
                             trials - failed, trials, duplicates_seen, chained, first_failure.c_str())};
}

outcome_line criterion_amortization()
{
    simulated_runtime_model a;
    a.interp_ns = 50;
    a.compiled_ns = 10;
    a.hot_threshold = 1000;
    a.compile_ns = 2e5;
    auto b = a;
    b.compile_ns += 1e6;
    const auto ratio = [&](std::uint64_t n) {
        return static_cast<double>(execute_simulated(b, n).count()) /
               static_cast<double>(execute_simulated(a, n).count());
    };
    // Closed form, independently: T_i*K + C + (N-K)*T_c.
    const auto closed = [](const simulated_runtime_model &m, double n) {
        return m.interp_ns * static_cast<double>(m.hot_threshold) + m.compile_ns +
               (n - static_cast<double>(m.hot_threshold)) * m.compiled_ns;
    };
    bool exact = true;
    for (std::uint64_t n : {100000ull, 3000000ull}) {
        exact = exact && execute_simulated(a, n).count() == static_cast<std::int64_t>(closed(a, n)) &&
                execute_simulated(b, n).count() == static_cast<std::int64_t>(closed(b, n));
    }
    const double small = ratio(100000), large = ratio(3000000);
    return {exact && small > 1.2 && std::abs(large - 1.0) <= 0.05,
            fmt("C_compile +1e6 ns: ratio %.4f at N=1e5 (need > 1.2), %.4f at N=3e6 (need within 5%% of 1), closed "
                "form %s",
                small, large, exact ? "exact" : "MISMATCH")};
}

outcome_line criterion_equations()
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t agree = 0, total = 0;
    for (int i = 0; i < 1000; ++i) {
        const double ti = u(rng) * 100, tc = u(rng) * 100, n = std::floor(u(rng) * 1e6), c = u(rng) * 1e7;
        agree += compilation_profitable(ti, tc, n, c) == ((ti - tc) * n > c);
        const double p = u(rng), g = u(rng) * 50, d = u(rng) * 500;
        agree += speculation_beneficial(p, g, d) == (p * g > (1 - p) * d);
        total += 2;
    }
    struct eq1 {
        double ti, tc, n, c;
        bool want;
    };
    for (const auto &e : {eq1{10, 2, 200, 1000, true}, eq1{10, 2, 100, 1000, false}, eq1{5, 5, 0, 1, false},
                          eq1{5, 5, 1e9, 1, false}}) {
        agree += compilation_profitable(e.ti, e.tc, e.n, e.c) == e.want;
        ++total;
    }
    struct eq2 {
        double p, g, d;
        bool want;
    };
    for (const auto &e : {eq2{0.9, 10, 50, true}, eq2{0.5, 10, 10, false}, eq2{0, 0, 1, false},
                          eq2{0, 1e9, 1, false}}) {
        agree += speculation_beneficial(e.p, e.g, e.d) == e.want;
        ++total;
    }
    return {agree == total, fmt("%zu/%zu evaluations agree with the direct formulas", agree, total)};
}

// ---------------------------------------------------------------------------

outcome_line criterion_subprocess()
{
    const auto start = clock_type::now();
    // Both configurations wrap the probe; the subject sleeps twice as long per
    // iteration for "slow" programs.
    const std::string probe = LEVELDIFF_SLEEP_PROBE;
    configuration_pair pair;
    pair.label = "PROBE";
    pair.baseline = {"probe-10us", {"/bin/sh", "-c", "exec \"$0\" \"$1\" 10", probe}, {}, "1"};
    pair.subject = {"probe-20us",
                    {"/bin/sh", "-c", "case \"$2\" in slow) k=20;; *) k=10;; esac; exec \"$0\" \"$1\" $k", probe},
                    {},
                    "1"};
    std::vector<program_candidate> corpus;
    for (const auto &[id, kind] : std::vector<std::pair<std::string, std::string>>{{"slow", "slow"},
                                                                                   {"same", "same"}}) {
        program_candidate p;
        p.id = id;
        p.run_spec = {"{N}", kind};
        p.timeout = std::chrono::seconds(10);
        corpus.push_back(p);
    }
    const std::map<std::string, double> truth{{"slow", 2.0}, {"same", 1.0}};

    level_schedule schedule;
    schedule.ns = {2000, 10000};
    schedule.ths = {1.5, 1.5};
    schedule.top_ks = {-1};

    subprocess_executor exec;
    campaign_result result;
    try {
        exec.ensure_available(corpus, pair);
        result = run_campaign(corpus, {pair, schedule}, exec);
    } catch (const std::exception &e) {
        return {false, std::string("campaign failed: ") + e.what()};
    }
    std::size_t within = 0, measured = 0;
    std::string ratios;
    for (const auto &[id, records] : result.history.all()) {
        for (const auto &r : records) {
            ++measured;
            const double want = truth.at(id);
            within += r.result == outcome::ok && std::abs(r.ratio - want) <= 0.2 * want;
            ratios += fmt(" %s@%zu=%.3f", id.c_str(), r.level_index, r.ratio);
        }
    }
    const bool survivors_right = result.survivors.size() == 1 && result.survivors[0].program_id == "slow";
    const double secs = seconds_since(start);
    // slow is measured at both levels, same only at the first
    return {measured == 3 && within == measured && survivors_right && secs < 30.0,
            fmt("%zu/%zu ratios within 20%% of truth,%s, survivor %s, %.1fs (limit 30s)", within, measured,
                ratios.c_str(), survivors_right ? "slow only" : "WRONG", secs)};
}

struct criterion {
    int id;
    const char *name;
    std::function<outcome_line()> run;
};

} // namespace

int main(int argc, char **argv)
{
    std::set<int> only, skip;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if ((arg == "--only" || arg == "--skip") && i + 1 < argc) {
            (arg == "--only" ? only : skip).insert(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: leveldiff_acceptance [--only N]... [--skip N]...\n";
            return 2;
        }
    }

    const std::vector<criterion> criteria{
        {1, "campaign survivors equal the brute-force reference", criterion_oracle_equivalence},
        {2, "no execution after a failed check", criterion_monotone_deactivation},
        {3, "top-k selects the highest-ratio actives", criterion_top_k},
        {4, "injected-bug recall under the LP schedule", criterion_recall},
        {5, "false-positive filter drops constant overheads", criterion_fp_filter},
        {6, "prioritization cuts cost without losing recall", criterion_prioritization},
        {7, "duplicate filter properties", criterion_dedup},
        {8, "simulator amortizes constant overhead", criterion_amortization},
        {9, "compilation and speculation profitability formulas", criterion_equations},
        {10, "subprocess campaign with the sleep probe", criterion_subprocess},
    };

    int failures = 0;
    for (const auto &c : criteria) {
        if ((!only.empty() && !only.contains(c.id)) || skip.contains(c.id)) {
            continue;
        }
        outcome_line r;
        try {
            r = c.run();
        } catch (const std::exception &e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failures += !r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << r.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
