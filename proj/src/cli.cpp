#include "leveldiff/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "leveldiff/corpus.hpp"

namespace leveldiff::cli {

namespace fs = std::filesystem;

std::optional<level_schedule> schedule_preset(const std::string &name)
{
    if (name == "paper-lp") {
        return lp_preset_schedule();
    }
    if (name == "paper-rp") {
        return rp_preset_schedule();
    }
    return std::nullopt;
}

namespace {

fs::path resolve_path(const std::string &p, const fs::path &base_dir)
{
    fs::path path(p);
    return path.is_absolute() ? path : (base_dir / path).lexically_normal();
}

level_schedule parse_schedule(const json &j)
{
    if (j.is_string()) {
        auto s = schedule_preset(j.get<std::string>());
        if (!s) {
            throw error(errc::config_error, "unknown schedule preset '" + j.get<std::string>() + "'");
        }
        return *s;
    }
    level_schedule s;
    if (j.contains("preset")) {
        auto preset = schedule_preset(j.at("preset").get<std::string>());
        if (!preset) {
            throw error(errc::config_error, "unknown schedule preset '" + j.at("preset").get<std::string>() + "'");
        }
        s = *preset;
        if (j.contains("top_ks")) {
            s.top_ks = j.at("top_ks").get<std::vector<std::int64_t>>();
        }
    } else {
        s = j.get<level_schedule>();
    }
    return s;
}

} // namespace

campaign_file parse_campaign(const std::string &json_text, const fs::path &base_dir)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        throw error(errc::config_error, std::string("campaign file: ") + e.what());
    }
    campaign_file c;
    try {
        c.pair = j.at("pair").get<configuration_pair>();
        const auto &sched = j.at("schedule");
        if (sched.is_string()) {
            c.schedule_preset = sched.get<std::string>();
        } else if (sched.contains("preset")) {
            c.schedule_preset = sched.at("preset").get<std::string>();
        }
        c.schedule = parse_schedule(sched);

        const auto exec = j.value("executor", json{{"kind", "simulated"}});
        const auto kind = exec.value("kind", std::string("simulated"));
        if (kind == "simulated") {
            c.executor = executor_kind::simulated;
            c.models_path = resolve_path(exec.at("models").get<std::string>(), base_dir);
        } else if (kind == "subprocess") {
            c.executor = executor_kind::subprocess;
            if (exec.contains("exception_patterns")) {
                c.subprocess.exception_patterns = exec.at("exception_patterns").get<std::vector<std::string>>();
            }
            if (exec.contains("kill_grace_ms")) {
                c.subprocess.kill_grace = std::chrono::milliseconds(exec.at("kill_grace_ms").get<std::int64_t>());
            }
        } else {
            throw error(errc::config_error, "executor kind must be 'simulated' or 'subprocess'");
        }

        if (auto f = j.find("filters"); f != j.end()) {
            c.filters = f->get<filter_config>();
            if (f->contains("known_bugs")) {
                c.known_bugs_path = resolve_path(f->at("known_bugs").get<std::string>(), base_dir);
            }
        }
        if (auto fl = j.find("first_level"); fl != j.end()) {
            const auto policy = fl->value("policy", std::string("execute"));
            if (policy == "reuse") {
                c.first_level = first_level_policy::reuse_provided;
                c.provided_measurements = resolve_path(fl->at("measurements").get<std::string>(), base_dir);
            } else if (policy != "execute") {
                throw error(errc::config_error, "first_level.policy must be 'execute' or 'reuse'");
            }
        }
        const auto parallelism = j.value("parallelism", std::int64_t{1});
        if (parallelism < 1) {
            throw error(errc::config_error, "parallelism must be positive");
        }
        c.parallelism = static_cast<std::size_t>(parallelism);
        c.seed = j.value("seed", std::uint64_t{0});
        c.output_dir = resolve_path(j.value("output_dir", std::string("leveldiff-out")), base_dir);
    } catch (const json::exception &e) {
        throw error(errc::config_error, std::string("campaign file: ") + e.what());
    }
    return c;
}

campaign_file load_campaign(const fs::path &path)
{
    std::string text;
    try {
        text = read_file(path);
    } catch (const error &e) {
        throw error(errc::config_error, e.what());
    }
    return parse_campaign(text, path.parent_path());
}

void validate_campaign(const campaign_file &c)
{
    if (auto e = validate_schedule(c.schedule)) {
        throw error(errc::config_error, "schedule: " + std::string(to_string(*e)));
    }
    validate(c.filters);
    if (c.pair.baseline.id.empty() || c.pair.subject.id.empty() || c.pair.baseline.id == c.pair.subject.id) {
        throw error(errc::config_error, "pair needs two distinct configuration ids");
    }
    if (c.executor == executor_kind::subprocess &&
        (c.pair.baseline.command_prefix.empty() || c.pair.subject.command_prefix.empty())) {
        throw error(errc::config_error, "subprocess configurations need a non-empty command");
    }
    if (c.executor == executor_kind::simulated && !fs::exists(c.models_path)) {
        throw error(errc::config_error, "model table not found: " + c.models_path.string());
    }
    if (c.provided_measurements && !fs::exists(*c.provided_measurements)) {
        throw error(errc::config_error, "provided measurements not found: " + c.provided_measurements->string());
    }
}

namespace {

json run_metadata(const campaign_file &c, const corpus_manifest &m)
{
    json programs = json::array();
    for (const auto &p : m.programs) {
        json e{{"id", p.id}, {"generator", p.generator}};
        if (p.template_id) {
            e["template_id"] = *p.template_id;
        }
        programs.push_back(std::move(e));
    }
    return json{{"pair", c.pair}, {"schedule", c.schedule}, {"filters", c.filters}, {"programs", programs}};
}

std::unique_ptr<executor> make_executor(const campaign_file &c)
{
    if (c.executor == executor_kind::simulated) {
        auto table = model_table_from_json(parse_json(read_file(c.models_path), "model table"));
        return std::make_unique<simulated_executor>(std::move(table), c.seed);
    }
    return std::make_unique<subprocess_executor>(c.subprocess);
}

} // namespace

run_summary cmd_run(const fs::path &campaign_path, const fs::path &manifest_path, const run_options &options,
                    std::ostream *log)
{
    run_summary summary;
    campaign_file c;
    corpus_manifest manifest;
    std::unique_ptr<executor> exec;
    campaign_config config;
    try {
        c = load_campaign(campaign_path);
        validate_campaign(c);
        manifest = load_manifest(manifest_path);
        if (manifest.programs.empty()) {
            throw error(errc::config_error, "manifest contains no programs");
        }
        exec = make_executor(c);
        config.pair = c.pair;
        config.schedule = c.schedule;
        config.first_level = c.first_level;
        config.parallelism = c.parallelism;
        if (c.provided_measurements) {
            for (auto &r : parse_measurement_log(read_file(*c.provided_measurements))) {
                if (r.level_index == 0) {
                    config.provided[r.program_id] = std::move(r);
                }
            }
        }
    } catch (const error &e) {
        summary.exit_code = exit_config_error;
        summary.message = std::string(to_string(e.code())) + ": " + e.what();
        return summary;
    }

    if (options.output_dir) {
        summary.output_dir = *options.output_dir;
    } else if (const char *env = std::getenv(output_dir_env); env != nullptr && *env != '\0') {
        summary.output_dir = env;
    } else {
        summary.output_dir = c.output_dir;
    }
    const auto &out = summary.output_dir;

    try {
        exec->ensure_available(manifest.programs, c.pair);
    } catch (const error &e) {
        summary.exit_code = exit_executor_unavailable;
        summary.message = std::string(to_string(e.code())) + ": " + e.what();
        return summary;
    }

    campaign_result result;
    try {
        fs::create_directories(out);
        write_file(out / "run.json", run_metadata(c, manifest).dump(2) + '\n');
        fs::remove(out / "verdicts.json");
        measurement_log_writer writer(out / "measurements.jsonl");
        result = run_campaign(manifest.programs, config, *exec, [&](const measurement_record &r) {
            writer.append(r);
            if (log != nullptr) {
                *log << r.program_id << " level " << r.level_index << " ratio " << r.ratio << ' '
                     << to_string(r.result) << '\n';
            }
        });
    } catch (const error &e) {
        summary.exit_code = exit_config_error;
        summary.message = std::string(to_string(e.code())) + ": " + e.what();
        return summary;
    } catch (const fs::filesystem_error &e) {
        summary.exit_code = exit_config_error;
        summary.message = e.what();
        return summary;
    }

    std::vector<std::string> survivor_ids;
    for (const auto &s : result.survivors) {
        survivor_ids.push_back(s.program_id);
    }
    const auto fp = false_positive_filter(result.history, survivor_ids, c.schedule, c.filters);
    std::map<std::string, const program_candidate *> by_id;
    for (const auto &p : manifest.programs) {
        by_id[p.id] = &p;
    }
    std::vector<dedup_entry> entries;
    json fp_json = json::array();
    for (const auto &d : fp) {
        fp_json.push_back({{"program_id", d.program_id}, {"keep", d.keep}, {"annotation", d.annotation}});
        if (!d.keep) {
            result.verdicts[d.program_id] = verdict::false_positive();
            continue;
        }
        const auto &p = *by_id.at(d.program_id);
        dedup_entry e{p.id, p.generator, p.template_id, std::nullopt, result.history.latest(p.id)->ratio};
        for (const auto &r : *result.history.records(p.id)) {
            if (r.exception_signature && !r.exception_signature->empty()) {
                e.exception_signature = r.exception_signature;
            }
        }
        entries.push_back(std::move(e));
    }
    known_bug_set known;
    if (c.known_bugs_path) {
        known = load_known_bugs(*c.known_bugs_path);
    }
    const auto dedup = duplicate_filter(entries, known);
    json dup_json = json::object();
    for (const auto &[id, info] : dedup.duplicates) {
        result.verdicts[id] = verdict::duplicate(info.of);
        dup_json[id] = {{"of", info.of}, {"matched", info.matched}, {"reason", to_string(info.reason)}};
    }
    if (c.known_bugs_path) {
        append_known_bugs(*c.known_bugs_path, dedup.new_known);
    }

    json verdicts = json::object();
    for (const auto &[id, v] : result.verdicts) {
        verdicts[id] = v;
    }
    json annotations = json::object();
    for (const auto &[id, notes] : result.annotations) {
        annotations[id] = notes;
    }
    write_file(out / "verdicts.json", json{{"verdicts", verdicts},
                                           {"annotations", annotations},
                                           {"false_positive_filter", fp_json},
                                           {"duplicates", dup_json}}
                                              .dump(2) +
                                          '\n');

    const auto reports = build_report(out);
    write_file(out / "summary.json", render_summary_json(reports));
    write_file(out / "report.txt", render_text(reports));

    const auto unique = reports.empty() ? 0 : reports.front().unique;
    summary.message = std::to_string(unique) + " unique candidate(s)";
    summary.exit_code = options.fail_on_candidates && unique > 0 ? exit_candidates_found : exit_ok;
    return summary;
}

// ---------------------------------------------------------------------------

namespace {

std::string status_string(const verdict &v)
{
    switch (v.kind) {
    case verdict_kind::filtered_at_level: return "FilteredAtLevel(" + std::to_string(v.level) + ")";
    case verdict_kind::errored: return "Errored(" + std::string(to_string(v.failure)) + ")";
    case verdict_kind::duplicate: return "Duplicate(" + v.duplicate_of + ")";
    default: return std::string(to_string(v.kind));
    }
}

pair_report report_for_run(const fs::path &dir)
{
    if (!fs::exists(dir / "run.json") || !fs::exists(dir / "measurements.jsonl")) {
        throw error(errc::missing_artifacts, "no run artifacts in " + dir.string());
    }
    const auto meta = parse_json(read_file(dir / "run.json"), "run.json");
    const auto pair = meta.at("pair").get<configuration_pair>();
    const auto schedule = meta.at("schedule").get<level_schedule>();
    const auto records = parse_measurement_log(read_file(dir / "measurements.jsonl"));

    std::optional<json> final_state;
    if (fs::exists(dir / "verdicts.json")) {
        final_state = parse_json(read_file(dir / "verdicts.json"), "verdicts.json");
    }

    pair_report rep;
    rep.pair_label = pair.label;
    rep.pair_kind = std::string(to_string(pair.kind));
    rep.thresholds = schedule.ths;
    rep.iterations = schedule.ns;
    rep.filtered_per_level.assign(schedule.levels(), 0);
    rep.executed_per_level.assign(schedule.levels(), 0);
    rep.complete = final_state.has_value();

    std::map<std::string, std::vector<const measurement_record *>> trail;
    for (const auto &r : records) {
        trail[r.program_id].push_back(&r);
        if (r.level_index < schedule.levels()) {
            ++rep.executed_per_level[r.level_index];
            const auto cost = r.m1 + r.m2;
            rep.time_total += cost;
            if (r.level_index > 0) {
                rep.time_excluding_first += cost;
            }
        }
        rep.wall_total += r.wall_time_total;
    }

    for (const auto &p : meta.at("programs")) {
        const auto id = p.at("id").get<std::string>();
        ++rep.programs;
        std::optional<verdict> from_log;
        for (const auto *r : trail[id]) {
            if (r->result != outcome::ok) {
                from_log = verdict::errored(r->result);
            } else if (r->level_index < schedule.levels() && !(r->ratio > schedule.ths[r->level_index])) {
                from_log = verdict::filtered(r->level_index);
            }
        }
        std::optional<verdict> final_verdict;
        if (final_state && final_state->at("verdicts").contains(id)) {
            final_verdict = final_state->at("verdicts").at(id).get<verdict>();
        }
        const auto v = final_verdict ? final_verdict : from_log;
        if (!v) {
            ++rep.pending;
        } else {
            switch (v->kind) {
            case verdict_kind::filtered_at_level: ++rep.filtered_per_level.at(v->level); break;
            case verdict_kind::errored: ++rep.errored; break;
            case verdict_kind::survivor: ++rep.pass; ++rep.unique; break;
            case verdict_kind::false_positive: ++rep.pass; ++rep.false_positive; break;
            case verdict_kind::duplicate: ++rep.pass; ++rep.duplicate; break;
            }
        }
        const bool candidate = !v || v->kind == verdict_kind::survivor || v->kind == verdict_kind::false_positive ||
                               v->kind == verdict_kind::duplicate;
        if (candidate && !trail[id].empty()) {
            candidate_row row;
            row.program_id = id;
            row.status = v ? status_string(*v) : "Pending";
            for (const auto *r : trail[id]) {
                row.levels.push_back(r->level_index);
                row.ratios.push_back(r->ratio);
            }
            if (final_state && final_state->contains("annotations") && final_state->at("annotations").contains(id)) {
                row.annotations = final_state->at("annotations").at(id).get<std::vector<std::string>>();
            }
            rep.candidates.push_back(std::move(row));
        }
    }
    std::stable_sort(rep.candidates.begin(), rep.candidates.end(), [](const auto &a, const auto &b) {
        const bool ua = a.status == "Survivor";
        const bool ub = b.status == "Survivor";
        if (ua != ub) {
            return ua;
        }
        const double ra = a.ratios.empty() ? 0.0 : a.ratios.back();
        const double rb = b.ratios.empty() ? 0.0 : b.ratios.back();
        return ra != rb ? ra > rb : a.program_id < b.program_id;
    });
    return rep;
}

std::string format_seconds(nanoseconds ns)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << static_cast<double>(ns.count()) / 1e9 << 's';
    return s.str();
}

std::string format_ratio(double r)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << r;
    return s.str();
}

} // namespace

std::vector<pair_report> build_report(const fs::path &dir)
{
    if (fs::exists(dir / "run.json")) {
        return {report_for_run(dir)};
    }
    std::vector<fs::path> runs;
    if (fs::is_directory(dir)) {
        for (const auto &entry : fs::directory_iterator(dir)) {
            if (entry.is_directory() && fs::exists(entry.path() / "run.json")) {
                runs.push_back(entry.path());
            }
        }
    }
    if (runs.empty()) {
        throw error(errc::missing_artifacts, "no run artifacts in " + dir.string());
    }
    std::sort(runs.begin(), runs.end());
    std::vector<pair_report> reports;
    for (const auto &r : runs) {
        reports.push_back(report_for_run(r));
    }
    return reports;
}

std::string render_text(const std::vector<pair_report> &reports)
{
    std::ostringstream out;
    std::size_t max_levels = 0;
    for (const auto &r : reports) {
        max_levels = std::max(max_levels, r.filtered_per_level.size());
    }

    std::vector<std::string> header{"Pair", "Programs"};
    for (std::size_t i = 0; i < max_levels; ++i) {
        header.push_back("TH_" + std::to_string(i));
    }
    for (const char *h : {"Errored", "Pass", "FP", "Dup", "Unique", "Time(excl. L0)", "Time(all)"}) {
        header.push_back(h);
    }
    std::vector<std::vector<std::string>> rows{header};
    for (const auto &r : reports) {
        std::vector<std::string> row{r.pair_label.empty() ? "-" : r.pair_label, std::to_string(r.programs)};
        for (std::size_t i = 0; i < max_levels; ++i) {
            row.push_back(i < r.filtered_per_level.size() ? std::to_string(r.filtered_per_level[i]) : "");
        }
        for (auto v : {r.errored, r.pass, r.false_positive, r.duplicate, r.unique}) {
            row.push_back(std::to_string(v));
        }
        row.push_back(format_seconds(r.time_excluding_first));
        row.push_back(format_seconds(r.time_total));
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i == 0 ? "" : "  ") << std::setw(static_cast<int>(widths[i])) << (i == 0 ? std::left : std::right)
                << row[i];
        }
        out << '\n';
    }

    for (const auto &r : reports) {
        out << '\n' << "== " << (r.pair_label.empty() ? "-" : r.pair_label) << " (" << r.pair_kind << ")";
        if (!r.complete) {
            out << " [partial: " << r.pending << " pending]";
        }
        out << '\n';
        out << "Unique: " << r.unique << '\n';
        out << "Wall time: " << format_seconds(r.wall_total) << '\n';
        for (const auto &c : r.candidates) {
            out << "  " << c.program_id << "  " << c.status << "  ratios:";
            for (std::size_t i = 0; i < c.ratios.size(); ++i) {
                out << " L" << c.levels[i] << '=' << format_ratio(c.ratios[i]);
            }
            out << '\n';
            for (const auto &a : c.annotations) {
                out << "      " << a << '\n';
            }
        }
    }
    return out.str();
}

std::string render_summary_json(const std::vector<pair_report> &reports)
{
    json list = json::array();
    for (const auto &r : reports) {
        json candidates = json::array();
        for (const auto &c : r.candidates) {
            json trail = json::array();
            for (std::size_t i = 0; i < c.ratios.size(); ++i) {
                trail.push_back({{"level", c.levels[i]}, {"ratio", c.ratios[i]}});
            }
            candidates.push_back({{"program_id", c.program_id},
                                  {"status", c.status},
                                  {"trail", trail},
                                  {"annotations", c.annotations}});
        }
        list.push_back({{"pair", r.pair_label},
                        {"kind", r.pair_kind},
                        {"programs", r.programs},
                        {"iterations", r.iterations},
                        {"thresholds", r.thresholds},
                        {"executed_per_level", r.executed_per_level},
                        {"filtered_per_level", r.filtered_per_level},
                        {"errored", r.errored},
                        {"pass", r.pass},
                        {"false_positive", r.false_positive},
                        {"duplicate", r.duplicate},
                        {"unique", r.unique},
                        {"pending", r.pending},
                        {"complete", r.complete},
                        {"time_total_ns", r.time_total.count()},
                        {"time_excluding_first_ns", r.time_excluding_first.count()},
                        {"candidates", candidates}});
    }
    return json{{"pairs", list}}.dump(2) + '\n';
}

// ---------------------------------------------------------------------------

synthetic_corpus_spec parse_synthetic_spec(const std::string &json_text)
{
    const auto j = parse_json(json_text, "synthetic corpus spec");
    synthetic_corpus_spec s;
    try {
        const auto &counts = j.contains("counts") ? j.at("counts") : j;
        auto count = [&](const char *key) {
            const auto v = counts.value(key, std::int64_t{0});
            if (v < 0) {
                throw error(errc::config_error, std::string(key) + " must be non-negative");
            }
            return static_cast<std::size_t>(v);
        };
        s.neutral = count("neutral");
        s.constant_overhead = count("constant_overhead");
        s.injected_bug = count("injected_bug");
        s.slowdown_factor = j.value("slowdown_factor", s.slowdown_factor);
        s.overhead_delta_ns = j.value("overhead_delta_ns", s.overhead_delta_ns);
        s.noise_sd = j.value("noise_sd", s.noise_sd);
        s.seed = j.value("seed", s.seed);
        s.baseline_config = j.value("baseline_config", s.baseline_config);
        s.subject_config = j.value("subject_config", s.subject_config);
    } catch (const json::exception &e) {
        throw error(errc::config_error, std::string("synthetic corpus spec: ") + e.what());
    }
    return s;
}

void cmd_simulate(const fs::path &spec_path, const fs::path &out_dir)
{
    const auto spec = parse_synthetic_spec(read_file(spec_path));
    const auto corpus = synthesize_corpus(spec);
    fs::create_directories(out_dir);
    write_manifest(out_dir / "manifest.json", corpus.manifest);
    write_file(out_dir / "models.json", model_table_to_json(corpus.models).dump(2) + '\n');
    write_file(out_dir / "ground_truth.json", ground_truth_to_json(corpus.ground_truth).dump(2) + '\n');

    configuration_pair pair;
    pair.kind = pair_kind::level_pair;
    pair.label = "SIM";
    pair.baseline = {spec.baseline_config, {"simulated"}, {}, "sim"};
    pair.subject = {spec.subject_config, {"simulated"}, {}, "sim"};
    json campaign{{"pair", pair},
                  {"schedule", "paper-lp"},
                  {"executor", {{"kind", "simulated"}, {"models", "models.json"}}},
                  {"filters", filter_config{}},
                  {"parallelism", 1},
                  {"seed", spec.seed},
                  {"output_dir", "run"}};
    write_file(out_dir / "campaign.json", campaign.dump(2) + '\n');
}

} // namespace leveldiff::cli
