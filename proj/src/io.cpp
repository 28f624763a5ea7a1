#include "leveldiff/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace leveldiff {

namespace {

template <typename T>
std::optional<T> optional_field(const json &j, const char *key)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    return it->get<T>();
}

} // namespace

void to_json(json &j, const program_candidate &p)
{
    j = json{{"id", p.id}, {"run_spec", p.run_spec}, {"generator", p.generator},
             {"timeout_ms", std::chrono::duration_cast<std::chrono::milliseconds>(p.timeout).count()}};
    if (p.template_id) {
        j["template_id"] = *p.template_id;
    }
    if (p.source_project) {
        j["source_project"] = *p.source_project;
    }
    if (!p.working_dir.empty()) {
        j["working_dir"] = p.working_dir;
    }
}

void from_json(const json &j, program_candidate &p)
{
    p.id = j.at("id").get<std::string>();
    p.run_spec = j.at("run_spec").get<std::vector<std::string>>();
    p.template_id = optional_field<std::string>(j, "template_id");
    p.generator = j.value("generator", std::string("unknown"));
    p.source_project = optional_field<std::string>(j, "source_project");
    if (auto ms = optional_field<std::int64_t>(j, "timeout_ms")) {
        p.timeout = std::chrono::milliseconds(*ms);
    }
    p.working_dir = j.value("working_dir", std::string());
}

void to_json(json &j, const runtime_configuration &c)
{
    j = json{{"id", c.id}, {"command", c.command_prefix}, {"flags", c.extra_flags}, {"version", c.version_label}};
}

void from_json(const json &j, runtime_configuration &c)
{
    c.id = j.at("id").get<std::string>();
    c.command_prefix = j.value("command", std::vector<std::string>{});
    c.extra_flags = j.value("flags", std::vector<std::string>{});
    c.version_label = j.value("version", std::string());
}

void to_json(json &j, const configuration_pair &p)
{
    j = json{{"kind", p.kind == pair_kind::level_pair ? "level" : "regression"},
             {"label", p.label},
             {"baseline", p.baseline},
             {"subject", p.subject}};
}

void from_json(const json &j, configuration_pair &p)
{
    const auto kind = j.value("kind", std::string("level"));
    if (kind == "level") {
        p.kind = pair_kind::level_pair;
    } else if (kind == "regression") {
        p.kind = pair_kind::regression_pair;
    } else {
        throw error(errc::config_error, "pair kind must be 'level' or 'regression', got '" + kind + "'");
    }
    p.label = j.value("label", std::string());
    p.baseline = j.at("baseline").get<runtime_configuration>();
    p.subject = j.at("subject").get<runtime_configuration>();
}

void to_json(json &j, const level_schedule &s)
{
    j = json{{"ns", s.ns}, {"ths", s.ths}, {"top_ks", s.top_ks}};
}

void from_json(const json &j, level_schedule &s)
{
    s.ns = j.at("ns").get<std::vector<std::uint64_t>>();
    s.ths = j.at("ths").get<std::vector<double>>();
    s.top_ks = j.value("top_ks", std::vector<std::int64_t>(s.ns.empty() ? 0 : s.ns.size() - 1, -1));
}

void to_json(json &j, const measurement_record &r)
{
    j = json{{"program_id", r.program_id}, {"pair_label", r.pair_label}, {"level", r.level_index},
             {"iterations", r.iterations},  {"m1_ns", r.m1.count()},      {"m2_ns", r.m2.count()},
             {"ratio", r.ratio},            {"outcome", to_string(r.result)}, {"wall_ns", r.wall_time_total.count()}};
    if (r.exception_signature) {
        j["exception_signature"] = *r.exception_signature;
    }
}

void from_json(const json &j, measurement_record &r)
{
    r.program_id = j.at("program_id").get<std::string>();
    r.pair_label = j.value("pair_label", std::string());
    r.level_index = j.value("level", std::size_t{0});
    r.iterations = j.value("iterations", std::uint64_t{0});
    r.m1 = nanoseconds{j.at("m1_ns").get<std::int64_t>()};
    r.m2 = nanoseconds{j.at("m2_ns").get<std::int64_t>()};
    const auto o = j.value("outcome", std::string("Ok"));
    auto parsed = outcome_from_string(o);
    if (!parsed) {
        throw error(errc::parse_error, "unknown outcome '" + o + "'");
    }
    r.result = *parsed;
    r.ratio = j.contains("ratio") ? j.at("ratio").get<double>()
                                  : (r.result == outcome::ok ? compute_ratio(r.m1, r.m2) : 0.0);
    r.exception_signature = optional_field<std::string>(j, "exception_signature");
    r.wall_time_total = nanoseconds{j.value("wall_ns", std::int64_t{0})};
}

void to_json(json &j, const simulated_runtime_model &m)
{
    j = json{{"compile_ns", m.compile_ns},     {"interp_ns", m.interp_ns},       {"compiled_ns", m.compiled_ns},
             {"hot_threshold", m.hot_threshold}, {"spec_success", m.spec_success}, {"spec_gain_ns", m.spec_gain_ns},
             {"deopt_ns", m.deopt_ns},         {"noise_sd", m.noise_sd},         {"seed", m.seed}};
}

void from_json(const json &j, simulated_runtime_model &m)
{
    m.compile_ns = j.value("compile_ns", 0.0);
    m.interp_ns = j.value("interp_ns", 0.0);
    m.compiled_ns = j.value("compiled_ns", 0.0);
    m.hot_threshold = j.value("hot_threshold", std::uint64_t{0});
    m.spec_success = j.value("spec_success", 1.0);
    m.spec_gain_ns = j.value("spec_gain_ns", 0.0);
    m.deopt_ns = j.value("deopt_ns", 0.0);
    m.noise_sd = j.value("noise_sd", 0.0);
    m.seed = j.value("seed", std::uint64_t{0});
    validate_model(m);
}

void to_json(json &j, const verdict &v)
{
    j = json{{"kind", to_string(v.kind)}};
    switch (v.kind) {
    case verdict_kind::filtered_at_level: j["level"] = v.level; break;
    case verdict_kind::errored: j["outcome"] = to_string(v.failure); break;
    case verdict_kind::duplicate: j["duplicate_of"] = v.duplicate_of; break;
    default: break;
    }
}

void from_json(const json &j, verdict &v)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "Survivor") {
        v = verdict::survivor();
    } else if (kind == "FilteredAtLevel") {
        v = verdict::filtered(j.at("level").get<std::size_t>());
    } else if (kind == "Errored") {
        auto o = outcome_from_string(j.at("outcome").get<std::string>());
        if (!o) {
            throw error(errc::parse_error, "unknown outcome in verdict");
        }
        v = verdict::errored(*o);
    } else if (kind == "FalsePositive") {
        v = verdict::false_positive();
    } else if (kind == "Duplicate") {
        v = verdict::duplicate(j.at("duplicate_of").get<std::string>());
    } else {
        throw error(errc::parse_error, "unknown verdict kind '" + kind + "'");
    }
}

void to_json(json &j, const filter_config &c)
{
    j = json{{"growth_fraction", c.growth_fraction}, {"min_levels_for_trend", c.min_levels_for_trend}};
}

void from_json(const json &j, filter_config &c)
{
    c.growth_fraction = j.value("growth_fraction", 0.5);
    c.min_levels_for_trend = j.value("min_levels_for_trend", std::size_t{2});
}

json model_table_to_json(const model_table &models)
{
    json list = json::array();
    for (const auto &[key, model] : models) {
        json entry = model;
        entry["program"] = key.first;
        entry["config"] = key.second;
        list.push_back(std::move(entry));
    }
    return json{{"models", std::move(list)}};
}

model_table model_table_from_json(const json &j)
{
    model_table models;
    for (const auto &entry : j.at("models")) {
        auto key = std::pair{entry.at("program").get<std::string>(), entry.at("config").get<std::string>()};
        if (!models.emplace(key, entry.get<simulated_runtime_model>()).second) {
            throw error(errc::duplicate_id, "duplicate model for '" + key.first + "' / '" + key.second + "'");
        }
    }
    return models;
}

json ground_truth_to_json(const std::map<std::string, ground_truth_entry> &truth)
{
    json out = json::object();
    for (const auto &[id, entry] : truth) {
        out[id] = json{{"label", to_string(entry.label)}, {"baseline", entry.baseline}, {"subject", entry.subject}};
    }
    return out;
}

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error(errc::parse_error, "cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string &text, const std::string &what)
{
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw error(errc::parse_error, what + ": " + e.what());
    }
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw error(errc::config_error, "cannot write " + path.string());
    }
    out << content;
}

std::string to_log_line(const measurement_record &r)
{
    return json(r).dump() + '\n';
}

std::vector<measurement_record> parse_measurement_log(const std::string &text)
{
    std::vector<measurement_record> records;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string::npos) {
            break; // torn tail
        }
        ++line_no;
        const auto line = text.substr(start, nl - start);
        start = nl + 1;
        if (line.empty()) {
            continue;
        }
        try {
            records.push_back(json::parse(line).get<measurement_record>());
        } catch (const json::exception &e) {
            throw error(errc::parse_error, "measurement log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

measurement_log_writer::measurement_log_writer(const std::filesystem::path &path, bool truncate) : path_(path)
{
    file_ = std::fopen(path.c_str(), truncate ? "wb" : "ab");
    if (file_ == nullptr) {
        throw error(errc::config_error, "cannot open measurement log " + path.string());
    }
}

measurement_log_writer::~measurement_log_writer()
{
    if (file_ != nullptr) {
        std::fclose(file_);
    }
}

void measurement_log_writer::append(const measurement_record &r)
{
    const auto line = to_log_line(r);
    std::fwrite(line.data(), 1, line.size(), file_);
    std::fflush(file_);
}

} // namespace leveldiff
