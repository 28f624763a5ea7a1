#include "leveldiff/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "leveldiff/io.hpp"

namespace leveldiff {

void validate_manifest(const corpus_manifest &m)
{
    std::set<std::string> ids;
    for (const auto &p : m.programs) {
        if (p.id.empty()) {
            throw error(errc::parse_error, "program with empty id");
        }
        if (!ids.insert(p.id).second) {
            throw error(errc::duplicate_id, "duplicate program id '" + p.id + "'");
        }
        if (count_placeholders(p.run_spec) != 1) {
            throw error(errc::missing_placeholder,
                        "run_spec of '" + p.id + "' must contain exactly one " + std::string(iteration_placeholder));
        }
        if (p.timeout.count() <= 0) {
            throw error(errc::parse_error, "timeout of '" + p.id + "' must be positive");
        }
    }
}

namespace {

bool is_relative_path_token(const std::string &token)
{
    return token.starts_with("./") || token.starts_with("../");
}

std::string resolve(const std::string &token, const std::filesystem::path &base_dir)
{
    return (base_dir / token).lexically_normal().string();
}

} // namespace

corpus_manifest parse_manifest(const std::string &json_text, const std::filesystem::path &base_dir)
{
    const auto j = parse_json(json_text, "manifest");
    corpus_manifest m;
    try {
        if (!j.is_object() || !j.contains("programs") || !j.at("programs").is_array()) {
            throw error(errc::parse_error, "manifest needs a 'programs' array");
        }
        m.version = j.value("version", manifest_version);
        if (m.version != manifest_version) {
            throw error(errc::parse_error, "unsupported manifest version " + std::to_string(m.version));
        }
        if (auto d = j.find("defaults"); d != j.end()) {
            m.defaults.timeout = std::chrono::milliseconds(d->value("timeout_ms", std::int64_t{60000}));
            m.defaults.working_dir = d->value("working_dir", std::string());
        }
        if (is_relative_path_token(m.defaults.working_dir) || m.defaults.working_dir == ".") {
            m.defaults.working_dir = resolve(m.defaults.working_dir, base_dir);
        }
        for (const auto &entry : j.at("programs")) {
            auto p = entry.get<program_candidate>();
            if (!entry.contains("timeout_ms")) {
                p.timeout = m.defaults.timeout;
            }
            if (p.working_dir.empty()) {
                p.working_dir = m.defaults.working_dir;
            } else if (is_relative_path_token(p.working_dir)) {
                p.working_dir = resolve(p.working_dir, base_dir);
            }
            for (auto &token : p.run_spec) {
                if (is_relative_path_token(token)) {
                    token = resolve(token, base_dir);
                }
            }
            m.programs.push_back(std::move(p));
        }
    } catch (const json::exception &e) {
        throw error(errc::parse_error, std::string("manifest: ") + e.what());
    }
    validate_manifest(m);
    return m;
}

corpus_manifest load_manifest(const std::filesystem::path &path)
{
    return parse_manifest(read_file(path), path.parent_path());
}

std::string dump_manifest(const corpus_manifest &m)
{
    json j{{"version", m.version},
           {"defaults",
            {{"timeout_ms", std::chrono::duration_cast<std::chrono::milliseconds>(m.defaults.timeout).count()},
             {"working_dir", m.defaults.working_dir}}},
           {"programs", m.programs}};
    return j.dump(2) + '\n';
}

void write_manifest(const std::filesystem::path &path, const corpus_manifest &m)
{
    write_file(path, dump_manifest(m));
}

std::string_view to_string(ground_truth_label l) noexcept
{
    switch (l) {
    case ground_truth_label::neutral: return "neutral";
    case ground_truth_label::constant_overhead: return "constant_overhead";
    case ground_truth_label::injected_bug: return "injected_bug";
    }
    return "unknown";
}

namespace {

class uniform_source {
public:
    explicit uniform_source(std::uint64_t seed) : rng_(seed) {}

    double operator()(double lo, double hi)
    {
        const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    std::uint64_t below(std::uint64_t n) { return rng_() % n; }

private:
    std::mt19937_64 rng_;
};

simulated_runtime_model random_baseline(uniform_source &u, const synthetic_corpus_spec &spec)
{
    // Warmup stays well under the per-iteration work at 1e5 iterations, so
    // a per-iteration slowdown is visible from the first level.
    simulated_runtime_model m;
    m.interp_ns = u(20.0, 100.0);
    m.hot_threshold = static_cast<std::uint64_t>(u(200.0, 2000.0));
    m.compile_ns = u(5.0e4, 3.0e5);
    m.compiled_ns = u(15.0, 40.0);
    m.spec_success = u(0.8, 1.0);
    m.spec_gain_ns = u(0.0, m.compiled_ns / 4.0);
    m.deopt_ns = u(0.0, 20.0);
    m.noise_sd = spec.noise_sd;
    m.seed = spec.seed;
    return m;
}

} // namespace

synthetic_corpus synthesize_corpus(const synthetic_corpus_spec &spec)
{
    const std::size_t total = spec.neutral + spec.constant_overhead + spec.injected_bug;
    if (total == 0) {
        throw error(errc::config_error, "synthetic corpus needs at least one program");
    }
    if (!(spec.slowdown_factor > 1.0) || spec.overhead_delta_ns < 0.0 || spec.noise_sd < 0.0) {
        throw error(errc::config_error, "synthetic corpus parameters out of range");
    }

    std::vector<ground_truth_label> labels;
    labels.insert(labels.end(), spec.neutral, ground_truth_label::neutral);
    labels.insert(labels.end(), spec.constant_overhead, ground_truth_label::constant_overhead);
    labels.insert(labels.end(), spec.injected_bug, ground_truth_label::injected_bug);

    uniform_source u(spec.seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
    // Fisher-Yates so ids carry no label information.
    for (std::size_t i = labels.size(); i > 1; --i) {
        std::swap(labels[i - 1], labels[u.below(i)]);
    }

    synthetic_corpus out;
    out.manifest.version = manifest_version;
    out.manifest.defaults.timeout = std::chrono::seconds(60);
    const int width = static_cast<int>(std::to_string(total - 1).size());
    for (std::size_t i = 0; i < total; ++i) {
        std::string id = std::to_string(i);
        id = "p" + std::string(static_cast<std::size_t>(std::max(width, 4)) - id.size(), '0') + id;

        program_candidate p;
        p.id = id;
        p.run_spec = {"synthetic-program", id, std::string(iteration_placeholder)};
        p.template_id = "t-" + id;
        p.generator = "synthetic";
        p.timeout = out.manifest.defaults.timeout;
        out.manifest.programs.push_back(p);

        ground_truth_entry truth;
        truth.label = labels[i];
        truth.baseline = random_baseline(u, spec);
        truth.subject = truth.baseline;
        switch (truth.label) {
        case ground_truth_label::neutral: break;
        case ground_truth_label::constant_overhead: truth.subject.compile_ns += spec.overhead_delta_ns; break;
        case ground_truth_label::injected_bug:
            truth.subject.compiled_ns += (spec.slowdown_factor - 1.0) * truth.baseline.effective_compiled_ns();
            break;
        }
        out.models[{id, spec.baseline_config}] = truth.baseline;
        out.models[{id, spec.subject_config}] = truth.subject;
        out.ground_truth.emplace(id, std::move(truth));
    }
    return out;
}

} // namespace leveldiff
