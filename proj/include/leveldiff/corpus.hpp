#pragma once

// Corpus manifests written by external program generators, and seeded
// synthetic corpora for the simulated runtime.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "leveldiff/executors.hpp"
#include "leveldiff/model.hpp"

namespace leveldiff {

struct manifest_defaults {
    nanoseconds timeout{std::chrono::seconds(60)};
    std::string working_dir;

    friend bool operator==(const manifest_defaults &, const manifest_defaults &) = default;
};

struct corpus_manifest {
    int version = 1;
    manifest_defaults defaults;
    std::vector<program_candidate> programs;

    friend bool operator==(const corpus_manifest &, const corpus_manifest &) = default;
};

inline constexpr int manifest_version = 1;

/// Checks unique ids, a single `{N}` per run_spec and positive timeouts.
void validate_manifest(const corpus_manifest &m);

/// Parses and validates a manifest. Run-spec tokens and working directories
/// beginning with `./` or `../` are resolved against `base_dir`.
corpus_manifest parse_manifest(const std::string &json_text, const std::filesystem::path &base_dir);
corpus_manifest load_manifest(const std::filesystem::path &path);

std::string dump_manifest(const corpus_manifest &m);
void write_manifest(const std::filesystem::path &path, const corpus_manifest &m);

enum class ground_truth_label { neutral, constant_overhead, injected_bug };

std::string_view to_string(ground_truth_label l) noexcept;

struct synthetic_corpus_spec {
    std::size_t neutral = 0;
    std::size_t constant_overhead = 0;
    std::size_t injected_bug = 0;
    /// Multiplier applied to the subject's effective per-iteration time.
    double slowdown_factor = 1.5;
    /// Added to the subject's compilation cost for constant-overhead programs.
    double overhead_delta_ns = 2.0e7;
    double noise_sd = 0.02;
    std::uint64_t seed = 1;
    std::string baseline_config = "baseline";
    std::string subject_config = "subject";
};

struct ground_truth_entry {
    ground_truth_label label = ground_truth_label::neutral;
    simulated_runtime_model baseline;
    simulated_runtime_model subject;
};

struct synthetic_corpus {
    corpus_manifest manifest;
    model_table models;
    std::map<std::string, ground_truth_entry> ground_truth;
};

/// Deterministic in `spec.seed`. Neutral programs share one model under both
/// configurations, constant-overhead programs differ only in compile cost,
/// injected bugs have subject T_eff = factor * baseline T_eff.
synthetic_corpus synthesize_corpus(const synthetic_corpus_spec &spec);

} // namespace leveldiff
