#pragma once

// Campaign files, run artifacts and the report built from them. The
// `leveldiff` tool is a thin CLI11 wrapper over these functions.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leveldiff/engine.hpp"
#include "leveldiff/filters.hpp"
#include "leveldiff/io.hpp"

namespace leveldiff::cli {

/// Overrides the campaign's output directory when set.
inline constexpr const char *output_dir_env = "LEVELDIFF_OUTPUT_DIR";

inline constexpr int exit_ok = 0;
inline constexpr int exit_candidates_found = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_executor_unavailable = 3;

enum class executor_kind { simulated, subprocess };

struct campaign_file {
    configuration_pair pair;
    level_schedule schedule;
    std::string schedule_preset; // empty when given explicitly
    executor_kind executor = executor_kind::simulated;
    std::filesystem::path models_path;
    subprocess_options subprocess;
    filter_config filters;
    std::optional<std::filesystem::path> known_bugs_path;
    first_level_policy first_level = first_level_policy::execute_all;
    std::optional<std::filesystem::path> provided_measurements;
    std::size_t parallelism = 1;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "leveldiff-out";
};

/// Resolves `paper-lp` / `paper-rp`; nullopt for unknown names.
std::optional<level_schedule> schedule_preset(const std::string &name);

/// Relative paths resolve against `base_dir`. Throws `error(config_error)`.
campaign_file parse_campaign(const std::string &json_text, const std::filesystem::path &base_dir);
campaign_file load_campaign(const std::filesystem::path &path);

/// Schedule, filter and path checks that `run` would fail on.
void validate_campaign(const campaign_file &c);

struct run_options {
    bool fail_on_candidates = false;
    std::optional<std::filesystem::path> output_dir;
};

struct run_summary {
    int exit_code = exit_ok;
    std::filesystem::path output_dir;
    std::string message;
};

/// Artifacts: run.json, measurements.jsonl, verdicts.json, summary.json,
/// report.txt. Never throws for configuration problems; they map to exit codes.
run_summary cmd_run(const std::filesystem::path &campaign_path, const std::filesystem::path &manifest_path,
                    const run_options &options = {}, std::ostream *log = nullptr);

// ---------------------------------------------------------------------------
// Reporting

struct candidate_row {
    std::string program_id;
    std::string status;      // verdict rendered, or "Pending"
    std::vector<double> ratios; // per executed level, from the log
    std::vector<std::size_t> levels;
    std::vector<std::string> annotations;
};

struct pair_report {
    std::string pair_label;
    std::string pair_kind;
    std::size_t programs = 0;
    std::vector<double> thresholds;
    std::vector<std::uint64_t> iterations;
    std::vector<std::size_t> filtered_per_level;
    std::vector<std::size_t> executed_per_level;
    std::size_t errored = 0;
    std::size_t pass = 0;
    std::size_t false_positive = 0;
    std::size_t duplicate = 0;
    std::size_t unique = 0;
    std::size_t pending = 0;
    bool complete = false;
    nanoseconds time_total{0};
    nanoseconds time_excluding_first{0};
    nanoseconds wall_total{0};
    std::vector<candidate_row> candidates;
};

/// Pure function of the artifacts in `dir`; a truncated measurement log
/// yields a partial report. A directory without run.json is scanned for
/// per-pair subdirectories.
std::vector<pair_report> build_report(const std::filesystem::path &dir);

std::string render_text(const std::vector<pair_report> &reports);
/// Deterministic: excludes wall-clock figures.
std::string render_summary_json(const std::vector<pair_report> &reports);

// ---------------------------------------------------------------------------
// Synthetic corpora

synthetic_corpus_spec parse_synthetic_spec(const std::string &json_text);

/// Writes manifest.json, models.json, ground_truth.json and campaign.json.
void cmd_simulate(const std::filesystem::path &spec_path, const std::filesystem::path &out_dir);

} // namespace leveldiff::cli
