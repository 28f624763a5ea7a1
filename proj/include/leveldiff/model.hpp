#pragma once

// Domain types shared by the campaign engine, executors, filters and CLI.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace leveldiff {

using nanoseconds = std::chrono::nanoseconds;

enum class errc {
    length_mismatch,
    non_ascending_ns,
    threshold_not_above_one,
    non_positive_measurement,
    out_of_order_level,
    executor_unavailable,
    parse_error,
    duplicate_id,
    missing_placeholder,
    config_error,
    missing_artifacts,
};

std::string_view to_string(errc code) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, const std::string &what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

/// Literal token substituted with the decimal iteration count.
inline constexpr std::string_view iteration_placeholder = "{N}";

struct program_candidate {
    std::string id;
    /// Command tokens; exactly one occurrence of `{N}` across all tokens.
    std::vector<std::string> run_spec;
    std::optional<std::string> template_id;
    std::string generator = "synthetic";
    std::optional<std::string> source_project;
    nanoseconds timeout{std::chrono::seconds(60)};
    /// Empty means the harness working directory.
    std::string working_dir;

    friend bool operator==(const program_candidate &, const program_candidate &) = default;
};

/// Number of `{N}` occurrences across the run_spec tokens.
std::size_t count_placeholders(const std::vector<std::string> &run_spec);

/// Replace `{N}` with the decimal iteration count in every token.
std::vector<std::string> render_run_spec(const std::vector<std::string> &run_spec,
                                         std::uint64_t iterations);

struct runtime_configuration {
    std::string id;
    std::vector<std::string> command_prefix;
    std::vector<std::string> extra_flags;
    std::string version_label;

    friend bool operator==(const runtime_configuration &, const runtime_configuration &) = default;
};

enum class pair_kind { level_pair, regression_pair };

std::string_view to_string(pair_kind kind) noexcept;

/// m1 comes from `baseline` (lower tier / older version), m2 from `subject`,
/// which is expected to be at least as fast.
struct configuration_pair {
    pair_kind kind = pair_kind::level_pair;
    runtime_configuration baseline;
    runtime_configuration subject;
    std::string label;

    friend bool operator==(const configuration_pair &, const configuration_pair &) = default;
};

struct level_schedule {
    std::vector<std::uint64_t> ns;
    std::vector<double> ths;
    /// One entry per level after the first; a non-positive entry disables
    /// top-k selection at that level.
    std::vector<std::int64_t> top_ks;

    std::size_t levels() const noexcept { return ns.size(); }

    friend bool operator==(const level_schedule &, const level_schedule &) = default;
};

std::optional<errc> validate_schedule(const level_schedule &schedule);

/// Throws `error` when the schedule is malformed.
void require_valid(const level_schedule &schedule);

/// Schedule used for the level-pair experiments: four levels from 1e5 to 3e6
/// iterations, top-k disabled.
level_schedule lp_preset_schedule();
/// Same iteration counts with the lower regression-pair thresholds.
level_schedule rp_preset_schedule();
/// The top-k limits used to evaluate prioritization.
std::vector<std::int64_t> preset_top_ks();

enum class outcome { ok, baseline_error, subject_error, timeout };

std::string_view to_string(outcome o) noexcept;
std::optional<outcome> outcome_from_string(std::string_view s) noexcept;

struct measurement_record {
    std::string program_id;
    std::string pair_label;
    std::size_t level_index = 0;
    std::uint64_t iterations = 0;
    nanoseconds m1{0};
    nanoseconds m2{0};
    /// m2 / m1 when outcome is ok, 0 otherwise.
    double ratio = 0.0;
    outcome result = outcome::ok;
    std::optional<std::string> exception_signature;
    nanoseconds wall_time_total{0};

    friend bool operator==(const measurement_record &, const measurement_record &) = default;
};

double compute_ratio(nanoseconds m1, nanoseconds m2) noexcept;

/// Per-program measurement trail, level indices strictly ascending.
class history {
public:
    void append(const std::string &program_id, measurement_record record);

    const std::vector<measurement_record> *records(const std::string &program_id) const;
    const measurement_record *latest(const std::string &program_id) const;

    const std::map<std::string, std::vector<measurement_record>> &all() const noexcept {
        return by_program_;
    }

    friend bool operator==(const history &, const history &) = default;

private:
    std::map<std::string, std::vector<measurement_record>> by_program_;
};

enum class verdict_kind { survivor, filtered_at_level, errored, false_positive, duplicate };

std::string_view to_string(verdict_kind kind) noexcept;

/// `duplicate_of` value for programs suppressed by the known-bug set.
inline constexpr std::string_view known_bug_marker = "known";

struct verdict {
    verdict_kind kind = verdict_kind::survivor;
    std::size_t level = 0;                 // filtered_at_level
    outcome failure = outcome::ok;         // errored
    std::string duplicate_of;              // duplicate

    static verdict survivor() { return {}; }
    static verdict filtered(std::size_t level) { return {verdict_kind::filtered_at_level, level, outcome::ok, {}}; }
    static verdict errored(outcome o) { return {verdict_kind::errored, 0, o, {}}; }
    static verdict false_positive() { return {verdict_kind::false_positive, 0, outcome::ok, {}}; }
    static verdict duplicate(std::string of) { return {verdict_kind::duplicate, 0, outcome::ok, std::move(of)}; }

    friend bool operator==(const verdict &, const verdict &) = default;
};

struct level_cost {
    std::size_t executions = 0;      // executor calls (two per executed program)
    std::size_t programs = 0;        // programs measured at this level
    std::size_t reused = 0;          // pre-supplied records ingested at this level
    nanoseconds measured{0};         // sum of m1 + m2
    nanoseconds wall{0};

    friend bool operator==(const level_cost &, const level_cost &) = default;
};

struct survivor_entry {
    std::string program_id;
    double final_ratio = 0.0;
    std::size_t last_level = 0;

    friend bool operator==(const survivor_entry &, const survivor_entry &) = default;
};

struct campaign_result {
    std::map<std::string, verdict> verdicts;
    std::map<std::string, std::vector<std::string>> annotations;
    /// Ordered by final ratio, descending; ties by id.
    std::vector<survivor_entry> survivors;
    std::vector<level_cost> cost;
    leveldiff::history history;

    std::size_t count(verdict_kind kind) const;
    nanoseconds measured_total(std::size_t from_level = 0) const;

    friend bool operator==(const campaign_result &, const campaign_result &) = default;
};

} // namespace leveldiff
