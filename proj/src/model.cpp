#include "leveldiff/model.hpp"

#include <algorithm>

namespace leveldiff {

std::string_view to_string(errc code) noexcept
{
    switch (code) {
    case errc::length_mismatch: return "LengthMismatch";
    case errc::non_ascending_ns: return "NonAscendingNs";
    case errc::threshold_not_above_one: return "ThresholdNotAboveOne";
    case errc::non_positive_measurement: return "NonPositiveMeasurement";
    case errc::out_of_order_level: return "OutOfOrderLevel";
    case errc::executor_unavailable: return "ExecutorUnavailable";
    case errc::parse_error: return "ParseError";
    case errc::duplicate_id: return "DuplicateId";
    case errc::missing_placeholder: return "MissingPlaceholder";
    case errc::config_error: return "ConfigError";
    case errc::missing_artifacts: return "MissingArtifacts";
    }
    return "Unknown";
}

std::size_t count_placeholders(const std::vector<std::string> &run_spec)
{
    std::size_t count = 0;
    for (const auto &token : run_spec) {
        for (auto pos = token.find(iteration_placeholder); pos != std::string::npos;
             pos = token.find(iteration_placeholder, pos + iteration_placeholder.size())) {
            ++count;
        }
    }
    return count;
}

std::vector<std::string> render_run_spec(const std::vector<std::string> &run_spec,
                                         std::uint64_t iterations)
{
    const std::string value = std::to_string(iterations);
    std::vector<std::string> rendered;
    rendered.reserve(run_spec.size());
    for (auto token : run_spec) {
        for (auto pos = token.find(iteration_placeholder); pos != std::string::npos;
             pos = token.find(iteration_placeholder, pos + value.size())) {
            token.replace(pos, iteration_placeholder.size(), value);
        }
        rendered.push_back(std::move(token));
    }
    return rendered;
}

std::string_view to_string(pair_kind kind) noexcept
{
    return kind == pair_kind::level_pair ? "LevelPair" : "RegressionPair";
}

std::optional<errc> validate_schedule(const level_schedule &schedule)
{
    const auto n = schedule.ns.size();
    if (n == 0 || schedule.ths.size() != n || schedule.top_ks.size() != n - 1) {
        return errc::length_mismatch;
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (schedule.ns[i] <= schedule.ns[i - 1]) {
            return errc::non_ascending_ns;
        }
    }
    if (schedule.ns.front() == 0) {
        return errc::non_ascending_ns;
    }
    // written so that NaN fails too
    if (!std::all_of(schedule.ths.begin(), schedule.ths.end(), [](double th) { return th > 1.0; })) {
        return errc::threshold_not_above_one;
    }
    return std::nullopt;
}

void require_valid(const level_schedule &schedule)
{
    if (auto e = validate_schedule(schedule)) {
        throw error(*e, "invalid level schedule: " + std::string(to_string(*e)));
    }
}

level_schedule lp_preset_schedule()
{
    return {{100000, 500000, 1000000, 3000000}, {1.2, 1.2, 1.3, 1.4}, {-1, -1, -1}};
}

level_schedule rp_preset_schedule()
{
    return {{100000, 500000, 1000000, 3000000}, {1.1, 1.1, 1.2, 1.3}, {-1, -1, -1}};
}

std::vector<std::int64_t> preset_top_ks()
{
    return {500, 100, 50};
}

std::string_view to_string(outcome o) noexcept
{
    switch (o) {
    case outcome::ok: return "Ok";
    case outcome::baseline_error: return "BaselineError";
    case outcome::subject_error: return "SubjectError";
    case outcome::timeout: return "Timeout";
    }
    return "Unknown";
}

std::optional<outcome> outcome_from_string(std::string_view s) noexcept
{
    for (auto o : {outcome::ok, outcome::baseline_error, outcome::subject_error, outcome::timeout}) {
        if (to_string(o) == s) {
            return o;
        }
    }
    return std::nullopt;
}

double compute_ratio(nanoseconds m1, nanoseconds m2) noexcept
{
    return static_cast<double>(m2.count()) / static_cast<double>(m1.count());
}

void history::append(const std::string &program_id, measurement_record record)
{
    auto &records = by_program_[program_id];
    if (!records.empty() && record.level_index <= records.back().level_index) {
        throw error(errc::out_of_order_level,
                    "level " + std::to_string(record.level_index) + " for '" + program_id +
                        "' does not follow level " + std::to_string(records.back().level_index));
    }
    records.push_back(std::move(record));
}

const std::vector<measurement_record> *history::records(const std::string &program_id) const
{
    auto it = by_program_.find(program_id);
    return it == by_program_.end() ? nullptr : &it->second;
}

const measurement_record *history::latest(const std::string &program_id) const
{
    auto *list = records(program_id);
    return list == nullptr || list->empty() ? nullptr : &list->back();
}

std::string_view to_string(verdict_kind kind) noexcept
{
    switch (kind) {
    case verdict_kind::survivor: return "Survivor";
    case verdict_kind::filtered_at_level: return "FilteredAtLevel";
    case verdict_kind::errored: return "Errored";
    case verdict_kind::false_positive: return "FalsePositive";
    case verdict_kind::duplicate: return "Duplicate";
    }
    return "Unknown";
}

std::size_t campaign_result::count(verdict_kind kind) const
{
    return static_cast<std::size_t>(std::count_if(verdicts.begin(), verdicts.end(),
                                                  [kind](const auto &v) { return v.second.kind == kind; }));
}

nanoseconds campaign_result::measured_total(std::size_t from_level) const
{
    nanoseconds total{0};
    for (std::size_t i = from_level; i < cost.size(); ++i) {
        total += cost[i].measured;
    }
    return total;
}

} // namespace leveldiff
