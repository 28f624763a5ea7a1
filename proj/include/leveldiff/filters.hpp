#pragma once

// Post-campaign filtering of survivors: an accumulated-difference trend test
// for false positives and template/exception duplicate grouping.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leveldiff/model.hpp"

namespace leveldiff {

struct filter_config {
    /// Minimum fraction of proportional growth the accumulated difference
    /// must show between the first and last measured level. In (0, 1].
    double growth_fraction = 0.5;
    /// Survivors with fewer measured levels are kept unverified.
    std::size_t min_levels_for_trend = 2;
};

void validate(const filter_config &cfg);

struct fp_decision {
    std::string program_id;
    bool keep = true;
    std::string annotation;
};

/// Keep iff d_last >= growth_fraction * (Ns[last] / Ns[first]) * d_first,
/// with d = |m1 - m2| over the program's ok records.
fp_decision false_positive_check(const std::string &program_id, std::span<const measurement_record> records,
                                 const level_schedule &schedule, const filter_config &cfg);

/// Applies `false_positive_check` to every survivor in `h`.
std::vector<fp_decision> false_positive_filter(const history &h, std::span<const std::string> survivors,
                                               const level_schedule &schedule, const filter_config &cfg);

/// (generator, template_id) pairs already associated with reported bugs.
using known_bug_set = std::set<std::pair<std::string, std::string>>;

/// Newline-delimited `<generator>\t<template_id>`; a missing file is empty.
known_bug_set load_known_bugs(const std::filesystem::path &path);
void append_known_bugs(const std::filesystem::path &path, const known_bug_set &entries);

struct dedup_entry {
    std::string program_id;
    std::string generator;
    std::optional<std::string> template_id;
    std::optional<std::string> exception_signature;
    double final_ratio = 0.0;

    friend bool operator==(const dedup_entry &, const dedup_entry &) = default;
};

enum class duplicate_reason { known_template, same_template, same_exception };

std::string_view to_string(duplicate_reason r) noexcept;

struct duplicate_info {
    /// Kept representative, or `known_bug_marker`.
    std::string of;
    /// Program this one was grouped with directly; differs from `of` when
    /// that program was itself absorbed in the exception pass.
    std::string matched;
    duplicate_reason reason = duplicate_reason::same_template;

    friend bool operator==(const duplicate_info &, const duplicate_info &) = default;
};

struct dedup_result {
    /// Kept entries, in input order.
    std::vector<dedup_entry> unique;
    std::map<std::string, duplicate_info> duplicates;
    /// Templates of kept programs, to be appended to the known-bug set.
    known_bug_set new_known;
};

/// Template pass (plus known-bug suppression), then exception pass scoped per
/// generator. Representatives are the highest final ratio, ties lowest id.
dedup_result duplicate_filter(std::span<const dedup_entry> survivors, const known_bug_set &known);

} // namespace leveldiff
