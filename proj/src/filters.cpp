#include "leveldiff/filters.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace leveldiff {

void validate(const filter_config &cfg)
{
    if (!(cfg.growth_fraction > 0.0 && cfg.growth_fraction <= 1.0)) {
        throw error(errc::config_error, "growth_fraction must lie in (0, 1]");
    }
    if (cfg.min_levels_for_trend < 1) {
        throw error(errc::config_error, "min_levels_for_trend must be positive");
    }
}

fp_decision false_positive_check(const std::string &program_id, std::span<const measurement_record> records,
                                 const level_schedule &schedule, const filter_config &cfg)
{
    std::vector<const measurement_record *> ok;
    for (const auto &r : records) {
        if (r.result == outcome::ok) {
            ok.push_back(&r);
        }
    }
    if (ok.size() < cfg.min_levels_for_trend) {
        return {program_id, true, "trend-unverified"};
    }
    const auto &first = *ok.front();
    const auto &last = *ok.back();
    const double d_first = std::abs(static_cast<double>(first.m1.count() - first.m2.count()));
    const double d_last = std::abs(static_cast<double>(last.m1.count() - last.m2.count()));
    const double growth = static_cast<double>(schedule.ns.at(last.level_index)) /
                          static_cast<double>(schedule.ns.at(first.level_index));
    const bool keep = d_last >= cfg.growth_fraction * growth * d_first;
    std::string note = "accumulated difference grew x" +
                       (d_first > 0 ? std::to_string(d_last / d_first) : std::string("inf")) + " over x" +
                       std::to_string(growth) + " iterations";
    return {program_id, keep, std::move(note)};
}

std::vector<fp_decision> false_positive_filter(const history &h, std::span<const std::string> survivors,
                                               const level_schedule &schedule, const filter_config &cfg)
{
    validate(cfg);
    std::vector<fp_decision> out;
    out.reserve(survivors.size());
    for (const auto &id : survivors) {
        const auto *records = h.records(id);
        if (records == nullptr) {
            out.push_back({id, true, "trend-unverified"});
            continue;
        }
        out.push_back(false_positive_check(id, *records, schedule, cfg));
    }
    return out;
}

known_bug_set load_known_bugs(const std::filesystem::path &path)
{
    known_bug_set known;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        auto tab = line.find('\t');
        if (line.empty() || tab == std::string::npos) {
            continue;
        }
        known.emplace(line.substr(0, tab), line.substr(tab + 1));
    }
    return known;
}

void append_known_bugs(const std::filesystem::path &path, const known_bug_set &entries)
{
    if (entries.empty()) {
        return;
    }
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw error(errc::config_error, "cannot append to known-bug set " + path.string());
    }
    for (const auto &[generator, tmpl] : entries) {
        out << generator << '\t' << tmpl << '\n';
    }
}

std::string_view to_string(duplicate_reason r) noexcept
{
    switch (r) {
    case duplicate_reason::known_template: return "known-template";
    case duplicate_reason::same_template: return "same-template";
    case duplicate_reason::same_exception: return "same-exception";
    }
    return "unknown";
}

namespace {

bool ranks_before(const dedup_entry &a, const dedup_entry &b)
{
    return a.final_ratio != b.final_ratio ? a.final_ratio > b.final_ratio : a.program_id < b.program_id;
}

// Groups `members` by key; for each group keeps the best-ranked entry and
// returns absorbed -> representative.
template <typename KeyFn>
std::map<std::string, std::string> group_pass(const std::vector<const dedup_entry *> &members, KeyFn key_of)
{
    using key_t = std::pair<std::string, std::string>;
    std::map<key_t, const dedup_entry *> best;
    for (const auto *e : members) {
        if (auto key = key_of(*e)) {
            auto [it, inserted] = best.emplace(*key, e);
            if (!inserted && ranks_before(*e, *it->second)) {
                it->second = e;
            }
        }
    }
    std::map<std::string, std::string> absorbed;
    for (const auto *e : members) {
        if (auto key = key_of(*e)) {
            const auto *rep = best.at(*key);
            if (rep != e) {
                absorbed.emplace(e->program_id, rep->program_id);
            }
        }
    }
    return absorbed;
}

} // namespace

dedup_result duplicate_filter(std::span<const dedup_entry> survivors, const known_bug_set &known)
{
    using key_t = std::optional<std::pair<std::string, std::string>>;
    dedup_result result;

    std::vector<const dedup_entry *> remaining;
    for (const auto &e : survivors) {
        if (e.template_id && known.contains({e.generator, *e.template_id})) {
            result.duplicates[e.program_id] = {std::string(known_bug_marker), std::string(known_bug_marker),
                                               duplicate_reason::known_template};
        } else {
            remaining.push_back(&e);
        }
    }

    const auto by_template = group_pass(remaining, [](const dedup_entry &e) -> key_t {
        if (!e.template_id) {
            return std::nullopt;
        }
        return std::pair{e.generator, *e.template_id};
    });
    std::erase_if(remaining, [&](const dedup_entry *e) { return by_template.contains(e->program_id); });

    const auto by_exception = group_pass(remaining, [](const dedup_entry &e) -> key_t {
        if (!e.exception_signature || e.exception_signature->empty()) {
            return std::nullopt;
        }
        return std::pair{e.generator, *e.exception_signature};
    });
    std::erase_if(remaining, [&](const dedup_entry *e) { return by_exception.contains(e->program_id); });

    for (const auto &[id, rep] : by_exception) {
        result.duplicates[id] = {rep, rep, duplicate_reason::same_exception};
    }
    for (const auto &[id, rep] : by_template) {
        // The template representative may itself have been absorbed by
        // exception; point at the final kept program.
        auto final_rep = by_exception.contains(rep) ? by_exception.at(rep) : rep;
        result.duplicates[id] = {final_rep, rep, duplicate_reason::same_template};
    }

    for (const auto &e : survivors) {
        if (!result.duplicates.contains(e.program_id)) {
            result.unique.push_back(e);
            if (e.template_id) {
                result.new_known.emplace(e.generator, *e.template_id);
            }
        }
    }
    return result;
}

} // namespace leveldiff
