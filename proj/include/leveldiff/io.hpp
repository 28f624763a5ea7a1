#pragma once

// JSON encodings for the persisted artifacts: manifests, model tables,
// campaign files and the line-delimited measurement log.

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "leveldiff/corpus.hpp"
#include "leveldiff/executors.hpp"
#include "leveldiff/filters.hpp"
#include "leveldiff/model.hpp"

namespace leveldiff {

using json = nlohmann::json;

void to_json(json &j, const program_candidate &p);
void from_json(const json &j, program_candidate &p);
void to_json(json &j, const runtime_configuration &c);
void from_json(const json &j, runtime_configuration &c);
void to_json(json &j, const configuration_pair &p);
void from_json(const json &j, configuration_pair &p);
void to_json(json &j, const level_schedule &s);
void from_json(const json &j, level_schedule &s);
void to_json(json &j, const measurement_record &r);
void from_json(const json &j, measurement_record &r);
void to_json(json &j, const simulated_runtime_model &m);
void from_json(const json &j, simulated_runtime_model &m);
void to_json(json &j, const verdict &v);
void from_json(const json &j, verdict &v);
void to_json(json &j, const filter_config &c);
void from_json(const json &j, filter_config &c);

json model_table_to_json(const model_table &models);
model_table model_table_from_json(const json &j);

json ground_truth_to_json(const std::map<std::string, ground_truth_entry> &truth);

/// Reads a whole file; throws `error(errc::parse_error)` if it cannot be read.
std::string read_file(const std::filesystem::path &path);
/// Parses JSON text, mapping library errors to `errc::parse_error`.
json parse_json(const std::string &text, const std::string &what);
void write_file(const std::filesystem::path &path, const std::string &content);

/// One compact JSON object per line, newline-terminated.
std::string to_log_line(const measurement_record &r);

/// Parses complete lines of a measurement log. A trailing line without a
/// newline is treated as torn and ignored; malformed complete lines throw.
std::vector<measurement_record> parse_measurement_log(const std::string &text);

/// Appends records to a log file, flushing after each line.
class measurement_log_writer {
public:
    explicit measurement_log_writer(const std::filesystem::path &path, bool truncate = true);
    ~measurement_log_writer();
    measurement_log_writer(const measurement_log_writer &) = delete;
    measurement_log_writer &operator=(const measurement_log_writer &) = delete;

    void append(const measurement_record &r);

private:
    std::filesystem::path path_;
    std::FILE *file_ = nullptr;
};

} // namespace leveldiff
