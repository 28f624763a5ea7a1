#pragma once

// The Execute step: run one program under one runtime configuration for N
// iterations and report how long it took.

#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leveldiff/model.hpp"

namespace leveldiff {

enum class exec_status { ok, failed, timeout };

enum class timing_source { self_reported, wall_clock, simulated };

/// One half of a measurement pair.
struct execution_result {
    exec_status status = exec_status::ok;
    nanoseconds duration{0};
    /// Bookkeeping time the call cost; equals `duration` for the simulator.
    nanoseconds wall{0};
    timing_source source = timing_source::simulated;
    std::optional<std::string> exception_signature;
    /// Set on spawn failures, malformed timing lines and non-zero exits.
    std::string diagnostic;
};

/// Executors are stateless from the caller's point of view and must tolerate
/// concurrent `execute` calls.
class executor {
public:
    virtual ~executor() = default;

    /// Throws `error(errc::executor_unavailable)` when this executor cannot
    /// serve the given corpus under the given pair.
    virtual void ensure_available(std::span<const program_candidate> corpus,
                                  const configuration_pair &pair) const = 0;

    /// `level_index` identifies the campaign level; executors may use it to
    /// derive reproducible randomness.
    virtual execution_result execute(const program_candidate &program,
                                     const runtime_configuration &config,
                                     std::uint64_t iterations,
                                     std::size_t level_index) const = 0;
};

// ---------------------------------------------------------------------------
// Cost model

/// Compiling pays off when the per-iteration savings over N iterations exceed
/// the one-time compilation cost: (T_i - T_c) * N > C.
bool compilation_profitable(double interp_ns, double compiled_ns, double iterations, double compile_ns);

/// Speculating pays off when the expected gain outweighs the expected
/// deoptimization penalty: p * G > (1 - p) * D.
bool speculation_beneficial(double probability, double gain_ns, double deopt_ns);

/// Per program x configuration parameters of the simulated tiered runtime.
/// Durations are nanoseconds; per-iteration values may be fractional.
struct simulated_runtime_model {
    double compile_ns = 0.0;       // one-time compilation cost
    double interp_ns = 0.0;        // interpreted time per iteration
    double compiled_ns = 0.0;      // compiled time per iteration
    std::uint64_t hot_threshold = 0; // iterations before compilation triggers
    double spec_success = 1.0;     // speculation success probability
    double spec_gain_ns = 0.0;     // per-iteration gain when speculation holds
    double deopt_ns = 0.0;         // penalty when speculation fails
    double noise_sd = 0.0;         // relative standard deviation
    std::uint64_t seed = 0;

    /// Effective compiled per-iteration time, clamped at zero.
    double effective_compiled_ns() const noexcept;
    /// Noise-free duration of N iterations.
    double base_duration(std::uint64_t iterations) const noexcept;

    friend bool operator==(const simulated_runtime_model &, const simulated_runtime_model &) = default;
};

/// Throws `error(errc::config_error)` on negative durations or p outside [0, 1].
void validate_model(const simulated_runtime_model &model);

/// Truncated (+-3 sd) standard normal deviate drawn from a stream keyed by
/// the given identifiers. Pure function of its arguments.
double seeded_noise(std::uint64_t seed, std::string_view program_id, std::string_view config_id,
                    std::size_t level_index);

/// round(base(N) * (1 + eps)), eps = noise_sd * seeded_noise(...).
nanoseconds execute_simulated(const simulated_runtime_model &model, std::uint64_t iterations,
                              std::string_view program_id = {}, std::string_view config_id = {},
                              std::size_t level_index = 0, std::uint64_t stream_seed = 0);

/// Models keyed by (program id, configuration id).
using model_table = std::map<std::pair<std::string, std::string>, simulated_runtime_model>;

class simulated_executor final : public executor {
public:
    explicit simulated_executor(model_table models, std::uint64_t stream_seed = 0)
        : models_(std::move(models)), stream_seed_(stream_seed) {}

    void ensure_available(std::span<const program_candidate> corpus,
                          const configuration_pair &pair) const override;

    execution_result execute(const program_candidate &program, const runtime_configuration &config,
                             std::uint64_t iterations, std::size_t level_index) const override;

    const model_table &models() const noexcept { return models_; }

private:
    model_table models_;
    std::uint64_t stream_seed_;
};

// ---------------------------------------------------------------------------
// Subprocess execution

/// Parses the `LEVELDIFF_NS <digits>` protocol from a program's stdout. The
/// last well-formed line wins. A line that starts with the tag but is not
/// well formed makes the whole output malformed.
struct timing_parse {
    std::optional<nanoseconds> duration;
    bool malformed = false;
};
timing_parse parse_timing_output(std::string_view stdout_text);

/// First line of `stderr_text` matching any pattern, reduced to the matched
/// text with memory addresses and digits removed.
std::optional<std::string> extract_exception_signature(std::string_view stderr_text,
                                                       const std::vector<std::regex> &patterns);

/// Java-style `pkg.Name(Exception|Error)` plus fatal-error markers.
std::vector<std::string> default_exception_patterns();

struct subprocess_options {
    std::vector<std::string> exception_patterns = default_exception_patterns();
    /// Extra time allowed after SIGKILL for the child to be reaped.
    nanoseconds kill_grace{std::chrono::milliseconds(500)};
};

/// Launches command_prefix + extra_flags + rendered run_spec.
class subprocess_executor final : public executor {
public:
    explicit subprocess_executor(subprocess_options options = {});

    void ensure_available(std::span<const program_candidate> corpus,
                          const configuration_pair &pair) const override;

    execution_result execute(const program_candidate &program, const runtime_configuration &config,
                             std::uint64_t iterations, std::size_t level_index) const override;

private:
    subprocess_options options_;
    std::vector<std::regex> patterns_;
};

/// Outcome of one child process run with captured output.
struct process_output {
    int exit_code = -1;
    bool timed_out = false;
    bool spawn_failed = false;
    std::string out;
    std::string err;
    nanoseconds wall{0};
};

process_output run_process(const std::vector<std::string> &argv, const std::string &working_dir,
                           nanoseconds timeout, nanoseconds kill_grace);

} // namespace leveldiff
