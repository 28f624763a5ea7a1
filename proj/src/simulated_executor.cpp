#include <algorithm>
#include <cmath>
#include <random>

#include "leveldiff/executors.hpp"

namespace leveldiff {

bool compilation_profitable(double interp_ns, double compiled_ns, double iterations, double compile_ns)
{
    return (interp_ns - compiled_ns) * iterations > compile_ns;
}

bool speculation_beneficial(double probability, double gain_ns, double deopt_ns)
{
    return probability * gain_ns > (1.0 - probability) * deopt_ns;
}

double simulated_runtime_model::effective_compiled_ns() const noexcept
{
    const double t = compiled_ns - spec_success * spec_gain_ns + (1.0 - spec_success) * deopt_ns;
    return std::max(t, 0.0);
}

double simulated_runtime_model::base_duration(std::uint64_t iterations) const noexcept
{
    const auto n = static_cast<double>(iterations);
    const auto hot = static_cast<double>(hot_threshold);
    double total = interp_ns * std::min(n, hot);
    if (iterations > hot_threshold) {
        total += compile_ns + (n - hot) * effective_compiled_ns();
    }
    return total;
}

void validate_model(const simulated_runtime_model &m)
{
    const bool durations_ok = m.compile_ns >= 0 && m.interp_ns >= 0 && m.compiled_ns >= 0 &&
                              m.spec_gain_ns >= 0 && m.deopt_ns >= 0 && m.noise_sd >= 0;
    if (!durations_ok || !(m.spec_success >= 0.0 && m.spec_success <= 1.0)) {
        throw error(errc::config_error, "simulated runtime model has out-of-range parameters");
    }
}

namespace {

constexpr std::uint64_t fnv_offset = 1469598103934665603ULL;
constexpr std::uint64_t fnv_prime = 1099511628211ULL;

std::uint64_t fnv1a(std::uint64_t hash, std::string_view bytes)
{
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= fnv_prime;
    }
    // separator so ("ab","c") and ("a","bc") differ
    hash ^= 0xff;
    hash *= fnv_prime;
    return hash;
}

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i) {
        hash ^= (v >> (i * 8)) & 0xffu;
        hash *= fnv_prime;
    }
    return hash;
}

// 53-bit uniform in (0, 1).
double open_unit(std::mt19937_64 &rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

double seeded_noise(std::uint64_t seed, std::string_view program_id, std::string_view config_id,
                    std::size_t level_index)
{
    std::uint64_t key = fnv1a(fnv_offset, seed);
    key = fnv1a(key, program_id);
    key = fnv1a(key, config_id);
    key = fnv1a(key, static_cast<std::uint64_t>(level_index));
    std::mt19937_64 rng(key);
    // Box-Muller; std::normal_distribution is not portable across libraries.
    for (;;) {
        const double u1 = open_unit(rng);
        const double u2 = open_unit(rng);
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        if (std::abs(z) <= 3.0) {
            return z;
        }
    }
}

nanoseconds execute_simulated(const simulated_runtime_model &model, std::uint64_t iterations,
                              std::string_view program_id, std::string_view config_id,
                              std::size_t level_index, std::uint64_t stream_seed)
{
    double eps = 0.0;
    if (model.noise_sd > 0.0) {
        eps = model.noise_sd * seeded_noise(model.seed ^ stream_seed, program_id, config_id, level_index);
    }
    const double value = std::round(model.base_duration(iterations) * (1.0 + eps));
    return nanoseconds{static_cast<nanoseconds::rep>(std::max(value, 0.0))};
}

void simulated_executor::ensure_available(std::span<const program_candidate> corpus,
                                          const configuration_pair &pair) const
{
    for (const auto &program : corpus) {
        for (const auto *config : {&pair.baseline, &pair.subject}) {
            if (!models_.contains({program.id, config->id})) {
                throw error(errc::executor_unavailable, "no simulated model for program '" + program.id +
                                                            "' under configuration '" + config->id + "'");
            }
        }
    }
}

execution_result simulated_executor::execute(const program_candidate &program,
                                             const runtime_configuration &config,
                                             std::uint64_t iterations, std::size_t level_index) const
{
    auto it = models_.find({program.id, config.id});
    if (it == models_.end()) {
        return {exec_status::failed, nanoseconds{0}, nanoseconds{0}, timing_source::simulated, std::nullopt,
                "no simulated model"};
    }
    const auto d = execute_simulated(it->second, iterations, program.id, config.id, level_index, stream_seed_);
    execution_result r;
    r.duration = d;
    r.wall = d;
    r.source = timing_source::simulated;
    return r;
}

} // namespace leveldiff
