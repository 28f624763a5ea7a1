#pragma once

// Leveled differential campaign: run every active program under both
// configurations at ascending iteration counts, drop it the first time its
// ratio fails to exceed the level threshold, and optionally spend later levels
// only on the most promising candidates.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "leveldiff/executors.hpp"
#include "leveldiff/model.hpp"

namespace leveldiff {

enum class first_level_policy { execute_all, reuse_provided };

struct campaign_config {
    configuration_pair pair;
    level_schedule schedule;
    first_level_policy first_level = first_level_policy::execute_all;
    /// Level-0 records keyed by program id, used with reuse_provided.
    /// Programs without a record are executed normally.
    std::map<std::string, measurement_record> provided;
    std::size_t parallelism = 1;
};

/// True iff m2 / m1 > threshold. Throws on non-positive measurements.
bool check(nanoseconds m1, nanoseconds m2, double threshold);

/// Stable total order: latest ratio descending, history-less programs last,
/// ties by ascending id.
std::vector<program_candidate> prioritize(std::span<const program_candidate> programs, const history &h);

/// First min(k, |active|) active programs of `ordered`; inactive ones are
/// dropped and do not count against k.
std::vector<program_candidate> select_top_k(std::span<const program_candidate> ordered,
                                            const std::map<std::string, bool> &active, std::int64_t k);

/// Appends `record`; throws `errc::out_of_order_level` if it does not follow
/// the program's latest level.
history update_history(history h, const std::string &program_id, measurement_record record);

/// Invoked once per measured (program, level), in a deterministic order.
using record_sink = std::function<void(const measurement_record &)>;

campaign_result run_campaign(std::span<const program_candidate> corpus, const campaign_config &config,
                             const executor &exec, const record_sink &on_record = {});

} // namespace leveldiff
