#ifndef GDMATCH_JSON_IO_HPP
#define GDMATCH_JSON_IO_HPP

#include "gdmatch/certifier.hpp"
#include "gdmatch/engine.hpp"
#include "gdmatch/instance.hpp"
#include "gdmatch/offline_opt.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace gdm {

using Json = nlohmann::ordered_json;

/// Exact scalars become strings ("3", "1/4"); floating ones become numbers.
Json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j, NumericMode mode);

/**
 *  Instance documents:
 *
 *      {"variant": "mpmd"|"mbpmd", "mode": "exact"|"float",
 *       "metric": {"kind": "matrix", "distances": [[...]]} | {"kind": "line"}
 *               | {"kind": "euclidean"} | {"kind": "ring", "h": ...},
 *       "requests": [{"pos": ..., "atime": ..., "sgn": -1|0|1}, ...]}
 *
 *  `pos` is an index (matrix), a number (line, ring) or [x, y] (euclidean).
 *  The mode is taken from `mode_override`, else the document, else `fallback`;
 *  euclidean documents without an explicit mode default to float.
 */
Instance instance_from_json(const Json& doc, std::optional<NumericMode> mode_override = std::nullopt,
                            NumericMode fallback = NumericMode::exact);
Json instance_to_json(const Instance& instance);

/// Parse errors of any kind surface as InputError.
Instance parse_instance(std::string_view text, std::optional<NumericMode> mode_override = std::nullopt,
                        NumericMode fallback = NumericMode::exact);
std::string serialize_instance(const Instance& instance);

/// {"t", "kind", "payload"}
Json event_to_json(const Event& ev);
Event event_from_json(const Json& j, NumericMode mode);

/// One JSON object per line.
std::string write_event_log(const EventLog& log);
EventLog read_event_log(std::string_view text, NumericMode mode);

/// {connection_cost, waiting_cost, total_cost, dual_objective, m, num_sets, num_marked_edges}
Json summary_to_json(const RunResult& result);
Json certificate_to_json(const DualCertificate& certificate);
Json violation_to_json(const Violation& violation);
Json ratio_report_to_json(const RatioReport& report);
/// {value, pairs, method}
Json opt_to_json(const OptSolution& solution);

} // namespace gdm

#endif // GDMATCH_JSON_IO_HPP
