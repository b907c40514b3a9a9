#include "gdmatch/json_io.hpp"

#include "gdmatch/errors.hpp"

#include <cmath>
#include <sstream>

namespace gdm {

std::string_view Event::kind() const
{
    struct Name {
        std::string_view operator()(const event::Arrival&) const { return "arrival"; }
        std::string_view operator()(const event::Tight&) const { return "tight"; }
        std::string_view operator()(const event::Merge&) const { return "merge"; }
        std::string_view operator()(const event::Match&) const { return "match"; }
        std::string_view operator()(const event::Grow&) const { return "grow"; }
    };
    return std::visit(Name{}, what);
}

Json scalar_to_json(const Scalar& x)
{
    if (x.is_exact()) return x.str();
    return x.to_double();
}

Scalar scalar_from_json(const Json& j, NumericMode mode)
{
    if (j.is_string()) return Scalar::parse(j.get<std::string>(), mode);
    if (j.is_number_integer()) {
        return Scalar(mpq_class(j.dump())).converted(mode);
    }
    if (j.is_number_float()) {
        if (mode == NumericMode::exact) {
            throw InputError("exact mode needs integers or \"p/q\" strings, got " + j.dump());
        }
        double d = j.get<double>();
        if (!std::isfinite(d)) throw InputError("non-finite number");
        return Scalar(d);
    }
    throw InputError("expected a number, got " + j.dump());
}

namespace {

const Json& field(const Json& obj, const char* key)
{
    if (!obj.is_object()) throw InputError(std::string("expected an object holding '") + key + "'");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(std::string("missing field '") + key + "'");
    return *it;
}

Metric metric_from_json(const Json& j, NumericMode mode)
{
    switch (metric_kind_from_string(field(j, "kind").get<std::string>())) {
    case MetricKind::line: return Metric::line();
    case MetricKind::euclidean: return Metric::euclidean();
    case MetricKind::ring: return Metric::ring(scalar_from_json(field(j, "h"), mode));
    case MetricKind::matrix: {
        const Json& rows = field(j, "distances");
        if (!rows.is_array()) throw InputError("'distances' must be an array of rows");
        std::vector<std::vector<Scalar>> d;
        for (const Json& row : rows) {
            if (!row.is_array()) throw InputError("'distances' must be an array of rows");
            auto& out = d.emplace_back();
            for (const Json& x : row) out.push_back(scalar_from_json(x, mode));
        }
        return Metric::matrix(std::move(d));
    }
    }
    throw InputError("unknown metric");
}

Json metric_to_json(const Metric& m)
{
    Json j;
    j["kind"] = std::string(to_string(m.kind()));
    if (m.kind() == MetricKind::ring) j["h"] = scalar_to_json(m.circumference());
    if (m.kind() == MetricKind::matrix) {
        Json rows = Json::array();
        for (const auto& row : m.distances()) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(scalar_to_json(x));
            rows.push_back(std::move(r));
        }
        j["distances"] = std::move(rows);
    }
    return j;
}

Point point_from_json(const Json& j, MetricKind kind, NumericMode mode)
{
    switch (kind) {
    case MetricKind::matrix:
        if (!j.is_number_unsigned()) throw InvalidPoint("matrix positions are nonnegative integer indices, got " + j.dump());
        return Point::matrix(j.get<std::size_t>());
    case MetricKind::line: return Point::line(scalar_from_json(j, mode));
    case MetricKind::ring: return {MetricKind::ring, 0, scalar_from_json(j, mode), {}};
    case MetricKind::euclidean:
        if (!j.is_array() || j.size() != 2) throw InvalidPoint("euclidean positions are [x, y], got " + j.dump());
        return Point::plane(scalar_from_json(j[0], mode), scalar_from_json(j[1], mode));
    }
    throw InvalidPoint("unknown metric kind");
}

Json point_to_json(const Point& p)
{
    switch (p.kind) {
    case MetricKind::matrix: return p.index;
    case MetricKind::line:
    case MetricKind::ring: return scalar_to_json(p.x);
    case MetricKind::euclidean: return Json::array({scalar_to_json(p.x), scalar_to_json(p.y)});
    }
    return nullptr;
}

Json pair_to_json(RequestId u, RequestId v) { return Json::array({u, v}); }

} // namespace

Instance instance_from_json(const Json& doc, std::optional<NumericMode> mode_override, NumericMode fallback)
{
    try {
        const Variant variant = variant_from_string(field(doc, "variant").get<std::string>());
        const Json& metric_doc = field(doc, "metric");
        const MetricKind kind = metric_kind_from_string(field(metric_doc, "kind").get<std::string>());

        NumericMode mode = kind == MetricKind::euclidean ? NumericMode::floating : fallback;
        if (auto it = doc.find("mode"); it != doc.end()) mode = numeric_mode_from_string(it->get<std::string>());
        if (mode_override) mode = *mode_override;

        Metric metric = metric_from_json(metric_doc, mode);

        const Json& reqs = field(doc, "requests");
        if (!reqs.is_array()) throw InputError("'requests' must be an array");
        std::vector<Request> requests;
        for (const Json& r : reqs) {
            Request req;
            req.index = requests.size();
            req.pos = point_from_json(field(r, "pos"), kind, mode);
            req.atime = scalar_from_json(field(r, "atime"), mode);
            if (auto it = r.find("sgn"); it != r.end()) {
                if (!it->is_number_integer()) throw InputError("'sgn' must be -1, 0 or 1");
                req.sgn = it->get<int>();
            }
            requests.push_back(std::move(req));
        }
        return Instance(variant, mode, std::move(metric), std::move(requests));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("schema error: ") + e.what());
    }
}

Json instance_to_json(const Instance& instance)
{
    Json doc;
    doc["variant"] = std::string(to_string(instance.variant()));
    doc["mode"] = std::string(to_string(instance.mode()));
    doc["metric"] = metric_to_json(instance.metric());
    Json reqs = Json::array();
    for (const Request& r : instance.requests()) {
        Json j;
        j["pos"] = point_to_json(r.pos);
        j["atime"] = scalar_to_json(r.atime);
        j["sgn"] = r.sgn;
        reqs.push_back(std::move(j));
    }
    doc["requests"] = std::move(reqs);
    return doc;
}

Instance parse_instance(std::string_view text, std::optional<NumericMode> mode_override, NumericMode fallback)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(doc, mode_override, fallback);
}

std::string serialize_instance(const Instance& instance)
{
    return instance_to_json(instance).dump(2) + "\n";
}

Json event_to_json(const Event& ev)
{
    struct Payload {
        Json operator()(const event::Arrival& e) const { return {{"request", e.request}, {"set", e.set}}; }
        Json operator()(const event::Tight& e) const { return {{"u", e.u}, {"v", e.v}}; }
        Json operator()(const event::Merge& e) const { return {{"set", e.set}, {"left", e.left}, {"right", e.right}}; }
        Json operator()(const event::Match& e) const { return {{"u", e.u}, {"v", e.v}}; }
        Json operator()(const event::Grow& e) const
        {
            return {{"set", e.set}, {"from", scalar_to_json(e.from)}, {"to", scalar_to_json(e.to)}};
        }
    };
    Json j;
    j["t"] = scalar_to_json(ev.time);
    j["kind"] = std::string(ev.kind());
    j["payload"] = std::visit(Payload{}, ev.what);
    return j;
}

Event event_from_json(const Json& j, NumericMode mode)
{
    try {
        Event ev;
        ev.time = scalar_from_json(field(j, "t"), mode);
        const std::string kind = field(j, "kind").get<std::string>();
        const Json& p = field(j, "payload");
        auto id = [&](const char* key) { return field(p, key).get<std::size_t>(); };
        if (kind == "arrival") {
            ev.what = event::Arrival{id("request"), id("set")};
        } else if (kind == "tight") {
            ev.what = event::Tight{id("u"), id("v")};
        } else if (kind == "merge") {
            ev.what = event::Merge{id("set"), id("left"), id("right")};
        } else if (kind == "match") {
            ev.what = event::Match{id("u"), id("v")};
        } else if (kind == "grow") {
            ev.what = event::Grow{id("set"), scalar_from_json(field(p, "from"), mode), scalar_from_json(field(p, "to"), mode)};
        } else {
            throw InputError("unknown event kind '" + kind + "'");
        }
        return ev;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed event: ") + e.what());
    }
}

std::string write_event_log(const EventLog& log)
{
    std::string out;
    for (const Event& ev : log) {
        out += event_to_json(ev).dump();
        out += '\n';
    }
    return out;
}

EventLog read_event_log(std::string_view text, NumericMode mode)
{
    EventLog log;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            log.push_back(event_from_json(Json::parse(line), mode));
        } catch (const nlohmann::json::exception& e) {
            throw InputError("malformed trace line " + std::to_string(log.size() + 1) + ": " + e.what());
        }
    }
    return log;
}

Json summary_to_json(const RunResult& result)
{
    Json j;
    j["connection_cost"] = scalar_to_json(result.connection_cost);
    j["waiting_cost"] = scalar_to_json(result.waiting_cost);
    j["total_cost"] = scalar_to_json(result.total_cost);
    j["dual_objective"] = scalar_to_json(result.dual_objective);
    j["m"] = result.m;
    j["num_sets"] = result.sets.size();
    j["num_marked_edges"] = result.marked.size();
    return j;
}

Json certificate_to_json(const DualCertificate& c)
{
    Json j;
    Json sets = Json::array();
    for (const CertifiedSet& s : c.sets) {
        sets.push_back({{"id", s.id}, {"members", s.members}, {"sur", s.sur}, {"y", scalar_to_json(s.y)}});
    }
    j["sets"] = std::move(sets);
    j["objective"] = scalar_to_json(c.objective);
    Json slack = Json::array();
    for (const EdgeSlack& e : c.per_edge_slack) {
        slack.push_back({{"edge", pair_to_json(e.u, e.v)}, {"slack", scalar_to_json(e.slack)}});
    }
    j["per_edge_slack"] = std::move(slack);
    Json matching = Json::array();
    for (const MatchedPair& p : c.matching) matching.push_back({{"pair", pair_to_json(p.u, p.v)}, {"time", scalar_to_json(p.time)}});
    j["matching"] = std::move(matching);
    j["connection_cost"] = scalar_to_json(c.connection_cost);
    j["waiting_cost"] = scalar_to_json(c.waiting_cost);
    j["total_cost"] = scalar_to_json(c.total_cost);
    return j;
}

Json violation_to_json(const Violation& v)
{
    return {{"property", v.property}, {"detail", v.detail}, {"event_index", v.event_index}};
}

Json ratio_report_to_json(const RatioReport& r)
{
    Json j;
    j["gd_total"] = scalar_to_json(r.gd_total);
    j["dual_objective"] = scalar_to_json(r.dual_objective);
    j["opt_value"] = r.opt_value ? scalar_to_json(*r.opt_value) : Json(nullptr);
    j["ratio_vs_dual"] = scalar_to_json(r.ratio_vs_dual);
    j["ratio_vs_opt"] = r.ratio_vs_opt ? scalar_to_json(*r.ratio_vs_opt) : Json(nullptr);
    j["bound_2m_plus_1"] = scalar_to_json(r.bound);
    return j;
}

Json opt_to_json(const OptSolution& s)
{
    Json pairs = Json::array();
    for (auto [u, v] : s.pairs) pairs.push_back(pair_to_json(u, v));
    return {{"value", scalar_to_json(s.value)}, {"pairs", std::move(pairs)}, {"method", std::string(to_string(s.method))}};
}

} // namespace gdm
