#include "gdmatch/instance.hpp"

#include "gdmatch/errors.hpp"

#include <string>

namespace gdm {

std::string_view to_string(Variant variant)
{
    return variant == Variant::mpmd ? "mpmd" : "mbpmd";
}

Variant variant_from_string(std::string_view text)
{
    if (text == "mpmd") return Variant::mpmd;
    if (text == "mbpmd") return Variant::mbpmd;
    throw InputError("unknown variant '" + std::string(text) + "' (expected mpmd|mbpmd)");
}

namespace {

Point convert_point(const Point& p, NumericMode mode)
{
    Point out = p;
    out.x = p.x.converted(mode);
    out.y = p.y.converted(mode);
    return out;
}

} // namespace

Instance::Instance(Variant variant, NumericMode mode, Metric metric, std::vector<Request> requests)
    : variant_(variant), mode_(mode), metric_(metric.converted(mode)), requests_(std::move(requests))
{
    if (metric_.kind() == MetricKind::euclidean && mode_ == NumericMode::exact) {
        throw InputError("euclidean instances require float mode (distances are irrational in general)");
    }
    if (auto violation = metric_.validate()) {
        throw InputError("metric validation failed: " + violation->describe());
    }
    if (requests_.empty()) throw InputError("instance has no requests");
    if (requests_.size() % 2 != 0) {
        throw InputError("odd request count " + std::to_string(requests_.size()));
    }

    int balance = 0;
    for (std::size_t i = 0; i < requests_.size(); ++i) {
        Request& r = requests_[i];
        r.index = i;
        r.atime = r.atime.converted(mode_);
        r.pos = convert_point(r.pos, mode_);
        if (metric_.kind() == MetricKind::ring) r.pos = metric_.ring_point(r.pos.x);
        metric_.check_point(r.pos);
        if (r.atime.sign() < 0) throw InputError("request " + std::to_string(i) + " has negative arrival time");
        if (i > 0 && r.atime < requests_[i - 1].atime) {
            throw InputError("arrival times not nondecreasing at request " + std::to_string(i));
        }
        if (variant_ == Variant::mpmd && r.sgn != 0) {
            throw InputError("request " + std::to_string(i) + " has nonzero polarity in an mpmd instance");
        }
        if (variant_ == Variant::mbpmd && r.sgn != 1 && r.sgn != -1) {
            throw InputError("request " + std::to_string(i) + " needs polarity +1 or -1 in an mbpmd instance");
        }
        balance += r.sgn;
    }
    if (balance != 0) {
        throw InputError("unbalanced polarities: positive minus negative = " + std::to_string(balance));
    }
}

bool Instance::eligible(RequestId u, RequestId v) const
{
    return u != v && request(u).sgn == -request(v).sgn;
}

Scalar Instance::distance(RequestId u, RequestId v) const
{
    return metric_.distance(request(u).pos, request(v).pos);
}

std::optional<Scalar> Instance::edge_cost(RequestId u, RequestId v) const
{
    if (!eligible(u, v)) return std::nullopt;
    return distance(u, v) + abs(request(u).atime - request(v).atime);
}

unsigned Instance::surplus(std::span<const RequestId> members) const
{
    if (variant_ == Variant::mpmd) return static_cast<unsigned>(members.size() % 2);
    long sum = 0;
    for (RequestId u : members) sum += request(u).sgn;
    return static_cast<unsigned>(sum < 0 ? -sum : sum);
}

Instance Instance::converted(NumericMode mode) const
{
    return Instance(variant_, mode, metric_, requests_);
}

} // namespace gdm
