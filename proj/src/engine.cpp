#include "gdmatch/engine.hpp"

#include "gdmatch/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace gdm {

namespace {

std::string pair_str(RequestId u, RequestId v)
{
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

} // namespace

GreedyDual::GreedyDual(const Instance& instance, EngineOptions options)
    : instance_(&instance), options_(options), n_(instance.size()),
      cost_(n_ * n_), eligible_(n_ * n_, 0),
      clock_(Scalar::zero(instance.mode())),
      active_of_(n_, 0), potential_(n_, Scalar::zero(instance.mode())), matched_(n_, 0)
{
    for (RequestId u = 0; u < n_; ++u) {
        for (RequestId v = 0; v < n_; ++v) {
            if (auto c = instance.edge_cost(u, v)) {
                cost_[u * n_ + v] = std::move(*c);
                eligible_[u * n_ + v] = 1;
            }
        }
    }
    if (n_ > 0) clock_ = instance.request(0).atime;
}

SetId GreedyDual::active_set(RequestId u) const
{
    if (!arrived(u)) throw std::out_of_range("request " + std::to_string(u) + " has not arrived");
    return active_of_[u];
}

bool GreedyDual::finished() const noexcept
{
    return next_arrival_ == n_ && std::all_of(matched_.begin(), matched_.end(), [](char c) { return c != 0; });
}

NextEvent GreedyDual::next_event_time() const
{
    std::optional<NextEvent> best;
    if (next_arrival_ < n_) best = NextEvent{instance_->request(next_arrival_).atime, NextEventKind::arrival};

    for (RequestId u = 0; u < next_arrival_; ++u) {
        const SetRecord& a = sets_[active_of_[u]];
        for (RequestId v = u + 1; v < next_arrival_; ++v) {
            if (!eligible(u, v) || active_of_[u] == active_of_[v]) continue;
            const SetRecord& b = sets_[active_of_[v]];
            int rate = (a.status == SetStatus::growing) + (b.status == SetStatus::growing);
            if (rate == 0) continue;
            Scalar t = clock_ + (cost(u, v) - potential_[u] - potential_[v]) / Scalar(rate);
            if (!best || t < best->time) best = NextEvent{std::move(t), NextEventKind::tight};
        }
    }
    if (!best) {
        throw EnginePanic("stuck-state", "no pending arrival and no growing cross pair at time " + clock_.str());
    }
    return *best;
}

void GreedyDual::advance_to(const Scalar& t)
{
    if (t < clock_) throw EnginePanic("monotonicity", "advance to " + t.str() + " from " + clock_.str());
    if (t == clock_) return;
    if (!finished() && next_event_time().time < t) {
        throw EnginePanic("skipped-event", "advance to " + t.str() + " passes an event at " + next_event_time().time.str());
    }
    const Scalar dt = t - clock_;
    for (SetRecord& s : sets_) {
        if (s.status != SetStatus::growing) continue;
        s.y += dt;
        if (!s.growth.empty() && s.growth.back().second == clock_) {
            s.growth.back().second = t;
        } else {
            s.growth.emplace_back(clock_, t);
        }
        for (RequestId u : s.members) potential_[u] += dt;
        events_.push_back({t, event::Grow{s.id, clock_, t}});
    }
    clock_ = t;
}

RequestId GreedyDual::on_arrival()
{
    if (next_arrival_ >= n_) throw EnginePanic("arrival", "no pending request");
    const RequestId u = next_arrival_;
    if (!(instance_->request(u).atime == clock_)) {
        throw EnginePanic("arrival", "request " + std::to_string(u) + " arrives at " +
                                         instance_->request(u).atime.str() + " but clock is " + clock_.str());
    }
    SetRecord s;
    s.id = sets_.size();
    s.members = {u};
    s.sur = instance_->surplus(s.members);
    s.y = Scalar::zero(instance_->mode());
    s.status = SetStatus::growing;
    s.free = {u};
    s.created = clock_;
    active_of_[u] = s.id;
    potential_[u] = Scalar::zero(instance_->mode());
    events_.push_back({clock_, event::Arrival{u, s.id}});
    sets_.push_back(std::move(s));
    ++next_arrival_;
    return u;
}

std::optional<RequestPair> GreedyDual::least_tight_pair() const
{
    for (RequestId u = 0; u < next_arrival_; ++u) {
        for (RequestId v = u + 1; v < next_arrival_; ++v) {
            if (!eligible(u, v) || active_of_[u] == active_of_[v]) continue;
            Scalar slack = cost(u, v) - potential_[u] - potential_[v];
            if (instance_->mode() == NumericMode::exact) {
                if (slack.sign() < 0) {
                    throw EnginePanic("P5 feasibility", "constraint of " + pair_str(u, v) + " exceeded by " + (-slack).str());
                }
                if (slack.sign() == 0) return RequestPair{u, v};
            } else if (slack.to_double() <= kTightEpsilon) {
                return RequestPair{u, v};
            }
        }
    }
    return std::nullopt;
}

void GreedyDual::process_tight()
{
    while (auto pair = least_tight_pair()) {
        events_.push_back({clock_, event::Tight{pair->first, pair->second}});
        merge(pair->first, pair->second);
    }
}

void GreedyDual::merge(RequestId u, RequestId v)
{
    const SetId left = active_of_[u];
    const SetId right = active_of_[v];

    SetRecord s;
    s.id = sets_.size();
    const SetRecord& a = sets_[left];
    const SetRecord& b = sets_[right];
    std::merge(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(), std::back_inserter(s.members));
    std::merge(a.free.begin(), a.free.end(), b.free.begin(), b.free.end(), std::back_inserter(s.free));
    s.sur = instance_->surplus(s.members);
    s.y = Scalar::zero(instance_->mode());
    s.children = std::pair{left, right};
    s.created = clock_;

    for (RequestId x : a.members) {
        for (RequestId z : b.members) {
            if (eligible(x, z)) frozen_[ordered(x, z)] = potential_[x] + potential_[z];
        }
    }
    for (RequestId x : s.members) active_of_[x] = s.id;
    sets_[left].status = SetStatus::inactive;
    sets_[left].parent = s.id;
    sets_[right].status = SetStatus::inactive;
    sets_[right].parent = s.id;

    marked_.push_back(ordered(u, v));
    events_.push_back({clock_, event::Merge{s.id, left, right}});

    match_free(s);
    if (s.free.size() != s.sur) {
        throw EnginePanic("P3 surplus", "set " + std::to_string(s.id) + " keeps " + std::to_string(s.free.size()) +
                                            " free requests but has surplus " + std::to_string(s.sur));
    }
    s.status = s.free.empty() ? SetStatus::nongrowing : SetStatus::growing;
    sets_.push_back(std::move(s));
}

void GreedyDual::match_free(SetRecord& set)
{
    // FIFO: the earliest free request takes the earliest eligible free partner.
    for (;;) {
        auto first = set.free.begin();
        if (first == set.free.end()) return;
        auto partner = std::find_if(std::next(first), set.free.end(), [&](RequestId w) { return eligible(*first, w); });
        if (partner == set.free.end()) return;
        const RequestId x = *first;
        const RequestId z = *partner;
        matched_[x] = matched_[z] = 1;
        matching_.push_back({x, z, clock_});
        events_.push_back({clock_, event::Match{x, z}});
        set.free.erase(partner);
        set.free.erase(set.free.begin());
    }
}

Scalar GreedyDual::constraint_value(RequestId u, RequestId v) const
{
    if (u >= n_ || v >= n_ || !eligible(u, v)) throw std::invalid_argument("ineligible pair " + pair_str(u, v));
    if (!arrived(u) || !arrived(v)) throw std::invalid_argument("pair " + pair_str(u, v) + " has not fully arrived");
    if (active_of_[u] != active_of_[v]) return potential_[u] + potential_[v];
    return frozen_.at(ordered(u, v));
}

void GreedyDual::check_invariants() const
{
    const Instance& inst = *instance_;

    // P1: active sets partition the arrived requests.
    std::vector<int> cover(next_arrival_, 0);
    for (const SetRecord& s : sets_) {
        if (!s.active()) continue;
        for (RequestId u : s.members) {
            if (u >= next_arrival_) throw EnginePanic("P1 partition", "set " + std::to_string(s.id) + " holds unarrived request");
            ++cover[u];
            if (active_of_[u] != s.id) throw EnginePanic("P1 partition", "stale active map for request " + std::to_string(u));
        }
    }
    for (RequestId u = 0; u < next_arrival_; ++u) {
        if (cover[u] != 1) throw EnginePanic("P1 partition", "request " + std::to_string(u) + " is in " + std::to_string(cover[u]) + " active sets");
    }

    // P2: laminar family.
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        for (std::size_t j = i + 1; j < sets_.size(); ++j) {
            const auto& a = sets_[i].members;
            const auto& b = sets_[j].members;
            std::vector<RequestId> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (!common.empty() && common.size() != a.size() && common.size() != b.size()) {
                throw EnginePanic("P2 laminar", "sets " + std::to_string(i) + " and " + std::to_string(j) + " cross");
            }
        }
    }

    // P3: free count equals surplus; growing iff something is free.
    for (const SetRecord& s : sets_) {
        if (inst.surplus(s.members) != s.sur) throw EnginePanic("P3 surplus", "cached surplus of set " + std::to_string(s.id));
        if (!s.active()) continue;
        if (s.free.size() != s.sur) throw EnginePanic("P3 surplus", "set " + std::to_string(s.id));
        if ((s.status == SetStatus::growing) != !s.free.empty()) throw EnginePanic("P3 surplus", "status of set " + std::to_string(s.id));
        for (RequestId u : s.free) {
            if (matched_[u]) throw EnginePanic("P3 surplus", "matched request " + std::to_string(u) + " listed free");
        }
    }

    // P4: potentials.
    for (RequestId u = 0; u < next_arrival_; ++u) {
        Scalar sum = Scalar::zero(inst.mode());
        for (const SetRecord& s : sets_) {
            if (std::binary_search(s.members.begin(), s.members.end(), u)) sum += s.y;
        }
        if (!tolerant_equal(sum, potential_[u])) throw EnginePanic("P4 potential", "cached Y of request " + std::to_string(u));
        const Scalar waited = clock_ - inst.request(u).atime;
        if (!tolerant_le(sum, waited)) throw EnginePanic("P4 potential", "Y exceeds waiting time for request " + std::to_string(u));
        if (!matched_[u] && !tolerant_equal(sum, waited)) {
            throw EnginePanic("P4 potential", "free request " + std::to_string(u) + " has Y " + sum.str() + " != " + waited.str());
        }
    }

    // P5: dual feasibility.
    for (RequestId u = 0; u < next_arrival_; ++u) {
        for (RequestId v = u + 1; v < next_arrival_; ++v) {
            if (!eligible(u, v)) continue;
            if (!tolerant_le(constraint_value(u, v), cost(u, v))) {
                throw EnginePanic("P5 feasibility", "constraint of " + pair_str(u, v) + " violated");
            }
        }
    }

    // P6: marked edges form a forest spanning each active set, never crossing a boundary.
    std::vector<RequestId> root(n_);
    std::iota(root.begin(), root.end(), RequestId{0});
    auto find = [&](RequestId x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    std::vector<std::size_t> inside(sets_.size(), 0);
    for (auto [u, v] : marked_) {
        if (active_of_[u] != active_of_[v]) throw EnginePanic("P6 marked forest", "marked edge " + pair_str(u, v) + " crosses an active set");
        RequestId ru = find(u);
        RequestId rv = find(v);
        if (ru == rv) throw EnginePanic("P6 marked forest", "marked edge " + pair_str(u, v) + " closes a cycle");
        root[ru] = rv;
        ++inside[active_of_[u]];
    }
    for (const SetRecord& s : sets_) {
        if (!s.active()) continue;
        if (inside[s.id] + 1 != s.members.size()) throw EnginePanic("P6 marked forest", "set " + std::to_string(s.id) + " is not spanned by a tree");
        for (RequestId u : s.members) {
            if (find(u) != find(s.members.front())) throw EnginePanic("P6 marked forest", "set " + std::to_string(s.id) + " is disconnected");
        }
    }

    // P7: marked edges stay tight.
    for (auto [u, v] : marked_) {
        if (!tolerant_equal(frozen_.at({u, v}), cost(u, v))) throw EnginePanic("P7 marked tight", "edge " + pair_str(u, v));
    }

    // P11: matched pairs are eligible and had arrived.
    for (const MatchedPair& p : matching_) {
        if (!eligible(p.u, p.v)) throw EnginePanic("P11 eligibility", "matched " + pair_str(p.u, p.v));
        if (inst.request(p.u).atime > p.time || inst.request(p.v).atime > p.time) {
            throw EnginePanic("P11 eligibility", "matched " + pair_str(p.u, p.v) + " before arrival");
        }
    }
}

RunResult GreedyDual::result() const
{
    const Instance& inst = *instance_;
    RunResult r;
    r.variant = inst.variant();
    r.mode = inst.mode();
    r.m = inst.m();
    r.matching = matching_;
    r.sets = sets_;
    r.marked = marked_;
    r.events = events_;
    r.connection_cost = r.waiting_cost = r.dual_objective = Scalar::zero(inst.mode());
    for (const MatchedPair& p : matching_) {
        r.connection_cost += inst.distance(p.u, p.v);
        r.waiting_cost += (p.time - inst.request(p.u).atime) + (p.time - inst.request(p.v).atime);
    }
    for (const SetRecord& s : sets_) r.dual_objective += Scalar(static_cast<int>(s.sur)) * s.y;
    r.total_cost = r.connection_cost + r.waiting_cost;
    return r;
}

RunResult run(const Instance& instance, EngineOptions options)
{
    GreedyDual engine(instance, options);
    const std::size_t n = instance.size();
    RequestId next = 0;
    while (!engine.finished()) {
        NextEvent ev = engine.next_event_time();
        engine.advance_to(ev.time);
        while (next < n && instance.request(next).atime == engine.clock()) next = engine.on_arrival() + 1;
        engine.process_tight();
        if (options.check_invariants) engine.check_invariants();
    }
    return engine.result();
}

} // namespace gdm
