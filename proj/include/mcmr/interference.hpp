#pragma once

// Feasibility of concurrent transmissions under the Protocol Model and the
// single-collision-domain abstraction, and enumeration of maximal activation sets.

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "mcmr/errors.hpp"
#include "mcmr/model.hpp"

namespace mcmr {

/// Links active in the same tick. Kept sorted by Link ordering.
struct ActivationSet {
  std::vector<Link> links;

  bool contains(const Link& l) const { return std::binary_search(links.begin(), links.end(), l); }
  friend bool operator==(const ActivationSet&, const ActivationSet&) = default;
  friend auto operator<=>(const ActivationSet& a, const ActivationSet& b) { return a.links <=> b.links; }
};

namespace detail {

inline const Point& point_of(const Placement& p, NodeIndex v) {
  if (v >= p.coords.size())
    throw InputError(ErrorCode::missing_location, "placement", "no location for node index " + std::to_string(v));
  return p.coords[v];
}

// Whether transmission `tx` survives a concurrent transmission from `other_tx`.
inline bool guard_holds(const Link& tx, NodeIndex other_tx, const Placement& placement, const Rational& factor_sq,
                        Guard guard) {
  const Point& xi = point_of(placement, tx.src);
  const Point& xj = point_of(placement, tx.dst);
  const Point& xk = point_of(placement, other_tx);
  const Point& ref = guard == Guard::transmitter ? xi : xj;
  return squared_distance(xk, ref) >= factor_sq * squared_distance(xi, xj);
}

}  // namespace detail

/// Protocol Model check for links on one channel. With the transmitter guard,
/// i->j survives transmitter k iff |Xk - Xi| >= (1 + delta)|Xi - Xj|; the receiver
/// guard measures |Xk - Xj| instead. Compared on squared distances, exactly.
inline bool protocol_feasible(std::span<const Link> tx, const Placement& placement, const Rational& delta,
                              Guard guard = Guard::transmitter) {
  if (tx.empty()) return true;
  for (const auto& l : tx)
    if (l.channel != tx.front().channel) throw std::invalid_argument("protocol_feasible: links span several channels");
  Rational factor = 1 + delta;
  Rational factor_sq = factor * factor;
  for (std::size_t a = 0; a < tx.size(); ++a)
    for (std::size_t b = 0; b < tx.size(); ++b) {
      if (a == b) continue;
      if (!detail::guard_holds(tx[a], tx[b].src, placement, factor_sq, guard)) return false;
    }
  return true;
}

inline const Placement* require_placement(const Network& net, const Placement* placement) {
  if (net.interference().kind == InterferenceSpec::Kind::protocol && placement == nullptr)
    throw InputError(ErrorCode::missing_location, "placement", "protocol model needs node locations");
  return placement;
}

/// Interface constraint (each node uses a channel's interface at most once per tick)
/// plus the per-channel interference check.
inline bool activation_feasible(const ActivationSet& a, const Network& net, const Placement* placement = nullptr) {
  require_placement(net, placement);
  std::map<ChannelId, std::vector<Link>> by_channel;
  for (const auto& l : a.links) {
    if (l.src == l.dst || !net.has_interface(l.src, l.channel) || !net.has_interface(l.dst, l.channel))
      throw std::invalid_argument("activation_feasible: link not in network");
    by_channel[l.channel].push_back(l);
  }
  for (const auto& [ch, links] : by_channel) {
    std::vector<NodeIndex> endpoints;
    for (const auto& l : links) {
      endpoints.push_back(l.src);
      endpoints.push_back(l.dst);
    }
    std::sort(endpoints.begin(), endpoints.end());
    if (std::adjacent_find(endpoints.begin(), endpoints.end()) != endpoints.end()) return false;
    const auto& spec = net.interference();
    if (spec.kind == InterferenceSpec::Kind::single_collision_domain) {
      if (links.size() > 1) return false;
    } else if (!protocol_feasible(links, *placement, spec.delta, spec.guard)) {
      return false;
    }
  }
  return true;
}

/// Whether two distinct links can be active together. Feasibility under both
/// models is pairwise, so maximal activation sets are maximal independent sets
/// of the conflict graph.
inline bool links_compatible(const Link& a, const Link& b, const Network& net, const Placement* placement) {
  if (a.channel != b.channel) return true;
  if (a.src == b.src || a.src == b.dst || a.dst == b.src || a.dst == b.dst) return false;
  const auto& spec = net.interference();
  if (spec.kind == InterferenceSpec::Kind::single_collision_domain) return false;
  Link pair[2] = {a, b};
  return protocol_feasible(pair, *placement, spec.delta, spec.guard);
}

/// Maximal activation sets restricted to one channel.
struct ChannelSchedule {
  ChannelId channel = 0;
  std::vector<Link> links;
  std::vector<ActivationSet> maximal;  // never empty; {} when the channel has no links
};

namespace detail {

// Bron-Kerbosch with pivoting over the compatibility graph.
class MaximalSetEnumerator {
 public:
  MaximalSetEnumerator(std::vector<std::vector<bool>> compatible, std::size_t cap)
      : adj_(std::move(compatible)), cap_(cap) {}

  std::vector<std::vector<std::size_t>> run() {
    std::vector<std::size_t> r, p(adj_.size()), x;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
    expand(r, p, x);
    return std::move(out_);
  }

 private:
  void expand(std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
    if (++visited_ > cap_) throw LimitExceeded("activation-set enumeration exceeded its candidate cap");
    if (p.empty() && x.empty()) {
      auto set = r;
      std::sort(set.begin(), set.end());
      out_.push_back(std::move(set));
      return;
    }
    // Pivot: vertex of P u X with the most neighbours in P.
    std::size_t pivot = p.empty() ? x.front() : p.front();
    std::size_t best = 0;
    for (const auto* pool : {&p, &x})
      for (std::size_t u : *pool) {
        std::size_t cnt = 0;
        for (std::size_t v : p) cnt += adj_[u][v] ? 1 : 0;
        if (cnt > best) best = cnt, pivot = u;
      }
    std::vector<std::size_t> candidates;
    for (std::size_t v : p)
      if (!adj_[pivot][v]) candidates.push_back(v);
    for (std::size_t v : candidates) {
      std::vector<std::size_t> np, nx;
      for (std::size_t u : p)
        if (adj_[v][u]) np.push_back(u);
      for (std::size_t u : x)
        if (adj_[v][u]) nx.push_back(u);
      r.push_back(v);
      expand(r, std::move(np), std::move(nx));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  std::vector<std::vector<bool>> adj_;
  std::size_t cap_;
  std::size_t visited_ = 0;
  std::vector<std::vector<std::size_t>> out_;
};

}  // namespace detail

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

inline std::vector<ChannelSchedule> enumerate_channel_schedules(const Network& net, const Placement* placement,
                                                                std::size_t cap = kDefaultEnumerationCap) {
  require_placement(net, placement);
  std::vector<Link> all = derive_links(net);
  std::vector<ChannelSchedule> out;
  for (const auto& ch : net.channels()) {
    ChannelSchedule sched;
    sched.channel = ch.id;
    for (const auto& l : all)
      if (l.channel == ch.id) sched.links.push_back(l);
    const std::size_t k = sched.links.size();
    std::vector<std::vector<bool>> compat(k, std::vector<bool>(k, false));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        compat[a][b] = compat[b][a] = links_compatible(sched.links[a], sched.links[b], net, placement);
    for (auto& idx : detail::MaximalSetEnumerator(std::move(compat), cap).run()) {
      ActivationSet s;
      for (std::size_t i : idx) s.links.push_back(sched.links[i]);
      sched.maximal.push_back(std::move(s));
    }
    std::sort(sched.maximal.begin(), sched.maximal.end());
    out.push_back(std::move(sched));
  }
  return out;
}

/// Cross-channel maximal sets: the product of per-channel maximal sets, since
/// links on different channels never conflict.
inline std::vector<ActivationSet> enumerate_maximal_activation_sets(const Network& net,
                                                                    const Placement* placement = nullptr,
                                                                    std::size_t cap = kDefaultEnumerationCap) {
  auto per_channel = enumerate_channel_schedules(net, placement, cap);
  std::size_t total = 1;
  for (const auto& s : per_channel) {
    if (total > cap / s.maximal.size()) throw LimitExceeded("activation-set count exceeds cap");
    total *= s.maximal.size();
  }
  std::vector<ActivationSet> out;
  out.reserve(total);
  std::vector<std::size_t> pick(per_channel.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    ActivationSet s;
    for (std::size_t c = 0; c < per_channel.size(); ++c) {
      const auto& part = per_channel[c].maximal[pick[c]].links;
      s.links.insert(s.links.end(), part.begin(), part.end());
    }
    out.push_back(std::move(s));
    for (std::size_t c = per_channel.size(); c-- > 0;) {
      if (++pick[c] < per_channel[c].maximal.size()) break;
      pick[c] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mcmr
