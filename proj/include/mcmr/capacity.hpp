#pragma once

// Capacity linear programs. Given a network, node placement, flow configuration
// and routing scheme, the steady-state LP time-shares maximal activation sets and
// routes each flow subject to per-link capacity w * (time the link is active).
//
// Transport capacity credits each delivered bit with its source-destination
// displacement (unit displacement in abstract regions). Min-sense throughput is
// max t with t <= lambda_f, optionally scaled by n; average-sense is sum lambda_f.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mcmr/errors.hpp"
#include "mcmr/interference.hpp"
#include "mcmr/model.hpp"
#include "mcmr/ratlp.hpp"

namespace mcmr {

enum class Routing { single_channel, multi_channel };

inline const char* routing_name(Routing r) { return r == Routing::single_channel ? "sr" : "mr"; }

struct Objective {
  enum class Kind { transport, ms, as };
  Kind kind = Kind::as;
  bool scale_by_n = false;  // min-sense only

  static Objective transport() { return {Kind::transport, false}; }
  static Objective ms(bool scale_by_n) { return {Kind::ms, scale_by_n}; }
  static Objective as() { return {Kind::as, false}; }

  const char* name() const {
    switch (kind) {
      case Kind::transport: return "transport";
      case Kind::ms: return "ms";
      case Kind::as: return "as";
    }
    return "?";
  }
  const char* units() const { return kind == Kind::transport ? "bit-m/s" : "bits/s"; }
};

enum class Backend { exact, floating };

/// How activation time-shares enter the LP. `per_channel` gives each channel its
/// own unit of time over that channel's maximal sets; `joint` uses one unit of
/// time over cross-channel maximal sets. Both describe the same feasible rates,
/// because channels never constrain each other.
enum class ScheduleFormulation { per_channel, joint };

struct CapacityOptions {
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  double eps = 1e-9;
  ScheduleFormulation schedule = ScheduleFormulation::per_channel;
};

/// Fixed node path for the flow sourced at a node (key); any channel per hop.
using RouteHints = std::map<NodeIndex, std::vector<NodeIndex>>;

template <class F>
F to_field(const Rational& r) {
  if constexpr (std::is_same_v<F, Rational>) {
    return r;
  } else {
    return static_cast<F>(r.get_d());
  }
}

/// Displacement used by the transport objective.
template <class F>
F displacement(const Network& net, const Placement* placement, NodeIndex a, NodeIndex b) {
  if (!net.region().geometric()) return F(1);
  if (!placement) throw InputError(ErrorCode::missing_location, "placement", "transport needs node locations");
  Rational sq = squared_distance(detail::point_of(*placement, a), detail::point_of(*placement, b));
  if constexpr (std::is_same_v<F, Rational>) {
    if (auto root = exact_sqrt(sq)) return *root;
    throw InputError(ErrorCode::unsupported, "backend",
                     "distance between '" + net.node_id(a) + "' and '" + net.node_id(b) +
                         "' is irrational; use the float backend");
  } else {
    return static_cast<F>(std::sqrt(sq.get_d()));
  }
}

template <class F>
struct FlowPath {
  NodeIndex source = 0;
  std::vector<Link> links;
  F rate{};
};

template <class F>
struct CapacityResult {
  F value{};
  std::string units;
  Objective objective;
  Routing routing = Routing::multi_channel;
  FlowConfig flows;
  std::vector<F> flow_rates;  // indexed by source node
  /// Cross-channel schedule: activation set -> fraction of time.
  std::vector<std::pair<ActivationSet, F>> activation_shares;
  /// Per-channel schedules: channel -> [(set, share)].
  std::map<ChannelId, std::vector<std::pair<ActivationSet, F>>> channel_shares;
  /// Delivered contribution, attributed to the channel of each path's final hop.
  std::map<ChannelId, F> per_channel;
  std::vector<FlowPath<F>> paths;
  std::vector<std::pair<Link, F>> link_loads;
  lp::Model<F> model;
  lp::Solution<F> solution;
};

namespace detail {

template <class F>
bool positive(const F& v, double eps) {
  if constexpr (std::is_floating_point_v<F>) {
    return v > eps;
  } else {
    (void)eps;
    return sgn(v) > 0;
  }
}

template <class F>
bool approx_equal(const F& a, const F& b, double eps) {
  if constexpr (std::is_floating_point_v<F>) {
    return std::fabs(a - b) <= eps * (1 + std::fabs(a) + std::fabs(b));
  } else {
    (void)eps;
    return a == b;
  }
}

template <class F>
bool at_most(const F& a, const F& b, double eps) {
  if constexpr (std::is_floating_point_v<F>) {
    return a <= b + eps * (1 + std::fabs(a) + std::fabs(b));
  } else {
    (void)eps;
    return a <= b;
  }
}

inline std::string link_name(const Network& net, const Link& l) {
  return net.node_id(l.src) + ">" + net.node_id(l.dst) + "@" + std::to_string(l.channel);
}

// Greedy path decomposition of one flow's link flows. Paths prefer to stay on the
// channel they arrived on, so a channel-conserving flow decomposes into
// channel-pure paths. Cycles are cancelled.
template <class F>
std::vector<FlowPath<F>> decompose(NodeIndex src, NodeIndex dst, std::vector<std::pair<Link, F>> arcs, double eps) {
  std::vector<FlowPath<F>> out;
  auto next_arc = [&](NodeIndex at, std::optional<ChannelId> ch) -> std::optional<std::size_t> {
    std::optional<std::size_t> any;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (arcs[i].first.src != at || !positive(arcs[i].second, eps)) continue;
      if (!ch || arcs[i].first.channel == *ch) return i;
      if (!any) any = i;
    }
    return any;
  };
  for (std::size_t guard = 0; guard < 4 * arcs.size() + 4; ++guard) {
    std::vector<std::size_t> walk;
    std::vector<NodeIndex> visited{src};
    NodeIndex at = src;
    std::optional<ChannelId> ch;
    bool cycle = false;
    while (at != dst) {
      auto a = next_arc(at, ch);
      if (!a) break;
      walk.push_back(*a);
      at = arcs[*a].first.dst;
      ch = arcs[*a].first.channel;
      auto seen = std::find(visited.begin(), visited.end(), at);
      if (seen != visited.end()) {
        // Cancel the cycle closing at `at`.
        std::size_t start = static_cast<std::size_t>(seen - visited.begin());
        F m = arcs[walk[start]].second;
        for (std::size_t k = start; k < walk.size(); ++k) m = std::min<F>(m, arcs[walk[k]].second);
        for (std::size_t k = start; k < walk.size(); ++k) arcs[walk[k]].second -= m;
        cycle = true;
        break;
      }
      visited.push_back(at);
    }
    if (cycle) continue;
    if (at != dst || walk.empty()) break;
    F m = arcs[walk.front()].second;
    for (std::size_t k : walk) m = std::min<F>(m, arcs[k].second);
    FlowPath<F> p{src, {}, m};
    for (std::size_t k : walk) {
      arcs[k].second -= m;
      p.links.push_back(arcs[k].first);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// Lays per-channel schedules end to end on [0, 1] and intersects them.
template <class F>
std::vector<std::pair<ActivationSet, F>> overlay(
    const std::map<ChannelId, std::vector<std::pair<ActivationSet, F>>>& per_channel, double eps) {
  std::vector<F> cuts{F(0)};
  for (const auto& [ch, shares] : per_channel) {
    F acc(0);
    for (const auto& [set, share] : shares) {
      acc += share;
      cuts.push_back(acc);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<ActivationSet, F>> joint;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    F len = cuts[k + 1] - cuts[k];
    if (!positive(len, eps)) continue;
    F mid = (cuts[k] + cuts[k + 1]) / 2;
    ActivationSet set;
    for (const auto& [ch, shares] : per_channel) {
      F acc(0);
      for (const auto& [s, share] : shares) {
        if (mid > acc && mid < acc + share) {
          set.links.insert(set.links.end(), s.links.begin(), s.links.end());
          break;
        }
        acc += share;
      }
    }
    std::sort(set.links.begin(), set.links.end());
    if (set.links.empty()) continue;
    auto it = std::find_if(joint.begin(), joint.end(), [&](const auto& p) { return p.first == set; });
    if (it == joint.end()) {
      joint.emplace_back(std::move(set), len);
    } else {
      it->second += len;
    }
  }
  std::sort(joint.begin(), joint.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return joint;
}

}  // namespace detail

/// Precomputed links and activation sets for one network at one placement.
/// Solving many flow configurations against the same context reuses them.
template <class F>
class CapacityContext {
 public:
  CapacityContext(const Network& net, std::optional<Placement> placement, CapacityOptions opts = {})
      : net_(&net), placement_(std::move(placement)), opts_(opts) {
    if (!placement_ && net.region().geometric()) placement_ = net.placement();
    const Placement* p = placement_ ? &*placement_ : nullptr;
    links_ = derive_links(net);
    schedules_ = enumerate_channel_schedules(net, p, opts_.enumeration_cap);
    if (opts_.schedule == ScheduleFormulation::joint)
      joint_sets_ = enumerate_maximal_activation_sets(net, p, opts_.enumeration_cap);
  }

  const Network& network() const { return *net_; }
  const Placement* placement() const { return placement_ ? &*placement_ : nullptr; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<ChannelSchedule>& schedules() const { return schedules_; }
  const CapacityOptions& options() const { return opts_; }

  lp::Model<F> build_lp(const FlowConfig& flows, Routing routing, Objective objective,
                        const RouteHints& hints = {}) const {
    return build(flows, routing, objective, hints).model;
  }

  CapacityResult<F> solve(const FlowConfig& flows, Routing routing, Objective objective,
                          const RouteHints& hints = {}) const {
    Built b = build(flows, routing, objective, hints);
    lp::Options lo;
    lo.eps = opts_.eps;
    auto sol = lp::solve(b.model, lo);
    if (sol.status != lp::Status::optimal)
      throw ComputationError(std::string("capacity LP not optimal: ") + lp::status_name(sol.status));
    return extract(std::move(b), std::move(sol), flows, routing, objective);
  }

 private:
  struct FlowVar {
    NodeIndex flow;
    std::size_t link;  // index into links_
    std::size_t var;
  };

  struct Built {
    lp::Model<F> model;
    std::vector<std::pair<ActivationSet, std::size_t>> share_vars;  // (set, var)
    std::vector<ChannelId> share_channel;                            // per share var; 0 for joint
    std::vector<FlowVar> flow_vars;
    std::vector<std::vector<std::pair<ChannelId, std::size_t>>> lambda_vars;  // per flow
    std::vector<F> distance;
  };

  bool link_allowed(const Link& l, NodeIndex src, NodeIndex dst, Routing routing, const RouteHints& hints) const {
    if (l.dst == src || l.src == dst) return false;
    if (routing == Routing::single_channel && !(net_->has_interface(src, l.channel) && net_->has_interface(dst, l.channel)))
      return false;
    auto h = hints.find(src);
    if (h != hints.end()) {
      const auto& path = h->second;
      for (std::size_t k = 0; k + 1 < path.size(); ++k)
        if (path[k] == l.src && path[k + 1] == l.dst) return true;
      return false;
    }
    return true;
  }

  Built build(const FlowConfig& flows, Routing routing, Objective objective, const RouteHints& hints) const {
    validate_flows(*net_, flows);
    for (const auto& [src, path] : hints) {
      if (src >= flows.size() || path.size() < 2 || path.front() != src || path.back() != flows.dest[src])
        throw InputError(ErrorCode::invalid_flow, "routes", "route must run from the flow's source to its destination");
    }
    const Network& net = *net_;
    const std::size_t n = net.node_count();
    Built b;
    auto& m = b.model;
    using Term = lp::Term<F>;

    // Activation time-shares.
    if (opts_.schedule == ScheduleFormulation::per_channel) {
      for (const auto& sched : schedules_) {
        std::vector<Term> row;
        for (const auto& set : sched.maximal) {
          if (set.links.empty()) continue;
          std::string name = "a" + std::to_string(sched.channel) + "{";
          for (std::size_t k = 0; k < set.links.size(); ++k)
            name += (k ? "," : "") + net.node_id(set.links[k].src) + ">" + net.node_id(set.links[k].dst);
          std::size_t v = m.add_variable(name + "}");
          b.share_vars.emplace_back(set, v);
          b.share_channel.push_back(sched.channel);
          row.push_back({v, F(1)});
        }
        if (!row.empty()) m.add_constraint(std::move(row), lp::Relation::le, F(1), "time" + std::to_string(sched.channel));
      }
    } else {
      std::vector<Term> row;
      for (const auto& set : joint_sets_) {
        if (set.links.empty()) continue;
        std::size_t v = m.add_variable("a" + std::to_string(b.share_vars.size()));
        b.share_vars.emplace_back(set, v);
        b.share_channel.push_back(0);
        row.push_back({v, F(1)});
      }
      if (!row.empty()) m.add_constraint(std::move(row), lp::Relation::le, F(1), "time");
    }

    // Flow variables.
    b.lambda_vars.resize(n);
    b.distance.resize(n);
    for (NodeIndex f = 0; f < n; ++f) {
      const NodeIndex dst = flows.dest[f];
      if (objective.kind == Objective::Kind::transport) b.distance[f] = displacement<F>(net, placement(), f, dst);
      for (std::size_t li = 0; li < links_.size(); ++li) {
        const Link& l = links_[li];
        if (!link_allowed(l, f, dst, routing, hints)) continue;
        std::size_t v = m.add_variable("x" + net.node_id(f) + "[" + detail::link_name(net, l) + "]");
        b.flow_vars.push_back({f, li, v});
      }
      if (routing == Routing::multi_channel) {
        b.lambda_vars[f].emplace_back(0, m.add_variable("r" + net.node_id(f)));
      } else {
        for (const auto& ch : net.channels())
          if (net.has_interface(f, ch.id) && net.has_interface(dst, ch.id))
            b.lambda_vars[f].emplace_back(ch.id, m.add_variable("r" + net.node_id(f) + "@" + std::to_string(ch.id)));
      }
    }

    // Link capacity coupling: load <= w * (time the link is active).
    {
      std::vector<std::vector<Term>> rows(links_.size());
      for (const auto& fv : b.flow_vars) rows[fv.link].push_back({fv.var, F(1)});
      for (std::size_t li = 0; li < links_.size(); ++li) {
        if (rows[li].empty()) continue;
        const F w = to_field<F>(net.rate(links_[li].channel));
        for (const auto& [set, v] : b.share_vars)
          if (set.contains(links_[li])) rows[li].push_back({v, F(-w)});
        m.add_constraint(std::move(rows[li]), lp::Relation::le, F(0), "cap[" + detail::link_name(net, links_[li]) + "]");
      }
    }

    // Conservation: out - in = rate at the source, 0 at relays (destination row implied).
    for (NodeIndex f = 0; f < n; ++f) {
      const NodeIndex dst = flows.dest[f];
      for (const auto& [ch, lam] : b.lambda_vars[f]) {
        std::vector<std::vector<Term>> rows(n);
        for (const auto& fv : b.flow_vars) {
          if (fv.flow != f) continue;
          const Link& l = links_[fv.link];
          if (ch != 0 && l.channel != ch) continue;
          rows[l.src].push_back({fv.var, F(1)});
          rows[l.dst].push_back({fv.var, F(-1)});
        }
        rows[f].push_back({lam, F(-1)});
        for (NodeIndex v = 0; v < n; ++v) {
          if (v == dst || rows[v].empty()) continue;
          m.add_constraint(std::move(rows[v]), lp::Relation::eq, F(0),
                           "flow" + net.node_id(f) + (ch ? "@" + std::to_string(ch) : "") + "[" + net.node_id(v) + "]");
        }
      }
    }

    // Objective.
    std::vector<Term> obj;
    if (objective.kind == Objective::Kind::ms) {
      std::size_t t = m.add_variable("t");
      for (NodeIndex f = 0; f < n; ++f) {
        std::vector<Term> row{{t, F(1)}};
        for (const auto& [ch, lam] : b.lambda_vars[f]) row.push_back({lam, F(-1)});
        m.add_constraint(std::move(row), lp::Relation::le, F(0), "min[" + net.node_id(f) + "]");
      }
      obj.push_back({t, objective.scale_by_n ? F(static_cast<long>(n)) : F(1)});
    } else {
      for (NodeIndex f = 0; f < n; ++f)
        for (const auto& [ch, lam] : b.lambda_vars[f])
          obj.push_back({lam, objective.kind == Objective::Kind::transport ? b.distance[f] : F(1)});
    }
    m.set_objective(std::move(obj));
    return b;
  }

  CapacityResult<F> extract(Built b, lp::Solution<F> sol, const FlowConfig& flows, Routing routing,
                            Objective objective) const {
    const Network& net = *net_;
    const std::size_t n = net.node_count();
    const double eps = opts_.eps;
    CapacityResult<F> r;
    r.value = sol.value;
    r.units = objective.units();
    r.objective = objective;
    r.routing = routing;
    r.flows = flows;
    const auto& x = sol.assignment;

    r.flow_rates.assign(n, F(0));
    for (NodeIndex f = 0; f < n; ++f)
      for (const auto& [ch, lam] : b.lambda_vars[f]) r.flow_rates[f] += x[lam];

    for (std::size_t k = 0; k < b.share_vars.size(); ++k) {
      const auto& [set, v] = b.share_vars[k];
      if (!detail::positive(x[v], eps)) continue;
      if (b.share_channel[k] != 0) {
        r.channel_shares[b.share_channel[k]].emplace_back(set, x[v]);
      } else {
        r.activation_shares.emplace_back(set, x[v]);
        std::map<ChannelId, ActivationSet> parts;
        for (const auto& l : set.links) parts[l.channel].links.push_back(l);
        for (auto& [ch, part] : parts) {
          auto& vec = r.channel_shares[ch];
          auto it = std::find_if(vec.begin(), vec.end(), [&](const auto& p) { return p.first == part; });
          if (it == vec.end()) {
            vec.emplace_back(std::move(part), x[v]);
          } else {
            it->second += x[v];
          }
        }
      }
    }
    for (auto& [ch, vec] : r.channel_shares)
      std::sort(vec.begin(), vec.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
    if (opts_.schedule == ScheduleFormulation::per_channel) r.activation_shares = detail::overlay(r.channel_shares, eps);

    std::vector<F> load(links_.size(), F(0));
    std::vector<std::vector<std::pair<Link, F>>> arcs(n);
    for (const auto& fv : b.flow_vars) {
      if (!detail::positive(x[fv.var], eps)) continue;
      load[fv.link] += x[fv.var];
      arcs[fv.flow].emplace_back(links_[fv.link], x[fv.var]);
    }
    for (std::size_t li = 0; li < links_.size(); ++li)
      if (detail::positive(load[li], eps)) r.link_loads.emplace_back(links_[li], load[li]);

    for (NodeIndex f = 0; f < n; ++f) {
      auto paths = detail::decompose<F>(f, flows.dest[f], std::move(arcs[f]), eps);
      for (auto& p : paths) {
        F credit = objective.kind == Objective::Kind::transport ? F(p.rate * b.distance[f]) : p.rate;
        r.per_channel[p.links.back().channel] += credit;
        r.paths.push_back(std::move(p));
      }
    }
    r.model = std::move(b.model);
    r.solution = std::move(sol);
    return r;
  }

  const Network* net_;
  std::optional<Placement> placement_;
  CapacityOptions opts_;
  std::vector<Link> links_;
  std::vector<ChannelSchedule> schedules_;
  std::vector<ActivationSet> joint_sets_;
};

template <class F>
lp::Model<F> build_capacity_lp(const Network& net, const Placement* placement, const FlowConfig& flows, Routing routing,
                               Objective objective, const RouteHints& hints = {}, CapacityOptions opts = {}) {
  CapacityContext<F> ctx(net, placement ? std::optional<Placement>(*placement) : std::nullopt, opts);
  return ctx.build_lp(flows, routing, objective, hints);
}

template <class F>
CapacityResult<F> conditional_capacity(const Network& net, const Placement* placement, const FlowConfig& flows,
                                       Routing routing, Objective objective, const RouteHints& hints = {},
                                       CapacityOptions opts = {}) {
  CapacityContext<F> ctx(net, placement ? std::optional<Placement>(*placement) : std::nullopt, opts);
  return ctx.solve(flows, routing, objective, hints);
}

/// Objective value implied by per-flow rates.
template <class F>
F objective_from_rates(const std::vector<F>& rates, const std::vector<F>& distance, Objective objective) {
  if (objective.kind == Objective::Kind::ms) {
    F mn = rates.empty() ? F(0) : *std::min_element(rates.begin(), rates.end());
    return objective.scale_by_n ? F(mn * F(static_cast<long>(rates.size()))) : mn;
  }
  F s(0);
  for (std::size_t f = 0; f < rates.size(); ++f)
    s += objective.kind == Objective::Kind::transport ? F(rates[f] * distance[f]) : rates[f];
  return s;
}

/// Re-checks a result without the solver: the joint schedule is made of feasible
/// activation sets with total share <= 1, paths are src->dst walks over real links
/// whose summed rates fit each link's w * active time, per-flow path rates add up
/// to the reported rates, and the objective follows from the rates.
/// Returns a list of violations; empty means the result passed.
template <class F>
std::vector<std::string> audit_result(const Network& net, const Placement* placement, const CapacityResult<F>& r,
                                      const RouteHints& hints = {}, double eps = 1e-9) {
  std::vector<std::string> problems;
  const std::size_t n = net.node_count();
  F total_share(0);
  for (const auto& [set, share] : r.activation_shares) {
    if (!detail::at_most(F(0), share, eps)) problems.push_back("negative activation share");
    if (!activation_feasible(set, net, placement)) problems.push_back("infeasible activation set in schedule");
    total_share += share;
  }
  if (!detail::at_most(total_share, F(1), eps)) problems.push_back("activation shares exceed one unit of time");

  std::map<Link, F> load;
  std::vector<F> path_rate(n, F(0));
  for (const auto& p : r.paths) {
    if (!detail::at_most(F(0), p.rate, eps)) problems.push_back("negative path rate");
    if (p.links.empty() || p.links.front().src != p.source || p.links.back().dst != r.flows.dest.at(p.source))
      problems.push_back("path does not join its flow's endpoints");
    for (std::size_t k = 0; k < p.links.size(); ++k) {
      const Link& l = p.links[k];
      if (!net.has_interface(l.src, l.channel) || !net.has_interface(l.dst, l.channel) || l.src == l.dst)
        problems.push_back("path uses a nonexistent link");
      if (k > 0 && p.links[k - 1].dst != l.src) problems.push_back("path is not contiguous");
      if (r.routing == Routing::single_channel && l.channel != p.links.front().channel)
        problems.push_back("single-channel routing path switches channel");
      load[l] += p.rate;
    }
    auto h = hints.find(p.source);
    if (h != hints.end()) {
      std::vector<NodeIndex> nodes{p.source};
      for (const auto& l : p.links) nodes.push_back(l.dst);
      if (nodes != h->second) problems.push_back("path departs from its fixed route");
    }
    path_rate[p.source] += p.rate;
  }
  for (const auto& [l, amount] : load) {
    F active(0);
    for (const auto& [set, share] : r.activation_shares)
      if (set.contains(l)) active += share;
    if (!detail::at_most(amount, F(to_field<F>(net.rate(l.channel)) * active), eps))
      problems.push_back("link " + detail::link_name(net, l) + " carries more than its active time allows");
  }
  if (r.flow_rates.size() != n) {
    problems.push_back("flow rate vector has wrong size");
    return problems;
  }
  for (NodeIndex f = 0; f < n; ++f)
    if (!detail::approx_equal(path_rate[f], r.flow_rates[f], eps))
      problems.push_back("paths of flow " + net.node_id(f) + " do not add up to its rate");

  std::vector<F> distance(n, F(1));
  if (r.objective.kind == Objective::Kind::transport)
    for (NodeIndex f = 0; f < n; ++f) distance[f] = displacement<F>(net, placement, f, r.flows.dest[f]);
  if (!detail::approx_equal(objective_from_rates(r.flow_rates, distance, r.objective), r.value, eps))
    problems.push_back("objective does not follow from the flow rates");
  if (r.objective.kind == Objective::Kind::transport) {
    F s(0);
    for (const auto& [ch, v] : r.per_channel) s += v;
    if (!detail::approx_equal(s, r.value, eps)) problems.push_back("per-channel contributions do not sum to the value");
  }
  return problems;
}

// ---------------------------------------------------------------------------
// Expectation over flow configurations, projections and comparisons. These work
// on abstract regions with the exact backend.

struct ExpectedCapacity {
  Rational value;
  std::vector<Rational> per_config;  // in enumerate_flow_configs order
};

inline void require_abstract(const Network& net, const char* what) {
  if (net.region().geometric())
    throw InputError(ErrorCode::unsupported, "region", std::string(what) + " needs an abstract region");
}

inline ExpectedCapacity expected_capacity_detail(const Network& net, Routing routing, Objective objective,
                                                 CapacityOptions opts = {}) {
  require_abstract(net, "expectation over flow configurations");
  CapacityContext<Rational> ctx(net, std::nullopt, opts);
  ExpectedCapacity out;
  Rational sum(0);
  for (const auto& f : enumerate_flow_configs(net, opts.enumeration_cap)) {
    Rational v = ctx.solve(f, routing, objective).value;
    sum += v;
    out.per_config.push_back(std::move(v));
  }
  out.value = sum / Rational(static_cast<long>(out.per_config.size()));
  out.value.canonicalize();
  return out;
}

inline Rational expected_capacity(const Network& net, Routing routing, Objective objective, CapacityOptions opts = {}) {
  return expected_capacity_detail(net, routing, objective, opts).value;
}

/// Capacity of the single-channel single-radio projection on `ch`; 0 with fewer than two interfaces.
inline Rational projected_channel_capacity(const Network& net, ChannelId ch, Objective objective,
                                           CapacityOptions opts = {}) {
  require_abstract(net, "projected capacity");
  SubNetwork sub = project_single_channel(net, ch);
  if (sub.owners.size() < 2) return Rational(0);
  Network scsr = scsr_network(net, sub);
  return expected_capacity(scsr, Routing::multi_channel, objective, opts);
}

/// Sum over channels of projected capacities. Routing is irrelevant inside a
/// single-channel projection; the parameter is accepted for symmetry.
inline Rational projected_capacity_sum(const Network& net, Objective objective, Routing /*routing*/ = Routing::multi_channel,
                                       CapacityOptions opts = {}) {
  Rational sum(0);
  for (const auto& ch : net.channels()) sum += projected_channel_capacity(net, ch.id, objective, opts);
  return sum;
}

/// Projected sum conditioned on the same flow configuration, for networks in
/// which every flow's endpoints share every channel they use (e.g. m = c).
inline Rational projected_capacity_sum_for_flows(const Network& net, const FlowConfig& flows, Objective objective,
                                                 CapacityOptions opts = {}) {
  require_abstract(net, "projected capacity");
  Rational sum(0);
  for (const auto& ch : net.channels()) {
    SubNetwork sub = project_single_channel(net, ch.id);
    if (sub.owners.size() < 2) continue;
    Network scsr = scsr_network(net, sub);
    FlowConfig local;
    for (NodeIndex owner : sub.owners) {
      auto it = std::find(sub.owners.begin(), sub.owners.end(), flows.dest[owner]);
      if (it == sub.owners.end())
        throw InputError(ErrorCode::unsupported, "flows",
                         "flow of '" + net.node_id(owner) + "' leaves the projection on channel " + std::to_string(ch.id));
      local.dest.push_back(static_cast<NodeIndex>(it - sub.owners.begin()));
    }
    sum += conditional_capacity<Rational>(scsr, nullptr, local, Routing::multi_channel, objective, {}, opts).value;
  }
  return sum;
}

struct SeparabilityReport {
  Rational capacity;
  Rational projected_sum;
  Rational gap;  // projected_sum - capacity
  int sign() const { return sgn(gap); }
};

inline SeparabilityReport separability_report(const Network& net, Objective objective, Routing routing,
                                              CapacityOptions opts = {}) {
  SeparabilityReport r;
  r.capacity = expected_capacity(net, routing, objective, opts);
  r.projected_sum = projected_capacity_sum(net, objective, routing, opts);
  r.gap = r.projected_sum - r.capacity;
  return r;
}

template <class F>
struct RoutingComparison {
  F multi;
  F single;
  F delta;  // multi - single
};

/// Conditioned on `flows` when given; otherwise the expectation over flow configurations.
inline RoutingComparison<Rational> compare_routing(const Network& net, Objective objective,
                                                   const std::optional<FlowConfig>& flows, CapacityOptions opts = {},
                                                   const Placement* placement = nullptr) {
  RoutingComparison<Rational> c;
  if (flows) {
    CapacityContext<Rational> ctx(net, placement ? std::optional<Placement>(*placement) : std::nullopt, opts);
    c.multi = ctx.solve(*flows, Routing::multi_channel, objective).value;
    c.single = ctx.solve(*flows, Routing::single_channel, objective).value;
  } else {
    c.multi = expected_capacity(net, Routing::multi_channel, objective, opts);
    c.single = expected_capacity(net, Routing::single_channel, objective, opts);
  }
  c.delta = c.multi - c.single;
  return c;
}

}  // namespace mcmr
