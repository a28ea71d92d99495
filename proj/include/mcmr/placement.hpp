#pragma once

// Finite candidate families of node placements and the max of conditional
// capacity over them (and over flow configurations).

#include <cmath>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <variant>
#include <vector>

#include "mcmr/capacity.hpp"
#include "mcmr/errors.hpp"
#include "mcmr/model.hpp"

namespace mcmr {

struct GridStrategy {
  std::size_t per_axis = 3;
};
struct CornersAndMidpoints {};
struct DiameterEndpoints {};
struct ExplicitPlacements {
  std::vector<Placement> placements;
};

using CandidateStrategy = std::variant<GridStrategy, CornersAndMidpoints, DiameterEndpoints, ExplicitPlacements>;

/// Candidate points a single node may occupy under a point-based strategy.
inline std::vector<Point> candidate_points(const Region& region, const CandidateStrategy& strategy) {
  if (!region.geometric()) throw InputError(ErrorCode::unsupported, "region", "placements need a geometric region");
  std::vector<Point> pts;
  if (const auto* g = std::get_if<GridStrategy>(&strategy)) {
    if (g->per_axis < 2) throw InputError(ErrorCode::schema, "search", "grid needs at least 2 points per axis");
    const long k = static_cast<long>(g->per_axis);
    if (region.kind == RegionKind::square) {
      for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
          pts.push_back({region.extent * make_rational(i, k - 1), region.extent * make_rational(j, k - 1)});
    } else {
      // Grid over the bounding square of the disk, clipped to the disk.
      Rational r = region.extent / 2;
      for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
          Point p{-r + region.extent * make_rational(i, k - 1), -r + region.extent * make_rational(j, k - 1)};
          if (region.contains(p)) pts.push_back(p);
        }
    }
  } else if (std::holds_alternative<CornersAndMidpoints>(strategy)) {
    if (region.kind != RegionKind::square)
      throw InputError(ErrorCode::unsupported, "search", "corners strategy needs a square region");
    const Rational s = region.extent, h = region.extent / 2;
    pts = {{0, 0}, {s, 0}, {s, s}, {0, s}, {h, 0}, {s, h}, {h, s}, {0, h}, {h, h}};
  } else if (std::holds_alternative<DiameterEndpoints>(strategy)) {
    if (region.kind != RegionKind::disk)
      throw InputError(ErrorCode::unsupported, "search", "diameter strategy needs a disk region");
    const Rational r = region.extent / 2;
    pts = {{-r, 0}, {r, 0}, {0, 0}};
  }
  return pts;
}

/// Lazily indexed family of placements: every assignment of n nodes to candidate
/// points (node 0 varies slowest), or an explicit list.
class CandidateSet {
 public:
  CandidateSet(const Region& region, std::size_t nodes, const CandidateStrategy& strategy) : nodes_(nodes) {
    if (const auto* e = std::get_if<ExplicitPlacements>(&strategy)) {
      for (const auto& p : e->placements) {
        if (p.coords.size() != nodes) throw InputError(ErrorCode::missing_location, "placement", "placement size mismatch");
        for (const auto& pt : p.coords)
          if (!region.contains(pt)) throw InputError(ErrorCode::invalid_region, "placement", "point outside region");
      }
      explicit_ = e->placements;
      size_ = explicit_.size();
      return;
    }
    points_ = candidate_points(region, strategy);
    size_ = 1;
    for (std::size_t i = 0; i < nodes; ++i) {
      if (size_ > static_cast<std::size_t>(-1) / points_.size()) throw LimitExceeded("candidate count overflows");
      size_ *= points_.size();
    }
  }

  std::size_t size() const { return size_; }

  Placement at(std::size_t index) const {
    if (!points_.empty() || explicit_.empty()) {
      Placement p;
      p.coords.resize(nodes_);
      for (std::size_t v = nodes_; v-- > 0;) {
        p.coords[v] = points_[index % points_.size()];
        index /= points_.size();
      }
      return p;
    }
    return explicit_.at(index);
  }

 private:
  std::size_t nodes_;
  std::size_t size_ = 0;
  std::vector<Point> points_;
  std::vector<Placement> explicit_;
};

inline std::vector<Placement> generate_candidates(const Region& region, std::size_t nodes,
                                                  const CandidateStrategy& strategy) {
  CandidateSet set(region, nodes, strategy);
  std::vector<Placement> out;
  out.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) out.push_back(set.at(i));
  return out;
}

/// Either all flow configurations or one fixed configuration (optionally with fixed routes).
struct FlowHandling {
  std::optional<FlowConfig> fixed;
  RouteHints routes;

  static FlowHandling enumerate() { return {}; }
  static FlowHandling fixed_flows(FlowConfig f, RouteHints r = {}) { return {std::move(f), std::move(r)}; }
};

template <class F>
struct PlacementOptimum {
  Placement placement;
  FlowConfig flows;
  F value{};
  std::size_t evaluations = 0;
  CapacityResult<F> result;
};

inline constexpr std::size_t kDefaultEvaluationBudget = 5'000'000;

/// Max of conditional capacity over a candidate family; ties keep the earliest candidate.
template <class F>
PlacementOptimum<F> optimize_over_placements(const Network& net, const CandidateStrategy& strategy, Routing routing,
                                             Objective objective, const FlowHandling& flows = FlowHandling::enumerate(),
                                             std::size_t budget = kDefaultEvaluationBudget, CapacityOptions opts = {}) {
  if (!net.region().geometric())
    throw InputError(ErrorCode::unsupported, "region", "placement search needs a geometric region");
  CandidateSet candidates(net.region(), net.node_count(), strategy);
  std::vector<FlowConfig> configs;
  if (flows.fixed) {
    configs.push_back(*flows.fixed);
  } else {
    configs = enumerate_flow_configs(net, budget);
  }
  if (candidates.size() == 0) throw InputError(ErrorCode::schema, "search", "empty candidate family");
  if (candidates.size() > budget / configs.size())
    throw LimitExceeded("placement search needs " + std::to_string(candidates.size()) + " x " +
                        std::to_string(configs.size()) + " evaluations, over the budget of " + std::to_string(budget));

  std::optional<PlacementOptimum<F>> best;
  std::size_t evaluations = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CapacityContext<F> ctx(net, candidates.at(i), opts);
    for (const auto& f : configs) {
      CapacityResult<F> r = ctx.solve(f, routing, objective, flows.routes);
      ++evaluations;
      bool better = !best;
      if (best) {
        if constexpr (std::is_floating_point_v<F>) {
          better = r.value > best->value + opts.eps * (1 + std::fabs(best->value));
        } else {
          better = r.value > best->value;
        }
      }
      if (better) best = PlacementOptimum<F>{*ctx.placement(), f, r.value, 0, std::move(r)};
    }
  }
  best->evaluations = evaluations;
  return std::move(*best);
}

/// Max of conditional capacity over flow configurations at one placement (or an
/// abstract region). Ties keep the earliest configuration.
template <class F>
PlacementOptimum<F> optimize_over_flows(const Network& net, const Placement* placement, Routing routing,
                                        Objective objective, std::size_t budget = kDefaultEvaluationBudget,
                                        CapacityOptions opts = {}) {
  CapacityContext<F> ctx(net, placement ? std::optional<Placement>(*placement) : std::nullopt, opts);
  std::optional<PlacementOptimum<F>> best;
  std::size_t evaluations = 0;
  for (const auto& f : enumerate_flow_configs(net, budget)) {
    CapacityResult<F> r = ctx.solve(f, routing, objective);
    ++evaluations;
    bool better = !best;
    if (best) {
      if constexpr (std::is_floating_point_v<F>) {
        better = r.value > best->value + opts.eps * (1 + std::fabs(best->value));
      } else {
        better = r.value > best->value;
      }
    }
    if (better) best = PlacementOptimum<F>{ctx.placement() ? *ctx.placement() : Placement{}, f, r.value, 0, std::move(r)};
  }
  best->evaluations = evaluations;
  return std::move(*best);
}

/// Sum over channels of projection capacities, each projection's interfaces
/// placed independently over the same candidate family.
template <class F>
struct ProjectedSearch {
  F sum{};
  std::vector<std::pair<ChannelId, F>> per_channel;
  std::size_t evaluations = 0;
};

template <class F>
ProjectedSearch<F> projected_capacity_sum_over_candidates(const Network& net, const CandidateStrategy& strategy,
                                                          Objective objective,
                                                          std::size_t budget = kDefaultEvaluationBudget,
                                                          CapacityOptions opts = {}) {
  ProjectedSearch<F> out;
  out.sum = F(0);
  for (const auto& ch : net.channels()) {
    SubNetwork sub = project_single_channel(net, ch.id);
    F value(0);
    if (sub.owners.size() >= 2) {
      NetworkDescription d = scsr_network(net, sub).description();
      for (auto& node : d.nodes) node.location.reset();
      Network scsr = Network::build(std::move(d));
      auto best = optimize_over_placements<F>(scsr, strategy, Routing::multi_channel, objective,
                                              FlowHandling::enumerate(), budget, opts);
      value = best.value;
      out.evaluations += best.evaluations;
    }
    out.per_channel.emplace_back(ch.id, value);
    out.sum += value;
  }
  return out;
}

}  // namespace mcmr
