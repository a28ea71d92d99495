#pragma once

// Reference computations used only by tests: LP vertex enumeration,
// certificate checks, brute-force activation sets and random LPs.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "mcmr/capacity.hpp"
#include "mcmr/interference.hpp"
#include "mcmr/ratlp.hpp"

namespace oracle {

using mcmr::Rational;
namespace lp = mcmr::lp;

struct DenseLp {
  std::vector<std::vector<Rational>> a;  // rows
  std::vector<Rational> b;
  std::vector<bool> eq;
  std::vector<Rational> c;
  std::size_t n = 0;
};

inline DenseLp densify(const lp::Model<Rational>& m) {
  DenseLp d;
  d.n = m.variable_count();
  d.c.assign(d.n, Rational(0));
  for (const auto& t : m.objective()) d.c[t.var] += t.coef;
  for (const auto& con : m.constraints()) {
    std::vector<Rational> row(d.n, Rational(0));
    for (const auto& t : con.terms) row[t.var] += t.coef;
    d.a.push_back(std::move(row));
    d.b.push_back(con.rhs);
    d.eq.push_back(con.rel == lp::Relation::eq);
  }
  return d;
}

// Solves M x = r; nullopt when singular.
template <class T>
std::optional<std::vector<T>> gauss(std::vector<std::vector<T>> m, std::vector<T> r) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    if constexpr (std::is_floating_point_v<T>) {
      for (std::size_t i = col + 1; i < n; ++i)
        if (std::fabs(m[i][col]) > std::fabs(m[piv][col])) piv = i;
      if (std::fabs(m[piv][col]) < 1e-10) return std::nullopt;
    } else {
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) return std::nullopt;
    }
    std::swap(m[piv], m[col]);
    std::swap(r[piv], r[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      T f = m[i][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[i][k] -= f * m[col][k];
      r[i] -= f * r[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = r[i] / m[i][i];
  return x;
}

inline bool feasible(const DenseLp& d, const std::vector<Rational>& x) {
  for (const auto& v : x)
    if (v < 0) return false;
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < d.n; ++j) s += d.a[i][j] * x[j];
    if (d.eq[i] ? s != d.b[i] : s > d.b[i]) return false;
  }
  return true;
}

struct VertexResult {
  bool feasible = false;
  Rational best;  // max objective over vertices
};

/// Max of the objective over all basic feasible solutions: every choice of n
/// tight rows among constraints and bounds x_j = 0. Candidates are screened in
/// floating point and confirmed exactly.
inline VertexResult vertex_enumeration(const DenseLp& d) {
  const std::size_t n = d.n, m = d.a.size(), total = m + n;
  VertexResult out;
  if (n == 0) {
    out.feasible = feasible(d, {});
    out.best = 0;
    return out;
  }
  std::vector<bool> pick(total, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(n, total)), true);
  if (n > total) return out;
  do {
    std::vector<std::vector<double>> md;
    std::vector<double> rd;
    std::vector<std::vector<Rational>> mq;
    std::vector<Rational> rq;
    for (std::size_t k = 0; k < total; ++k) {
      if (!pick[k]) continue;
      std::vector<Rational> row(n, Rational(0));
      Rational rhs(0);
      if (k < m) {
        row = d.a[k];
        rhs = d.b[k];
      } else {
        row[k - m] = 1;
      }
      std::vector<double> rowd;
      for (const auto& v : row) rowd.push_back(v.get_d());
      md.push_back(std::move(rowd));
      rd.push_back(rhs.get_d());
      mq.push_back(std::move(row));
      rq.push_back(std::move(rhs));
    }
    auto xd = gauss<double>(md, rd);
    if (xd) {
      bool ok = true;
      for (double v : *xd) ok = ok && v >= -1e-7;
      for (std::size_t i = 0; ok && i < m; ++i) {
        double s = 0, scale = std::fabs(d.b[i].get_d()) + 1;
        for (std::size_t j = 0; j < n; ++j) s += d.a[i][j].get_d() * (*xd)[j];
        ok = d.eq[i] ? std::fabs(s - d.b[i].get_d()) <= 1e-7 * scale : s <= d.b[i].get_d() + 1e-7 * scale;
      }
      if (ok) {
        auto xq = gauss<Rational>(mq, rq);
        if (xq && feasible(d, *xq)) {
          Rational v(0);
          for (std::size_t j = 0; j < n; ++j) v += d.c[j] * (*xq)[j];
          if (!out.feasible || v > out.best) out.best = v;
          out.feasible = true;
        }
      }
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

/// Independent certificate checks, exact.
inline bool check_optimal(const DenseLp& d, const lp::Solution<Rational>& s) {
  if (!feasible(d, s.assignment)) return false;
  if (s.duals.size() != d.a.size()) return false;
  Rational primal(0), dual(0);
  for (std::size_t j = 0; j < d.n; ++j) primal += d.c[j] * s.assignment[j];
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    if (!d.eq[i] && s.duals[i] < 0) return false;
    dual += d.b[i] * s.duals[i];
  }
  for (std::size_t j = 0; j < d.n; ++j) {
    Rational col(0);
    for (std::size_t i = 0; i < d.a.size(); ++i) col += d.a[i][j] * s.duals[i];
    if (col < d.c[j]) return false;
  }
  return primal == dual && primal == s.value;
}

inline bool check_unbounded(const DenseLp& d, const lp::Solution<Rational>& s) {
  if (!feasible(d, s.assignment) || s.ray.size() != d.n) return false;
  for (const auto& v : s.ray)
    if (v < 0) return false;
  Rational gain(0);
  for (std::size_t j = 0; j < d.n; ++j) gain += d.c[j] * s.ray[j];
  if (gain <= 0) return false;
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    Rational s2(0);
    for (std::size_t j = 0; j < d.n; ++j) s2 += d.a[i][j] * s.ray[j];
    if (d.eq[i] ? s2 != 0 : s2 > 0) return false;
  }
  return true;
}

/// Random LP with small integer data. About a third of the instances get a
/// bounding row; the rest may be unbounded or infeasible.
inline lp::Model<Rational> random_lp(std::mt19937_64& rng, std::size_t max_vars = 8, std::size_t max_rows = 12) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vars), nr(1, max_rows);
  std::uniform_int_distribution<int> coef(-3, 6), rhs(-2, 12), obj(-2, 5);
  std::bernoulli_distribution sparse(0.3), equality(0.15), bound(0.35);
  lp::Model<Rational> m;
  const std::size_t n = nv(rng), rows = nr(rng);
  for (std::size_t j = 0; j < n; ++j) m.add_variable("x" + std::to_string(j));
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<lp::Term<Rational>> t;
    for (std::size_t j = 0; j < n; ++j)
      if (!sparse(rng)) t.push_back({j, Rational(coef(rng))});
    m.add_constraint(std::move(t), equality(rng) ? lp::Relation::eq : lp::Relation::le, Rational(rhs(rng)));
  }
  if (bound(rng)) {
    std::vector<lp::Term<Rational>> t;
    for (std::size_t j = 0; j < n; ++j) t.push_back({j, Rational(1)});
    m.add_constraint(std::move(t), lp::Relation::le, Rational(10));
  }
  std::vector<lp::Term<Rational>> o;
  for (std::size_t j = 0; j < n; ++j) o.push_back({j, mcmr::make_rational(obj(rng), 1 + static_cast<long>(j % 3))});
  m.set_objective(std::move(o));
  return m;
}

/// All maximal feasible link subsets on one channel, by exhaustive search.
inline std::vector<mcmr::ActivationSet> brute_force_maximal(const mcmr::Network& net, const mcmr::Placement* placement,
                                                            mcmr::ChannelId ch) {
  std::vector<mcmr::Link> links;
  for (const auto& l : mcmr::derive_links(net))
    if (l.channel == ch) links.push_back(l);
  const std::size_t k = links.size();
  std::vector<bool> feas(std::size_t{1} << k, false);
  for (std::size_t mask = 0; mask < feas.size(); ++mask) {
    mcmr::ActivationSet s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) s.links.push_back(links[i]);
    feas[mask] = mcmr::activation_feasible(s, net, placement);
  }
  std::vector<mcmr::ActivationSet> out;
  for (std::size_t mask = 0; mask < feas.size(); ++mask) {
    if (!feas[mask]) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < k && maximal; ++i)
      if (!(mask >> i & 1) && feas[mask | (std::size_t{1} << i)]) maximal = false;
    if (!maximal) continue;
    mcmr::ActivationSet s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) s.links.push_back(links[i]);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Capacity LP for single-collision-domain networks written out directly: one
/// time share per link, at most one unit of time per channel, one commodity per
/// flow (per flow and channel under single-channel routing). Rates are w * share.
inline Rational scd_capacity(const mcmr::Network& net, const mcmr::FlowConfig& flows, mcmr::Routing routing,
                             mcmr::Objective objective) {
  using namespace mcmr;
  lp::Model<Rational> m;
  const auto links = derive_links(net);
  std::vector<std::size_t> share;
  for (std::size_t i = 0; i < links.size(); ++i) share.push_back(m.add_variable("t" + std::to_string(i)));
  for (const auto& ch : net.channels()) {
    std::vector<lp::Term<Rational>> row;
    for (std::size_t i = 0; i < links.size(); ++i)
      if (links[i].channel == ch.id) row.push_back({share[i], Rational(1)});
    m.add_constraint(row, lp::Relation::le, Rational(1));
  }
  const std::size_t n = net.node_count();
  std::vector<std::size_t> lambda;
  std::vector<std::vector<lp::Term<Rational>>> load(links.size());
  for (NodeIndex f = 0; f < n; ++f) {
    lambda.push_back(m.add_variable("lambda" + std::to_string(f)));
    std::vector<int> groups;
    if (routing == Routing::single_channel) {
      for (const auto& ch : net.channels())
        if (net.has_interface(f, ch.id) && net.has_interface(flows.dest[f], ch.id)) groups.push_back(ch.id);
    } else {
      groups.push_back(0);
    }
    std::vector<lp::Term<Rational>> total{{lambda[f], Rational(-1)}};
    for (int g : groups) {
      std::vector<std::size_t> x(links.size(), SIZE_MAX);
      for (std::size_t i = 0; i < links.size(); ++i)
        if (g == 0 || links[i].channel == g) {
          x[i] = m.add_variable("x");
          load[i].push_back({x[i], Rational(1)});
        }
      std::size_t r = m.add_variable("r");
      total.push_back({r, Rational(1)});
      for (NodeIndex v = 0; v < n; ++v) {
        if (v == flows.dest[f]) continue;
        std::vector<lp::Term<Rational>> row;
        for (std::size_t i = 0; i < links.size(); ++i) {
          if (x[i] == SIZE_MAX) continue;
          if (links[i].src == v) row.push_back({x[i], Rational(1)});
          if (links[i].dst == v) row.push_back({x[i], Rational(-1)});
        }
        if (v == f) row.push_back({r, Rational(-1)});
        m.add_constraint(row, lp::Relation::eq, Rational(0));
      }
    }
    m.add_constraint(total, lp::Relation::eq, Rational(0));
  }
  for (std::size_t i = 0; i < links.size(); ++i) {
    auto row = load[i];
    row.push_back({share[i], Rational(-net.rate(links[i].channel))});
    m.add_constraint(row, lp::Relation::le, Rational(0));
  }
  if (objective.kind == Objective::Kind::ms) {
    std::size_t t = m.add_variable("t");
    for (NodeIndex f = 0; f < n; ++f) m.add_constraint({{t, Rational(1)}, {lambda[f], Rational(-1)}}, lp::Relation::le, Rational(0));
    m.set_objective({{t, objective.scale_by_n ? Rational(static_cast<long>(n)) : Rational(1)}});
  } else {
    std::vector<lp::Term<Rational>> o;
    for (NodeIndex f = 0; f < n; ++f) o.push_back({lambda[f], Rational(1)});
    m.set_objective(o);
  }
  auto s = lp::solve(m);
  if (s.status != lp::Status::optimal) throw std::runtime_error("oracle LP not optimal");
  return s.value;
}

}  // namespace oracle
