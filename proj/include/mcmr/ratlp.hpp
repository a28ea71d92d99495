#pragma once

// Two-phase primal simplex over an ordered field. Instantiated with Rational
// (exact, zero tolerance) or double (pivot tolerance eps). Bland's smallest-index
// rule keeps pivoting deterministic and cycle-free.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mcmr/errors.hpp"
#include "mcmr/rational.hpp"

namespace mcmr::lp {

enum class Relation { le, eq };
enum class Status { optimal, infeasible, unbounded };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

template <class T>
struct Term {
  std::size_t var;
  T coef;
};

template <class T>
struct Constraint {
  std::vector<Term<T>> terms;
  Relation rel = Relation::le;
  T rhs{};
  std::string label;
};

/// maximize objective . x  s.t. constraints, x >= 0.
template <class T>
class Model {
 public:
  std::size_t add_variable(std::string name) {
    names_.push_back(std::move(name));
    return names_.size() - 1;
  }

  void add_constraint(std::vector<Term<T>> terms, Relation rel, T rhs, std::string label = {}) {
    for (const auto& t : terms)
      if (t.var >= names_.size()) throw std::out_of_range("constraint references undeclared variable");
    constraints_.push_back({std::move(terms), rel, std::move(rhs), std::move(label)});
  }

  void set_objective(std::vector<Term<T>> terms) {
    for (const auto& t : terms)
      if (t.var >= names_.size()) throw std::out_of_range("objective references undeclared variable");
    objective_ = std::move(terms);
  }

  std::size_t variable_count() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Constraint<T>>& constraints() const { return constraints_; }
  const std::vector<Term<T>>& objective() const { return objective_; }

 private:
  std::vector<std::string> names_;
  std::vector<Constraint<T>> constraints_;
  std::vector<Term<T>> objective_;
};

template <class T>
struct Solution {
  Status status = Status::infeasible;
  T value{};
  std::vector<T> assignment;
  /// Optimal: dual prices (>= 0 on <= rows). Infeasible: a Farkas certificate.
  std::vector<T> duals;
  /// Unbounded: improving direction with assignment + t*ray feasible for all t >= 0.
  std::vector<T> ray;
  std::size_t pivots = 0;
};

struct Options {
  double eps = 1e-9;  // ignored by the exact backend
  std::size_t max_pivots = 5'000'000;
};

namespace detail {

template <class T>
struct Arith {
  T eps{};
  int sign(const T& x) const {
    if constexpr (std::is_floating_point_v<T>) {
      return x > eps ? 1 : (x < -eps ? -1 : 0);
    } else {
      return sgn(x);
    }
  }
  bool zero(const T& x) const { return sign(x) == 0; }
};

template <class T>
Arith<T> make_arith(const Options& o) {
  Arith<T> a;
  if constexpr (std::is_floating_point_v<T>) a.eps = static_cast<T>(o.eps);
  return a;
}

template <class T>
T absolute(const T& x) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::fabs(x);
  } else {
    return abs(x);
  }
}

template <class T>
class Tableau {
 public:
  Tableau(const Model<T>& model, const Options& opts) : arith_(make_arith<T>(opts)), opts_(opts) {
    n_ = model.variable_count();
    m_ = model.constraints().size();
    const auto& cons = model.constraints();
    // Column layout: originals, then one slack/surplus per inequality, then artificials.
    std::size_t slack_count = 0, art_count = 0;
    flip_.assign(m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      flip_[i] = arith_.sign(cons[i].rhs) < 0;
      if (cons[i].rel == Relation::le) ++slack_count;
      if (cons[i].rel == Relation::eq || flip_[i]) ++art_count;
    }
    cols_ = n_ + slack_count + art_count;
    rows_.assign(m_, std::vector<T>(cols_, T(0)));
    rhs_.assign(m_, T(0));
    basis_.assign(m_, 0);
    unit_col_.assign(m_, 0);
    artificial_.assign(cols_, false);
    std::size_t next_slack = n_, next_art = n_ + slack_count;
    for (std::size_t i = 0; i < m_; ++i) {
      const T sgn_row = flip_[i] ? T(-1) : T(1);
      for (const auto& t : cons[i].terms) rows_[i][t.var] += sgn_row * t.coef;
      rhs_[i] = sgn_row * cons[i].rhs;
      if (cons[i].rel == Relation::le) {
        std::size_t s = next_slack++;
        rows_[i][s] = flip_[i] ? T(-1) : T(1);
        if (!flip_[i]) {
          basis_[i] = unit_col_[i] = s;
          continue;
        }
      }
      std::size_t a = next_art++;
      rows_[i][a] = T(1);
      artificial_[a] = true;
      basis_[i] = unit_col_[i] = a;
    }
    objective_.assign(cols_, T(0));
    for (const auto& t : model.objective()) objective_[t.var] += t.coef;
  }

  Solution<T> solve() {
    Solution<T> sol;
    // Phase 1: maximize -sum(artificials).
    std::vector<T> phase1(cols_, T(0));
    bool any_art = false;
    for (std::size_t j = 0; j < cols_; ++j)
      if (artificial_[j]) phase1[j] = T(-1), any_art = true;
    if (any_art) {
      load_costs(phase1);
      if (iterate(sol) == Status::unbounded) throw ComputationError("phase 1 cannot be unbounded");
      if (arith_.sign(z_) < 0) {
        sol.status = Status::infeasible;
        sol.duals = duals();
        sol.assignment.assign(n_, T(0));
        return sol;
      }
      drive_out_artificials(sol);
    }
    load_costs(objective_);
    Status st = iterate(sol);
    sol.status = st;
    sol.assignment = primal();
    if (st == Status::optimal) {
      sol.value = z_;
      sol.duals = duals();
    } else {
      sol.ray = ray_;
    }
    return sol;
  }

 private:
  void load_costs(const std::vector<T>& c) {
    cost_ = c;
    d_.assign(cols_, T(0));
    z_ = T(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const T& cb = cost_[basis_[i]];
      if (arith_.zero(cb) && cb == T(0)) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(rows_[i][j] == T(0))) d_[j] += cb * rows_[i][j];
      z_ += cb * rhs_[i];
    }
    for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cost_[j];
  }

  Status iterate(Solution<T>& sol) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (artificial_[j]) continue;
        if (arith_.sign(d_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return Status::optimal;
      std::size_t leave = m_;
      T best_ratio{};
      for (std::size_t i = 0; i < m_; ++i) {
        if (arith_.sign(rows_[i][enter]) <= 0) continue;
        T ratio = rhs_[i] / rows_[i][enter];
        if (leave == m_) {
          leave = i, best_ratio = ratio;
          continue;
        }
        int cmp = arith_.sign(T(ratio - best_ratio));
        if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) leave = i, best_ratio = ratio;
      }
      if (leave == m_) {
        ray_.assign(n_, T(0));
        if (enter < n_) ray_[enter] = T(1);
        for (std::size_t i = 0; i < m_; ++i)
          if (basis_[i] < n_) ray_[basis_[i]] = -rows_[i][enter];
        return Status::unbounded;
      }
      pivot(leave, enter);
      if (++sol.pivots > opts_.max_pivots) throw ComputationError("simplex pivot limit exceeded");
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    std::vector<T>& prow = rows_[r];
    const T inv = T(1) / prow[s];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j] == T(0)) continue;
      prow[j] *= inv;
      if constexpr (std::is_floating_point_v<T>) {
        if (std::fabs(prow[j]) < arith_.eps * 1e-3) {
          prow[j] = T(0);
          continue;
        }
      }
      nz.push_back(j);
    }
    rhs_[r] *= inv;
    prow[s] = T(1);
    T tmp;
    auto eliminate = [&](std::vector<T>& row, T& rhs) {
      const T f = row[s];
      if (f == T(0)) return;
      for (std::size_t j : nz) {
        tmp = f * prow[j];
        row[j] -= tmp;
      }
      tmp = f * rhs_[r];
      rhs -= tmp;
      row[s] = T(0);
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      eliminate(rows_[i], rhs_[i]);
      if constexpr (std::is_floating_point_v<T>) {
        if (std::fabs(rhs_[i]) < arith_.eps * 1e-3) rhs_[i] = T(0);
      }
    }
    eliminate(d_, z_);
    basis_[r] = s;
  }

  void drive_out_artificials(Solution<T>& sol) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!artificial_[basis_[i]]) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (artificial_[j] || arith_.zero(rows_[i][j])) continue;
        pivot(i, j);
        ++sol.pivots;
        break;
      }
      // A row with no eligible column is redundant; its artificial stays basic at zero.
    }
  }

  std::vector<T> primal() const {
    std::vector<T> x(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
    return x;
  }

  // y_i = c_B B^-1 e_i, read off the column that started as e_i.
  std::vector<T> duals() const {
    std::vector<T> y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      T v = d_[unit_col_[i]] + cost_[unit_col_[i]];
      y[i] = flip_[i] ? T(-v) : v;
    }
    return y;
  }

  Arith<T> arith_;
  Options opts_;
  std::size_t n_ = 0, m_ = 0, cols_ = 0;
  std::vector<std::vector<T>> rows_;
  std::vector<T> rhs_;
  std::vector<T> objective_, cost_, d_;
  T z_{};
  std::vector<std::size_t> basis_, unit_col_;
  std::vector<bool> artificial_, flip_;
  std::vector<T> ray_;
};

}  // namespace detail

template <class T>
Solution<T> solve(const Model<T>& model, const Options& opts = {}) {
  return detail::Tableau<T>(model, opts).solve();
}

namespace detail {

template <class T>
T dot(const std::vector<Term<T>>& terms, const std::vector<T>& x) {
  T s(0);
  for (const auto& t : terms) s += t.coef * x.at(t.var);
  return s;
}

template <class T>
T magnitude(const std::vector<Term<T>>& terms, const std::vector<T>& x) {
  T s(0);
  for (const auto& t : terms) s += absolute(T(t.coef * x.at(t.var)));
  return s;
}

// Column-wise A^T y.
template <class T>
std::vector<T> transpose_times(const Model<T>& model, const std::vector<T>& y) {
  std::vector<T> out(model.variable_count(), T(0));
  const auto& cons = model.constraints();
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (const auto& t : cons[i].terms) out[t.var] += t.coef * y[i];
  return out;
}

}  // namespace detail

/// Primal feasibility of `x`, exactly or within a scaled eps.
template <class T>
bool primal_feasible(const Model<T>& model, const std::vector<T>& x, const Options& opts = {}) {
  auto ar = detail::make_arith<T>(opts);
  if (x.size() != model.variable_count()) return false;
  for (const auto& v : x)
    if (ar.sign(v) < 0) return false;
  for (const auto& c : model.constraints()) {
    T lhs = detail::dot(c.terms, x);
    T slack = c.rhs - lhs;
    T scale = T(1) + detail::absolute(c.rhs) + detail::magnitude(c.terms, x);
    int s;
    if constexpr (std::is_floating_point_v<T>) {
      s = slack > ar.eps * scale ? 1 : (slack < -ar.eps * scale ? -1 : 0);
    } else {
      s = ar.sign(slack);
    }
    if (c.rel == Relation::le ? s < 0 : s != 0) return false;
  }
  return true;
}

/// Checks a solution against its model with certificates: dual prices for
/// optimality, a Farkas vector for infeasibility, an improving ray for unboundedness.
template <class T>
bool verify_solution(const Model<T>& model, const Solution<T>& sol, const Options& opts = {}) {
  auto ar = detail::make_arith<T>(opts);
  const auto& cons = model.constraints();
  auto near_nonneg = [&](const T& v, const T& scale) {
    if constexpr (std::is_floating_point_v<T>) {
      return v >= -ar.eps * (T(1) + scale);
    } else {
      (void)scale;
      return ar.sign(v) >= 0;
    }
  };
  switch (sol.status) {
    case Status::optimal: {
      if (!primal_feasible(model, sol.assignment, opts)) return false;
      T value = detail::dot(model.objective(), sol.assignment);
      if (!near_nonneg(T(value - sol.value), detail::absolute(sol.value)) ||
          !near_nonneg(T(sol.value - value), detail::absolute(sol.value)))
        return false;
      if (sol.duals.size() != cons.size()) return false;
      T dual_value(0);
      for (std::size_t i = 0; i < cons.size(); ++i) {
        if (cons[i].rel == Relation::le && !near_nonneg(sol.duals[i], T(0))) return false;
        dual_value += cons[i].rhs * sol.duals[i];
      }
      auto aty = detail::transpose_times(model, sol.duals);
      std::vector<T> c(model.variable_count(), T(0));
      for (const auto& t : model.objective()) c[t.var] += t.coef;
      for (std::size_t j = 0; j < c.size(); ++j)
        if (!near_nonneg(T(aty[j] - c[j]), detail::absolute(c[j]))) return false;
      T gap = dual_value - sol.value;
      return near_nonneg(gap, detail::absolute(sol.value)) && near_nonneg(T(-gap), detail::absolute(sol.value));
    }
    case Status::infeasible: {
      if (sol.duals.size() != cons.size()) return false;
      T by(0);
      for (std::size_t i = 0; i < cons.size(); ++i) {
        if (cons[i].rel == Relation::le && !near_nonneg(sol.duals[i], T(0))) return false;
        by += cons[i].rhs * sol.duals[i];
      }
      auto aty = detail::transpose_times(model, sol.duals);
      for (const auto& v : aty)
        if (!near_nonneg(v, T(0))) return false;
      return ar.sign(by) < 0;
    }
    case Status::unbounded: {
      if (!primal_feasible(model, sol.assignment, opts)) return false;
      if (sol.ray.size() != model.variable_count()) return false;
      for (const auto& v : sol.ray)
        if (!near_nonneg(v, T(0))) return false;
      for (const auto& c : cons) {
        T ad = detail::dot(c.terms, sol.ray);
        if (!near_nonneg(T(-ad), T(0))) return false;
        if (c.rel == Relation::eq && !near_nonneg(ad, T(0))) return false;
      }
      return ar.sign(detail::dot(model.objective(), sol.ray)) > 0;
    }
  }
  return false;
}

inline std::string field_to_string(const Rational& v) { return to_string(v); }
inline std::string field_to_string(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Human-readable dump, one inequality per line.
template <class T>
std::string to_text(const Model<T>& model) {
  std::ostringstream os;
  auto terms = [&](const std::vector<Term<T>>& ts) {
    if (ts.empty()) return std::string("0");
    std::string s;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (k) s += " + ";
      s += field_to_string(ts[k].coef) + " " + model.names()[ts[k].var];
    }
    return s;
  };
  os << "maximize " << terms(model.objective()) << "\n";
  os << "subject to\n";
  for (std::size_t i = 0; i < model.constraints().size(); ++i) {
    const auto& c = model.constraints()[i];
    os << "  " << (c.label.empty() ? "c" + std::to_string(i) : c.label) << ": " << terms(c.terms)
       << (c.rel == Relation::le ? " <= " : " = ") << field_to_string(c.rhs) << "\n";
  }
  os << "  all variables >= 0\n";
  return os.str();
}

}  // namespace mcmr::lp
