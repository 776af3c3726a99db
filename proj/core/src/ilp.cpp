#include "wsts/ilp.hpp"

#include <gmpxx.h>

#include <algorithm>

namespace wsts::ilp {

namespace {

// Tableau simplex for: maximize c·x s.t. A x ≤ b, x ≥ 0. Bland's rule, exact rationals, so it
// cannot cycle.
class Simplex {
 public:
  Simplex(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b,
          const std::vector<mpq_class>& c)
      : m_(b.size()), n_(c.size()), basic_(m_), nonbasic_(n_ + 1), d_(m_ + 2, std::vector<mpq_class>(n_ + 2)) {
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
    for (std::size_t i = 0; i < m_; ++i) {
      basic_[i] = static_cast<long>(n_ + i);
      d_[i][n_] = -1;
      d_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1;
  }

  enum class Outcome { optimal, infeasible, unbounded };

  Outcome solve(std::vector<mpq_class>& x, mpq_class& value) {
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (m_ > 0 && d_[r][n_ + 1] < 0) {
      pivot(r, n_);
      if (!run(true) || d_[m_ + 1][n_ + 1] < 0) return Outcome::infeasible;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        std::size_t s = 0;
        bool found = false;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (d_[i][j] == 0) continue;
          if (!found || nonbasic_[j] < nonbasic_[s]) {
            s = j;
            found = true;
          }
        }
        if (found) pivot(i, s);
      }
    }
    if (!run(false)) return Outcome::unbounded;
    x.assign(n_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) x[basic_[i]] = d_[i][n_ + 1];
    value = d_[m_][n_ + 1];
    return Outcome::optimal;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const mpq_class inv = 1 / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || d_[i][s] == 0) continue;
      const mpq_class f = d_[i][s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j)
        if (j != s && d_[r][j] != 0) d_[i][j] -= d_[r][j] * f;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) d_[r][j] *= inv;
    for (std::size_t i = 0; i < m_ + 2; ++i)
      if (i != r) d_[i][s] *= -inv;
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(bool phase_one) {
    const std::size_t x = phase_one ? m_ + 1 : m_;
    while (true) {
      // Bland: entering column with the smallest variable index among negative reduced costs.
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (!phase_one && nonbasic_[j] == -1) continue;
        if (d_[x][j] < 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == n_ + 1) return true;
      std::size_t r = m_;
      mpq_class best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][s] <= 0) continue;
        mpq_class ratio = d_[i][n_ + 1] / d_[i][s];
        if (r == m_ || ratio < best || (ratio == best && basic_[i] < basic_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_, n_;
  std::vector<long> basic_, nonbasic_;
  std::vector<std::vector<mpq_class>> d_;
};

struct Bounds {
  std::vector<std::int64_t> lower;
  std::vector<std::optional<std::int64_t>> upper;
};

// Solves the relaxation under the given bounds. Returns false when infeasible.
bool solve_relaxation(const Problem& p, const Bounds& bounds, bool with_objective,
                      std::vector<mpq_class>& x, mpq_class& value) {
  const std::size_t n = p.num_vars();
  std::vector<std::vector<mpq_class>> a;
  std::vector<mpq_class> b;
  auto row = [&](const std::vector<Term>& terms, std::int64_t sign, std::int64_t rhs) {
    std::vector<mpq_class> r(n, 0);
    for (const auto& t : terms) r[t.var] += sign * t.coeff;
    a.push_back(std::move(r));
    b.emplace_back(sign * rhs);
  };
  for (const auto& c : p.constraints) {
    if (c.sense != Sense::ge) row(c.terms, 1, c.rhs);
    if (c.sense != Sense::le) row(c.terms, -1, c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (bounds.upper[j]) row({{j, 1}}, 1, *bounds.upper[j]);
    if (bounds.lower[j] > 0) row({{j, 1}}, -1, bounds.lower[j]);
  }
  std::vector<mpq_class> c(n, 0);
  if (with_objective)
    for (std::size_t j = 0; j < n; ++j) c[j] = -p.objective[j];
  Simplex lp(a, b, c);
  auto outcome = lp.solve(x, value);
  if (outcome == Simplex::Outcome::infeasible) return false;
  if (outcome == Simplex::Outcome::unbounded) {
    // Nonnegative costs below keep the objective bounded; fall back to pure feasibility.
    Simplex feas(a, b, std::vector<mpq_class>(n, 0));
    return feas.solve(x, value) == Simplex::Outcome::optimal;
  }
  value = -value;
  return true;
}

mpq_class floor_q(const mpq_class& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(z);
}

}  // namespace

bool relaxation_feasible(const Problem& p) {
  Bounds b{std::vector<std::int64_t>(p.num_vars(), 0), p.upper};
  std::vector<mpq_class> x;
  mpq_class v;
  return solve_relaxation(p, b, false, x, v);
}

std::optional<std::vector<bool>> relaxation_support(const Problem& p) {
  Bounds b{std::vector<std::int64_t>(p.num_vars(), 0), p.upper};
  std::vector<mpq_class> x;
  mpq_class v;
  if (!solve_relaxation(p, b, false, x, v)) return std::nullopt;
  std::vector<bool> support(p.num_vars(), false);
  for (std::size_t j = 0; j < p.num_vars() && j < x.size(); ++j) support[j] = sgn(x[j]) != 0;
  return support;
}

Result solve_integer(const Problem& p, const Limits& limits) {
  Result result;
  std::optional<mpq_class> incumbent;
  std::size_t explored = 0;
  bool hit_limit = false;

  std::vector<Bounds> stack{{std::vector<std::int64_t>(p.num_vars(), 0), p.upper}};
  while (!stack.empty()) {
    if (explored++ >= limits.max_nodes) {
      hit_limit = true;
      break;
    }
    Bounds bounds = std::move(stack.back());
    stack.pop_back();

    std::vector<mpq_class> x;
    mpq_class value;
    if (!solve_relaxation(p, bounds, true, x, value)) continue;
    // Integral objective: a relaxation bound ≥ incumbent cannot improve it.
    if (incumbent && value >= *incumbent) continue;

    std::size_t branch = x.size();
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j].get_den() != 1) {
        branch = j;
        break;
      }
    }
    if (branch == x.size()) {
      incumbent = value;
      result.values.assign(x.size(), 0);
      for (std::size_t j = 0; j < x.size(); ++j) result.values[j] = x[j].get_num().get_si();
      continue;
    }
    const mpq_class fl = floor_q(x[branch]);
    const std::int64_t f = fl.get_num().get_si();
    Bounds up = bounds, down = std::move(bounds);
    up.lower[branch] = f + 1;
    down.upper[branch] = f;
    // Explore the floor branch first (pushed last).
    if (!up.upper[branch] || *up.upper[branch] >= f + 1) stack.push_back(std::move(up));
    if (down.lower[branch] <= f) stack.push_back(std::move(down));
  }

  if (hit_limit) {
    result.status = Status::node_limit;
  } else {
    result.status = result.has_solution() ? Status::optimal : Status::infeasible;
  }
  return result;
}

}  // namespace wsts::ilp
