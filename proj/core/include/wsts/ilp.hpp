#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace wsts::ilp {

enum class Sense { le, ge, eq };

struct Term {
  std::size_t var;
  std::int64_t coeff;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense;
  std::int64_t rhs;
};

/// Minimize objective·x subject to the constraints, 0 ≤ x ≤ upper, x integral.
/// Small dense problems only: everything is solved with exact rational simplex.
struct Problem {
  std::vector<std::optional<std::int64_t>> upper;
  std::vector<std::int64_t> objective;
  std::vector<Constraint> constraints;

  std::size_t num_vars() const noexcept { return upper.size(); }
  std::size_t add_var(std::optional<std::int64_t> ub, std::int64_t cost = 0) {
    upper.push_back(ub);
    objective.push_back(cost);
    return upper.size() - 1;
  }
  void add(std::vector<Term> terms, Sense sense, std::int64_t rhs) {
    constraints.push_back({std::move(terms), sense, rhs});
  }
};

enum class Status { optimal, infeasible, node_limit };

struct Result {
  Status status = Status::infeasible;
  std::vector<std::int64_t> values;  // set when optimal, or for the incumbent at node_limit
  bool has_solution() const noexcept { return !values.empty(); }
};

struct Limits {
  std::size_t max_nodes = 20000;
};

/// Whether the rational relaxation (integrality dropped) is feasible.
bool relaxation_feasible(const Problem& p);

/// The variables that are nonzero in some feasible point of the relaxation (a basic one),
/// or absent when the relaxation is infeasible.
std::optional<std::vector<bool>> relaxation_support(const Problem& p);

/// Depth-first branch and bound on the rational relaxation.
Result solve_integer(const Problem& p, const Limits& limits = {});

}  // namespace wsts::ilp
