#include <algorithm>

#include "wsts/net.hpp"

namespace wsts {

namespace {

bool dominated_by_any(const std::vector<Marking>& basis, const Marking& m) {
  return std::any_of(basis.begin(), basis.end(), [&](const Marking& b) { return b.leq(m); });
}

}  // namespace

bool backward_coverable(const NetModel& net, const Marking& x0, const Marking& y) {
  if (net.has_omega_outputs()) {
    throw PreconditionError("backward_coverable does not support nets with omega outputs");
  }
  const std::size_t d = net.dimension();
  if (x0.dimension() != d) throw DimensionMismatch(d, x0.dimension());
  if (y.dimension() != d) throw DimensionMismatch(d, y.dimension());

  // Minimal basis of the upward-closed set Pre*(↑y), grown until stable.
  std::vector<Marking> basis{y};
  std::vector<Marking> frontier{y};
  while (!frontier.empty()) {
    if (dominated_by_any(basis, x0)) return true;
    std::vector<Marking> next;
    for (const auto& m : frontier) {
      for (const auto& t : net.transitions()) {
        // Least z with z ≥ guard and z - guard + output ≥ m.
        Marking z{std::vector<std::uint64_t>(d)};
        for (std::size_t i = 0; i < d; ++i) {
          const std::uint64_t out = t.output[i].value();
          const std::uint64_t need = m[i] > out ? m[i] - out : 0;
          z[i] = t.guard[i] + need;
        }
        if (dominated_by_any(basis, z)) continue;
        std::erase_if(basis, [&](const Marking& b) { return z.leq(b); });
        std::erase_if(next, [&](const Marking& b) { return z.leq(b); });
        basis.push_back(z);
        next.push_back(z);
      }
    }
    frontier = std::move(next);
  }
  return dominated_by_any(basis, x0);
}

}  // namespace wsts
