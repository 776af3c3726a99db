#include "wsts/liveness.hpp"

namespace wsts {

RepeatedCoverability repeatedly_coverable(const NetModel& net, const Marking& x0,
                                          const Marking& y, const IkmOptions& ikm,
                                          const PositivityOptions& options) {
  if (x0.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), x0.dimension());
  if (y.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), y.dimension());
  const NetCompletion sys(net);
  const auto tree = build_ikm_tree(sys, IdealVec::down(x0), ikm);
  return repeated_coverability(
      sys, tree, [&](const IdealVec& v) { return contains(v, y); },
      [](std::size_t, std::size_t) { return true; }, net.dimension(), options);
}

}  // namespace wsts
