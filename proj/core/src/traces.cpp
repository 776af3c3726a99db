#include "wsts/traces.hpp"

namespace wsts {

EpsNfa downward_traces_automaton(const NetModel& net, const Marking& x, const IkmOptions& ikm) {
  if (x.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), x.dimension());
  const NetCompletion sys(net);
  return subword_closure(km_automaton(build_ikm_tree(sys, IdealVec::down(x), ikm)));
}

bool traces_dc_included(const NetModel& net1, const Marking& x1, const NetModel& net2,
                        const Marking& x2, const IkmOptions& ikm, std::size_t subset_limit) {
  auto a = downward_traces_automaton(net1, x1, ikm);
  auto b = downward_traces_automaton(net2, x2, ikm);
  a = with_alphabet(a, b.alphabet());
  b = with_alphabet(b, a.alphabet());
  return included(a, b, subset_limit);
}

}  // namespace wsts
