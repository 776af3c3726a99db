#pragma once

#include "wsts/ikm.hpp"
#include "wsts/net.hpp"

namespace wsts {

/// ↓⪯Traces(net1, x1) ⊆ ↓⪯Traces(net2, x2), decided on the subword closures of the two
/// Karp-Miller automata. The alphabets are merged first, so labels present in only one net
/// are allowed.
bool traces_dc_included(const NetModel& net1, const Marking& x1, const NetModel& net2,
                        const Marking& x2, const IkmOptions& ikm = {},
                        std::size_t subset_limit = kDefaultSubsetLimit);

/// Subword closure of K_{↓x}, the regular language ↓⪯Traces(net, x).
EpsNfa downward_traces_automaton(const NetModel& net, const Marking& x, const IkmOptions& ikm = {});

}  // namespace wsts
