#include "wsts/positivity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace wsts {

EffectAutomaton attach_effects(EpsNfa nfa, std::size_t dimension,
                               const std::function<EffectSummary(std::size_t)>& effect_of) {
  EffectAutomaton ea{std::move(nfa), {}, dimension};
  ea.effects.reserve(ea.nfa.transitions().size());
  for (const auto& e : ea.nfa.transitions()) {
    auto eff = effect_of(e.symbol);
    if (eff.dimension() != dimension) throw DimensionMismatch(dimension, eff.dimension());
    ea.effects.push_back(std::move(eff));
  }
  return ea;
}

EffectAutomaton attach_net_effects(EpsNfa nfa, const NetModel& net) {
  const auto alphabet = nfa.alphabet();
  return attach_effects(std::move(nfa), net.dimension(), [&](std::size_t s) {
    return effect_summary(net, net.label_of(alphabet[s]));
  });
}

std::vector<CoordinateJustification> justify(const std::vector<EffectSummary>& effects,
                                             std::size_t dimension) {
  std::vector<CoordinateJustification> out(dimension);
  for (const auto& e : effects) {
    if (e.dimension() != dimension) throw DimensionMismatch(dimension, e.dimension());
    for (std::size_t i = 0; i < dimension; ++i) {
      out[i].omega = out[i].omega || e.omega[i];
      if (!e.omega[i]) out[i].displacement += e.displacement[i];
    }
  }
  return out;
}

bool is_positive(const std::vector<CoordinateJustification>& justification) {
  return std::all_of(justification.begin(), justification.end(),
                     [](const CoordinateJustification& j) { return j.omega || j.displacement >= 0; });
}

bool is_positive_word(const NetModel& net, const Word& w) {
  if (w.empty()) throw PreconditionError("positivity is defined for nonempty words");
  std::vector<EffectSummary> effects;
  for (const auto& a : w) effects.push_back(effect_summary(net, net.label_of(a)));
  return is_positive(justify(effects, net.dimension()));
}

namespace {

// The useful part of the automaton: states reachable from the initial state that can reach
// an accepting state, with all lettered and ε edges between them.
struct FlowGraph {
  std::size_t num_states = 0;
  std::size_t init = 0;
  std::vector<State> original;  // local -> automaton state
  std::vector<bool> accepting;
  struct Edge {
    std::size_t from, to;
    std::optional<std::size_t> transition;  // index into nfa.transitions(); absent for ε
  };
  std::vector<Edge> edges;
  std::size_t dimension = 0;
  std::vector<const EffectSummary*> effect;  // per edge, null for ε

  bool lettered(std::size_t e) const { return edges[e].transition.has_value(); }
  bool omega_on(std::size_t e, std::size_t i) const { return effect[e] && effect[e]->omega[i]; }
  std::int64_t finite(std::size_t e, std::size_t i) const {
    return effect[e] && !effect[e]->omega[i] ? effect[e]->displacement[i] : 0;
  }
};

FlowGraph build_graph(const EffectAutomaton& ea) {
  const auto& a = ea.nfa;
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> succ(n), pred(n);
  for (const auto& e : a.transitions()) {
    succ[e.from].push_back(e.to);
    pred[e.to].push_back(e.from);
  }
  for (const auto& e : a.epsilons()) {
    succ[e.from].push_back(e.to);
    pred[e.to].push_back(e.from);
  }
  auto sweep = [&](std::vector<State> start, const std::vector<std::vector<State>>& adj) {
    std::vector<bool> seen(n, false);
    for (State q : start) seen[q] = true;
    while (!start.empty()) {
      State q = start.back();
      start.pop_back();
      for (State r : adj[q])
        if (!seen[r]) {
          seen[r] = true;
          start.push_back(r);
        }
    }
    return seen;
  };
  FlowGraph g;
  g.dimension = ea.dimension;
  if (n == 0) return g;
  auto fwd = sweep({a.initial()}, succ);
  std::vector<State> acc;
  for (State q = 0; q < n; ++q)
    if (a.accepting(q)) acc.push_back(q);
  auto bwd = sweep(acc, pred);

  std::vector<std::size_t> local(n, SIZE_MAX);
  for (State q = 0; q < n; ++q) {
    if (fwd[q] && bwd[q]) {
      local[q] = g.original.size();
      g.original.push_back(q);
      g.accepting.push_back(a.accepting(q));
    }
  }
  g.num_states = g.original.size();
  if (local[a.initial()] == SIZE_MAX) {
    g.num_states = 0;
    return g;
  }
  g.init = local[a.initial()];
  for (std::size_t k = 0; k < a.transitions().size(); ++k) {
    const auto& e = a.transitions()[k];
    if (local[e.from] != SIZE_MAX && local[e.to] != SIZE_MAX) {
      g.edges.push_back({local[e.from], local[e.to], k});
      g.effect.push_back(&ea.effects[k]);
    }
  }
  for (const auto& e : a.epsilons()) {
    if (local[e.from] != SIZE_MAX && local[e.to] != SIZE_MAX && e.from != e.to) {
      g.edges.push_back({local[e.from], local[e.to], std::nullopt});
      g.effect.push_back(nullptr);
    }
  }
  return g;
}

// Strongly connected component id per local state (Tarjan, iterative-free recursion is fine
// at this scale).
std::vector<std::size_t> scc_ids(const FlowGraph& g) {
  const std::size_t n = g.num_states;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : g.edges) adj[e.from].push_back(e.to);
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, comps = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);
  return comp;
}

enum class Refutation { refuted, possible, unknown };

// Necessary condition over simple paths: for some simple path P from init to an accepting
// state, a rational circulation x inside the SCCs touched by P makes P + x nonempty and
// positive on every coordinate without an ω output in reach.
Refutation refute_by_paths(const FlowGraph& g, const PositivityOptions& options) {
  const auto comp = scc_ids(g);
  std::vector<std::vector<std::size_t>> out(g.num_states);
  for (std::size_t e = 0; e < g.edges.size(); ++e) out[g.edges[e].from].push_back(e);

  std::size_t paths = 0;
  bool possible = false;
  std::vector<std::size_t> path_edges;
  std::vector<bool> on_path(g.num_states, false);

  auto check = [&](std::size_t) {
    std::set<std::size_t> touched;
    touched.insert(comp[g.init]);
    for (std::size_t e : path_edges) touched.insert(comp[g.edges[e].to]);
    std::vector<std::size_t> cyc;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto& ed = g.edges[e];
      if (comp[ed.from] == comp[ed.to] && touched.count(comp[ed.from])) cyc.push_back(e);
    }
    std::int64_t path_letters = 0;
    for (std::size_t e : path_edges) path_letters += g.lettered(e) ? 1 : 0;
    std::vector<std::size_t> omega_coords;
    std::vector<bool> path_omega(g.dimension, false);
    for (std::size_t i = 0; i < g.dimension; ++i) {
      bool any = false;
      for (std::size_t e : path_edges) path_omega[i] = path_omega[i] || g.omega_on(e, i);
      for (std::size_t e : cyc) any = any || g.omega_on(e, i);
      if (any && !path_omega[i]) omega_coords.push_back(i);
    }
    // Coordinates with an ω edge only on cycles: either some such edge is used (coordinate
    // satisfied) or none is (all of them are zero and the displacement must be >= 0).
    for (std::size_t mask = 0; mask < (std::size_t{1} << omega_coords.size()) && !possible; ++mask) {
      std::vector<int> mode(g.dimension, 0);  // 0 finite, 1 ω used
      for (std::size_t k = 0; k < omega_coords.size(); ++k)
        if (mask & (std::size_t{1} << k)) mode[omega_coords[k]] = 1;
      ilp::Problem p;
      std::vector<std::size_t> var(g.edges.size(), SIZE_MAX);
      for (std::size_t e : cyc) var[e] = p.add_var(std::nullopt);
      std::vector<std::vector<ilp::Term>> balance(g.num_states);
      for (std::size_t e : cyc) {
        balance[g.edges[e].from].push_back({var[e], 1});
        balance[g.edges[e].to].push_back({var[e], -1});
      }
      for (auto& b : balance)
        if (!b.empty()) p.add(std::move(b), ilp::Sense::eq, 0);
      if (path_letters == 0) {
        std::vector<ilp::Term> t;
        for (std::size_t e : cyc)
          if (g.lettered(e)) t.push_back({var[e], 1});
        if (t.empty()) return;
        p.add(std::move(t), ilp::Sense::ge, 1);
      }
      for (std::size_t i = 0; i < g.dimension; ++i) {
        if (path_omega[i]) continue;
        std::vector<ilp::Term> omega_edges;
        for (std::size_t e : cyc)
          if (g.omega_on(e, i)) omega_edges.push_back({var[e], 1});
        if (mode[i] == 1) {
          p.add(std::move(omega_edges), ilp::Sense::ge, 1);
          continue;
        }
        if (!omega_edges.empty()) p.add(std::move(omega_edges), ilp::Sense::le, 0);
        std::int64_t base = 0;
        for (std::size_t e : path_edges) base += g.finite(e, i);
        std::vector<ilp::Term> t;
        for (std::size_t e : cyc)
          if (!g.omega_on(e, i) && g.finite(e, i) != 0) t.push_back({var[e], g.finite(e, i)});
        p.add(std::move(t), ilp::Sense::ge, -base);
      }
      if (ilp::relaxation_feasible(p)) possible = true;
    }
  };

  std::function<bool(std::size_t)> dfs = [&](std::size_t v) -> bool {
    if (g.accepting[v]) {
      if (++paths > options.max_simple_paths) return false;
      check(v);
      if (possible) return true;
    }
    for (std::size_t e : out[v]) {
      const std::size_t w = g.edges[e].to;
      if (on_path[w]) continue;
      on_path[w] = true;
      path_edges.push_back(e);
      const bool ok = dfs(w);
      path_edges.pop_back();
      on_path[w] = false;
      if (!ok || possible) return ok;
    }
    return true;
  };
  on_path[g.init] = true;
  const bool complete = dfs(g.init);
  if (possible) return Refutation::possible;
  return complete ? Refutation::refuted : Refutation::unknown;
}

// Variables: one flow per edge, then one sink flow per accepting state.
struct FlowModel {
  ilp::Problem problem;
  std::vector<std::size_t> edge_var;
  std::vector<std::size_t> sink_var;  // per local state, SIZE_MAX if not accepting
  std::int64_t total_bound = 0;
};

// Without a cap the flows are unbounded and total_bound is meaningless.
FlowModel build_flow_model(const FlowGraph& g, std::optional<std::int64_t> cap,
                           std::optional<std::size_t> max_len,
                           const std::vector<bool>& omega_chosen) {
  FlowModel m;
  auto& p = m.problem;
  std::optional<std::int64_t> eps_cap = cap;
  std::optional<std::int64_t> letter_cap = cap;
  if (max_len) {
    letter_cap = static_cast<std::int64_t>(*max_len);
    eps_cap = static_cast<std::int64_t>((*max_len + 1) * g.num_states);
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const bool l = g.lettered(e);
    m.edge_var.push_back(p.add_var(l ? letter_cap : eps_cap, l ? 1 : 0));
    m.total_bound += (l ? letter_cap : eps_cap).value_or(0);
  }
  m.sink_var.assign(g.num_states, SIZE_MAX);
  std::vector<ilp::Term> sinks;
  for (std::size_t v = 0; v < g.num_states; ++v) {
    if (g.accepting[v]) {
      m.sink_var[v] = p.add_var(1);
      sinks.push_back({m.sink_var[v], 1});
    }
  }
  p.add(sinks, ilp::Sense::eq, 1);

  std::vector<std::vector<ilp::Term>> balance(g.num_states);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    balance[g.edges[e].from].push_back({m.edge_var[e], 1});
    balance[g.edges[e].to].push_back({m.edge_var[e], -1});
  }
  for (std::size_t v = 0; v < g.num_states; ++v) {
    if (m.sink_var[v] != SIZE_MAX) balance[v].push_back({m.sink_var[v], 1});
    p.add(std::move(balance[v]), ilp::Sense::eq, v == g.init ? 1 : 0);
  }

  std::vector<ilp::Term> letters;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (g.lettered(e)) letters.push_back({m.edge_var[e], 1});
  p.add(letters, ilp::Sense::ge, 1);
  if (max_len) p.add(letters, ilp::Sense::le, static_cast<std::int64_t>(*max_len));

  for (std::size_t i = 0; i < g.dimension; ++i) {
    std::vector<ilp::Term> t;
    if (omega_chosen[i]) {
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.omega_on(e, i)) t.push_back({m.edge_var[e], 1});
      p.add(std::move(t), ilp::Sense::ge, 1);
    } else {
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.finite(e, i) != 0) t.push_back({m.edge_var[e], g.finite(e, i)});
      p.add(std::move(t), ilp::Sense::ge, 0);
    }
  }
  return m;
}

// States not reachable from init through edges carrying flow, but touched by flow.
std::vector<bool> unreached_states(const FlowGraph& g, const FlowModel& m,
                                   const std::vector<std::int64_t>& x, bool& disconnected) {
  std::vector<bool> reached(g.num_states, false);
  reached[g.init] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (x[m.edge_var[e]] > 0 && reached[g.edges[e].from] && !reached[g.edges[e].to]) {
        reached[g.edges[e].to] = true;
        changed = true;
      }
    }
  }
  disconnected = false;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (x[m.edge_var[e]] > 0 && !reached[g.edges[e].from]) disconnected = true;
  std::vector<bool> unreached(g.num_states);
  for (std::size_t v = 0; v < g.num_states; ++v) unreached[v] = !reached[v];
  return unreached;
}

// Necessary condition with connectivity: the uncapped rational flow relaxation, branching on
// every region U that carries flow but is not reached from init. Any integral walk either
// uses no edge leaving a state of U, or enters U at least once.
Refutation refute_connected(const FlowGraph& g, const std::vector<std::size_t>& omega_coords,
                            std::size_t max_solves) {
  std::size_t solves = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << omega_coords.size()); ++mask) {
    std::vector<bool> chosen(g.dimension, false);
    for (std::size_t k = 0; k < omega_coords.size(); ++k)
      if (mask & (std::size_t{1} << k)) chosen[omega_coords[k]] = true;
    FlowModel base = build_flow_model(g, std::nullopt, std::nullopt, chosen);
    for (std::size_t i = 0; i < g.dimension; ++i) {
      if (chosen[i]) continue;
      std::vector<ilp::Term> t;
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.omega_on(e, i)) t.push_back({base.edge_var[e], 1});
      if (!t.empty()) base.problem.add(std::move(t), ilp::Sense::le, 0);
    }
    std::vector<ilp::Problem> stack{base.problem};
    while (!stack.empty()) {
      if (++solves > max_solves) return Refutation::unknown;
      ilp::Problem p = std::move(stack.back());
      stack.pop_back();
      const auto support = ilp::relaxation_support(p);
      if (!support) continue;
      std::vector<std::int64_t> x(p.num_vars(), 0);
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = (*support)[j] ? 1 : 0;
      bool disconnected = false;
      const auto unreached = unreached_states(g, base, x, disconnected);
      if (!disconnected) return Refutation::possible;
      ilp::Problem silent = p, entered = std::move(p);
      std::vector<ilp::Term> leaving, entering;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const bool from_in = unreached[g.edges[e].from], to_in = unreached[g.edges[e].to];
        if (from_in) leaving.push_back({base.edge_var[e], 1});
        if (!from_in && to_in) entering.push_back({base.edge_var[e], 1});
      }
      silent.add(std::move(leaving), ilp::Sense::le, 0);
      stack.push_back(std::move(silent));
      if (!entering.empty()) {
        entered.add(std::move(entering), ilp::Sense::ge, 1);
        stack.push_back(std::move(entered));
      }
    }
  }
  return Refutation::refuted;
}

// Eulerian path from init through the flow multigraph, ending with the sink edge.
std::vector<std::size_t> euler_path(const FlowGraph& g, const FlowModel& m,
                                    const std::vector<std::int64_t>& x) {
  const std::size_t sink_node = g.num_states;
  const std::size_t sink_edge_base = g.edges.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.num_states + 1);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    for (std::int64_t k = 0; k < x[m.edge_var[e]]; ++k) adj[g.edges[e].from].push_back({e, g.edges[e].to});
  for (std::size_t v = 0; v < g.num_states; ++v)
    if (m.sink_var[v] != SIZE_MAX && x[m.sink_var[v]] > 0) adj[v].push_back({sink_edge_base + v, sink_node});

  std::vector<std::size_t> next(adj.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{g.init, SIZE_MAX}};
  std::vector<std::size_t> circuit;
  while (!stack.empty()) {
    const std::size_t v = stack.back().first;
    if (next[v] < adj[v].size()) {
      const auto [e, w] = adj[v][next[v]++];
      stack.push_back({w, e});
    } else {
      if (stack.back().second != SIZE_MAX) circuit.push_back(stack.back().second);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (!circuit.empty() && circuit.back() >= sink_edge_base) circuit.pop_back();
  return circuit;
}

std::optional<PositivityWitness> realize(const EffectAutomaton& ea, const FlowGraph& g,
                                         const FlowModel& m, const std::vector<std::int64_t>& x) {
  const auto edges = euler_path(g, m, x);
  PositivityWitness w;
  std::vector<EffectSummary> effects;
  w.path.push_back(g.original[g.init]);
  for (std::size_t e : edges) {
    w.path.push_back(g.original[g.edges[e].to]);
    if (!g.lettered(e)) continue;
    const auto& tr = ea.nfa.transitions()[*g.edges[e].transition];
    w.word.push_back(ea.nfa.alphabet()[tr.symbol]);
    effects.push_back(*g.effect[e]);
  }
  w.justification = justify(effects, ea.dimension);
  if (w.word.empty() || !is_positive(w.justification) || !ea.nfa.accepting(w.path.back())) {
    throw Error("internal: flow solution does not realize a positive accepted word");
  }
  return w;
}

std::optional<PositivityWitness> search(const EffectAutomaton& ea,
                                       const PositivityOptions& options) {
  const FlowGraph g = build_graph(ea);
  if (g.num_states == 0) return std::nullopt;
  if (std::none_of(g.edges.begin(), g.edges.end(),
                   [](const auto& e) { return e.transition.has_value(); })) {
    return std::nullopt;
  }

  const Refutation refutation = refute_by_paths(g, options);
  if (refutation == Refutation::refuted) return std::nullopt;

  std::vector<std::size_t> omega_coords;
  for (std::size_t i = 0; i < g.dimension; ++i)
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.omega_on(e, i)) {
        omega_coords.push_back(i);
        break;
      }

  if (!options.max_word_length &&
      refute_connected(g, omega_coords, options.max_relaxation_solves) == Refutation::refuted)
    return std::nullopt;

  std::vector<std::int64_t> caps = options.caps;
  if (options.max_word_length) caps = {static_cast<std::int64_t>(*options.max_word_length)};
  bool exhausted_cleanly = true;

  for (std::int64_t cap : caps) {
    // Each subset of ω-reachable coordinates: satisfied by an ω output, or by displacement.
    for (std::size_t mask = 0; mask < (std::size_t{1} << omega_coords.size()); ++mask) {
      std::vector<bool> chosen(g.dimension, false);
      for (std::size_t k = 0; k < omega_coords.size(); ++k)
        if (mask & (std::size_t{1} << k)) chosen[omega_coords[k]] = true;
      FlowModel m = build_flow_model(g, cap, options.max_word_length, chosen);
      for (std::size_t round = 0; round <= options.max_cut_rounds; ++round) {
        auto r = ilp::solve_integer(m.problem, options.limits);
        if (r.status == ilp::Status::node_limit) exhausted_cleanly = false;
        if (!r.has_solution()) break;
        bool disconnected = false;
        auto unreached = unreached_states(g, m, r.values, disconnected);
        if (!disconnected) return realize(ea, g, m, r.values);
        if (round == options.max_cut_rounds) {
          exhausted_cleanly = false;
          break;
        }
        // Flow inside an unreached region needs flow entering it.
        std::vector<ilp::Term> cut;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
          const bool from_in = unreached[g.edges[e].from], to_in = unreached[g.edges[e].to];
          if (from_in && to_in) cut.push_back({m.edge_var[e], 1});
          if (!from_in && to_in) cut.push_back({m.edge_var[e], -m.total_bound});
        }
        m.problem.add(std::move(cut), ilp::Sense::le, 0);
      }
    }
  }

  if (options.max_word_length && exhausted_cleanly) return std::nullopt;
  throw PositivityInconclusive(
      "positive-sequence search inconclusive: no witness within flow caps, and the path "
      "relaxation could not refute one");
}

// ε-free automaton over the reachable states, quotiented by forward bisimulation where a
// letter is identified with its effect. Walks and their effect sequences are preserved.
struct Quotient {
  EffectAutomaton automaton;
  std::vector<std::size_t> block;  // per original state, npos if unreachable
  std::vector<std::size_t> effect_class;  // per original transition
  std::vector<std::size_t> class_of_symbol;  // per quotient symbol
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Quotient quotient(const EffectAutomaton& ea) {
  const auto& a = ea.nfa;
  const std::size_t n = a.num_states();
  Quotient out;

  std::map<std::pair<std::vector<bool>, std::vector<std::int64_t>>, std::size_t> classes;
  std::vector<const EffectSummary*> class_effect;
  out.effect_class.reserve(a.transitions().size());
  for (std::size_t k = 0; k < a.transitions().size(); ++k) {
    auto disp = ea.effects[k].displacement;
    for (std::size_t i = 0; i < disp.size(); ++i)
      if (ea.effects[k].omega[i]) disp[i] = 0;
    auto [it, fresh] = classes.try_emplace({ea.effects[k].omega, std::move(disp)}, classes.size());
    if (fresh) class_effect.push_back(&ea.effects[k]);
    out.effect_class.push_back(it->second);
  }

  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t k = 0; k < a.transitions().size(); ++k)
    out_edges[a.transitions()[k].from].push_back(k);

  // ε-free edges: q --c--> r whenever q ε* q' and q' has a transition of class c to r.
  std::vector<std::vector<std::pair<std::size_t, State>>> succ(n);
  std::vector<bool> accepting(n), reachable(n, false);
  std::vector<State> stack{a.initial()};
  reachable[a.initial()] = true;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p : a.eps_closure({q})) {
      if (a.accepting(p)) accepting[q] = true;
      for (std::size_t k : out_edges[p]) succ[q].emplace_back(out.effect_class[k], a.transitions()[k].to);
    }
    std::sort(succ[q].begin(), succ[q].end());
    succ[q].erase(std::unique(succ[q].begin(), succ[q].end()), succ[q].end());
    for (const auto& [c, r] : succ[q])
      if (!reachable[r]) {
        reachable[r] = true;
        stack.push_back(r);
      }
  }

  std::vector<std::size_t> block(n, npos);
  for (State q = 0; q < n; ++q)
    if (reachable[q]) block[q] = accepting[q] ? 1 : 0;
  std::size_t count = 0;
  for (;;) {
    std::map<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>, std::size_t>
        signatures;
    std::vector<std::size_t> next(n, npos);
    for (State q = 0; q < n; ++q) {
      if (!reachable[q]) continue;
      std::vector<std::pair<std::size_t, std::size_t>> sig;
      for (const auto& [c, r] : succ[q]) sig.emplace_back(c, block[r]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      next[q] = signatures.try_emplace({block[q], std::move(sig)}, signatures.size()).first->second;
    }
    block = std::move(next);
    if (signatures.size() == count) break;
    count = signatures.size();
  }

  std::vector<std::string> alphabet;
  for (std::size_t c = 0; c < class_effect.size(); ++c) alphabet.push_back("e" + std::to_string(c));
  EpsNfa q(alphabet);
  for (std::size_t b = 0; b < count; ++b) q.add_state();
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
  for (State s = 0; s < n; ++s) {
    if (!reachable[s]) continue;
    if (accepting[s]) q.set_accepting(block[s]);
    for (const auto& [c, r] : succ[s]) edges.emplace(block[s], c, block[r]);
  }
  for (const auto& [from, c, to] : edges) q.add_transition(from, c, to);
  q.set_initial(block[a.initial()]);
  out.automaton = attach_effects(std::move(q), ea.dimension,
                                 [&](std::size_t c) { return *class_effect[c]; });
  out.block = std::move(block);
  for (std::size_t c = 0; c < class_effect.size(); ++c) out.class_of_symbol.push_back(c);
  return out;
}

// Shortest ε-path from `from` to a state satisfying `goal`; `from` itself is not listed.
template <class Goal>
std::vector<State> eps_path(const std::vector<std::vector<State>>& eps_succ,
                            State from, Goal goal) {
  std::map<State, State> parent{{from, from}};
  std::vector<State> frontier{from};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const State q = frontier[i];
    if (goal(q)) {
      std::vector<State> path;
      for (State s = q; s != from; s = parent[s]) path.push_back(s);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (State r : eps_succ[q])
      if (parent.emplace(r, q).second) frontier.push_back(r);
  }
  throw Error("internal: quotient witness has no counterpart in the automaton");
}

// Replays a quotient witness in the original automaton. Bisimilarity guarantees every step.
PositivityWitness lift(const EffectAutomaton& ea, const Quotient& qt, const PositivityWitness& w) {
  const auto& a = ea.nfa;
  std::vector<std::vector<State>> eps_succ(a.num_states());
  for (const auto& e : a.epsilons()) eps_succ[e.from].push_back(e.to);
  std::vector<std::vector<std::size_t>> out_edges(a.num_states());
  for (std::size_t k = 0; k < a.transitions().size(); ++k)
    out_edges[a.transitions()[k].from].push_back(k);

  // Block sequence after each letter of the quotient word.
  std::vector<std::size_t> classes, targets;
  // The quotient is ε-free, so step i of the path reads letter i.
  const auto& qa = qt.automaton.nfa;
  for (std::size_t i = 0; i < w.word.size(); ++i) {
    classes.push_back(qt.class_of_symbol[*qa.symbol_index(w.word[i])]);
    targets.push_back(w.path[i + 1]);
  }

  PositivityWitness out;
  std::vector<EffectSummary> effects;
  State cur = a.initial();
  out.path.push_back(cur);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::size_t chosen = npos;
    auto pre = eps_path(eps_succ, cur, [&](State p) {
      for (std::size_t k : out_edges[p])
        if (qt.effect_class[k] == classes[i] && qt.block[a.transitions()[k].to] == targets[i]) {
          chosen = k;
          return true;
        }
      return false;
    });
    out.path.insert(out.path.end(), pre.begin(), pre.end());
    const auto& tr = a.transitions()[chosen];
    out.word.push_back(a.alphabet()[tr.symbol]);
    effects.push_back(ea.effects[chosen]);
    cur = tr.to;
    out.path.push_back(cur);
  }
  auto post = eps_path(eps_succ, cur, [&](State p) { return a.accepting(p); });
  out.path.insert(out.path.end(), post.begin(), post.end());
  out.justification = justify(effects, ea.dimension);
  if (out.word.empty() || !is_positive(out.justification))
    throw Error("internal: lifted witness is not positive");
  return out;
}

}  // namespace

std::optional<PositivityWitness> exists_positive_sequence(const EffectAutomaton& ea,
                                                          const PositivityOptions& options) {
  if (ea.nfa.num_states() == 0) return std::nullopt;
  const Quotient qt = quotient(ea);
  auto w = search(qt.automaton, options);
  if (!w) return std::nullopt;
  return lift(ea, qt, *w);
}

}  // namespace wsts
