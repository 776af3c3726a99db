#include "wsts/buchi.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace wsts {

namespace {

using K = LtlFormula::Kind;
using FormulaSet = std::set<int>;

// Interned NNF subformulas.
class Pool {
 public:
  int id(const LtlFormula& f) {
    const auto key = f.to_string();
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    formulas_.push_back(f);
    ids_.emplace(key, static_cast<int>(formulas_.size() - 1));
    return static_cast<int>(formulas_.size() - 1);
  }
  const LtlFormula& at(int i) const { return formulas_[static_cast<std::size_t>(i)]; }
  std::size_t size() const { return formulas_.size(); }

 private:
  std::vector<LtlFormula> formulas_;
  std::map<std::string, int> ids_;
};

struct TableauNode {
  std::set<int> incoming;  // 0 is the virtual initial node; node k is stored at index k-1
  FormulaSet pending, now, next;
};

class Tableau {
 public:
  explicit Tableau(Pool& pool) : pool_(pool) {}

  void expand(TableauNode node) {
    if (node.pending.empty()) {
      for (auto& done : nodes_) {
        if (done.now == node.now && done.next == node.next) {
          done.incoming.insert(node.incoming.begin(), node.incoming.end());
          return;
        }
      }
      nodes_.push_back(node);
      const int id = static_cast<int>(nodes_.size());
      expand(TableauNode{{id}, node.next, {}, {}});
      return;
    }
    const int eta = *node.pending.begin();
    node.pending.erase(node.pending.begin());
    if (node.now.count(eta)) {
      expand(std::move(node));
      return;
    }
    const LtlFormula f = pool_.at(eta);  // pool_ may grow below
    auto add_pending = [&](TableauNode& n, const LtlFormula& g) {
      const int gid = pool_.id(g);
      if (!n.now.count(gid)) n.pending.insert(gid);
    };
    switch (f.kind()) {
      case K::ff:
        return;
      case K::tt:
        node.now.insert(eta);
        expand(std::move(node));
        return;
      case K::atom:
      case K::negation:
        if (contradicts(node.now, f)) return;
        node.now.insert(eta);
        expand(std::move(node));
        return;
      case K::conjunction:
        add_pending(node, f.left());
        add_pending(node, f.right());
        node.now.insert(eta);
        expand(std::move(node));
        return;
      case K::next:
        node.now.insert(eta);
        node.next.insert(pool_.id(f.left()));
        expand(std::move(node));
        return;
      case K::disjunction:
      case K::until:
      case K::release: {
        TableauNode a = node, b = std::move(node);
        a.now.insert(eta);
        b.now.insert(eta);
        if (f.kind() == K::disjunction) {
          add_pending(a, f.left());
          add_pending(b, f.right());
        } else if (f.kind() == K::until) {
          add_pending(a, f.left());
          a.next.insert(eta);
          add_pending(b, f.right());
        } else {
          add_pending(a, f.right());
          a.next.insert(eta);
          add_pending(b, f.left());
          add_pending(b, f.right());
        }
        expand(std::move(a));
        expand(std::move(b));
        return;
      }
      default:
        throw Error("tableau expects negation normal form");
    }
  }

  const std::vector<TableauNode>& nodes() const { return nodes_; }

 private:
  // Literal consistency for action atoms: at most one positive atom, and no atom together
  // with its negation.
  bool contradicts(const FormulaSet& now, const LtlFormula& lit) const {
    for (int i : now) {
      const auto& g = pool_.at(i);
      if (!g.is_literal()) continue;
      const bool gp = g.kind() == K::atom, lp = lit.kind() == K::atom;
      const auto& gn = gp ? g.name() : g.left().name();
      const auto& ln = lp ? lit.name() : lit.left().name();
      if (gp && lp && gn != ln) return true;
      if (gp != lp && gn == ln) return true;
    }
    return false;
  }

  Pool& pool_;
  std::vector<TableauNode> nodes_;
};

// Merges bisimilar states (same acceptance, same letters into the same classes). The
// quotient accepts the same infinite words.
BuchiAutomaton quotient(const BuchiAutomaton& b) {
  const std::size_t n = b.num_states();
  std::vector<std::size_t> block(n);
  for (State q = 0; q < n; ++q) block[q] = b.accepting[q] ? 1 : 0;
  std::size_t count = 0;
  for (;;) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> sig(n);
    for (const auto& e : b.edges) sig[e.from].emplace_back(e.symbol, block[e.to]);
    std::map<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>, std::size_t>
        ids;
    std::vector<std::size_t> next(n);
    for (State q = 0; q < n; ++q) {
      std::sort(sig[q].begin(), sig[q].end());
      sig[q].erase(std::unique(sig[q].begin(), sig[q].end()), sig[q].end());
      next[q] = ids.try_emplace({block[q], std::move(sig[q])}, ids.size()).first->second;
    }
    block = std::move(next);
    if (ids.size() == count) break;
    count = ids.size();
  }

  // Renumber blocks in order of first state so the initial state stays first.
  std::vector<std::size_t> order(count, SIZE_MAX);
  BuchiAutomaton out;
  out.alphabet = b.alphabet;
  for (State q = 0; q < n; ++q) {
    if (order[block[q]] != SIZE_MAX) continue;
    order[block[q]] = out.names.size();
    out.names.push_back(b.names[q]);
    out.accepting.push_back(b.accepting[q]);
  }
  out.initial = order[block[b.initial]];
  std::set<std::tuple<State, std::size_t, State>> edges;
  for (const auto& e : b.edges) edges.emplace(order[block[e.from]], e.symbol, order[block[e.to]]);
  for (const auto& [from, sym, to] : edges) out.edges.push_back({from, sym, to});
  return out;
}

}  // namespace

BuchiAutomaton ltl_to_buchi(const LtlFormula& phi, const std::vector<std::string>& alphabet) {
  for (const auto& a : phi.atoms())
    if (std::find(alphabet.begin(), alphabet.end(), a) == alphabet.end()) throw UnknownSymbol(a);

  Pool pool;
  const LtlFormula root = to_nnf(phi);
  Tableau tableau(pool);
  tableau.expand(TableauNode{{0}, {pool.id(root)}, {}, {}});
  const auto& nodes = tableau.nodes();

  std::vector<int> untils;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool.at(static_cast<int>(i)).kind() == K::until) untils.push_back(static_cast<int>(i));

  // Generalized acceptance: node in F_u iff u is not promised or its right side holds now.
  // The virtual initial node (0) is put in every set; it is visited once.
  const std::size_t gstates = nodes.size() + 1;
  std::vector<std::vector<bool>> in_set(untils.size(), std::vector<bool>(gstates, true));
  for (std::size_t k = 0; k < untils.size(); ++k) {
    const int u = untils[k];
    const int rhs = pool.id(pool.at(u).right());
    for (std::size_t n = 0; n < nodes.size(); ++n)
      in_set[k][n + 1] = !nodes[n].now.count(u) || nodes[n].now.count(rhs);
  }

  // Letters allowed on entry to each node.
  auto allowed = [&](const TableauNode& n, const std::string& letter) {
    for (int i : n.now) {
      const auto& g = pool.at(i);
      if (g.kind() == K::atom && g.name() != letter) return false;
      if (g.kind() == K::negation && g.left().name() == letter) return false;
    }
    return true;
  };
  struct GEdge {
    std::size_t from, symbol, to;
  };
  std::vector<GEdge> gedges;
  for (std::size_t n = 0; n < nodes.size(); ++n)
    for (int p : nodes[n].incoming)
      for (std::size_t s = 0; s < alphabet.size(); ++s)
        if (allowed(nodes[n], alphabet[s])) gedges.push_back({static_cast<std::size_t>(p), s, n + 1});

  // Counter degeneralization, keeping only reachable states.
  const std::size_t k = std::max<std::size_t>(untils.size(), 1);
  auto in_f = [&](std::size_t set, std::size_t q) { return untils.empty() || in_set[set][q]; };
  BuchiAutomaton b;
  b.alphabet = alphabet;
  std::map<std::pair<std::size_t, std::size_t>, State> ids;
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto state = [&](std::size_t q, std::size_t c) {
    auto [it, fresh] = ids.emplace(std::make_pair(q, c), b.names.size());
    if (fresh) {
      b.names.push_back("s" + std::to_string(q) + "_" + std::to_string(c));
      b.accepting.push_back(c == 0 && in_f(0, q));
      queue.emplace_back(q, c);
    }
    return it->second;
  };
  b.initial = state(0, 0);
  while (!queue.empty()) {
    auto [q, c] = queue.front();
    queue.pop_front();
    const State from = ids.at({q, c});
    const std::size_t nc = in_f(c, q) ? (c + 1) % k : c;
    for (const auto& e : gedges) {
      if (e.from != q) continue;
      b.edges.push_back({from, e.symbol, state(e.to, nc)});
    }
  }
  return quotient(b);
}

bool accepts_lasso(const BuchiAutomaton& b, const Word& prefix, const Word& loop) {
  if (loop.empty()) throw PreconditionError("lasso loop must be nonempty");
  std::vector<std::size_t> letters;
  auto symbol = [&](const std::string& s) {
    auto it = std::find(b.alphabet.begin(), b.alphabet.end(), s);
    if (it == b.alphabet.end()) throw UnknownSymbol(s);
    return static_cast<std::size_t>(it - b.alphabet.begin());
  };
  for (const auto& s : prefix) letters.push_back(symbol(s));
  for (const auto& s : loop) letters.push_back(symbol(s));
  const std::size_t len = letters.size();
  const std::size_t loop_start = prefix.size();
  auto next_pos = [&](std::size_t p) { return p + 1 < len ? p + 1 : loop_start; };

  // Product states (q, position).
  const std::size_t n = b.num_states() * len;
  auto id = [&](State q, std::size_t p) { return q * len + p; };
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : b.edges)
    for (std::size_t p = 0; p < len; ++p)
      if (letters[p] == e.symbol) succ[id(e.from, p)].push_back(id(e.to, next_pos(p)));

  auto reach = [&](std::vector<std::size_t> start) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack;
    for (auto s : start)
      for (auto t : succ[s])
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto t : succ[v])
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
    }
    return seen;
  };
  auto from_init = reach({id(b.initial, 0)});
  from_init[id(b.initial, 0)] = true;
  for (State q = 0; q < b.num_states(); ++q) {
    if (!b.accepting[q]) continue;
    for (std::size_t p = 0; p < len; ++p) {
      const auto v = id(q, p);
      if (from_init[v] && reach({v})[v]) return true;
    }
  }
  return false;
}

BuchiAutomaton buchi_from_nfa(const EpsNfa& a) {
  if (!a.epsilons().empty()) throw PreconditionError("Büchi automata cannot have ε-transitions");
  BuchiAutomaton b;
  b.alphabet = a.alphabet();
  for (State q = 0; q < a.num_states(); ++q) {
    b.names.push_back(a.state_name(q));
    b.accepting.push_back(a.accepting(q));
  }
  b.initial = a.initial();
  for (const auto& e : a.transitions()) b.edges.push_back({e.from, e.symbol, e.to});
  return b;
}

BuchiAutomaton parse_buchi(std::string_view text) { return buchi_from_nfa(parse_automaton(text)); }

std::string to_dot(const BuchiAutomaton& b) {
  std::ostringstream os;
  os << "digraph buchi {\n  __start [shape=point];\n";
  for (State q = 0; q < b.num_states(); ++q)
    os << "  s" << q << " [label=\"" << b.names[q] << "\", shape="
       << (b.accepting[q] ? "doublecircle" : "circle") << "];\n";
  os << "  __start -> s" << b.initial << ";\n";
  for (const auto& e : b.edges)
    os << "  s" << e.from << " -> s" << e.to << " [label=\"" << b.alphabet[e.symbol] << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace wsts
