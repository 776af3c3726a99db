#include "wsts/nfa.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace wsts {

EpsNfa::EpsNfa(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i] == "eps") throw PreconditionError("'eps' is reserved for ε-transitions");
    if (!symbol_index_.emplace(alphabet_[i], i).second) {
      throw PreconditionError("duplicate alphabet symbol '" + alphabet_[i] + "'");
    }
  }
}

State EpsNfa::add_state(std::string name, bool accepting) {
  if (name.empty()) name = "q" + std::to_string(names_.size());
  names_.push_back(std::move(name));
  accepting_.push_back(accepting);
  return names_.size() - 1;
}

void EpsNfa::check_state(State q) const {
  if (q >= names_.size()) throw PreconditionError("undeclared state " + std::to_string(q));
}

void EpsNfa::set_initial(State q) {
  check_state(q);
  initial_ = q;
}

void EpsNfa::set_accepting(State q, bool accepting) {
  check_state(q);
  accepting_[q] = accepting;
}

void EpsNfa::add_transition(State from, std::string_view symbol, State to) {
  auto s = symbol_index(symbol);
  if (!s) throw UnknownSymbol(std::string(symbol));
  add_transition(from, *s, to);
}

void EpsNfa::add_transition(State from, std::size_t symbol, State to) {
  check_state(from);
  check_state(to);
  if (symbol >= alphabet_.size()) throw PreconditionError("symbol index out of range");
  edges_.push_back({from, symbol, to});
}

void EpsNfa::add_epsilon(State from, State to, EpsKind kind) {
  check_state(from);
  check_state(to);
  eps_.push_back({from, to, kind});
}

std::optional<std::size_t> EpsNfa::symbol_index(std::string_view s) const {
  auto it = symbol_index_.find(s);
  if (it == symbol_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<State> EpsNfa::state_by_name(std::string_view name) const {
  for (State q = 0; q < names_.size(); ++q)
    if (names_[q] == name) return q;
  return std::nullopt;
}

std::vector<State> EpsNfa::eps_closure(std::vector<State> states) const {
  std::vector<bool> seen(num_states(), false);
  std::vector<State> stack;
  for (State q : states) {
    if (!seen[q]) {
      seen[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (const auto& e : eps_) {
      if (e.from == q && !seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  std::vector<State> out;
  for (State q = 0; q < num_states(); ++q)
    if (seen[q]) out.push_back(q);
  return out;
}

std::vector<State> EpsNfa::step(const std::vector<State>& states, std::size_t symbol) const {
  std::vector<bool> in(num_states(), false);
  for (State q : states) in[q] = true;
  std::vector<State> next;
  for (const auto& e : edges_)
    if (e.symbol == symbol && in[e.from]) next.push_back(e.to);
  return eps_closure(std::move(next));
}

bool accepts(const EpsNfa& a, const Word& w) {
  if (a.num_states() == 0) return false;
  auto cur = a.eps_closure({a.initial()});
  for (const auto& letter : w) {
    auto s = a.symbol_index(letter);
    if (!s) throw UnknownSymbol(letter);
    cur = a.step(cur, *s);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](State q) { return a.accepting(q); });
}

EpsNfa subword_closure(const EpsNfa& a) {
  EpsNfa out = a;
  for (const auto& e : a.transitions()) out.add_epsilon(e.from, e.to);
  return out;
}

EpsNfa with_alphabet(const EpsNfa& a, const std::vector<std::string>& alphabet) {
  std::vector<std::string> merged = a.alphabet();
  for (const auto& s : alphabet)
    if (!a.symbol_index(s)) merged.push_back(s);
  EpsNfa out(merged);
  for (State q = 0; q < a.num_states(); ++q) out.add_state(a.state_name(q), a.accepting(q));
  if (a.num_states() > 0) out.set_initial(a.initial());
  for (const auto& e : a.transitions()) out.add_transition(e.from, e.symbol, e.to);
  for (const auto& e : a.epsilons()) out.add_epsilon(e.from, e.to, e.kind);
  return out;
}

std::optional<Word> inclusion_counterexample(const EpsNfa& a, const EpsNfa& b,
                                             std::size_t subset_limit) {
  const std::set<std::string> sa(a.alphabet().begin(), a.alphabet().end());
  const std::set<std::string> sb(b.alphabet().begin(), b.alphabet().end());
  if (sa != sb) throw AlphabetMismatch("inclusion needs equal alphabets");
  if (a.num_states() == 0) return std::nullopt;

  std::vector<std::size_t> to_b(a.alphabet().size());
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) to_b[s] = *b.symbol_index(a.alphabet()[s]);

  // Determinized b: subsets interned by id.
  std::map<std::vector<State>, std::size_t> subset_ids;
  std::vector<std::vector<State>> subsets;
  std::vector<bool> subset_accepts;
  auto intern = [&](std::vector<State> s) {
    auto it = subset_ids.find(s);
    if (it != subset_ids.end()) return it->second;
    if (subsets.size() >= subset_limit) {
      throw StateLimitExceeded("subset construction exceeded " + std::to_string(subset_limit) +
                               " states");
    }
    subset_accepts.push_back(std::any_of(s.begin(), s.end(), [&](State q) { return b.accepting(q); }));
    subsets.push_back(s);
    subset_ids.emplace(std::move(s), subsets.size() - 1);
    return subsets.size() - 1;
  };

  // BFS over (state of a, subset of b) gives a shortest counterexample.
  struct Node {
    State qa;
    std::size_t sb;
    std::size_t parent;
    std::size_t symbol;
  };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<Node> nodes;
  std::set<std::pair<State, std::size_t>> seen;
  std::deque<std::size_t> queue;
  auto push = [&](State qa, std::size_t sbi, std::size_t parent, std::size_t symbol) {
    if (!seen.emplace(qa, sbi).second) return;
    nodes.push_back({qa, sbi, parent, symbol});
    queue.push_back(nodes.size() - 1);
  };

  const std::size_t b0 =
      intern(b.num_states() > 0 ? b.eps_closure({b.initial()}) : std::vector<State>{});
  for (State q : a.eps_closure({a.initial()})) push(q, b0, kNone, 0);

  while (!queue.empty()) {
    const std::size_t n = queue.front();
    queue.pop_front();
    const Node node = nodes[n];
    if (a.accepting(node.qa) && !subset_accepts[node.sb]) {
      Word w;
      for (std::size_t i = n; nodes[i].parent != kNone; i = nodes[i].parent)
        w.push_back(a.alphabet()[nodes[i].symbol]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (const auto& e : a.transitions()) {
      if (e.from != node.qa) continue;
      const std::size_t nb = intern(b.step(subsets[node.sb], to_b[e.symbol]));
      for (State q : a.eps_closure({e.to})) push(q, nb, n, e.symbol);
    }
  }
  return std::nullopt;
}

bool included(const EpsNfa& a, const EpsNfa& b, std::size_t subset_limit) {
  return !inclusion_counterexample(a, b, subset_limit).has_value();
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const EpsNfa& a, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(graph_name) << "\" {\n  rankdir=LR;\n";
  os << "  __start [shape=point];\n";
  for (State q = 0; q < a.num_states(); ++q) {
    os << "  s" << q << " [label=\"" << dot_escape(a.state_name(q)) << "\", shape="
       << (a.accepting(q) ? "doublecircle" : "circle") << "];\n";
  }
  if (a.num_states() > 0) os << "  __start -> s" << a.initial() << ";\n";
  for (const auto& e : a.transitions()) {
    os << "  s" << e.from << " -> s" << e.to << " [label=\"" << dot_escape(a.alphabet()[e.symbol])
       << "\"];\n";
  }
  for (const auto& e : a.epsilons()) {
    const char* style = e.kind == EpsKind::acceleration  ? "dashed"
                        : e.kind == EpsKind::subsumption ? "dotted"
                                                         : "solid";
    os << "  s" << e.from << " -> s" << e.to << " [label=\"ε\", style=" << style << "];\n";
  }
  os << "}\n";
  return os.str();
}

EpsNfa parse_automaton(std::string_view text) {
  std::vector<std::string> alphabet;
  std::vector<std::string> state_decl;
  std::string initial;
  std::vector<std::string> accepting;
  struct Tr {
    std::string from, symbol, to;
    std::size_t line;
  };
  std::vector<Tr> trs;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::size_t col = line.find(tok[0]) + 1;
    auto rest = [&] { return std::vector<std::string>(tok.begin() + 1, tok.end()); };
    if (tok[0] == "alphabet:") {
      alphabet = rest();
    } else if (tok[0] == "states:") {
      state_decl = rest();
    } else if (tok[0] == "initial:") {
      if (tok.size() != 2) throw ParseError("expected exactly one initial state", line_no, col);
      initial = tok[1];
    } else if (tok[0] == "accepting:") {
      accepting = rest();
    } else if (tok.size() == 3) {
      trs.push_back({tok[0], tok[1], tok[2], line_no});
    } else {
      throw ParseError("expected a stanza or 'from symbol to'", line_no, col);
    }
  }

  EpsNfa a(alphabet);
  std::map<std::string, State> ids;
  auto state = [&](const std::string& n) {
    auto it = ids.find(n);
    if (it != ids.end()) return it->second;
    State q = a.add_state(n);
    ids.emplace(n, q);
    return q;
  };
  for (const auto& s : state_decl) state(s);
  if (!initial.empty()) a.set_initial(state(initial));
  for (const auto& t : trs) {
    State f = state(t.from), to = state(t.to);
    if (t.symbol == "eps") {
      a.add_epsilon(f, to);
    } else if (!a.symbol_index(t.symbol)) {
      throw ParseError("symbol '" + t.symbol + "' not in alphabet", t.line, 1);
    } else {
      a.add_transition(f, t.symbol, to);
    }
  }
  for (const auto& s : accepting) a.set_accepting(state(s));
  if (a.num_states() == 0) throw ParseError("automaton has no states", line_no, 1);
  if (initial.empty()) throw ParseError("missing 'initial:' stanza", line_no, 1);
  return a;
}

std::string render_automaton(const EpsNfa& a) {
  std::ostringstream os;
  os << "alphabet:";
  for (const auto& s : a.alphabet()) os << ' ' << s;
  os << "\nstates:";
  for (State q = 0; q < a.num_states(); ++q) os << ' ' << a.state_name(q);
  os << "\ninitial: " << a.state_name(a.initial()) << "\naccepting:";
  for (State q = 0; q < a.num_states(); ++q)
    if (a.accepting(q)) os << ' ' << a.state_name(q);
  os << '\n';
  for (const auto& e : a.transitions())
    os << a.state_name(e.from) << ' ' << a.alphabet()[e.symbol] << ' ' << a.state_name(e.to) << '\n';
  for (const auto& e : a.epsilons()) os << a.state_name(e.from) << " eps " << a.state_name(e.to) << '\n';
  return os.str();
}

}  // namespace wsts
