#include "wsts/devkit/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace wsts::devkit {

namespace {

// One concrete firing; every ω output produces `omega_tokens`.
std::optional<Marking> fire(const Transition& t, const Marking& x, std::uint64_t omega_tokens) {
  Marking y = x;
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (x[i] < t.guard[i]) return std::nullopt;
    y[i] = x[i] - t.guard[i] + (t.output[i].is_omega() ? omega_tokens : t.output[i].value());
  }
  return y;
}

std::vector<std::vector<State>> epsilon_successors(const EpsNfa& a) {
  std::vector<std::vector<State>> eps(a.num_states());
  for (const auto& e : a.epsilons()) eps[e.from].push_back(e.to);
  return eps;
}

std::vector<bool> closure(const std::vector<std::vector<State>>& eps, std::vector<bool> set) {
  std::vector<State> stack;
  for (State q = 0; q < set.size(); ++q)
    if (set[q]) stack.push_back(q);
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State r : eps[q])
      if (!set[r]) {
        set[r] = true;
        stack.push_back(r);
      }
  }
  return set;
}

std::size_t symbol_of(const EpsNfa& a, const std::string& s) {
  const auto& al = a.alphabet();
  auto it = std::find(al.begin(), al.end(), s);
  if (it == al.end()) throw UnknownSymbol(s);
  return static_cast<std::size_t>(it - al.begin());
}

}  // namespace

std::size_t box_index(const Marking& p, std::uint64_t box) {
  std::size_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    idx += static_cast<std::size_t>(p[i]) * stride;
    stride *= static_cast<std::size_t>(box + 1);
  }
  return idx;
}

Marking box_point(std::size_t index, std::size_t dimension, std::uint64_t box) {
  std::vector<std::uint64_t> c(dimension);
  for (auto& x : c) {
    x = index % (box + 1);
    index /= (box + 1);
  }
  return Marking(std::move(c));
}

void close_downward(std::vector<bool>& points, std::size_t dimension, std::uint64_t box) {
  std::size_t stride = 1;
  for (std::size_t i = 0; i < dimension; ++i) {
    for (std::size_t idx = points.size(); idx-- > 0;)
      if (points[idx] && (idx / stride) % (box + 1) > 0) points[idx - stride] = true;
    stride *= static_cast<std::size_t>(box + 1);
  }
}

std::vector<bool> truncated_cover_box(const NetModel& net, const Marking& x0, std::uint64_t box,
                                      std::uint64_t cap) {
  const std::size_t d = net.dimension();
  if (cap < box) throw PreconditionError("cap must be at least the box bound");
  double states = 1;
  for (std::size_t i = 0; i < d; ++i) states *= static_cast<double>(cap + 1);
  if (states > 6e7) throw PreconditionError("truncated state space too large");

  auto truncate = [&](Marking m) {
    for (std::size_t i = 0; i < d; ++i) m[i] = std::min(m[i], cap);
    return m;
  };
  std::vector<bool> seen(static_cast<std::size_t>(states), false);
  std::vector<Marking> stack{truncate(x0)};
  seen[box_index(stack.back(), cap)] = true;
  std::size_t points = 1;
  for (std::size_t i = 0; i < d; ++i) points *= static_cast<std::size_t>(box + 1);
  std::vector<bool> cover(points, false);
  while (!stack.empty()) {
    const Marking m = stack.back();
    stack.pop_back();
    Marking p = m;
    for (std::size_t i = 0; i < d; ++i) p[i] = std::min(p[i], box);
    cover[box_index(p, box)] = true;
    for (const auto& t : net.transitions()) {
      auto y = fire(t, m, cap);
      if (!y) continue;
      *y = truncate(*y);
      const auto idx = box_index(*y, cap);
      if (seen[idx]) continue;
      seen[idx] = true;
      stack.push_back(std::move(*y));
    }
  }
  close_downward(cover, d, box);
  return cover;
}

std::set<Word> concrete_traces(const NetModel& net, const Marking& x0, std::size_t max_length,
                               std::uint64_t omega_tokens) {
  std::set<Word> out;
  Word w;
  std::function<void(const Marking&)> dfs = [&](const Marking& x) {
    out.insert(w);
    if (w.size() == max_length) return;
    for (const auto& t : net.transitions()) {
      auto y = fire(t, x, omega_tokens);
      if (!y) continue;
      w.push_back(t.label);
      dfs(*y);
      w.pop_back();
    }
  };
  dfs(x0);
  return out;
}

bool embeds_in_trace(const NetModel& net, const Marking& x0, const Word& w,
                     std::size_t max_length, std::uint64_t omega_tokens) {
  // Best remaining budget seen per (marking, matched letters).
  std::map<std::pair<Marking, std::size_t>, std::size_t> best;
  std::function<bool(const Marking&, std::size_t, std::size_t)> dfs =
      [&](const Marking& x, std::size_t matched, std::size_t budget) {
        if (matched == w.size()) return true;
        if (w.size() - matched > budget) return false;
        auto [it, fresh] = best.try_emplace({x, matched}, budget);
        if (!fresh) {
          if (it->second >= budget) return false;
          it->second = budget;
        }
        for (const auto& t : net.transitions()) {
          auto y = fire(t, x, omega_tokens);
          if (!y) continue;
          if (t.label == w[matched] && dfs(*y, matched + 1, budget - 1)) return true;
          if (dfs(*y, matched, budget - 1)) return true;
        }
        return false;
      };
  return dfs(x0, 0, max_length);
}

bool simulate(const EpsNfa& a, const Word& w) {
  const auto eps = epsilon_successors(a);
  std::vector<bool> cur(a.num_states(), false);
  cur[a.initial()] = true;
  cur = closure(eps, cur);
  for (const auto& s : w) {
    const std::size_t sym = symbol_of(a, s);
    std::vector<bool> next(a.num_states(), false);
    for (const auto& e : a.transitions())
      if (e.symbol == sym && cur[e.from]) next[e.to] = true;
    cur = closure(eps, next);
  }
  for (State q = 0; q < a.num_states(); ++q)
    if (cur[q] && a.accepting(q)) return true;
  return false;
}

bool subword_of_accepted(const EpsNfa& a, const Word& w) {
  std::vector<std::size_t> syms;
  for (const auto& s : w) syms.push_back(symbol_of(a, s));
  const std::size_t n = a.num_states(), m = w.size() + 1;
  std::vector<bool> seen(n * m, false);
  std::vector<std::pair<State, std::size_t>> stack{{a.initial(), 0}};
  seen[a.initial() * m] = true;
  auto push = [&](State q, std::size_t i) {
    if (!seen[q * m + i]) {
      seen[q * m + i] = true;
      stack.emplace_back(q, i);
    }
  };
  while (!stack.empty()) {
    auto [q, i] = stack.back();
    stack.pop_back();
    if (i == w.size() && a.accepting(q)) return true;
    for (const auto& e : a.epsilons())
      if (e.from == q) push(e.to, i);
    for (const auto& e : a.transitions()) {
      if (e.from != q) continue;
      push(e.to, i);
      if (i < w.size() && e.symbol == syms[i]) push(e.to, i + 1);
    }
  }
  return false;
}

std::vector<Word> all_words(const std::vector<std::string>& alphabet, std::size_t max_length) {
  std::vector<Word> out{Word{}};
  for (std::size_t start = 0; start < out.size(); ++start) {
    if (out[start].size() == max_length) continue;
    for (const auto& s : alphabet) {
      Word w = out[start];
      w.push_back(s);
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::optional<Word> positive_word_by_enumeration(const EffectAutomaton& ea, std::size_t max_length) {
  const auto& a = ea.nfa;
  const std::size_t d = ea.dimension;
  struct Config {
    State q;
    std::vector<std::int64_t> disp;
    std::vector<bool> omega;
    auto operator<=>(const Config&) const = default;
  };
  auto positive = [&](const Config& c) {
    for (std::size_t i = 0; i < d; ++i)
      if (!c.omega[i] && c.disp[i] < 0) return false;
    return true;
  };
  auto eps_close = [&](std::map<Config, Word>& layer) {
    std::vector<Config> stack;
    for (const auto& [c, w] : layer) stack.push_back(c);
    while (!stack.empty()) {
      Config c = stack.back();
      stack.pop_back();
      const Word w = layer.at(c);
      for (const auto& e : a.epsilons()) {
        if (e.from != c.q) continue;
        Config n{e.to, c.disp, c.omega};
        if (layer.emplace(n, w).second) stack.push_back(n);
      }
    }
  };
  std::map<Config, Word> layer{{Config{a.initial(), std::vector<std::int64_t>(d), std::vector<bool>(d)}, {}}};
  eps_close(layer);
  for (std::size_t len = 1; len <= max_length && !layer.empty(); ++len) {
    std::map<Config, Word> next;
    for (const auto& [c, w] : layer) {
      for (std::size_t k = 0; k < a.transitions().size(); ++k) {
        const auto& e = a.transitions()[k];
        if (e.from != c.q) continue;
        Config n{e.to, c.disp, c.omega};
        for (std::size_t i = 0; i < d; ++i) {
          n.disp[i] += ea.effects[k].displacement[i];
          n.omega[i] = n.omega[i] || ea.effects[k].omega[i];
        }
        Word nw = w;
        nw.push_back(a.alphabet()[e.symbol]);
        next.emplace(std::move(n), std::move(nw));
      }
    }
    eps_close(next);
    for (const auto& [c, w] : next)
      if (a.accepting(c.q) && positive(c)) return w;
    layer = std::move(next);
  }
  return std::nullopt;
}

ReachabilityGraph reachability_graph(const NetModel& net, const Marking& x0, std::size_t max_states) {
  if (net.has_omega_outputs()) throw PreconditionError("reachability graph needs a net without ω outputs");
  ReachabilityGraph g;
  std::map<Marking, std::size_t> ids{{x0, 0}};
  g.markings.push_back(x0);
  for (std::size_t k = 0; k < g.markings.size(); ++k) {
    g.succ.emplace_back();
    for (Label l = 0; l < net.alphabet_size(); ++l) {
      auto y = fire(net.transition(l), g.markings[k], 0);
      if (!y) continue;
      auto [it, fresh] = ids.emplace(*y, g.markings.size());
      if (fresh) {
        if (g.markings.size() >= max_states) throw PreconditionError("reachability set too large");
        g.markings.push_back(*y);
      }
      g.succ[k].emplace_back(l, it->second);
    }
  }
  return g;
}

bool lasso_covers(const NetModel& net, const Marking& x0, const Marking& y, std::size_t max_states) {
  const auto g = reachability_graph(net, x0, max_states);
  for (std::size_t s = 0; s < g.markings.size(); ++s) {
    if (!y.leq(g.markings[s])) continue;
    std::vector<bool> seen(g.markings.size(), false);
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto& [l, t] : g.succ[v]) {
        if (t == s) return true;
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
      }
    }
  }
  return false;
}

bool lasso_satisfies(const LtlFormula& phi, const Word& u, const Word& v) {
  if (v.empty()) throw PreconditionError("lasso loop must be nonempty");
  Word letters = u;
  letters.insert(letters.end(), v.begin(), v.end());
  const std::size_t n = letters.size();
  auto next = [&](std::size_t p) { return p + 1 < n ? p + 1 : u.size(); };
  using K = LtlFormula::Kind;

  std::function<std::vector<bool>(const LtlFormula&)> eval = [&](const LtlFormula& f) {
    std::vector<bool> sat(n);
    auto fixpoint = [&](const std::vector<bool>& l, const std::vector<bool>& r, bool until) {
      std::vector<bool> s(n, !until);
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t p = n; p-- > 0;) {
          const bool val = until ? (r[p] || (l[p] && s[next(p)])) : (r[p] && (l[p] || s[next(p)]));
          if (val != s[p]) {
            s[p] = val;
            changed = true;
          }
        }
      }
      return s;
    };
    switch (f.kind()) {
      case K::tt: return std::vector<bool>(n, true);
      case K::ff: return std::vector<bool>(n, false);
      case K::atom:
        for (std::size_t p = 0; p < n; ++p) sat[p] = letters[p] == f.name();
        return sat;
      case K::negation: {
        auto s = eval(f.left());
        s.flip();
        return s;
      }
      case K::conjunction:
      case K::disjunction: {
        auto l = eval(f.left()), r = eval(f.right());
        for (std::size_t p = 0; p < n; ++p)
          sat[p] = f.kind() == K::conjunction ? (l[p] && r[p]) : (l[p] || r[p]);
        return sat;
      }
      case K::next: {
        auto s = eval(f.left());
        for (std::size_t p = 0; p < n; ++p) sat[p] = s[next(p)];
        return sat;
      }
      case K::until: return fixpoint(eval(f.left()), eval(f.right()), true);
      case K::release: return fixpoint(eval(f.left()), eval(f.right()), false);
      case K::eventually: return fixpoint(std::vector<bool>(n, true), eval(f.left()), true);
      case K::always: return fixpoint(std::vector<bool>(n, false), eval(f.left()), false);
    }
    return sat;
  };
  return eval(phi)[0];
}

}  // namespace wsts::devkit
