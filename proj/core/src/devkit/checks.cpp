#include "wsts/devkit/checks.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "wsts/buchi.hpp"
#include "wsts/devkit/generators.hpp"
#include "wsts/devkit/oracles.hpp"
#include "wsts/ikm.hpp"
#include "wsts/liveness.hpp"
#include "wsts/product.hpp"
#include "wsts/traces.hpp"

namespace wsts::devkit {

namespace {

constexpr std::size_t kMaxFailures = 8;

}  // namespace

void CheckReport::record(bool ok, const std::string& what) {
  ++cases;
  if (ok) ++agreed;
  else if (failures.size() < kMaxFailures) failures.push_back(what);
}

namespace {

// Runs `body` and stores the elapsed time in the report.
template <class Body>
CheckReport timed(std::string name, Body body) {
  CheckReport r;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    ++r.cases;
    if (r.failures.size() < kMaxFailures) r.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

IkmTree<IdealVec> tree_of(const NetModel& net, const Marking& x0, IkmOptions o = {}) {
  return build_ikm_tree(NetCompletion(net), IdealVec::down(x0), o);
}

std::string describe(const NetModel& net, const Marking& x0) {
  std::string s = render_net(net);
  for (auto& c : s)
    if (c == '\n') c = ';';
  return s + " x0=" + x0.to_string();
}

std::string join(const Word& w) {
  std::string s;
  for (const auto& a : w) s += (s.empty() ? "" : " ") + a;
  return s.empty() ? "ε" : s;
}

NetModel random_omega_net(Rng& rng, const NetShape& shape) {
  for (;;) {
    auto net = random_net(rng, shape);
    if (net.has_omega_outputs()) return net;
  }
}

// Words of length <= depth accepted by an automaton whose states are all accepting.
std::vector<Word> prefix_closed_words(const EpsNfa& a, std::size_t depth) {
  std::vector<Word> out;
  Word w;
  std::function<void(const std::vector<State>&)> walk = [&](const std::vector<State>& cur) {
    out.push_back(w);
    if (w.size() == depth) return;
    for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
      auto next = a.step(cur, s);
      if (next.empty()) continue;
      w.push_back(a.alphabet()[s]);
      walk(next);
      w.pop_back();
    }
  };
  walk(a.eps_closure({a.initial()}));
  return out;
}

}  // namespace

CheckReport check_omega_rendering() {
  return timed("ω-representation", [](CheckReport& r) {
    const auto v = IdealVec::parse("(w,8,3,w)");
    r.record(v.to_string() == "(w,8,3,w)", "render " + v.to_string());
    r.record(contains(v, Marking{1000, 8, 3, 1000}), "(1000,8,3,1000) missing");
    r.record(!contains(v, Marking{0, 9, 0, 0}), "(0,9,0,0) present");
    r.record(!contains(v, Marking{0, 0, 4, 0}), "(0,0,4,0) present");
    r.record(level(v) == 2, "level");
  });
}

CheckReport check_acceleration_example() {
  return timed("acceleration", [](CheckReport& r) {
    const NetModel n(3, {{"w", {0, 0, 0}, IdealVec::parse("(0,1,2)")}});
    const NetCompletion sys(n);
    const auto once = post_word(sys, IdealVec::parse("(5,0,1)"), std::vector<Label>{0});
    r.record(once && once->to_string() == "(5,1,3)", "one step");
    const auto acc = accelerate(sys, IdealVec::parse("(5,0,1)"), std::vector<Label>{0});
    r.record(acc.to_string() == "(5,w,w)", "accelerate gave " + acc.to_string());
  });
}

std::vector<Instance> clover_instances(std::uint64_t seed, std::size_t nets,
                                       std::size_t omega_nets) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t k = 0; k < nets + omega_nets; ++k) {
    const NetShape shape{4, 5, 3, k < nets ? 0.0 : 0.2};
    auto net = k < nets ? random_net(rng, shape) : random_omega_net(rng, shape);
    auto x0 = random_marking(rng, net.dimension(), 3);
    out.push_back({std::move(net), std::move(x0), std::nullopt, "clover #" + std::to_string(k)});
  }
  return out;
}

std::vector<Instance> coverability_instances(std::uint64_t seed, std::size_t queries) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t k = 0; k < queries; ++k) {
    auto net = random_net(rng, {4, 5, 3, 0.0});
    auto x0 = random_marking(rng, net.dimension(), 3);
    auto y = random_marking(rng, net.dimension(), 5);
    out.push_back({std::move(net), std::move(x0), std::move(y), "cover #" + std::to_string(k)});
  }
  return out;
}

std::vector<Instance> trace_instances(std::uint64_t seed, std::size_t nets) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t k = 0; k < nets; ++k) {
    auto net = random_net(rng, {3, 3, 2, k % 4 == 3 ? 0.2 : 0.0});
    auto x0 = random_marking(rng, net.dimension(), 2);
    out.push_back({std::move(net), std::move(x0), std::nullopt, "traces #" + std::to_string(k)});
  }
  return out;
}

std::vector<Instance> bounded_instances(std::uint64_t seed, std::size_t nets) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t k = 0; k < nets; ++k) {
    auto net = random_bounded_net(rng, {3, 4, 2, 0.0});
    auto x0 = random_marking(rng, net.dimension(), 3);
    auto y = random_marking(rng, net.dimension(), 2);
    out.push_back({std::move(net), std::move(x0), std::move(y), "bounded #" + std::to_string(k)});
  }
  return out;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  auto net = load_net(text);
  const auto at = text.find("# init:");
  if (at == std::string::npos) throw PreconditionError(path + " has no '# init:' line");
  std::string v = text.substr(at + 7, text.find('\n', at) - at - 7);
  auto x0 = Marking::parse(v);
  if (x0.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), x0.dimension());
  return {std::move(net), std::move(x0), std::nullopt, path};
}

std::vector<Instance> shipped_instances(const std::string& directory) {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(directory))
    if (e.path().extension() == ".net") paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<Instance> out;
  for (const auto& p : paths) out.push_back(load_instance(p));
  return out;
}

CheckReport check_clover(const std::vector<Instance>& instances, std::uint64_t box,
                         std::uint64_t cap) {
  return timed("clover vs truncated forward search", [&](CheckReport& r) {
    for (const auto& [net, x0, target, origin] : instances) {
      const auto cl = clover(tree_of(net, x0));
      const auto oracle = truncated_cover_box(net, x0, box, cap);
      std::size_t bad = 0;
      for (std::size_t p = 0; p < oracle.size(); ++p)
        if (oracle[p] != cl.contains(box_point(p, net.dimension(), box))) ++bad;
      r.record(bad == 0, origin + " " + describe(net, x0) + ": " + std::to_string(bad) +
                             " points differ");
    }
  });
}

CheckReport check_coverability(const std::vector<Instance>& instances, std::size_t node_budget) {
  return timed("coverability vs backward search", [&](CheckReport& r) {
    for (const auto& [net, x0, target, origin] : instances) {
      const bool ikm = coverable(tree_of(net, x0, {node_budget, Worklist::fifo}), *target);
      const bool backward = backward_coverable(net, x0, *target);
      r.record(ikm == backward, origin + " " + describe(net, x0) + " y=" + target->to_string());
    }
  });
}

CheckReport check_termination(const std::vector<Instance>& instances) {
  return timed("termination, numaccel and worklist order", [&](CheckReport& r) {
    for (const auto& [net, x0, target, origin] : instances) {
      std::optional<IkmTree<IdealVec>> fifo, lifo;
      try {
        fifo = tree_of(net, x0, {kDefaultNodeBudget, Worklist::fifo});
        lifo = tree_of(net, x0, {kDefaultNodeBudget, Worklist::lifo});
      } catch (const BudgetExceeded&) {
        r.record(false, origin + " " + describe(net, x0) + ": node budget exhausted");
        continue;
      }
      bool ok = clover(*fifo) == clover(*lifo);
      for (const auto* t : {&*fifo, &*lifo})
        for (const auto& n : t->nodes()) ok = ok && n.numaccel <= net.dimension();
      r.record(ok, origin + " " + describe(net, x0));
    }
  });
}

CheckReport check_trace_sandwich(const std::vector<Instance>& instances, std::size_t depth) {
  return timed("trace sandwich", [&](CheckReport& r) {
    for (const auto& [net, x0, target, origin] : instances) {
      const auto tree = tree_of(net, x0);
      const auto a = stuttering_automaton(tree);
      const auto km = km_automaton(tree);
      std::string bad;
      for (const auto& w : concrete_traces(net, x0, depth, 2 * depth)) {
        if (!simulate(a, w)) {
          bad = "trace " + join(w) + " not in A";
          break;
        }
      }
      if (bad.empty()) {
        for (const auto& w : prefix_closed_words(km, depth)) {
          if (!embeds_in_trace(net, x0, w, 2 * depth, 2 * depth)) {
            bad = "K-word " + join(w) + " embeds in no trace";
            break;
          }
        }
      }
      r.record(bad.empty(), origin + " " + describe(net, x0) + ": " + bad);
    }
  });
}

CheckReport check_languages(std::uint64_t seed, std::size_t pairs, std::size_t max_length) {
  return timed("subword closure and inclusion", [&](CheckReport& r) {
    Rng rng(seed);
    const NfaShape shape{4, 2, 0.3, 0.1, 0.4};
    for (std::size_t k = 0; k < pairs; ++k) {
      const auto a = random_nfa(rng, shape);
      const auto b = random_nfa(rng, shape);
      const auto words = all_words(a.alphabet(), max_length);
      std::string bad;

      const auto ca = subword_closure(a), cb = subword_closure(b);
      for (const auto& u : words) {
        if (accepts(ca, u) != subword_of_accepted(a, u)) {
          bad = "closure membership of " + join(u);
          break;
        }
      }

      // Inclusion, on the automata and on their closures.
      for (const auto& [x, y] : {std::pair{&a, &b}, std::pair{&ca, &cb}}) {
        if (!bad.empty()) break;
        const auto cex = inclusion_counterexample(*x, *y);
        std::optional<Word> shortest;
        for (const auto& w : words)
          if (simulate(*x, w) && !simulate(*y, w)) {
            shortest = w;
            break;
          }
        if (cex) {
          if (!simulate(*x, *cex) || simulate(*y, *cex)) bad = "invalid counterexample " + join(*cex);
          else if (shortest && shortest->size() != cex->size()) bad = "counterexample not shortest";
        } else if (shortest) {
          bad = "missed counterexample " + join(*shortest);
        }
      }
      r.record(bad.empty(), "pair " + std::to_string(k) + ": " + bad);
    }
  });
}

CheckReport check_positivity(std::uint64_t seed, std::size_t automata, std::size_t max_length) {
  return timed("positivity vs enumeration", [&](CheckReport& r) {
    Rng rng(seed);
    PositivityOptions bounded;
    bounded.max_word_length = max_length;
    for (std::size_t k = 0; k < automata; ++k) {
      const auto ea = random_effect_automaton(rng, 4, 3, 2);
      const auto oracle = positive_word_by_enumeration(ea, max_length);
      const auto w = exists_positive_sequence(ea, bounded);
      std::string bad;
      if (w.has_value() != oracle.has_value()) {
        bad = oracle ? "missed " + join(*oracle) : "spurious witness";
      } else if (w) {
        // Recompute positivity from the per-symbol effects.
        std::vector<std::int64_t> sum(ea.dimension, 0);
        std::vector<bool> omega(ea.dimension, false);
        for (const auto& s : w->word) {
          const auto sym = *ea.nfa.symbol_index(s);
          for (std::size_t t = 0; t < ea.nfa.transitions().size(); ++t) {
            if (ea.nfa.transitions()[t].symbol != sym) continue;
            for (std::size_t i = 0; i < ea.dimension; ++i) {
              if (ea.effects[t].omega[i]) omega[i] = true;
              else sum[i] += ea.effects[t].displacement[i];
            }
            break;
          }
        }
        bool positive = true;
        for (std::size_t i = 0; i < ea.dimension; ++i) positive = positive && (omega[i] || sum[i] >= 0);
        if (w->word.empty() || w->word.size() > max_length || !simulate(ea.nfa, w->word) || !positive)
          bad = "witness " + join(w->word) + " does not validate";
      }
      r.record(bad.empty(), "automaton " + std::to_string(k) + ": " + bad);
    }
  });
}

CheckReport check_repeated_coverability(const std::vector<Instance>& instances) {
  return timed("repeated coverability", [&](CheckReport& r) {
    const auto inc = NetModel::from_vas(1, {{"t", {1}}});
    const auto dec = NetModel::from_vas(1, {{"t", {-1}}});
    const auto chain = NetModel::from_vas(2, {{"t", {1, -1}}});
    r.record(repeatedly_coverable(inc, Marking{0}, Marking{5}).holds, "+1 net should hold");
    r.record(!repeatedly_coverable(dec, Marking{5}, Marking{0}).holds, "-1 net should fail");
    r.record(!repeatedly_coverable(chain, Marking{0, 5}, Marking{0, 0}).holds,
             "(+1,-1) net should fail");
    for (const auto& [net, x0, target, origin] : instances) {
      const bool ikm = repeatedly_coverable(net, x0, *target).holds;
      r.record(ikm == lasso_covers(net, x0, *target),
               origin + " " + describe(net, x0) + " y=" + target->to_string());
    }
  });
}

CheckReport check_ltl(std::uint64_t seed, std::size_t pairs, std::size_t max_formula,
                      std::size_t max_lasso) {
  return timed("ltl", [&](CheckReport& r) {
    const auto inc = NetModel::from_vas(1, {{"a", {1}}});
    r.record(model_check_ltl(inc, Marking{0}, parse_ltl("G F a")).holds, "G F a should hold");
    r.record(!model_check_ltl(inc, Marking{0}, parse_ltl("F G !a")).holds,
             "F G !a should be violated");
    const std::vector<std::string> sigma{"a", "b"};
    Rng rng(seed);
    for (std::size_t k = 0; k < pairs; ++k) {
      const auto phi = random_ltl(rng, pick(rng, 1, max_formula), sigma);
      const Word u = random_word(rng, sigma, pick(rng, 0, max_lasso));
      const Word v = random_word(rng, sigma, pick(rng, 1, max_lasso));
      const bool automaton = accepts_lasso(ltl_to_buchi(phi, sigma), u, v);
      r.record(automaton == lasso_satisfies(phi, u, v),
               phi.to_string() + " on " + join(u) + " (" + join(v) + ")^ω");
    }
  });
}

CheckReport check_examples() {
  return timed("worked examples", [](CheckReport& r) {
    auto note = [&](const std::string& what, const std::string& got, const std::string& oracle) {
      r.notes.push_back(what + ": " + got + (got == oracle ? "" : "  (oracle: " + oracle + ")"));
      r.record(got == oracle, what);
    };
    auto yes = [](bool b) { return std::string(b ? "true" : "false"); };
    const auto inc = NetModel::from_vas(1, {{"t", {1}}});
    const auto dec = NetModel::from_vas(1, {{"t", {-1}}});
    const auto chain = NetModel::from_vas(2, {{"t", {1, -1}}});

    {
      const NetModel n(2, {{"t", {1, 0}, IdealVec::parse("(0,w)")}});
      std::string got;
      for (const auto& m : post_concrete(n, Marking{2, 0}, "t", 2)) got += m.to_string();
      std::string oracle;
      for (std::uint64_t k = 0; k <= 2; ++k) oracle += Marking{1, k}.to_string();
      note("ω output from (2,0), bound 2", got, oracle);
    }

    auto forward = [](const NetModel& n, const Marking& x0, const Marking& y) -> bool {
      std::uint64_t box = 0;
      for (auto c : y) box = std::max(box, c);
      return truncated_cover_box(n, x0, box, 4 * box + 8)[box_index(y, box)];
    };
    note("backward +1 from (0) covers (5)", yes(backward_coverable(inc, Marking{0}, Marking{5})),
         yes(forward(inc, Marking{0}, Marking{5})));
    note("backward -1 from (3) covers (4)", yes(backward_coverable(dec, Marking{3}, Marking{4})),
         yes(forward(dec, Marking{3}, Marking{4})));

    // Maximal covered points of a box; components pinned at the edge are read as ω when
    // `edge_is_omega` is set.
    auto oracle_clover = [](const NetModel& n, const Marking& x0, std::uint64_t box,
                            bool edge_is_omega) {
      const auto pts = truncated_cover_box(n, x0, box, 4 * box);
      std::vector<IdealVec> maximal;
      for (std::size_t p = 0; p < pts.size(); ++p) {
        if (!pts[p]) continue;
        std::vector<OmegaNat> c;
        for (auto v : box_point(p, n.dimension(), box))
          c.push_back(edge_is_omega && v == box ? OmegaNat::omega() : OmegaNat(v));
        maximal.emplace_back(std::move(c));
      }
      return decompose(maximal).to_string();
    };
    const auto inc_tree = tree_of(inc, Marking{0});
    const auto chain_tree = tree_of(chain, Marking{0, 5});
    note("+1 tree size", std::to_string(inc_tree.size()), "3");
    note("(+1,-1) tree size", std::to_string(chain_tree.size()), "6");
    note("+1 clover", clover(inc_tree).to_string(), oracle_clover(inc, Marking{0}, 9, true));
    note("(+1,-1) clover", clover(chain_tree).to_string(),
         oracle_clover(chain, Marking{0, 5}, 6, false));
    note("+1 covers (5)", yes(coverable(inc_tree, Marking{5})), yes(forward(inc, Marking{0}, Marking{5})));
    note("(+1,-1) covers (3,3)", yes(coverable(chain_tree, Marking{3, 3})),
         yes(forward(chain, Marking{0, 5}, Marking{3, 3})));

    const auto a_inc = stuttering_automaton(inc_tree);
    note("+1 stuttering automaton", std::to_string(a_inc.num_states()) + " states, " +
         std::to_string(a_inc.epsilons().size()) + " ε", "3 states, 1 ε");
    note("(+1,-1) stuttering ε", std::to_string(stuttering_automaton(chain_tree).epsilons().size()), "0");
    const auto k_inc = km_automaton(inc_tree);
    bool t_star = true;
    for (const auto& w : all_words({"t"}, 8)) t_star = t_star && simulate(k_inc, w);
    note("+1 Karp-Miller language is t*", yes(t_star), "true");
    note("+1 Karp-Miller accepts ttt", yes(accepts(k_inc, {"t", "t", "t"})), "true");

    const auto tu = NetModel::from_vas(1, {{"t", {1}}, {"u", {1}}});
    note("traces-dc +1 ⊆ {t,u}", yes(traces_dc_included(inc, Marking{0}, tu, Marking{0})),
         yes(true));
    note("traces-dc {t,u} ⊆ +1", yes(traces_dc_included(tu, Marking{0}, inc, Marking{0})),
         yes(embeds_in_trace(inc, Marking{0}, {"u"}, 4, 4)));

    {
      const NetModel n(2, {{"t", {1, 0}, IdealVec::parse("(0,w)")},
                           {"s", {0, 0}, IdealVec::parse("(2,0)")}});
      // Bounded semantics: positive iff some enabling marking is not decreased.
      auto concrete = [&](const Word& w) {
        for (std::uint64_t a = 0; a <= 4; ++a)
          for (std::uint64_t b = 0; b <= 4; ++b) {
            std::vector<Marking> cur{Marking{a, b}};
            for (const auto& l : w) {
              std::vector<Marking> next;
              for (const auto& m : cur)
                for (const auto& y : post_concrete(n, m, l, 8)) next.push_back(y);
              cur = std::move(next);
            }
            for (const auto& y : cur)
              if (y[0] >= a && y[1] >= b) return true;
          }
        return false;
      };
      note("positivity of t t", yes(is_positive_word(n, {"t", "t"})), yes(concrete({"t", "t"})));
      note("positivity of s t", yes(is_positive_word(n, {"s", "t"})), yes(concrete({"s", "t"})));
    }

    note("repcover +1 from (0), y=(5)", yes(repeatedly_coverable(inc, Marking{0}, Marking{5}).holds), "true");
    note("repcover -1 from (5), y=(0)", yes(repeatedly_coverable(dec, Marking{5}, Marking{0}).holds),
         yes(lasso_covers(dec, Marking{5}, Marking{0})));
    note("repcover (+1,-1) from (0,5), y=(0,0)",
         yes(repeatedly_coverable(chain, Marking{0, 5}, Marking{0, 0}).holds),
         yes(lasso_covers(chain, Marking{0, 5}, Marking{0, 0})));

    const auto a_inc_net = NetModel::from_vas(1, {{"a", {1}}});
    const auto a_dec_net = NetModel::from_vas(1, {{"a", {-1}}});
    {
      const auto loop = parse_buchi("alphabet: a\ninitial: q0\naccepting: q0\nq0 a q0\n");
      const ProductSystem sys(loop, a_inc_net);
      note("product tree of the a-loop", std::to_string(build_ikm_tree(sys, sys.initial(Marking{0})).size()),
           std::to_string(tree_of(a_inc_net, Marking{0}).size()));
    }
    // The only infinite trace of the +1 net is a^ω.
    note("G F a on the +1 a-loop", yes(model_check_ltl(a_inc_net, Marking{0}, parse_ltl("G F a")).holds),
         yes(lasso_satisfies(parse_ltl("G F a"), {}, {"a"})));
    note("F G !a on the +1 a-loop",
         yes(model_check_ltl(a_inc_net, Marking{0}, parse_ltl("F G !a")).holds),
         yes(lasso_satisfies(parse_ltl("F G !a"), {}, {"a"})));
    // Every run of the -1 net from (3) halts, so any formula holds.
    const bool halts = reachability_graph(a_dec_net, Marking{3}).markings.size() == 4 &&
                       !lasso_covers(a_dec_net, Marking{3}, Marking{0});
    note("F G !a on the -1 net from (3)",
         yes(model_check_ltl(a_dec_net, Marking{3}, parse_ltl("F G !a")).holds), yes(halts));
    note("ff on the -1 net from (3)", yes(model_check_ltl(a_dec_net, Marking{3}, LtlFormula::ff()).holds),
         yes(halts));
  });
}

std::vector<std::string> check_names() {
  return {"omega",     "acceleration", "clover",       "cover", "termination",
          "traces",    "languages",    "positivity",   "repcover", "ltl", "examples"};
}

CheckReport run_check(const std::string& name, std::uint64_t seed, std::size_t count,
                      const std::string& nets_directory) {
  auto n = [&](std::size_t d) { return count ? count : d; };
  if (name == "omega") return check_omega_rendering();
  if (name == "acceleration") return check_acceleration_example();
  if (name == "clover") return check_clover(clover_instances(seed, n(50), count ? 0 : 20));
  if (name == "cover") return check_coverability(coverability_instances(seed, n(100)));
  if (name == "traces") return check_trace_sandwich(trace_instances(seed, n(20)));
  if (name == "languages") return check_languages(seed, n(100));
  if (name == "positivity") return check_positivity(seed, n(100));
  if (name == "repcover") return check_repeated_coverability(bounded_instances(seed, n(30)));
  if (name == "ltl") return check_ltl(seed, n(200));
  if (name == "examples") return check_examples();
  if (name == "termination") {
    std::vector<Instance> all;
    if (!nets_directory.empty()) all = shipped_instances(nets_directory);
    auto add = [&](std::vector<Instance> v) {
      for (auto& i : v) all.push_back(std::move(i));
    };
    add(clover_instances(seed, 50, 20));
    add(coverability_instances(seed, 100));
    add(trace_instances(seed, 20));
    add(bounded_instances(seed, 30));
    return check_termination(all);
  }
  throw PreconditionError("unknown check '" + name + "'");
}

}  // namespace wsts::devkit
