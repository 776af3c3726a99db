#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "devtool.hpp"
#include "wsts/buchi.hpp"
#include "wsts/errors.hpp"
#include "wsts/ikm.hpp"
#include "wsts/liveness.hpp"
#include "wsts/product.hpp"
#include "wsts/traces.hpp"

namespace wsts::cli {
namespace {

struct Query {
  std::string net, init, target, net2, init2, formula, buchi, dot, json;
  std::size_t budget = kDefaultNodeBudget;
  std::string worklist = "fifo";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

std::string join(const Word& w) {
  if (w.empty()) return "ε";
  std::string s;
  for (const auto& a : w) s += (s.empty() ? "" : " ") + a;
  return s;
}

std::size_t default_budget() {
  const char* env = std::getenv("WSTS_VERIFY_BUDGET");
  if (!env || !*env) return kDefaultNodeBudget;
  char* end = nullptr;
  const auto n = std::strtoull(env, &end, 10);
  if (*end != '\0' || n == 0) throw PreconditionError(std::string("bad WSTS_VERIFY_BUDGET '") + env + "'");
  return n;
}

IkmOptions ikm_options(const Query& q) {
  return {q.budget, q.worklist == "lifo" ? Worklist::lifo : Worklist::fifo};
}

Marking marking_for(const NetModel& net, const std::string& text) {
  auto x = Marking::parse(text);
  if (x.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), x.dimension());
  return x;
}

void add_system_options(CLI::App* sub, Query& q) {
  sub->add_option("--net", q.net, "net file (line format or JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--init", q.init, "initial marking, e.g. 0,5")->required();
  sub->add_option("--budget", q.budget, "IKM node budget (default 100000 or $WSTS_VERIFY_BUDGET)");
  sub->add_option("--worklist", q.worklist, "worklist order")
      ->check(CLI::IsMember({"fifo", "lifo"}));
}

void print_witness(std::ostream& out, const Word& loop, const PositivityWitness& w) {
  out << "loop: " << join(loop) << "\n";
  out << "effect:";
  for (const auto& c : w.justification) {
    out << " " << (c.omega ? std::string("w") : std::to_string(c.displacement));
  }
  out << "\n";
}

int cmd_clover(const Query& q, std::ostream& out) {
  const auto net = load_net_file(q.net);
  const auto tree = build_ikm_tree(NetCompletion(net), IdealVec::down(marking_for(net, q.init)),
                                   ikm_options(q));
  for (const auto& v : clover(tree)) out << v << "\n";
  if (!q.dot.empty()) write_file(q.dot, tree_to_dot(tree));
  return kPositive;
}

int cmd_cover(const Query& q, std::ostream& out) {
  const auto net = load_net_file(q.net);
  const auto y = marking_for(net, q.target);
  const auto tree = build_ikm_tree(NetCompletion(net), IdealVec::down(marking_for(net, q.init)),
                                   ikm_options(q));
  if (!q.dot.empty()) write_file(q.dot, tree_to_dot(tree));
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (contains(tree.node(i).ideal, y)) {
      out << "true\nnode " << i << " " << tree.node(i).ideal << "\n";
      return kPositive;
    }
  }
  out << "false\n";
  return kNegative;
}

int cmd_repcover(const Query& q, std::ostream& out) {
  const auto net = load_net_file(q.net);
  const auto r = repeatedly_coverable(net, marking_for(net, q.init), marking_for(net, q.target),
                                      ikm_options(q));
  if (!r.holds) {
    out << "false\n";
    return kNegative;
  }
  out << "true\nnode " << *r.node << "\nprefix: " << join(r.prefix) << "\n";
  print_witness(out, r.witness->word, *r.witness);
  return kPositive;
}

int cmd_traces_dc(const Query& q, std::ostream& out) {
  const auto net1 = load_net_file(q.net);
  const auto net2 = load_net_file(q.net2);
  const auto x1 = marking_for(net1, q.init);
  const auto x2 = marking_for(net2, q.init2);
  const auto a = downward_traces_automaton(net1, x1, ikm_options(q));
  const auto b = downward_traces_automaton(net2, x2, ikm_options(q));
  auto sigma = a.alphabet();
  for (const auto& s : b.alphabet())
    if (std::find(sigma.begin(), sigma.end(), s) == sigma.end()) sigma.push_back(s);
  const auto cex = inclusion_counterexample(with_alphabet(a, sigma), with_alphabet(b, sigma));
  if (!cex) {
    out << "included\n";
    return kPositive;
  }
  out << "not included\ncounterexample: " << join(*cex) << "\n";
  return kNegative;
}

int cmd_ltl(const Query& q, std::ostream& out) {
  if (q.formula.empty() && q.buchi.empty()) throw PreconditionError("ltl needs --formula or --buchi");
  const auto net = load_net_file(q.net);
  const auto x0 = marking_for(net, q.init);
  const auto v = q.formula.empty()
                     ? model_check_buchi(net, x0, parse_buchi(read_file(q.buchi)), ikm_options(q))
                     : model_check_ltl(net, x0, parse_ltl(q.formula), ikm_options(q));
  if (v.holds) {
    out << "holds\n";
    return kPositive;
  }
  out << "violated\naccepting state: " << v.accepting_state.value_or("?")
      << "\nprefix: " << join(v.prefix) << "\n";
  if (v.witness) {
    print_witness(out, v.loop, *v.witness);
  } else {
    out << "loop: " << join(v.loop) << "\n";
  }
  return kNegative;
}

int cmd_km_dot(const Query& q, std::ostream& out) {
  const auto net = load_net_file(q.net);
  const auto tree = build_ikm_tree(NetCompletion(net), IdealVec::down(marking_for(net, q.init)),
                                   ikm_options(q));
  write_file(q.dot, tree_to_dot(tree));
  if (!q.json.empty()) write_file(q.json, tree_to_json(tree));
  out << tree.size() << " nodes\n";
  return kPositive;
}

// Whitespace separated words; double or single quotes group words.
std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (char c : line) {
    if (quote) {
      if (c == quote) quote = 0;
      else cur += c;
    } else if (c == '"' || c == '\'') {
      quote = c;
      in_word = true;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      if (in_word) out.push_back(cur);
      cur.clear();
      in_word = false;
    } else {
      cur += c;
      in_word = true;
    }
  }
  if (quote) throw PreconditionError("unterminated quote in '" + line + "'");
  if (in_word) out.push_back(cur);
  return out;
}

int cmd_batch(const std::string& path, std::size_t jobs, std::ostream& out, std::ostream& err) {
  std::vector<std::string> lines;
  std::istringstream in(read_file(path));
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line.substr(first));
  }
  struct Result {
    int code = 0;
    std::string out, err;
  };
  std::vector<Result> results(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < lines.size();) {
      std::ostringstream o, e;
      std::vector<std::string> args;
      try {
        args = split_words(lines[i]);
      } catch (const Error& ex) {
        results[i] = {kInputError, "", std::string("error: ") + ex.what() + "\n"};
        continue;
      }
      if (!args.empty() && args.front() == "batch") {
        e << "batch files cannot nest batch\n";
        results[i] = {kInputError, "", e.str()};
        continue;
      }
      const int code = run(args, o, e);
      results[i] = {code, o.str(), e.str()};
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < std::max<std::size_t>(1, jobs); ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  int worst = kPositive;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out << "== " << lines[i] << "\n" << results[i].out << "exit " << results[i].code << "\n";
    err << results[i].err;
    worst = std::max(worst, results[i].code);
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ideal Karp-Miller verification for VAS, Petri nets and ω-Petri nets",
               "wsts-verify"};
  app.require_subcommand(1);
  Query q;
  std::size_t jobs = 1;
  std::string batch_file;

  try {
    q.budget = default_budget();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  auto* clover_cmd = app.add_subcommand("clover", "print the clover (ideal decomposition of the cover)");
  add_system_options(clover_cmd, q);
  clover_cmd->add_option("--dot", q.dot, "write the IKM tree as Graphviz");

  auto* cover_cmd = app.add_subcommand("cover", "decide coverability of a target marking");
  add_system_options(cover_cmd, q);
  cover_cmd->add_option("--target", q.target, "marking to cover")->required();
  cover_cmd->add_option("--dot", q.dot, "write the IKM tree as Graphviz");

  auto* repcover_cmd = app.add_subcommand("repcover", "decide repeated coverability of a target");
  add_system_options(repcover_cmd, q);
  repcover_cmd->add_option("--target", q.target, "marking to cover infinitely often")->required();

  auto* traces_cmd = app.add_subcommand("traces-dc", "downward closed trace inclusion net ⊆ net2");
  add_system_options(traces_cmd, q);
  traces_cmd->add_option("--net2", q.net2, "second net")->required()->check(CLI::ExistingFile);
  traces_cmd->add_option("--init2", q.init2, "initial marking of the second net")->required();

  auto* ltl_cmd = app.add_subcommand("ltl", "model check an action-based LTL property");
  add_system_options(ltl_cmd, q);
  auto* formula = ltl_cmd->add_option("--formula", q.formula, "LTL formula, e.g. \"G F a\"");
  auto* buchi = ltl_cmd->add_option("--buchi", q.buchi, "Büchi automaton of the violations")
                    ->check(CLI::ExistingFile);
  formula->excludes(buchi);

  auto* dot_cmd = app.add_subcommand("km-dot", "export the IKM tree");
  add_system_options(dot_cmd, q);
  dot_cmd->add_option("--dot", q.dot, "Graphviz output")->required();
  dot_cmd->add_option("--json", q.json, "JSON output");

  auto* batch_cmd = app.add_subcommand("batch", "run one query per line of a file");
  batch_cmd->add_option("file", batch_file, "query file")->required()->check(CLI::ExistingFile);
  batch_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* dev_cmd = app.add_subcommand("devtool", "seeded generators, oracles and self-checks");
  DevtoolArgs dev;
  add_devtool(dev_cmd, dev);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int c = app.exit(e, out, err);
    return c == 0 ? kPositive : kInputError;
  }

  try {
    if (clover_cmd->parsed()) return cmd_clover(q, out);
    if (cover_cmd->parsed()) return cmd_cover(q, out);
    if (repcover_cmd->parsed()) return cmd_repcover(q, out);
    if (traces_cmd->parsed()) return cmd_traces_dc(q, out);
    if (ltl_cmd->parsed()) return cmd_ltl(q, out);
    if (dot_cmd->parsed()) return cmd_km_dot(q, out);
    if (batch_cmd->parsed()) return cmd_batch(batch_file, jobs, out, err);
    return run_devtool(dev_cmd, dev, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget or WSTS_VERIFY_BUDGET)\n";
    return kLimitReached;
  } catch (const StateLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kLimitReached;
  } catch (const PositivityInconclusive& e) {
    err << "error: " << e.what() << "\n";
    return kLimitReached;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace wsts::cli
