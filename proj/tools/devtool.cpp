#include "devtool.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "cli.hpp"
#include "wsts/devkit/checks.hpp"
#include "wsts/devkit/generators.hpp"
#include "wsts/devkit/oracles.hpp"

namespace wsts::cli {
namespace {

std::vector<std::string> split_atoms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c != ',') {
      cur += c;
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  return out;
}

int print_report(const devkit::CheckReport& r, std::ostream& out) {
  out << r.name << ": " << r.agreed << "/" << r.cases << " agreed in " << r.seconds << " s\n";
  for (const auto& n : r.notes) out << "  " << n << "\n";
  for (const auto& f : r.failures) out << "  FAIL " << f << "\n";
  return r.passed() ? kPositive : kNegative;
}

// Maximal points of the oracle's downward closed set; a coordinate equal to the box edge
// means "at least box".
int oracle(const DevtoolArgs& a, std::ostream& out) {
  const auto net = load_net_file(a.net);
  const auto x0 = Marking::parse(a.init);
  if (x0.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), x0.dimension());
  if (!a.target.empty()) {
    const auto y = Marking::parse(a.target);
    if (y.dimension() != net.dimension()) throw DimensionMismatch(net.dimension(), y.dimension());
    const bool repeated = devkit::lasso_covers(net, x0, y);
    out << "repeatedly coverable (lasso search): " << (repeated ? "true" : "false") << "\n";
    return repeated ? kPositive : kNegative;
  }
  const auto points = devkit::truncated_cover_box(net, x0, a.box, a.cap);
  const std::size_t d = net.dimension();
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (!points[p]) continue;
    const auto x = devkit::box_point(p, d, a.box);
    bool maximal = true;
    for (std::size_t i = 0; i < d && maximal; ++i) {
      if (x[i] == a.box) continue;
      auto up = x;
      ++up[i];
      maximal = !points[devkit::box_index(up, a.box)];
    }
    if (maximal) out << x << "\n";
  }
  return kPositive;
}

}  // namespace

void add_devtool(CLI::App* dev, DevtoolArgs& a) {
  dev->require_subcommand(1);

  auto* net = dev->add_subcommand("random-net", "print a seeded random net with a '# init:' line");
  net->add_option("--seed", a.seed);
  net->add_option("--dim", a.dimension, "maximum dimension");
  net->add_option("--transitions", a.transitions, "maximum number of transitions");
  net->add_option("--max-entry", a.max_entry, "maximum guard/output/marking entry");
  net->add_option("--omega", a.omega, "probability of an ω output per coordinate");
  net->add_flag("--bounded", a.bounded, "no transition increases the token count");

  auto* nfa = dev->add_subcommand("random-nfa", "print a seeded random automaton");
  nfa->add_option("--seed", a.seed);
  nfa->add_option("--states", a.states, "maximum number of states");
  nfa->add_option("--alphabet", a.alphabet, "alphabet size");

  auto* ltl = dev->add_subcommand("random-ltl", "print a seeded random LTL formula");
  ltl->add_option("--seed", a.seed);
  ltl->add_option("--size", a.size, "number of syntax nodes");
  ltl->add_option("--atoms", a.atoms, "comma separated atoms");

  auto* check = dev->add_subcommand("check", "cross-check the library against an oracle");
  check->add_option("name", a.check, "check name")
      ->required()
      ->check(CLI::IsMember(devkit::check_names()));
  check->add_option("--seed", a.seed);
  check->add_option("--count", a.count, "instances (0 selects the default)");
  check->add_option("--nets", a.nets, "directory of shipped nets (termination)")
      ->check(CLI::ExistingDirectory);

  dev->add_subcommand("examples", "recompute the worked examples with brute-force references");

  auto* orc = dev->add_subcommand("oracle", "brute-force answers for one net");
  orc->add_option("--net", a.net)->required()->check(CLI::ExistingFile);
  orc->add_option("--init", a.init)->required();
  orc->add_option("--target", a.target, "decide repeated coverability by lasso search instead");
  orc->add_option("--box", a.box, "box edge for the cover");
  orc->add_option("--cap", a.cap, "truncation cap for forward search");
}

int run_devtool(const CLI::App* dev, const DevtoolArgs& a, std::ostream& out) {
  devkit::Rng rng(a.seed);
  if (dev->got_subcommand("random-net")) {
    const devkit::NetShape shape{a.dimension, a.transitions, a.max_entry, a.omega};
    const auto n = a.bounded ? devkit::random_bounded_net(rng, shape) : devkit::random_net(rng, shape);
    const auto x0 = devkit::random_marking(rng, n.dimension(), a.max_entry);
    out << "# init: " << x0 << "\n" << render_net(n);
    return kPositive;
  }
  if (dev->got_subcommand("random-nfa")) {
    devkit::NfaShape shape;
    shape.max_states = a.states;
    shape.alphabet = a.alphabet;
    out << render_automaton(devkit::random_nfa(rng, shape));
    return kPositive;
  }
  if (dev->got_subcommand("random-ltl")) {
    out << devkit::random_ltl(rng, a.size, split_atoms(a.atoms)).to_string() << "\n";
    return kPositive;
  }
  if (dev->got_subcommand("check")) {
    return print_report(devkit::run_check(a.check, a.seed, a.count, a.nets), out);
  }
  if (dev->got_subcommand("examples")) return print_report(devkit::check_examples(), out);
  return oracle(a, out);
}

}  // namespace wsts::cli
