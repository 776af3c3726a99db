#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wsts/ideal.hpp"
#include "wsts/kernel.hpp"
#include "wsts/nfa.hpp"

namespace wsts {

enum class Worklist { fifo, lifo };

inline constexpr std::size_t kDefaultNodeBudget = 100000;

struct IkmOptions {
  std::size_t node_budget = kDefaultNodeBudget;
  Worklist worklist = Worklist::fifo;
};

template <class Ideal>
struct IkmNode {
  Ideal ideal;
  std::optional<std::size_t> parent;
  std::optional<Label> in_label;  // absent at the root (ε)
  std::size_t numaccel = 0;       // accelerations on the root path, this node included
  bool explored = false;
  std::optional<std::size_t> subsumed_by;     // ancestor with an equal ideal; node is a leaf
  std::optional<std::size_t> accelerated_by;  // ancestor that triggered the acceleration
  std::vector<std::size_t> children;
};

struct IkmStats {
  std::size_t nodes = 0;
  std::size_t accelerations = 0;
  std::size_t max_level = 0;
};

/// The tree built by the Ideal Karp-Miller procedure. Node ids follow creation order and
/// node 0 is the root. Immutable once returned by build_ikm_tree.
template <class Ideal>
class IkmTree {
 public:
  using Node = IkmNode<Ideal>;

  IkmTree(std::vector<std::string> alphabet, std::vector<Node> nodes, IkmStats stats)
      : alphabet_(std::move(alphabet)), nodes_(std::move(nodes)), stats_(stats) {}

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t id) const { return nodes_.at(id); }
  const Node& root() const { return nodes_.front(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  const IkmStats& stats() const noexcept { return stats_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }

  /// Arc labels on the tree path from `ancestor` down to `descendant`.
  std::vector<Label> path_word(std::size_t ancestor, std::size_t descendant) const {
    std::vector<Label> w;
    for (std::size_t n = descendant; n != ancestor; n = *nodes_.at(n).parent) {
      if (!nodes_[n].parent) throw PreconditionError("path_word: not an ancestor");
      w.push_back(*nodes_[n].in_label);
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

 private:
  std::vector<std::string> alphabet_;
  std::vector<Node> nodes_;
  IkmStats stats_;
};

/// Builds the Ideal Karp-Miller tree from I0.
///
/// Each popped node scans its ancestors from the parent upward. An ancestor with an equal
/// ideal makes the node a subsumed leaf. The first ancestor that is strictly smaller and has
/// the same numaccel triggers an acceleration along the path word between them; the scan
/// stops there and the node is expanded from the accelerated ideal. Nested accelerations
/// (ancestor with a smaller numaccel) are skipped.
///
/// Throws BudgetExceeded once more than `node_budget` nodes would exist.
template <EffectiveCompletion S>
IkmTree<typename S::Ideal> build_ikm_tree(const S& sys, const typename S::Ideal& initial,
                                          const IkmOptions& options = {}) {
  using Ideal = typename S::Ideal;
  std::vector<IkmNode<Ideal>> nodes;
  IkmStats stats;
  std::vector<std::string> alphabet;
  for (Label a = 0; a < sys.alphabet_size(); ++a) alphabet.push_back(sys.label_name(a));

  auto path_word = [&](std::size_t ancestor, std::size_t descendant) {
    std::vector<Label> w;
    for (std::size_t n = descendant; n != ancestor; n = *nodes[n].parent)
      w.push_back(*nodes[n].in_label);
    std::reverse(w.begin(), w.end());
    return w;
  };

  nodes.push_back({initial, std::nullopt, std::nullopt, 0, false, std::nullopt, std::nullopt, {}});
  std::deque<std::size_t> work{0};

  while (!work.empty()) {
    std::size_t c;
    if (options.worklist == Worklist::fifo) {
      c = work.front();
      work.pop_front();
    } else {
      c = work.back();
      work.pop_back();
    }

    bool expand = true;
    for (auto anc = nodes[c].parent; anc; anc = nodes[*anc].parent) {
      const auto& a = nodes[*anc];
      if (a.ideal == nodes[c].ideal) {
        nodes[c].subsumed_by = *anc;
        expand = false;
        break;
      }
      if (sys.leq(a.ideal, nodes[c].ideal) && a.numaccel == nodes[c].numaccel) {
        const auto w = path_word(*anc, c);
        nodes[c].ideal = accelerate(sys, nodes[c].ideal, std::span<const Label>(w));
        nodes[c].numaccel += 1;
        nodes[c].accelerated_by = *anc;
        ++stats.accelerations;
        break;
      }
    }
    stats.max_level = std::max<std::size_t>(stats.max_level, sys.level(nodes[c].ideal));
    nodes[c].explored = true;
    if (!expand) continue;

    for (Label a = 0; a < sys.alphabet_size(); ++a) {
      auto next = sys.post(nodes[c].ideal, a);
      if (!next) continue;
      if (nodes.size() >= options.node_budget) throw BudgetExceeded(options.node_budget);
      nodes.push_back({std::move(*next), c, a, nodes[c].numaccel, false, std::nullopt,
                       std::nullopt, {}});
      nodes[c].children.push_back(nodes.size() - 1);
      work.push_back(nodes.size() - 1);
    }
  }
  stats.nodes = nodes.size();
  return IkmTree<Ideal>(std::move(alphabet), std::move(nodes), stats);
}

/// The ⊆-maximal node ideals, generic over the ideal type. Order of first appearance.
template <EffectiveCompletion S>
std::vector<typename S::Ideal> maximal_ideals(const S& sys,
                                              const IkmTree<typename S::Ideal>& tree) {
  std::vector<typename S::Ideal> out;
  for (const auto& n : tree.nodes()) {
    bool dominated = false;
    for (const auto& m : out) dominated = dominated || sys.leq(n.ideal, m);
    if (dominated) continue;
    std::erase_if(out, [&](const auto& m) { return sys.leq(m, n.ideal); });
    out.push_back(n.ideal);
  }
  return out;
}

/// The clover: ideal decomposition of the cover ↓Post*(I0).
IdealDecomposition clover(const IkmTree<IdealVec>& tree);

/// Whether y is in the cover, i.e. some node ideal contains y.
bool coverable(const IkmTree<IdealVec>& tree, const Marking& y);

namespace detail {

template <class Ideal>
EpsNfa tree_automaton(const IkmTree<Ideal>& tree, bool with_accelerations) {
  EpsNfa a(tree.alphabet());
  for (std::size_t i = 0; i < tree.size(); ++i) a.add_state("n" + std::to_string(i), true);
  a.set_initial(0);
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    if (n.parent) a.add_transition(*n.parent, *n.in_label, i);
  }
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    if (n.subsumed_by) a.add_epsilon(i, *n.subsumed_by, EpsKind::subsumption);
  }
  if (with_accelerations) {
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const auto& n = tree.node(i);
      if (n.accelerated_by) a.add_epsilon(i, *n.accelerated_by, EpsKind::acceleration);
    }
  }
  return a;
}

}  // namespace detail

/// A_I: tree arcs, every state accepting, root initial, plus an ε-edge from each subsumed
/// leaf to its equal ancestor. State i is tree node i.
template <class Ideal>
EpsNfa stuttering_automaton(const IkmTree<Ideal>& tree) {
  return detail::tree_automaton(tree, false);
}

/// K_I: A_I plus an ε-edge from each accelerated node back to the ancestor that caused it.
template <class Ideal>
EpsNfa km_automaton(const IkmTree<Ideal>& tree) {
  return detail::tree_automaton(tree, true);
}

inline std::string render_ideal(const IdealVec& v) { return v.to_string(); }

/// Graphviz rendering of the tree. Nodes read "ideal / numaccel"; the ε-edges of K_I are
/// drawn too (acceleration dashed, subsumption dotted).
template <class Ideal>
std::string tree_to_dot(const IkmTree<Ideal>& tree) {
  std::ostringstream os;
  os << "digraph ikm {\n";
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    os << "  n" << i << " [label=\"" << render_ideal(n.ideal) << " / " << n.numaccel << "\""
       << (n.subsumed_by ? ", shape=box" : "") << "];\n";
  }
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto& n = tree.node(i);
    if (n.parent) {
      os << "  n" << *n.parent << " -> n" << i << " [label=\"" << tree.alphabet()[*n.in_label]
         << "\"];\n";
    }
    if (n.subsumed_by) os << "  n" << i << " -> n" << *n.subsumed_by << " [label=\"ε\", style=dotted];\n";
    if (n.accelerated_by) {
      os << "  n" << i << " -> n" << *n.accelerated_by << " [label=\"ε\", style=dashed];\n";
    }
  }
  os << "}\n";
  return os.str();
}

/// Structured exports for golden files. Nodes are listed in creation order.
std::string tree_to_json(const IkmTree<IdealVec>& tree);
std::string clover_to_json(const IdealDecomposition& clover);

}  // namespace wsts
