#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wsts/buchi.hpp"
#include "wsts/ikm.hpp"
#include "wsts/kernel.hpp"
#include "wsts/liveness.hpp"
#include "wsts/ltl.hpp"

namespace wsts {

/// An ideal {q} × I of Q × (ℕ^d ∪ {⊥}). An absent vector stands for the ideal {⊥}.
struct ProductIdeal {
  State control = 0;
  std::optional<IdealVec> vec;

  static ProductIdeal bottom(State q) { return {q, std::nullopt}; }
  bool operator==(const ProductIdeal&) const = default;
};

std::string render_ideal(const ProductIdeal& v);

/// The target (q_f, ⊥): contained in an ideal exactly when the control state is q_f.
struct ProductTarget {
  State control = 0;
  bool contains(const ProductIdeal& v) const noexcept { return v.control == control; }
};

/// Throws PreconditionError when q_f is not a state of b.
ProductTarget bottom_extend_target(const BuchiAutomaton& b, State q_f);

/// B × S: label (a, r) is numbered a·|Q| + r, with a the net label. Holds references to
/// both inputs, which must outlive it.
class ProductSystem {
 public:
  using Ideal = ProductIdeal;

  /// Throws AlphabetMismatch unless b and net have the same alphabet (as sets).
  ProductSystem(const BuchiAutomaton& b, const NetModel& net);

  const BuchiAutomaton& buchi() const noexcept { return *b_; }
  const NetModel& net() const noexcept { return *net_; }

  std::size_t alphabet_size() const noexcept { return net_->alphabet_size() * b_->num_states(); }
  std::string label_name(Label l) const;
  Label net_label(Label l) const noexcept { return l / b_->num_states(); }
  State target_state(Label l) const noexcept { return l % b_->num_states(); }

  std::optional<ProductIdeal> post(const ProductIdeal& v, Label l) const;
  bool leq(const ProductIdeal& u, const ProductIdeal& v) const;
  std::size_t level(const ProductIdeal& v) const;
  std::size_t max_level() const noexcept { return net_->dimension(); }
  ProductIdeal lift(const ProductIdeal& base, const ProductIdeal& grown) const;
  EffectSummary effect(Label l) const { return effect_summary(*net_, net_label(l)); }

  ProductIdeal initial(const Marking& x0) const;

 private:
  const BuchiAutomaton* b_;
  const NetModel* net_;
  std::vector<std::size_t> symbol_of_label_;  // net label -> Büchi symbol
  std::vector<bool> delta_;                   // (p, symbol, r) flattened
};

static_assert(EffectiveCompletion<ProductSystem>);

ProductSystem build_product(const BuchiAutomaton& b, const NetModel& net);

struct LtlVerdict {
  bool holds = true;
  std::optional<std::string> accepting_state;  // q_f of the violation
  Word prefix;  // net actions from x0 to the node covering (q_f, ⊥)
  Word loop;    // positive net word returning to q_f
  std::optional<PositivityWitness> witness;
  std::size_t tree_nodes = 0;
};

/// Model checks φ on the infinite traces of net from x0, by repeated coverability of some
/// (q_f, ⊥) in B_¬φ × S.
LtlVerdict model_check_ltl(const NetModel& net, const Marking& x0, const LtlFormula& phi,
                           const IkmOptions& ikm = {}, const PositivityOptions& options = {});

/// Same, with the violation automaton B given directly: the property holds when no infinite
/// trace is accepted by B.
LtlVerdict model_check_buchi(const NetModel& net, const Marking& x0, const BuchiAutomaton& b,
                             const IkmOptions& ikm = {}, const PositivityOptions& options = {});

}  // namespace wsts
