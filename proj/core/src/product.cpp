#include "wsts/product.hpp"

#include <algorithm>
#include <set>

namespace wsts {

std::string render_ideal(const ProductIdeal& v) {
  return "(" + std::to_string(v.control) + ", " + (v.vec ? v.vec->to_string() : "⊥") + ")";
}

ProductTarget bottom_extend_target(const BuchiAutomaton& b, State q_f) {
  if (q_f >= b.num_states()) throw PreconditionError("unknown Büchi state " + std::to_string(q_f));
  return {q_f};
}

ProductSystem::ProductSystem(const BuchiAutomaton& b, const NetModel& net) : b_(&b), net_(&net) {
  const auto names = net.alphabet();
  if (std::set<std::string>(names.begin(), names.end()) !=
      std::set<std::string>(b.alphabet.begin(), b.alphabet.end()))
    throw AlphabetMismatch("Büchi automaton and net have different alphabets");
  for (const auto& a : names) {
    auto it = std::find(b.alphabet.begin(), b.alphabet.end(), a);
    symbol_of_label_.push_back(static_cast<std::size_t>(it - b.alphabet.begin()));
  }
  const std::size_t q = b.num_states(), s = b.alphabet.size();
  delta_.assign(q * s * q, false);
  for (const auto& e : b.edges) delta_[(e.from * s + e.symbol) * q + e.to] = true;
}

std::string ProductSystem::label_name(Label l) const {
  return net_->label_name(net_label(l)) + "@" + b_->names.at(target_state(l));
}

std::optional<ProductIdeal> ProductSystem::post(const ProductIdeal& v, Label l) const {
  if (!v.vec) return std::nullopt;
  const std::size_t q = b_->num_states(), s = b_->alphabet.size();
  const Label a = net_label(l);
  const State r = target_state(l);
  if (!delta_[(v.control * s + symbol_of_label_[a]) * q + r]) return std::nullopt;
  auto next = post_ideal(*net_, *v.vec, a);
  if (!next) return std::nullopt;
  return ProductIdeal{r, std::move(*next)};
}

bool ProductSystem::leq(const ProductIdeal& u, const ProductIdeal& v) const {
  if (u.control != v.control) return false;
  if (!u.vec) return true;
  return v.vec && vec_leq(*u.vec, *v.vec);
}

std::size_t ProductSystem::level(const ProductIdeal& v) const {
  return v.vec ? wsts::level(*v.vec) : 0;
}

ProductIdeal ProductSystem::lift(const ProductIdeal& base, const ProductIdeal& grown) const {
  if (base.control != grown.control || !base.vec || !grown.vec)
    throw PreconditionError("lift needs two comparable vector ideals");
  return {base.control, lub_accelerate(*base.vec, *grown.vec)};
}

ProductIdeal ProductSystem::initial(const Marking& x0) const {
  if (x0.dimension() != net_->dimension()) throw DimensionMismatch(net_->dimension(), x0.dimension());
  return {b_->initial, IdealVec::down(x0)};
}

ProductSystem build_product(const BuchiAutomaton& b, const NetModel& net) {
  return ProductSystem(b, net);
}

LtlVerdict model_check_buchi(const NetModel& net, const Marking& x0, const BuchiAutomaton& b,
                             const IkmOptions& ikm, const PositivityOptions& options) {
  const ProductSystem sys(b, net);
  const auto tree = build_ikm_tree(sys, sys.initial(x0), ikm);
  const auto rc = repeated_coverability(
      sys, tree, [&](const ProductIdeal& v) { return b.accepting[v.control] != 0; },
      [&](std::size_t c, std::size_t d) {
        return tree.node(c).ideal.control == tree.node(d).ideal.control;
      },
      net.dimension(), options);

  LtlVerdict verdict;
  verdict.tree_nodes = tree.size();
  if (!rc.holds) return verdict;
  verdict.holds = false;
  verdict.accepting_state = b.names[tree.node(*rc.node).ideal.control];
  for (auto l : tree.path_word(0, *rc.node)) verdict.prefix.push_back(net.label_name(sys.net_label(l)));
  for (const auto& name : rc.witness->word) verdict.loop.push_back(name.substr(0, name.find('@')));
  verdict.witness = rc.witness;
  return verdict;
}

LtlVerdict model_check_ltl(const NetModel& net, const Marking& x0, const LtlFormula& phi,
                           const IkmOptions& ikm, const PositivityOptions& options) {
  const auto b = ltl_to_buchi(LtlFormula::negation(phi), net.alphabet());
  return model_check_buchi(net, x0, b, ikm, options);
}

}  // namespace wsts
