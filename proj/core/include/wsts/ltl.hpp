#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace wsts {

/// Action-based LTL: an atom `a` holds at step i iff the i-th action is `a`.
/// Values are immutable and share subtrees.
class LtlFormula {
 public:
  enum class Kind { tt, ff, atom, negation, conjunction, disjunction, next, until, release,
                    eventually, always };

  static LtlFormula tt();
  static LtlFormula ff();
  static LtlFormula atom(std::string name);
  static LtlFormula negation(LtlFormula f);
  static LtlFormula conjunction(LtlFormula l, LtlFormula r);
  static LtlFormula disjunction(LtlFormula l, LtlFormula r);
  static LtlFormula next(LtlFormula f);
  static LtlFormula until(LtlFormula l, LtlFormula r);
  static LtlFormula release(LtlFormula l, LtlFormula r);
  static LtlFormula eventually(LtlFormula f);
  static LtlFormula always(LtlFormula f);

  Kind kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  /// Operand of unary operators, left operand of binary ones.
  const LtlFormula& left() const { return *node_->left; }
  const LtlFormula& right() const { return *node_->right; }

  bool is_literal() const;
  /// Number of operators and atoms.
  std::size_t size() const;
  std::set<std::string> atoms() const;

  /// Fully parenthesized concrete syntax; parse_ltl(to_string()) gives back the same tree.
  std::string to_string() const;

  bool operator==(const LtlFormula& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const LtlFormula> left, right;
  };
  explicit LtlFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static LtlFormula make(Kind k, std::string name, const LtlFormula* l, const LtlFormula* r);

  std::shared_ptr<const Node> node_;
};

/// Concrete syntax. Atoms are identifiers; constants `tt`/`true` and `ff`/`false`.
/// Precedence from loosest: `|`, `&`, `U` and `R` (right associative), then the prefix
/// operators `!`, `X`, `F`, `G`. Parentheses group. Throws ParseError.
LtlFormula parse_ltl(std::string_view text);

/// Negation normal form over tt, ff, literals, &, |, X, U, R. F f becomes tt U f and G f
/// becomes ff R f.
LtlFormula to_nnf(const LtlFormula& f);

}  // namespace wsts
