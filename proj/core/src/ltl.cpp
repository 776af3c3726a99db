#include "wsts/ltl.hpp"

#include <cctype>

#include "wsts/errors.hpp"

namespace wsts {

using K = LtlFormula::Kind;

LtlFormula LtlFormula::make(Kind k, std::string name, const LtlFormula* l, const LtlFormula* r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  if (l) n->left = std::make_shared<const LtlFormula>(*l);
  if (r) n->right = std::make_shared<const LtlFormula>(*r);
  return LtlFormula(std::move(n));
}

LtlFormula LtlFormula::tt() { return make(K::tt, {}, nullptr, nullptr); }
LtlFormula LtlFormula::ff() { return make(K::ff, {}, nullptr, nullptr); }
LtlFormula LtlFormula::atom(std::string name) { return make(K::atom, std::move(name), nullptr, nullptr); }
LtlFormula LtlFormula::negation(LtlFormula f) { return make(K::negation, {}, &f, nullptr); }
LtlFormula LtlFormula::conjunction(LtlFormula l, LtlFormula r) { return make(K::conjunction, {}, &l, &r); }
LtlFormula LtlFormula::disjunction(LtlFormula l, LtlFormula r) { return make(K::disjunction, {}, &l, &r); }
LtlFormula LtlFormula::next(LtlFormula f) { return make(K::next, {}, &f, nullptr); }
LtlFormula LtlFormula::until(LtlFormula l, LtlFormula r) { return make(K::until, {}, &l, &r); }
LtlFormula LtlFormula::release(LtlFormula l, LtlFormula r) { return make(K::release, {}, &l, &r); }
LtlFormula LtlFormula::eventually(LtlFormula f) { return make(K::eventually, {}, &f, nullptr); }
LtlFormula LtlFormula::always(LtlFormula f) { return make(K::always, {}, &f, nullptr); }

bool LtlFormula::is_literal() const {
  return kind() == K::atom || (kind() == K::negation && left().kind() == K::atom);
}

std::size_t LtlFormula::size() const {
  std::size_t s = 1;
  if (node_->left) s += left().size();
  if (node_->right) s += right().size();
  return s;
}

std::set<std::string> LtlFormula::atoms() const {
  std::set<std::string> out;
  if (kind() == K::atom) out.insert(name());
  if (node_->left) out.merge(left().atoms());
  if (node_->right) out.merge(right().atoms());
  return out;
}

std::string LtlFormula::to_string() const {
  switch (kind()) {
    case K::tt: return "tt";
    case K::ff: return "ff";
    case K::atom: return name();
    case K::negation: return "!" + left().to_string();
    case K::next: return "X " + left().to_string();
    case K::eventually: return "F " + left().to_string();
    case K::always: return "G " + left().to_string();
    case K::conjunction: return "(" + left().to_string() + " & " + right().to_string() + ")";
    case K::disjunction: return "(" + left().to_string() + " | " + right().to_string() + ")";
    case K::until: return "(" + left().to_string() + " U " + right().to_string() + ")";
    case K::release: return "(" + left().to_string() + " R " + right().to_string() + ")";
  }
  return {};
}

bool LtlFormula::operator==(const LtlFormula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || name() != other.name()) return false;
  if (static_cast<bool>(node_->left) != static_cast<bool>(other.node_->left)) return false;
  if (static_cast<bool>(node_->right) != static_cast<bool>(other.node_->right)) return false;
  if (node_->left && !(left() == other.left())) return false;
  if (node_->right && !(right() == other.right())) return false;
  return true;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LtlFormula parse() {
    auto f = disjunction();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // Peeks an identifier-like word without consuming it.
  std::string peek_word() {
    skip();
    std::size_t p = pos_;
    while (p < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_' || text_[p] == '.'))
      ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  LtlFormula disjunction() {
    auto f = conjunction();
    while (accept('|')) f = LtlFormula::disjunction(f, conjunction());
    return f;
  }

  LtlFormula conjunction() {
    auto f = binary_temporal();
    while (accept('&')) f = LtlFormula::conjunction(f, binary_temporal());
    return f;
  }

  LtlFormula binary_temporal() {
    auto f = unary();
    const auto w = peek_word();
    if (w == "U" || w == "R") {
      pos_ += 1;
      auto rhs = binary_temporal();
      return w == "U" ? LtlFormula::until(f, rhs) : LtlFormula::release(f, rhs);
    }
    return f;
  }

  LtlFormula unary() {
    if (accept('!')) return LtlFormula::negation(unary());
    if (accept('(')) {
      auto f = disjunction();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    const auto w = peek_word();
    if (w.empty()) fail(pos_ < text_.size() ? "unexpected character" : "unexpected end of formula");
    pos_ += w.size();
    if (w == "X") return LtlFormula::next(unary());
    if (w == "F") return LtlFormula::eventually(unary());
    if (w == "G") return LtlFormula::always(unary());
    if (w == "tt" || w == "true") return LtlFormula::tt();
    if (w == "ff" || w == "false") return LtlFormula::ff();
    if (w == "U" || w == "R") {
      pos_ -= w.size();
      fail("binary operator without left operand");
    }
    if (std::isdigit(static_cast<unsigned char>(w[0]))) fail("atoms must start with a letter");
    return LtlFormula::atom(w);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

LtlFormula nnf(const LtlFormula& f, bool negated) {
  switch (f.kind()) {
    case K::tt: return negated ? LtlFormula::ff() : LtlFormula::tt();
    case K::ff: return negated ? LtlFormula::tt() : LtlFormula::ff();
    case K::atom: return negated ? LtlFormula::negation(f) : f;
    case K::negation: return nnf(f.left(), !negated);
    case K::conjunction:
      return negated ? LtlFormula::disjunction(nnf(f.left(), true), nnf(f.right(), true))
                     : LtlFormula::conjunction(nnf(f.left(), false), nnf(f.right(), false));
    case K::disjunction:
      return negated ? LtlFormula::conjunction(nnf(f.left(), true), nnf(f.right(), true))
                     : LtlFormula::disjunction(nnf(f.left(), false), nnf(f.right(), false));
    // Infinite words only: ¬X f ≡ X ¬f.
    case K::next: return LtlFormula::next(nnf(f.left(), negated));
    case K::until:
      return negated ? LtlFormula::release(nnf(f.left(), true), nnf(f.right(), true))
                     : LtlFormula::until(nnf(f.left(), false), nnf(f.right(), false));
    case K::release:
      return negated ? LtlFormula::until(nnf(f.left(), true), nnf(f.right(), true))
                     : LtlFormula::release(nnf(f.left(), false), nnf(f.right(), false));
    case K::eventually:
      return negated ? LtlFormula::release(LtlFormula::ff(), nnf(f.left(), true))
                     : LtlFormula::until(LtlFormula::tt(), nnf(f.left(), false));
    case K::always:
      return negated ? LtlFormula::until(LtlFormula::tt(), nnf(f.left(), true))
                     : LtlFormula::release(LtlFormula::ff(), nnf(f.left(), false));
  }
  return f;
}

}  // namespace

LtlFormula parse_ltl(std::string_view text) { return Parser(text).parse(); }

LtlFormula to_nnf(const LtlFormula& f) { return nnf(f, false); }

}  // namespace wsts
