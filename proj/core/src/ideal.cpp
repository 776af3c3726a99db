#include "wsts/ideal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace wsts {

namespace {

void check_dims(std::size_t expected, std::size_t actual) {
  if (expected != actual) throw DimensionMismatch(expected, actual);
}

// Splits "(a, b ,c)" into trimmed entries. Parentheses are optional but must balance.
std::vector<std::string> split_vector(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw ParseError("unbalanced parenthesis in vector", 1, text.size());
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<std::string> out;
  if (text.empty()) throw ParseError("empty vector", 1, 1);
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - start));
    if (piece.empty()) throw ParseError("empty vector entry", 1, start + 1);
    out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_natural(const std::string& s, std::size_t column) {
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected a natural number, got '" + s + "'", 1, column);
  }
  return n;
}

bool is_omega_token(const std::string& s) { return s == "w" || s == "ω" || s == "omega"; }

}  // namespace

bool Marking::leq(const Marking& other) const {
  check_dims(dimension(), other.dimension());
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] > other.c_[i]) return false;
  return true;
}

Marking Marking::parse(std::string_view text) {
  auto entries = split_vector(text);
  std::vector<std::uint64_t> c;
  c.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (is_omega_token(entries[i])) throw ParseError("markings must be finite", 1, i + 1);
    c.push_back(parse_natural(entries[i], i + 1));
  }
  return Marking(std::move(c));
}

std::string Marking::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c_[i]);
  }
  return out + ")";
}

IdealVec::IdealVec(std::vector<OmegaNat> components) : c_(std::move(components)) {}
IdealVec::IdealVec(std::initializer_list<OmegaNat> components) : c_(components) {}

IdealVec IdealVec::down(const Marking& x) {
  std::vector<OmegaNat> c(x.begin(), x.end());
  return IdealVec(std::move(c));
}

bool IdealVec::lex_less(const IdealVec& other) const {
  return std::lexicographical_compare(c_.begin(), c_.end(), other.c_.begin(), other.c_.end());
}

IdealVec IdealVec::parse(std::string_view text) {
  auto entries = split_vector(text);
  std::vector<OmegaNat> c;
  c.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    c.push_back(is_omega_token(entries[i]) ? kOmega : OmegaNat(parse_natural(entries[i], i + 1)));
  }
  return IdealVec(std::move(c));
}

std::string IdealVec::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += c_[i].to_string();
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const IdealVec& v) { return os << v.to_string(); }
std::ostream& operator<<(std::ostream& os, const Marking& x) { return os << x.to_string(); }

bool vec_leq(const IdealVec& u, const IdealVec& v) {
  check_dims(u.dimension(), v.dimension());
  for (std::size_t i = 0; i < u.dimension(); ++i)
    if (!(u[i] <= v[i])) return false;
  return true;
}

bool vec_lt(const IdealVec& u, const IdealVec& v) { return vec_leq(u, v) && u != v; }

bool contains(const IdealVec& v, const Marking& x) {
  check_dims(v.dimension(), x.dimension());
  for (std::size_t i = 0; i < v.dimension(); ++i)
    if (!(OmegaNat(x[i]) <= v[i])) return false;
  return true;
}

std::size_t level(const IdealVec& v) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](const OmegaNat& n) { return n.is_omega(); }));
}

IdealVec lub_accelerate(const IdealVec& base, const IdealVec& grown) {
  if (!vec_lt(base, grown)) {
    throw PreconditionError("lub_accelerate requires " + base.to_string() + " strictly below " +
                            grown.to_string());
  }
  std::vector<OmegaNat> c(base.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = grown[i] == base[i] ? base[i] : kOmega;
  return IdealVec(std::move(c));
}

bool IdealDecomposition::contains(const Marking& x) const {
  return std::any_of(ideals_.begin(), ideals_.end(),
                     [&](const IdealVec& v) { return wsts::contains(v, x); });
}

bool IdealDecomposition::covers(const IdealVec& u) const {
  return std::any_of(ideals_.begin(), ideals_.end(),
                     [&](const IdealVec& v) { return vec_leq(u, v); });
}

std::string IdealDecomposition::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < ideals_.size(); ++i) os << (i ? "," : "") << ideals_[i];
  os << '}';
  return os.str();
}

IdealDecomposition decompose(std::span<const IdealVec> vs) {
  if (vs.empty()) throw PreconditionError("decompose of an empty collection");
  const std::size_t d = vs.front().dimension();
  for (const auto& v : vs) check_dims(d, v.dimension());

  IdealDecomposition out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < vs.size() && !dominated; ++j) {
      if (i == j) continue;
      // Strictly dominated, or an equal copy that appears earlier.
      dominated = vec_lt(vs[i], vs[j]) || (j < i && vs[i] == vs[j]);
    }
    if (!dominated) out.ideals_.push_back(vs[i]);
  }
  std::sort(out.ideals_.begin(), out.ideals_.end(),
            [](const IdealVec& a, const IdealVec& b) { return a.lex_less(b); });
  return out;
}

}  // namespace wsts
