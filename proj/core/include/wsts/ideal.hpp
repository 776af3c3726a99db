#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsts/omega.hpp"

namespace wsts {

/// A concrete state of a d-dimensional system: a vector of naturals.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::vector<std::uint64_t> components) : c_(std::move(components)) {}
  Marking(std::initializer_list<std::uint64_t> components) : c_(components) {}

  std::size_t dimension() const noexcept { return c_.size(); }
  std::uint64_t operator[](std::size_t i) const { return c_[i]; }
  std::uint64_t& operator[](std::size_t i) { return c_[i]; }
  const std::vector<std::uint64_t>& components() const noexcept { return c_; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }

  bool operator==(const Marking&) const = default;
  auto operator<=>(const Marking&) const = default;

  /// Componentwise order.
  bool leq(const Marking& other) const;

  /// Parses "(1,2,3)" or "1,2,3". Rejects ω.
  static Marking parse(std::string_view text);
  std::string to_string() const;

 private:
  std::vector<std::uint64_t> c_;
};

/// An ideal of ℕ^d, held as its ω-representation: ↓v = { x : x ≤ v }.
/// Componentwise order on vectors coincides with inclusion of ideals.
class IdealVec {
 public:
  IdealVec() = default;
  explicit IdealVec(std::vector<OmegaNat> components);
  IdealVec(std::initializer_list<OmegaNat> components);
  /// The ideal ↓x of a concrete state.
  static IdealVec down(const Marking& x);

  std::size_t dimension() const noexcept { return c_.size(); }
  const OmegaNat& operator[](std::size_t i) const { return c_[i]; }
  OmegaNat& operator[](std::size_t i) { return c_[i]; }
  const std::vector<OmegaNat>& components() const noexcept { return c_; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }

  bool operator==(const IdealVec&) const = default;

  /// Lexicographic order, for canonical sorting only. Not the ideal order.
  bool lex_less(const IdealVec& other) const;

  /// Parses the rendering "(w,8,3,w)". Accepts 'w' or 'ω' for ω, tolerates spaces,
  /// and allows omitting the parentheses.
  static IdealVec parse(std::string_view text);
  std::string to_string() const;

 private:
  std::vector<OmegaNat> c_;
};

std::ostream& operator<<(std::ostream& os, const IdealVec& v);
std::ostream& operator<<(std::ostream& os, const Marking& x);

/// u ≤ v componentwise, i.e. ↓u ⊆ ↓v. Throws DimensionMismatch.
bool vec_leq(const IdealVec& u, const IdealVec& v);

/// u ⊂ v: inclusion and u ≠ v.
bool vec_lt(const IdealVec& u, const IdealVec& v);

/// x ∈ ↓v.
bool contains(const IdealVec& v, const Marking& x);

/// Number of ω components; v lies on every level n ≤ level(v).
std::size_t level(const IdealVec& v);

/// The ω-lift of a strictly growing pair: keeps coordinates where grown equals base and
/// puts ω where grown is strictly larger. Requires base ⊂ grown.
IdealVec lub_accelerate(const IdealVec& base, const IdealVec& grown);

/// A finite antichain of ideals of equal dimension, kept in a canonical (lexicographic) order.
class IdealDecomposition {
 public:
  IdealDecomposition() = default;

  const std::vector<IdealVec>& ideals() const noexcept { return ideals_; }
  std::size_t size() const noexcept { return ideals_.size(); }
  bool empty() const noexcept { return ideals_.empty(); }
  auto begin() const noexcept { return ideals_.begin(); }
  auto end() const noexcept { return ideals_.end(); }

  /// Membership of a concrete state in the union of the ideals.
  bool contains(const Marking& x) const;
  /// Whether some member includes v.
  bool covers(const IdealVec& v) const;

  bool operator==(const IdealDecomposition&) const = default;

  std::string to_string() const;

 private:
  friend IdealDecomposition decompose(std::span<const IdealVec> vs);
  std::vector<IdealVec> ideals_;
};

/// The ⊆-maximal elements of a nonempty collection. Pairwise pruning, quadratic.
IdealDecomposition decompose(std::span<const IdealVec> vs);

}  // namespace wsts
