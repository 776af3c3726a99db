#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "wsts/errors.hpp"

namespace wsts {

/// An element of ℕ ∪ {ω}. ω is its own state, never a reserved natural.
/// Arithmetic saturates at ω: ω + k = ω and ω - k = ω.
class OmegaNat {
 public:
  constexpr OmegaNat() noexcept : value_(0) {}
  constexpr OmegaNat(std::uint64_t n) noexcept : value_(n) {}  // NOLINT: implicit by intent

  static constexpr OmegaNat omega() noexcept { return OmegaNat(std::nullopt); }

  constexpr bool is_omega() const noexcept { return !value_.has_value(); }
  constexpr bool is_finite() const noexcept { return value_.has_value(); }

  std::uint64_t value() const {
    if (!value_) throw PreconditionError("value() called on omega");
    return *value_;
  }

  constexpr bool operator==(const OmegaNat&) const noexcept = default;

  constexpr std::strong_ordering operator<=>(const OmegaNat& other) const noexcept {
    if (is_omega() || other.is_omega()) {
      if (is_omega() && other.is_omega()) return std::strong_ordering::equal;
      return is_omega() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return *value_ <=> *other.value_;
  }

  friend constexpr OmegaNat operator+(OmegaNat a, OmegaNat b) noexcept {
    if (a.is_omega() || b.is_omega()) return omega();
    return OmegaNat(*a.value_ + *b.value_);
  }

  /// ω - k = ω for finite k. Subtracting ω, or going below zero, is a precondition error.
  friend OmegaNat operator-(OmegaNat a, std::uint64_t k) {
    if (a.is_omega()) return omega();
    if (*a.value_ < k) throw PreconditionError("OmegaNat subtraction below zero");
    return OmegaNat(*a.value_ - k);
  }

  std::string to_string() const { return is_omega() ? "w" : std::to_string(*value_); }

 private:
  constexpr explicit OmegaNat(std::nullopt_t) noexcept : value_(std::nullopt) {}

  std::optional<std::uint64_t> value_;
};

inline constexpr OmegaNat kOmega = OmegaNat::omega();

inline constexpr bool omega_leq(OmegaNat a, OmegaNat b) noexcept { return a <= b; }

}  // namespace wsts
