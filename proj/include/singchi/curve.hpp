#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "singchi/exactalg.hpp"

namespace singchi {

/// One polynomial parameterization t -> (x(t), y(t)) of an irreducible germ.
struct Branch {
  UniPoly x;
  UniPoly y;

  /// x(t) = t^n exactly, n >= 1.
  bool puiseux_form() const;
  /// The n of x = t^n when in Puiseux form.
  std::optional<unsigned> puiseux_degree() const;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// A reduced plane curve germ with branches in input order. Only
/// constructible through validate() / parse_curve(), so every Curve value
/// has passed validation.
class Curve {
 public:
  const std::string& name() const { return name_; }
  const std::vector<Branch>& branches() const { return branches_; }
  const Branch& branch(std::size_t i) const { return branches_.at(i); }
  std::size_t r() const { return branches_.size(); }
  /// Branch i is not in Puiseux form, so only the gcd-of-exponents condition
  /// was checked for primitivity and duplicates are detected only when the
  /// parameterizations are identical.
  bool weakly_validated(std::size_t i) const { return weak_.at(i); }
  bool weakly_validated() const;

  /// Canonical curve-file text; parse_curve(to_string()) reproduces *this.
  std::string to_string() const;

  friend bool operator==(const Curve&, const Curve&) = default;
  friend Curve validate(std::string name, std::vector<Branch> branches);

 private:
  Curve() = default;
  std::string name_;
  std::vector<Branch> branches_;
  std::vector<bool> weak_;
};

/// Checks, per branch: nonzero, zero constant terms, primitivity; and
/// pairwise distinctness of the germs. Throws ValidationError.
Curve validate(std::string name, std::vector<Branch> branches);

/// Parses the `.crv` format. Throws ParseError or ValidationError. When the
/// file has no `curve "..."` header, `default_name` is used.
Curve parse_curve(const std::string& text, const std::string& default_name = "curve");
Curve load_curve(const std::string& path);

/// A valuation value in Z>=0 or infinity. Addition absorbs infinity and
/// infinity compares greater than every finite value.
class Valuation {
 public:
  constexpr Valuation(unsigned value) : value_(value) {}  // NOLINT(implicit)
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: finite.
  unsigned value() const { return value_.value(); }

  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Valuation(*a.value_ + *b.value_);
  }
  friend constexpr bool operator==(Valuation a, Valuation b) = default;
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(*value_); }

 private:
  constexpr Valuation() = default;
  std::optional<unsigned> value_;
};

struct ValueVector {
  std::vector<Valuation> entries;

  /// Sum of entries; infinite as soon as one entry is.
  Valuation norm() const;
  bool is_finite() const;
  std::string to_string() const;
  friend bool operator==(const ValueVector&, const ValueVector&) = default;
};

/// Order in t of g(x_i(t), y_i(t)); infinity when the composition vanishes.
Valuation valuation(const Curve& curve, std::size_t branch, const BiPoly& g);
ValueVector value_vector(const Curve& curve, const BiPoly& g);

}  // namespace singchi
