#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgb/quadratic_order.hpp"

namespace qgb {

/// Dense polynomial over Z[theta], constant term first. The coefficient
/// vector is kept in normal form: no trailing zeros, so the zero polynomial
/// has no coefficients and degree() == -1.
class OkPolynomial {
 public:
  explicit OkPolynomial(RingSpec ring) : ring_(ring) {}
  OkPolynomial(RingSpec ring, std::vector<OkElement> coeffs);

  /// coeff * x^power
  static OkPolynomial monomial(RingSpec ring, std::size_t power, OkElement coeff = OkElement::one());

  const RingSpec& ring() const { return ring_; }
  std::span<const OkElement> coeffs() const { return coeffs_; }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == OkElement::one(); }

  /// Coefficient of x^i; zero past the degree.
  OkElement coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : OkElement{}; }
  const OkElement& leading() const { return coeffs_.back(); }

  bool operator==(const OkPolynomial& other) const {
    return ring_ == other.ring_ && coeffs_ == other.coeffs_;
  }

 private:
  void normalize();

  RingSpec ring_;
  std::vector<OkElement> coeffs_;
};

/// Integer-coefficient polynomial, constant term first, no trailing zeros.
using IntPolynomial = std::vector<Integer>;

OkPolynomial poly_add(const OkPolynomial& a, const OkPolynomial& b);
OkPolynomial poly_sub(const OkPolynomial& a, const OkPolynomial& b);
OkPolynomial poly_mul(const OkPolynomial& a, const OkPolynomial& b);

/// f = q*a + r with deg r < deg a. Requires a monic of degree >= 1
/// (InvalidInput otherwise); the quotient never leaves the ring.
std::pair<OkPolynomial, OkPolynomial> divmod_monic(const OkPolynomial& f, const OkPolynomial& a);

OkElement evaluate(const OkPolynomial& f, const OkElement& at);

/// Sum of |f_i|^2, exact since |f_i|^2 is the norm of f_i.
Integer l2_norm_sq(const OkPolynomial& f);

/// H(f)^2 = max_i |f_i|^2.
Integer height_sq(const OkPolynomial& f);

OkPolynomial conj_poly(const OkPolynomial& f);

/// f * conj(f), which has rational-integer coefficients. A nonzero theta
/// coordinate in the product raises InternalError.
IntPolynomial norm_poly(const OkPolynomial& f);

IntPolynomial int_poly_mul(const IntPolynomial& a, const IntPolynomial& b);

/// Square of the factor-coefficient bound 2^(2d-2) * sqrt(d+1) * ||f||_2:
/// every coefficient c of a monic factor of f has norm(c) <= this value.
/// Throws InvalidInput for the zero polynomial or d < 1.
Integer lemma1_bound_sq(const OkPolynomial& f);

/// Canonical text: descending powers joined by " + ", every coefficient as
/// "(u,v)", a unit coefficient on a positive power omitted, "0" for zero.
std::string to_string(const OkPolynomial& f);

/// Parses the term grammar (see README). Throws SyntaxError carrying the
/// byte offset of the first offending character.
OkPolynomial parse_poly(std::string_view text, const RingSpec& ring);

}  // namespace qgb
