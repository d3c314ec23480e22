#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qgb {

using Integer = boost::multiprecision::cpp_int;

/// Which generator the order uses: theta = sqrt(-k) (Whole) or
/// theta = (1 + sqrt(-k)) / 2 (Half, exactly when k = 3 mod 4).
enum class Branch { Whole, Half };

/// The ring of integers Z[theta] of Q(sqrt(-k)) for squarefree k >= 2.
///
/// Construct through make_ring(). The minimal polynomial of theta is
/// x^2 + min_c1 * x + min_c0: x^2 + k for Whole, x^2 - x + (1+k)/4 for Half.
class RingSpec {
 public:
  std::int64_t k() const { return k_; }
  Branch branch() const { return branch_; }

  // theta^2 = -min_c1 * theta - min_c0
  std::int64_t min_c0() const { return branch_ == Branch::Whole ? k_ : (1 + k_) / 4; }
  std::int64_t min_c1() const { return branch_ == Branch::Whole ? 0 : -1; }

  std::string min_poly_text() const;

  bool operator==(const RingSpec&) const = default;

 private:
  friend RingSpec make_ring(std::int64_t k);
  RingSpec(std::int64_t k, Branch branch) : k_(k), branch_(branch) {}

  std::int64_t k_;
  Branch branch_;
};

/// Throws InvalidParameter unless k >= 2 and k is squarefree.
RingSpec make_ring(std::int64_t k);

bool is_squarefree(std::int64_t k);

/// u + v*theta in the integral basis {1, theta}. The coordinates carry no
/// ring; operations that depend on theta take the RingSpec explicitly.
struct OkElement {
  Integer u;
  Integer v;

  OkElement() = default;
  OkElement(Integer u_, Integer v_) : u(std::move(u_)), v(std::move(v_)) {}

  static OkElement from_int(const Integer& n) { return {n, 0}; }
  static OkElement one() { return {1, 0}; }

  bool is_zero() const { return u == 0 && v == 0; }
  bool operator==(const OkElement&) const = default;
};

/// Lexicographic (v, u) order, the enumeration order used throughout.
bool lex_less(const OkElement& a, const OkElement& b);

OkElement add(const OkElement& a, const OkElement& b);
OkElement sub(const OkElement& a, const OkElement& b);
OkElement neg(const OkElement& a);
OkElement mul(const OkElement& a, const OkElement& b, const RingSpec& ring);
OkElement conj(const OkElement& a, const RingSpec& ring);

/// Field norm, equal to the squared complex modulus.
Integer norm(const OkElement& a, const RingSpec& ring);

/// q with q*b == a if b divides a in the ring. Throws DivisionByZero for b == 0.
std::optional<OkElement> try_div(const OkElement& a, const OkElement& b, const RingSpec& ring);

/// All elements of norm exactly n, sorted by lex_less.
std::vector<OkElement> elements_of_norm(const Integer& n, const RingSpec& ring);

/// All square roots of d in the ring, sorted by lex_less.
std::vector<OkElement> sqrt_in_ring(const OkElement& d, const RingSpec& ring);

/// All divisors of a nonzero element, sorted by lex_less. Throws InvalidInput for zero.
std::vector<OkElement> divisors(const OkElement& z, const RingSpec& ring);

/// Complex embedding, used only by the numeric Mahler layer.
struct ComplexValue {
  double re;
  double im;
};
ComplexValue to_complex(const OkElement& a, const RingSpec& ring);

enum class BoundMode { Disk, Box };

/// Coefficient constraint. Disk admits norm(e) <= y^2; Box admits |u| <= y, |v| <= y.
struct BoundSpec {
  std::int64_t y = 0;
  BoundMode mode = BoundMode::Box;
};

bool admits(const BoundSpec& bound, const OkElement& e, const RingSpec& ring);

/// Every admissible element, in lexicographic (v, u) order.
std::vector<OkElement> enumerate_bounded(const BoundSpec& bound, const RingSpec& ring);

/// |enumerate_bounded(bound, ring)| without materializing the elements.
Integer count_bounded(const BoundSpec& bound, const RingSpec& ring);

/// One row {u_lo..u_hi} x {v} of a lattice region.
struct LatticeRow {
  Integer v;
  Integer u_lo;
  Integer u_hi;
};

/// Rows of {e : norm(e) <= max_norm}, v increasing; empty rows omitted.
std::vector<LatticeRow> norm_ball_rows(const Integer& max_norm, const RingSpec& ring);

std::string_view to_string(BoundMode mode);
BoundMode parse_bound_mode(std::string_view text);

/// "(u,v)"
std::string to_string(const OkElement& e);

/// Parses "(u,v)" or a bare integer n (meaning (n,0)); whitespace allowed.
/// Throws SyntaxError.
OkElement parse_element(std::string_view text);

// Integer helpers shared by the other modules.
Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n, Integer* root = nullptr);

/// Rational-integer factorization by trial division, (prime, exponent) pairs.
std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n);

}  // namespace qgb
