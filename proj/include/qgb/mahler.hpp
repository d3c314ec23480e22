#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qgb/okpoly.hpp"

namespace qgb {

using Complex = std::complex<double>;
/// Complex coefficients, constant term first.
using ComplexPoly = std::vector<Complex>;

inline constexpr double kRootTolerance = 1e-10;
inline constexpr double kRelativeSlack = 1e-6;

ComplexPoly to_complex_poly(const OkPolynomial& f);

/// All roots (with multiplicity) by Aberth-Ehrlich iteration followed by
/// Newton polishing. Throws NumericFailure when the worst backward error
/// |f(z)| / sum |f_i||z|^i stays above tol.
std::vector<Complex> find_roots(const ComplexPoly& f, double tol = kRootTolerance);

/// |lead| * prod max(1, |root|). Throws InvalidInput for the zero polynomial
/// or degree above 64.
double mahler_measure(const ComplexPoly& f, double tol = kRootTolerance);
double mahler_measure(const OkPolynomial& f, double tol = kRootTolerance);

// 2^12 * 3^2 * 5 * 7. With the grid rotated by 1/6 of a step, a root at any
// root of unity whose order divides this count contributes no aliasing error.
inline constexpr std::size_t kQuadraturePoints = 1'290'240;

/// exp of the mean of log|f| over `points` equally spaced points of the unit
/// circle (trapezoidal rule). Independent cross-check of mahler_measure.
double mahler_measure_quadrature(const ComplexPoly& f, std::size_t points = kQuadraturePoints);

/// Slack of lhs <= rhs relative to rhs; the inequality passes when the slack
/// is >= -kRelativeSlack.
struct InequalityResult {
  double lower_slack = 0;
  double upper_slack = 0;
  bool pass = true;
};

/// M(f)/sqrt(d+1) <= H(f) <= 2^(d-1) M(f). Requires degree >= 1.
/// `rhs_scale` multiplies each right-hand side (1 outside tests).
InequalityResult check_height_bounds(const OkPolynomial& f, double rhs_scale = 1.0);

/// 1 <= M(f) <= ||f||_2. Requires f nonzero.
InequalityResult check_landau(const OkPolynomial& f, double rhs_scale = 1.0);

/// Upper: H(ab) <= (1 + min(deg a, deg b)) H(a) H(b).
/// Lower: H(a) H(b) <= 2^(d-2) sqrt(d+1) H(ab), d = deg(ab).
/// Decided exactly on squared heights; slacks are informational.
/// Requires deg a, deg b >= 1.
InequalityResult check_product_height(const OkPolynomial& a, const OkPolynomial& b);

struct MahlerReport {
  double measure = 0;
  double height = 0;
  double l2 = 0;
  int degree = 0;
  InequalityResult height_bounds;
  InequalityResult landau;
};

MahlerReport mahler_report(const OkPolynomial& f);

// ---------------------------------------------------------------------------
// Seeded random corpus and batch suites.

inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Uniform over {e : 1 <= norm(e) <= max_norm} by rejection from a box.
OkElement random_element(std::mt19937_64& rng, const RingSpec& ring, std::int64_t max_norm);

/// Random polynomial of exact degree `degree`, coefficients of norm <= max_norm
/// (zero allowed below the top), leading coefficient (1,0) when monic.
OkPolynomial random_polynomial(std::mt19937_64& rng, const RingSpec& ring, int degree,
                               std::int64_t max_norm, bool monic);

struct SuiteResult {
  std::string inequality;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double worst_slack = 0;
  std::uint64_t seed = 0;
  // Lexicographically smallest failing input in canonical text.
  std::optional<std::string> counterexample;
};

struct SuiteConfig {
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> ks{2, 3, 5, 7};
  int max_degree = 6;
  std::int64_t max_norm = 100;
  std::uint64_t quadrature_samples = 100;
  unsigned jobs = 1;
  // Test hook: multiplies every right-hand side; 1 means untampered.
  double rhs_scale = 1.0;
};

/// Runs the height-bound, Landau, product-height (upper and lower),
/// multiplicativity and quadrature suites over a corpus derived from the seed.
std::vector<SuiteResult> run_mahler_suites(const SuiteConfig& config);

}  // namespace qgb
