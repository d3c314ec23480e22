#include "qgb/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qgb/error.hpp"
#include "qgb/parallel.hpp"

namespace qgb {

namespace {

constexpr int kMaxMahlerDegree = 64;
constexpr int kMaxAberthIterations = 1000;

ComplexPoly trimmed(const ComplexPoly& f) {
  ComplexPoly p = f;
  while (!p.empty() && p.back() == Complex(0, 0)) p.pop_back();
  return p;
}

// value and derivative by Horner
std::pair<Complex, Complex> horner(const ComplexPoly& p, Complex z) {
  Complex value = p.back();
  Complex deriv = 0;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + p[i];
  }
  return {value, deriv};
}

double backward_error(const ComplexPoly& p, Complex z) {
  const double r = std::abs(z);
  double scale = 0;
  double power = 1;
  for (const auto& c : p) {
    scale += std::abs(c) * power;
    power *= r;
  }
  if (scale == 0) return 0;
  return std::abs(horner(p, z).first) / scale;
}

}  // namespace

ComplexPoly to_complex_poly(const OkPolynomial& f) {
  ComplexPoly out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    const ComplexValue z = to_complex(c, f.ring());
    out.emplace_back(z.re, z.im);
  }
  return out;
}

std::vector<Complex> find_roots(const ComplexPoly& f, double tol) {
  ComplexPoly p = trimmed(f);
  if (p.empty()) throw InvalidInput("find_roots: zero polynomial");
  std::vector<Complex> roots;
  std::size_t zeros = 0;
  while (p[zeros] == Complex(0, 0)) ++zeros;
  roots.assign(zeros, Complex(0, 0));
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
  const std::size_t n = p.size() - 1;
  if (n == 0) return roots;

  const Complex lead = p.back();
  for (auto& c : p) c /= lead;

  // Starting points on a circle whose radius is the geometric mean of the
  // root moduli, rotated off the real axis.
  const double radius = std::pow(std::abs(p.front()), 1.0 / static_cast<double>(n));
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  for (int iter = 0; iter < kMaxAberthIterations; ++iter) {
    double largest_step = 0;
    for (std::size_t k = 0; k < n; ++k) {
      auto [value, deriv] = horner(p, z[k]);
      if (value == Complex(0, 0)) continue;
      Complex repulsion = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      Complex step;
      if (deriv == Complex(0, 0)) {
        step = Complex(1e-3 * std::max(1.0, std::abs(z[k])), 0);
      } else {
        const Complex ratio = value / deriv;
        step = ratio / (1.0 - ratio * repulsion);
      }
      z[k] -= step;
      largest_step = std::max(largest_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (largest_step < 4 * std::numeric_limits<double>::epsilon()) break;
  }

  double worst = 0;
  for (auto& root : z) {
    // Newton polish, kept only while it lowers the backward error.
    double err = backward_error(p, root);
    for (int i = 0; i < 3 && err > 0; ++i) {
      auto [value, deriv] = horner(p, root);
      if (deriv == Complex(0, 0)) break;
      const Complex next = root - value / deriv;
      const double next_err = backward_error(p, next);
      if (!(next_err < err)) break;
      root = next;
      err = next_err;
    }
    worst = std::max(worst, err);
  }
  if (!(worst <= tol)) {
    throw NumericFailure("root finder did not converge: backward error " + std::to_string(worst), worst);
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

double mahler_measure(const ComplexPoly& f, double tol) {
  const ComplexPoly p = trimmed(f);
  if (p.empty()) throw InvalidInput("mahler_measure: zero polynomial");
  if (static_cast<int>(p.size()) - 1 > kMaxMahlerDegree) {
    throw InvalidInput("mahler_measure: degree above " + std::to_string(kMaxMahlerDegree));
  }
  double measure = std::abs(p.back());
  for (const auto& root : find_roots(p, tol)) measure *= std::max(1.0, std::abs(root));
  return measure;
}

double mahler_measure(const OkPolynomial& f, double tol) { return mahler_measure(to_complex_poly(f), tol); }

double mahler_measure_quadrature(const ComplexPoly& f, std::size_t points) {
  const ComplexPoly p = trimmed(f);
  if (p.empty()) throw InvalidInput("mahler_measure_quadrature: zero polynomial");
  if (points == 0) throw InvalidInput("mahler_measure_quadrature: no sample points");
  const double step = 2 * std::numbers::pi / static_cast<double>(points);
  // Kahan summation keeps the mean accurate over a million samples.
  double sum = 0;
  double carry = 0;
  for (std::size_t j = 0; j < points; ++j) {
    const Complex z = std::polar(1.0, step * (static_cast<double>(j) + 1.0 / 6.0));
    const double term = std::log(std::abs(horner(p, z).first)) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return std::exp(sum / static_cast<double>(points));
}

namespace {

double relative_slack(double lhs, double rhs) {
  const double scale = std::abs(rhs) > 0 ? std::abs(rhs) : 1.0;
  return (rhs - lhs) / scale;
}

bool passes(double slack) { return slack >= -kRelativeSlack; }

double exact_relative_slack(const Integer& lhs, const Integer& rhs) {
  if (rhs == 0) return lhs == 0 ? 0.0 : -1.0;
  return static_cast<double>(rhs - lhs) / static_cast<double>(rhs);
}

}  // namespace

InequalityResult check_height_bounds(const OkPolynomial& f, double rhs_scale) {
  if (f.degree() < 1) throw InvalidInput("check_height_bounds: degree must be >= 1");
  const int d = f.degree();
  const double m = mahler_measure(f);
  const double h = std::sqrt(height_sq(f).convert_to<double>());
  InequalityResult out;
  out.lower_slack = relative_slack(m / std::sqrt(d + 1.0), rhs_scale * h);
  out.upper_slack = relative_slack(h, rhs_scale * std::ldexp(m, d - 1));
  out.pass = passes(out.lower_slack) && passes(out.upper_slack);
  return out;
}

InequalityResult check_landau(const OkPolynomial& f, double rhs_scale) {
  if (f.is_zero()) throw InvalidInput("check_landau: zero polynomial");
  const double m = mahler_measure(f);
  const double l2 = std::sqrt(l2_norm_sq(f).convert_to<double>());
  InequalityResult out;
  out.lower_slack = relative_slack(1.0, rhs_scale * m);
  out.upper_slack = relative_slack(m, rhs_scale * l2);
  out.pass = passes(out.lower_slack) && passes(out.upper_slack);
  return out;
}

InequalityResult check_product_height(const OkPolynomial& a, const OkPolynomial& b) {
  if (a.degree() < 1 || b.degree() < 1) {
    throw InvalidInput("check_product_height: both factors need degree >= 1");
  }
  const OkPolynomial ab = poly_mul(a, b);
  const int d = ab.degree();
  const int d1 = std::min(a.degree(), b.degree());
  const Integer h_ab = height_sq(ab);
  const Integer h_a_h_b = height_sq(a) * height_sq(b);

  const Integer upper_rhs = Integer((1 + d1) * (1 + d1)) * h_a_h_b;
  // (2^(d-2))^2 (d+1) H(ab)^2
  const Integer lower_rhs = (Integer(1) << (2 * (d - 2))) * (d + 1) * h_ab;

  InequalityResult out;
  out.upper_slack = exact_relative_slack(h_ab, upper_rhs);
  out.lower_slack = exact_relative_slack(h_a_h_b, lower_rhs);
  out.pass = h_ab <= upper_rhs && h_a_h_b <= lower_rhs;
  return out;
}

MahlerReport mahler_report(const OkPolynomial& f) {
  MahlerReport r;
  r.measure = mahler_measure(f);
  r.height = std::sqrt(height_sq(f).convert_to<double>());
  r.l2 = std::sqrt(l2_norm_sq(f).convert_to<double>());
  r.degree = f.degree();
  r.height_bounds = check_height_bounds(f);
  r.landau = check_landau(f);
  return r;
}

OkElement random_element(std::mt19937_64& rng, const RingSpec& ring, std::int64_t max_norm) {
  if (max_norm < 1) throw InvalidInput("random_element: max_norm must be >= 1");
  // Coordinates of an element of norm <= N are bounded by 2 sqrt(N).
  const auto span = 2 * static_cast<std::int64_t>(std::sqrt(static_cast<double>(max_norm))) + 2;
  std::uniform_int_distribution<std::int64_t> coord(-span, span);
  while (true) {
    OkElement e{coord(rng), coord(rng)};
    const Integer n = norm(e, ring);
    if (n >= 1 && n <= max_norm) return e;
  }
}

OkPolynomial random_polynomial(std::mt19937_64& rng, const RingSpec& ring, int degree,
                               std::int64_t max_norm, bool monic) {
  if (degree < 0) throw InvalidInput("random_polynomial: negative degree");
  std::vector<OkElement> c(degree + 1);
  std::bernoulli_distribution zero(0.1);
  for (int i = 0; i < degree; ++i) c[i] = zero(rng) ? OkElement{} : random_element(rng, ring, max_norm);
  c[degree] = monic ? OkElement::one() : random_element(rng, ring, max_norm);
  return OkPolynomial(ring, std::move(c));
}

namespace {

struct SuiteTally {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::optional<std::string> counterexample;

  void record(double slack, bool pass, const std::string& input) {
    ++trials;
    worst_slack = std::min(worst_slack, slack);
    if (pass) return;
    ++failures;
    if (!counterexample || input < *counterexample) counterexample = input;
  }

  void merge(const SuiteTally& other) {
    trials += other.trials;
    failures += other.failures;
    worst_slack = std::min(worst_slack, other.worst_slack);
    if (other.counterexample && (!counterexample || *other.counterexample < *counterexample)) {
      counterexample = other.counterexample;
    }
  }
};

constexpr const char* kSuiteNames[] = {"mahler1_height_bounds", "landau", "jensen_product_upper",
                                       "mahler2_product_lower", "multiplicativity", "quadrature"};
constexpr std::size_t kSuiteCount = std::size(kSuiteNames);

using Tallies = std::vector<SuiteTally>;

std::string describe(const RingSpec& ring, const OkPolynomial& f) {
  return "k=" + std::to_string(ring.k()) + " f=" + to_string(f);
}

std::string describe(const RingSpec& ring, const OkPolynomial& a, const OkPolynomial& b) {
  return "k=" + std::to_string(ring.k()) + " a=" + to_string(a) + " b=" + to_string(b);
}

void run_trial(const SuiteConfig& config, std::uint64_t trial, Tallies& tally) {
  const RingSpec ring = make_ring(config.ks[trial % config.ks.size()]);
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> full_degree(1, config.max_degree);
  std::uniform_int_distribution<int> half_degree(1, std::max(1, config.max_degree / 2));

  const OkPolynomial f = random_polynomial(rng, ring, full_degree(rng), config.max_norm, false);
  const OkPolynomial a = random_polynomial(rng, ring, half_degree(rng), config.max_norm, false);
  const OkPolynomial b = random_polynomial(rng, ring, half_degree(rng), config.max_norm, false);
  const std::string f_text = describe(ring, f);
  const std::string ab_text = describe(ring, a, b);
  const double scale = config.rhs_scale;

  auto hb = check_height_bounds(f, scale);
  tally[0].record(std::min(hb.lower_slack, hb.upper_slack), hb.pass, f_text);
  auto lan = check_landau(f, scale);
  tally[1].record(std::min(lan.lower_slack, lan.upper_slack), lan.pass, f_text);

  // Exact checks: the sign of each slack is the sign of an integer difference.
  auto prod = check_product_height(a, b);
  tally[2].record(prod.upper_slack, prod.upper_slack >= 0, ab_text);
  tally[3].record(prod.lower_slack, prod.lower_slack >= 0, ab_text);

  const double ma = mahler_measure(a);
  const double mb = mahler_measure(b);
  const double mab = mahler_measure(poly_mul(a, b));
  const double mult_err = std::abs(mab - ma * mb) / (ma * mb);
  tally[4].record(-mult_err, mult_err <= kRelativeSlack * scale, ab_text);

  if (trial < config.quadrature_samples) {
    const ComplexPoly cf = to_complex_poly(f);
    const double by_roots = mahler_measure(cf);
    const double by_quadrature = mahler_measure_quadrature(cf);
    const double err = std::abs(by_roots - by_quadrature) / by_roots;
    tally[5].record(-err, err <= kRelativeSlack * scale, f_text);
  }
}

}  // namespace

std::vector<SuiteResult> run_mahler_suites(const SuiteConfig& config) {
  if (config.trials < 1) throw InvalidInput("mahler suites need at least one trial");
  if (config.ks.empty()) throw InvalidInput("mahler suites need at least one k");
  if (config.max_degree < 2) throw InvalidInput("mahler suites need max_degree >= 2");
  for (auto k : config.ks) make_ring(k);

  auto body = [&](std::size_t, std::size_t first, std::size_t stride) {
    Tallies tally(kSuiteCount);
    for (std::uint64_t t = first; t < config.trials; t += stride) run_trial(config, t, tally);
    return tally;
  };
  auto combine = [](Tallies acc, Tallies part) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i].merge(part[i]);
    return acc;
  };
  const Tallies total = strided_reduce<Tallies>(config.trials, config.jobs, Tallies(kSuiteCount), body, combine);

  std::vector<SuiteResult> out;
  for (std::size_t i = 0; i < kSuiteCount; ++i) {
    SuiteResult r;
    r.inequality = kSuiteNames[i];
    r.trials = total[i].trials;
    r.failures = total[i].failures;
    r.worst_slack = total[i].trials ? total[i].worst_slack : 0.0;
    r.seed = config.seed;
    r.counterexample = total[i].counterexample;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qgb
