#include "qgb/irreducibility.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "qgb/error.hpp"
#include "qgb/parallel.hpp"

namespace qgb {

std::string_view to_string(Engine engine) { return engine == Engine::Fast ? "fast" : "oracle"; }

Engine parse_engine(std::string_view text) {
  if (text == "fast") return Engine::Fast;
  if (text == "oracle") return Engine::Oracle;
  throw InvalidInput("unknown engine '" + std::string(text) + "' (expected fast or oracle)");
}

namespace {

void check_input(const OkPolynomial& f) {
  if (!f.is_monic()) throw InvalidInput("irreducibility test needs a monic polynomial, got " + to_string(f));
  if (f.degree() < 1) throw InvalidInput("irreducibility test needs degree >= 1");
  if (f.degree() > kMaxIrreducibilityDegree) {
    throw CapacityError("degree " + std::to_string(f.degree()) + " exceeds the supported maximum " +
                        std::to_string(kMaxIrreducibilityDegree));
  }
}

OkPolynomial linear_factor(const OkElement& root, const RingSpec& ring) {
  return OkPolynomial(ring, {neg(root), OkElement::one()});
}

Verdict reducible(OkPolynomial a, OkPolynomial b) {
  if (b.degree() < a.degree() || (b.degree() == a.degree() && to_string(b) < to_string(a))) {
    std::swap(a, b);
  }
  return Verdict{Status::Reducible, std::make_pair(std::move(a), std::move(b))};
}

// Witness from a monic divisor already known to divide f exactly.
Verdict split_by(const OkPolynomial& f, const OkPolynomial& divisor) {
  auto [quot, rem] = divmod_monic(f, divisor);
  if (!rem.is_zero()) {
    throw InternalError("divisor " + to_string(divisor) + " leaves remainder " + to_string(rem));
  }
  return reducible(divisor, std::move(quot));
}

std::optional<OkElement> halve(const OkElement& e) {
  if (e.u % 2 != 0 || e.v % 2 != 0) return std::nullopt;
  return OkElement{e.u / 2, e.v / 2};
}

Verdict fast_quadratic(const OkPolynomial& f) {
  const RingSpec& ring = f.ring();
  const OkElement b = f.coeff(1);
  const OkElement c = f.coeff(0);
  const OkElement disc = sub(mul(b, b, ring), mul(OkElement::from_int(4), c, ring));
  for (const auto& s : sqrt_in_ring(disc, ring)) {
    auto root = halve(sub(s, b));
    if (!root) continue;
    OkElement other = sub(neg(b), *root);
    return reducible(linear_factor(*root, ring), linear_factor(other, ring));
  }
  return {};
}

Verdict fast_quartic_quadratic_split(const OkPolynomial& f) {
  const RingSpec& ring = f.ring();
  const OkElement a0 = f.coeff(0);
  const OkElement a2 = f.coeff(2);
  const OkElement a3 = f.coeff(3);
  const Integer bound = lemma1_bound_sq(f);
  const OkElement a3_sq = mul(a3, a3, ring);
  // f = (x^2 + p x + q)(x^2 + r x + s): q s = a0, p + r = a3, p r = a2 - q - s.
  for (const auto& q : divisors(a0, ring)) {
    if (norm(q, ring) > bound) continue;
    const OkElement s = *try_div(a0, q, ring);
    const OkElement pr = sub(sub(a2, q), s);
    const OkElement disc = sub(a3_sq, mul(OkElement::from_int(4), pr, ring));
    for (const auto& sigma : sqrt_in_ring(disc, ring)) {
      auto p = halve(add(a3, sigma));
      if (!p || norm(*p, ring) > bound) continue;
      OkPolynomial candidate(ring, {q, *p, OkElement::one()});
      auto [quot, rem] = divmod_monic(f, candidate);
      if (rem.is_zero()) return reducible(std::move(candidate), std::move(quot));
    }
  }
  return {};
}

Verdict fast_engine(const OkPolynomial& f) {
  switch (f.degree()) {
    case 1:
      return {};
    case 2:
      return fast_quadratic(f);
    default:
      break;
  }
  const auto roots = linear_roots(f);
  if (!roots.empty()) return split_by(f, linear_factor(roots.front(), f.ring()));
  if (f.degree() == 4) return fast_quartic_quadratic_split(f);
  return {};
}

// ---------------------------------------------------------------------------
// Oracle: exhaustive divisor search over the Lemma-1 norm ball.

using Wide = __int128;

template <typename T>
struct ElemT {
  T u = 0;
  T v = 0;
  bool is_zero() const { return u == 0 && v == 0; }
};

template <typename T>
struct RingT {
  T c0;
  bool half;

  ElemT<T> mul(const ElemT<T>& a, const ElemT<T>& b) const {
    const T bd = a.v * b.v;
    ElemT<T> out{a.u * b.u - c0 * bd, a.u * b.v + a.v * b.u};
    if (half) out.v += bd;
    return out;
  }
};

template <typename T>
ElemT<T> add(const ElemT<T>& a, const ElemT<T>& b) { return {a.u + b.u, a.v + b.v}; }
template <typename T>
ElemT<T> sub(const ElemT<T>& a, const ElemT<T>& b) { return {a.u - b.u, a.v - b.v}; }

using WideElem = ElemT<Wide>;
using WideRing = RingT<Wide>;

bool fits_i64(const Integer& n) {
  return n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max();
}

template <typename T = Wide>
ElemT<T> widen(const OkElement& e) {
  return {static_cast<T>(e.u.convert_to<std::int64_t>()), static_cast<T>(e.v.convert_to<std::int64_t>())};
}

// Conservative magnitude bound for every intermediate value the fixed-width
// kernels produce when candidates have modulus below `radius`.
bool kernel_is_exact(const OkPolynomial& f, const Integer& radius, const std::vector<LatticeRow>& rows) {
  for (const auto& c : f.coeffs())
    if (!fits_i64(c.u) || !fits_i64(c.v)) return false;
  for (const auto& r : rows)
    if (!fits_i64(r.v) || !fits_i64(r.u_lo) || !fits_i64(r.u_hi)) return false;
  const int d = f.degree();
  const Integer h = isqrt(height_sq(f)) + 1;
  const Integer step = (2 * radius + d + 2) * (f.ring().k() + 2);
  Integer limit = (Integer(1) << (d + 2)) * (d + 1) * h * pow(step, static_cast<unsigned>(d + 1));
  return limit < (Integer(1) << 120);
}

// Tighter bound for the root scan alone. Points reach at most X per
// coordinate (rows padded by d), so |alpha| <= X(1 + c0); Horner values stay
// below A = H (m + 1)^d and their coordinates below 2A; products and
// differences add the remaining factors.
bool root_kernel_fits_i64(const OkPolynomial& f, const std::vector<LatticeRow>& rows) {
  const int d = f.degree();
  Integer x = 0;
  for (const auto& r : rows) {
    x = std::max({x, Integer(abs(r.v)), Integer(abs(r.u_lo)), Integer(abs(r.u_hi))});
  }
  x += d + 1;
  const Integer c0 = f.ring().min_c0();
  const Integer m = x * (1 + c0);
  const Integer a = (isqrt(height_sq(f)) + 1) * pow(m + 1, static_cast<unsigned>(d));
  const Integer limit = 8 * a * x * (c0 + 1) * (Integer(1) << (d + 1));
  return limit < (Integer(1) << 62);
}

// Walks one row with the difference table held in a fixed-size array;
// returns the first u where the value vanishes.
template <typename T, int D>
std::optional<std::int64_t> scan_row(const std::vector<ElemT<T>>& start, std::int64_t lo, std::int64_t hi) {
  std::array<ElemT<T>, D + 1> t;
  for (int j = 0; j <= D; ++j) t[j] = start[j];
  for (std::int64_t u = lo; u <= hi; ++u) {
    if (t[0].is_zero()) return u;
    for (int j = 0; j < D; ++j) t[j] = add(t[j], t[j + 1]);
  }
  return std::nullopt;
}

template <typename T>
std::optional<std::int64_t> scan_row(int d, const std::vector<ElemT<T>>& start, std::int64_t lo, std::int64_t hi) {
  switch (d) {
    case 2:
      return scan_row<T, 2>(start, lo, hi);
    case 3:
      return scan_row<T, 3>(start, lo, hi);
    default:
      return scan_row<T, 4>(start, lo, hi);
  }
}

template <typename T>
std::optional<OkElement> wide_root_search(const OkPolynomial& f, const std::vector<LatticeRow>& rows) {
  const RingSpec& ring = f.ring();
  const RingT<T> wr{ring.min_c0(), ring.branch() == Branch::Half};
  const int d = f.degree();
  std::vector<ElemT<T>> coef;
  for (const auto& c : f.coeffs()) coef.push_back(widen<T>(c));
  auto eval = [&](const ElemT<T>& at) {
    ElemT<T> acc;
    for (int i = d; i >= 0; --i) acc = add(wr.mul(acc, at), coef[i]);
    return acc;
  };

  std::vector<ElemT<T>> table(d + 1);
  for (const auto& row : rows) {
    const std::int64_t v = row.v.convert_to<std::int64_t>();
    const std::int64_t lo = row.u_lo.convert_to<std::int64_t>();
    const std::int64_t hi = row.u_hi.convert_to<std::int64_t>();
    for (int j = 0; j <= d; ++j) table[j] = eval({lo + j, v});
    // forward differences of p(u) = f(u + v*theta) at u = lo
    for (int j = 1; j <= d; ++j)
      for (int i = d; i >= j; --i) table[i] = sub(table[i], table[i - 1]);
    if (auto u = scan_row<T>(d, table, lo, hi)) return OkElement{*u, v};
  }
  return std::nullopt;
}

std::optional<std::pair<OkElement, OkElement>> wide_quadratic_search(const OkPolynomial& f,
                                                                      const std::vector<LatticeRow>& rows) {
  const RingSpec& ring = f.ring();
  const WideRing wr{ring.min_c0(), ring.branch() == Branch::Half};
  std::vector<WideElem> coef;
  for (const auto& c : f.coeffs()) coef.push_back(widen(c));
  const int d = f.degree();

  std::vector<WideElem> ball;
  for (const auto& row : rows) {
    const std::int64_t v = row.v.convert_to<std::int64_t>();
    for (std::int64_t u = row.u_lo.convert_to<std::int64_t>(); u <= row.u_hi.convert_to<std::int64_t>(); ++u)
      ball.push_back({u, v});
  }
  std::vector<WideElem> rem(d + 1);
  for (const auto& p : ball) {
    for (const auto& q : ball) {
      rem = coef;
      for (int i = d; i >= 2; --i) {
        const WideElem lead = rem[i];
        rem[i - 1] = sub(rem[i - 1], wr.mul(lead, p));
        rem[i - 2] = sub(rem[i - 2], wr.mul(lead, q));
      }
      if (rem[0].is_zero() && rem[1].is_zero()) {
        return std::make_pair(OkElement{static_cast<std::int64_t>(p.u), static_cast<std::int64_t>(p.v)},
                              OkElement{static_cast<std::int64_t>(q.u), static_cast<std::int64_t>(q.v)});
      }
    }
  }
  return std::nullopt;
}

template <typename Visit>
bool for_each_in_rows(const std::vector<LatticeRow>& rows, Visit&& visit) {
  for (const auto& row : rows)
    for (Integer u = row.u_lo; u <= row.u_hi; ++u)
      if (visit(OkElement{u, row.v})) return true;
  return false;
}

Verdict oracle_engine(const OkPolynomial& f, const OracleOptions& options) {
  const int d = f.degree();
  if (d == 1) return {};
  const RingSpec& ring = f.ring();
  const Integer bound = lemma1_bound_sq(f) * std::max(1u, options.bound_multiplier);
  const auto rows = norm_ball_rows(bound, ring);
  Integer ball = 0;
  for (const auto& r : rows) ball += r.u_hi - r.u_lo + 1;
  const Integer space = d >= 4 ? ball + ball * ball : ball;
  if (space > options.budget) {
    throw CapacityError("oracle search space " + space.str() + " exceeds budget " +
                        std::to_string(options.budget) + " (coefficient norm bound " + bound.str() + ")");
  }

  const bool wide = !options.force_generic && kernel_is_exact(f, isqrt(bound) + 1, rows);

  // degree-1 divisors
  if (wide) {
    auto root = root_kernel_fits_i64(f, rows) ? wide_root_search<std::int64_t>(f, rows)
                                              : wide_root_search<Wide>(f, rows);
    if (root) return split_by(f, linear_factor(*root, ring));
  } else {
    std::optional<OkPolynomial> found;
    for_each_in_rows(rows, [&](const OkElement& alpha) {
      OkPolynomial candidate = linear_factor(alpha, ring);
      if (!divmod_monic(f, candidate).second.is_zero()) return false;
      found = std::move(candidate);
      return true;
    });
    if (found) return split_by(f, *found);
  }
  if (d < 4) return {};

  // degree-2 divisors x^2 + p x + q
  if (wide) {
    if (auto pq = wide_quadratic_search(f, rows)) {
      return split_by(f, OkPolynomial(ring, {pq->second, pq->first, OkElement::one()}));
    }
    return {};
  }
  std::optional<OkPolynomial> found;
  for_each_in_rows(rows, [&](const OkElement& p) {
    return for_each_in_rows(rows, [&](const OkElement& q) {
      OkPolynomial candidate(ring, {q, p, OkElement::one()});
      if (!divmod_monic(f, candidate).second.is_zero()) return false;
      found = std::move(candidate);
      return true;
    });
  });
  if (found) return split_by(f, *found);
  return {};
}

}  // namespace

Verdict is_irreducible(const OkPolynomial& f, Engine engine, const OracleOptions& oracle) {
  check_input(f);
  return engine == Engine::Fast ? fast_engine(f) : oracle_engine(f, oracle);
}

std::vector<OkElement> linear_roots(const OkPolynomial& f) {
  if (!f.is_monic()) throw InvalidInput("linear_roots needs a monic polynomial, got " + to_string(f));
  std::vector<OkElement> roots;
  std::size_t shift = 0;
  while (f.coeff(shift).is_zero()) ++shift;
  if (shift > 0) roots.emplace_back(0, 0);
  OkPolynomial deflated(f.ring(), std::vector<OkElement>(f.coeffs().begin() + shift, f.coeffs().end()));
  if (deflated.degree() >= 1) {
    for (auto& alpha : divisors(deflated.coeff(0), f.ring())) {
      if (evaluate(deflated, alpha).is_zero()) roots.push_back(std::move(alpha));
    }
  }
  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

Integer reducible_candidates(int d, bool free_lead, const BoundSpec& bound, const RingSpec& ring) {
  if (d < 2) throw InvalidInput("reducible counts need degree >= 2");
  return pow(count_bounded(bound, ring), static_cast<unsigned>(free_lead ? d : d - 1));
}

namespace {

std::uint64_t count_reducible(int d, const std::optional<OkElement>& lead, const BoundSpec& bound,
                              const RingSpec& ring, const CountOptions& options) {
  if (d < 2) throw InvalidInput("reducible counts need degree >= 2");
  if (lead && !admits(bound, *lead, ring)) return 0;
  const Integer candidates = reducible_candidates(d, !lead, bound, ring);
  if (candidates > options.budget) {
    throw CapacityError("reducible count would visit " + candidates.str() + " candidates, budget " +
                        std::to_string(options.budget));
  }
  const auto elems = enumerate_bounded(bound, ring);
  const int free_count = lead ? d - 1 : d;
  const int outer = free_count - 1;  // index of the highest free coefficient

  auto body = [&](std::size_t, std::size_t first, std::size_t stride) -> std::uint64_t {
    std::uint64_t count = 0;
    std::vector<OkElement> coeffs(d + 1);
    coeffs[d] = OkElement::one();
    if (lead) coeffs[d - 1] = *lead;
    std::vector<std::size_t> idx(outer, 0);  // odometer over coefficients 0..outer-1
    for (std::size_t i = first; i < elems.size(); i += stride) {
      coeffs[outer] = elems[i];
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        for (int j = 0; j < outer; ++j) coeffs[j] = elems[idx[j]];
        if (is_irreducible(OkPolynomial(ring, coeffs), options.engine).reducible()) ++count;
        int j = 0;
        while (j < outer && ++idx[j] == elems.size()) idx[j++] = 0;
        if (j == outer) break;
      }
    }
    return count;
  };
  return strided_reduce<std::uint64_t>(elems.size(), options.jobs, 0, body,
                                       [](std::uint64_t a, std::uint64_t b) { return a + b; });
}

}  // namespace

std::uint64_t count_reducible_fixed_lead(int d, const OkElement& g_lead, const BoundSpec& bound,
                                         const RingSpec& ring, const CountOptions& options) {
  return count_reducible(d, g_lead, bound, ring, options);
}

std::uint64_t count_reducible_free(int d, const BoundSpec& bound, const RingSpec& ring,
                                   const CountOptions& options) {
  return count_reducible(d, std::nullopt, bound, ring, options);
}

}  // namespace qgb
