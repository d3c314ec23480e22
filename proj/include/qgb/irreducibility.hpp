#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qgb/okpoly.hpp"
#include "qgb/quadratic_order.hpp"

namespace qgb {

enum class Engine { Fast, Oracle };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

enum class Status { Irreducible, Reducible };

/// Outcome of an irreducibility test over Q(sqrt(-k)). A reducible verdict
/// carries monic factors (a, b) of degree >= 1 with a*b equal to the input,
/// ordered by degree and then by canonical text.
struct Verdict {
  Status status = Status::Irreducible;
  std::optional<std::pair<OkPolynomial, OkPolynomial>> witness;

  bool reducible() const { return status == Status::Reducible; }
};

inline constexpr std::uint64_t kDefaultCandidateBudget = 100'000'000;
inline constexpr int kMaxIrreducibilityDegree = 4;

struct OracleOptions {
  // Maximum number of candidate divisors the exhaustive search may visit.
  std::uint64_t budget = kDefaultCandidateBudget;
  // Search norm bound is bound_multiplier * lemma1_bound_sq(f).
  unsigned bound_multiplier = 1;
  // Skip the fixed-width kernel and trial-divide every candidate with
  // arbitrary-precision arithmetic.
  bool force_generic = false;
};

/// Decides irreducibility of a monic f of degree 1..4.
///
/// Fast dispatches on degree: quadratics through a discriminant square root,
/// cubics through ring roots, quartics through ring roots and then monic
/// quadratic divisors whose constant term divides f(0). Oracle searches every
/// monic divisor of degree <= d/2 whose coefficients lie inside the Lemma-1
/// norm ball and trial-divides.
///
/// Throws InvalidInput for non-monic or constant f, CapacityError for degree
/// above 4 or an Oracle search space above the budget.
Verdict is_irreducible(const OkPolynomial& f, Engine engine, const OracleOptions& oracle = {});

/// Every ring root of a monic f, sorted by lex_less.
std::vector<OkElement> linear_roots(const OkPolynomial& f);

struct CountOptions {
  Engine engine = Engine::Fast;
  std::uint64_t budget = kDefaultCandidateBudget;
  unsigned jobs = 1;
};

/// Number of reducible monic degree-d polynomials x^d + g_lead x^(d-1) + ...
/// whose remaining coefficients range over enumerate_bounded(bound).
/// Returns 0 without enumerating when g_lead itself is outside the bound.
std::uint64_t count_reducible_fixed_lead(int d, const OkElement& g_lead, const BoundSpec& bound,
                                         const RingSpec& ring, const CountOptions& options = {});

/// As count_reducible_fixed_lead, with g_(d-1) also free.
std::uint64_t count_reducible_free(int d, const BoundSpec& bound, const RingSpec& ring,
                                   const CountOptions& options = {});

/// Number of candidates each counter visits: |bound|^(d-1) or |bound|^d.
Integer reducible_candidates(int d, bool free_lead, const BoundSpec& bound, const RingSpec& ring);

}  // namespace qgb
