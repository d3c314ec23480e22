#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgb/irreducibility.hpp"
#include "qgb/okpoly.hpp"

namespace qgb {

/// One summand pair f = g + h: g monic of degree d, h monic of degree
/// 1..d-1, every coefficient of both inside the bound.
struct Decomposition {
  OkPolynomial g;
  OkPolynomial h;
};

/// All decompositions of a monic f (degree >= 2), ordered by deg h, then by
/// the highest free coefficient of h in enumerate_bounded order, then
/// odometer order with h_0 fastest.
std::vector<Decomposition> decompositions(const OkPolynomial& f, const BoundSpec& bound);

struct PairTotals {
  std::uint64_t enumerated = 0;
  // Closed-form product count; present only in Box mode when
  // y >= 1 + max coordinate magnitude of f_0..f_(d-1).
  std::optional<Integer> formula;
};

PairTotals total_pairs(const OkPolynomial& f, const BoundSpec& bound);

/// The closed form sum_{S=0}^{d-2} prod_{j=0}^{S} (2y+1-|f_j,u|)(2y+1-|f_j,v|),
/// or nullopt when the mode or the precondition rules it out.
std::optional<Integer> total_pairs_formula(const OkPolynomial& f, const BoundSpec& bound);

struct SweepRecord {
  std::int64_t k = 0;
  BoundMode mode = BoundMode::Box;
  int d = 0;
  std::string f_text;
  std::int64_t y = 0;
  std::uint64_t T_enum = 0;
  std::optional<Integer> T_formula;
  std::uint64_t pairs_reducible = 0;
  std::uint64_t R = 0;
  double ratio_R_T = 0;
  double ratio_R_2y = 0;
  double ratio_R_4y = 0;

  bool operator==(const SweepRecord&) const = default;
};

struct CountingOptions {
  Engine engine = Engine::Fast;
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultCandidateBudget;
};

/// Counts R(y) (both summands irreducible), the reducible remainder and T(y).
/// Ratios are 0 when their denominator is 0.
SweepRecord count_representations(const OkPolynomial& f, const BoundSpec& bound,
                                  const CountingOptions& options = {});

/// One record per y (strictly increasing). Each finished record is handed to
/// `sink` before the next y starts, so a later failure leaves earlier rows out.
std::vector<SweepRecord> sweep(const OkPolynomial& f, BoundMode mode, std::span<const std::int64_t> ys,
                               const CountingOptions& options = {},
                               const std::function<void(const SweepRecord&)>& sink = {});

struct PowerLawFit {
  double slope = 0;
  // c in value ~ c * x^slope, and log2(c)
  double constant = 0;
  double log2_constant = 0;
  std::size_t points = 0;
};

/// Least-squares line through (log x, log value) over points with x > 0 and
/// value > 0. Throws InvalidInput with fewer than three such points.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> value);

struct AsymptoticFit {
  PowerLawFit fit;
  double ratio_R_2y = 0;  // at the largest y
  double ratio_R_4y = 0;
};

/// Fit of R against y over records with R > 0.
AsymptoticFit asymptotic_fit(std::span<const SweepRecord> records);

}  // namespace qgb
