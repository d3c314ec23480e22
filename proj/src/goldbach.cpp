#include "qgb/goldbach.hpp"

#include <cmath>

#include "qgb/error.hpp"
#include "qgb/parallel.hpp"

namespace qgb {

namespace {

// Decompositions with a fixed deg h = n.
struct Split {
  int n = 0;
  // admissible[j] lists every h_j with h_j and f_j - h_j inside the bound
  std::vector<std::vector<OkElement>> admissible;
};

void check_summand_input(const OkPolynomial& f) {
  if (!f.is_monic()) throw InvalidInput("decompositions need a monic polynomial, got " + to_string(f));
  if (f.degree() < 2) throw InvalidInput("decompositions need degree >= 2, got " + std::to_string(f.degree()));
}

std::vector<Split> admissible_splits(const OkPolynomial& f, const BoundSpec& bound) {
  const RingSpec& ring = f.ring();
  const int d = f.degree();
  const auto elems = enumerate_bounded(bound, ring);
  std::vector<Split> splits;
  for (int n = 1; n <= d - 1; ++n) {
    // g_n = f_n - 1 and g_j = f_j for n < j < d are forced.
    bool forced_ok = admits(bound, sub(f.coeff(n), OkElement::one()), ring);
    for (int j = n + 1; j < d && forced_ok; ++j) forced_ok = admits(bound, f.coeff(j), ring);
    if (!forced_ok) continue;
    Split split{n, {}};
    bool empty = false;
    for (int j = 0; j < n; ++j) {
      std::vector<OkElement> choices;
      for (const auto& e : elems)
        if (admits(bound, sub(f.coeff(j), e), ring)) choices.push_back(e);
      empty = empty || choices.empty();
      split.admissible.push_back(std::move(choices));
    }
    if (!empty) splits.push_back(std::move(split));
  }
  return splits;
}

Integer split_size(const Split& s) {
  Integer total = 1;
  for (const auto& c : s.admissible) total *= c.size();
  return total;
}

// Unit of parallel work: one split and one value of its highest free coefficient.
struct Unit {
  std::size_t split;
  std::size_t outer;
};

std::vector<Unit> work_units(const std::vector<Split>& splits) {
  std::vector<Unit> units;
  for (std::size_t s = 0; s < splits.size(); ++s)
    for (std::size_t i = 0; i < splits[s].admissible.back().size(); ++i) units.push_back({s, i});
  return units;
}

// Calls visit(g_coeffs, h_coeffs) for every decomposition in the unit.
template <typename Visit>
void visit_unit(const OkPolynomial& f, const Split& split, std::size_t outer, Visit&& visit) {
  const int d = f.degree();
  const int n = split.n;
  std::vector<OkElement> g(d + 1);
  std::vector<OkElement> h(n + 1);
  g[d] = OkElement::one();
  h[n] = OkElement::one();
  for (int j = n; j < d; ++j) g[j] = f.coeff(j);
  g[n] = sub(f.coeff(n), OkElement::one());

  h[n - 1] = split.admissible[n - 1][outer];
  g[n - 1] = sub(f.coeff(n - 1), h[n - 1]);
  std::vector<std::size_t> idx(n - 1, 0);
  while (true) {
    for (int j = 0; j < n - 1; ++j) {
      h[j] = split.admissible[j][idx[j]];
      g[j] = sub(f.coeff(j), h[j]);
    }
    visit(g, h);
    int j = 0;
    while (j < n - 1 && ++idx[j] == split.admissible[j].size()) idx[j++] = 0;
    if (j == n - 1) break;
  }
}

double safe_ratio(double num, double den) { return den == 0 ? 0.0 : num / den; }

}  // namespace

std::vector<Decomposition> decompositions(const OkPolynomial& f, const BoundSpec& bound) {
  check_summand_input(f);
  const auto splits = admissible_splits(f, bound);
  std::vector<Decomposition> out;
  for (const auto& unit : work_units(splits)) {
    visit_unit(f, splits[unit.split], unit.outer,
               [&](const std::vector<OkElement>& g, const std::vector<OkElement>& h) {
                 out.push_back({OkPolynomial(f.ring(), g), OkPolynomial(f.ring(), h)});
               });
  }
  return out;
}

std::optional<Integer> total_pairs_formula(const OkPolynomial& f, const BoundSpec& bound) {
  check_summand_input(f);
  if (bound.mode != BoundMode::Box) return std::nullopt;
  const int d = f.degree();
  Integer largest = 0;
  for (int j = 0; j < d; ++j) {
    largest = std::max(largest, Integer(abs(f.coeff(j).u)));
    largest = std::max(largest, Integer(abs(f.coeff(j).v)));
  }
  const Integer y = bound.y;
  if (y < 1 + largest) return std::nullopt;
  const Integer width = 2 * y + 1;
  Integer total = 0;
  Integer product = 1;
  for (int s = 0; s <= d - 2; ++s) {
    product *= (width - abs(f.coeff(s).u)) * (width - abs(f.coeff(s).v));
    total += product;
  }
  return total;
}

PairTotals total_pairs(const OkPolynomial& f, const BoundSpec& bound) {
  check_summand_input(f);
  PairTotals out;
  const auto splits = admissible_splits(f, bound);
  for (const auto& unit : work_units(splits)) {
    visit_unit(f, splits[unit.split], unit.outer,
               [&](const std::vector<OkElement>&, const std::vector<OkElement>&) { ++out.enumerated; });
  }
  out.formula = total_pairs_formula(f, bound);
  return out;
}

SweepRecord count_representations(const OkPolynomial& f, const BoundSpec& bound, const CountingOptions& options) {
  check_summand_input(f);
  const RingSpec& ring = f.ring();
  const auto splits = admissible_splits(f, bound);
  Integer expected = 0;
  for (const auto& s : splits) expected += split_size(s);
  if (expected > options.budget) {
    throw CapacityError("representation count would visit " + expected.str() + " pairs, budget " +
                        std::to_string(options.budget));
  }
  const auto units = work_units(splits);

  struct Partial {
    std::uint64_t total = 0;
    std::uint64_t irreducible_pairs = 0;
  };
  auto body = [&](std::size_t, std::size_t first, std::size_t stride) {
    Partial p;
    for (std::size_t i = first; i < units.size(); i += stride) {
      visit_unit(f, splits[units[i].split], units[i].outer,
                 [&](const std::vector<OkElement>& g, const std::vector<OkElement>& h) {
                   ++p.total;
                   if (is_irreducible(OkPolynomial(ring, h), options.engine).reducible()) return;
                   if (is_irreducible(OkPolynomial(ring, g), options.engine).reducible()) return;
                   ++p.irreducible_pairs;
                 });
    }
    return p;
  };
  auto combine = [](Partial a, Partial b) {
    return Partial{a.total + b.total, a.irreducible_pairs + b.irreducible_pairs};
  };
  const Partial sum = strided_reduce<Partial>(units.size(), options.jobs, Partial{}, body, combine);

  SweepRecord r;
  r.k = ring.k();
  r.mode = bound.mode;
  r.d = f.degree();
  r.f_text = to_string(f);
  r.y = bound.y;
  r.T_enum = sum.total;
  r.T_formula = total_pairs_formula(f, bound);
  r.R = sum.irreducible_pairs;
  r.pairs_reducible = sum.total - sum.irreducible_pairs;
  const double exponent = 2.0 * r.d - 2.0;
  const double y = static_cast<double>(bound.y);
  r.ratio_R_T = safe_ratio(static_cast<double>(r.R), static_cast<double>(r.T_enum));
  r.ratio_R_2y = safe_ratio(static_cast<double>(r.R), std::pow(2 * y, exponent));
  r.ratio_R_4y = safe_ratio(static_cast<double>(r.R), std::pow(4 * y, exponent));
  return r;
}

std::vector<SweepRecord> sweep(const OkPolynomial& f, BoundMode mode, std::span<const std::int64_t> ys,
                               const CountingOptions& options, const std::function<void(const SweepRecord&)>& sink) {
  if (ys.empty()) throw InvalidInput("sweep needs at least one y");
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i] < 0) throw InvalidInput("sweep: y must be nonnegative");
    if (i > 0 && ys[i] <= ys[i - 1]) throw InvalidInput("sweep: y values must be strictly increasing");
  }
  std::vector<SweepRecord> out;
  for (auto y : ys) {
    out.push_back(count_representations(f, BoundSpec{y, mode}, options));
    if (sink) sink(out.back());
  }
  return out;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> value) {
  if (x.size() != value.size()) throw InvalidInput("fit_power_law: mismatched lengths");
  std::vector<double> lx;
  std::vector<double> lv;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0 && value[i] > 0) {
      lx.push_back(std::log(x[i]));
      lv.push_back(std::log(value[i]));
    }
  }
  if (lx.size() < 3) throw InvalidInput("fit_power_law: insufficient data (need >= 3 positive points)");
  const double n = static_cast<double>(lx.size());
  double mx = 0;
  double mv = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    mv += lv[i];
  }
  mx /= n;
  mv /= n;
  double sxx = 0;
  double sxv = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxv += (lx[i] - mx) * (lv[i] - mv);
  }
  if (sxx == 0) throw InvalidInput("fit_power_law: x values must not all coincide");
  PowerLawFit fit;
  fit.slope = sxv / sxx;
  const double intercept = mv - fit.slope * mx;
  fit.constant = std::exp(intercept);
  fit.log2_constant = intercept / std::log(2.0);
  fit.points = lx.size();
  return fit;
}

AsymptoticFit asymptotic_fit(std::span<const SweepRecord> records) {
  std::vector<double> ys;
  std::vector<double> rs;
  for (const auto& r : records) {
    if (r.R == 0) continue;
    ys.push_back(static_cast<double>(r.y));
    rs.push_back(static_cast<double>(r.R));
  }
  AsymptoticFit out;
  out.fit = fit_power_law(ys, rs);
  const SweepRecord* last = nullptr;
  for (const auto& r : records)
    if (!last || r.y > last->y) last = &r;
  out.ratio_R_2y = last->ratio_R_2y;
  out.ratio_R_4y = last->ratio_R_4y;
  return out;
}

}  // namespace qgb
