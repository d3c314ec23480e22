#include "qgb/quadratic_order.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include "qgb/error.hpp"

namespace qgb {

bool is_squarefree(std::int64_t k) {
  if (k < 1) return false;
  for (std::int64_t p = 2; p * p <= k; ++p) {
    if (k % (p * p) == 0) return false;
  }
  return true;
}

RingSpec make_ring(std::int64_t k) {
  if (k < 2) throw InvalidParameter("k must be >= 2, got " + std::to_string(k));
  if (!is_squarefree(k)) throw InvalidParameter("k must be squarefree, got " + std::to_string(k));
  // -k = 1 (mod 4)  <=>  k = 3 (mod 4)
  return RingSpec(k, k % 4 == 3 ? Branch::Half : Branch::Whole);
}

std::string RingSpec::min_poly_text() const {
  if (branch_ == Branch::Whole) return "x^2 + " + std::to_string(k_);
  return "x^2 - x + " + std::to_string((1 + k_) / 4);
}

bool lex_less(const OkElement& a, const OkElement& b) {
  if (a.v != b.v) return a.v < b.v;
  return a.u < b.u;
}

OkElement add(const OkElement& a, const OkElement& b) { return {a.u + b.u, a.v + b.v}; }
OkElement sub(const OkElement& a, const OkElement& b) { return {a.u - b.u, a.v - b.v}; }
OkElement neg(const OkElement& a) { return {-a.u, -a.v}; }

OkElement mul(const OkElement& a, const OkElement& b, const RingSpec& ring) {
  Integer bd = a.v * b.v;
  if (ring.branch() == Branch::Whole) {
    return {a.u * b.u - ring.k() * bd, a.u * b.v + a.v * b.u};
  }
  // theta^2 = theta - c
  return {a.u * b.u - ring.min_c0() * bd, a.u * b.v + a.v * b.u + bd};
}

OkElement conj(const OkElement& a, const RingSpec& ring) {
  if (ring.branch() == Branch::Whole) return {a.u, -a.v};
  // conj(theta) = 1 - theta
  return {a.u + a.v, -a.v};
}

Integer norm(const OkElement& a, const RingSpec& ring) {
  if (ring.branch() == Branch::Whole) return a.u * a.u + ring.k() * a.v * a.v;
  return a.u * a.u + a.u * a.v + ring.min_c0() * a.v * a.v;
}

std::optional<OkElement> try_div(const OkElement& a, const OkElement& b, const RingSpec& ring) {
  if (b.is_zero()) throw DivisionByZero("try_div: zero divisor");
  Integer n = norm(b, ring);
  OkElement num = mul(a, conj(b, ring), ring);
  if (num.u % n != 0 || num.v % n != 0) return std::nullopt;
  return OkElement{num.u / n, num.v / n};
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw InvalidInput("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Integer& n, Integer* root) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

std::vector<OkElement> elements_of_norm(const Integer& n, const RingSpec& ring) {
  std::vector<OkElement> out;
  if (n < 0) return out;
  if (n == 0) {
    out.emplace_back(0, 0);
    return out;
  }
  const Integer k = ring.k();
  if (ring.branch() == Branch::Whole) {
    Integer vmax = isqrt(n / k);
    for (Integer v = -vmax; v <= vmax; ++v) {
      Integer u;
      if (!is_perfect_square(n - k * v * v, &u)) continue;
      out.emplace_back(-u, v);
      if (u != 0) out.emplace_back(u, v);
    }
    return out;
  }
  // (2u + v)^2 + k v^2 = 4n
  const Integer four_n = 4 * n;
  Integer vmax = isqrt(four_n / k);
  for (Integer v = -vmax; v <= vmax; ++v) {
    Integer t;
    if (!is_perfect_square(four_n - k * v * v, &t)) continue;
    for (const Integer& s : {Integer(-t), t}) {
      Integer twice_u = s - v;
      if (twice_u % 2 != 0) continue;
      out.emplace_back(twice_u / 2, v);
      if (t == 0) break;
    }
  }
  return out;
}

std::vector<OkElement> sqrt_in_ring(const OkElement& d, const RingSpec& ring) {
  std::vector<OkElement> out;
  if (d.is_zero()) {
    out.emplace_back(0, 0);
    return out;
  }
  Integer n;
  if (!is_perfect_square(norm(d, ring), &n)) return out;
  for (auto& s : elements_of_norm(n, ring)) {
    if (mul(s, s, ring) == d) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n) {
  std::vector<std::pair<Integer, unsigned>> out;
  if (n < 0) n = -n;
  if (n < 2) return out;
  auto strip = [&](const Integer& p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  strip(2);
  for (Integer p = 3; p * p <= n; p += 2) strip(p);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace {

std::vector<Integer> integer_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factor_integer(n)) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

std::vector<OkElement> divisors(const OkElement& z, const RingSpec& ring) {
  if (z.is_zero()) throw InvalidInput("divisors: zero has no finite divisor set");
  std::vector<OkElement> out;
  for (const Integer& n : integer_divisors(norm(z, ring))) {
    for (auto& w : elements_of_norm(n, ring)) {
      if (try_div(z, w, ring)) out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

ComplexValue to_complex(const OkElement& a, const RingSpec& ring) {
  const double u = a.u.convert_to<double>();
  const double v = a.v.convert_to<double>();
  const double root_k = std::sqrt(static_cast<double>(ring.k()));
  if (ring.branch() == Branch::Whole) return {u, v * root_k};
  return {u + 0.5 * v, 0.5 * v * root_k};
}

bool admits(const BoundSpec& bound, const OkElement& e, const RingSpec& ring) {
  if (bound.mode == BoundMode::Box) {
    return abs(e.u) <= bound.y && abs(e.v) <= bound.y;
  }
  Integer y = bound.y;
  return norm(e, ring) <= y * y;
}

std::vector<LatticeRow> norm_ball_rows(const Integer& max_norm, const RingSpec& ring) {
  std::vector<LatticeRow> rows;
  if (max_norm < 0) return rows;
  const Integer k = ring.k();
  if (ring.branch() == Branch::Whole) {
    Integer vmax = isqrt(max_norm / k);
    for (Integer v = -vmax; v <= vmax; ++v) {
      Integer umax = isqrt(max_norm - k * v * v);
      rows.push_back({v, -umax, umax});
    }
    return rows;
  }
  // (2u + v)^2 + k v^2 <= 4 * max_norm
  const Integer four_n = 4 * max_norm;
  Integer vmax = isqrt(four_n / k);
  for (Integer v = -vmax; v <= vmax; ++v) {
    Integer t = isqrt(four_n - k * v * v);
    // 2u in [-t - v, t - v]
    Integer lo = -t - v;
    Integer hi = t - v;
    Integer u_lo = lo >= 0 ? Integer((lo + 1) / 2) : Integer(-((-lo) / 2));
    Integer u_hi = hi >= 0 ? Integer(hi / 2) : Integer(-((-hi + 1) / 2));
    if (u_lo <= u_hi) rows.push_back({v, u_lo, u_hi});
  }
  return rows;
}

namespace {

// Calls row(v, u_lo, u_hi) for every nonempty row of the bound, v increasing.
template <typename Row>
void for_each_row(const BoundSpec& bound, const RingSpec& ring, Row&& row) {
  if (bound.y < 0) return;
  const Integer y = bound.y;
  if (bound.mode == BoundMode::Box) {
    for (Integer v = -y; v <= y; ++v) row(v, Integer(-y), y);
    return;
  }
  for (const auto& r : norm_ball_rows(y * y, ring)) row(r.v, r.u_lo, r.u_hi);
}

}  // namespace

std::vector<OkElement> enumerate_bounded(const BoundSpec& bound, const RingSpec& ring) {
  std::vector<OkElement> out;
  for_each_row(bound, ring, [&](const Integer& v, const Integer& u_lo, const Integer& u_hi) {
    for (Integer u = u_lo; u <= u_hi; ++u) out.emplace_back(u, v);
  });
  return out;
}

Integer count_bounded(const BoundSpec& bound, const RingSpec& ring) {
  Integer total = 0;
  for_each_row(bound, ring, [&](const Integer&, const Integer& u_lo, const Integer& u_hi) {
    total += u_hi - u_lo + 1;
  });
  return total;
}

std::string_view to_string(BoundMode mode) { return mode == BoundMode::Box ? "box" : "disk"; }

BoundMode parse_bound_mode(std::string_view text) {
  if (text == "box") return BoundMode::Box;
  if (text == "disk") return BoundMode::Disk;
  throw InvalidInput("unknown bound mode '" + std::string(text) + "' (expected box or disk)");
}

std::string to_string(const OkElement& e) {
  return "(" + e.u.str() + "," + e.v.str() + ")";
}

namespace {

class ElementScanner {
 public:
  explicit ElementScanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
  }
  Integer integer() {
    skip_space();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw SyntaxError("expected integer", start);
    Integer value(std::string(text_.substr(digits, pos_ - digits)));
    return negative ? Integer(-value) : value;
  }
  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

OkElement parse_element(std::string_view text) {
  ElementScanner scan(text);
  OkElement e;
  if (scan.eat('(')) {
    e.u = scan.integer();
    scan.expect(',');
    e.v = scan.integer();
    scan.expect(')');
  } else {
    e.u = scan.integer();
  }
  if (!scan.at_end()) throw SyntaxError("trailing characters", scan.pos());
  return e;
}

}  // namespace qgb
