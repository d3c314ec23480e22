#include "qgb/okpoly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "qgb/error.hpp"

namespace qgb {

OkPolynomial::OkPolynomial(RingSpec ring, std::vector<OkElement> coeffs)
    : ring_(ring), coeffs_(std::move(coeffs)) {
  normalize();
}

OkPolynomial OkPolynomial::monomial(RingSpec ring, std::size_t power, OkElement coeff) {
  std::vector<OkElement> c(power + 1);
  c[power] = std::move(coeff);
  return OkPolynomial(ring, std::move(c));
}

void OkPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

namespace {

void require_same_ring(const OkPolynomial& a, const OkPolynomial& b) {
  if (!(a.ring() == b.ring())) throw InvalidInput("polynomials over different rings");
}

}  // namespace

OkPolynomial poly_add(const OkPolynomial& a, const OkPolynomial& b) {
  require_same_ring(a, b);
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<OkElement> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = add(a.coeff(i), b.coeff(i));
  return OkPolynomial(a.ring(), std::move(c));
}

OkPolynomial poly_sub(const OkPolynomial& a, const OkPolynomial& b) {
  require_same_ring(a, b);
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<OkElement> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = sub(a.coeff(i), b.coeff(i));
  return OkPolynomial(a.ring(), std::move(c));
}

OkPolynomial poly_mul(const OkPolynomial& a, const OkPolynomial& b) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return OkPolynomial(a.ring());
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  std::vector<OkElement> c(ac.size() + bc.size() - 1);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) {
      c[i + j] = add(c[i + j], mul(ac[i], bc[j], a.ring()));
    }
  }
  return OkPolynomial(a.ring(), std::move(c));
}

std::pair<OkPolynomial, OkPolynomial> divmod_monic(const OkPolynomial& f, const OkPolynomial& a) {
  require_same_ring(f, a);
  if (!a.is_monic() || a.degree() < 1) {
    throw InvalidInput("divmod_monic: divisor must be monic of degree >= 1, got " + to_string(a));
  }
  const RingSpec& ring = f.ring();
  const int m = a.degree();
  std::vector<OkElement> rem(f.coeffs().begin(), f.coeffs().end());
  if (static_cast<int>(rem.size()) <= m) return {OkPolynomial(ring), f};

  std::vector<OkElement> quot(rem.size() - m);
  const auto ac = a.coeffs();
  for (int i = static_cast<int>(rem.size()) - 1; i >= m; --i) {
    OkElement lead = rem[i];
    if (lead.is_zero()) continue;
    quot[i - m] = lead;
    for (int j = 0; j <= m; ++j) rem[i - m + j] = sub(rem[i - m + j], mul(lead, ac[j], ring));
  }
  rem.resize(m);
  return {OkPolynomial(ring, std::move(quot)), OkPolynomial(ring, std::move(rem))};
}

OkElement evaluate(const OkPolynomial& f, const OkElement& at) {
  OkElement acc;
  const auto c = f.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add(mul(acc, at, f.ring()), *it);
  return acc;
}

Integer l2_norm_sq(const OkPolynomial& f) {
  Integer total = 0;
  for (const auto& c : f.coeffs()) total += norm(c, f.ring());
  return total;
}

Integer height_sq(const OkPolynomial& f) {
  Integer best = 0;
  for (const auto& c : f.coeffs()) best = std::max(best, norm(c, f.ring()));
  return best;
}

OkPolynomial conj_poly(const OkPolynomial& f) {
  std::vector<OkElement> c;
  c.reserve(f.coeffs().size());
  for (const auto& e : f.coeffs()) c.push_back(conj(e, f.ring()));
  return OkPolynomial(f.ring(), std::move(c));
}

IntPolynomial norm_poly(const OkPolynomial& f) {
  const OkPolynomial product = poly_mul(f, conj_poly(f));
  IntPolynomial out;
  out.reserve(product.coeffs().size());
  for (const auto& c : product.coeffs()) {
    if (c.v != 0) throw InternalError("norm_poly: coefficient " + to_string(c) + " is not rational");
    out.push_back(c.u);
  }
  return out;
}

IntPolynomial int_poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  IntPolynomial c(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

Integer lemma1_bound_sq(const OkPolynomial& f) {
  if (f.is_zero()) throw InvalidInput("lemma1_bound_sq: zero polynomial");
  const int d = f.degree();
  if (d < 1) throw InvalidInput("lemma1_bound_sq: degree must be >= 1");
  // (2^(2d-2))^2 = 2^(4d-4)
  Integer scale = Integer(1) << (4 * d - 4);
  return scale * (d + 1) * l2_norm_sq(f);
}

std::string to_string(const OkPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  const auto c = f.coeffs();
  for (int i = f.degree(); i >= 0; --i) {
    const OkElement& coeff = c[i];
    if (coeff.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string var = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
    if (i > 0 && coeff == OkElement::one()) {
      out += var;
    } else {
      out += to_string(coeff);
      if (i > 0) out += "*" + var;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingSpec& ring) : text_(text), ring_(ring) {}

  OkPolynomial parse() {
    skip_space();
    bool negate = false;
    // A leading sign belongs to the first term ("-x^2 + 1").
    if (peek() == '-' && !next_is_digit()) {
      negate = true;
      ++pos_;
    } else if (peek() == '+' && !next_is_digit()) {
      ++pos_;
    }
    accumulate(negate);
    while (true) {
      skip_space();
      if (pos_ == text_.size()) break;
      char c = text_[pos_];
      if (c != '+' && c != '-') throw SyntaxError("expected '+' or '-'", pos_);
      ++pos_;
      accumulate(c == '-');
    }
    return OkPolynomial(ring_, std::move(coeffs_));
  }

 private:
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool next_is_digit() {
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void accumulate(bool negate) {
    auto [coeff, power] = term();
    if (negate) coeff = neg(coeff);
    if (coeffs_.size() <= power) coeffs_.resize(power + 1);
    coeffs_[power] = add(coeffs_[power], coeff);
  }

  std::pair<OkElement, std::size_t> term() {
    char c = peek();
    if (c == 'x') return {OkElement::one(), var()};
    if (c != '(' && c != '+' && c != '-' && !std::isdigit(static_cast<unsigned char>(c))) {
      throw SyntaxError("expected coefficient or 'x'", pos_);
    }
    OkElement coeff = coefficient();
    bool star = false;
    if (peek() == '*') {
      ++pos_;
      star = true;
    }
    if (peek() == 'x') return {coeff, var()};
    if (star) throw SyntaxError("expected 'x' after '*'", pos_);
    return {coeff, 0};
  }

  std::size_t var() {
    ++pos_;  // 'x'
    if (peek() != '^') return 1;
    ++pos_;
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw SyntaxError("expected exponent", start);
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 4) throw SyntaxError("exponent too large", start);
    return static_cast<std::size_t>(std::stoul(digits));
  }

  OkElement coefficient() {
    if (peek() == '(') {
      ++pos_;
      Integer u = integer();
      if (peek() != ',') throw SyntaxError("expected ','", pos_);
      ++pos_;
      Integer v = integer();
      if (peek() != ')') throw SyntaxError("expected ')'", pos_);
      ++pos_;
      return {std::move(u), std::move(v)};
    }
    return OkElement::from_int(integer());
  }

  Integer integer() {
    skip_space();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      negative = text_[pos_] == '-';
      ++pos_;
      skip_space();
    }
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw SyntaxError("expected integer", start);
    Integer value(std::string(text_.substr(digits, pos_ - digits)));
    return negative ? Integer(-value) : value;
  }

  std::string_view text_;
  const RingSpec& ring_;
  std::size_t pos_ = 0;
  std::vector<OkElement> coeffs_;
};

}  // namespace

OkPolynomial parse_poly(std::string_view text, const RingSpec& ring) {
  return PolyParser(text, ring).parse();
}

}  // namespace qgb
