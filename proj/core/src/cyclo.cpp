#include "hopfq/cyclo.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace hopfq {

namespace {

// Exact division of integer polynomials, quotient known to be integral.
// Coefficient vectors are constant-term first; divisor must be monic.
std::vector<mpz_class> divide_exact(const std::vector<mpz_class>& num,
                                    const std::vector<mpz_class>& den) {
  std::vector<mpz_class> rem = num;
  const int dn = (int)rem.size() - 1;
  const int dd = (int)den.size() - 1;
  std::vector<mpz_class> quo(dn - dd + 1, 0);
  for (int d = dn; d >= dd; --d) {
    mpz_class c = rem[d];
    if (c == 0) continue;
    quo[d - dd] = c;
    for (int i = 0; i <= dd; ++i) rem[d - dd + i] -= c * den[i];
  }
  for (const auto& r : rem)
    if (r != 0) throw CycError("internal: inexact cyclotomic division");
  return quo;
}

// Phi_m for every divisor m of N, by iterated division of z^m - 1.
std::map<int, std::vector<mpz_class>> cyclotomics_up_to(int N) {
  std::map<int, std::vector<mpz_class>> phi;
  for (int m = 1; m <= N; ++m) {
    if (N % m != 0) continue;
    std::vector<mpz_class> poly(m + 1, 0);  // z^m - 1
    poly[0] = -1;
    poly[m] = 1;
    for (int d = 1; d < m; ++d)
      if (m % d == 0) poly = divide_exact(poly, phi.at(d));
    phi[m] = std::move(poly);
  }
  return phi;
}

}  // namespace

CycContext::CycContext(int n) : n_(n) {
  if (n < 2) throw CycError("invalid Taft order: n must be >= 2");
  auto all = cyclotomics_up_to(2 * n);
  phi_.assign(all.at(2 * n).begin(), all.at(2 * n).end());
}

CycContextPtr make_context(int n) { return std::make_shared<const CycContext>(n); }

CycScalar::CycScalar(CycContextPtr ctx, std::vector<Rat> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  coeffs_.resize(ctx_->degree(), Rat(0));
  for (auto& c : coeffs_) c.canonicalize();
}

CycScalar CycScalar::zero(const CycContextPtr& ctx) {
  return CycScalar(ctx, std::vector<Rat>(ctx->degree(), Rat(0)));
}

CycScalar CycScalar::one(const CycContextPtr& ctx) { return from_int(ctx, 1); }

CycScalar CycScalar::from_rational(const CycContextPtr& ctx, const Rat& value) {
  std::vector<Rat> c(ctx->degree(), Rat(0));
  c[0] = value;
  return CycScalar(ctx, std::move(c));
}

CycScalar CycScalar::from_int(const CycContextPtr& ctx, long value) {
  return from_rational(ctx, Rat(value));
}

bool CycScalar::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycScalar::is_one() const {
  if (coeffs_.empty() || coeffs_[0] != 1) return false;
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool CycScalar::rational_value(Rat& out) const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  out = coeffs_.empty() ? Rat(0) : coeffs_[0];
  return true;
}

namespace {

void check_same_context(const CycScalar& a, const CycScalar& b) {
  if (!a.context() || !b.context() || a.context()->n() != b.context()->n())
    throw CycError("scalar contexts differ");
}

// Reduce a rational polynomial (any degree) mod the monic Phi_N.
std::vector<Rat> reduce_mod_phi(const CycContext& ctx, std::vector<Rat> poly) {
  const auto& phi = ctx.cyclotomic();
  const int deg = (int)phi.size() - 1;
  for (int d = (int)poly.size() - 1; d >= deg; --d) {
    Rat c = poly[d];
    if (c == 0) continue;
    for (int i = 0; i <= deg; ++i) poly[d - deg + i] -= c * Rat(phi[i]);
  }
  poly.resize(deg, Rat(0));
  return poly;
}

int poly_degree(const std::vector<Rat>& p) {
  for (int d = (int)p.size() - 1; d >= 0; --d)
    if (p[d] != 0) return d;
  return -1;
}

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Extended gcd of b with Phi_N in Q[z]: returns u with u*b = gcd mod Phi_N.
// Since Phi_N is irreducible over Q and deg b < deg Phi_N, gcd is a nonzero
// constant whenever b != 0, so u/gcd is the inverse of b.
std::vector<Rat> invert_mod_phi(const CycContext& ctx, const std::vector<Rat>& b) {
  const auto& phi_int = ctx.cyclotomic();
  std::vector<Rat> r0(phi_int.begin(), phi_int.end());
  std::vector<Rat> r1 = b;
  r1.resize(std::max(r1.size(), size_t(1)), Rat(0));
  std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // coefficients of b

  while (poly_degree(r1) > 0) {
    // divide r0 by r1
    std::vector<Rat> quo(std::max<int>(poly_degree(r0) - poly_degree(r1) + 1, 1), Rat(0));
    std::vector<Rat> rem = r0;
    int d1 = poly_degree(r1);
    Rat lead = r1[d1];
    for (int d = poly_degree(rem); d >= d1; --d) {
      Rat c = rem[d] / lead;
      if (c == 0) continue;
      quo[d - d1] = c;
      for (int i = 0; i <= d1; ++i) rem[d - d1 + i] -= c * r1[i];
    }
    std::vector<Rat> s2 = s0;
    {
      std::vector<Rat> qs = poly_mul(quo, s1);
      s2.resize(std::max(s2.size(), qs.size()), Rat(0));
      for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  int d = poly_degree(r1);
  if (d < 0) throw CycError("division by zero");
  Rat g = r1[d];  // nonzero constant
  for (auto& c : s1) c /= g;
  return reduce_mod_phi(ctx, std::move(s1));
}

}  // namespace

CycScalar CycScalar::operator+(const CycScalar& rhs) const {
  check_same_context(*this, rhs);
  std::vector<Rat> c = coeffs_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += rhs.coeffs_[i];
  return CycScalar(ctx_, std::move(c));
}

CycScalar CycScalar::operator-(const CycScalar& rhs) const {
  check_same_context(*this, rhs);
  std::vector<Rat> c = coeffs_;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= rhs.coeffs_[i];
  return CycScalar(ctx_, std::move(c));
}

CycScalar CycScalar::operator*(const CycScalar& rhs) const {
  check_same_context(*this, rhs);
  return CycScalar(ctx_, reduce_mod_phi(*ctx_, poly_mul(coeffs_, rhs.coeffs_)));
}

CycScalar CycScalar::operator/(const CycScalar& rhs) const {
  return *this * rhs.inverse();
}

CycScalar CycScalar::operator-() const {
  std::vector<Rat> c = coeffs_;
  for (auto& x : c) x = -x;
  return CycScalar(ctx_, std::move(c));
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw CycError("division by zero");
  return CycScalar(ctx_, invert_mod_phi(*ctx_, coeffs_));
}

CycScalar CycScalar::pow(long k) const {
  CycScalar base = *this;
  if (k < 0) {
    base = base.inverse();
    k = -k;
  }
  CycScalar acc = CycScalar::one(ctx_);
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool CycScalar::operator==(const CycScalar& rhs) const {
  if (!ctx_ || !rhs.ctx_) return !ctx_ && !rhs.ctx_;
  return ctx_->n() == rhs.ctx_->n() && coeffs_ == rhs.coeffs_;
}

bool CycScalar::operator<(const CycScalar& rhs) const {
  for (size_t i = 0; i < coeffs_.size() && i < rhs.coeffs_.size(); ++i) {
    if (coeffs_[i] != rhs.coeffs_[i]) return coeffs_[i] < rhs.coeffs_[i];
  }
  return coeffs_.size() < rhs.coeffs_.size();
}

CycScalar root_power(const CycContextPtr& ctx, long k) {
  const int N = ctx->root_order();
  long r = ((k % N) + N) % N;
  std::vector<Rat> mono(r + 1, Rat(0));
  mono[r] = 1;
  return CycScalar(ctx, reduce_mod_phi(*ctx, std::move(mono)));
}

CycScalar zeta(const CycContextPtr& ctx) { return root_power(ctx, 2); }
CycScalar q_root(const CycContextPtr& ctx) { return root_power(ctx, 2 * ctx->n() - 1); }

// ---------------------------------------------------------------------------
// Parser for the scalar grammar.

namespace {

struct ScalarParser {
  const CycContextPtr& ctx;
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "scalar syntax error at position " << pos << ": " << msg;
    throw CycError(os.str());
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  CycScalar parse_expr() {
    CycScalar v = parse_term();
    for (;;) {
      if (eat('+'))
        v = v + parse_term();
      else if (eat('-'))
        v = v - parse_term();
      else
        return v;
    }
  }

  CycScalar parse_term() {
    CycScalar v = parse_factor();
    for (;;) {
      if (eat('*'))
        v = v * parse_factor();
      else if (eat('/')) {
        CycScalar d = parse_factor();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else
        return v;
    }
  }

  CycScalar parse_factor() {
    bool neg = false;
    while (true) {
      if (eat('-'))
        neg = !neg;
      else if (eat('+')) {
      } else
        break;
    }
    CycScalar v = parse_atom();
    if (eat('^')) {
      long e = parse_int_exponent();
      if (v.is_zero() && e < 0) fail("division by zero");
      v = v.pow(e);
    }
    return neg ? -v : v;
  }

  long parse_int_exponent() {
    skip_ws();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    skip_ws();
    if (pos >= text.size() || !std::isdigit((unsigned char)text[pos]))
      fail("expected integer exponent");
    long v = 0;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000) fail("exponent too large");
      ++pos;
    }
    return neg ? -v : v;
  }

  CycScalar parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      CycScalar v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'z') {
      ++pos;
      return root_power(ctx, 1);
    }
    if (std::isdigit((unsigned char)c)) {
      std::string digits;
      while (pos < text.size() && std::isdigit((unsigned char)text[pos]))
        digits += text[pos++];
      return CycScalar::from_rational(ctx, Rat(mpz_class(digits)));
    }
    fail("expected rational, 'z' or '('");
  }
};

}  // namespace

CycScalar parse_scalar(const CycContextPtr& ctx, const std::string& text) {
  ScalarParser p{ctx, text};
  CycScalar v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

std::string format_scalar(const CycScalar& s) {
  const auto& c = s.coeffs();
  std::ostringstream os;
  bool first = true;
  for (int d = (int)c.size() - 1; d >= 0; --d) {
    if (c[d] == 0) continue;
    Rat a = c[d];
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    bool unit = (a == 1) && d > 0;
    if (!unit) os << a.get_str();
    if (d > 0) {
      if (!unit) os << "*";
      os << "z";
      if (d > 1) os << "^" << d;
    }
  }
  if (first) os << "0";
  return os.str();
}

bool kth_root_in_pool(const CycScalar& value, int k, CycScalar& out) {
  const auto& ctx = value.context();
  if (k <= 0) throw CycError("root exponent must be positive");
  if (value.is_zero()) {
    out = CycScalar::zero(ctx);
    return true;
  }
  const int N = ctx->root_order();
  for (int m = 0; m < N; ++m) {
    // candidate x = r * z^m needs value * z^{-k m} rational with rational
    // k-th root r.
    CycScalar w = value * root_power(ctx, -(long)k * m);
    Rat wr;
    if (!w.rational_value(wr)) continue;
    // rational k-th root of wr, if any
    bool neg = wr < 0;
    if (neg && k % 2 == 0) continue;
    Rat aw = neg ? Rat(-wr) : wr;
    mpz_class num = aw.get_num(), den = aw.get_den();
    mpz_class rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) == 0) continue;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) == 0) continue;
    Rat r(rn, rd);
    if (neg) r = -r;
    out = CycScalar::from_rational(ctx, r) * root_power(ctx, m);
    if (out.pow(k) == value) return true;
  }
  return false;
}

}  // namespace hopfq
