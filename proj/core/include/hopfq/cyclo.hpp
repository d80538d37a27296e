#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfq {

using Rat = mpq_class;

class CycError : public std::runtime_error {
 public:
  explicit CycError(const std::string& what) : std::runtime_error(what) {}
};

/// Working field for one session: Q(zeta_{2n}), presented as Q[z]/Phi_N with
/// N = 2n and Phi_N the N-th cyclotomic polynomial. The distinguished residue
/// z is a primitive N-th root of unity; the conventions zeta := z^2 and
/// q := z^{2n-1} fix a primitive n-th root and a primitive 2n-th root with
/// q^{-2} = zeta.
class CycContext {
 public:
  explicit CycContext(int n);

  int n() const { return n_; }
  int root_order() const { return 2 * n_; }           // N
  int degree() const { return (int)phi_.size() - 1; } // phi(N)

  /// Integer coefficients of Phi_N, constant term first. Monic.
  const std::vector<mpz_class>& cyclotomic() const { return phi_; }

 private:
  int n_;
  std::vector<mpz_class> phi_;
};

using CycContextPtr = std::shared_ptr<const CycContext>;

CycContextPtr make_context(int n);

/// Element of Q(zeta_{2n}) in canonical form: a rational coefficient vector
/// of length phi(N) representing the residue mod Phi_N. Two scalars are equal
/// iff their context order and coefficient vectors are equal.
class CycScalar {
 public:
  CycScalar() = default;
  CycScalar(CycContextPtr ctx, std::vector<Rat> coeffs);

  static CycScalar zero(const CycContextPtr& ctx);
  static CycScalar one(const CycContextPtr& ctx);
  static CycScalar from_rational(const CycContextPtr& ctx, const Rat& value);
  static CycScalar from_int(const CycContextPtr& ctx, long value);

  const CycContextPtr& context() const { return ctx_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  /// The rational value if the scalar lies in Q, else nothing.
  bool rational_value(Rat& out) const;

  CycScalar operator+(const CycScalar& rhs) const;
  CycScalar operator-(const CycScalar& rhs) const;
  CycScalar operator*(const CycScalar& rhs) const;
  CycScalar operator/(const CycScalar& rhs) const;  // throws CycError on /0
  CycScalar operator-() const;
  CycScalar inverse() const;
  CycScalar pow(long k) const;  // negative k inverts first

  bool operator==(const CycScalar& rhs) const;
  bool operator!=(const CycScalar& rhs) const { return !(*this == rhs); }
  /// Total order on canonical forms; used only for deterministic containers.
  bool operator<(const CycScalar& rhs) const;

 private:
  CycContextPtr ctx_;
  std::vector<Rat> coeffs_;
};

/// z^k reduced mod Phi_N; k is taken mod N.
CycScalar root_power(const CycContextPtr& ctx, long k);
/// zeta = z^2, a primitive n-th root of unity.
CycScalar zeta(const CycContextPtr& ctx);
/// q = z^{2n-1}, a primitive 2n-th root of unity with q^{-2} = zeta.
CycScalar q_root(const CycContextPtr& ctx);

/// Parses the scalar grammar: rationals ("p/q", integers), the symbol "z",
/// operators + - * / ^ (integer exponents) and parentheses.
/// Throws CycError with a position on syntax errors and on division by zero.
CycScalar parse_scalar(const CycContextPtr& ctx, const std::string& text);

/// Canonical text form; parse_scalar(format_scalar(s)) == s.
std::string format_scalar(const CycScalar& s);

/// Solves x^k = value in the subgroup {rational * z^m}, the only radicals the
/// sampler ever takes. Returns false when no such root exists there.
bool kth_root_in_pool(const CycScalar& value, int k, CycScalar& out);

}  // namespace hopfq
