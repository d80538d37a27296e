#pragma once

#include "hopfq/verifier.hpp"

#include <vector>

namespace hopfq {
namespace oracle {

/// Complete homogeneous symmetric polynomial h_a(values). Conventions:
/// h_0 = 1 always (empty variable set included); h_a = 0 for a < 0, and for
/// a > 0 with no variables.
CycScalar h_complete(const CycContextPtr& ctx, int a, const std::vector<CycScalar>& values);

/// Gaussian binomial [N choose K] evaluated at `at`, via the Pascal-type
/// recurrence (no division, exact at roots of unity).
CycScalar q_binomial(const CycContextPtr& ctx, int N, int K, const CycScalar& at);

/// Scalar grids for one linear operator X v^i_j = eta_j v^i_j
/// + theta_{i,j} v^{i+1}_{j+1} + tau_{i,j} v^i_{j+1}, indices mod (m, m').
/// The closed form requires tau_{i+1,j+1} theta_{i,j} = zeta theta_{i,j+1}
/// tau_{i,j} for all (i,j).
struct PsiInputs {
  int m = 0;
  int m_prime = 0;
  std::vector<CycScalar> eta;                  // size m'
  std::vector<std::vector<CycScalar>> theta;   // m x m'
  std::vector<std::vector<CycScalar>> tau;     // m x m'
  int base_i = 1;                              // 1-based start position
  int base_j = 1;

  const CycScalar& eta_at(int j) const;
  const CycScalar& theta_at(int i, int j) const;
  const CycScalar& tau_at(int i, int j) const;
};

bool tautheta_holds(const CycContextPtr& ctx, const PsiInputs& in);

/// psi_{k,s,t} by the closed form
/// (prod theta)(prod tau) h_{k-t}(eta_j..eta_{j+t}) h_s(1, zeta, .., zeta^{t-s}).
/// Throws when the tau-theta precondition fails.
CycScalar psi(const CycContextPtr& ctx, const PsiInputs& in, int k, int s, int t);

/// Independent second route: the coefficient computed by the three-term
/// induction on k. Shares nothing with the closed form above.
CycScalar psi_inductive(const CycContextPtr& ctx, const PsiInputs& in, int k, int s, int t);

struct CrossCheckResult {
  bool match = true;
  std::string detail;  // first mismatch, when any
};

/// Compares sum_{0<=s<=t<=k} psi_{k,s,t} v^{i+s}_{j+t} against the k-fold
/// application of the verifier's x operator to the given generator of a
/// single minimal component. Grids are derived from the component action.
CrossCheckResult xk_cross_check(const ActionSpec& spec, const Component& c, int k,
                                const Path& generator);

}  // namespace oracle
}  // namespace hopfq
