#pragma once

#include "hopfq/verifier.hpp"

#include <map>
#include <string>
#include <vector>

namespace hopfq {

/// Scalars of a u_q(sl_2) action extending the K = g symmetry: one gamma^E
/// and gamma^F per vertex orbit, one lambda^E and lambda^F per arrow.
struct UqParams {
  std::map<std::string, CycScalar> gammaE;   // orbit key ->
  std::map<std::string, CycScalar> gammaF;
  std::map<std::string, CycScalar> lambdaE;  // arrow id ->
  std::map<std::string, CycScalar> lambdaF;

  CycScalar gammaE_for(const CycContextPtr& ctx, const std::string& key) const;
  CycScalar gammaF_for(const CycContextPtr& ctx, const std::string& key) const;
  CycScalar lambdaE_for(const CycContextPtr& ctx, const std::string& arrow) const;
  CycScalar lambdaF_for(const CycContextPtr& ctx, const std::string& arrow) const;
};

struct UqSpec {
  CycContextPtr ctx;
  QuiverPtr quiver;
  ZnAction action;  // K acts as g
  UqParams params;
  GeneratorTable K_on, Kinv_on, E_on, F_on;
};

/// Scalars of a D(T(n)) action: gamma^x/gamma^X per orbit, lambda^x/lambda^X
/// per arrow. The two grouplikes share the vertex permutation but carry
/// independent scale families mu^g, mu^G (the two ZnActions).
struct DoubleParams {
  std::map<std::string, CycScalar> gammax;
  std::map<std::string, CycScalar> gammaX;
  std::map<std::string, CycScalar> lambdax;
  std::map<std::string, CycScalar> lambdaX;

  CycScalar gammax_for(const CycContextPtr& ctx, const std::string& key) const;
  CycScalar gammaX_for(const CycContextPtr& ctx, const std::string& key) const;
  CycScalar lambdax_for(const CycContextPtr& ctx, const std::string& arrow) const;
  CycScalar lambdaX_for(const CycContextPtr& ctx, const std::string& arrow) const;
};

struct DoubleSpec {
  CycContextPtr ctx;
  QuiverPtr quiver;
  ZnAction act_g;
  ZnAction act_G;
  DoubleParams params;
  GeneratorTable g_on, G_on, x_on, X_on;
};

/// Builds K on the quiver symmetry and E, F on vertices and arrows.
/// Requires n >= 3, vertex orbit sizes in {1, 2, n}, and mu = 1 on every
/// arrow-bearing component (the forced gauge); throws otherwise. Scalar
/// bullet violations (the E/F restriction list) come back in the report.
std::pair<UqSpec, ConstraintReport> build_uq_action(const CycContextPtr& ctx,
                                                    const QuiverPtr& q, const ZnAction& act,
                                                    const UqParams& params);

/// K^n = 1, E^n = F^n = 0, KE = q^2 EK, KF = q^{-2} FK, and
/// EF - FE = (K - K^{-1})/(q - q^{-1}), as operator identities up to depth L.
VerificationReport verify_uq(const UqSpec& spec, int L);

/// Builds the four generator tables of a D(T(n)) action. Requires matching
/// n, a shared vertex permutation and arrow permutation, and every vertex
/// orbit of size n (the implemented regime); throws otherwise.
std::pair<DoubleSpec, ConstraintReport> build_double_action(const CycContextPtr& ctx,
                                                            const QuiverPtr& q,
                                                            const ZnAction& act_g,
                                                            const ZnAction& act_G,
                                                            const DoubleParams& params);

/// The full first row of D(T(n)) relations plus xX - zeta Xx = zeta (gG - 1).
VerificationReport verify_double(const DoubleSpec& spec, int L);

// Gluing with the same contract as the Taft glue, family by family.
struct UqFragment {
  Component component;
  std::map<std::string, CycScalar> gammaE, gammaF;  // orbit key -> value
  GeneratorTable E_on, F_on;
};
struct DoubleFragment {
  Component component;
  std::map<std::string, CycScalar> gammax, gammaX;
  GeneratorTable x_on, X_on;
};

UqFragment restrict_uq_to_component(const UqSpec& spec, const Component& c);
DoubleFragment restrict_double_to_component(const DoubleSpec& spec, const Component& c);

UqSpec glue_uq(const CycContextPtr& ctx, const QuiverPtr& q, const ZnAction& act,
               const std::vector<UqFragment>& fragments);
DoubleSpec glue_double(const CycContextPtr& ctx, const QuiverPtr& q, const ZnAction& act_g,
                       const ZnAction& act_G, const std::vector<DoubleFragment>& fragments);

/// The underlying Taft action of the Borel pair <K, E>; for D(T(n)), of
/// <g, x> (commutation zeta) or <G, X> (commutation zeta^{-1}).
ActionSpec borel_taft_spec(const UqSpec& spec);
ActionSpec double_taft_spec(const DoubleSpec& spec, bool upper);

UqParams parse_uq_params_json(const CycContextPtr& ctx, const Quiver& q, const ZnAction& act,
                              const std::string& json_text);
DoubleParams parse_double_params_json(const CycContextPtr& ctx, const Quiver& q,
                                      const ZnAction& act, const std::string& json_text);

}  // namespace hopfq
