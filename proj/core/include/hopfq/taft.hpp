#pragma once

#include "hopfq/symmetry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hopfq {

/// Free scalars of a Taft action: one gamma per vertex orbit (keyed by
/// orbit_key) and one lambda per arrow. Missing keys mean 0. The mu scales
/// live in the ZnAction, not here.
struct TaftParams {
  std::map<std::string, CycScalar> gamma;   // orbit key -> scalar
  std::map<std::string, CycScalar> lambda;  // arrow id -> scalar
  /// Diagonal lambda slots a^i_i supplied as "e[vertex]" keys; must be zero.
  std::map<std::string, CycScalar> diagonal_lambda;

  CycScalar gamma_for(const CycContextPtr& ctx, const std::string& key) const;
  CycScalar lambda_for(const CycContextPtr& ctx, const std::string& arrow_id) const;
};

/// Generator tables: images of every trivial path and arrow.
struct GeneratorTable {
  std::map<std::string, AlgebraElement> on_vertex;  // vertex id -> element
  std::map<std::string, AlgebraElement> on_arrow;   // arrow id -> element

  const AlgebraElement& vertex(const std::string& v) const;
  const AlgebraElement& arrow(const std::string& a) const;
};

/// A concrete Taft-algebra action on kQ: the Z_n data plus the g and x
/// generator tables. `commutation` is the scalar c in the operator identity
/// XG = c GX (zeta for built actions; its inverse after opposite_action).
struct ActionSpec {
  CycContextPtr ctx;
  QuiverPtr quiver;
  ZnAction action;
  std::optional<TaftParams> params;
  GeneratorTable g_on;
  GeneratorTable x_on;
  CycScalar commutation;
};

struct ConstraintIssue {
  std::string name;     // which bullet failed
  std::string detail;   // offending indices and values
};

struct ConstraintReport {
  std::vector<ConstraintIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// sigma(a): the unique path of length <= 1 from s(a) to t(g.a), when it
/// exists (a trivial path when g.t(a) = s(a)).
std::optional<Path> sigma(const Quiver& q, const ZnAction& act, const std::string& arrow_id);

/// x.e_i = gamma zeta^i (e_i - zeta e_{i+1}) under canonical labels; gamma
/// must be 0 on orbits of size < n. Returns the x-images in label order.
std::vector<AlgebraElement> vertex_action(const CycContextPtr& ctx, const QuiverPtr& q,
                                          const std::vector<std::string>& orbit_labels,
                                          int n, const CycScalar& gamma);

/// Fills the x table for one component (Type A per eq. for a^i_j, Type B per
/// eq. for b^i_j, IsolatedVertices just the vertex action). Tables are
/// well-defined for any scalars; constraint violations are reported, not
/// enforced here.
void build_component_action(const CycContextPtr& ctx, const QuiverPtr& q,
                            const ZnAction& act, const Component& c,
                            const TaftParams& params, GeneratorTable& x_out);

/// Evaluates every scalar bullet for the component: gamma vanishing on short
/// orbits, lambda vanishing (diagonal / missing sigma target), the
/// lambda-mu recurrence, and the Type B power identity for every (i,j).
ConstraintReport check_constraints(const CycContextPtr& ctx, const QuiverPtr& q,
                                   const ZnAction& act, const Component& c,
                                   const TaftParams& params);

/// Builds the full action: g from the ZnAction, x per component.
/// The constraint report aggregates all components.
std::pair<ActionSpec, ConstraintReport> build_action(const CycContextPtr& ctx,
                                                     const QuiverPtr& q,
                                                     const ZnAction& act,
                                                     const TaftParams& params);

/// One component's share of an ActionSpec (generators restricted to it).
struct ActionFragment {
  Component component;
  std::optional<CycScalar> gamma_src;  // gamma of the source orbit
  std::optional<CycScalar> gamma_tgt;  // Type B: gamma of the target orbit
  GeneratorTable x_on;                 // x on this component's generators
};

ActionFragment restrict_to_component(const ActionSpec& spec, const Component& c);

/// Merges fragments into one spec over Q. Fragments must cover the
/// components exactly once; shared vertex orbits must carry equal gamma
/// (error names the orbit and both values).
ActionSpec glue(const CycContextPtr& ctx, const QuiverPtr& q, const ZnAction& act,
                const std::vector<ActionFragment>& fragments);

// ---------------------------------------------------------------------------
// Symbolic parameter-space report (Steps 1-5 over parameter names).

struct FreeSymbol {
  std::string symbol;  // "gamma:orbit-of:v" or "lambda:arrowid"
  std::string kind;    // "gamma" | "lambda"
};

struct DerivedLambda {
  std::string arrow;        // target arrow id
  std::string seed;         // seed symbol "lambda:arrowid"
  CycScalar coefficient;    // target = coefficient * seed
};

struct GammaSharing {
  std::string symbol;             // "gamma:orbit-of:v"
  std::vector<int> components;    // component indices sharing this gamma
};

struct ForcedZero {
  std::string symbol;
  std::string reason;  // "orbit-size" | "no-sigma-target" | "orbit-closure"
};

/// (gamma_plus)^n = (gamma_minus)^n + coeff * prod seeds^multiplicity.
/// A missing gamma symbol on one side means that side is the forced zero.
struct ResidualConstraint {
  int component;
  std::string gamma_plus;   // empty when forced zero
  std::string gamma_minus;  // empty when forced zero
  int power;                // n
  CycScalar coefficient;    // zero when the lambda product vanishes structurally
  std::map<std::string, int> monomial;  // seed symbol -> multiplicity
};

struct ParamReport {
  std::vector<Component> components;
  std::vector<FreeSymbol> free_symbols;
  std::vector<DerivedLambda> derived;
  std::vector<GammaSharing> gamma_sharing;
  std::vector<ForcedZero> forced_zero;
  std::vector<ResidualConstraint> residual;
};

ParamReport parametrize(const CycContextPtr& ctx, const QuiverPtr& q, const ZnAction& act,
                        bool normalize_mu = false);

std::string param_report_to_json(const CycContextPtr& ctx, const ParamReport& report);

/// Deterministic pseudo-random assignment of the free symbols that satisfies
/// every residual constraint, preferring inner-faithful outcomes. Throws
/// CycError after a bounded number of attempts (default 32).
TaftParams sample_params(const CycContextPtr& ctx, const QuiverPtr& q, const ZnAction& act,
                         const ParamReport& report, unsigned long seed,
                         int max_attempts = 32);

/// The induced action on the opposite quiver: g' = g^{-1}, x' = g^{-1} x.
/// Flips the commutation scalar to its inverse; applying twice restores the
/// original spec under the canonical identification (Q^op)^op = Q.
ActionSpec opposite_action(const ActionSpec& spec);

/// True iff x acts nonzero on some generator.
bool is_inner_faithful(const ActionSpec& spec);

/// Params JSON: {"gamma": {"orbit-of:v1": "1"}, "lambda": {"f1": "1/2"}}
TaftParams parse_params_json(const CycContextPtr& ctx, const Quiver& q,
                             const ZnAction& act, const std::string& json_text);
std::string params_to_json(const TaftParams& params);

}  // namespace hopfq
