#pragma once

#include "hopfq/taft.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hopfq {

/// Linear operators on the filtered path basis, one image per basis path.
/// G is the grouplike column set, X the skew-primitive one; both preserve
/// the path length filtration.
struct OperatorTable {
  int L = 0;
  std::vector<Path> basis;                 // canonical order, length <= L
  std::vector<AlgebraElement> g_images;    // g_images[k] = G(basis[k])
  std::vector<AlgebraElement> x_images;

  int index_of(const Quiver& q, const Path& p) const;
  /// Linear extension of the column map to arbitrary elements (degree <= L).
  AlgebraElement apply(const Quiver& q, const std::vector<AlgebraElement>& images,
                       const AlgebraElement& e) const;
  AlgebraElement apply_g(const AlgebraElement& e) const;
  AlgebraElement apply_x(const AlgebraElement& e) const;
};

/// Grouplike application to a single path: g(a_1...a_k) = (g.a_1)...(g.a_k).
AlgebraElement apply_grouplike(const GeneratorTable& table, const QuiverPtr& q,
                               const CycContextPtr& ctx, const Path& p);

/// Skew-primitive application with companions L and R (either may be null,
/// meaning the identity): h(p q) = L(p) h(q) + h(p) R(q), split at the first
/// arrow. This is the module-algebra extension rule for an (L-type, R-type)
/// skew-primitive generator.
AlgebraElement apply_skew(const GeneratorTable& h, const GeneratorTable* left,
                          const GeneratorTable* right, const QuiverPtr& q,
                          const CycContextPtr& ctx, const Path& p);

/// x applied to an arbitrary element through the split rule (for `act`).
AlgebraElement act_generator(const ActionSpec& spec, const std::string& generator,
                             const AlgebraElement& e);

struct Witness {
  std::string path;      // basis path where the relation fails
  std::string residual;  // the nonzero difference element
};

struct RelationCheck {
  std::string name;
  bool pass = true;
  std::optional<Witness> witness;
};

struct VerificationReport {
  std::vector<RelationCheck> relations;
  std::vector<RelationCheck> splits;
  bool inner_faithful = false;
  bool all_pass() const {
    for (const auto& r : relations)
      if (!r.pass) return false;
    for (const auto& s : splits)
      if (!s.pass) return false;
    return true;
  }
};

/// Images of every basis path of length <= L under g and x.
/// g multiplicatively, x by the split rule x(p q) = p x(q) + x(p) g(q).
OperatorTable extend_operators(const ActionSpec& spec, int L);

/// x(p) = u x(v) + x(u) g(v) for every split p = u v, including the trivial
/// splits through e_{s(p)} and e_{t(p)}.
std::vector<RelationCheck> check_split_consistency(const OperatorTable& table,
                                                   const ActionSpec& spec);

/// G^n = 1, X^n = 0, XG = c GX (c = spec.commutation), x.1 = 0.
std::vector<RelationCheck> check_relations(const OperatorTable& table, const ActionSpec& spec);

VerificationReport verify_all(const ActionSpec& spec, int L);

/// Default verification depth: 2n, capped for desk scale.
int default_depth(int n);

std::string report_to_json(const VerificationReport& report);

/// Number of worker threads honoring HOPFQ_THREADS (>= 1).
int worker_threads();
/// Deterministic parallel map: out[i] = fn(i), order preserved.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace hopfq
