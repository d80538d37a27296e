#pragma once

#include "hopfq/quiver.hpp"

#include <map>
#include <string>
#include <vector>

namespace hopfq {

/// The generator g of a Z_n-action on kQ: a quiver automorphism (vertex
/// permutation + arrow permutation) with a nonzero scale per arrow, so that
/// g.a = mu_a * phi(a). Trivial paths carry no scale: g.e_v = e_{perm(v)}.
class ZnAction {
 public:
  struct ArrowImage {
    std::string image;
    CycScalar scale;
  };

  ZnAction() = default;
  ZnAction(int n, std::map<std::string, std::string> vertex_perm,
           std::map<std::string, ArrowImage> arrow_map)
      : n_(n), vertex_perm_(std::move(vertex_perm)), arrow_map_(std::move(arrow_map)) {}

  int n() const { return n_; }
  const std::map<std::string, std::string>& vertex_perm() const { return vertex_perm_; }
  const std::map<std::string, ArrowImage>& arrow_map() const { return arrow_map_; }

  const std::string& vertex_image(const std::string& v) const;
  const ArrowImage& arrow_image(const std::string& a) const;
  std::string vertex_preimage(const std::string& v) const;
  std::string arrow_preimage(const std::string& a) const;

  /// g^k applied to a vertex id.
  std::string vertex_power(const std::string& v, int k) const;

  /// The inverse generator as a ZnAction over the opposite quiver (same ids).
  ZnAction opposite() const;

 private:
  int n_ = 0;
  std::map<std::string, std::string> vertex_perm_;
  std::map<std::string, ArrowImage> arrow_map_;
};

ValidationReport validate_action(const Quiver& q, const ZnAction& act);

/// True when the permutation pair (vertices, arrows) has exact order n.
bool action_is_faithful(const Quiver& q, const ZnAction& act);
/// Order of the permutation pair (ignoring scales).
int action_permutation_order(const Quiver& q, const ZnAction& act);

/// Orbits as cycles: each starts at its lexicographically smallest id and
/// follows the permutation.
std::vector<std::vector<std::string>> vertex_orbits(const ZnAction& act);
std::vector<std::vector<std::string>> arrow_orbits(const ZnAction& act);

/// Key identifying a vertex orbit in reports and parameter files.
std::string orbit_key(const ZnAction& act, const std::string& vertex);

/// Z_n-component with canonical labels. Type A: one vertex orbit and every
/// arrow of Q inside it; Type B: an ordered pair of distinct orbits and every
/// arrow from the first to the second; IsolatedVertices: an orbit touching no
/// arrow. Labels follow the permutation from the lexicographically smallest
/// vertex, so g.e_i = e_{i+1} mod m under them.
struct Component {
  enum class Kind { TypeA, TypeB, IsolatedVertices };

  struct LabeledArrow {
    std::string id;
    int i;  // 1-based source label
    int j;  // 1-based target label (Type A: in the same orbit)
  };

  Kind kind;
  std::vector<std::string> src_labels;  // label k -> vertex id (index k-1)
  std::vector<std::string> tgt_labels;  // Type B only
  std::vector<LabeledArrow> arrows;     // sorted by (i, j)

  int m() const { return (int)src_labels.size(); }
  int m_prime() const { return (int)tgt_labels.size(); }
  /// -1 when the (i,j) slot is empty.
  int arrow_at(int i, int j) const;  // index into arrows
  std::string describe() const;
};

/// Partition of Q into Z_n-components, deterministically ordered.
std::vector<Component> decompose_components(const Quiver& q, const ZnAction& act);

/// Recomputes canonical labels; idempotent.
Component canonical_labels(const Quiver& q, const ZnAction& act, const Component& c);

struct MinimalClass {
  enum class Kind { TypeA, TypeB, NotMinimal } kind;
  int m = 0;
  int m_prime = 0;
};

MinimalClass classify_minimal(const Quiver& q, const ZnAction& act);

/// Action JSON: {"n": 2, "vertex_perm": {"v1":"v2", ...},
///               "arrows": {"f1": {"image":"f2", "scale":"1"}, ...}}
ZnAction parse_action_json(const CycContextPtr& ctx, const Quiver& q,
                           const std::string& json_text);
std::string action_to_json(const ZnAction& act);

}  // namespace hopfq
