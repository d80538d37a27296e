#pragma once

#include "hopfq/cyclo.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopfq {

struct Arrow {
  std::string id;
  std::string src;
  std::string tgt;
};

class Quiver;
using QuiverPtr = std::shared_ptr<const Quiver>;

/// Finite directed graph with named vertices and arrows, in input order.
/// The path-algebra layer assumes loopless Schurian quivers (validated
/// separately, report-style).
class Quiver {
 public:
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  int vertex_index(const std::string& id) const;  // -1 if unknown
  int arrow_index(const std::string& id) const;
  /// Index of the unique arrow src->tgt, or -1 (Schurian lookup).
  int arrow_between(int src, int tgt) const;

  QuiverPtr opposite() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, int> vertex_idx_;
  std::map<std::string, int> arrow_idx_;
  std::map<std::pair<int, int>, int> by_endpoints_;
};

struct ValidationIssue {
  std::string code;     // "loop", "parallel", "duplicate-id", ...
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
};

ValidationReport validate_quiver(const Quiver& q);

/// Composable arrow sequence, or a trivial path at one vertex.
struct Path {
  int base = -1;             // vertex index when trivial
  std::vector<int> arrows;   // arrow indices otherwise

  bool trivial() const { return arrows.empty(); }
  int length() const { return (int)arrows.size(); }

  static Path at_vertex(int v) { return Path{v, {}}; }
  static Path of_arrow(int a) { return Path{-1, {a}}; }
};

int path_source(const Quiver& q, const Path& p);
int path_target(const Quiver& q, const Path& p);
std::string path_to_string(const Quiver& q, const Path& p);
/// Canonical order: by length, then lexicographic by arrow ids
/// (vertex ids for trivial paths).
bool path_less(const Quiver& q, const Path& a, const Path& b);
bool path_equal(const Path& a, const Path& b);

/// Sparse scalar-linear combination of paths; zero coefficients are never
/// stored, so equality is structural.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(QuiverPtr q, CycContextPtr ctx);

  static AlgebraElement zero(const QuiverPtr& q, const CycContextPtr& ctx);
  static AlgebraElement of_path(const QuiverPtr& q, const CycContextPtr& ctx,
                                const Path& p);

  const QuiverPtr& quiver() const { return quiver_; }
  const CycContextPtr& context() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // max path length among stored terms; -1 when zero

  /// Terms in canonical path order.
  const std::vector<std::pair<Path, CycScalar>>& terms() const { return terms_; }
  CycScalar coefficient(const Path& p) const;

  void add_term(const Path& p, const CycScalar& c);

  AlgebraElement operator+(const AlgebraElement& rhs) const;
  AlgebraElement operator-(const AlgebraElement& rhs) const;
  AlgebraElement operator*(const AlgebraElement& rhs) const;  // path product
  AlgebraElement scaled(const CycScalar& c) const;
  AlgebraElement operator-() const;

  bool operator==(const AlgebraElement& rhs) const;
  bool operator!=(const AlgebraElement& rhs) const { return !(*this == rhs); }

  std::string to_string() const;

 private:
  QuiverPtr quiver_;
  CycContextPtr ctx_;
  // kept sorted in canonical path order, no zero coefficients
  std::vector<std::pair<Path, CycScalar>> terms_;
};

/// Sum of all trivial paths; the multiplicative unit.
AlgebraElement unit_element(const QuiverPtr& q, const CycContextPtr& ctx);

/// All paths of length <= L in canonical order.
std::vector<Path> enumerate_paths(const Quiver& q, int L);

/// Concatenation p.q if composable (p's target = q's source), else nothing.
std::optional<Path> compose_paths(const Quiver& q, const Path& a, const Path& b);

/// JSON schema: {"vertices": ["v1", ...],
///               "arrows": [{"id":"f1","src":"v1","tgt":"v2"}, ...]}
QuiverPtr parse_quiver_json(const std::string& json_text);
std::string quiver_to_json(const Quiver& q);

class ZnAction;  // symmetry.hpp
/// DOT export; with an action supplied, vertices are colored by orbit.
std::string export_dot(const Quiver& q, const ZnAction* action = nullptr);

}  // namespace hopfq
