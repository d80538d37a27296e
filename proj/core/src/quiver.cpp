#include "hopfq/quiver.hpp"
#include "hopfq/symmetry.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace hopfq {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  for (int i = 0; i < (int)vertices_.size(); ++i) vertex_idx_.emplace(vertices_[i], i);
  for (int i = 0; i < (int)arrows_.size(); ++i) {
    arrow_idx_.emplace(arrows_[i].id, i);
    int s = vertex_index(arrows_[i].src), t = vertex_index(arrows_[i].tgt);
    if (s >= 0 && t >= 0) by_endpoints_.emplace(std::make_pair(s, t), i);
  }
}

int Quiver::vertex_index(const std::string& id) const {
  auto it = vertex_idx_.find(id);
  return it == vertex_idx_.end() ? -1 : it->second;
}

int Quiver::arrow_index(const std::string& id) const {
  auto it = arrow_idx_.find(id);
  return it == arrow_idx_.end() ? -1 : it->second;
}

int Quiver::arrow_between(int src, int tgt) const {
  auto it = by_endpoints_.find(std::make_pair(src, tgt));
  return it == by_endpoints_.end() ? -1 : it->second;
}

QuiverPtr Quiver::opposite() const {
  std::vector<Arrow> rev;
  rev.reserve(arrows_.size());
  for (const auto& a : arrows_) rev.push_back({a.id, a.tgt, a.src});
  return std::make_shared<const Quiver>(vertices_, std::move(rev));
}

ValidationReport validate_quiver(const Quiver& q) {
  ValidationReport rep;
  std::set<std::string> vseen, aseen;
  for (const auto& v : q.vertices()) {
    if (!vseen.insert(v).second)
      rep.issues.push_back({"duplicate-id", "duplicate vertex id '" + v + "'"});
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& a : q.arrows()) {
    if (!aseen.insert(a.id).second)
      rep.issues.push_back({"duplicate-id", "duplicate arrow id '" + a.id + "'"});
    if (vseen.count(a.src) == 0)
      rep.issues.push_back({"unknown-vertex", "arrow '" + a.id + "' has unknown source '" + a.src + "'"});
    if (vseen.count(a.tgt) == 0)
      rep.issues.push_back({"unknown-vertex", "arrow '" + a.id + "' has unknown target '" + a.tgt + "'"});
    if (a.src == a.tgt)
      rep.issues.push_back({"loop", "arrow '" + a.id + "' is a loop at '" + a.src + "'"});
    if (!pairs.insert({a.src, a.tgt}).second)
      rep.issues.push_back({"parallel", "parallel arrow '" + a.id + "' from '" + a.src + "' to '" + a.tgt + "' (not Schurian)"});
  }
  if (q.vertices().empty())
    rep.issues.push_back({"empty", "quiver has no vertices; the unit is undefined"});
  return rep;
}

int path_source(const Quiver& q, const Path& p) {
  if (p.trivial()) return p.base;
  return q.vertex_index(q.arrows()[p.arrows.front()].src);
}

int path_target(const Quiver& q, const Path& p) {
  if (p.trivial()) return p.base;
  return q.vertex_index(q.arrows()[p.arrows.back()].tgt);
}

std::string path_to_string(const Quiver& q, const Path& p) {
  if (p.trivial()) return "e[" + q.vertices()[p.base] + "]";
  std::string s;
  for (size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += "*";
    s += q.arrows()[p.arrows[i]].id;
  }
  return s;
}

bool path_less(const Quiver& q, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.trivial()) return q.vertices()[a.base] < q.vertices()[b.base];
  for (size_t i = 0; i < a.arrows.size(); ++i) {
    const std::string& x = q.arrows()[a.arrows[i]].id;
    const std::string& y = q.arrows()[b.arrows[i]].id;
    if (x != y) return x < y;
  }
  return false;
}

bool path_equal(const Path& a, const Path& b) {
  return a.base == b.base && a.arrows == b.arrows;
}

std::optional<Path> compose_paths(const Quiver& q, const Path& a, const Path& b) {
  if (path_target(q, a) != path_source(q, b)) return std::nullopt;
  if (a.trivial()) return b;
  if (b.trivial()) return a;
  Path out = a;
  out.arrows.insert(out.arrows.end(), b.arrows.begin(), b.arrows.end());
  return out;
}

AlgebraElement::AlgebraElement(QuiverPtr q, CycContextPtr ctx)
    : quiver_(std::move(q)), ctx_(std::move(ctx)) {}

AlgebraElement AlgebraElement::zero(const QuiverPtr& q, const CycContextPtr& ctx) {
  return AlgebraElement(q, ctx);
}

AlgebraElement AlgebraElement::of_path(const QuiverPtr& q, const CycContextPtr& ctx,
                                       const Path& p) {
  AlgebraElement e(q, ctx);
  e.add_term(p, CycScalar::one(ctx));
  return e;
}

int AlgebraElement::degree() const {
  int d = -1;
  for (const auto& [p, c] : terms_) d = std::max(d, p.length());
  return d;
}

CycScalar AlgebraElement::coefficient(const Path& p) const {
  for (const auto& [q, c] : terms_)
    if (path_equal(q, p)) return c;
  return CycScalar::zero(ctx_);
}

void AlgebraElement::add_term(const Path& p, const CycScalar& c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), p,
      [this](const std::pair<Path, CycScalar>& t, const Path& v) {
        return path_less(*quiver_, t.first, v);
      });
  if (it != terms_.end() && path_equal(it->first, p)) {
    CycScalar s = it->second + c;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = s;
  } else {
    terms_.insert(it, {p, c});
  }
}

namespace {
void check_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.quiver() != b.quiver())
    throw CycError("algebra elements over different quivers");
}
}  // namespace

AlgebraElement AlgebraElement::operator+(const AlgebraElement& rhs) const {
  check_same_algebra(*this, rhs);
  AlgebraElement out = *this;
  for (const auto& [p, c] : rhs.terms_) out.add_term(p, c);
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& rhs) const {
  check_same_algebra(*this, rhs);
  AlgebraElement out = *this;
  for (const auto& [p, c] : rhs.terms_) out.add_term(p, -c);
  return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& rhs) const {
  check_same_algebra(*this, rhs);
  AlgebraElement out(quiver_, ctx_);
  for (const auto& [p, cp] : terms_) {
    for (const auto& [q, cq] : rhs.terms_) {
      auto comp = compose_paths(*quiver_, p, q);
      if (comp) out.add_term(*comp, cp * cq);
    }
  }
  return out;
}

AlgebraElement AlgebraElement::scaled(const CycScalar& c) const {
  AlgebraElement out(quiver_, ctx_);
  if (c.is_zero()) return out;
  for (const auto& [p, cp] : terms_) out.add_term(p, cp * c);
  return out;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out(quiver_, ctx_);
  for (const auto& [p, cp] : terms_) out.add_term(p, -cp);
  return out;
}

bool AlgebraElement::operator==(const AlgebraElement& rhs) const {
  if (terms_.size() != rhs.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (!path_equal(terms_[i].first, rhs.terms_[i].first)) return false;
    if (terms_[i].second != rhs.terms_[i].second) return false;
  }
  return true;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    std::string cs = format_scalar(c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) cs = cs.substr(1);
    bool needs_parens = cs.find(' ') != std::string::npos;
    if (cs == "1") {
      os << path_to_string(*quiver_, p);
    } else if (needs_parens) {
      os << "(" << cs << ")*" << path_to_string(*quiver_, p);
    } else {
      os << cs << "*" << path_to_string(*quiver_, p);
    }
  }
  return os.str();
}

AlgebraElement unit_element(const QuiverPtr& q, const CycContextPtr& ctx) {
  if (q->vertices().empty()) throw CycError("unit undefined: quiver has no vertices");
  AlgebraElement e(q, ctx);
  for (int v = 0; v < (int)q->vertices().size(); ++v)
    e.add_term(Path::at_vertex(v), CycScalar::one(ctx));
  return e;
}

std::vector<Path> enumerate_paths(const Quiver& q, int L) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (int v = 0; v < (int)q.vertices().size(); ++v)
    frontier.push_back(Path::at_vertex(v));
  auto sorter = [&q](std::vector<Path>& ps) {
    std::sort(ps.begin(), ps.end(),
              [&q](const Path& a, const Path& b) { return path_less(q, a, b); });
  };
  sorter(frontier);
  out = frontier;
  std::vector<Path> level;
  for (int a = 0; a < (int)q.arrows().size(); ++a) level.push_back(Path::of_arrow(a));
  sorter(level);
  for (int len = 1; len <= L && !level.empty(); ++len) {
    out.insert(out.end(), level.begin(), level.end());
    std::vector<Path> next;
    for (const auto& p : level) {
      int t = path_target(q, p);
      for (int a = 0; a < (int)q.arrows().size(); ++a) {
        if (q.vertex_index(q.arrows()[a].src) == t) {
          Path np = p;
          np.arrows.push_back(a);
          next.push_back(np);
        }
      }
    }
    sorter(next);
    level = std::move(next);
  }
  return out;
}

QuiverPtr parse_quiver_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw CycError(std::string("quiver JSON: ") + e.what());
  }
  if (!j.is_object()) throw CycError("quiver JSON: top level must be an object");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw CycError("quiver JSON: 'vertices' must be an array of ids");
  std::vector<std::string> vertices;
  for (size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    if (!v.is_string())
      throw CycError("quiver JSON: vertices[" + std::to_string(i) + "] must be a string");
    vertices.push_back(v.get<std::string>());
  }
  if (vertices.empty()) throw CycError("quiver JSON: vertices must be nonempty (unit undefined)");
  std::vector<Arrow> arrows;
  if (j.contains("arrows")) {
    if (!j["arrows"].is_array()) throw CycError("quiver JSON: 'arrows' must be an array");
    for (size_t i = 0; i < j["arrows"].size(); ++i) {
      const auto& a = j["arrows"][i];
      std::string where = "quiver JSON: arrows[" + std::to_string(i) + "]";
      if (!a.is_object()) throw CycError(where + " must be an object");
      for (const char* k : {"id", "src", "tgt"}) {
        if (!a.contains(k) || !a[k].is_string())
          throw CycError(where + "." + k + " must be a string");
      }
      arrows.push_back({a["id"].get<std::string>(), a["src"].get<std::string>(),
                        a["tgt"].get<std::string>()});
    }
  }
  auto q = std::make_shared<const Quiver>(std::move(vertices), std::move(arrows));
  for (const auto& a : q->arrows()) {
    if (q->vertex_index(a.src) < 0)
      throw CycError("quiver JSON: arrow '" + a.id + "' references unknown vertex '" + a.src + "'");
    if (q->vertex_index(a.tgt) < 0)
      throw CycError("quiver JSON: arrow '" + a.id + "' references unknown vertex '" + a.tgt + "'");
  }
  return q;
}

std::string quiver_to_json(const Quiver& q) {
  nlohmann::json j;
  j["vertices"] = q.vertices();
  j["arrows"] = nlohmann::json::array();
  for (const auto& a : q.arrows())
    j["arrows"].push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  return j.dump(2);
}

std::string export_dot(const Quiver& q, const ZnAction* action) {
  static const char* palette[] = {"lightblue",  "lightpink",  "palegreen",
                                  "khaki",      "lightsalmon", "plum",
                                  "lightcyan",  "wheat",       "lavender",
                                  "mistyrose"};
  std::map<std::string, int> orbit_color;
  if (action) {
    auto orbs = vertex_orbits(*action);
    for (size_t i = 0; i < orbs.size(); ++i)
      for (const auto& v : orbs[i]) orbit_color[v] = (int)(i % 10);
  }
  std::ostringstream os;
  os << "digraph Q {\n";
  for (const auto& v : q.vertices()) {
    os << "  \"" << v << "\"";
    if (action) {
      os << " [style=filled, fillcolor=" << palette[orbit_color[v]] << "]";
    }
    os << ";\n";
  }
  for (const auto& a : q.arrows())
    os << "  \"" << a.src << "\" -> \"" << a.tgt << "\" [label=\"" << a.id << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace hopfq
