#include "hopfq/symmetry.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace hopfq {

const std::string& ZnAction::vertex_image(const std::string& v) const {
  auto it = vertex_perm_.find(v);
  if (it == vertex_perm_.end()) throw CycError("action: no image for vertex '" + v + "'");
  return it->second;
}

const ZnAction::ArrowImage& ZnAction::arrow_image(const std::string& a) const {
  auto it = arrow_map_.find(a);
  if (it == arrow_map_.end()) throw CycError("action: no image for arrow '" + a + "'");
  return it->second;
}

std::string ZnAction::vertex_preimage(const std::string& v) const {
  for (const auto& [from, to] : vertex_perm_)
    if (to == v) return from;
  throw CycError("action: vertex '" + v + "' has no preimage");
}

std::string ZnAction::arrow_preimage(const std::string& a) const {
  for (const auto& [from, img] : arrow_map_)
    if (img.image == a) return from;
  throw CycError("action: arrow '" + a + "' has no preimage");
}

std::string ZnAction::vertex_power(const std::string& v, int k) const {
  std::string cur = v;
  int steps = ((k % n_) + n_) % n_;
  for (int i = 0; i < steps; ++i) cur = vertex_image(cur);
  return cur;
}

ZnAction ZnAction::opposite() const {
  std::map<std::string, std::string> vperm;
  for (const auto& [from, to] : vertex_perm_) vperm[to] = from;
  std::map<std::string, ArrowImage> amap;
  for (const auto& [from, img] : arrow_map_)
    amap[img.image] = ArrowImage{from, img.scale.inverse()};
  return ZnAction(n_, std::move(vperm), std::move(amap));
}

namespace {

template <typename Img>
std::vector<std::vector<std::string>> orbits_of(
    const std::map<std::string, Img>& perm,
    const std::function<std::string(const Img&)>& image_id) {
  std::vector<std::vector<std::string>> out;
  std::set<std::string> seen;
  std::vector<std::string> keys;
  for (const auto& [k, v] : perm) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (const auto& start : keys) {
    if (seen.count(start)) continue;
    // collect cycle, then rotate to start at its smallest member
    std::vector<std::string> cycle;
    std::string cur = start;
    do {
      cycle.push_back(cur);
      seen.insert(cur);
      auto it = perm.find(cur);
      if (it == perm.end()) break;
      cur = image_id(it->second);
    } while (cur != start && !seen.count(cur));
    out.push_back(std::move(cycle));
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> vertex_orbits(const ZnAction& act) {
  return orbits_of<std::string>(act.vertex_perm(),
                                [](const std::string& s) { return s; });
}

std::vector<std::vector<std::string>> arrow_orbits(const ZnAction& act) {
  return orbits_of<ZnAction::ArrowImage>(
      act.arrow_map(), [](const ZnAction::ArrowImage& im) { return im.image; });
}

std::string orbit_key(const ZnAction& act, const std::string& vertex) {
  std::string best = vertex;
  std::string cur = vertex;
  for (int i = 0; i < act.n(); ++i) {
    cur = act.vertex_image(cur);
    if (cur == vertex) break;
    best = std::min(best, cur);
  }
  return "orbit-of:" + best;
}

int action_permutation_order(const Quiver& q, const ZnAction& act) {
  for (int k = 1; k <= act.n(); ++k) {
    bool identity = true;
    for (const auto& v : q.vertices()) {
      if (act.vertex_power(v, k) != v) {
        identity = false;
        break;
      }
    }
    if (identity) {
      for (const auto& a : q.arrows()) {
        std::string cur = a.id;
        for (int i = 0; i < k; ++i) cur = act.arrow_image(cur).image;
        if (cur != a.id) {
          identity = false;
          break;
        }
      }
    }
    if (identity) return k;
  }
  return act.n();
}

bool action_is_faithful(const Quiver& q, const ZnAction& act) {
  return action_permutation_order(q, act) == act.n();
}

ValidationReport validate_action(const Quiver& q, const ZnAction& act) {
  ValidationReport rep;
  if (act.n() < 2) rep.issues.push_back({"order", "action order n must be >= 2"});

  std::set<std::string> vimages, aimages;
  for (const auto& v : q.vertices()) {
    auto it = act.vertex_perm().find(v);
    if (it == act.vertex_perm().end()) {
      rep.issues.push_back({"missing", "no image for vertex '" + v + "'"});
      continue;
    }
    if (q.vertex_index(it->second) < 0)
      rep.issues.push_back({"unknown-vertex", "vertex image '" + it->second + "' is not in the quiver"});
    if (!vimages.insert(it->second).second)
      rep.issues.push_back({"not-bijective", "vertex '" + it->second + "' is the image of two vertices"});
  }
  for (const auto& [v, img] : act.vertex_perm())
    if (q.vertex_index(v) < 0)
      rep.issues.push_back({"unknown-vertex", "vertex_perm mentions unknown vertex '" + v + "'"});

  for (const auto& a : q.arrows()) {
    auto it = act.arrow_map().find(a.id);
    if (it == act.arrow_map().end()) {
      rep.issues.push_back({"missing", "no image for arrow '" + a.id + "'"});
      continue;
    }
    const auto& im = it->second;
    int idx = q.arrow_index(im.image);
    if (idx < 0) {
      rep.issues.push_back({"unknown-arrow", "arrow image '" + im.image + "' is not in the quiver"});
      continue;
    }
    if (!aimages.insert(im.image).second)
      rep.issues.push_back({"not-bijective", "arrow '" + im.image + "' is the image of two arrows"});
    if (im.scale.is_zero())
      rep.issues.push_back({"zero-scale", "arrow '" + a.id + "' has zero scale"});
    // automorphism property: endpoints commute with the permutation
    const Arrow& img = q.arrows()[idx];
    auto sit = act.vertex_perm().find(a.src);
    auto tit = act.vertex_perm().find(a.tgt);
    if (sit != act.vertex_perm().end() && img.src != sit->second)
      rep.issues.push_back({"not-automorphism",
                            "arrow '" + a.id + "': image source '" + img.src +
                                "' != permuted source '" + sit->second + "'"});
    if (tit != act.vertex_perm().end() && img.tgt != tit->second)
      rep.issues.push_back({"not-automorphism",
                            "arrow '" + a.id + "': image target '" + img.tgt +
                                "' != permuted target '" + tit->second + "'"});
  }
  if (!rep.valid()) return rep;

  // order divides n: the n-th iterate is the identity on vertices and arrows
  for (const auto& v : q.vertices())
    if (act.vertex_power(v, act.n()) != v)
      rep.issues.push_back({"order", "vertex '" + v + "': n-th iterate is not the identity"});
  for (const auto& a : q.arrows()) {
    std::string cur = a.id;
    for (int i = 0; i < act.n(); ++i) cur = act.arrow_image(cur).image;
    if (cur != a.id)
      rep.issues.push_back({"order", "arrow '" + a.id + "': n-th iterate is not the identity"});
  }
  if (!rep.valid()) return rep;

  // composite scale over n steps equals 1 around each arrow orbit
  for (const auto& a : q.arrows()) {
    CycScalar prod = CycScalar::one(act.arrow_image(a.id).scale.context());
    std::string cur = a.id;
    for (int i = 0; i < act.n(); ++i) {
      const auto& im = act.arrow_image(cur);
      prod = prod * im.scale;
      cur = im.image;
    }
    if (!prod.is_one())
      rep.issues.push_back({"mu-product",
                            "arrow '" + a.id + "': composite scale over n steps is " +
                                format_scalar(prod) + ", expected 1"});
  }
  return rep;
}

namespace {

// canonical cycle through `start`'s orbit beginning at its smallest member
std::vector<std::string> canonical_orbit(const ZnAction& act, const std::string& v) {
  std::vector<std::string> cycle;
  std::string cur = v;
  do {
    cycle.push_back(cur);
    cur = act.vertex_image(cur);
  } while (cur != v);
  auto smallest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), smallest, cycle.end());
  return cycle;
}

}  // namespace

int Component::arrow_at(int i, int j) const {
  for (int k = 0; k < (int)arrows.size(); ++k)
    if (arrows[k].i == i && arrows[k].j == j) return k;
  return -1;
}

std::string Component::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::TypeA:
      os << "TypeA(m=" << m() << ", orbit " << src_labels.front() << ")";
      break;
    case Kind::TypeB:
      os << "TypeB(m=" << m() << ", m'=" << m_prime() << ", " << src_labels.front()
         << " -> " << tgt_labels.front() << ")";
      break;
    case Kind::IsolatedVertices:
      os << "IsolatedVertices(size=" << m() << ", orbit " << src_labels.front() << ")";
      break;
  }
  return os.str();
}

std::vector<Component> decompose_components(const Quiver& q, const ZnAction& act) {
  auto orbs = vertex_orbits(act);
  std::map<std::string, int> orbit_of;  // vertex -> orbit index
  for (size_t i = 0; i < orbs.size(); ++i)
    for (const auto& v : orbs[i]) orbit_of[v] = (int)i;

  // group arrows by (source orbit, target orbit)
  std::map<std::pair<int, int>, std::vector<std::string>> groups;
  for (const auto& a : q.arrows())
    groups[{orbit_of.at(a.src), orbit_of.at(a.tgt)}].push_back(a.id);

  std::set<int> touched;
  std::vector<Component> out;

  // deterministic order: by smallest source-orbit vertex, Type A first,
  // then by smallest target-orbit vertex
  std::vector<std::pair<std::pair<int, int>, std::vector<std::string>>> ordered(
      groups.begin(), groups.end());
  std::sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
    const auto& [sx, tx] = x.first;
    const auto& [sy, ty] = y.first;
    if (orbs[sx].front() != orbs[sy].front()) return orbs[sx].front() < orbs[sy].front();
    bool ax = sx == tx, ay = sy == ty;
    if (ax != ay) return ax;
    return orbs[tx].front() < orbs[ty].front();
  });

  for (const auto& [key, arrow_ids] : ordered) {
    auto [so, to] = key;
    touched.insert(so);
    touched.insert(to);
    Component c;
    c.src_labels = orbs[so];
    if (so == to) {
      c.kind = Component::Kind::TypeA;
    } else {
      c.kind = Component::Kind::TypeB;
      c.tgt_labels = orbs[to];
    }
    std::map<std::string, int> label;  // vertex -> 1-based label in its row
    for (size_t k = 0; k < c.src_labels.size(); ++k) label[c.src_labels[k]] = (int)k + 1;
    std::map<std::string, int> tlabel;
    if (c.kind == Component::Kind::TypeB)
      for (size_t k = 0; k < c.tgt_labels.size(); ++k) tlabel[c.tgt_labels[k]] = (int)k + 1;
    else
      tlabel = label;
    for (const auto& aid : arrow_ids) {
      const Arrow& a = q.arrows()[q.arrow_index(aid)];
      c.arrows.push_back({aid, label.at(a.src), tlabel.at(a.tgt)});
    }
    std::sort(c.arrows.begin(), c.arrows.end(),
              [](const Component::LabeledArrow& x, const Component::LabeledArrow& y) {
                return std::tie(x.i, x.j) < std::tie(y.i, y.j);
              });
    out.push_back(std::move(c));
  }

  for (size_t i = 0; i < orbs.size(); ++i) {
    if (touched.count((int)i)) continue;
    Component c;
    c.kind = Component::Kind::IsolatedVertices;
    c.src_labels = orbs[i];
    out.push_back(std::move(c));
  }
  return out;
}

Component canonical_labels(const Quiver& q, const ZnAction& act, const Component& c) {
  Component fresh = c;
  fresh.src_labels = canonical_orbit(act, c.src_labels.front());
  if (c.kind == Component::Kind::TypeB)
    fresh.tgt_labels = canonical_orbit(act, c.tgt_labels.front());
  std::map<std::string, int> label, tlabel;
  for (size_t k = 0; k < fresh.src_labels.size(); ++k) label[fresh.src_labels[k]] = (int)k + 1;
  if (c.kind == Component::Kind::TypeB)
    for (size_t k = 0; k < fresh.tgt_labels.size(); ++k) tlabel[fresh.tgt_labels[k]] = (int)k + 1;
  else
    tlabel = label;
  for (auto& la : fresh.arrows) {
    const Arrow& a = q.arrows()[q.arrow_index(la.id)];
    la.i = label.at(a.src);
    la.j = tlabel.at(a.tgt);
  }
  std::sort(fresh.arrows.begin(), fresh.arrows.end(),
            [](const Component::LabeledArrow& x, const Component::LabeledArrow& y) {
              return std::tie(x.i, x.j) < std::tie(y.i, y.j);
            });
  return fresh;
}

MinimalClass classify_minimal(const Quiver& q, const ZnAction& act) {
  auto comps = decompose_components(q, act);
  const Component* arrowed = nullptr;
  int arrow_bearing = 0;
  for (const auto& c : comps) {
    if (c.kind != Component::Kind::IsolatedVertices) {
      ++arrow_bearing;
      arrowed = &c;
    }
  }
  if (arrow_bearing != 1) return {MinimalClass::Kind::NotMinimal, 0, 0};
  size_t covered = arrowed->src_labels.size() + arrowed->tgt_labels.size();
  if (covered != q.vertices().size()) return {MinimalClass::Kind::NotMinimal, 0, 0};
  if (arrowed->kind == Component::Kind::TypeA)
    return {MinimalClass::Kind::TypeA, arrowed->m(), 0};
  return {MinimalClass::Kind::TypeB, arrowed->m(), arrowed->m_prime()};
}

ZnAction parse_action_json(const CycContextPtr& ctx, const Quiver& q,
                           const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw CycError(std::string("action JSON: ") + e.what());
  }
  if (!j.is_object()) throw CycError("action JSON: top level must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw CycError("action JSON: 'n' must be an integer");
  int n = j["n"].get<int>();
  if (n != ctx->n())
    throw CycError("action JSON: n=" + std::to_string(n) + " does not match context n=" +
                   std::to_string(ctx->n()));
  std::map<std::string, std::string> vperm;
  if (!j.contains("vertex_perm") || !j["vertex_perm"].is_object())
    throw CycError("action JSON: 'vertex_perm' must be an object");
  for (auto it = j["vertex_perm"].begin(); it != j["vertex_perm"].end(); ++it) {
    if (!it.value().is_string())
      throw CycError("action JSON: vertex_perm." + it.key() + " must be a string");
    vperm[it.key()] = it.value().get<std::string>();
  }
  std::map<std::string, ZnAction::ArrowImage> amap;
  if (j.contains("arrows")) {
    if (!j["arrows"].is_object()) throw CycError("action JSON: 'arrows' must be an object");
    for (auto it = j["arrows"].begin(); it != j["arrows"].end(); ++it) {
      const auto& entry = it.value();
      std::string where = "action JSON: arrows." + it.key();
      if (!entry.is_object() || !entry.contains("image") || !entry["image"].is_string())
        throw CycError(where + ".image must be a string");
      std::string scale_text = "1";
      if (entry.contains("scale")) {
        if (!entry["scale"].is_string()) throw CycError(where + ".scale must be a scalar string");
        scale_text = entry["scale"].get<std::string>();
      }
      amap[it.key()] = {entry["image"].get<std::string>(), parse_scalar(ctx, scale_text)};
    }
  }
  for (const auto& v : q.vertices())
    if (!vperm.count(v)) throw CycError("action JSON: vertex_perm is missing vertex '" + v + "'");
  for (const auto& a : q.arrows())
    if (!amap.count(a.id)) throw CycError("action JSON: arrows is missing arrow '" + a.id + "'");
  return ZnAction(n, std::move(vperm), std::move(amap));
}

std::string action_to_json(const ZnAction& act) {
  nlohmann::json j;
  j["n"] = act.n();
  j["vertex_perm"] = nlohmann::json::object();
  for (const auto& [v, img] : act.vertex_perm()) j["vertex_perm"][v] = img;
  j["arrows"] = nlohmann::json::object();
  for (const auto& [a, im] : act.arrow_map())
    j["arrows"][a] = {{"image", im.image}, {"scale", format_scalar(im.scale)}};
  return j.dump(2);
}

}  // namespace hopfq
