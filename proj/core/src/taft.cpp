#include "hopfq/taft.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace hopfq {

CycScalar TaftParams::gamma_for(const CycContextPtr& ctx, const std::string& key) const {
  auto it = gamma.find(key);
  return it == gamma.end() ? CycScalar::zero(ctx) : it->second;
}

CycScalar TaftParams::lambda_for(const CycContextPtr& ctx, const std::string& arrow_id) const {
  auto it = lambda.find(arrow_id);
  return it == lambda.end() ? CycScalar::zero(ctx) : it->second;
}

const AlgebraElement& GeneratorTable::vertex(const std::string& v) const {
  auto it = on_vertex.find(v);
  if (it == on_vertex.end()) throw CycError("generator table: no entry for vertex '" + v + "'");
  return it->second;
}

const AlgebraElement& GeneratorTable::arrow(const std::string& a) const {
  auto it = on_arrow.find(a);
  if (it == on_arrow.end()) throw CycError("generator table: no entry for arrow '" + a + "'");
  return it->second;
}

std::optional<Path> sigma(const Quiver& q, const ZnAction& act, const std::string& arrow_id) {
  int ai = q.arrow_index(arrow_id);
  if (ai < 0) throw CycError("sigma: unknown arrow '" + arrow_id + "'");
  const Arrow& a = q.arrows()[ai];
  const std::string& u = a.src;
  const std::string& w = act.vertex_image(a.tgt);  // t(g.a)
  if (u == w) return Path::at_vertex(q.vertex_index(u));
  int idx = q.arrow_between(q.vertex_index(u), q.vertex_index(w));
  if (idx < 0) return std::nullopt;
  return Path::of_arrow(idx);
}

std::vector<AlgebraElement> vertex_action(const CycContextPtr& ctx, const QuiverPtr& q,
                                          const std::vector<std::string>& orbit_labels,
                                          int n, const CycScalar& gamma) {
  const int m = (int)orbit_labels.size();
  std::vector<AlgebraElement> out;
  if (m < n && !gamma.is_zero())
    throw CycError("gamma must be 0 on a vertex orbit of size " + std::to_string(m) +
                   " < n = " + std::to_string(n));
  CycScalar zt = zeta(ctx);
  for (int i = 1; i <= m; ++i) {
    AlgebraElement e(q, ctx);
    if (!gamma.is_zero()) {
      CycScalar c = gamma * zt.pow(i);
      e.add_term(Path::at_vertex(q->vertex_index(orbit_labels[i - 1])), c);
      e.add_term(Path::at_vertex(q->vertex_index(orbit_labels[i % m])), -(c * zt));
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

// lambda-slot lookup at grid position (i, j) of a component; missing slot -> 0
CycScalar lambda_at(const CycContextPtr& ctx, const Component& c, const TaftParams& params,
                    int i, int j) {
  int k = c.arrow_at(i, j);
  if (k < 0) return CycScalar::zero(ctx);
  return params.lambda_for(ctx, c.arrows[k].id);
}

int wrap(int v, int m) { return ((v - 1) % m + m) % m + 1; }

}  // namespace

void build_component_action(const CycContextPtr& ctx, const QuiverPtr& q,
                            const ZnAction& act, const Component& c,
                            const TaftParams& params, GeneratorTable& x_out) {
  const int n = act.n();
  CycScalar zt = zeta(ctx);

  CycScalar gamma_src = params.gamma_for(ctx, orbit_key(act, c.src_labels.front()));
  auto src_images = vertex_action(ctx, q, c.src_labels, n, gamma_src);
  for (size_t k = 0; k < c.src_labels.size(); ++k)
    x_out.on_vertex[c.src_labels[k]] = src_images[k];

  CycScalar gamma_tgt = gamma_src;
  if (c.kind == Component::Kind::TypeB) {
    gamma_tgt = params.gamma_for(ctx, orbit_key(act, c.tgt_labels.front()));
    auto tgt_images = vertex_action(ctx, q, c.tgt_labels, n, gamma_tgt);
    for (size_t k = 0; k < c.tgt_labels.size(); ++k)
      x_out.on_vertex[c.tgt_labels[k]] = tgt_images[k];
  }
  if (c.kind == Component::Kind::IsolatedVertices) return;

  // Type A: x.a^i_j = gamma (zeta^j a^i_j - zeta^{i+1} mu_{i,j} a^{i+1}_{j+1})
  //                   + lambda_{i,j} a^i_{j+1}
  // Type B: x.b^i_j = gamma_- zeta^j b^i_j - gamma_+ zeta^{i+1} mu_{i,j}
  //                   b^{i+1}_{j+1} + lambda_{i,j} b^i_{j+1}
  for (const auto& la : c.arrows) {
    AlgebraElement img(q, ctx);
    const CycScalar& diag_gamma = (c.kind == Component::Kind::TypeA) ? gamma_src : gamma_tgt;
    const CycScalar& shift_gamma = gamma_src;
    if (!diag_gamma.is_zero())
      img.add_term(Path::of_arrow(q->arrow_index(la.id)), diag_gamma * zt.pow(la.j));
    if (!shift_gamma.is_zero()) {
      const auto& gim = act.arrow_image(la.id);
      img.add_term(Path::of_arrow(q->arrow_index(gim.image)),
                   -(shift_gamma * zt.pow(la.i + 1) * gim.scale));
    }
    CycScalar lam = params.lambda_for(ctx, la.id);
    if (!lam.is_zero()) {
      auto sg = sigma(*q, act, la.id);
      if (!sg)
        throw CycError("lambda is nonzero on arrow '" + la.id + "' but sigma(a) does not exist");
      img.add_term(*sg, lam);
    }
    x_out.on_arrow[la.id] = std::move(img);
  }
}

ConstraintReport check_constraints(const CycContextPtr& ctx, const QuiverPtr& q,
                                   const ZnAction& act, const Component& c,
                                   const TaftParams& params) {
  ConstraintReport rep;
  const int n = act.n();
  CycScalar zt = zeta(ctx);

  auto gamma_check = [&](const std::vector<std::string>& orbit) {
    if ((int)orbit.size() < n) {
      CycScalar g = params.gamma_for(ctx, orbit_key(act, orbit.front()));
      if (!g.is_zero())
        rep.issues.push_back({"gamma-short-orbit",
                              "gamma on orbit of '" + orbit.front() + "' (size " +
                                  std::to_string(orbit.size()) + " < n) must be 0, got " +
                                  format_scalar(g)});
    }
  };
  gamma_check(c.src_labels);
  if (c.kind == Component::Kind::TypeB) gamma_check(c.tgt_labels);
  if (c.kind == Component::Kind::IsolatedVertices) return rep;

  // Type A diagonal slots, supplied as e[v] keys, must be zero.
  if (c.kind == Component::Kind::TypeA) {
    for (const auto& v : c.src_labels) {
      auto it = params.diagonal_lambda.find(v);
      if (it != params.diagonal_lambda.end() && !it->second.is_zero())
        rep.issues.push_back({"lambda-diagonal", "lambda at the diagonal slot e[" + v +
                                                     "] must be 0, got " +
                                                     format_scalar(it->second)});
    }
  }

  for (const auto& la : c.arrows) {
    CycScalar lam = params.lambda_for(ctx, la.id);
    auto sg = sigma(*q, act, la.id);
    if (!sg && !lam.is_zero()) {
      rep.issues.push_back({"lambda-no-sigma-target",
                            "lambda on arrow '" + la.id + "' (slot (" + std::to_string(la.i) +
                                "," + std::to_string(la.j) + ")) must be 0: sigma target missing"});
      continue;
    }
    // mu orbit product (also enforced by validate_action)
    {
      CycScalar prod = CycScalar::one(ctx);
      std::string cur = la.id;
      for (int k = 0; k < n; ++k) {
        const auto& im = act.arrow_image(cur);
        prod = prod * im.scale;
        cur = im.image;
      }
      if (!prod.is_one())
        rep.issues.push_back({"mu-product", "mu orbit product at arrow '" + la.id +
                                                "' is " + format_scalar(prod)});
    }
    if (sg) {
      // recurrence: lambda_{i+1,j+1} mu_{i,j} = zeta lambda_{i,j} mu_{i,j+1}
      const auto& gim = act.arrow_image(la.id);
      CycScalar lam_next = params.lambda_for(ctx, gim.image);
      CycScalar mu_sigma = sg->trivial() ? CycScalar::one(ctx)
                                         : act.arrow_image(q->arrows()[sg->arrows[0]].id).scale;
      if (lam_next * gim.scale != zt * lam * mu_sigma)
        rep.issues.push_back(
            {"lambda-recurrence",
             "at arrow '" + la.id + "' (slot (" + std::to_string(la.i) + "," +
                 std::to_string(la.j) + ")): lambda(g.a)*mu(a) = " +
                 format_scalar(lam_next * gim.scale) + " but zeta*lambda(a)*mu(sigma a) = " +
                 format_scalar(zt * lam * mu_sigma)});
    }
  }

  if (c.kind == Component::Kind::TypeB) {
    // power identity (gamma_+)^n = (gamma_-)^n + prod_l lambda_{i,j+l}, every (i,j)
    CycScalar gp = params.gamma_for(ctx, orbit_key(act, c.src_labels.front()));
    CycScalar gm = params.gamma_for(ctx, orbit_key(act, c.tgt_labels.front()));
    for (const auto& la : c.arrows) {
      CycScalar prod = CycScalar::one(ctx);
      for (int l = 0; l < n; ++l) prod = prod * lambda_at(ctx, c, params, la.i, wrap(la.j + l, c.m_prime()));
      if (gp.pow(n) != gm.pow(n) + prod)
        rep.issues.push_back(
            {"power-identity", "at slot (" + std::to_string(la.i) + "," + std::to_string(la.j) +
                                   "): (gamma+)^n = " + format_scalar(gp.pow(n)) +
                                   " but (gamma-)^n + prod lambda = " +
                                   format_scalar(gm.pow(n) + prod)});
    }
  }
  return rep;
}

std::pair<ActionSpec, ConstraintReport> build_action(const CycContextPtr& ctx,
                                                     const QuiverPtr& q,
                                                     const ZnAction& act,
                                                     const TaftParams& params) {
  ActionSpec spec;
  spec.ctx = ctx;
  spec.quiver = q;
  spec.action = act;
  spec.params = params;
  spec.commutation = zeta(ctx);

  for (const auto& v : q->vertices()) {
    AlgebraElement img(q, ctx);
    img.add_term(Path::at_vertex(q->vertex_index(act.vertex_image(v))), CycScalar::one(ctx));
    spec.g_on.on_vertex[v] = std::move(img);
  }
  for (const auto& a : q->arrows()) {
    const auto& im = act.arrow_image(a.id);
    AlgebraElement img(q, ctx);
    img.add_term(Path::of_arrow(q->arrow_index(im.image)), im.scale);
    spec.g_on.on_arrow[a.id] = std::move(img);
  }

  ConstraintReport all;
  for (const auto& c : decompose_components(*q, act)) {
    auto rep = check_constraints(ctx, q, act, c, params);
    all.issues.insert(all.issues.end(), rep.issues.begin(), rep.issues.end());
    build_component_action(ctx, q, act, c, params, spec.x_on);
  }
  return {std::move(spec), std::move(all)};
}

namespace {

// gamma of an orbit read back from the x table (coefficient of e_{v1} in
// x.e_{v1} is gamma * zeta^1 under canonical labels; 0 on short orbits).
CycScalar extract_gamma(const ActionSpec& spec, const std::vector<std::string>& orbit) {
  if ((int)orbit.size() < spec.action.n()) return CycScalar::zero(spec.ctx);
  const AlgebraElement& img = spec.x_on.vertex(orbit.front());
  CycScalar c = img.coefficient(Path::at_vertex(spec.quiver->vertex_index(orbit.front())));
  return c * zeta(spec.ctx).inverse();
}

}  // namespace

ActionFragment restrict_to_component(const ActionSpec& spec, const Component& c) {
  ActionFragment f;
  f.component = c;
  f.gamma_src = extract_gamma(spec, c.src_labels);
  if (c.kind == Component::Kind::TypeB) f.gamma_tgt = extract_gamma(spec, c.tgt_labels);
  for (const auto& v : c.src_labels) f.x_on.on_vertex[v] = spec.x_on.vertex(v);
  if (c.kind == Component::Kind::TypeB)
    for (const auto& v : c.tgt_labels) f.x_on.on_vertex[v] = spec.x_on.vertex(v);
  for (const auto& la : c.arrows) f.x_on.on_arrow[la.id] = spec.x_on.arrow(la.id);
  return f;
}

ActionSpec glue(const CycContextPtr& ctx, const QuiverPtr& q, const ZnAction& act,
                const std::vector<ActionFragment>& fragments) {
  auto comps = decompose_components(*q, act);
  if (fragments.size() != comps.size())
    throw CycError("glue: expected " + std::to_string(comps.size()) + " fragments, got " +
                   std::to_string(fragments.size()));
  // every component covered exactly once
  std::set<std::string> covered;
  for (const auto& f : fragments) {
    std::string key = f.component.describe();
    if (!covered.insert(key).second)
      throw CycError("glue: component " + key + " supplied twice");
  }
  for (const auto& c : comps)
    if (!covered.count(c.describe()))
      throw CycError("glue: component " + c.describe() + " not covered");

  // compatibility: equal gamma on shared orbits
  std::map<std::string, std::pair<CycScalar, std::string>> seen;  // orbit key -> (gamma, where)
  auto check_gamma = [&](const std::string& orbit_vertex, const CycScalar& g,
                         const std::string& where) {
    std::string key = orbit_key(act, orbit_vertex);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, std::make_pair(g, where));
    } else if (!(it->second.first == g)) {
      throw CycError("gluing error: incompatible gamma on " + key + ": " +
                     format_scalar(it->second.first) + " (from " + it->second.second + ") vs " +
                     format_scalar(g) + " (from " + where + ")");
    }
  };
  for (const auto& f : fragments) {
    if (f.gamma_src) check_gamma(f.component.src_labels.front(), *f.gamma_src, f.component.describe());
    if (f.gamma_tgt) check_gamma(f.component.tgt_labels.front(), *f.gamma_tgt, f.component.describe());
  }

  ActionSpec spec;
  spec.ctx = ctx;
  spec.quiver = q;
  spec.action = act;
  spec.commutation = zeta(ctx);
  for (const auto& v : q->vertices()) {
    AlgebraElement img(q, ctx);
    img.add_term(Path::at_vertex(q->vertex_index(act.vertex_image(v))), CycScalar::one(ctx));
    spec.g_on.on_vertex[v] = std::move(img);
  }
  for (const auto& a : q->arrows()) {
    const auto& im = act.arrow_image(a.id);
    AlgebraElement img(q, ctx);
    img.add_term(Path::of_arrow(q->arrow_index(im.image)), im.scale);
    spec.g_on.on_arrow[a.id] = std::move(img);
  }
  for (const auto& f : fragments) {
    for (const auto& [v, img] : f.x_on.on_vertex) spec.x_on.on_vertex[v] = img;
    for (const auto& [a, img] : f.x_on.on_arrow) spec.x_on.on_arrow[a] = img;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// parametrize

ParamReport parametrize(const CycContextPtr& ctx, const QuiverPtr& q, const ZnAction& act,
                        bool normalize_mu) {
  ParamReport report;
  const int n = act.n();
  CycScalar zt = zeta(ctx);
  report.components = decompose_components(*q, act);

  // gamma symbols per vertex orbit
  auto orbs = vertex_orbits(act);
  std::map<std::string, bool> gamma_free;  // orbit key -> free?
  for (const auto& orb : orbs) {
    std::string sym = "gamma:" + orbit_key(act, orb.front());
    if ((int)orb.size() == n) {
      report.free_symbols.push_back({sym, "gamma"});
      gamma_free[orbit_key(act, orb.front())] = true;
    } else {
      report.forced_zero.push_back({sym, "orbit-size"});
      gamma_free[orbit_key(act, orb.front())] = false;
    }
  }
  // which components share each orbit's gamma
  for (const auto& orb : orbs) {
    GammaSharing share;
    share.symbol = "gamma:" + orbit_key(act, orb.front());
    for (int ci = 0; ci < (int)report.components.size(); ++ci) {
      const auto& c = report.components[ci];
      bool touches = orbit_key(act, c.src_labels.front()) == orbit_key(act, orb.front());
      if (!touches && c.kind == Component::Kind::TypeB)
        touches = orbit_key(act, c.tgt_labels.front()) == orbit_key(act, orb.front());
      if (touches) share.components.push_back(ci);
    }
    report.gamma_sharing.push_back(std::move(share));
  }

  // lambda seeds per <g>-orbit of arrows, with propagation coefficients
  std::map<std::string, std::pair<std::string, CycScalar>> lambda_of;  // arrow -> (seed, coeff)
  std::map<std::string, bool> seed_free;                               // seed arrow -> free?

  for (int ci = 0; ci < (int)report.components.size(); ++ci) {
    const auto& c = report.components[ci];
    std::set<std::string> visited;
    for (const auto& la : c.arrows) {
      if (visited.count(la.id)) continue;
      // walk the g-orbit of this arrow, collecting it in order
      std::vector<std::string> cycle;
      std::string cur = la.id;
      do {
        cycle.push_back(cur);
        visited.insert(cur);
        cur = act.arrow_image(cur).image;
      } while (cur != la.id);
      // seed: the (1, j) representative with smallest j (canonical labels)
      int best = 0;
      auto slot = [&](const std::string& id) {
        for (const auto& x : c.arrows)
          if (x.id == id) return std::make_pair(x.i, x.j);
        throw CycError("internal: arrow not in component");
      };
      for (int k = 1; k < (int)cycle.size(); ++k)
        if (slot(cycle[k]) < slot(cycle[best])) best = k;
      std::rotate(cycle.begin(), cycle.begin() + best, cycle.end());
      const std::string& seed = cycle.front();
      std::string seed_sym = "lambda:" + seed;

      if (!sigma(*q, act, seed)) {
        report.forced_zero.push_back({seed_sym, "no-sigma-target"});
        seed_free[seed] = false;
        for (const auto& id : cycle) lambda_of[id] = {seed, CycScalar::zero(ctx)};
        continue;
      }
      // propagate lambda_{i+1,j+1} = zeta lambda_{i,j} mu_{i,j+1} / mu_{i,j}
      std::vector<CycScalar> coeff{CycScalar::one(ctx)};
      bool closed = true;
      for (int k = 0; k < (int)cycle.size(); ++k) {
        const std::string& id = cycle[k];
        auto sg = sigma(*q, act, id);
        CycScalar mu_a = act.arrow_image(id).scale;
        CycScalar mu_sigma =
            sg->trivial() ? CycScalar::one(ctx)
                          : act.arrow_image(q->arrows()[sg->arrows[0]].id).scale;
        CycScalar next = normalize_mu ? zt * coeff.back()
                                      : zt * coeff.back() * mu_sigma / mu_a;
        if (k + 1 < (int)cycle.size())
          coeff.push_back(next);
        else
          closed = next.is_one();
      }
      if (!closed) {
        report.forced_zero.push_back({seed_sym, "orbit-closure"});
        seed_free[seed] = false;
        for (const auto& id : cycle) lambda_of[id] = {seed, CycScalar::zero(ctx)};
        continue;
      }
      seed_free[seed] = true;
      report.free_symbols.push_back({seed_sym, "lambda"});
      for (int k = 0; k < (int)cycle.size(); ++k) {
        lambda_of[cycle[k]] = {seed, coeff[k]};
        if (k > 0) report.derived.push_back({cycle[k], seed_sym, coeff[k]});
      }
    }
  }

  // residual power identities for Type B components, all (i,j), deduplicated
  for (int ci = 0; ci < (int)report.components.size(); ++ci) {
    const auto& c = report.components[ci];
    if (c.kind != Component::Kind::TypeB) continue;
    std::string kp = orbit_key(act, c.src_labels.front());
    std::string km = orbit_key(act, c.tgt_labels.front());
    std::string gp = gamma_free.at(kp) ? "gamma:" + kp : "";
    std::string gm = gamma_free.at(km) ? "gamma:" + km : "";
    std::vector<ResidualConstraint> found;
    for (const auto& la : c.arrows) {
      ResidualConstraint rc;
      rc.component = ci;
      rc.gamma_plus = gp;
      rc.gamma_minus = gm;
      rc.power = n;
      rc.coefficient = CycScalar::one(ctx);
      bool zero = false;
      for (int l = 0; l < n && !zero; ++l) {
        int j = wrap(la.j + l, c.m_prime());
        int k = c.arrow_at(la.i, j);
        if (k < 0) {
          zero = true;
          break;
        }
        auto it = lambda_of.find(c.arrows[k].id);
        if (it == lambda_of.end() || it->second.second.is_zero()) {
          zero = true;
          break;
        }
        rc.coefficient = rc.coefficient * it->second.second;
        rc.monomial["lambda:" + it->second.first] += 1;
      }
      if (zero) {
        rc.coefficient = CycScalar::zero(ctx);
        rc.monomial.clear();
      }
      if (rc.gamma_plus.empty() && rc.gamma_minus.empty() && rc.coefficient.is_zero())
        continue;  // 0 = 0
      bool dup = false;
      for (const auto& other : found)
        if (other.gamma_plus == rc.gamma_plus && other.gamma_minus == rc.gamma_minus &&
            other.coefficient == rc.coefficient && other.monomial == rc.monomial)
          dup = true;
      if (!dup) found.push_back(std::move(rc));
    }
    for (auto& rc : found) report.residual.push_back(std::move(rc));
  }
  return report;
}

std::string param_report_to_json(const CycContextPtr& ctx, const ParamReport& report) {
  nlohmann::json j;
  j["components"] = nlohmann::json::array();
  for (const auto& c : report.components) j["components"].push_back(c.describe());
  j["free"] = nlohmann::json::array();
  for (const auto& f : report.free_symbols)
    j["free"].push_back({{"symbol", f.symbol}, {"kind", f.kind}});
  j["derived"]["lambdas"] = nlohmann::json::array();
  for (const auto& d : report.derived)
    j["derived"]["lambdas"].push_back({{"arrow", d.arrow},
                                       {"seed", d.seed},
                                       {"coefficient", format_scalar(d.coefficient)}});
  j["derived"]["gamma_sharing"] = nlohmann::json::array();
  for (const auto& s : report.gamma_sharing)
    j["derived"]["gamma_sharing"].push_back({{"symbol", s.symbol}, {"components", s.components}});
  j["forced_zero"] = nlohmann::json::array();
  for (const auto& f : report.forced_zero)
    j["forced_zero"].push_back({{"symbol", f.symbol}, {"reason", f.reason}});
  j["residual_constraints"] = nlohmann::json::array();
  for (const auto& r : report.residual) {
    nlohmann::json rc;
    rc["component"] = r.component;
    rc["gamma_plus"] = r.gamma_plus;
    rc["gamma_minus"] = r.gamma_minus;
    rc["power"] = r.power;
    rc["coefficient"] = format_scalar(r.coefficient);
    rc["monomial"] = nlohmann::json::object();
    for (const auto& [sym, mult] : r.monomial) rc["monomial"][sym] = mult;
    j["residual_constraints"].push_back(std::move(rc));
  }
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// sample_params

namespace {

struct SplitMix64 {
  unsigned long long state;
  unsigned long long next() {
    unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  unsigned long long below(unsigned long long bound) { return next() % bound; }
};

std::vector<CycScalar> sampling_pool(const CycContextPtr& ctx) {
  std::vector<CycScalar> pool;
  for (long v : {1L, -1L, 2L, -2L}) pool.push_back(CycScalar::from_int(ctx, v));
  pool.push_back(CycScalar::from_rational(ctx, Rat(1, 2)));
  pool.push_back(CycScalar::from_rational(ctx, Rat(-1, 2)));
  pool.push_back(root_power(ctx, 1));
  pool.push_back(root_power(ctx, 2));
  pool.push_back(CycScalar::one(ctx) + root_power(ctx, 1));
  return pool;
}

}  // namespace

TaftParams sample_params(const CycContextPtr& ctx, const QuiverPtr& q, const ZnAction& act,
                         const ParamReport& report, unsigned long seed, int max_attempts) {
  auto pool = sampling_pool(ctx);
  CycScalar zt = zeta(ctx);
  const int n = act.n();

  bool has_free_gamma = false;
  for (const auto& f : report.free_symbols)
    if (f.kind == "gamma") has_free_gamma = true;

  // Inner-faithful outcomes are preferred, not required: the residual system
  // can force every gamma to zero even when the quiver action is faithful
  // (a single Type B arrow orbit with 1 < m' < n does this).
  std::optional<TaftParams> fallback;
  int fallback_rank = -1;

  // Solve the tightest constraints first so forced values propagate before
  // looser constraints lock their participants.
  std::vector<int> order(report.residual.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  auto freedom = [&](const ResidualConstraint& rc) {
    int k = (int)rc.monomial.size();
    if (!rc.gamma_plus.empty()) ++k;
    if (!rc.gamma_minus.empty()) ++k;
    return k;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return freedom(report.residual[a]) < freedom(report.residual[b]);
  });

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    SplitMix64 rng{seed * 0x100000001b3ULL + (unsigned long long)attempt + 1};
    std::map<std::string, CycScalar> value;
    std::set<std::string> locked;
    for (const auto& f : report.free_symbols) {
      if (f.kind == "gamma") {
        value[f.symbol] = pool[rng.below(pool.size())];  // nonzero pool
      } else {
        // lambda slots may be zero
        unsigned long long r = rng.below(pool.size() + 1);
        value[f.symbol] = r == pool.size() ? CycScalar::zero(ctx) : pool[r];
      }
    }

    auto eval_gamma_pow = [&](const std::string& sym) {
      if (sym.empty()) return CycScalar::zero(ctx);
      return value.at(sym).pow(n);
    };
    auto eval_monomial = [&](const ResidualConstraint& rc) {
      CycScalar m = rc.coefficient;
      for (const auto& [sym, mult] : rc.monomial) m = m * value.at(sym).pow(mult);
      return m;
    };

    bool ok = true;
    for (int idx : order) {
      const auto& rc = report.residual[idx];
      auto satisfied = [&]() {
        return eval_gamma_pow(rc.gamma_plus) == eval_gamma_pow(rc.gamma_minus) + eval_monomial(rc);
      };
      auto lock_participants = [&]() {
        if (!rc.gamma_plus.empty()) locked.insert(rc.gamma_plus);
        if (!rc.gamma_minus.empty()) locked.insert(rc.gamma_minus);
        for (const auto& [sym, mult] : rc.monomial) locked.insert(sym);
      };
      if (satisfied()) {
        lock_participants();
        continue;
      }
      bool repaired = false;
      // (a) divide through a multiplicity-1 unlocked lambda seed
      for (const auto& [sym, mult] : rc.monomial) {
        if (mult != 1 || locked.count(sym)) continue;
        CycScalar rest = rc.coefficient;
        bool rest_ok = true;
        for (const auto& [s2, m2] : rc.monomial) {
          if (s2 == sym) continue;
          CycScalar v = value.at(s2).pow(m2);
          if (v.is_zero()) {
            rest_ok = false;
            break;
          }
          rest = rest * v;
        }
        if (!rest_ok || rest.is_zero()) continue;
        value[sym] = (eval_gamma_pow(rc.gamma_plus) - eval_gamma_pow(rc.gamma_minus)) / rest;
        repaired = true;
        break;
      }
      // (b) single unlocked seed of multiplicity k: k-th root
      if (!repaired && rc.monomial.size() == 1 && !rc.coefficient.is_zero()) {
        const auto& [sym, mult] = *rc.monomial.begin();
        if (!locked.count(sym)) {
          CycScalar target =
              (eval_gamma_pow(rc.gamma_plus) - eval_gamma_pow(rc.gamma_minus)) / rc.coefficient;
          CycScalar root;
          if (kth_root_in_pool(target, mult, root)) {
            value[sym] = root;
            repaired = true;
          }
        }
      }
      // (c)/(d) solve a gamma side
      auto solve_gamma = [&](const std::string& sym, const CycScalar& rhs_pow) {
        if (sym.empty() || locked.count(sym)) return false;
        if (rhs_pow.is_zero()) {
          value[sym] = CycScalar::zero(ctx);
          return true;
        }
        CycScalar root;
        if (!kth_root_in_pool(rhs_pow, n, root)) return false;
        // zeta^k twist keeps the n-th power fixed and adds variety
        value[sym] = root * zt.pow((long)rng.below((unsigned long long)n));
        return true;
      };
      if (!repaired) {
        CycScalar mono = eval_monomial(rc);
        if (!rc.gamma_plus.empty() && !locked.count(rc.gamma_plus) && mono.is_zero() &&
            !rc.gamma_minus.empty()) {
          // gamma_+ := zeta^k gamma_-
          value[rc.gamma_plus] = value.at(rc.gamma_minus) * zt.pow((long)rng.below((unsigned long long)n));
          repaired = true;
        }
        if (!repaired) repaired = solve_gamma(rc.gamma_plus, eval_gamma_pow(rc.gamma_minus) + mono);
        if (!repaired) repaired = solve_gamma(rc.gamma_minus, eval_gamma_pow(rc.gamma_plus) - mono);
      }
      if (!repaired || !satisfied()) {
        ok = false;
        break;
      }
      lock_participants();
    }
    if (!ok) continue;
    for (const auto& rc : report.residual) {
      if (!(eval_gamma_pow(rc.gamma_plus) == eval_gamma_pow(rc.gamma_minus) + eval_monomial(rc))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    TaftParams params;
    bool gamma_nonzero = false, lambda_nonzero = false;
    for (const auto& f : report.free_symbols) {
      const CycScalar& v = value.at(f.symbol);
      if (v.is_zero()) continue;
      if (f.kind == "gamma") {
        params.gamma[f.symbol.substr(6)] = v;  // strip "gamma:"
        gamma_nonzero = true;
      } else {
        params.lambda[f.symbol.substr(7)] = v;  // strip "lambda:"
        lambda_nonzero = true;
      }
    }
    for (const auto& d : report.derived) {
      CycScalar v = value.at(d.seed) * d.coefficient;
      if (!v.is_zero()) params.lambda[d.arrow] = v;
    }
    if (gamma_nonzero || !has_free_gamma) return params;
    int rank = lambda_nonzero ? 1 : 0;
    if (rank > fallback_rank) {
      fallback_rank = rank;
      fallback = std::move(params);
    }
  }
  if (fallback) return *fallback;
  throw CycError("sample_params: no satisfying assignment found within " +
                 std::to_string(max_attempts) + " attempts");
}

// ---------------------------------------------------------------------------
// opposite action, inner faithfulness

namespace {

// g^{-1} applied to an element of kQ
AlgebraElement apply_g_inverse(const ActionSpec& spec, const AlgebraElement& e) {
  const Quiver& q = *spec.quiver;
  AlgebraElement out(spec.quiver, spec.ctx);
  for (const auto& [p, c] : e.terms()) {
    if (p.trivial()) {
      std::string v = spec.action.vertex_preimage(q.vertices()[p.base]);
      out.add_term(Path::at_vertex(q.vertex_index(v)), c);
      continue;
    }
    CycScalar coeff = c;
    Path np;
    np.base = -1;
    for (int ai : p.arrows) {
      std::string pre = spec.action.arrow_preimage(q.arrows()[ai].id);
      coeff = coeff / spec.action.arrow_image(pre).scale;
      np.arrows.push_back(q.arrow_index(pre));
    }
    out.add_term(np, coeff);
  }
  return out;
}

// transport an element of kQ to k(Q^op): reverse every path
AlgebraElement transport_to_opposite(const QuiverPtr& opp, const AlgebraElement& e) {
  AlgebraElement out(opp, e.context());
  for (const auto& [p, c] : e.terms()) {
    Path np = p;
    std::reverse(np.arrows.begin(), np.arrows.end());
    // arrow indices are identical: opposite() preserves arrow order
    out.add_term(np, c);
  }
  return out;
}

}  // namespace

ActionSpec opposite_action(const ActionSpec& spec) {
  ActionSpec out;
  out.ctx = spec.ctx;
  out.quiver = spec.quiver->opposite();
  out.action = spec.action.opposite();
  out.commutation = spec.commutation.inverse();
  out.params = std::nullopt;

  for (const auto& v : spec.quiver->vertices()) {
    AlgebraElement ge(spec.quiver, spec.ctx);
    ge.add_term(Path::at_vertex(spec.quiver->vertex_index(spec.action.vertex_preimage(v))),
                CycScalar::one(spec.ctx));
    out.g_on.on_vertex[v] = transport_to_opposite(out.quiver, ge);
    out.x_on.on_vertex[v] =
        transport_to_opposite(out.quiver, apply_g_inverse(spec, spec.x_on.vertex(v)));
  }
  for (const auto& a : spec.quiver->arrows()) {
    AlgebraElement base(spec.quiver, spec.ctx);
    base.add_term(Path::of_arrow(spec.quiver->arrow_index(a.id)), CycScalar::one(spec.ctx));
    out.g_on.on_arrow[a.id] = transport_to_opposite(out.quiver, apply_g_inverse(spec, base));
    out.x_on.on_arrow[a.id] =
        transport_to_opposite(out.quiver, apply_g_inverse(spec, spec.x_on.arrow(a.id)));
  }
  return out;
}

bool is_inner_faithful(const ActionSpec& spec) {
  for (const auto& [v, img] : spec.x_on.on_vertex)
    if (!img.is_zero()) return true;
  for (const auto& [a, img] : spec.x_on.on_arrow)
    if (!img.is_zero()) return true;
  return false;
}

// ---------------------------------------------------------------------------
// params JSON

TaftParams parse_params_json(const CycContextPtr& ctx, const Quiver& q,
                             const ZnAction& act, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw CycError(std::string("params JSON: ") + e.what());
  }
  TaftParams params;
  if (j.contains("gamma")) {
    if (!j["gamma"].is_object()) throw CycError("params JSON: 'gamma' must be an object");
    for (auto it = j["gamma"].begin(); it != j["gamma"].end(); ++it) {
      std::string key = it.key();
      const std::string prefix = "orbit-of:";
      if (key.rfind(prefix, 0) != 0)
        throw CycError("params JSON: gamma key '" + key + "' must look like 'orbit-of:<vertex>'");
      std::string v = key.substr(prefix.size());
      if (q.vertex_index(v) < 0)
        throw CycError("params JSON: gamma key '" + key + "' names unknown vertex '" + v + "'");
      if (!it.value().is_string())
        throw CycError("params JSON: gamma." + key + " must be a scalar string");
      params.gamma[orbit_key(act, v)] = parse_scalar(ctx, it.value().get<std::string>());
    }
  }
  if (j.contains("lambda")) {
    if (!j["lambda"].is_object()) throw CycError("params JSON: 'lambda' must be an object");
    for (auto it = j["lambda"].begin(); it != j["lambda"].end(); ++it) {
      std::string key = it.key();
      if (!it.value().is_string())
        throw CycError("params JSON: lambda." + key + " must be a scalar string");
      CycScalar v = parse_scalar(ctx, it.value().get<std::string>());
      if (key.size() > 3 && key.rfind("e[", 0) == 0 && key.back() == ']') {
        std::string vertex = key.substr(2, key.size() - 3);
        if (q.vertex_index(vertex) < 0)
          throw CycError("params JSON: lambda key '" + key + "' names unknown vertex");
        params.diagonal_lambda[vertex] = v;
      } else {
        if (q.arrow_index(key) < 0)
          throw CycError("params JSON: lambda key '" + key + "' names unknown arrow");
        params.lambda[key] = v;
      }
    }
  }
  return params;
}

std::string params_to_json(const TaftParams& params) {
  nlohmann::json j;
  j["gamma"] = nlohmann::json::object();
  for (const auto& [k, v] : params.gamma) j["gamma"][k] = format_scalar(v);
  j["lambda"] = nlohmann::json::object();
  for (const auto& [k, v] : params.lambda) j["lambda"][k] = format_scalar(v);
  for (const auto& [vtx, v] : params.diagonal_lambda) j["lambda"]["e[" + vtx + "]"] = format_scalar(v);
  return j.dump(2);
}

}  // namespace hopfq
