#include "hopfq/verifier.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <thread>

namespace hopfq {

int worker_threads() {
  if (const char* env = std::getenv("HOPFQ_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : (int)hc;
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  int workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

int default_depth(int n) { return std::min(2 * n, 12); }

int OperatorTable::index_of(const Quiver& q, const Path& p) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), p,
                             [&q](const Path& a, const Path& b) { return path_less(q, a, b); });
  if (it != basis.end() && path_equal(*it, p)) return (int)(it - basis.begin());
  return -1;
}

AlgebraElement OperatorTable::apply(const Quiver& q, const std::vector<AlgebraElement>& images,
                                    const AlgebraElement& e) const {
  AlgebraElement out = e;  // same quiver/ctx
  out = AlgebraElement::zero(e.quiver(), e.context());
  for (const auto& [p, c] : e.terms()) {
    int k = index_of(q, p);
    if (k < 0) throw CycError("operator table: path '" + path_to_string(q, p) + "' beyond depth");
    out = out + images[k].scaled(c);
  }
  return out;
}

AlgebraElement OperatorTable::apply_g(const AlgebraElement& e) const {
  return apply(*e.quiver(), g_images, e);
}

AlgebraElement OperatorTable::apply_x(const AlgebraElement& e) const {
  return apply(*e.quiver(), x_images, e);
}

AlgebraElement apply_grouplike(const GeneratorTable& table, const QuiverPtr& q,
                               const CycContextPtr& ctx, const Path& p) {
  if (p.trivial()) return table.vertex(q->vertices()[p.base]);
  AlgebraElement out = table.arrow(q->arrows()[p.arrows[0]].id);
  for (size_t k = 1; k < p.arrows.size(); ++k)
    out = out * table.arrow(q->arrows()[p.arrows[k]].id);
  return out;
}

AlgebraElement apply_skew(const GeneratorTable& h, const GeneratorTable* left,
                          const GeneratorTable* right, const QuiverPtr& q,
                          const CycContextPtr& ctx, const Path& p) {
  if (p.trivial()) return h.vertex(q->vertices()[p.base]);
  if (p.length() == 1) return h.arrow(q->arrows()[p.arrows[0]].id);
  // h(a rest) = L(a) h(rest) + h(a) R(rest)
  Path first = Path::of_arrow(p.arrows[0]);
  Path rest = p;
  rest.arrows.erase(rest.arrows.begin());
  AlgebraElement first_elem = AlgebraElement::of_path(q, ctx, first);
  AlgebraElement left_first =
      left ? apply_grouplike(*left, q, ctx, first) : first_elem;
  AlgebraElement h_rest = apply_skew(h, left, right, q, ctx, rest);
  AlgebraElement h_first = h.arrow(q->arrows()[p.arrows[0]].id);
  AlgebraElement right_rest =
      right ? apply_grouplike(*right, q, ctx, rest) : AlgebraElement::of_path(q, ctx, rest);
  return left_first * h_rest + h_first * right_rest;
}

AlgebraElement act_generator(const ActionSpec& spec, const std::string& generator,
                             const AlgebraElement& e) {
  AlgebraElement out = AlgebraElement::zero(spec.quiver, spec.ctx);
  for (const auto& [p, c] : e.terms()) {
    AlgebraElement img;
    if (generator == "g")
      img = apply_grouplike(spec.g_on, spec.quiver, spec.ctx, p);
    else if (generator == "x")
      img = apply_skew(spec.x_on, nullptr, &spec.g_on, spec.quiver, spec.ctx, p);
    else
      throw CycError("unknown generator '" + generator + "' for a Taft action");
    out = out + img.scaled(c);
  }
  return out;
}

OperatorTable extend_operators(const ActionSpec& spec, int L) {
  if (L < 1) throw CycError("extend_operators: depth must be >= 1");
  OperatorTable table;
  table.L = L;
  table.basis = enumerate_paths(*spec.quiver, L);
  const int count = (int)table.basis.size();
  table.g_images.resize(count);
  table.x_images.resize(count);

  // by increasing length so that tails are already available
  std::map<int, std::vector<int>> by_length;
  for (int k = 0; k < count; ++k) by_length[table.basis[k].length()].push_back(k);

  for (const auto& [len, idxs] : by_length) {
    parallel_for((int)idxs.size(), [&](int t) {
      int k = idxs[t];
      const Path& p = table.basis[k];
      table.g_images[k] = apply_grouplike(spec.g_on, spec.quiver, spec.ctx, p);
      if (len <= 1) {
        table.x_images[k] = p.trivial()
                                ? spec.x_on.vertex(spec.quiver->vertices()[p.base])
                                : spec.x_on.arrow(spec.quiver->arrows()[p.arrows[0]].id);
      } else {
        // x(a rest) = a x(rest) + x(a) g(rest), using precomputed tails
        Path first = Path::of_arrow(p.arrows[0]);
        Path rest = p;
        rest.arrows.erase(rest.arrows.begin());
        int kr = table.index_of(*spec.quiver, rest);
        AlgebraElement a_elem = AlgebraElement::of_path(spec.quiver, spec.ctx, first);
        AlgebraElement g_rest = apply_grouplike(spec.g_on, spec.quiver, spec.ctx, rest);
        table.x_images[k] =
            a_elem * table.x_images[kr] + spec.x_on.arrow(spec.quiver->arrows()[p.arrows[0]].id) * g_rest;
      }
    });
  }
  return table;
}

namespace {

RelationCheck make_check(const Quiver& q, const std::string& name,
                         const std::vector<std::pair<Path, AlgebraElement>>& residuals) {
  RelationCheck chk;
  chk.name = name;
  for (const auto& [p, r] : residuals) {
    if (!r.is_zero()) {
      chk.pass = false;
      chk.witness = Witness{path_to_string(q, p), r.to_string()};
      break;
    }
  }
  return chk;
}

}  // namespace

std::vector<RelationCheck> check_relations(const OperatorTable& table, const ActionSpec& spec) {
  const Quiver& q = *spec.quiver;
  const int n = spec.action.n();
  const int count = (int)table.basis.size();
  std::vector<RelationCheck> out;

  // G^n = identity
  {
    std::vector<std::pair<Path, AlgebraElement>> residuals(count);
    parallel_for(count, [&](int k) {
      AlgebraElement cur = AlgebraElement::of_path(spec.quiver, spec.ctx, table.basis[k]);
      for (int i = 0; i < n; ++i) cur = table.apply_g(cur);
      residuals[k] = {table.basis[k],
                      cur - AlgebraElement::of_path(spec.quiver, spec.ctx, table.basis[k])};
    });
    out.push_back(make_check(q, "g^n = 1", residuals));
  }
  // X^n = 0
  {
    std::vector<std::pair<Path, AlgebraElement>> residuals(count);
    parallel_for(count, [&](int k) {
      AlgebraElement cur = AlgebraElement::of_path(spec.quiver, spec.ctx, table.basis[k]);
      for (int i = 0; i < n; ++i) cur = table.apply_x(cur);
      residuals[k] = {table.basis[k], cur};
    });
    out.push_back(make_check(q, "x^n = 0", residuals));
  }
  // XG = c GX
  {
    std::vector<std::pair<Path, AlgebraElement>> residuals(count);
    parallel_for(count, [&](int k) {
      AlgebraElement e = AlgebraElement::of_path(spec.quiver, spec.ctx, table.basis[k]);
      AlgebraElement lhs = table.apply_x(table.apply_g(e));
      AlgebraElement rhs = table.apply_g(table.apply_x(e)).scaled(spec.commutation);
      residuals[k] = {table.basis[k], lhs - rhs};
    });
    out.push_back(make_check(q, "xg = c gx", residuals));
  }
  // x.1 = 0
  {
    AlgebraElement sum = AlgebraElement::zero(spec.quiver, spec.ctx);
    for (const auto& v : q.vertices()) sum = sum + spec.x_on.vertex(v);
    RelationCheck chk;
    chk.name = "x.1 = 0";
    if (!sum.is_zero()) {
      chk.pass = false;
      chk.witness = Witness{"1", sum.to_string()};
    }
    out.push_back(std::move(chk));
  }
  return out;
}

std::vector<RelationCheck> check_split_consistency(const OperatorTable& table,
                                                   const ActionSpec& spec) {
  const Quiver& q = *spec.quiver;
  const int count = (int)table.basis.size();
  std::vector<RelationCheck> out;

  // e_i = e_i e_i must reproduce x.e_i through the product rule
  {
    std::vector<std::pair<Path, AlgebraElement>> residuals;
    for (const auto& v : q.vertices()) {
      Path p = Path::at_vertex(q.vertex_index(v));
      AlgebraElement e = AlgebraElement::of_path(spec.quiver, spec.ctx, p);
      AlgebraElement via_product = e * spec.x_on.vertex(v) + spec.x_on.vertex(v) * table.apply_g(e);
      residuals.push_back({p, via_product - spec.x_on.vertex(v)});
    }
    out.push_back(make_check(q, "split: x(e_i e_i) = x(e_i)", residuals));
  }
  // every split point of every basis path, trivial splits included
  {
    std::vector<std::pair<Path, AlgebraElement>> residuals(count);
    parallel_for(count, [&](int k) {
      const Path& p = table.basis[k];
      residuals[k] = {p, AlgebraElement::zero(spec.quiver, spec.ctx)};
      if (p.trivial()) return;
      AlgebraElement xp = table.x_images[k];
      for (int cut = 0; cut <= p.length(); ++cut) {
        Path u, v;
        if (cut == 0)
          u = Path::at_vertex(path_source(q, p));
        else {
          u.base = -1;
          u.arrows.assign(p.arrows.begin(), p.arrows.begin() + cut);
        }
        if (cut == p.length())
          v = Path::at_vertex(path_target(q, p));
        else {
          v.base = -1;
          v.arrows.assign(p.arrows.begin() + cut, p.arrows.end());
        }
        AlgebraElement ue = AlgebraElement::of_path(spec.quiver, spec.ctx, u);
        AlgebraElement xv = table.x_images[table.index_of(q, v)];
        AlgebraElement xu = table.x_images[table.index_of(q, u)];
        AlgebraElement gv = table.g_images[table.index_of(q, v)];
        AlgebraElement recombined = ue * xv + xu * gv;
        AlgebraElement diff = recombined - xp;
        if (!diff.is_zero()) {
          residuals[k] = {p, diff};
          return;
        }
      }
    });
    out.push_back(make_check(q, "split: x(uv) = u x(v) + x(u) g(v)", residuals));
  }
  // filtration preservation
  {
    std::vector<std::pair<Path, AlgebraElement>> residuals(count);
    parallel_for(count, [&](int k) {
      const Path& p = table.basis[k];
      residuals[k] = {p, AlgebraElement::zero(spec.quiver, spec.ctx)};
      if (table.g_images[k].degree() > p.length()) residuals[k] = {p, table.g_images[k]};
      if (table.x_images[k].degree() > p.length()) residuals[k] = {p, table.x_images[k]};
    });
    out.push_back(make_check(q, "filtration preserved", residuals));
  }
  return out;
}

VerificationReport verify_all(const ActionSpec& spec, int L) {
  OperatorTable table = extend_operators(spec, L);
  VerificationReport rep;
  rep.relations = check_relations(table, spec);
  rep.splits = check_split_consistency(table, spec);
  rep.inner_faithful = is_inner_faithful(spec);
  return rep;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::json j;
  auto section = [](const std::vector<RelationCheck>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json e;
      e["name"] = c.name;
      e["status"] = c.pass ? "pass" : "fail";
      if (c.witness) {
        e["witness"] = {{"path", c.witness->path}, {"residual", c.witness->residual}};
      }
      arr.push_back(std::move(e));
    }
    return arr;
  };
  j["relations"] = section(report.relations);
  j["splits"] = section(report.splits);
  j["faithfulness"] = {{"inner_faithful", report.inner_faithful}};
  return j.dump(2);
}

}  // namespace hopfq
