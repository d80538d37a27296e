#include <doctest.h>

#include "hopfq/fixtures.hpp"
#include "hopfq/verifier.hpp"

#include <cstdlib>

using namespace hopfq;

namespace {

struct Loaded {
  CycContextPtr ctx;
  QuiverPtr quiver;
  ZnAction action;
  TaftParams params;
};

Loaded load(const std::string& name, int n, bool with_params = true) {
  auto files = fixtures::files(name);
  Loaded out;
  out.ctx = make_context(n);
  out.quiver = parse_quiver_json(files.at("quiver.json"));
  out.action = parse_action_json(out.ctx, *out.quiver, files.at("action.json"));
  if (with_params && files.count("params.json"))
    out.params = parse_params_json(out.ctx, *out.quiver, out.action, files.at("params.json"));
  return out;
}

}  // namespace

TEST_CASE("extension by the split rule") {
  // case (I) with gamma = 1, mu = 1, lambda = 0:
  // x.a12 = a12 - a21, x.a21 = a12 - a21, and on the 2-cycle
  // x.(a12 a21) = -a12 a21 - a21 a12
  auto I = load("sweedler-I", 2, false);
  ZnAction unit_mu(2, {{"1", "2"}, {"2", "1"}},
                   {{"a12", {"a21", CycScalar::one(I.ctx)}},
                    {"a21", {"a12", CycScalar::one(I.ctx)}}});
  TaftParams params;
  params.gamma[orbit_key(unit_mu, "1")] = CycScalar::one(I.ctx);
  auto [spec, rep] = build_action(I.ctx, I.quiver, unit_mu, params);
  REQUIRE(rep.ok());

  OperatorTable table = extend_operators(spec, 2);
  Path cyc{-1, {I.quiver->arrow_index("a12"), I.quiver->arrow_index("a21")}};
  int k = table.index_of(*I.quiver, cyc);
  REQUIRE(k >= 0);
  AlgebraElement expected(I.quiver, I.ctx);
  expected.add_term(cyc, CycScalar::from_int(I.ctx, -1));
  Path cyc2{-1, {I.quiver->arrow_index("a21"), I.quiver->arrow_index("a12")}};
  expected.add_term(cyc2, CycScalar::from_int(I.ctx, -1));
  CHECK(table.x_images[k] == expected);

  // base case: x.e_i comes straight from the generator table
  int ke = table.index_of(*I.quiver, Path::at_vertex(0));
  CHECK(table.x_images[ke] == spec.x_on.vertex("1"));

  // zero parameters make X the zero operator
  auto [zspec, zrep] = build_action(I.ctx, I.quiver, unit_mu, TaftParams{});
  OperatorTable ztab = extend_operators(zspec, 3);
  for (const auto& img : ztab.x_images) CHECK(img.is_zero());
}

TEST_CASE("split consistency") {
  // clean fixtures pass at L = 4
  for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{
           {"sweedler-I", 2}, {"sweedler-VI", 2}, {"z4-K2", 4}, {"ex-7.8", 3}}) {
    auto L = load(name, n);
    auto [spec, rep] = build_action(L.ctx, L.quiver, L.action, L.params);
    REQUIRE(rep.ok());
    OperatorTable table = extend_operators(spec, 4);
    for (const auto& chk : check_split_consistency(table, spec)) {
      if (chk.witness) MESSAGE(name, " ", chk.name, ": ", chk.witness->path);
      CHECK(chk.pass);
    }
  }

  // corrupting x.a by + e_{s(a)} in case (V) is witnessed
  auto V = load("sweedler-V", 2);
  auto [spec, rep] = build_action(V.ctx, V.quiver, V.action, V.params);
  REQUIRE(rep.ok());
  AlgebraElement bump(V.quiver, V.ctx);
  bump.add_term(Path::at_vertex(V.quiver->vertex_index("p1")), CycScalar::one(V.ctx));
  spec.x_on.on_arrow["b11"] = spec.x_on.arrow("b11") + bump;
  OperatorTable table = extend_operators(spec, 2);
  bool failed = false;
  for (const auto& chk : check_split_consistency(table, spec))
    if (!chk.pass) {
      failed = true;
      CHECK(chk.witness.has_value());
    }
  CHECK(failed);
}

TEST_CASE("relations") {
  // vertex orbit with m = n = 3: X^n = 0 on the vertex span for random gamma
  auto ctx = make_context(3);
  auto q = std::make_shared<const Quiver>(std::vector<std::string>{"1", "2", "3"},
                                          std::vector<Arrow>{});
  ZnAction rot(3, {{"1", "2"}, {"2", "3"}, {"3", "1"}}, {});
  for (long g = -3; g <= 3; ++g) {
    TaftParams params;
    if (g != 0) params.gamma["orbit-of:1"] = CycScalar::from_int(ctx, g);
    auto [spec, rep] = build_action(ctx, q, rot, params);
    REQUIRE(rep.ok());
    OperatorTable table = extend_operators(spec, 1);
    for (const auto& chk : check_relations(table, spec)) CHECK(chk.pass);
  }

  // power identity violated: X^n != 0 with a witness
  auto V = load("sweedler-V", 2, false);
  TaftParams bad;
  bad.gamma[orbit_key(V.action, "p1")] = CycScalar::from_int(V.ctx, 2);
  bad.gamma[orbit_key(V.action, "m1")] = CycScalar::one(V.ctx);
  auto [bspec, brep] = build_action(V.ctx, V.quiver, V.action, bad);
  CHECK_FALSE(brep.ok());
  OperatorTable btab = extend_operators(bspec, 2);
  bool xn_failed = false;
  for (const auto& chk : check_relations(btab, bspec)) {
    if (chk.name == "x^n = 0") {
      CHECK_FALSE(chk.pass);
      REQUIRE(chk.witness.has_value());
      xn_failed = true;
    }
  }
  CHECK(xn_failed);

  // broken lambda recurrence: xg = zeta gx fails
  auto VI = load("sweedler-VI", 2);
  TaftParams skew = VI.params;
  skew.lambda["b22"] = CycScalar::from_int(VI.ctx, 7);
  auto [sspec, srep] = build_action(VI.ctx, VI.quiver, VI.action, skew);
  CHECK_FALSE(srep.ok());
  OperatorTable stab = extend_operators(sspec, 2);
  bool comm_failed = false;
  for (const auto& chk : check_relations(stab, sspec))
    if (chk.name == "xg = c gx" && !chk.pass) comm_failed = true;
  CHECK(comm_failed);
}

TEST_CASE("verify_all on the fixture corpus") {
  for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{
           {"sweedler-I", 2}, {"sweedler-II", 2}, {"sweedler-III", 2}, {"sweedler-IV", 2},
           {"sweedler-V", 2}, {"sweedler-VI", 2}, {"z4-K2", 4}, {"ex-3.7", 2},
           {"ex-7.7", 2}, {"ex-7.8", 3}}) {
    auto L = load(name, n);
    auto [spec, rep] = build_action(L.ctx, L.quiver, L.action, L.params);
    for (const auto& i : rep.issues) MESSAGE(name, ": ", i.detail);
    REQUIRE(rep.ok());
    auto vrep = verify_all(spec, default_depth(n));
    for (const auto& chk : vrep.relations) {
      if (chk.witness) MESSAGE(name, " ", chk.name, ": ", chk.witness->path);
      CHECK(chk.pass);
    }
    for (const auto& chk : vrep.splits) CHECK(chk.pass);
  }

  // a random corruption is always caught somewhere
  auto L = load("sweedler-VI", 2);
  auto [spec, rep] = build_action(L.ctx, L.quiver, L.action, L.params);
  spec.x_on.on_arrow["b12"] =
      spec.x_on.arrow("b12").scaled(CycScalar::from_int(L.ctx, 3));
  auto vrep = verify_all(spec, 4);
  CHECK_FALSE(vrep.all_pass());
}

TEST_CASE("sampled ex-7.8 parameters verify at depth 6") {
  auto L = load("ex-7.8", 3, false);
  auto report = parametrize(L.ctx, L.quiver, L.action);
  TaftParams p = sample_params(L.ctx, L.quiver, L.action, report, 2024);
  auto [spec, rep] = build_action(L.ctx, L.quiver, L.action, p);
  REQUIRE(rep.ok());
  auto vrep = verify_all(spec, 6);
  CHECK(vrep.all_pass());
  CHECK(vrep.inner_faithful);
}

TEST_CASE("reports are deterministic and thread-count independent") {
  auto L = load("ex-7.7", 2);
  auto [spec, rep] = build_action(L.ctx, L.quiver, L.action, L.params);
  setenv("HOPFQ_THREADS", "1", 1);
  std::string a = report_to_json(verify_all(spec, 4));
  setenv("HOPFQ_THREADS", "4", 1);
  std::string b = report_to_json(verify_all(spec, 4));
  unsetenv("HOPFQ_THREADS");
  std::string c = report_to_json(verify_all(spec, 4));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("act_generator answers the CLI's act queries") {
  auto I = load("sweedler-I", 2);
  auto [spec, rep] = build_action(I.ctx, I.quiver, I.action, I.params);
  AlgebraElement e1 =
      AlgebraElement::of_path(I.quiver, I.ctx, Path::at_vertex(I.quiver->vertex_index("1")));
  AlgebraElement img = act_generator(spec, "x", e1);
  CHECK(img.to_string() == "-e[1] - e[2]");

  AlgebraElement a12 =
      AlgebraElement::of_path(I.quiver, I.ctx, Path::of_arrow(I.quiver->arrow_index("a12")));
  CHECK(act_generator(spec, "g", a12).to_string() == "2*a21");

  CHECK(act_generator(spec, "x", unit_element(I.quiver, I.ctx)).is_zero());
  CHECK_THROWS_AS(act_generator(spec, "E", e1), CycError);
}
