#include <doctest.h>

#include "hopfq/extensions.hpp"
#include "hopfq/fixtures.hpp"

using namespace hopfq;

namespace {

struct UqLoaded {
  CycContextPtr ctx;
  QuiverPtr quiver;
  ZnAction action;
  UqParams params;
};

UqLoaded load_uq(const std::string& name, int n) {
  auto files = fixtures::files(name);
  UqLoaded out;
  out.ctx = make_context(n);
  out.quiver = parse_quiver_json(files.at("quiver.json"));
  out.action = parse_action_json(out.ctx, *out.quiver, files.at("action.json"));
  out.params = parse_uq_params_json(out.ctx, *out.quiver, out.action, files.at("uq-params.json"));
  return out;
}

CycScalar forced_gammaF(const CycContextPtr& ctx, const CycScalar& gammaE) {
  // -gamma^E gamma^F q^{-1} (q^2-1)^2 = 1
  CycScalar qs = q_root(ctx);
  return -(qs / (qs * qs - CycScalar::one(ctx)).pow(2)) / gammaE;
}

UqLoaded vertices_only(int n) {
  UqLoaded out;
  out.ctx = make_context(n);
  std::vector<std::string> verts;
  std::map<std::string, std::string> perm;
  for (int i = 1; i <= n; ++i) verts.push_back("w" + std::to_string(i));
  for (int i = 1; i <= n; ++i) perm[verts[i - 1]] = verts[i % n];
  out.quiver = std::make_shared<const Quiver>(verts, std::vector<Arrow>{});
  out.action = ZnAction(n, perm, {});
  out.params.gammaE["orbit-of:w1"] = CycScalar::one(out.ctx);
  out.params.gammaF["orbit-of:w1"] = forced_gammaF(out.ctx, CycScalar::one(out.ctx));
  return out;
}

}  // namespace

TEST_CASE("u_q on a vertex orbit") {
  for (int n : {3, 4}) {
    auto L = vertices_only(n);
    auto [spec, rep] = build_uq_action(L.ctx, L.quiver, L.action, L.params);
    for (const auto& i : rep.issues) MESSAGE(i.detail);
    REQUIRE(rep.ok());

    // E.e_i = gamma^E q^{-2i} (e_i - q^{-2} e_{i+1})
    CycScalar qs = q_root(L.ctx);
    AlgebraElement expect(L.quiver, L.ctx);
    expect.add_term(Path::at_vertex(0), qs.pow(-2));
    expect.add_term(Path::at_vertex(1), -qs.pow(-4));
    CHECK(spec.E_on.vertex("w1") == expect);

    auto vrep = verify_uq(spec, 2);
    for (const auto& chk : vrep.relations) {
      if (chk.witness) MESSAGE("n=", n, " ", chk.name, ": ", chk.witness->residual);
      CHECK(chk.pass);
    }
  }
}

TEST_CASE("Ueicond is exactly the EF relation on a size-n orbit") {
  auto L = vertices_only(3);
  // satisfied: verified above; violated: gamma^F = 1
  L.params.gammaF["orbit-of:w1"] = CycScalar::one(L.ctx);
  auto [spec, rep] = build_uq_action(L.ctx, L.quiver, L.action, L.params);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.issues[0].name == "Ueicond");
  auto vrep = verify_uq(spec, 2);
  bool ef_failed = false;
  for (const auto& chk : vrep.relations) {
    if (chk.name.rfind("EF", 0) == 0 && !chk.pass) {
      ef_failed = true;
      REQUIRE(chk.witness.has_value());
      // witnessed on a vertex
      CHECK(chk.witness->path.rfind("e[", 0) == 0);
    }
  }
  CHECK(ef_failed);
}

TEST_CASE("short orbits factor through the quotient") {
  // n = 4 with an orbit of size 2: E and F act by 0 there
  auto ctx = make_context(4);
  auto q = std::make_shared<const Quiver>(std::vector<std::string>{"u1", "u2"},
                                          std::vector<Arrow>{});
  ZnAction swp(4, {{"u1", "u2"}, {"u2", "u1"}}, {});
  auto [spec, rep] = build_uq_action(ctx, q, swp, UqParams{});
  REQUIRE(rep.ok());
  CHECK(spec.E_on.vertex("u1").is_zero());
  CHECK(spec.F_on.vertex("u1").is_zero());
  auto vrep = verify_uq(spec, 1);
  for (const auto& chk : vrep.relations) CHECK(chk.pass);

  // nonzero gamma on a short orbit is rejected
  UqParams bad;
  bad.gammaE["orbit-of:u1"] = CycScalar::one(ctx);
  CHECK_THROWS_AS(build_uq_action(ctx, q, swp, bad), CycError);

  // an orbit size not in {1, 2, n} admits no action at all
  auto ctx6 = make_context(6);
  auto q3 = std::make_shared<const Quiver>(std::vector<std::string>{"u1", "u2", "u3"},
                                           std::vector<Arrow>{});
  ZnAction rot3(6, {{"u1", "u2"}, {"u2", "u3"}, {"u3", "u1"}}, {});
  CHECK_THROWS_AS(build_uq_action(ctx6, q3, rot3, UqParams{}), CycError);
}

TEST_CASE("u_q on the full K_3 and K_4") {
  auto L = load_uq("uq-K3", 3);
  auto [spec, rep] = build_uq_action(L.ctx, L.quiver, L.action, L.params);
  for (const auto& i : rep.issues) MESSAGE(i.detail);
  REQUIRE(rep.ok());
  auto vrep = verify_uq(spec, 4);
  for (const auto& chk : vrep.relations) {
    if (chk.witness) MESSAGE(chk.name, " at ", chk.witness->path, ": ", chk.witness->residual);
    CHECK(chk.pass);
  }

  // restricting to the Borel pair <K, E> is a Taft action
  ActionSpec borel = borel_taft_spec(spec);
  auto trep = verify_all(borel, 3);
  for (const auto& chk : trep.relations) CHECK(chk.pass);
  for (const auto& chk : trep.splits) CHECK(chk.pass);

  // K_4 with lambda^E seeded on every off-diagonal
  auto ctx4 = make_context(4);
  std::vector<std::string> verts{"v1", "v2", "v3", "v4"};
  std::vector<Arrow> arrows;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      if (i != j)
        arrows.push_back({"a" + std::to_string(i) + std::to_string(j), "v" + std::to_string(i),
                          "v" + std::to_string(j)});
  auto k4 = std::make_shared<const Quiver>(verts, arrows);
  std::map<std::string, std::string> perm{{"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v4", "v1"}};
  std::map<std::string, ZnAction::ArrowImage> amap;
  for (const auto& a : arrows) {
    int i = a.id[1] - '0', j = a.id[2] - '0';
    int i2 = i % 4 + 1, j2 = j % 4 + 1;
    amap[a.id] = {"a" + std::to_string(i2) + std::to_string(j2), CycScalar::one(ctx4)};
  }
  ZnAction rot4(4, perm, amap);
  UqParams p4;
  p4.gammaE["orbit-of:v1"] = CycScalar::one(ctx4);
  p4.gammaF["orbit-of:v1"] = forced_gammaF(ctx4, CycScalar::one(ctx4));
  CycScalar qs4 = q_root(ctx4);
  // seeds lambda^E_{1,j} = 1, propagated by lambda^E_{i+1,j+1} = q^{-2} lambda^E_{i,j}
  for (const auto& a : arrows) {
    int i = a.id[1] - '0';
    p4.lambdaE[a.id] = qs4.pow(-2 * (i - 1));
  }
  auto [spec4, rep4] = build_uq_action(ctx4, k4, rot4, p4);
  for (const auto& i : rep4.issues) MESSAGE(i.detail);
  REQUIRE(rep4.ok());
  auto vrep4 = verify_uq(spec4, 4);
  for (const auto& chk : vrep4.relations) {
    if (chk.witness) MESSAGE(chk.name, " at ", chk.witness->path);
    CHECK(chk.pass);
  }
}

TEST_CASE("u_q rejects mu != 1 and flags a broken coupling") {
  auto L = load_uq("uq-K3", 3);
  // twist one arrow orbit's scales: mu = (2, 1, 1/2)
  ZnAction twisted = L.action;
  auto amap = twisted.arrow_map();
  amap["a12"].scale = CycScalar::from_int(L.ctx, 2);
  amap["a23"].scale = CycScalar::one(L.ctx);
  amap["a31"].scale = CycScalar::from_rational(L.ctx, Rat(1, 2));
  twisted = ZnAction(3, twisted.vertex_perm(), amap);
  REQUIRE(validate_action(*L.quiver, twisted).valid());
  CHECK_THROWS_WITH_AS(build_uq_action(L.ctx, L.quiver, twisted, L.params),
                       doctest::Contains("mu = 1"), CycError);

  // lambda^F violating the EF coupling
  UqParams coupled = L.params;
  CycScalar qs = q_root(L.ctx);
  coupled.lambdaF["a12"] = CycScalar::one(L.ctx);
  coupled.lambdaF["a23"] = qs.pow(2);
  coupled.lambdaF["a31"] = qs.pow(4);
  coupled.lambdaF["a13"] = CycScalar::one(L.ctx);
  coupled.lambdaF["a21"] = qs.pow(2);
  coupled.lambdaF["a32"] = qs.pow(4);
  auto [spec, rep] = build_uq_action(L.ctx, L.quiver, L.action, coupled);
  bool coupling = false;
  for (const auto& i : rep.issues) coupling = coupling || i.name == "lambdaEF-coupling";
  CHECK(coupling);
  auto vrep = verify_uq(spec, 3);
  bool ef_failed = false;
  for (const auto& chk : vrep.relations)
    if (chk.name.rfind("EF", 0) == 0 && !chk.pass) ef_failed = true;
  CHECK(ef_failed);
}

namespace {

struct DoubleLoaded {
  CycContextPtr ctx;
  QuiverPtr quiver;
  ZnAction act_g;
  ZnAction act_G;
  DoubleParams params;
};

DoubleLoaded load_double_k3() {
  auto files = fixtures::files("double-K3");
  DoubleLoaded out;
  out.ctx = make_context(3);
  out.quiver = parse_quiver_json(files.at("quiver.json"));
  out.act_g = parse_action_json(out.ctx, *out.quiver, files.at("action.json"));
  out.act_G = parse_action_json(out.ctx, *out.quiver, files.at("action2.json"));
  out.params =
      parse_double_params_json(out.ctx, *out.quiver, out.act_g, files.at("double-params.json"));
  return out;
}

DoubleLoaded double_k2() {
  DoubleLoaded out;
  out.ctx = make_context(2);
  out.quiver = std::make_shared<const Quiver>(
      std::vector<std::string>{"1", "2"},
      std::vector<Arrow>{{"a12", "1", "2"}, {"a21", "2", "1"}});
  CycScalar two = CycScalar::from_int(out.ctx, 2);
  out.act_g = ZnAction(2, {{"1", "2"}, {"2", "1"}},
                       {{"a12", {"a21", two}}, {"a21", {"a12", two.inverse()}}});
  out.act_G = out.act_g;
  out.params.gammax["orbit-of:1"] = CycScalar::one(out.ctx);
  out.params.gammaX["orbit-of:1"] = CycScalar::one(out.ctx);
  out.params.lambdax["a12"] = CycScalar::one(out.ctx);
  out.params.lambdax["a21"] = CycScalar::from_rational(out.ctx, Rat(-1, 2));
  out.params.lambdaX["a12"] = CycScalar::one(out.ctx);
  out.params.lambdaX["a21"] = CycScalar::from_rational(out.ctx, Rat(-1, 2));
  return out;
}

}  // namespace

TEST_CASE("D(T(n)) vertices") {
  auto L = load_double_k3();
  auto [spec, rep] = build_double_action(L.ctx, L.quiver, L.act_g, L.act_G, L.params);
  for (const auto& i : rep.issues) MESSAGE(i.detail);
  REQUIRE(rep.ok());
  // X.e_i = gamma^X zeta^{-i} (e_i - zeta^{-1} e_{i+1})
  CycScalar zt = zeta(L.ctx);
  CycScalar gX = L.params.gammaX_for(L.ctx, "orbit-of:v1");
  AlgebraElement expect(L.quiver, L.ctx);
  expect.add_term(Path::at_vertex(0), gX * zt.inverse());
  expect.add_term(Path::at_vertex(1), -(gX * zt.pow(-2)));
  CHECK(spec.X_on.vertex("v1") == expect);

  // gamma^x = 1 forces gamma^X = (1 - zeta^{-1})^{-1} when n >= 3
  DoubleParams bad = L.params;
  bad.gammaX["orbit-of:v1"] = CycScalar::one(L.ctx);
  auto [spec2, rep2] = build_double_action(L.ctx, L.quiver, L.act_g, L.act_G, bad);
  bool deicond = false;
  for (const auto& i : rep2.issues) deicond = deicond || i.name == "Deicond";
  CHECK(deicond);
}

TEST_CASE("D(T(n)) full relation suite for n = 2 and 3") {
  auto L2 = double_k2();
  auto [spec2, rep2] = build_double_action(L2.ctx, L2.quiver, L2.act_g, L2.act_G, L2.params);
  for (const auto& i : rep2.issues) MESSAGE(i.detail);
  REQUIRE(rep2.ok());
  auto vrep2 = verify_double(spec2, 4);
  for (const auto& chk : vrep2.relations) {
    if (chk.witness) MESSAGE("n=2 ", chk.name, " at ", chk.witness->path, ": ",
                             chk.witness->residual);
    CHECK(chk.pass);
  }

  auto L3 = load_double_k3();
  auto [spec3, rep3] = build_double_action(L3.ctx, L3.quiver, L3.act_g, L3.act_G, L3.params);
  for (const auto& i : rep3.issues) MESSAGE(i.detail);
  REQUIRE(rep3.ok());
  auto vrep3 = verify_double(spec3, 3);
  for (const auto& chk : vrep3.relations) {
    if (chk.witness) MESSAGE("n=3 ", chk.name, " at ", chk.witness->path, ": ",
                             chk.witness->residual);
    CHECK(chk.pass);
  }

  // the two Taft restrictions verify with commutation zeta and zeta^{-1}
  auto upper = double_taft_spec(spec3, true);
  auto lower = double_taft_spec(spec3, false);
  CHECK(verify_all(upper, 3).all_pass());
  CHECK(verify_all(lower, 3).all_pass());
}

TEST_CASE("each broken double bullet is witnessed") {
  // broken lambda coupling: scale one lambda^X g-orbit by 2
  {
    auto L = load_double_k3();
    DoubleParams p = L.params;
    for (const char* id : {"a12", "a23", "a31"})
      p.lambdaX[id] = p.lambdaX[id] * CycScalar::from_int(L.ctx, 2);
    auto [spec, rep] = build_double_action(L.ctx, L.quiver, L.act_g, L.act_G, p);
    bool coupling = false;
    for (const auto& i : rep.issues) coupling = coupling || i.name == "lambda-coupling";
    CHECK(coupling);
    auto vrep = verify_double(spec, 2);
    for (const auto& chk : vrep.relations) {
      if (chk.name.rfind("xX", 0) == 0) {
        CHECK_FALSE(chk.pass);
        REQUIRE(chk.witness.has_value());
        CHECK(chk.witness->path.rfind("e[", 0) != 0);  // an arrow, not a vertex
      }
    }
  }
  // mu commutation: ratios must be constant along the g-orbit
  {
    auto L = double_k2();
    auto amap = L.act_G.arrow_map();
    amap["a12"].scale = CycScalar::from_int(L.ctx, 3);
    amap["a21"].scale = CycScalar::from_rational(L.ctx, Rat(1, 3));
    ZnAction actG(2, L.act_G.vertex_perm(), amap);
    DoubleParams p;
    p.gammax["orbit-of:1"] = CycScalar::one(L.ctx);
    p.gammaX["orbit-of:1"] = CycScalar::one(L.ctx);
    auto [spec, rep] = build_double_action(L.ctx, L.quiver, L.act_g, actG, p);
    bool mu = false;
    for (const auto& i : rep.issues) mu = mu || i.name == "mu-commutation";
    CHECK(mu);
    auto vrep = verify_double(spec, 2);
    bool gG_failed = false;
    for (const auto& chk : vrep.relations)
      if (chk.name == "gG = Gg" && !chk.pass) gG_failed = true;
    CHECK(gG_failed);
  }
  // the printed form of the second lambda^X recurrence contradicts GX = zeta XG:
  // propagating lambda^X forward by zeta (instead of zeta^{-1}) must fail
  {
    auto L = load_double_k3();
    CycScalar zt = zeta(L.ctx);
    DoubleParams p = L.params;
    p.lambdaX["a12"] = zt;                // seed as in the fixture
    p.lambdaX["a23"] = zt * zt;           // zeta-forward propagation
    p.lambdaX["a31"] = zt.pow(3);
    p.lambdaX["a13"] = CycScalar::one(L.ctx);
    p.lambdaX["a21"] = zt;
    p.lambdaX["a32"] = zt * zt;
    auto [spec, rep] = build_double_action(L.ctx, L.quiver, L.act_g, L.act_G, p);
    CHECK_FALSE(rep.ok());
    auto vrep = verify_double(spec, 2);
    bool gx_failed = false;
    for (const auto& chk : vrep.relations)
      if ((chk.name == "GX = zeta XG" || chk.name == "gX = zeta Xg") && !chk.pass)
        gx_failed = true;
    CHECK(gx_failed);
  }
  // mismatched vertex permutations are rejected outright
  {
    auto L = load_double_k3();
    ZnAction actG(3, {{"v1", "v3"}, {"v3", "v2"}, {"v2", "v1"}}, L.act_G.arrow_map());
    CHECK_THROWS_WITH_AS(build_double_action(L.ctx, L.quiver, L.act_g, actG, L.params),
                         doctest::Contains("vertex permutation"), CycError);
  }
}

TEST_CASE("gluing extended actions") {
  // a two-component u_q quiver: O1 -> O2 -> O3 matchings, n = 3
  auto ctx = make_context(3);
  std::vector<std::string> verts;
  for (const char* row : {"u", "v", "w"})
    for (int i = 1; i <= 3; ++i) verts.push_back(std::string(row) + std::to_string(i));
  std::vector<Arrow> arrows;
  for (int i = 1; i <= 3; ++i)
    arrows.push_back({"b" + std::to_string(i), "u" + std::to_string(i), "v" + std::to_string(i)});
  for (int i = 1; i <= 3; ++i)
    arrows.push_back({"c" + std::to_string(i), "v" + std::to_string(i), "w" + std::to_string(i)});
  auto q = std::make_shared<const Quiver>(verts, arrows);
  std::map<std::string, std::string> perm;
  std::map<std::string, ZnAction::ArrowImage> amap;
  for (const char* row : {"u", "v", "w"})
    for (int i = 1; i <= 3; ++i)
      perm[std::string(row) + std::to_string(i)] = std::string(row) + std::to_string(i % 3 + 1);
  for (const char* fam : {"b", "c"})
    for (int i = 1; i <= 3; ++i)
      amap[std::string(fam) + std::to_string(i)] = {std::string(fam) + std::to_string(i % 3 + 1),
                                                    CycScalar::one(ctx)};
  ZnAction act(3, perm, amap);
  REQUIRE(validate_action(*q, act).valid());

  UqParams p;
  CycScalar gE = CycScalar::one(ctx);
  CycScalar gF = forced_gammaF(ctx, gE);
  for (const char* v : {"u1", "v1", "w1"}) {
    p.gammaE[std::string("orbit-of:") + v] = gE;
    p.gammaF[std::string("orbit-of:") + v] = gF;
  }
  auto [spec, rep] = build_uq_action(ctx, q, act, p);
  for (const auto& i : rep.issues) MESSAGE(i.detail);
  REQUIRE(rep.ok());
  auto vrep = verify_uq(spec, 3);
  for (const auto& chk : vrep.relations) {
    if (chk.witness) MESSAGE(chk.name, " at ", chk.witness->path);
    CHECK(chk.pass);
  }

  auto comps = decompose_components(*q, act);
  REQUIRE(comps.size() == 2);
  std::vector<UqFragment> frags;
  for (const auto& c : comps) frags.push_back(restrict_uq_to_component(spec, c));
  UqSpec reglued = glue_uq(ctx, q, act, frags);
  for (const auto& [a, img] : spec.E_on.on_arrow) CHECK(reglued.E_on.arrow(a) == img);
  for (const auto& [v, img] : spec.F_on.on_vertex) CHECK(reglued.F_on.vertex(v) == img);

  // unequal gamma^E on the shared orbit is a gluing error
  frags[1].gammaE["orbit-of:v1"] = CycScalar::from_int(ctx, 2);
  CHECK_THROWS_WITH_AS(glue_uq(ctx, q, act, frags), doctest::Contains("incompatible"), CycError);

  // glue of a single fragment is the identity
  auto L3 = load_double_k3();
  auto [dspec, drep] = build_double_action(L3.ctx, L3.quiver, L3.act_g, L3.act_G, L3.params);
  auto dcomps = decompose_components(*L3.quiver, L3.act_g);
  REQUIRE(dcomps.size() == 1);
  DoubleSpec dglued = glue_double(L3.ctx, L3.quiver, L3.act_g, L3.act_G,
                                  {restrict_double_to_component(dspec, dcomps[0])});
  for (const auto& [a, img] : dspec.X_on.on_arrow) CHECK(dglued.X_on.arrow(a) == img);

  // unequal gamma^X on a shared orbit (hand-made fragments)
  auto frag1 = restrict_double_to_component(dspec, dcomps[0]);
  auto frag2 = frag1;
  frag2.gammaX["orbit-of:v1"] = CycScalar::from_int(L3.ctx, 5);
  CHECK_THROWS_AS(glue_double(L3.ctx, L3.quiver, L3.act_g, L3.act_G, {frag1, frag2}), CycError);
}
