// hopfq: classify, construct and verify Taft-algebra actions (and their
// u_q(sl_2) / Drinfeld-double extensions) on path algebras of quivers.
//
// Exit codes: 0 pass, 1 verification/validation failure, 2 input error.
// Machine-readable JSON goes to stdout, human summaries to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include "hopfq/extensions.hpp"
#include "hopfq/fixtures.hpp"
#include "hopfq/oracle.hpp"
#include "hopfq/taft.hpp"
#include "hopfq/verifier.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hopfq;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CycError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw CycError("cannot write '" + path + "'");
  out << body;
}

struct Session {
  CycContextPtr ctx;
  QuiverPtr quiver;
  ZnAction action;

  static Session load(const std::string& quiver_file, const std::string& action_file) {
    Session s;
    s.quiver = parse_quiver_json(slurp(quiver_file));
    nlohmann::json aj = nlohmann::json::parse(slurp(action_file));
    if (!aj.contains("n") || !aj["n"].is_number_integer())
      throw CycError("action JSON: 'n' must be an integer");
    s.ctx = make_context(aj["n"].get<int>());
    s.action = parse_action_json(s.ctx, *s.quiver, slurp(action_file));
    return s;
  }
};

nlohmann::json issues_json(const std::vector<ValidationIssue>& issues) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& i : issues) arr.push_back({{"code", i.code}, {"message", i.message}});
  return arr;
}

nlohmann::json constraint_json(const ConstraintReport& rep) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& i : rep.issues) arr.push_back({{"name", i.name}, {"detail", i.detail}});
  return arr;
}

// element grammar for `act`: terms +/- terms; a term is '*'-separated
// factors, each a parenthesized scalar, a rational, z^k, an arrow id,
// "e[vertex]" or "1".
AlgebraElement parse_element(const CycContextPtr& ctx, const QuiverPtr& q,
                             const std::string& text) {
  size_t pos = 0;
  auto skip = [&]() { while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos; };
  auto fail = [&](const std::string& m) -> void {
    throw CycError("element syntax error at position " + std::to_string(pos) + ": " + m);
  };

  auto parse_factor = [&]() -> AlgebraElement {
    skip();
    if (pos >= text.size()) fail("unexpected end");
    char c = text[pos];
    if (c == '(') {
      int depth = 0;
      size_t start = pos;
      while (pos < text.size()) {
        if (text[pos] == '(') ++depth;
        if (text[pos] == ')' && --depth == 0) break;
        ++pos;
      }
      if (pos >= text.size()) fail("unbalanced parentheses");
      std::string inner = text.substr(start + 1, pos - start - 1);
      ++pos;
      CycScalar s = parse_scalar(ctx, inner);
      AlgebraElement e = unit_element(q, ctx);
      return e.scaled(s);
    }
    if (c == 'e' && pos + 1 < text.size() && text[pos + 1] == '[') {
      size_t close = text.find(']', pos);
      if (close == std::string::npos) fail("expected ']'");
      std::string v = text.substr(pos + 2, close - pos - 2);
      pos = close + 1;
      int vi = q->vertex_index(v);
      if (vi < 0) fail("unknown vertex '" + v + "'");
      return AlgebraElement::of_path(q, ctx, Path::at_vertex(vi));
    }
    if (std::isdigit((unsigned char)c) || c == 'z') {
      // scalar literal: digits, optional /digits, or z^k
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit((unsigned char)text[pos]) || text[pos] == '/' || text[pos] == 'z' ||
              text[pos] == '^' || text[pos] == '.'))
        ++pos;
      CycScalar s = parse_scalar(ctx, text.substr(start, pos - start));
      return unit_element(q, ctx).scaled(s);
    }
    // arrow id: run of id characters
    size_t start = pos;
    while (pos < text.size() && (std::isalnum((unsigned char)text[pos]) || text[pos] == '_' ||
                                 text[pos] == '-' || text[pos] == '.'))
      ++pos;
    std::string id = text.substr(start, pos - start);
    if (id.empty()) fail("expected a factor");
    int ai = q->arrow_index(id);
    if (ai < 0) fail("unknown arrow '" + id + "'");
    return AlgebraElement::of_path(q, ctx, Path::of_arrow(ai));
  };

  auto parse_term = [&]() -> AlgebraElement {
    AlgebraElement e = parse_factor();
    for (;;) {
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        e = e * parse_factor();
      } else {
        return e;
      }
    }
  };

  skip();
  bool neg = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    neg = text[pos] == '-';
    ++pos;
  }
  AlgebraElement out = parse_term();
  if (neg) out = -out;
  for (;;) {
    skip();
    if (pos >= text.size()) return out;
    char op = text[pos];
    if (op != '+' && op != '-') fail("expected '+' or '-'");
    ++pos;
    AlgebraElement t = parse_term();
    out = (op == '+') ? out + t : out - t;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"exact Taft-algebra actions on path algebras of quivers"};
  app.require_subcommand(1);

  std::string quiver_file, action_file, action2_file, params_file, uq_params_file,
      double_params_file, out_file, element_expr, generator = "x", fixture_name,
      out_dir = ".";
  int depth = 0;
  unsigned long seed = 0;
  bool normalize_mu = false, require_inner_faithful = false, with_dot = false;
  int oracle_nmax = 6;

  auto add_inputs = [&](CLI::App* cmd, bool need_action = true) {
    cmd->add_option("--quiver", quiver_file, "quiver JSON file")->required();
    auto* a = cmd->add_option("--action", action_file, "Z_n action JSON file");
    if (need_action) a->required();
  };

  auto* validate = app.add_subcommand("validate", "check quiver and action well-formedness");
  validate->add_option("--quiver", quiver_file)->required();
  validate->add_option("--action", action_file);

  auto* decompose = app.add_subcommand("decompose", "list the Z_n-components");
  add_inputs(decompose);
  decompose->add_option("--dot", out_file, "write a DOT file with orbit coloring");

  auto* parametrize_cmd = app.add_subcommand("parametrize", "free/derived/forced/residual report");
  add_inputs(parametrize_cmd);
  parametrize_cmd->add_flag("--normalize-mu", normalize_mu,
                            "propagate lambda as if all mu were 1");

  auto* sample = app.add_subcommand("sample", "sample parameters satisfying all constraints");
  add_inputs(sample);
  sample->add_option("--seed", seed, "PRNG seed")->default_val(0);
  sample->add_flag("--normalize-mu", normalize_mu);
  sample->add_option("-o,--out", out_file, "write params JSON here (stdout otherwise)");

  auto* act_cmd = app.add_subcommand("act", "apply a generator to an element");
  add_inputs(act_cmd);
  act_cmd->add_option("--params", params_file, "Taft params JSON");
  act_cmd->add_option("--uq-params", uq_params_file, "u_q(sl_2) params JSON");
  act_cmd->add_option("--double-params", double_params_file, "D(T(n)) params JSON");
  act_cmd->add_option("--action2", action2_file, "second Z_n action (for G)");
  act_cmd->add_option("--generator", generator, "g|x|K|E|F|G|X")->required();
  act_cmd->add_option("--element", element_expr, "e.g. \"f1*f2 + 1/2*e[v1]\"")->required();

  auto* verify = app.add_subcommand("verify", "build and verify the full relation suite");
  add_inputs(verify);
  verify->add_option("--params", params_file)->required();
  verify->add_option("--depth", depth, "filtration bound L (default 2n)");
  verify->add_flag("--require-inner-faithful", require_inner_faithful);

  auto* extend = app.add_subcommand("extend", "extended actions");
  auto* extend_uq = extend->add_subcommand("uq", "u_q(sl_2) action");
  add_inputs(extend_uq);
  extend_uq->add_option("--uq-params", uq_params_file)->required();
  extend_uq->add_option("--depth", depth);
  auto* extend_double = extend->add_subcommand("double", "D(T(n)) action");
  add_inputs(extend_double);
  extend_double->add_option("--action2", action2_file, "Z_n action of G")->required();
  extend_double->add_option("--double-params", double_params_file)->required();
  extend_double->add_option("--depth", depth);

  auto* oracle_cmd = app.add_subcommand("oracle", "appendix self-checks (vanishing grid, h identity)");
  oracle_cmd->add_option("--n-max", oracle_nmax, "largest n for the grid")->default_val(6);

  auto* fixtures_cmd = app.add_subcommand("fixtures", "write a bundled fixture's input files");
  fixtures_cmd->add_option("name", fixture_name, "fixture name, or 'list'")->required();
  fixtures_cmd->add_option("--out-dir", out_dir)->default_val(".");

  auto* export_dot_cmd = app.add_subcommand("export-dot", "DOT graph (orbit-colored with --action)");
  export_dot_cmd->add_option("--quiver", quiver_file)->required();
  export_dot_cmd->add_option("--action", action_file);
  export_dot_cmd->add_option("-o,--out", out_file);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    auto q = parse_quiver_json(slurp(quiver_file));
    auto qrep = validate_quiver(*q);
    nlohmann::json out;
    out["quiver"] = issues_json(qrep.issues);
    bool ok = qrep.valid();
    if (!action_file.empty()) {
      Session s = Session::load(quiver_file, action_file);
      auto arep = validate_action(*s.quiver, s.action);
      out["action"] = issues_json(arep.issues);
      out["faithful"] = arep.valid() && action_is_faithful(*s.quiver, s.action);
      if (arep.valid())
        out["permutation_order"] = action_permutation_order(*s.quiver, s.action);
      ok = ok && arep.valid();
    }
    std::cout << out.dump(2) << "\n";
    std::cerr << (ok ? "valid" : "invalid") << "\n";
    return ok ? 0 : 1;
  }

  if (decompose->parsed()) {
    Session s = Session::load(quiver_file, action_file);
    auto comps = decompose_components(*s.quiver, s.action);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : comps) {
      nlohmann::json cj;
      cj["kind"] = c.kind == Component::Kind::TypeA
                       ? "TypeA"
                       : (c.kind == Component::Kind::TypeB ? "TypeB" : "IsolatedVertices");
      cj["source_labels"] = c.src_labels;
      if (c.kind == Component::Kind::TypeB) cj["target_labels"] = c.tgt_labels;
      cj["arrows"] = nlohmann::json::array();
      for (const auto& la : c.arrows)
        cj["arrows"].push_back({{"id", la.id}, {"i", la.i}, {"j", la.j}});
      out.push_back(std::move(cj));
    }
    std::cout << out.dump(2) << "\n";
    std::cerr << comps.size() << " components\n";
    if (!out_file.empty()) spit(out_file, hopfq::export_dot(*s.quiver, &s.action));
    return 0;
  }

  if (parametrize_cmd->parsed()) {
    Session s = Session::load(quiver_file, action_file);
    auto report = parametrize(s.ctx, s.quiver, s.action, normalize_mu);
    std::cout << param_report_to_json(s.ctx, report) << "\n";
    std::cerr << report.free_symbols.size() << " free symbols, " << report.residual.size()
              << " residual constraints\n";
    return 0;
  }

  if (sample->parsed()) {
    Session s = Session::load(quiver_file, action_file);
    auto report = parametrize(s.ctx, s.quiver, s.action, normalize_mu);
    TaftParams params = sample_params(s.ctx, s.quiver, s.action, report, seed);
    std::string body = params_to_json(params);
    if (out_file.empty())
      std::cout << body << "\n";
    else
      spit(out_file, body);
    std::cerr << "sampled with seed " << seed << "\n";
    return 0;
  }

  if (act_cmd->parsed()) {
    Session s = Session::load(quiver_file, action_file);
    AlgebraElement e = parse_element(s.ctx, s.quiver, element_expr);
    AlgebraElement img;
    if (generator == "g" || generator == "x") {
      TaftParams params;
      if (!params_file.empty())
        params = parse_params_json(s.ctx, *s.quiver, s.action, slurp(params_file));
      auto [spec, rep] = build_action(s.ctx, s.quiver, s.action, params);
      img = act_generator(spec, generator, e);
    } else if (generator == "K" || generator == "E" || generator == "F") {
      if (uq_params_file.empty()) throw CycError("generator '" + generator + "' needs --uq-params");
      UqParams up = parse_uq_params_json(s.ctx, *s.quiver, s.action, slurp(uq_params_file));
      auto [spec, rep] = build_uq_action(s.ctx, s.quiver, s.action, up);
      const GeneratorTable& table = generator == "K" ? spec.K_on
                                   : generator == "E" ? spec.E_on
                                                      : spec.F_on;
      img = AlgebraElement::zero(s.quiver, s.ctx);
      for (const auto& [p, c] : e.terms()) {
        AlgebraElement one_img =
            generator == "K"
                ? apply_grouplike(table, s.quiver, s.ctx, p)
                : (generator == "E"
                       ? apply_skew(table, nullptr, &spec.K_on, s.quiver, s.ctx, p)
                       : apply_skew(table, &spec.Kinv_on, nullptr, s.quiver, s.ctx, p));
        img = img + one_img.scaled(c);
      }
    } else if (generator == "G" || generator == "X") {
      if (double_params_file.empty() || action2_file.empty())
        throw CycError("generator '" + generator + "' needs --double-params and --action2");
      ZnAction actG = parse_action_json(s.ctx, *s.quiver, slurp(action2_file));
      DoubleParams dp = parse_double_params_json(s.ctx, *s.quiver, s.action, slurp(double_params_file));
      auto [spec, rep] = build_double_action(s.ctx, s.quiver, s.action, actG, dp);
      const GeneratorTable& table = generator == "G" ? spec.G_on : spec.X_on;
      img = AlgebraElement::zero(s.quiver, s.ctx);
      for (const auto& [p, c] : e.terms()) {
        AlgebraElement one_img = generator == "G"
                                     ? apply_grouplike(table, s.quiver, s.ctx, p)
                                     : apply_skew(table, nullptr, &spec.G_on, s.quiver, s.ctx, p);
        img = img + one_img.scaled(c);
      }
    } else {
      throw CycError("unknown generator '" + generator + "'");
    }
    std::cout << img.to_string() << "\n";
    return 0;
  }

  if (verify->parsed()) {
    Session s = Session::load(quiver_file, action_file);
    auto arep = validate_action(*s.quiver, s.action);
    if (!arep.valid()) {
      std::cout << issues_json(arep.issues).dump(2) << "\n";
      std::cerr << "invalid action\n";
      return 1;
    }
    TaftParams params = parse_params_json(s.ctx, *s.quiver, s.action, slurp(params_file));
    auto [spec, crep] = build_action(s.ctx, s.quiver, s.action, params);
    int L = depth > 0 ? depth : default_depth(s.ctx->n());
    auto vrep = verify_all(spec, L);
    nlohmann::json out = nlohmann::json::parse(report_to_json(vrep));
    out["constraints"] = constraint_json(crep);
    std::cout << out.dump(2) << "\n";
    bool ok = vrep.all_pass() && crep.ok();
    if (require_inner_faithful && !vrep.inner_faithful) ok = false;
    std::cerr << (ok ? "all checks passed" : "FAILED") << " (depth " << L << ")\n";
    return ok ? 0 : 1;
  }

  if (extend_uq->parsed()) {
    Session s = Session::load(quiver_file, action_file);
    UqParams up = parse_uq_params_json(s.ctx, *s.quiver, s.action, slurp(uq_params_file));
    auto [spec, crep] = build_uq_action(s.ctx, s.quiver, s.action, up);
    int L = depth > 0 ? depth : default_depth(s.ctx->n());
    auto vrep = verify_uq(spec, L);
    nlohmann::json out = nlohmann::json::parse(report_to_json(vrep));
    out["constraints"] = constraint_json(crep);
    std::cout << out.dump(2) << "\n";
    bool ok = vrep.all_pass() && crep.ok();
    std::cerr << (ok ? "all checks passed" : "FAILED") << " (depth " << L << ")\n";
    return ok ? 0 : 1;
  }

  if (extend_double->parsed()) {
    Session s = Session::load(quiver_file, action_file);
    ZnAction actG = parse_action_json(s.ctx, *s.quiver, slurp(action2_file));
    DoubleParams dp = parse_double_params_json(s.ctx, *s.quiver, s.action, slurp(double_params_file));
    auto [spec, crep] = build_double_action(s.ctx, s.quiver, s.action, actG, dp);
    int L = depth > 0 ? depth : default_depth(s.ctx->n());
    auto vrep = verify_double(spec, L);
    nlohmann::json out = nlohmann::json::parse(report_to_json(vrep));
    out["constraints"] = constraint_json(crep);
    std::cout << out.dump(2) << "\n";
    bool ok = vrep.all_pass() && crep.ok();
    std::cerr << (ok ? "all checks passed" : "FAILED") << " (depth " << L << ")\n";
    return ok ? 0 : 1;
  }

  if (oracle_cmd->parsed()) {
    bool ok = true;
    nlohmann::json out = nlohmann::json::array();
    for (int n = 2; n <= oracle_nmax; ++n) {
      auto ctx = make_context(n);
      CycScalar zt = zeta(ctx);
      int failures = 0;
      for (int a = 1; a <= 3 * n; ++a) {
        for (int b = 1; b <= 3 * n; ++b) {
          if ((a + b) % n != 0) continue;
          std::vector<CycScalar> vals;
          for (int l = 0; l <= b; ++l) vals.push_back(zt.pow(l));
          bool zero = oracle::h_complete(ctx, a, vals).is_zero();
          // vanishes iff n also fails to divide a (Lucas rule)
          if (zero != (a % n != 0)) ++failures;
        }
      }
      // h identity on the same grid
      for (int a = 0; a <= 6; ++a) {
        for (int b = 0; b <= 6; ++b) {
          std::vector<CycScalar> vals;
          for (int l = 0; l <= b; ++l) vals.push_back(zt.pow(l + 1) + CycScalar::from_int(ctx, l));
          std::vector<CycScalar> head(vals.begin(), vals.end() - 1);
          CycScalar lhs = oracle::h_complete(ctx, a, head) +
                          vals.back() * oracle::h_complete(ctx, a - 1, vals);
          if (!(lhs == oracle::h_complete(ctx, a, vals))) ++failures;
        }
      }
      out.push_back({{"n", n}, {"status", failures == 0 ? "pass" : "fail"}});
      if (failures) ok = false;
    }
    std::cout << out.dump(2) << "\n";
    std::cerr << (ok ? "oracle grid clean" : "oracle grid FAILED") << "\n";
    return ok ? 0 : 1;
  }

  if (fixtures_cmd->parsed()) {
    if (fixture_name == "list") {
      nlohmann::json out = fixtures::names();
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    auto files = fixtures::files(fixture_name);
    std::filesystem::create_directories(out_dir);
    for (const auto& [fname, body] : files)
      spit((std::filesystem::path(out_dir) / fname).string(), body);
    std::cerr << "wrote " << files.size() << " files to " << out_dir << "\n";
    return 0;
  }

  if (export_dot_cmd->parsed()) {
    auto q = parse_quiver_json(slurp(quiver_file));
    std::string dot;
    if (!action_file.empty()) {
      nlohmann::json aj = nlohmann::json::parse(slurp(action_file));
      auto ctx = make_context(aj["n"].get<int>());
      ZnAction act = parse_action_json(ctx, *q, slurp(action_file));
      dot = hopfq::export_dot(*q, &act);
    } else {
      dot = hopfq::export_dot(*q, nullptr);
    }
    if (out_file.empty())
      std::cout << dot;
    else
      spit(out_file, dot);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hopfq::CycError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
