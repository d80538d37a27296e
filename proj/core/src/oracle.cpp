#include "hopfq/oracle.hpp"

#include <sstream>

namespace hopfq {
namespace oracle {

CycScalar h_complete(const CycContextPtr& ctx, int a, const std::vector<CycScalar>& values) {
  if (a < 0) return CycScalar::zero(ctx);
  if (a == 0) return CycScalar::one(ctx);
  if (values.empty()) return CycScalar::zero(ctx);
  const int B = (int)values.size();
  // h[d][b] = h_d over the first b variables, via
  // h_d(x_0..x_{b-1}) = h_d(x_0..x_{b-2}) + x_{b-1} h_{d-1}(x_0..x_{b-1})
  std::vector<std::vector<CycScalar>> h(a + 1, std::vector<CycScalar>(B + 1, CycScalar::zero(ctx)));
  for (int b = 0; b <= B; ++b) h[0][b] = CycScalar::one(ctx);
  for (int d = 1; d <= a; ++d)
    for (int b = 1; b <= B; ++b) h[d][b] = h[d][b - 1] + values[b - 1] * h[d - 1][b];
  return h[a][B];
}

CycScalar q_binomial(const CycContextPtr& ctx, int N, int K, const CycScalar& at) {
  if (K < 0 || K > N) throw CycError("q_binomial: K out of range");
  // [N K] = [N-1 K-1] + at^K [N-1 K]
  std::vector<CycScalar> row(N + 1, CycScalar::zero(ctx));
  row[0] = CycScalar::one(ctx);
  for (int i = 1; i <= N; ++i) {
    for (int k = std::min(i, K); k >= 1; --k)
      row[k] = row[k - 1] + at.pow(k) * row[k];
  }
  return row[K];
}

namespace {
int mod1(int v, int m) { return ((v - 1) % m + m) % m + 1; }
}  // namespace

const CycScalar& PsiInputs::eta_at(int j) const { return eta[mod1(j, m_prime) - 1]; }
const CycScalar& PsiInputs::theta_at(int i, int j) const {
  return theta[mod1(i, m) - 1][mod1(j, m_prime) - 1];
}
const CycScalar& PsiInputs::tau_at(int i, int j) const {
  return tau[mod1(i, m) - 1][mod1(j, m_prime) - 1];
}

bool tautheta_holds(const CycContextPtr& ctx, const PsiInputs& in) {
  CycScalar zt = zeta(ctx);
  for (int i = 1; i <= in.m; ++i)
    for (int j = 1; j <= in.m_prime; ++j)
      if (in.tau_at(i + 1, j + 1) * in.theta_at(i, j) != zt * in.theta_at(i, j + 1) * in.tau_at(i, j))
        return false;
  return true;
}

CycScalar psi(const CycContextPtr& ctx, const PsiInputs& in, int k, int s, int t) {
  if (!tautheta_holds(ctx, in))
    throw CycError("psi: tau-theta compatibility fails; the closed form does not apply");
  const int i = in.base_i, j = in.base_j;
  CycScalar out = CycScalar::one(ctx);
  for (int l = 0; l <= s - 1; ++l) out = out * in.theta_at(i + l, j + l + t - s);
  for (int l = 0; l <= t - s - 1; ++l) out = out * in.tau_at(i, j + l);
  std::vector<CycScalar> etas;
  for (int l = 0; l <= t; ++l) etas.push_back(in.eta_at(j + l));
  out = out * h_complete(ctx, k - t, etas);
  CycScalar zt = zeta(ctx);
  std::vector<CycScalar> powers;
  for (int l = 0; l <= t - s; ++l) powers.push_back(zt.pow(l));
  out = out * h_complete(ctx, s, powers);
  return out;
}

CycScalar psi_inductive(const CycContextPtr& ctx, const PsiInputs& in, int k, int s, int t) {
  const int i = in.base_i, j = in.base_j;
  // table[k'][s'][t'], three-term contribution from applying X once more
  auto zero = CycScalar::zero(ctx);
  std::vector<std::vector<std::vector<CycScalar>>> table(
      k + 1, std::vector<std::vector<CycScalar>>(k + 2, std::vector<CycScalar>(k + 2, zero)));
  auto at = [&](int kk, int ss, int tt) -> CycScalar {
    if (ss < 0 || tt < ss || tt > kk) return zero;
    return table[kk][ss][tt];
  };
  table[0][0][0] = CycScalar::one(ctx);
  for (int kk = 1; kk <= k; ++kk)
    for (int ss = 0; ss <= kk; ++ss)
      for (int tt = ss; tt <= kk; ++tt)
        table[kk][ss][tt] = in.eta_at(j + tt) * at(kk - 1, ss, tt) +
                            in.theta_at(i + ss - 1, j + tt - 1) * at(kk - 1, ss - 1, tt - 1) +
                            in.tau_at(i + ss, j + tt - 1) * at(kk - 1, ss, tt - 1);
  if (s < 0 || t < s || t > k) return zero;
  return table[k][s][t];
}

namespace {

struct Grid {
  PsiInputs in;
  // slot (i,j) -> path (trivial on the Type A diagonal), or nothing
  std::vector<std::vector<std::optional<Path>>> slot;
};

// grids derived from the component action: eta_j = gamma_diag zeta^j,
// theta_{i,j} = -gamma_shift zeta^{i+1} mu_{i,j}, tau_{i,j} = lambda_{i,j}
Grid component_grid(const ActionSpec& spec, const Component& c) {
  if (!spec.params) throw CycError("xk_cross_check: spec carries no parameters");
  const auto& ctx = spec.ctx;
  const Quiver& q = *spec.quiver;
  const TaftParams& params = *spec.params;
  CycScalar zt = zeta(ctx);
  const int n = spec.action.n();

  Grid g;
  bool typeB = c.kind == Component::Kind::TypeB;
  g.in.m = c.m();
  g.in.m_prime = typeB ? c.m_prime() : c.m();
  CycScalar gamma_src = params.gamma_for(ctx, orbit_key(spec.action, c.src_labels.front()));
  CycScalar gamma_diag =
      typeB ? params.gamma_for(ctx, orbit_key(spec.action, c.tgt_labels.front())) : gamma_src;

  auto zero = CycScalar::zero(ctx);
  g.in.eta.assign(g.in.m_prime, zero);
  g.in.theta.assign(g.in.m, std::vector<CycScalar>(g.in.m_prime, zero));
  g.in.tau.assign(g.in.m, std::vector<CycScalar>(g.in.m_prime, zero));
  g.slot.assign(g.in.m, std::vector<std::optional<Path>>(g.in.m_prime));

  // gamma on a short orbit is zero, so the zeta exponents below are only
  // evaluated when the orbit has the full n labels
  for (int j = 1; j <= g.in.m_prime; ++j)
    if (!gamma_diag.is_zero()) g.in.eta[j - 1] = gamma_diag * zt.pow(j);

  for (int i = 1; i <= g.in.m; ++i) {
    for (int j = 1; j <= g.in.m_prime; ++j) {
      if (!typeB && i == j) {
        g.slot[i - 1][j - 1] = Path::at_vertex(q.vertex_index(c.src_labels[i - 1]));
        if (!gamma_src.is_zero()) g.in.theta[i - 1][j - 1] = -(gamma_src * zt.pow(i + 1));
        continue;
      }
      int k = c.arrow_at(i, j);
      if (k < 0) continue;
      const std::string& id = c.arrows[k].id;
      g.slot[i - 1][j - 1] = Path::of_arrow(q.arrow_index(id));
      if (!gamma_src.is_zero())
        g.in.theta[i - 1][j - 1] = -(gamma_src * zt.pow(i + 1) * spec.action.arrow_image(id).scale);
      g.in.tau[i - 1][j - 1] = params.lambda_for(ctx, id);
    }
  }
  (void)n;
  return g;
}

}  // namespace

CrossCheckResult xk_cross_check(const ActionSpec& spec, const Component& c, int k,
                                const Path& generator) {
  const Quiver& q = *spec.quiver;
  Grid grid = component_grid(spec, c);

  // locate the generator on the grid
  bool found = false;
  for (int i = 1; i <= grid.in.m && !found; ++i)
    for (int j = 1; j <= grid.in.m_prime && !found; ++j)
      if (grid.slot[i - 1][j - 1] && path_equal(*grid.slot[i - 1][j - 1], generator)) {
        grid.in.base_i = i;
        grid.in.base_j = j;
        found = true;
      }
  if (!found) throw CycError("xk_cross_check: generator not in component");

  // closed-form sum
  AlgebraElement closed = AlgebraElement::zero(spec.quiver, spec.ctx);
  for (int t = 0; t <= k; ++t) {
    for (int s = 0; s <= t; ++s) {
      CycScalar coeff = psi(spec.ctx, grid.in, k, s, t);
      if (coeff.is_zero()) continue;
      int i2 = ((grid.in.base_i + s - 1) % grid.in.m + grid.in.m) % grid.in.m + 1;
      int j2 = ((grid.in.base_j + t - 1) % grid.in.m_prime + grid.in.m_prime) % grid.in.m_prime + 1;
      const auto& target = grid.slot[i2 - 1][j2 - 1];
      if (!target) {
        std::ostringstream os;
        os << "psi_{" << k << "," << s << "," << t << "} = " << format_scalar(coeff)
           << " is nonzero but slot (" << i2 << "," << j2 << ") is empty";
        return {false, os.str()};
      }
      closed.add_term(*target, coeff);
    }
  }

  // k-fold operator application
  OperatorTable table = extend_operators(spec, 1);
  AlgebraElement iter = AlgebraElement::of_path(spec.quiver, spec.ctx, generator);
  for (int step = 0; step < k; ++step) iter = table.apply_x(iter);

  if (iter == closed) return {true, ""};
  std::ostringstream os;
  os << "x^" << k << "(" << path_to_string(q, generator) << ") = " << iter.to_string()
     << " but closed form gives " << closed.to_string();
  return {false, os.str()};
}

}  // namespace oracle
}  // namespace hopfq
