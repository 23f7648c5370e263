#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "kaft/kaft.hpp"

using namespace kaft;

namespace {

struct Setup {
  Params params;
  QuadratureRule rule;
  SpectralBasis basis;
  TransformOperator T;
};

Setup make_setup(double k = 0.5, double a = 2.0, int nb = 48) {
  Setup s;
  s.params = make_params(1, k, a);
  s.rule = build_quadrature(s.params, 400);
  s.basis = build_basis(s.params, nb, s.rule);
  s.T = make_transform(s.basis);
  return s;
}

GridFunction ground_state(const Setup& s, double scale) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(s.basis.n_basis);
  c[0] = scale;
  return synthesize(s.basis, c);
}

/// Independent oracle: classic RK4 on the grid-sample ODE u' = |u|^p
/// (h = 1, so B is the identity). Returns the sup-over-time L^2 norm gap
/// against a solution path sampled on the solver's coarser time grid.
double rk4_heat_gap(const Setup& s, const SolutionPath& path,
                    const GridFunction& u0, double p_exp, int substeps = 8) {
  Eigen::VectorXcd u = u0.values;
  auto f = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
      out[i] = std::pow(std::abs(v[i]), p_exp);
    return out;
  };
  double gap = 0.0;
  const double dt = (path.times[1] - path.times[0]) / substeps;
  for (std::size_t j = 0; j < path.times.size(); ++j) {
    if (j > 0) {
      for (int m = 0; m < substeps; ++m) {
        const Eigen::VectorXcd k1 = f(u);
        const Eigen::VectorXcd k2 = f(u + 0.5 * dt * k1);
        const Eigen::VectorXcd k3 = f(u + 0.5 * dt * k2);
        const Eigen::VectorXcd k4 = f(u + dt * k3);
        u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    GridFunction g(s.rule);
    g.values = u;
    GridFunction sol = synthesize(s.basis, path.states[j]);
    GridFunction diff(s.rule);
    diff.values = g.values - sol.values;
    gap = std::max(gap, lp_norm(diff, 2.0));
  }
  return gap;
}

/// RK4 oracle for the wave equation u'' = b |u|^p as a first-order system
/// on the grid samples.
double rk4_wave_gap(const Setup& s, const SolutionPath& path,
                    const GridFunction& u0, const GridFunction& u1,
                    double bval, double p_exp, int substeps = 8) {
  Eigen::VectorXcd u = u0.values, v = u1.values;
  auto acc = [&](const Eigen::VectorXcd& w) {
    Eigen::VectorXcd out(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
      out[i] = bval * std::pow(std::abs(w[i]), p_exp);
    return out;
  };
  double gap = 0.0;
  const double dt = (path.times[1] - path.times[0]) / substeps;
  for (std::size_t j = 0; j < path.times.size(); ++j) {
    if (j > 0) {
      for (int m = 0; m < substeps; ++m) {
        const Eigen::VectorXcd ku1 = v, kv1 = acc(u);
        const Eigen::VectorXcd ku2 = v + 0.5 * dt * kv1,
                               kv2 = acc(u + 0.5 * dt * ku1);
        const Eigen::VectorXcd ku3 = v + 0.5 * dt * kv2,
                               kv3 = acc(u + 0.5 * dt * ku2);
        const Eigen::VectorXcd ku4 = v + dt * kv3, kv4 = acc(u + dt * ku3);
        u += (dt / 6.0) * (ku1 + 2.0 * ku2 + 2.0 * ku3 + ku4);
        v += (dt / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
      }
    }
    GridFunction sol = synthesize(s.basis, path.states[j]);
    GridFunction diff(s.rule);
    diff.values = u - sol.values;
    gap = std::max(gap, lp_norm(diff, 2.0));
  }
  return gap;
}

}  // namespace

TEST_CASE("existence-time closed forms", "[pde]") {
  CHECK_THAT(heat_tstar(std::sqrt(2.0), 2.0, 1.0),
             Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK(heat_tstar(1.0, 2.0, 1.0) == 0.0);
  // homogeneity: doubling ||u0|| halves T*
  CHECK_THAT(heat_tstar(1.5, 2.5, 2.0),
             Catch::Matchers::WithinRel(0.5 * heat_tstar(1.5, 2.5, 1.0), 1e-14));
  CHECK_THROWS_AS(heat_tstar(0.5, 2.0, 1.0), ExponentOutOfRange);
  CHECK_THROWS_AS(heat_tstar(2.0, 2.0, 0.0), ExponentOutOfRange);

  CHECK_THAT(wave_tstar(2.0, 2.0, 1.0, 1.0, 1.0),
             Catch::Matchers::WithinAbs(std::cbrt(0.25), 1e-12));
  // zero ||u1|| collapses to the u0 branch
  CHECK_THAT(wave_tstar(2.0, 2.0, 1.0, 1.0, 0.0),
             Catch::Matchers::WithinAbs(std::cbrt(0.25), 1e-12));
  // larger ||b|| shortens the guaranteed window
  CHECK(wave_tstar(2.0, 2.0, 2.0, 1.0, 1.0) < wave_tstar(2.0, 2.0, 1.0, 1.0, 1.0));
  CHECK_THROWS_AS(wave_tstar(1.0, 2.0, 1.0, 1.0, 1.0), ExponentOutOfRange);
}

TEST_CASE("time coefficient norms", "[pde]") {
  CHECK_THAT(TimeCoefficient::constant(2.0).l2_norm(4.0),
             Catch::Matchers::WithinRel(4.0, 1e-14));
  // c t^{-gamma}: finite L2 only for gamma < 1/2
  CHECK_THAT(TimeCoefficient::power(1.0, 0.25).l2_norm(1.0),
             Catch::Matchers::WithinRel(std::sqrt(2.0), 1e-14));
  CHECK(TimeCoefficient::power(1.0, 0.75).l2_norm(1.0) == kInf);
  // sampled trapezoid against the constant closed form
  const auto samp = TimeCoefficient::sampled(std::vector<double>(129, 2.0));
  CHECK_THAT(samp.l2_norm(4.0), Catch::Matchers::WithinRel(4.0, 1e-12));
}

TEST_CASE("zero data stays zero", "[pde]") {
  const auto s = make_setup();
  CauchyProblem prob;
  prob.kind = ProblemKind::Heat;
  prob.u0 = GridFunction(s.rule);
  prob.T = 0.5;
  const auto path = solve_heat(s.T, prob, 32);
  CHECK(path.iterations == 1);
  CHECK(path.residual == 0.0);
  for (const auto& st : path.states) CHECK(st.norm() == 0.0);
}

TEST_CASE("heat solver matches the RK4 oracle", "[pde]") {
  const auto s = make_setup();
  CauchyProblem prob;
  prob.kind = ProblemKind::Heat;
  prob.u0 = ground_state(s, 0.1);
  prob.p_exp = 2.0;
  prob.c_set = std::sqrt(2.0);
  // horizon pinned at 0.9 * heat_tstar(sqrt 2, 2, 1) = 0.45; on longer
  // horizons the exact solution u0/(1 - t u0) leaves S_{sqrt 2} even though
  // it exists, so S_c membership is only certified on this window
  prob.T = 0.9 * heat_tstar(prob.c_set, prob.p_exp, 1.0);
  const auto path = solve_heat(s.T, prob, 128);
  CHECK(path.iterations <= 30);
  CHECK(path.residual < 1e-6);
  CHECK(path.in_Sc);
  CHECK(rk4_heat_gap(s, path, prob.u0, prob.p_exp) < 1e-5);
}

TEST_CASE("heat solver refuses horizons past T*", "[pde]") {
  const auto s = make_setup();
  CauchyProblem prob;
  prob.kind = ProblemKind::Heat;
  prob.u0 = ground_state(s, 0.1);
  prob.c_set = std::sqrt(2.0);
  prob.T = 1.5 * heat_tstar(prob.c_set, prob.p_exp, 0.1);
  CHECK_THROWS_AS(solve_heat(s.T, prob, 64), Error);
  prob.allow_beyond_tstar = true;  // explicitly unguaranteed
  CHECK_NOTHROW(solve_heat(s.T, prob, 64));
}

TEST_CASE("heat solver is stable under time-step halving", "[pde]") {
  const auto s = make_setup();
  CauchyProblem prob;
  prob.kind = ProblemKind::Heat;
  prob.u0 = ground_state(s, 0.02);
  prob.c_set = std::sqrt(2.0);
  prob.T = 0.5;
  const auto coarse = solve_heat(s.T, prob, 128, 30, 1e-12);
  const auto fine = solve_heat(s.T, prob, 256, 30, 1e-12);
  CHECK((coarse.states.back() - fine.states.back()).norm() < 1e-8);
}

TEST_CASE("Picard defects contract", "[pde]") {
  const auto s = make_setup();
  CauchyProblem prob;
  prob.kind = ProblemKind::Heat;
  prob.u0 = ground_state(s, 0.1);
  prob.c_set = std::sqrt(2.0);
  prob.T = 0.9 * heat_tstar(prob.c_set, prob.p_exp, 0.1);
  // run with increasing iteration budgets and watch the defect shrink
  double previous = kInf;
  for (int budget : {2, 3, 4}) {
    try {
      solve_heat(s.T, prob, 64, budget, 0.0);
      FAIL("tolerance 0 cannot be reached");
    } catch (const NoConvergence& e) {
      CHECK(e.last_residual < previous);
      previous = e.last_residual;
    }
  }
}

TEST_CASE("wave solver reproduces affine motion when b = 0", "[pde]") {
  const auto s = make_setup();
  CauchyProblem prob;
  prob.kind = ProblemKind::Wave;
  prob.u0 = ground_state(s, 0.3);
  Eigen::VectorXcd c1 = Eigen::VectorXcd::Zero(48);
  c1[2] = 0.2;
  prob.u1 = synthesize(s.basis, c1);
  prob.b = TimeCoefficient::constant(0.0);
  prob.T = 2.0;
  prob.c_set = 2.0;
  const auto path = solve_wave(s.T, prob, 64);
  CHECK(path.iterations == 1);
  const auto p0 = project(s.basis, prob.u0);
  for (std::size_t j = 0; j < path.times.size(); ++j) {
    const Eigen::VectorXcd want = p0.coeffs + path.times[j] * c1;
    CHECK((path.states[j] - want).norm() < 1e-10);
  }
}

TEST_CASE("wave solver matches the RK4 oracle on small data", "[pde]") {
  const auto s = make_setup();
  CauchyProblem prob;
  prob.kind = ProblemKind::Wave;
  prob.u0 = ground_state(s, 0.1);
  prob.u1 = ground_state(s, 0.05);
  prob.b = TimeCoefficient::constant(1.0);
  prob.p_exp = 2.0;
  prob.c_set = 2.0;
  const double tstar = wave_tstar(2.0, 2.0, prob.b.l2_norm(1.0), 0.1, 0.05);
  prob.T = std::min(0.9 * tstar, 1.0);
  const auto path = solve_wave(s.T, prob, 128);
  CHECK(path.in_Sc);
  CHECK(path.residual < 1e-6);
  CHECK(rk4_wave_gap(s, path, prob.u0, prob.u1, 1.0, prob.p_exp) < 1e-5);
}

TEST_CASE("global small-data conditions and their boundaries", "[pde]") {
  // interior point: gamma = 2, p = 2, gamma0 = 0.25 -> gamma_tilde = -0.5
  const auto ok = global_smalldata_check(2.0, 2.0, 0.25, 1.0, 2.0, 0.1);
  CHECK_THAT(ok.gamma_tilde, Catch::Matchers::WithinAbs(-0.5, 1e-14));
  CHECK(ok.gamma_ok);
  CHECK(ok.gamma0_ok);
  CHECK(ok.gamma_tilde_ok);
  CHECK(ok.smallness_ok);
  CHECK(ok.pass);

  // boundary gamma = 3/2 fails the strict inequality
  CHECK_FALSE(global_smalldata_check(1.5, 2.0, 0.1, 1.0, 2.0, 0.1).gamma_ok);
  // boundary gamma0 = (2 gamma - 3)/p fails the open interval
  CHECK_FALSE(global_smalldata_check(2.0, 2.0, 0.5, 1.0, 2.0, 0.1).gamma0_ok);
  // gamma0 = 0 fails too
  CHECK_FALSE(global_smalldata_check(2.0, 2.0, 0.0, 1.0, 2.0, 0.1).gamma0_ok);
  // oversized data violates smallness; the reported maximum is consistent
  const auto big = global_smalldata_check(2.0, 2.0, 0.25, 1.0, 2.0, 100.0);
  CHECK_FALSE(big.smallness_ok);
  CHECK(global_smalldata_check(2.0, 2.0, 0.25, 1.0, 2.0, big.max_norm_u0)
            .smallness_ok);
}

TEST_CASE("solver input validation", "[pde]") {
  const auto s = make_setup();
  CauchyProblem heat;
  heat.kind = ProblemKind::Heat;
  heat.u0 = ground_state(s, 0.1);
  CauchyProblem wave = heat;
  wave.kind = ProblemKind::Wave;
  wave.u1 = GridFunction(s.rule);
  CHECK_THROWS_AS(solve_wave(s.T, heat, 16), Error);
  CHECK_THROWS_AS(solve_heat(s.T, wave, 16), Error);
}
