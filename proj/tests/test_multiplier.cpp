#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "kaft/kaft.hpp"

using namespace kaft;

namespace {

struct Setup {
  Params params;
  QuadratureRule rule;
  SpectralBasis basis;
  TransformOperator T;
};

Setup make_setup(double k, double a, int nb = 48, int n_nodes = 400) {
  Setup s;
  s.params = make_params(1, k, a);
  s.rule = build_quadrature(s.params, n_nodes);
  s.basis = build_basis(s.params, nb, s.rule);
  s.T = make_transform(s.basis);
  return s;
}

GridFunction ground_state(const Setup& s, double scale = 1.0) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(s.basis.n_basis);
  c[0] = scale;
  return synthesize(s.basis, c);
}

}  // namespace

TEST_CASE("identity and zero multipliers", "[multiplier]") {
  const auto s = make_setup(0.5, 2.0);
  const auto f = ground_state(s, 1.0);
  const auto one = apply_multiplier(s.T, MultiplierSymbol::constant(1.0), f);
  CHECK((one.values.values - f.values).norm() / f.values.norm() < 1e-8);
  CHECK(one.reprojection_residual < 1e-10);

  const auto zero = apply_multiplier(s.T, MultiplierSymbol::constant(0.0), f);
  CHECK(zero.values.values.norm() == 0.0);
}

TEST_CASE("multiplier application is linear", "[multiplier]") {
  const auto s = make_setup(0.5, 2.0);
  const auto h = MultiplierSymbol::indicator(1.0);
  Eigen::VectorXcd ca = Eigen::VectorXcd::Zero(48), cb = Eigen::VectorXcd::Zero(48);
  ca[0] = 1.0; ca[3] = {0.5, -0.25};
  cb[1] = {0.0, 1.0}; cb[4] = 0.75;
  const auto fa = synthesize(s.basis, ca);
  const auto fb = synthesize(s.basis, cb);
  const std::complex<double> al{0.7, 0.2}, be{-0.3, 1.1};
  GridFunction comb(s.rule);
  comb.values = al * fa.values + be * fb.values;
  const auto lhs = apply_multiplier(s.T, h, comb);
  const auto ra = apply_multiplier(s.T, h, fa);
  const auto rb = apply_multiplier(s.T, h, fb);
  const Eigen::VectorXcd rhs = al * ra.values.values + be * rb.values.values;
  CHECK((lhs.values.values - rhs).norm() /
            std::max(1.0, rhs.norm()) < 1e-8);
}

TEST_CASE("symbols compose multiplicatively", "[multiplier]") {
  // symbols chosen to keep every intermediate product inside the span (a
  // smooth sampled Gaussian symbol, and an indicator whose cut sits far in
  // the tail); nested and fused application must then agree
  const auto s = make_setup(0.5, 2.0);
  const auto h1 = MultiplierSymbol::indicator(8.0, 0.8);
  Eigen::VectorXd hv(static_cast<Eigen::Index>(s.rule.size()));
  for (std::size_t i = 0; i < s.rule.size(); ++i)
    hv[static_cast<Eigen::Index>(i)] =
        std::exp(-s.rule.nodes[i] * s.rule.nodes[i] / 4.0);
  const auto h2 = MultiplierSymbol::sampled(s.rule, hv);
  const auto f = ground_state(s, 1.0);
  const auto nested =
      apply_multiplier(s.T, h1, apply_multiplier(s.T, h2, f).values);
  const auto direct =
      apply_multiplier(s.T, MultiplierSymbol::composite(h1, h2), f);
  CHECK((nested.values.values - direct.values.values).norm() /
            direct.values.values.norm() < 1e-6);
}

TEST_CASE("Riesz-type fixture is stable under quadrature refinement", "[multiplier]") {
  // h = |xi|^{-1} at (0.5, 2), f = ground state. The pointwise product
  // |xi|^{-1} e^{-xi^2/2} is not square integrable (log divergence at the
  // origin), so only the re-projected representative is meaningful: its
  // coefficients are convergent integrals and must agree between the 400-
  // and 800-node builds. The residual cap is lifted for exactly that reason.
  const auto s1 = make_setup(0.5, 2.0, 48, 400);
  const auto s2 = make_setup(0.5, 2.0, 48, 800);
  const auto h = MultiplierSymbol::power(1.0);
  const auto r1 = apply_multiplier(s1.T, h, ground_state(s1), kInf);
  const auto r2 = apply_multiplier(s2.T, h, ground_state(s2), kInf);
  CHECK((r1.coeffs - r2.coeffs).norm() / r2.coeffs.norm() < 1e-5);
}

TEST_CASE("symbols that escape the span are rejected", "[multiplier]") {
  const auto s = make_setup(0.5, 2.0);
  // |xi|^{-5} concentrates the product at the innermost nodes far outside
  // the polynomial-times-envelope span
  CHECK_THROWS_AS(
      apply_multiplier(s.T, MultiplierSymbol::power(5.0), ground_state(s)),
      ProjectionResidualTooLarge);
}

TEST_CASE("empirical operator norms at the trivial points", "[multiplier]") {
  const auto s = make_setup(0.5, 2.0);
  // unitarity: h = 1, p = q = 2
  const double r1 = empirical_opnorm(s.T, MultiplierSymbol::constant(1.0), 2.0,
                                     2.0, TestFamily::RandomBandlimited);
  CHECK_THAT(r1, Catch::Matchers::WithinAbs(1.0, 1e-8));
  // spectral projection contracts L^2
  for (TestFamily fam : {TestFamily::Gaussians, TestFamily::BasisVectors,
                         TestFamily::RandomBandlimited}) {
    const double r = empirical_opnorm(s.T, MultiplierSymbol::indicator(1.0),
                                      2.0, 2.0, fam);
    CHECK(r <= 1.0 + 1e-6);
  }
}

TEST_CASE("opnorm families are deterministic in the seed", "[multiplier]") {
  const auto s = make_setup(0.5, 2.0);
  const auto h = MultiplierSymbol::indicator(1.0);
  const double a = empirical_opnorm(s.T, h, 2.0, 2.0,
                                    TestFamily::RandomBandlimited, 16, 7);
  const double b = empirical_opnorm(s.T, h, 2.0, 2.0,
                                    TestFamily::RandomBandlimited, 16, 7);
  CHECK(a == b);
}

TEST_CASE("matched power symbol satisfies the multiplier bound", "[multiplier]") {
  // (0.5, 2): D = 2; p = 1.5, q = 3 matches gamma = 2/3, H = 1
  const auto s = make_setup(0.5, 2.0);
  const auto h = MultiplierSymbol::power(2.0 / 3.0);
  const auto rep = verify_multiplier_theorem(s.T, h, 1.5, 3.0);
  CHECK_THAT(rep.H, Catch::Matchers::WithinAbs(1.0, 1e-10));
  CHECK(rep.pass);
  CHECK(rep.max_ratio > 0.0);
  CHECK(rep.max_ratio <= 10.0 * rep.H);

  // stability under basis refinement (+-20%)
  const auto s2 = make_setup(0.5, 2.0, 96, 800);
  const auto rep2 = verify_multiplier_theorem(s2.T, h, 1.5, 3.0);
  CHECK(rep2.max_ratio / rep.max_ratio > 0.8);
  CHECK(rep2.max_ratio / rep.max_ratio < 1.2);
}

TEST_CASE("infinite Hormander bound reports BoundInfinite", "[multiplier]") {
  const auto s = make_setup(0.5, 2.0);
  // unmatched exponent
  CHECK_THROWS_AS(
      verify_multiplier_theorem(s.T, MultiplierSymbol::power(0.25), 1.5, 3.0),
      BoundInfinite);
  // constant symbol at p = q = 2: the theorem is sufficient, not necessary
  CHECK_THROWS_AS(
      verify_multiplier_theorem(s.T, MultiplierSymbol::constant(1.0), 2.0, 2.0),
      BoundInfinite);
}
