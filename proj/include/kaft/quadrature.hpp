#ifndef KAFT_QUADRATURE_HPP
#define KAFT_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "kaft/errors.hpp"
#include "kaft/params.hpp"

namespace kaft {

/// Radial weight v_{k,a}: |x|^{2k+a-2} in 1D, r^{2<k>+N+a-3} in radial mode
/// (the angular factor is integrated out into a constant fixed to 1).
inline double weight_vka(double x, const Params& params) {
  const double expo = params.radial
                          ? params.homogeneous_dim() - 1.0
                          : 2.0 * params.k + params.a - 2.0;
  const double ax = std::abs(x);
  if (ax == 0.0) {
    if (expo < 0.0)
      throw SingularAtOrigin("weight_vka: x = 0 with negative exponent");
    return expo == 0.0 ? 1.0 : 0.0;
  }
  return std::pow(ax, expo);
}

/// Nodes and weights realizing integration against d mu_{k,a}.
///
/// Built in the substituted variable u = (2/a)|x|^a, where the measure
/// becomes const * u^{D/a - 1} du (D the homogeneous dimension), through a
/// double-exponential map u = exp(t - exp(-t)) and the trapezoid rule. The
/// rule converges at spectral rate for integrands that are smooth in u away
/// from 0, decay at least like exp(-u/4), and carry an integrable algebraic
/// factor at the origin; this covers every integrand family used by the
/// toolkit, including fractional powers of u.
///
/// In 1D the half-line nodes are reflected so the node set is closed under
/// negation; in radial mode the rule lives on (0, infinity) only.
struct QuadratureRule {
  Params params;
  std::vector<double> nodes;    ///< strictly increasing, never containing 0
  std::vector<double> weights;  ///< all positive
  double r_max = 0.0;
  std::size_t half_count = 0;   ///< nodes on the positive half line

  std::size_t size() const { return nodes.size(); }

  /// Index of the smallest positive node.
  std::size_t first_positive() const {
    return params.radial ? 0 : half_count;
  }

  double integrate(const std::function<double(double)>& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * g(nodes[i]);
    return s;
  }
};

namespace detail {

/// Closed form of the calibration integral
///   int_R |x|^{2k+a-2} exp(-(2/a)|x|^a) dx
///     = 2 (1/a) (a/2)^{D/a} Gamma(D/a),   D = 2k+a-1,
/// halved (and without the factor 2) in radial mode.
inline double calibration_closed_form(const Params& p) {
  const double D = p.homogeneous_dim();
  const double s = D / p.a;
  const double val = (1.0 / p.a) * std::pow(p.a / 2.0, s) * std::exp(std::lgamma(s));
  return p.radial ? val : 2.0 * val;
}

}  // namespace detail

/// Build a quadrature rule for d mu_{k,a}. `n_nodes` counts all nodes
/// (both half lines in 1D). If `r_max` <= 0 a domain cut is chosen
/// automatically. The Gamma-function calibration identity is verified to
/// 1e-8 relative on every build.
inline QuadratureRule build_quadrature(const Params& params, int n_nodes,
                                       double r_max = 0.0) {
  if (n_nodes < 16)
    throw QuadratureFailure("build_quadrature: need at least 16 nodes");
  const double a = params.a;
  const double D = params.homogeneous_dim();
  const double alpha1 = D / a;  // exponent of u in the transformed measure

  double u_max;
  if (r_max > 0.0) {
    u_max = (2.0 / a) * std::pow(r_max, a);
    if (std::exp(-u_max) >= 1e-16)
      throw QuadratureFailure("build_quadrature: r_max too small for the tail cut");
  } else {
    // Degree-m orthogonal polynomials of the u^{alpha1-1} e^{-u} du measure
    // oscillate out to u ~ 4m (Laguerre-type support), so the domain cut
    // must clear four times the largest basis degree or the operator
    // assembly picks up O(1) boundary terms. 3000 covers every basis size
    // the toolkit uses (n_basis <= 512) and, because the map is logarithmic
    // in u, costs almost no resolution.
    u_max = std::max(3000.0, alpha1 + 25.0 * std::sqrt(alpha1 + 1.0) + 50.0);
    r_max = std::pow(a * u_max / 2.0, 1.0 / a);
  }

  // lower cut: u^{alpha1} ~ exp(-45) keeps the discarded mass ~1e-20 while
  // keeping every node representable (log u >= -45/alpha1)
  const double t_min = std::min(-2.0, -std::log(45.0 / alpha1));
  const double t_max = std::log(u_max);

  const int n_half = params.radial ? n_nodes : n_nodes / 2;
  const double h = (t_max - t_min) / (n_half - 1);
  const double logC = -std::log(a) + alpha1 * std::log(a / 2.0);

  std::vector<double> xs(n_half), ws(n_half);
  for (int i = 0; i < n_half; ++i) {
    const double t = t_min + h * i;
    const double s = t - std::exp(-t);  // log u
    const double u = std::exp(s);
    xs[i] = std::pow(a * u / 2.0, 1.0 / a);
    ws[i] = std::exp(std::log(h) + logC + alpha1 * s + std::log1p(std::exp(-t)));
  }

  QuadratureRule rule;
  rule.params = params;
  rule.r_max = r_max;
  rule.half_count = static_cast<std::size_t>(n_half);
  if (params.radial) {
    rule.nodes = xs;
    rule.weights = ws;
  } else {
    rule.nodes.resize(2 * n_half);
    rule.weights.resize(2 * n_half);
    for (int i = 0; i < n_half; ++i) {
      rule.nodes[n_half - 1 - i] = -xs[i];
      rule.weights[n_half - 1 - i] = ws[i];
      rule.nodes[n_half + i] = xs[i];
      rule.weights[n_half + i] = ws[i];
    }
  }

  const double cf = detail::calibration_closed_form(params);
  const double got = rule.integrate(
      [&](double x) { return std::exp(-(2.0 / a) * std::pow(std::abs(x), a)); });
  if (std::abs(got - cf) > 1e-8 * std::abs(cf))
    throw QuadratureFailure("build_quadrature: calibration identity missed 1e-8");
  return rule;
}

/// Complex sample vector aligned with a rule's nodes.
struct GridFunction {
  const QuadratureRule* rule = nullptr;
  Eigen::VectorXcd values;

  GridFunction() = default;
  explicit GridFunction(const QuadratureRule& r)
      : rule(&r), values(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(r.size()))) {}

  static GridFunction sample(const QuadratureRule& r,
                             const std::function<std::complex<double>(double)>& f) {
    GridFunction g(r);
    for (std::size_t i = 0; i < r.size(); ++i)
      g.values[static_cast<Eigen::Index>(i)] = f(r.nodes[i]);
    return g;
  }
};

/// Weighted L^p norm (sum w_i |f_i|^p)^{1/p}, p in [1, inf).
inline double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ExponentOutOfRange("lp_norm: p must lie in [1, inf)");
  const auto& r = *f.rule;
  if (f.values.size() != static_cast<Eigen::Index>(r.size()))
    throw Error("lp_norm: value/node length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double av = std::abs(f.values[static_cast<Eigen::Index>(i)]);
    if (av > 0.0) s += r.weights[i] * std::pow(av, p);
  }
  return std::pow(s, 1.0 / p);
}

/// Max-over-nodes mode standing in for the essential sup.
inline double linf_norm(const GridFunction& f) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < f.values.size(); ++i)
    m = std::max(m, std::abs(f.values[i]));
  return m;
}

/// Weighted L^p norm with an extra pointwise weight factor omega(x)^
/// (used by the Paley-type left-hand sides).
inline double lp_norm_weighted(const GridFunction& f, double p,
                               const std::function<double(double)>& omega) {
  const auto& r = *f.rule;
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double av = std::abs(f.values[static_cast<Eigen::Index>(i)]);
    if (av == 0.0) continue;
    const double om = omega(r.nodes[i]);
    if (!std::isfinite(om)) continue;  // vanishing-weight region, see symbols
    s += r.weights[i] * std::pow(av, p) * om;
  }
  return std::pow(s, 1.0 / p);
}

}  // namespace kaft

#endif  // KAFT_QUADRATURE_HPP
