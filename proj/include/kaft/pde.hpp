#ifndef KAFT_PDE_HPP
#define KAFT_PDE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kaft/errors.hpp"
#include "kaft/multiplier.hpp"
#include "kaft/symbols.hpp"
#include "kaft/transform.hpp"

namespace kaft {

/// Time coefficient b(t) of the wave nonlinearity: constant, the power
/// profile c t^{-gamma}, or samples on the solver's uniform time grid.
struct TimeCoefficient {
  enum class Kind { Constant, Power, Sampled };
  Kind kind = Kind::Constant;
  double value = 1.0;   ///< constant value or power prefactor
  double gamma = 0.0;   ///< power exponent
  std::vector<double> samples;

  static TimeCoefficient constant(double c) { return {Kind::Constant, c, 0.0, {}}; }
  static TimeCoefficient power(double c, double gamma) {
    return {Kind::Power, c, gamma, {}};
  }
  static TimeCoefficient sampled(std::vector<double> values) {
    return {Kind::Sampled, 0.0, 0.0, std::move(values)};
  }

  /// Values aligned with the solver's time grid. The power profile is
  /// floored at half the first step so the trapezoid sums stay finite (its
  /// t = 0 singularity is integrable in the regimes of interest); sampled
  /// coefficients must match the grid length exactly.
  std::vector<double> values_on_grid(const std::vector<double>& times) const {
    std::vector<double> out(times.size());
    switch (kind) {
      case Kind::Constant:
        std::fill(out.begin(), out.end(), value);
        break;
      case Kind::Power: {
        const double floor_t = times.size() > 1 ? times[1] / 2.0 : 1e-12;
        for (std::size_t j = 0; j < times.size(); ++j)
          out[j] = value * std::pow(std::max(times[j], floor_t), -gamma);
        break;
      }
      case Kind::Sampled:
        if (samples.size() != times.size())
          throw Error("TimeCoefficient: sample count must match the time grid");
        out = samples;
        break;
    }
    return out;
  }

  /// ||b||_{L^2(0,T)}; +inf for the power profile with gamma >= 1/2.
  double l2_norm(double T) const {
    switch (kind) {
      case Kind::Constant: return std::abs(value) * std::sqrt(T);
      case Kind::Power: {
        if (gamma >= 0.5) return kInf;
        return std::abs(value) *
               std::sqrt(std::pow(T, 1.0 - 2.0 * gamma) / (1.0 - 2.0 * gamma));
      }
      case Kind::Sampled: {
        if (samples.size() < 2) return 0.0;
        const double dt = T / double(samples.size() - 1);
        double s = 0.0;
        for (std::size_t j = 0; j < samples.size(); ++j) {
          const double w = (j == 0 || j == samples.size() - 1) ? 0.5 : 1.0;
          s += w * samples[j] * samples[j];
        }
        return std::sqrt(s * dt);
      }
    }
    return 0.0;
  }
};

enum class ProblemKind { Heat, Wave };

/// Nonlinear Cauchy problem
///   heat: u_t  = |B u|^p,            u(0) = u0,
///   wave: u_tt = b(t) |B u|^p,       u(0) = u0, u_t(0) = u1,
/// with B the Fourier multiplier of symbol B_symbol.
struct CauchyProblem {
  ProblemKind kind = ProblemKind::Heat;
  GridFunction u0;
  GridFunction u1;                     ///< wave only
  TimeCoefficient b = TimeCoefficient::constant(1.0);
  double p_exp = 2.0;
  MultiplierSymbol B_symbol = MultiplierSymbol::constant(1.0);
  double T = 1.0;
  double c_set = 2.0;                  ///< the S_c membership constant
  bool allow_beyond_tstar = false;     ///< run past T* (no existence guarantee)
};

/// Converged Picard iterate on the uniform time grid.
struct SolutionPath {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;  ///< coefficient vectors per time
  double residual = 0.0;                 ///< sup_t ||u(t) - RHS(u)(t)||_2
  int iterations = 0;
  bool in_Sc = false;
  double max_reprojection_residual = 0.0;

  /// L^2_{k,a} norm at time index j (coefficient 2-norm; the basis is
  /// orthonormal).
  double l2_at(std::size_t j) const { return states[j].norm(); }
};

/// Heat existence time T* = sqrt(c^2 - 1) / (c^p ||u0||); c = 1 gives 0.
inline double heat_tstar(double c, double p_exp, double norm_u0) {
  if (!(c >= 1.0)) throw ExponentOutOfRange("heat_tstar: need c >= 1");
  if (!(norm_u0 > 0.0)) throw ExponentOutOfRange("heat_tstar: need ||u0|| > 0");
  return std::sqrt(c * c - 1.0) / (std::pow(c, p_exp) * norm_u0);
}

/// Wave existence time
///   T* = min over the u0 and u1 branches of
///        ( (c-1) / (||b||_{L^2}^2 c^p ||u||^{2p-2}) )^{1/3};
/// a vanishing norm sends its branch to +inf.
inline double wave_tstar(double c, double p_exp, double b_l2_norm,
                         double norm_u0, double norm_u1) {
  if (!(c > 1.0)) throw ExponentOutOfRange("wave_tstar: need c > 1");
  auto branch = [&](double n) {
    if (!(n > 0.0)) return kInf;
    const double denom =
        b_l2_norm * b_l2_norm * std::pow(c, p_exp) * std::pow(n, 2.0 * p_exp - 2.0);
    return denom > 0.0 ? std::cbrt((c - 1.0) / denom) : kInf;
  };
  return std::min(branch(norm_u0), branch(norm_u1));
}

namespace detail {

/// |B u|^p as a re-projected coefficient vector; tracks the worst
/// re-projection residual seen.
inline Eigen::VectorXcd nonlinearity(const TransformOperator& T,
                                     const CauchyProblem& prob,
                                     const Eigen::VectorXcd& coeffs,
                                     double* worst_residual) {
  const SpectralBasis& basis = *T.basis;
  GridFunction u = synthesize(basis, coeffs);
  const MultiplierResult bu = apply_multiplier(T, prob.B_symbol, u);
  GridFunction g(basis.rule);
  for (Eigen::Index i = 0; i < g.values.size(); ++i)
    g.values[i] = std::pow(std::abs(bu.values.values[i]), prob.p_exp);
  const Projection pg = project(basis, g);
  *worst_residual = std::max(
      *worst_residual, std::max(bu.reprojection_residual, pg.residual));
  return pg.coeffs;
}

}  // namespace detail

/// Picard iteration for the heat problem
///   u(t) = u0 + int_0^t |B u(tau)|^p dtau
/// on a uniform time grid with composite-trapezoid quadrature.
/// Requires T <= T* unless allow_beyond_tstar is set. Throws NoConvergence
/// (with the last defect) when max_iter is exhausted.
inline SolutionPath solve_heat(const TransformOperator& T,
                               const CauchyProblem& prob, int n_time = 128,
                               int max_iter = 30, double tol = 1e-10) {
  if (prob.kind != ProblemKind::Heat) throw Error("solve_heat: kind must be heat");
  if (!(prob.T > 0.0)) throw Error("solve_heat: horizon must be positive");
  const SpectralBasis& basis = *T.basis;
  const Projection p0 = project(basis, prob.u0);
  const double n0 = p0.coeffs.norm();
  if (n0 > 0.0 && !prob.allow_beyond_tstar) {
    const double tstar = heat_tstar(prob.c_set, prob.p_exp, n0);
    if (prob.T > tstar * (1.0 + 1e-12))
      throw Error("solve_heat: T exceeds T*; set allow_beyond_tstar to override");
  }

  SolutionPath path;
  const double dt = prob.T / n_time;
  path.times.resize(std::size_t(n_time) + 1);
  for (int j = 0; j <= n_time; ++j) path.times[std::size_t(j)] = dt * j;
  path.states.assign(std::size_t(n_time) + 1, p0.coeffs);

  auto rhs = [&](const std::vector<Eigen::VectorXcd>& states,
                 double* worst) {
    std::vector<Eigen::VectorXcd> nl(states.size());
    for (std::size_t j = 0; j < states.size(); ++j)
      nl[j] = detail::nonlinearity(T, prob, states[j], worst);
    std::vector<Eigen::VectorXcd> out(states.size());
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(basis.n_basis);
    out[0] = p0.coeffs;
    for (std::size_t j = 1; j < states.size(); ++j) {
      acc += (dt / 2.0) * (nl[j - 1] + nl[j]);
      out[j] = p0.coeffs + acc;
    }
    return out;
  };

  double defect = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    auto next = rhs(path.states, &path.max_reprojection_residual);
    defect = 0.0;
    for (std::size_t j = 0; j < next.size(); ++j)
      defect = std::max(defect, (next[j] - path.states[j]).norm());
    path.states = std::move(next);
    path.iterations = it;
    if (defect < tol) break;
    if (it == max_iter)
      throw NoConvergence("solve_heat: Picard iteration did not converge", defect);
  }

  // fixed-point defect of the final iterate
  double dummy = path.max_reprojection_residual;
  auto check = rhs(path.states, &dummy);
  for (std::size_t j = 0; j < check.size(); ++j)
    path.residual = std::max(path.residual, (check[j] - path.states[j]).norm());

  double sup_norm = 0.0;
  for (std::size_t j = 0; j < path.states.size(); ++j)
    sup_norm = std::max(sup_norm, path.l2_at(j));
  path.in_Sc = sup_norm <= prob.c_set * n0 * (1.0 + 1e-12);
  return path;
}

/// Picard iteration for the wave problem
///   u(t) = u0 + t u1 + int_0^t (t - tau) b(tau) |B u(tau)|^p dtau.
/// S_c membership uses sup_t ||u||^2 <= c (||u0||^2 + T^2 ||u1||^2).
inline SolutionPath solve_wave(const TransformOperator& T,
                               const CauchyProblem& prob, int n_time = 128,
                               int max_iter = 30, double tol = 1e-10) {
  if (prob.kind != ProblemKind::Wave) throw Error("solve_wave: kind must be wave");
  if (!(prob.T > 0.0)) throw Error("solve_wave: horizon must be positive");
  const SpectralBasis& basis = *T.basis;
  const Projection p0 = project(basis, prob.u0);
  const Projection p1 = project(basis, prob.u1);
  const double n0 = p0.coeffs.norm();
  const double n1 = p1.coeffs.norm();
  const double bl2 = prob.b.l2_norm(prob.T);
  if ((n0 > 0.0 || n1 > 0.0) && bl2 > 0.0 && prob.c_set > 1.0 &&
      !prob.allow_beyond_tstar) {
    const double tstar = wave_tstar(prob.c_set, prob.p_exp, bl2, n0, n1);
    if (prob.T > tstar * (1.0 + 1e-12))
      throw Error("solve_wave: T exceeds T*; set allow_beyond_tstar to override");
  }

  SolutionPath path;
  const double dt = prob.T / n_time;
  path.times.resize(std::size_t(n_time) + 1);
  for (int j = 0; j <= n_time; ++j) path.times[std::size_t(j)] = dt * j;
  const std::vector<double> bval = prob.b.values_on_grid(path.times);
  auto affine = [&](std::size_t j) -> Eigen::VectorXcd {
    return p0.coeffs + path.times[j] * p1.coeffs;
  };
  path.states.resize(std::size_t(n_time) + 1);
  for (std::size_t j = 0; j < path.states.size(); ++j) path.states[j] = affine(j);

  auto rhs = [&](const std::vector<Eigen::VectorXcd>& states, double* worst) {
    std::vector<Eigen::VectorXcd> nl(states.size());
    for (std::size_t j = 0; j < states.size(); ++j) {
      nl[j] = detail::nonlinearity(T, prob, states[j], worst);
      nl[j] *= bval[j];
    }
    // (t - tau) kernel inside the trapezoid sum per target time
    std::vector<Eigen::VectorXcd> out(states.size());
    for (std::size_t j = 0; j < states.size(); ++j) {
      Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(basis.n_basis);
      for (std::size_t l = 0; l <= j; ++l) {
        const double w = (l == 0 || l == j) ? 0.5 : 1.0;
        acc += (w * dt * (path.times[j] - path.times[l])) * nl[l];
      }
      out[j] = affine(j) + acc;
    }
    return out;
  };

  double defect = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    auto next = rhs(path.states, &path.max_reprojection_residual);
    defect = 0.0;
    for (std::size_t j = 0; j < next.size(); ++j)
      defect = std::max(defect, (next[j] - path.states[j]).norm());
    path.states = std::move(next);
    path.iterations = it;
    if (defect < tol) break;
    if (it == max_iter)
      throw NoConvergence("solve_wave: Picard iteration did not converge", defect);
  }

  double dummy = path.max_reprojection_residual;
  auto check = rhs(path.states, &dummy);
  for (std::size_t j = 0; j < check.size(); ++j)
    path.residual = std::max(path.residual, (check[j] - path.states[j]).norm());

  double sup_sq = 0.0;
  for (std::size_t j = 0; j < path.states.size(); ++j)
    sup_sq = std::max(sup_sq, path.states[j].squaredNorm());
  path.in_Sc = sup_sq <= prob.c_set * (n0 * n0 + prob.T * prob.T * n1 * n1) *
                             (1.0 + 1e-12);
  return path;
}

/// Report of the global small-data conditions for the wave problem with
/// b decaying like T^{-gamma}.
struct SmallDataReport {
  double gamma_tilde = 0.0;      ///< 3 - 2 gamma + gamma0 p
  bool gamma_ok = false;         ///< gamma > 3/2
  bool gamma0_ok = false;        ///< 0 < gamma0 < (2 gamma - 3)/p
  bool gamma_tilde_ok = false;   ///< gamma_tilde < 0
  bool smallness_ok = false;     ///< c^p ||u0||^{2p-2} <= c T^{-gamma_tilde+gamma0}
  double max_norm_u0 = 0.0;      ///< largest ||u0|| satisfying the smallness bound
  bool pass = false;             ///< all of the above
};

/// Check gamma > 3/2, 0 < gamma0 < (2 gamma - 3)/p, gamma_tilde < 0 and the
/// smallness inequality; boundary values fail (the conditions are strict).
inline SmallDataReport global_smalldata_check(double gamma, double p_exp,
                                              double gamma0, double T, double c,
                                              double norm_u0) {
  SmallDataReport rep;
  rep.gamma_tilde = 3.0 - 2.0 * gamma + gamma0 * p_exp;
  rep.gamma_ok = gamma > 1.5;
  rep.gamma0_ok = gamma0 > 0.0 && gamma0 < (2.0 * gamma - 3.0) / p_exp;
  rep.gamma_tilde_ok = rep.gamma_tilde < 0.0;
  const double bound = c * std::pow(T, -rep.gamma_tilde + gamma0);
  // non-strict inequality; the relative slack absorbs pow() round-off so the
  // reported max_norm_u0 itself satisfies the check
  rep.smallness_ok = std::pow(c, p_exp) * std::pow(norm_u0, 2.0 * p_exp - 2.0) <=
                     bound * (1.0 + 1e-12);
  rep.max_norm_u0 =
      std::pow(bound / std::pow(c, p_exp), 1.0 / (2.0 * p_exp - 2.0));
  rep.pass = rep.gamma_ok && rep.gamma0_ok && rep.gamma_tilde_ok && rep.smallness_ok;
  return rep;
}

}  // namespace kaft

#endif  // KAFT_PDE_HPP
