#ifndef KAFT_INEQUALITIES_HPP
#define KAFT_INEQUALITIES_HPP

#include <cmath>

#include "kaft/errors.hpp"
#include "kaft/quadrature.hpp"
#include "kaft/symbols.hpp"
#include "kaft/transform.hpp"

namespace kaft {

/// Exponent tuple (p, b, q) with derived conjugates. Validated on
/// construction: 1 < p <= 2 <= q < infinity (when q is used) and
/// p <= b <= p'.
struct Exponents {
  double p = 2.0;
  double b = 2.0;
  double q = 2.0;

  double p_conj() const { return p / (p - 1.0); }
  double q_conj() const { return q / (q - 1.0); }
  /// 1/r = 1/p - 1/q.
  double r() const {
    const double inv = 1.0 / p - 1.0 / q;
    return inv > 0.0 ? 1.0 / inv : kInf;
  }
};

/// Validate p alone (Paley / Hausdorff-Young range).
inline void require_p(double p) {
  if (!(p > 1.0 && p <= 2.0))
    throw ExponentOutOfRange("p must lie in (1, 2]");
}

/// Build a validated exponent tuple; pass b <= 0 to default it to p'.
inline Exponents make_exponents(double p, double b = -1.0, double q = 2.0) {
  require_p(p);
  if (!(q >= 2.0 && std::isfinite(q)))
    throw ExponentOutOfRange("q must lie in [2, infinity)");
  Exponents e;
  e.p = p;
  e.q = q;
  e.b = b <= 0.0 ? e.p_conj() : b;
  if (!(e.b >= p - 1e-12 && e.b <= e.p_conj() + 1e-12))
    throw ExponentOutOfRange("b must lie in [p, p']");
  return e;
}

/// Two sides of one inequality instance.
struct RatioReport {
  double lhs = 0.0;
  double rhs_core = 0.0;
  double ratio = 0.0;
};

/// Hausdorff-Young-Paley ratio
///   lhs      = ( int ( |F f(xi)| psi(xi)^{1/b - 1/p'} )^b dmu )^{1/b},
///   rhs_core = M_psi^{1/b - 1/p'} ||f||_p,
/// with the transform evaluated by basis synthesis on the grid. The
/// endpoints are literal specializations of this one code path: b = p'
/// drops psi entirely (Hausdorff-Young), b = p gives the Paley exponent
/// (2-p)/p.
inline RatioReport hyp_ratio(const TransformOperator& T, const GridFunction& f,
                             const MultiplierSymbol& psi, double p, double b) {
  const Exponents e = make_exponents(p, b);
  const double expo = 1.0 / e.b - 1.0 / e.p_conj();
  const Params& params = T.basis->params;

  double M = 1.0;
  if (expo > 1e-14) {
    M = paley_functional(psi, params, &T.basis->rule);
    if (!std::isfinite(M))
      throw InfinitePaleyFunctional("hyp_ratio: Paley functional is infinite");
  }

  const GridFunction Ff = forward(T, f);
  RatioReport rep;
  if (expo > 1e-14) {
    // weight psi^{b * expo} inside the b-norm; infinite psi values mark the
    // measure-zero origin and are skipped by the weighted norm
    rep.lhs = lp_norm_weighted(
        Ff, e.b, [&](double xi) { return std::pow(psi(xi), e.b * expo); });
    rep.rhs_core = std::pow(M, expo) * lp_norm(f, e.p);
  } else {
    rep.lhs = lp_norm(Ff, e.b);
    rep.rhs_core = lp_norm(f, e.p);
  }
  rep.ratio = rep.rhs_core > 0.0 ? rep.lhs / rep.rhs_core : 0.0;
  return rep;
}

/// Paley ratio: the b = p endpoint of hyp_ratio, exactly (same code path).
inline RatioReport paley_ratio(const TransformOperator& T, const GridFunction& f,
                               const MultiplierSymbol& psi, double p) {
  return hyp_ratio(T, f, psi, p, p);
}

/// Hausdorff-Young ratio: the b = p' endpoint of hyp_ratio, exactly.
inline RatioReport hy_ratio(const TransformOperator& T, const GridFunction& f,
                            double p) {
  return hyp_ratio(T, f, MultiplierSymbol::constant(1.0), p,
                   make_exponents(p).p_conj());
}

/// Hormander bound
///   H = sup_{s>0} s * mu_{k,a}{ |h| >= s }^{1/p - 1/q},
/// exact for closed-form symbols, numeric sup otherwise. Returns +inf when
/// unbounded (never throws for that).
inline double hormander_bound(const MultiplierSymbol& h, double p, double q,
                              const Params& params,
                              const QuadratureRule* rule = nullptr) {
  const Exponents e = make_exponents(p, -1.0, q);
  const double expo = 1.0 / e.p - 1.0 / e.q;
  return sup_level_functional(h, expo, params, rule);
}

}  // namespace kaft

#endif  // KAFT_INEQUALITIES_HPP
