#ifndef KAFT_DUNKL_HPP
#define KAFT_DUNKL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "kaft/errors.hpp"
#include "kaft/params.hpp"
#include "kaft/quadrature.hpp"

namespace kaft {

/// One radial term c * |x|^rho.
struct RadialTerm {
  double coeff;
  double power;
};

/// Symbolic function of definite parity on the line:
///   f(x) = sign(x)^parity * sum_j c_j |x|^{rho_j} * [e^{-|x|^a/a}]
/// The envelope factor is optional so that the plain polynomial identities
/// (T x = 1 + 2k, T x^2 = 2x, ...) are expressible too. The family is closed
/// under the Dunkl operator and under Delta_{k,a}; the latter introduces
/// real (generally non-integer) powers when a is not an even integer.
struct SymbolicFunction {
  int parity = 0;  ///< 0 even, 1 odd
  double a = 2.0;  ///< deformation in the envelope exponent
  bool envelope = true;
  std::vector<RadialTerm> terms;

  /// Even/odd polynomial p(x) = sum coeffs[j] x^{parity + 2j} times the envelope.
  static SymbolicFunction from_poly(int parity, const std::vector<double>& coeffs,
                                    double a, bool envelope = true) {
    SymbolicFunction f;
    f.parity = parity;
    f.a = a;
    f.envelope = envelope;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      if (coeffs[j] != 0.0)
        f.terms.push_back({coeffs[j], double(parity + 2 * j)});
    return f;
  }

  /// Merge terms with (nearly) equal exponents and drop zeros.
  void simplify() {
    std::map<long long, RadialTerm> merged;
    for (const auto& t : terms) {
      const long long key = llround(t.power * 1e9);
      auto [it, fresh] = merged.try_emplace(key, t);
      if (!fresh) it->second.coeff += t.coeff;
    }
    terms.clear();
    for (auto& [key, t] : merged)
      if (std::abs(t.coeff) > 0.0) terms.push_back(t);
  }

  double eval(double x) const {
    const double ax = std::abs(x);
    double s = 0.0;
    if (ax == 0.0) {
      for (const auto& t : terms) {
        if (t.power < 0.0)
          throw SingularAtOrigin("SymbolicFunction: negative power at x = 0");
        if (t.power == 0.0) s += t.coeff;
      }
    } else {
      const double lx = std::log(ax);
      const double env = envelope ? -std::pow(ax, a) / a : 0.0;
      for (const auto& t : terms) s += t.coeff * std::exp(t.power * lx + env);
    }
    if (parity == 1 && x < 0.0) s = -s;
    return s;
  }
};

/// 1D Dunkl operator T f = f' + k (f(x) - f(-x))/x on the symbolic family.
/// Parity flips: even inputs lose the difference term, odd inputs gain the
/// 2k/x contribution.
inline SymbolicFunction dunkl_apply(const SymbolicFunction& f, double k) {
  SymbolicFunction out;
  out.parity = 1 - f.parity;
  out.a = f.a;
  out.envelope = f.envelope;
  for (const auto& t : f.terms) {
    const double shift = f.parity == 1 ? t.power + 2.0 * k : t.power;
    if (shift != 0.0) out.terms.push_back({t.coeff * shift, t.power - 1.0});
    if (f.envelope) out.terms.push_back({-t.coeff, t.power + f.a - 1.0});
  }
  out.simplify();
  return out;
}

/// Delta_{k,a} f = |x|^{2-a} T^2 f - |x|^a f; preserves parity.
inline SymbolicFunction delta_ka_apply(const SymbolicFunction& f, const Params& params) {
  const double k = params.radial ? params.effective_multiplicity() : params.k;
  SymbolicFunction tt = dunkl_apply(dunkl_apply(f, k), k);
  SymbolicFunction out;
  out.parity = f.parity;
  out.a = f.a;
  out.envelope = f.envelope;
  for (const auto& t : tt.terms) out.terms.push_back({t.coeff, t.power + 2.0 - f.a});
  for (const auto& t : f.terms) out.terms.push_back({-t.coeff, t.power + f.a});
  out.simplify();
  return out;
}

/// Pointwise Dunkl operator by centered finite differences, for cross-checking
/// the symbolic path. Step h = 1e-5 * max(|x|, 1).
inline double dunkl_apply_fd(const std::function<double(double)>& f, double k,
                             double x, double rel_step = 1e-5) {
  const double h = rel_step * std::max(std::abs(x), 1.0);
  const double deriv = (f(x + h) - f(x - h)) / (2.0 * h);
  if (std::abs(x) < h) {
    // difference quotient limit at the origin: 2k f'(0)
    return deriv + 2.0 * k * deriv;
  }
  return deriv + k * (f(x) - f(-x)) / x;
}

/// Dunkl operator on grid samples: non-uniform centered differences per half
/// line plus the exact reflection term (the node set is closed under negation).
inline GridFunction dunkl_apply(const GridFunction& f, double k) {
  const auto& r = *f.rule;
  if (r.params.radial)
    throw Error("dunkl_apply: grid path requires a full-line rule");
  const std::size_t n = r.size();
  GridFunction out(r);
  auto deriv_at = [&](std::size_t i) {
    // three-point Lagrange derivative on a non-uniform stencil
    const std::size_t j = std::clamp<std::size_t>(i, 1, n - 2);
    const double x0 = r.nodes[j - 1], x1 = r.nodes[j], x2 = r.nodes[j + 1];
    const auto f0 = f.values[Eigen::Index(j - 1)], f1 = f.values[Eigen::Index(j)],
               f2 = f.values[Eigen::Index(j + 1)];
    const double x = r.nodes[i];
    return f0 * ((2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2))) +
           f1 * ((2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2))) +
           f2 * ((2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1)));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t mirror = n - 1 - i;  // node at -x_i
    const auto diff = (f.values[Eigen::Index(i)] - f.values[Eigen::Index(mirror)]) /
                      r.nodes[i];
    out.values[Eigen::Index(i)] = deriv_at(i) + k * diff;
  }
  return out;
}

}  // namespace kaft

#endif  // KAFT_DUNKL_HPP
