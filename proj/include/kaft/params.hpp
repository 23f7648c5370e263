#ifndef KAFT_PARAMS_HPP
#define KAFT_PARAMS_HPP

#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "kaft/errors.hpp"

namespace kaft {

/// Regimes in which the transform kernel is known to be uniformly bounded.
enum class BoundedKernelCase {
  N1AnyA,       ///< N = 1, any a > 0
  AEq1,         ///< a = 1 and 2<k> + N - 2 >= 0
  AEq2,         ///< a = 2 (Dunkl-transform specialization)
  K0ATwoOverM,  ///< k = 0 and a = 2/m for integer m >= 1
};

inline const char* to_string(BoundedKernelCase c) {
  switch (c) {
    case BoundedKernelCase::N1AnyA: return "N1_any_a";
    case BoundedKernelCase::AEq1: return "a_eq_1";
    case BoundedKernelCase::AEq2: return "a_eq_2";
    case BoundedKernelCase::K0ATwoOverM: return "k0_a_2_over_m";
  }
  return "?";
}

/// Deformation/multiplicity parameter set.
///
/// The full spectral pipeline runs in one dimension (Z2 root system,
/// <k> = k, weight |x|^{2k}); N >= 2 is supported only through radial
/// profiles, which reduce to the one-dimensional even sector with the
/// effective multiplicity below.
struct Params {
  int N = 1;
  double k = 0.0;
  double a = 2.0;
  bool radial = false;  ///< true when N >= 2 and only radial profiles are used

  /// <k>; for the 1D Z2 case this is just k.
  double k_index() const { return k; }

  /// Homogeneous dimension 2<k> + N + a - 2.
  double homogeneous_dim() const { return 2.0 * k_index() + N + a - 2.0; }

  /// Multiplicity of the equivalent 1D even-sector problem.
  /// A radial N-dimensional profile behaves like the 1D even sector with
  /// k_eff = <k> + (N-1)/2, so that 2 k_eff + a - 1 equals the homogeneous
  /// dimension in both pictures.
  double effective_multiplicity() const { return k_index() + 0.5 * (N - 1); }

  /// Exponent of the radial density: |x|^{2k+a-2} in 1D,
  /// r^{2<k>+N+a-3} in radial mode. Both equal homogeneous_dim() - 1.
  double density_exponent() const { return homogeneous_dim() - 1.0; }
};

/// Outcome of checking (N, k, a) against the standing assumptions.
struct AdmissibilityReport {
  bool admissible = false;
  std::set<BoundedKernelCase> bounded_kernel_cases;
  bool conjecture_regime = false;  ///< a + 2<k> + N - 3 >= 0
  std::string notes;
};

namespace detail {

/// True when a = 2/m for some integer 1 <= m <= 64, within 1e-12.
inline bool is_two_over_integer(double a) {
  for (int m = 1; m <= 64; ++m) {
    if (std::abs(a - 2.0 / m) < 1e-12) return true;
  }
  return false;
}

}  // namespace detail

/// Classify (N, k, a). Throws InadmissibleParams when the basic standing
/// assumptions (a > 0, k >= 0, a + 2<k> + N - 2 > 0) fail; otherwise reports
/// which bounded-kernel regimes apply. Uniform boundedness in the conjecture
/// regime alone is open; the report flags it without asserting it.
inline AdmissibilityReport validate(int N, double k, double a) {
  std::ostringstream notes;
  if (N < 1) throw InadmissibleParams("N must be >= 1");
  if (!(a > 0.0)) throw InadmissibleParams("a must be > 0");
  if (k < 0.0) throw InadmissibleParams("k must be >= 0");
  const double k_index = k;
  if (!(a + 2.0 * k_index + N - 2.0 > 0.0)) {
    std::ostringstream msg;
    msg << "a + 2<k> + N - 2 = " << (a + 2.0 * k_index + N - 2.0)
        << " must be strictly positive";
    throw InadmissibleParams(msg.str());
  }

  AdmissibilityReport rep;
  if (N == 1) rep.bounded_kernel_cases.insert(BoundedKernelCase::N1AnyA);
  if (a == 1.0 && 2.0 * k_index + N - 2.0 >= 0.0)
    rep.bounded_kernel_cases.insert(BoundedKernelCase::AEq1);
  if (a == 2.0) rep.bounded_kernel_cases.insert(BoundedKernelCase::AEq2);
  if (k == 0.0 && detail::is_two_over_integer(a))
    rep.bounded_kernel_cases.insert(BoundedKernelCase::K0ATwoOverM);
  rep.conjecture_regime = (a + 2.0 * k_index + N - 3.0 >= 0.0);

  rep.admissible = !rep.bounded_kernel_cases.empty() || rep.conjecture_regime;
  if (rep.bounded_kernel_cases.empty() && rep.conjecture_regime) {
    notes << "conjecture regime only: kernel boundedness is flagged, not asserted";
  }
  rep.notes = notes.str();
  return rep;
}

/// Build a validated Params value. Radial mode is mandatory for N >= 2.
inline Params make_params(int N, double k, double a, bool radial = false) {
  validate(N, k, a);
  if (N >= 2 && !radial)
    throw InadmissibleParams("N >= 2 requires radial mode");
  return Params{N, k, a, radial && N >= 2};
}

}  // namespace kaft

#endif  // KAFT_PARAMS_HPP
