#ifndef KAFT_BASIS_HPP
#define KAFT_BASIS_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "kaft/errors.hpp"
#include "kaft/params.hpp"
#include "kaft/quadrature.hpp"

namespace kaft {

namespace detail {

/// Three-term recurrence data of one parity block's orthonormal polynomials
/// in the substituted variable u = (2/a)|x|^a:
///   beta[j+1] q_{j+1}(u) = (u - alpha[j]) q_j(u) - beta[j] q_{j-1}(u),
/// q_0 = 1/norm0. Block functions are sign(x)^delta |x|^delta q_j(u) e^{-u/2}.
struct BlockRecurrence {
  int parity = 0;
  int count = 0;
  double norm0 = 1.0;
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[0] unused
};

}  // namespace detail

/// Orthonormal spectral basis of L^2(mu_{k,a}) together with the assembled
/// oscillator matrix and its eigendecomposition.
///
/// Basis functions have definite parity and the form
///   phi_{2j+delta}(x) = sign(x)^delta |x|^delta q_j(u) exp(-u/2),
/// u = (2/a)|x|^a, with q_j the orthonormal polynomials of the induced
/// discrete measure (built by the Stieltjes procedure on the quadrature
/// grid, so discrete orthonormality holds to rounding accuracy by
/// construction). Delta_{k,a} maps this family into itself exactly, which
/// keeps the operator assembly free of differentiation error: the u-space
/// derivatives follow the differentiated recurrence.
///
/// In radial mode only the even sector is present and the multiplicity is
/// replaced by the effective 1D value.
struct SpectralBasis {
  Params params;
  QuadratureRule rule;
  int n_basis = 0;
  Eigen::MatrixXd funcs;      ///< n_basis x n_nodes samples
  double gram_defect = 0.0;   ///< max |Gram - I| entry on the grid
  Eigen::MatrixXd D;          ///< oscillator matrix, symmetrized
  double asym_defect = 0.0;   ///< max |D - D^T| entry before symmetrization
  Eigen::VectorXd eigvals;    ///< descending (ground state first)
  Eigen::MatrixXd eigvecs;    ///< columns are eigenvectors in basis coordinates

  std::vector<detail::BlockRecurrence> blocks;

  /// Number of parity blocks (1 radially, 2 on the line).
  int parity_count() const { return params.radial ? 1 : 2; }

  /// Values of all basis functions at an arbitrary point, via the stored
  /// recurrences.
  Eigen::VectorXd eval_at(double x) const {
    const double a = params.a;
    const double ax = std::abs(x);
    const double u = (2.0 / a) * std::pow(ax, a);
    const double env = std::exp(-u / 2.0);
    Eigen::VectorXd vals = Eigen::VectorXd::Zero(n_basis);
    for (const auto& blk : blocks) {
      double factor = env;
      if (blk.parity == 1) factor *= x;  // sign(x) |x|
      double qm = 0.0, q = 1.0 / blk.norm0;
      for (int j = 0; j < blk.count; ++j) {
        const int idx = params.radial ? j : 2 * j + blk.parity;
        vals[idx] = q * factor;
        if (j < blk.count - 1) {
          const double qn =
              ((u - blk.alpha[j]) * q - (j > 0 ? blk.beta[j] : 0.0) * qm) /
              blk.beta[j + 1];
          qm = q;
          q = qn;
        }
      }
    }
    return vals;
  }
};

/// Build the orthonormal basis and assemble the Delta_{k,a} matrix.
/// Requires n_basis <= n_nodes/4. Throws GramFailure when discrete
/// orthonormality cannot be reached and SelfAdjointnessDefect when the
/// assembled matrix is farther than 1e-6 from symmetric.
inline SpectralBasis build_basis(const Params& params, int n_basis,
                                 const QuadratureRule& rule) {
  if (n_basis < 1) throw GramFailure("build_basis: n_basis must be positive");
  if (static_cast<std::size_t>(n_basis) * 4 > rule.size())
    throw GramFailure("build_basis: need n_basis <= n_nodes/4");

  const double a = params.a;
  const double keff = params.radial ? params.effective_multiplicity() : params.k;
  const std::size_t nh = rule.half_count;
  const std::size_t off = rule.first_positive();

  // substituted variable and envelope on the positive nodes
  Eigen::VectorXd u(nh), env(nh), wpos(nh);
  for (std::size_t i = 0; i < nh; ++i) {
    const double x = rule.nodes[off + i];
    u[Eigen::Index(i)] = (2.0 / a) * std::pow(x, a);
    env[Eigen::Index(i)] = std::exp(-u[Eigen::Index(i)] / 2.0);
    wpos[Eigen::Index(i)] = rule.weights[off + i];
  }

  SpectralBasis basis;
  basis.params = params;
  basis.rule = rule;
  basis.n_basis = n_basis;
  basis.funcs = Eigen::MatrixXd::Zero(n_basis, Eigen::Index(rule.size()));
  basis.D = Eigen::MatrixXd::Zero(n_basis, n_basis);
  basis.eigvals = Eigen::VectorXd::Zero(n_basis);
  basis.eigvecs = Eigen::MatrixXd::Zero(n_basis, n_basis);

  std::vector<std::pair<double, Eigen::VectorXd>> eigenpairs;  // (lambda, global vec)

  const int nblocks = basis.parity_count();
  for (int delta = 0; delta < nblocks; ++delta) {
    const int nb = params.radial ? n_basis : (n_basis + 1 - delta) / 2;
    if (nb == 0) continue;

    // discrete measure of the block in u
    Eigen::VectorXd W(static_cast<Eigen::Index>(nh));
    const double mirror = params.radial ? 1.0 : 2.0;
    for (std::size_t i = 0; i < nh; ++i) {
      const double x = rule.nodes[off + i];
      W[Eigen::Index(i)] = mirror * wpos[Eigen::Index(i)] *
                           std::pow(x, 2.0 * delta) *
                           env[Eigen::Index(i)] * env[Eigen::Index(i)];
    }

    // Stieltjes procedure; the same recurrence propagates u-derivatives.
    // Columns of Q/Qp/Qpp are q_j, q_j', q_j'' sampled on the positive nodes.
    // Nodes whose measure weight underflowed to zero are masked out: they
    // contribute nothing to any inner product, but the raw recurrence values
    // there would overflow at high degree and poison the sums with NaNs.
    const Eigen::Index inh = static_cast<Eigen::Index>(nh);
    const Eigen::ArrayXd alive = (W.array() > 0.0).cast<double>();
    Eigen::MatrixXd Q(inh, nb), Qp(inh, nb), Qpp(inh, nb);
    detail::BlockRecurrence rec;
    rec.parity = delta;
    rec.count = nb;
    rec.alpha.resize(nb, 0.0);
    rec.beta.resize(nb, 0.0);
    rec.norm0 = std::sqrt(W.sum());
    if (!(rec.norm0 > 0.0) || !std::isfinite(rec.norm0))
      throw GramFailure("build_basis: degenerate discrete measure");
    Q.col(0).setConstant(1.0 / rec.norm0);
    Qp.col(0).setZero();
    Qpp.col(0).setZero();
    for (int j = 0; j + 1 < nb; ++j) {
      const double al = (W.array() * u.array() * Q.col(j).array().square()).sum();
      rec.alpha[j] = al;
      Eigen::ArrayXd r = (u.array() - al) * Q.col(j).array();
      Eigen::ArrayXd rp = Q.col(j).array() + (u.array() - al) * Qp.col(j).array();
      Eigen::ArrayXd rpp =
          2.0 * Qp.col(j).array() + (u.array() - al) * Qpp.col(j).array();
      if (j > 0) {
        r -= rec.beta[j] * Q.col(j - 1).array();
        rp -= rec.beta[j] * Qp.col(j - 1).array();
        rpp -= rec.beta[j] * Qpp.col(j - 1).array();
      }
      const double be = std::sqrt((W.array() * r.square()).sum());
      if (!(be > 0.0) || !std::isfinite(be))
        throw GramFailure("build_basis: Stieltjes breakdown, reduce n_basis");
      rec.beta[j + 1] = be;
      Q.col(j + 1) = (alive * r / be).matrix();
      Qp.col(j + 1) = (alive * rp / be).matrix();
      Qpp.col(j + 1) = (alive * rpp / be).matrix();
    }
    basis.blocks.push_back(rec);

    // oscillator action on the block: for f = sign^d |x|^d q(u) e^{-u/2},
    //   Delta_{k,a} f = sign^d |x|^d e^{-u/2} [ 2 a u (q'' - q') + c (2q' - q) ],
    //   c = 2 keff + a - 1 + 2 delta.
    const double c = 2.0 * keff + a - 1.0 + 2.0 * delta;
    Eigen::MatrixXd DQ = (2.0 * a) * u.asDiagonal() * (Qpp - Qp) + c * (2.0 * Qp - Q);
    Eigen::MatrixXd Dblk = Q.transpose() * W.asDiagonal() * DQ;
    basis.asym_defect = std::max(basis.asym_defect,
                                 (Dblk - Dblk.transpose()).cwiseAbs().maxCoeff());
    Dblk = 0.5 * (Dblk + Dblk.transpose()).eval();

    // scatter samples into the full grid and the block matrix into D
    for (int j = 0; j < nb; ++j) {
      const int m = params.radial ? j : 2 * j + delta;
      for (std::size_t i = 0; i < nh; ++i) {
        const double x = rule.nodes[off + i];
        const double val = Q(Eigen::Index(i), j) * env[Eigen::Index(i)] *
                           (delta == 1 ? x : 1.0);
        basis.funcs(m, Eigen::Index(off + i)) = val;
        if (!params.radial) {
          const std::size_t mi = rule.size() - 1 - (off + i);  // node -x
          basis.funcs(m, Eigen::Index(mi)) = (delta == 1 ? -val : val);
        }
      }
      for (int l = 0; l < nb; ++l) {
        const int ml = params.radial ? l : 2 * l + delta;
        basis.D(ml, m) = Dblk(l, j);
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Dblk);
    for (int j = 0; j < nb; ++j) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n_basis);
      for (int l = 0; l < nb; ++l)
        v[params.radial ? l : 2 * l + delta] = es.eigenvectors()(l, j);
      eigenpairs.emplace_back(es.eigenvalues()[j], std::move(v));
    }
  }

  if (basis.asym_defect > 1e-6)
    throw SelfAdjointnessDefect("build_basis: assembled matrix asymmetry " +
                                std::to_string(basis.asym_defect) + " > 1e-6");

  // global ordering: descending eigenvalue, ground state first
  std::sort(eigenpairs.begin(), eigenpairs.end(),
            [](const auto& lhs, const auto& rhs) { return lhs.first > rhs.first; });
  for (int n = 0; n < n_basis; ++n) {
    basis.eigvals[n] = eigenpairs[std::size_t(n)].first;
    basis.eigvecs.col(n) = eigenpairs[std::size_t(n)].second;
  }

  // grid Gram defect over all pairs
  Eigen::MatrixXd WF = basis.funcs;
  for (std::size_t i = 0; i < rule.size(); ++i)
    WF.col(Eigen::Index(i)) *= rule.weights[i];
  const Eigen::MatrixXd G = WF * basis.funcs.transpose();
  basis.gram_defect =
      (G - Eigen::MatrixXd::Identity(n_basis, n_basis)).cwiseAbs().maxCoeff();
  if (basis.gram_defect > 1e-8)
    throw GramFailure("build_basis: gram defect exceeds 1e-8");

  return basis;
}

/// The assembled (symmetrized) Delta_{k,a} matrix of a basis.
inline const Eigen::MatrixXd& oscillator_matrix(const SpectralBasis& basis) {
  return basis.D;
}

}  // namespace kaft

#endif  // KAFT_BASIS_HPP
