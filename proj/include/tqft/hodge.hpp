#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tqft/simplicial.hpp"

namespace tqft::excalc {

// Diagonal inner product on cochains: weights[p][i] > 0 weighs the i-th
// p-simplex.  <x, y>_p = sum_i W_p[i] x[i] y[i].
struct HodgeMetric {
  std::vector<Eigen::VectorXd> weights;

  static HodgeMetric unit(const SimplicialComplex& K);
  // Throws InputError unless sizes match K and all weights are positive.
  void validate(const SimplicialComplex& K) const;
};

// Weighted Hodge Laplacian on p-cochains,
//   L_p = delta_{p+1} d_p + d_{p-1} delta_p,
// where delta is the metric adjoint of the coboundary,
// delta_{p+1} = W_p^{-1} d_p^T W_{p+1}.  Self-adjoint in the weighted inner
// product (plain-symmetric when the weights are unit).
Eigen::MatrixXd hodge_laplacian(const SimplicialComplex& K, int p,
                                const HodgeMetric& metric);

// Similarity transform W_p^{1/2} L_p W_p^{-1/2}: symmetric with the same
// spectrum; all eigen-decompositions below run on this form.
Eigen::MatrixXd symmetrized_laplacian(const SimplicialComplex& K, int p,
                                      const HodgeMetric& metric);

// Ascending eigenvalues of the degree-p Laplacian.
Eigen::VectorXd laplacian_spectrum(const SimplicialComplex& K, int p,
                                   const HodgeMetric& metric);

// Relative cutoff below which an eigenvalue counts as a zero mode.
inline constexpr double kZeroModeRelativeThreshold = 1e-9;

// omega = exact + coexact + harmonic with the three parts pairwise
// orthogonal in the metric; residual_norm is the weighted norm of the
// reconstruction defect (expected at rounding level).
struct HodgeDecomposition {
  Cochain exact;
  Cochain coexact;
  Cochain harmonic;
  double residual_norm = 0.0;
};

HodgeDecomposition hodge_decompose(const SimplicialComplex& K,
                                   const Cochain& omega,
                                   const HodgeMetric& metric);

// Basis of Ker L_p, orthonormal in the weighted inner product; the list
// length always equals b_p.
std::vector<Cochain> harmonic_basis(const SimplicialComplex& K, int p,
                                    const HodgeMetric& metric);

}  // namespace tqft::excalc
