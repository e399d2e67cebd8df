#include "tqft/hodge.hpp"

#include <Eigen/Eigenvalues>

#include "tqft/simplicial.hpp"

namespace tqft::excalc {

namespace {

// Coboundary d_p as a double matrix (empty when p is out of range, which
// encodes the absent blocks at the bottom/top degree).
Eigen::MatrixXd d_matrix(const SimplicialComplex& K, int p) {
  if (p < 0 || p >= K.dimension())
    return Eigen::MatrixXd::Zero(0, std::max<long>(K.simplex_count(p), 0));
  return coboundary_matrix(K, p).cast<double>();
}

Eigen::VectorXd sqrt_weights(const Eigen::VectorXd& w) {
  return w.array().sqrt().matrix();
}

}  // namespace

HodgeMetric HodgeMetric::unit(const SimplicialComplex& K) {
  HodgeMetric m;
  for (int p = 0; p <= K.dimension(); ++p)
    m.weights.push_back(Eigen::VectorXd::Ones(K.simplex_count(p)));
  return m;
}

void HodgeMetric::validate(const SimplicialComplex& K) const {
  if (static_cast<int>(weights.size()) != K.dimension() + 1)
    throw InputError("HodgeMetric: expected weights for degrees 0.." +
                     std::to_string(K.dimension()));
  for (int p = 0; p <= K.dimension(); ++p) {
    if (weights[p].size() != K.simplex_count(p))
      throw InputError("HodgeMetric: degree " + std::to_string(p) +
                       " has " + std::to_string(weights[p].size()) +
                       " weights for " + std::to_string(K.simplex_count(p)) +
                       " simplices");
    if ((weights[p].array() <= 0.0).any())
      throw InputError("HodgeMetric: weights must be strictly positive");
  }
}

Eigen::MatrixXd hodge_laplacian(const SimplicialComplex& K, int p,
                                const HodgeMetric& metric) {
  if (p < 0 || p > K.dimension())
    throw InputError("hodge_laplacian: degree " + std::to_string(p) +
                     " out of range 0.." + std::to_string(K.dimension()));
  metric.validate(K);
  const long n = K.simplex_count(p);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  if (p < K.dimension()) {
    // Up block: delta_{p+1} d_p = W_p^{-1} d_p^T W_{p+1} d_p.
    const Eigen::MatrixXd d = d_matrix(K, p);
    lap += metric.weights[p].cwiseInverse().asDiagonal() * d.transpose() *
           metric.weights[p + 1].asDiagonal() * d;
  }
  if (p > 0) {
    // Down block: d_{p-1} delta_p = d_{p-1} W_{p-1}^{-1} d_{p-1}^T W_p.
    const Eigen::MatrixXd d = d_matrix(K, p - 1);
    lap += d * metric.weights[p - 1].cwiseInverse().asDiagonal() *
           d.transpose() * metric.weights[p].asDiagonal();
  }
  return lap;
}

Eigen::MatrixXd symmetrized_laplacian(const SimplicialComplex& K, int p,
                                      const HodgeMetric& metric) {
  if (p < 0 || p > K.dimension())
    throw InputError("symmetrized_laplacian: degree " + std::to_string(p) +
                     " out of range 0.." + std::to_string(K.dimension()));
  metric.validate(K);
  const long n = K.simplex_count(p);
  const Eigen::VectorXd sp = sqrt_weights(metric.weights[p]);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  if (p < K.dimension()) {
    // W_p^{-1/2} d_p^T W_{p+1} d_p W_p^{-1/2} = A^T A with
    // A = W_{p+1}^{1/2} d_p W_p^{-1/2}.
    const Eigen::MatrixXd a = sqrt_weights(metric.weights[p + 1]).asDiagonal() *
                              d_matrix(K, p) *
                              sp.cwiseInverse().asDiagonal();
    lap += a.transpose() * a;
  }
  if (p > 0) {
    const Eigen::MatrixXd a = sp.asDiagonal() * d_matrix(K, p - 1) *
                              sqrt_weights(metric.weights[p - 1])
                                  .cwiseInverse()
                                  .asDiagonal();
    lap += a * a.transpose();
  }
  // Kill rounding asymmetry so self-adjoint eigensolvers see an exactly
  // symmetric matrix.
  return 0.5 * (lap + lap.transpose());
}

Eigen::VectorXd laplacian_spectrum(const SimplicialComplex& K, int p,
                                   const HodgeMetric& metric) {
  const Eigen::MatrixXd sym = symmetrized_laplacian(K, p, metric);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("laplacian_spectrum: eigensolver failed");
  return es.eigenvalues();
}

HodgeDecomposition hodge_decompose(const SimplicialComplex& K,
                                   const Cochain& omega,
                                   const HodgeMetric& metric) {
  const int p = omega.degree;
  if (p < 0 || p > K.dimension())
    throw InputError("hodge_decompose: cochain degree " + std::to_string(p) +
                     " out of range");
  metric.validate(K);
  if (omega.values.size() != K.simplex_count(p))
    throw InputError("hodge_decompose: cochain has " +
                     std::to_string(omega.values.size()) + " values for " +
                     std::to_string(K.simplex_count(p)) + " simplices");

  // Work in rescaled coordinates x~ = W^{1/2} x, where the weighted inner
  // product becomes Euclidean and the three ranges (exact, coexact,
  // harmonic) are mutually orthogonal in the ordinary sense.
  const Eigen::VectorXd sp = sqrt_weights(metric.weights[p]);
  const Eigen::VectorXd wt = sp.asDiagonal() * omega.values;

  Eigen::VectorXd exact_t = Eigen::VectorXd::Zero(wt.size());
  if (p > 0) {
    const Eigen::MatrixXd dn = sp.asDiagonal() * d_matrix(K, p - 1) *
                               sqrt_weights(metric.weights[p - 1])
                                   .cwiseInverse()
                                   .asDiagonal();
    exact_t = dn * dn.completeOrthogonalDecomposition().solve(wt);
  }
  Eigen::VectorXd coexact_t = Eigen::VectorXd::Zero(wt.size());
  if (p < K.dimension()) {
    const Eigen::MatrixXd up =
        (sqrt_weights(metric.weights[p + 1]).asDiagonal() * d_matrix(K, p) *
         sp.cwiseInverse().asDiagonal())
            .transpose();
    coexact_t = up * up.completeOrthogonalDecomposition().solve(wt);
  }

  // Harmonic part by explicit projection onto the numerical kernel.
  const Eigen::MatrixXd sym = symmetrized_laplacian(K, p, metric);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success)
    throw NumericError("hodge_decompose: eigensolver failed");
  const double lmax = es.eigenvalues().size()
                          ? std::max(0.0, es.eigenvalues().maxCoeff())
                          : 0.0;
  const double thresh = kZeroModeRelativeThreshold * lmax;
  Eigen::VectorXd harmonic_t = Eigen::VectorXd::Zero(wt.size());
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()[i]) <= thresh) {
      const Eigen::VectorXd v = es.eigenvectors().col(i);
      harmonic_t += v.dot(wt) * v;
    }
  }

  const Eigen::VectorXd defect_t = wt - exact_t - coexact_t - harmonic_t;
  const Eigen::VectorXd inv_sp = sp.cwiseInverse();

  HodgeDecomposition out;
  out.exact = {p, inv_sp.asDiagonal() * exact_t};
  out.coexact = {p, inv_sp.asDiagonal() * coexact_t};
  out.harmonic = {p, inv_sp.asDiagonal() * harmonic_t};
  out.residual_norm = defect_t.norm();  // Euclidean in x~ == weighted in x
  return out;
}

std::vector<Cochain> harmonic_basis(const SimplicialComplex& K, int p,
                                    const HodgeMetric& metric) {
  const Eigen::MatrixXd sym = symmetrized_laplacian(K, p, metric);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success)
    throw NumericError("harmonic_basis: eigensolver failed");
  const double lmax = es.eigenvalues().size()
                          ? std::max(0.0, es.eigenvalues().maxCoeff())
                          : 0.0;
  const double thresh = kZeroModeRelativeThreshold * lmax;
  const Eigen::VectorXd inv_sp =
      sqrt_weights(metric.weights[p]).cwiseInverse();
  std::vector<Cochain> basis;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i]) <= thresh)
      basis.push_back({p, inv_sp.asDiagonal() * es.eigenvectors().col(i)});
  const long expected = betti_numbers(K)[p];
  if (static_cast<long>(basis.size()) != expected)
    throw ConsistencyError("harmonic_basis: kernel dimension " +
                           std::to_string(basis.size()) +
                           " != Betti number " + std::to_string(expected));
  return basis;
}

}  // namespace tqft::excalc
