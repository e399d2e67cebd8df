#include "tqft/cspartition.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace tqft::cs {

namespace {

using excalc::HodgeMetric;
using excalc::SimplicialComplex;

// Ascending eigenvalues of a symmetric PSD matrix.
Eigen::VectorXd spectrum_of(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("cspartition: eigensolver failed");
  return es.eigenvalues();
}

// Weighted coboundary in symmetrized coordinates,
// A_p = W_{p+1}^{1/2} d_p W_p^{-1/2}; the up block at degree p is A_p^T A_p
// and the down block is A_{p-1} A_{p-1}^T.
Eigen::MatrixXd a_matrix(const SimplicialComplex& K, int p,
                         const HodgeMetric& metric) {
  if (p < 0 || p >= K.dimension())
    return Eigen::MatrixXd::Zero(0, std::max<long>(K.simplex_count(p), 0));
  const Eigen::VectorXd sp = metric.weights[p].array().sqrt().matrix();
  const Eigen::VectorXd sq = metric.weights[p + 1].array().sqrt().matrix();
  return sq.asDiagonal() * excalc::coboundary_matrix(K, p).cast<double>() *
         sp.cwiseInverse().asDiagonal();
}

std::vector<double> strip_zeros(const Eigen::VectorXd& eigenvalues,
                                double scale) {
  const double thresh = excalc::kZeroModeRelativeThreshold * std::max(scale, 0.0);
  std::vector<double> nonzero;
  for (long i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > thresh) nonzero.push_back(eigenvalues[i]);
  return nonzero;
}

}  // namespace

DeterminantReport det_prime(const SimplicialComplex& K, int p,
                            const HodgeMetric& metric) {
  const Eigen::VectorXd eigenvalues =
      excalc::laplacian_spectrum(K, p, metric);
  const double lmax =
      eigenvalues.size() ? std::max(0.0, eigenvalues.maxCoeff()) : 0.0;
  DeterminantReport report;
  report.degree = p;
  report.nonzero_eigenvalues = strip_zeros(eigenvalues, lmax);
  for (double ev : report.nonzero_eigenvalues)
    report.log_det_prime += std::log(ev);
  report.zero_mode_count =
      eigenvalues.size() -
      static_cast<long>(report.nonzero_eigenvalues.size());

  const long betti = excalc::betti_numbers(K)[p];
  if (report.zero_mode_count != betti)
    throw ConsistencyError("det_prime: zero-mode count " +
                           std::to_string(report.zero_mode_count) +
                           " != Betti number " + std::to_string(betti) +
                           " at degree " + std::to_string(p));
  return report;
}

bool verify_laplacian_factorization(const SimplicialComplex& K, int p,
                                    const HodgeMetric& metric, double tol) {
  if (p < 1 || p > K.dimension())
    throw InputError("verify_laplacian_factorization: degree " +
                     std::to_string(p) + " out of range 1.." +
                     std::to_string(K.dimension()));
  metric.validate(K);

  const Eigen::MatrixXd up_block = a_matrix(K, p, metric);
  const Eigen::MatrixXd down_block = a_matrix(K, p - 1, metric);
  const Eigen::VectorXd up_spec =
      spectrum_of(up_block.transpose() * up_block);
  const Eigen::VectorXd down_spec =
      spectrum_of(down_block * down_block.transpose());
  const Eigen::VectorXd full_spec = excalc::laplacian_spectrum(K, p, metric);

  // One common zero threshold so the three spectra are stripped consistently.
  double scale = 0.0;
  for (const auto* s : {&up_spec, &down_spec, &full_spec})
    if (s->size()) scale = std::max(scale, s->maxCoeff());

  std::vector<double> blocks = strip_zeros(up_spec, scale);
  const std::vector<double> down_nonzero = strip_zeros(down_spec, scale);
  blocks.insert(blocks.end(), down_nonzero.begin(), down_nonzero.end());
  std::sort(blocks.begin(), blocks.end());
  const std::vector<double> full = strip_zeros(full_spec, scale);

  if (blocks.size() != full.size()) return false;
  double log_blocks = 0.0, log_full = 0.0;
  for (size_t i = 0; i < full.size(); ++i) {
    if (std::abs(blocks[i] - full[i]) > tol * std::max(1.0, full[i]))
      return false;
    log_blocks += std::log(blocks[i]);
    log_full += std::log(full[i]);
  }
  return std::abs(log_blocks - log_full) <=
         tol * std::max(1.0, std::abs(log_full));
}

bool verify_updown_duality(const SimplicialComplex& K, int p, double tol) {
  if (p < 0 || p > K.dimension())
    throw InputError("verify_updown_duality: degree " + std::to_string(p) +
                     " out of range 0.." + std::to_string(K.dimension()));
  const HodgeMetric unit = HodgeMetric::unit(K);
  const Eigen::MatrixXd a = a_matrix(K, p, unit);
  // At the top degree the up block is absent and both spectra are empty.
  const Eigen::VectorXd up_spec = spectrum_of(a.transpose() * a);
  const Eigen::VectorXd down_next_spec = spectrum_of(a * a.transpose());

  double scale = 0.0;
  if (up_spec.size()) scale = std::max(scale, up_spec.maxCoeff());
  if (down_next_spec.size()) scale = std::max(scale, down_next_spec.maxCoeff());
  const std::vector<double> lhs = strip_zeros(up_spec, scale);
  const std::vector<double> rhs = strip_zeros(down_next_spec, scale);
  if (lhs.size() != rhs.size()) return false;
  for (size_t i = 0; i < lhs.size(); ++i)
    if (std::abs(lhs[i] - rhs[i]) > tol * std::max(1.0, rhs[i])) return false;
  return true;
}

CsPartitionResult cs_partition(const SimplicialComplex& K,
                               const HodgeMetric& metric) {
  if (K.dimension() < 1)
    throw InputError("cs_partition: complex must have dimension >= 1");
  const DeterminantReport d0 = det_prime(K, 0, metric);
  const DeterminantReport d1 = det_prime(K, 1, metric);
  CsPartitionResult result;
  result.log_Z = 0.75 * d0.log_det_prime - 0.25 * d1.log_det_prime;
  result.harmonic_dimension_0 = d0.zero_mode_count;
  result.harmonic_dimension_1 = d1.zero_mode_count;
  return result;
}

}  // namespace tqft::cs
