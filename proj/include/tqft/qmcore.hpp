#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "tqft/errors.hpp"

namespace tqft::qm {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Normalized state vector over a finite basis (hbar = 1 throughout).
class QuantumState {
 public:
  explicit QuantumState(Vector amplitudes);  // normalizes; zero vector errors
  const Vector& amplitudes() const { return amps_; }
  int dimension() const { return static_cast<int>(amps_.size()); }

 private:
  Vector amps_;
};

// Square complex matrix validated to equal its adjoint within 1e-12
// (relative to the largest entry).
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);
  const Matrix& matrix() const { return m_; }
  int dimension() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
};

Matrix commutator(const Matrix& a, const Matrix& b);      // AB - BA
Matrix anticommutator(const Matrix& a, const Matrix& b);  // AB + BA

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// e^{-iHt} |psi0> via spectral decomposition; norm-preserving.
QuantumState evolve_schrodinger(const HermitianOperator& h,
                                const QuantumState& psi0, double t);

// Heisenberg-picture operator S^+(t) F S(t) with S = e^{-iHt}.
HermitianOperator heisenberg_evolve(const HermitianOperator& f,
                                    const HermitianOperator& h, double t);

// <psi| F |psi>.
std::complex<double> expectation(const HermitianOperator& f,
                                 const QuantumState& psi);

// Time-dependent perturbation H(t) = E + epsilon * H1(t), with H1 sampled
// on the uniform grid t0..t inclusive (v.size() points, v[i] = H1(t_i)).
struct PerturbationProblem {
  HermitianOperator e;
  std::vector<HermitianOperator> v;
  double epsilon;
  double t0;
  double t;
};

// Convenience builder for a time-independent perturbation sampled on
// `samples` grid points.
PerturbationProblem constant_perturbation(const HermitianOperator& e,
                                          const Matrix& h1, double epsilon,
                                          double t0, double t, int samples);

// Interaction-picture transition operator through the given order (1 or 2),
// in the eigenbasis of E (eigenvalues ascending):
//   V*(t) = e^{iE(t-t0)} (epsilon H1(t)) e^{-iE(t-t0)}
//   T*    = I - i Int V*  -  Int dt' V*(t') Int_{t0}^{t'} dt'' V*(t'')
// with trapezoidal quadrature (nested and time-ordered for second order).
// Fewer than 8 time samples is a resolution error.
Matrix dyson_amplitude(const PerturbationProblem& problem, int order);

// |<to| T* |from>|^2 with indices in the ascending E-eigenbasis.
double transition_probability(const PerturbationProblem& problem, int order,
                              int from, int to);

// Free-particle propagator (m/(2*pi*i*t))^{dim/2} e^{i m (x-x0)^2 / (2t)}
// for dim 1 or 3 (x, x0 are radial separations in the 3D case).
std::complex<double> free_propagator(double m, double x0, double x, double t,
                                     int dim);

struct SpatialGrid {
  double xmin = 0.0;
  double xmax = 0.0;
  int npoints = 0;
};

enum class KernelMode {
  kLorentzian,  // oscillatory kernel e^{i m dx^2 / (2 tau)}
  kEuclidean,   // Wick-rotated real Gaussian kernel
};

// Time-sliced 1D path integral: `slices` short-time kernels composed by
// trapezoidal quadrature on the grid.  slices = 1 returns the closed-form
// kernel itself.  A grid too coarse for the kernel's oscillation (or for
// the Gaussian width in Euclidean mode) is a resolution error carrying the
// minimum usable point count in its message.
std::complex<double> path_integral_propagator(
    double m, double x0, double x, double t, int slices,
    const SpatialGrid& grid, KernelMode mode = KernelMode::kLorentzian);
std::complex<double> path_integral_propagator_serial(
    double m, double x0, double x, double t, int slices,
    const SpatialGrid& grid, KernelMode mode = KernelMode::kLorentzian);
std::complex<double> path_integral_propagator_parallel(
    double m, double x0, double x, double t, int slices,
    const SpatialGrid& grid, KernelMode mode = KernelMode::kLorentzian);

}  // namespace tqft::qm
