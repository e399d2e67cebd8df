#include "tqft/qmcore.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <numbers>
#include <string>

namespace tqft::qm {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

struct EigenSystem {
  Eigen::VectorXd values;
  Matrix vectors;
};

EigenSystem diagonalize(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigensolver failed on Hermitian operator");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix evolution_operator(const EigenSystem& es, double t) {
  const int n = static_cast<int>(es.values.size());
  Vector phases(n);
  for (int i = 0; i < n; ++i) phases(i) = std::exp(-kI * es.values(i) * t);
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

}  // namespace

QuantumState::QuantumState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) {
    throw InputError("quantum state needs at least one amplitude");
  }
  const double n = amps_.norm();
  if (n < 1e-14) {
    throw InputError("quantum state cannot be the zero vector");
  }
  amps_ /= n;
}

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw InputError("operator must be a nonempty square matrix");
  }
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  const double defect = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * scale) {
    throw InputError("operator is not Hermitian (defect " +
                     std::to_string(defect) + ")");
  }
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw InputError("commutator needs two square matrices of equal size");
  }
  return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw InputError("anticommutator needs two square matrices of equal size");
  }
  return a * b + b * a;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

QuantumState evolve_schrodinger(const HermitianOperator& h,
                                const QuantumState& psi0, double t) {
  if (h.dimension() != psi0.dimension()) {
    throw InputError("Hamiltonian and state dimensions differ");
  }
  const Matrix s = evolution_operator(diagonalize(h), t);
  return QuantumState(s * psi0.amplitudes());
}

HermitianOperator heisenberg_evolve(const HermitianOperator& f,
                                    const HermitianOperator& h, double t) {
  if (h.dimension() != f.dimension()) {
    throw InputError("operator and Hamiltonian dimensions differ");
  }
  const Matrix s = evolution_operator(diagonalize(h), t);
  Matrix ft = s.adjoint() * f.matrix() * s;
  ft = 0.5 * (ft + ft.adjoint().eval());  // discard rounding skew
  return HermitianOperator(std::move(ft));
}

std::complex<double> expectation(const HermitianOperator& f,
                                 const QuantumState& psi) {
  if (f.dimension() != psi.dimension()) {
    throw InputError("operator and state dimensions differ");
  }
  return (psi.amplitudes().adjoint() * f.matrix() * psi.amplitudes())(0, 0);
}

PerturbationProblem constant_perturbation(const HermitianOperator& e,
                                          const Matrix& h1, double epsilon,
                                          double t0, double t, int samples) {
  if (samples < 2) throw InputError("need at least two time samples");
  std::vector<HermitianOperator> v;
  v.reserve(samples);
  for (int i = 0; i < samples; ++i) v.emplace_back(h1);
  return PerturbationProblem{e, std::move(v), epsilon, t0, t};
}

Matrix dyson_amplitude(const PerturbationProblem& problem, int order) {
  if (order != 1 && order != 2) {
    throw InputError("perturbation order must be 1 or 2");
  }
  const int samples = static_cast<int>(problem.v.size());
  if (samples < 8) {
    throw NumericError(
        "resolution error: time grid needs at least 8 samples, got " +
        std::to_string(samples));
  }
  if (!(problem.t > problem.t0)) {
    throw InputError("time interval must satisfy t > t0");
  }
  const int dim = problem.e.dimension();
  for (const auto& vi : problem.v) {
    if (vi.dimension() != dim) {
      throw InputError("perturbation sample dimension differs from E");
    }
  }

  const EigenSystem es = diagonalize(problem.e);
  const double h = (problem.t - problem.t0) / (samples - 1);

  // V*(t_i) in the E-eigenbasis: phase-dressed matrix elements
  // e^{i (lambda_a - lambda_b)(t_i - t0)} (epsilon H1)_{ab}.
  std::vector<Matrix> vstar(samples);
  for (int i = 0; i < samples; ++i) {
    const double dt = h * i;
    Matrix m =
        es.vectors.adjoint() * (problem.epsilon * problem.v[i].matrix()) *
        es.vectors;
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        m(a, b) *= std::exp(kI * (es.values(a) - es.values(b)) * dt);
      }
    }
    vstar[i] = std::move(m);
  }

  auto weight = [&](int i) { return (i == 0 || i == samples - 1) ? h / 2 : h; };

  Matrix t1 = Matrix::Zero(dim, dim);
  for (int i = 0; i < samples; ++i) t1 += weight(i) * vstar[i];
  t1 *= -kI;

  Matrix result = Matrix::Identity(dim, dim) + t1;
  if (order == 2) {
    // Inner integral W(t_i) = Int_{t0}^{t_i} V*, cumulative trapezoid.
    Matrix w = Matrix::Zero(dim, dim);
    Matrix t2 = Matrix::Zero(dim, dim);
    t2 += weight(0) * (vstar[0] * w);
    for (int i = 1; i < samples; ++i) {
      w += (h / 2) * (vstar[i - 1] + vstar[i]);
      t2 += weight(i) * (vstar[i] * w);
    }
    result -= t2;
  }
  return result;
}

double transition_probability(const PerturbationProblem& problem, int order,
                              int from, int to) {
  const int dim = problem.e.dimension();
  if (from < 0 || from >= dim || to < 0 || to >= dim) {
    throw InputError("transition indices out of range");
  }
  const Matrix t = dyson_amplitude(problem, order);
  return std::norm(t(to, from));
}

std::complex<double> free_propagator(double m, double x0, double x, double t,
                                     int dim) {
  if (!(m > 0)) throw InputError("mass must be positive");
  if (dim != 1 && dim != 3) throw InputError("dimension must be 1 or 3");
  if (t == 0.0) {
    throw NumericError("singularity: free propagator undefined at t = 0");
  }
  const double dx = x - x0;
  const std::complex<double> base =
      m / (2.0 * std::numbers::pi * kI * t);
  return std::pow(base, dim / 2.0) * std::exp(kI * m * dx * dx / (2.0 * t));
}

namespace {

std::complex<double> short_time_kernel(double m, double from, double to,
                                       double tau, KernelMode mode) {
  if (mode == KernelMode::kLorentzian) {
    return free_propagator(m, from, to, tau, 1);
  }
  const double dx = to - from;
  return std::sqrt(m / (2.0 * std::numbers::pi * tau)) *
         std::exp(-m * dx * dx / (2.0 * tau));
}

std::complex<double> path_integral_impl(double m, double x0, double x,
                                        double t, int slices,
                                        const SpatialGrid& grid,
                                        KernelMode mode, bool parallel) {
  if (!(m > 0)) throw InputError("mass must be positive");
  if (slices < 1) throw InputError("slice count must be >= 1");
  if (t == 0.0) {
    throw NumericError("singularity: propagator undefined at t = 0");
  }
  if (mode == KernelMode::kEuclidean && !(t > 0)) {
    throw InputError("Euclidean mode needs t > 0");
  }
  const double tau = t / slices;
  if (slices == 1) return short_time_kernel(m, x0, x, tau, mode);

  if (grid.npoints < 2 || !(grid.xmax > grid.xmin)) {
    throw InputError("spatial grid needs xmax > xmin and at least 2 points");
  }
  const int n = grid.npoints;
  const double span = grid.xmax - grid.xmin;
  const double hx = span / (n - 1);

  // Resolution guard: the grid must resolve the kernel's fastest feature.
  if (mode == KernelMode::kLorentzian) {
    // Largest phase increment per grid step is m * span * hx / tau.
    if (m * span * hx / std::abs(tau) > std::numbers::pi) {
      const int needed =
          static_cast<int>(std::ceil(m * span * span / (std::numbers::pi *
                                                        std::abs(tau)))) +
          1;
      throw NumericError(
          "resolution error: grid step too coarse for the kernel "
          "oscillation; use at least " +
          std::to_string(needed) + " points for this domain and slicing");
    }
  } else {
    const double width = std::sqrt(tau / m);
    if (hx > width) {
      const int needed = static_cast<int>(std::ceil(span / width)) + 1;
      throw NumericError(
          "resolution error: grid step wider than the Gaussian kernel; use "
          "at least " +
          std::to_string(needed) + " points for this domain and slicing");
    }
  }

  auto xat = [&](int i) { return grid.xmin + hx * i; };
  auto wat = [&](int i) { return (i == 0 || i == n - 1) ? hx / 2 : hx; };

  std::vector<std::complex<double>> u(n);
  for (int i = 0; i < n; ++i) u[i] = short_time_kernel(m, x0, xat(i), tau, mode);

  std::vector<std::complex<double>> next(n);
  for (int step = 0; step < slices - 2; ++step) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (int j = 0; j < n; ++j) {
      std::complex<double> acc(0.0, 0.0);
      for (int i = 0; i < n; ++i) {
        acc += wat(i) * short_time_kernel(m, xat(i), xat(j), tau, mode) * u[i];
      }
      next[j] = acc;
    }
    std::swap(u, next);
  }

  std::complex<double> out(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    out += wat(i) * short_time_kernel(m, xat(i), x, tau, mode) * u[i];
  }
  return out;
}

}  // namespace

std::complex<double> path_integral_propagator_serial(
    double m, double x0, double x, double t, int slices,
    const SpatialGrid& grid, KernelMode mode) {
  return path_integral_impl(m, x0, x, t, slices, grid, mode, false);
}

std::complex<double> path_integral_propagator_parallel(
    double m, double x0, double x, double t, int slices,
    const SpatialGrid& grid, KernelMode mode) {
  return path_integral_impl(m, x0, x, t, slices, grid, mode, true);
}

std::complex<double> path_integral_propagator(
    double m, double x0, double x, double t, int slices,
    const SpatialGrid& grid, KernelMode mode) {
  return path_integral_impl(m, x0, x, t, slices, grid, mode, true);
}

}  // namespace tqft::qm
