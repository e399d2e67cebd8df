// Acceptance harness: one line per criterion, [PASS] or [FAIL], with the
// elapsed wall time.  Exits nonzero when any criterion fails.  Tolerances
// are pinned here and nowhere else; each criterion also carries a wall-time
// budget that counts as part of the criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <sys/wait.h>

#include "tqft/anyon.hpp"
#include "tqft/cspartition.hpp"
#include "tqft/errors.hpp"
#include "tqft/hodge.hpp"
#include "tqft/knot.hpp"
#include "tqft/latgauge.hpp"
#include "tqft/laurent.hpp"
#include "tqft/qmcore.hpp"
#include "tqft/simplicial.hpp"

namespace ex = tqft::excalc;
namespace cs = tqft::cs;
namespace kn = tqft::knot;
namespace an = tqft::anyon;
namespace lg = tqft::gauge;
namespace qm = tqft::qm;
using cd = std::complex<double>;

namespace {

using Fails = std::vector<std::string>;

std::string data_path(const std::string& name) {
  return std::string(TQFT_DATA_DIR) + "/" + name;
}

void expect(Fails& fails, bool ok, const std::string& what) {
  if (!ok) fails.push_back(what);
}

// ---------------------------------------------------------------- 1
void criterion_homology(Fails& fails) {
  const std::vector<std::pair<std::string, std::vector<long>>> cases = {
      {"hollow_triangle.txt", {1, 1}},
      {"solid_triangle.txt", {1, 0, 0}},
      {"hollow_tetrahedron.txt", {1, 0, 1}},
      {"torus7.txt", {1, 2, 1}},
  };
  for (const auto& [file, expected] : cases) {
    auto K = ex::read_complex_file(data_path(file));
    auto betti = ex::betti_numbers(K);
    expect(fails, betti == expected, file + ": betti mismatch");
    long alt_betti = 0, alt_count = 0;
    for (std::size_t p = 0; p < betti.size(); ++p) {
      long sign = (p % 2 == 0) ? 1 : -1;
      alt_betti += sign * betti[p];
      alt_count += sign * K.simplex_count(static_cast<int>(p));
    }
    long euler = ex::euler_characteristic(K);
    expect(fails, euler == alt_betti, file + ": euler != alternating betti");
    expect(fails, euler == alt_count, file + ": euler != alternating count");
  }
}

// ---------------------------------------------------------------- 2
void criterion_hodge(Fails& fails) {
  std::mt19937 rng(20240915);
  std::normal_distribution<double> gauss;
  const std::vector<std::string> files = {
      "hollow_triangle.txt", "solid_triangle.txt", "hollow_tetrahedron.txt",
      "torus7.txt"};
  for (const auto& file : files) {
    auto K = ex::read_complex_file(data_path(file));
    auto metric = ex::HodgeMetric::unit(K);
    auto betti = ex::betti_numbers(K);
    for (int p = 0; p <= K.dimension(); ++p) {
      Eigen::VectorXd spectrum = ex::laplacian_spectrum(K, p, metric);
      double cutoff = ex::kZeroModeRelativeThreshold *
                      std::max(1.0, spectrum.size() ? spectrum.maxCoeff() : 0.0);
      long zeros = (spectrum.array().abs() < cutoff).count();
      expect(fails, zeros == betti[p],
             file + ": dim Ker L_" + std::to_string(p) + " != betti");
    }
  }
  // 50 random cochains spread over the fixtures and degrees.
  for (int rep = 0; rep < 50; ++rep) {
    const auto& file = files[rep % files.size()];
    auto K = ex::read_complex_file(data_path(file));
    auto metric = ex::HodgeMetric::unit(K);
    int p = rep % (K.dimension() + 1);
    ex::Cochain omega;
    omega.degree = p;
    omega.values = Eigen::VectorXd::NullaryExpr(
        K.simplex_count(p), [&](Eigen::Index) { return gauss(rng); });
    auto parts = ex::hodge_decompose(K, omega, metric);
    Eigen::VectorXd recon =
        parts.exact.values + parts.coexact.values + parts.harmonic.values;
    bool ok = (recon - omega.values).norm() <= 1e-10 &&
              parts.residual_norm <= 1e-10 &&
              std::abs(parts.exact.values.dot(parts.coexact.values)) <= 1e-10 &&
              std::abs(parts.exact.values.dot(parts.harmonic.values)) <= 1e-10 &&
              std::abs(parts.coexact.values.dot(parts.harmonic.values)) <= 1e-10;
    expect(fails, ok, file + ": decomposition defect at degree " +
                          std::to_string(p));
  }
  // Closed cochains: d omega = 0 implies no coexact component.
  auto torus = ex::read_complex_file(data_path("torus7.txt"));
  auto metric = ex::HodgeMetric::unit(torus);
  Eigen::MatrixXd d0 = ex::coboundary_matrix(torus, 0).cast<double>();
  auto harmonics = ex::harmonic_basis(torus, 1, metric);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd alpha = Eigen::VectorXd::NullaryExpr(
        torus.simplex_count(0), [&](Eigen::Index) { return gauss(rng); });
    ex::Cochain omega;
    omega.degree = 1;
    omega.values = d0 * alpha;
    for (const auto& h : harmonics) omega.values += gauss(rng) * h.values;
    auto parts = ex::hodge_decompose(torus, omega, metric);
    expect(fails, parts.coexact.values.norm() <= 1e-10,
           "closed cochain grew a coexact part");
  }
}

// ---------------------------------------------------------------- 3
void criterion_partition(Fails& fails) {
  for (const char* file :
       {"hollow_triangle.txt", "solid_triangle.txt", "hollow_tetrahedron.txt",
        "torus7.txt", "single_edge.txt"}) {
    auto K = ex::read_complex_file(data_path(file));
    auto metric = ex::HodgeMetric::unit(K);
    for (int p = 1; p <= K.dimension(); ++p)
      expect(fails, cs::verify_laplacian_factorization(K, p, metric, 1e-8),
             std::string(file) + ": factorization at degree " +
                 std::to_string(p));
    for (int p = 0; p <= K.dimension(); ++p)
      expect(fails, cs::verify_updown_duality(K, p, 1e-8),
             std::string(file) + ": duality at degree " + std::to_string(p));
  }
  auto solid = ex::read_complex_file(data_path("solid_triangle.txt"));
  auto report = cs::det_prime(solid, 0, ex::HodgeMetric::unit(solid));
  expect(fails,
         std::abs(report.log_det_prime - 2.0 * std::log(3.0)) <= 1e-10,
         "solid triangle log det' != 2 log 3");

  auto torus = ex::read_complex_file(data_path("torus7.txt"));
  std::map<int, int> permute;
  for (int i = 0; i < 7; ++i) permute[i] = (2 * i + 5) % 7;
  auto relabeled = torus.relabeled(permute);
  double za = cs::cs_partition(torus, ex::HodgeMetric::unit(torus)).log_Z;
  double zb =
      cs::cs_partition(relabeled, ex::HodgeMetric::unit(relabeled)).log_Z;
  expect(fails, std::abs(za - zb) <= 1e-10, "relabeling moved log Z");
}

// ---------------------------------------------------------------- 4
void criterion_knot(Fails& fails) {
  auto from_map = [](std::map<long, long long> keys) {
    kn::LaurentPolynomial p;
    for (auto& [e, c] : keys) p += kn::LaurentPolynomial::monomial(c, e);
    return p;
  };
  expect(fails,
         kn::jones(kn::unknot_diagram()) == kn::LaurentPolynomial::constant(1),
         "V(unknot) != 1");
  expect(fails,
         kn::jones(kn::read_pd_file(data_path("unknot_kink.txt"))) ==
             kn::LaurentPolynomial::constant(1),
         "V(kinked unknot) != 1");

  auto trefoil = kn::diagram_from_braid(2, {1, 1, 1});
  expect(fails, kn::jones(trefoil) == from_map({{2, 1}, {6, 1}, {8, -1}}),
         "V(trefoil) mismatch");
  auto hopf = kn::diagram_from_braid(2, {1, 1});
  expect(fails, kn::jones(hopf) == from_map({{1, -1}, {5, -1}}),
         "V(hopf) mismatch");
  expect(fails,
         kn::jones(kn::read_pd_file(data_path("trefoil.txt"))) ==
             kn::jones(trefoil).mirrored(),
         "file trefoil is not the mirror of the braid trefoil");

  // Reidemeister-equivalent pairs must give identical polynomials.
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs3 = {
      {{1, 2, 1}, {2, 1, 2}}};
  for (const auto& [lhs, rhs] : pairs3)
    expect(fails,
           kn::jones(kn::diagram_from_braid(3, lhs)) ==
               kn::jones(kn::diagram_from_braid(3, rhs)),
           "slide move changed the polynomial");
  expect(fails,
         kn::jones(kn::diagram_from_braid(2, {1, 1, 1, 1, -1})) ==
             kn::jones(trefoil),
         "cancelling pair changed the polynomial");
  expect(fails,
         kn::jones(kn::diagram_from_braid(3, {1, 1, 1, 2})) ==
             kn::jones(trefoil),
         "stabilization changed the polynomial");

  expect(fails,
         kn::verify_jones_skein(trefoil, kn::diagram_from_braid(2, {1}),
                                kn::diagram_from_braid(2, {1, 1})),
         "skein relation failed on (trefoil, unknot, hopf)");

  auto twelve = kn::diagram_from_braid(
      3, {1, -2, 1, -2, 1, -2, 1, -2, 1, -2, 1, -2});
  expect(fails, !kn::jones(twelve).is_zero(), "12-crossing jones vanished");
}

// ---------------------------------------------------------------- 5
void criterion_anyon(Fails& fails) {
  auto ising = an::load_cft("ising");
  auto z3 = an::load_cft("z3_parafermion");
  auto boson = an::load_cft("chiral_boson_rational");

  expect(fails,
         an::fuse(ising, "sigma", "sigma") ==
             std::vector<std::string>{"1", "psi"},
         "ising sigma x sigma");
  expect(fails,
         an::fuse(ising, "sigma", "psi") == std::vector<std::string>{"sigma"},
         "ising sigma x psi");
  expect(fails,
         an::fuse(z3, "psi1", "psi1") == std::vector<std::string>{"psi2"},
         "z3 psi1 x psi1");
  expect(fails,
         an::fuse(z3, "sigma1", "sigma2") ==
             std::vector<std::string>{"1", "epsilon"},
         "z3 sigma1 x sigma2");

  for (const an::FusionTable* table : {&ising, &z3, &boson}) {
    const int n = static_cast<int>(table->labels().size());
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        for (int c = 0; c < n && ok; ++c)
          for (int d = 0; d < n && ok; ++d) {
            unsigned long long lhs = 0, rhs = 0;
            for (int e = 0; e < n; ++e) {
              lhs += static_cast<unsigned long long>(
                         table->multiplicity(a, b, e)) *
                     table->multiplicity(e, c, d);
              rhs += static_cast<unsigned long long>(
                         table->multiplicity(b, c, e)) *
                     table->multiplicity(a, e, d);
            }
            ok = lhs == rhs;
          }
    expect(fails, ok, table->name() + ": associativity");
  }

  expect(fails, an::count_blocks(ising, "sigma", 4, "1") == 2,
         "sigma^4 block count != 2");
  expect(fails,
         an::ope_exponent(z3, "sigma1", "psi1", "epsilon") == tqft::Rat(-1, 3),
         "leading OPE exponent != -1/3");

  for (int k = 1; k <= 32; ++k) {
    auto data = an::su2k(k);
    double expected_d = 2.0 * std::cos(std::numbers::pi / (k + 2));
    expect(fails, std::abs(data.d - expected_d) <= 1e-12,
           "quantum dimension at k=" + std::to_string(k));
    cd ratio = (1.0 + data.lambda1 * data.lambda2) /
               (data.lambda1 + data.lambda2);
    expect(fails, std::abs(ratio - cd(data.d, 0.0)) <= 1e-12,
           "eigenvalue identity at k=" + std::to_string(k));
    expect(fails, an::braid_skein_check(k, 1e-12),
           "braid skein identity at k=" + std::to_string(k));
  }

  Eigen::Matrix2cd m = an::ising_monodromy(256);
  Eigen::Matrix2cd expected;
  const cd phase = std::polar(1.0, std::numbers::pi / 4);
  expected << cd(0, 0), phase, phase, cd(0, 0);
  expect(fails, (m - expected).cwiseAbs().maxCoeff() <= 1e-6,
         "monodromy at 256 samples");
}

// ---------------------------------------------------------------- 6
void criterion_gauge(Fails& fails) {
  auto field = lg::random_field({3, 3}, 0);
  std::vector<lg::LatticePath> loops;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      loops.push_back(lg::plaquette_path({x, y}, 0, 1));
      loops.push_back(lg::rectangle_path({x, y}, 0, 1, 2, 2));
    }
  std::vector<double> reference;
  for (const auto& loop : loops) reference.push_back(lg::wilson_loop(field, loop));
  bool invariant = true;
  for (unsigned long long seed = 1; seed <= 100 && invariant; ++seed) {
    auto g = lg::random_gauge({3, 3}, seed);
    auto transformed = lg::gauge_transform(field, g);
    for (std::size_t i = 0; i < loops.size(); ++i)
      invariant = invariant &&
                  std::abs(lg::wilson_loop(transformed, loops[i]) -
                           reference[i]) <= 1e-12;
  }
  expect(fails, invariant, "wilson loops moved under a gauge transform");

  auto g = lg::random_gauge({3, 3}, 424242);
  auto pure = lg::pure_gauge({3, 3}, g);
  expect(fails, lg::wilson_action(pure, 1.0) < 1e-10,
         "pure gauge action not flat");

  // Open-path holonomy: covariance and path independence on a pure gauge.
  auto probe = lg::random_field({3, 3}, 17);
  auto transformed = lg::gauge_transform(probe, g);
  lg::LatticePath path{{0, 0}, {1, 2, 1, -2}};
  auto start = probe.site_index({0, 0});
  auto end = probe.site_index({2, 0});
  auto lhs = lg::holonomy(transformed, path);
  auto rhs = g[start] * lg::holonomy(probe, path) * g[end].dagger();
  double covariance_gap =
      std::sqrt(std::pow(lhs.a - rhs.a, 2) + std::pow(lhs.b - rhs.b, 2) +
                std::pow(lhs.c - rhs.c, 2) + std::pow(lhs.d - rhs.d, 2));
  expect(fails, covariance_gap <= 1e-12, "holonomy covariance defect");

  lg::LatticePath route_a{{0, 0}, {1, 2}};
  lg::LatticePath route_b{{0, 0}, {2, 1}};
  auto ha = lg::holonomy(pure, route_a);
  auto hb = lg::holonomy(pure, route_b);
  auto hg = g[pure.site_index({0, 0})] * g[pure.site_index({1, 1})].dagger();
  double path_gap = std::max(
      std::sqrt(std::pow(ha.a - hb.a, 2) + std::pow(ha.b - hb.b, 2) +
                std::pow(ha.c - hb.c, 2) + std::pow(ha.d - hb.d, 2)),
      std::sqrt(std::pow(ha.a - hg.a, 2) + std::pow(ha.b - hg.b, 2) +
                std::pow(ha.c - hg.c, 2) + std::pow(ha.d - hg.d, 2)));
  expect(fails, path_gap <= 1e-12, "pure-gauge holonomy path dependence");
}

// ---------------------------------------------------------------- 7
void criterion_quantum(Fails& fails) {
  std::mt19937_64 rng(1618);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 4;
    qm::Matrix hm(n, n), fm(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        hm(i, j) = cd(gauss(rng), gauss(rng));
        fm(i, j) = cd(gauss(rng), gauss(rng));
      }
    qm::HermitianOperator h(0.5 * (hm + qm::Matrix(hm.adjoint())));
    qm::HermitianOperator f(0.5 * (fm + qm::Matrix(fm.adjoint())));
    qm::Vector amps(n);
    for (int i = 0; i < n; ++i) amps[i] = cd(gauss(rng), gauss(rng));
    qm::QuantumState psi0(amps);
    const double t = 0.9;
    cd a = qm::expectation(f, qm::evolve_schrodinger(h, psi0, t));
    cd b = qm::expectation(qm::heisenberg_evolve(f, h, t), psi0);
    expect(fails, std::abs(a - b) <= 1e-10, "picture mismatch");
  }

  // Dyson order slopes under eps halving.
  qm::Matrix e = qm::Matrix::Zero(2, 2);
  e(1, 1) = cd(1.0, 0.0);
  qm::HermitianOperator e_op(e);
  const qm::Matrix h1 = qm::pauli_x();
  const double t = 1.0;
  const int samples = 2001;
  auto exact = [&](double eps) {
    qm::Matrix h = e + eps * h1;
    Eigen::SelfAdjointEigenSolver<qm::Matrix> se(e), sh(h);
    auto expm = [](const Eigen::SelfAdjointEigenSolver<qm::Matrix>& s,
                   cd factor) {
      Eigen::VectorXcd phases =
          (factor * s.eigenvalues().cast<cd>().array()).exp();
      return qm::Matrix(s.eigenvectors() * phases.asDiagonal() *
                        s.eigenvectors().adjoint());
    };
    return qm::Matrix(expm(se, cd(0, 1) * t) * expm(sh, cd(0, -1) * t));
  };
  for (int order : {1, 2}) {
    std::vector<double> errors;
    for (double eps : {0.2, 0.1, 0.05}) {
      auto problem = qm::constant_perturbation(e_op, h1, eps, 0.0, t, samples);
      errors.push_back(
          (qm::dyson_amplitude(problem, order) - exact(eps)).norm());
    }
    const double expected = order + 1.0;
    for (int i = 0; i + 1 < static_cast<int>(errors.size()); ++i) {
      double slope = std::log2(errors[i] / errors[i + 1]);
      expect(fails, std::abs(slope - expected) <= 0.1 * expected,
             "dyson slope at order " + std::to_string(order));
    }
  }

  // Rabi transition at second order scales as eps^2.
  auto p_of = [&](double eps) {
    auto problem = qm::constant_perturbation(e_op, h1, eps, 0.0, t, samples);
    return qm::transition_probability(problem, 2, 0, 1);
  };
  double ratio = p_of(0.05) / p_of(0.025);
  expect(fails, std::abs(ratio - 4.0) <= 0.4, "rabi eps-halving ratio");

  // Sliced propagator deviation over slices 2, 4, 8 on a fixed resolved
  // grid, required to decrease strictly.  Note: with the exact short-time
  // kernel each slicing is exact in the continuum (Chapman-Kolmogorov), so
  // the measured deviation is purely quadrature/truncation error, which
  // compounds with the number of convolutions.
  qm::SpatialGrid grid{-8.0, 8.0, 2049};
  const double m = 1.0, tt = 1.0, x0 = 0.0, x = 0.3;
  const cd closed = qm::free_propagator(m, x0, x, tt, 1);
  std::vector<double> devs;
  for (int slices : {2, 4, 8})
    devs.push_back(std::abs(
        qm::path_integral_propagator(m, x0, x, tt, slices, grid) - closed));
  char msg[160];
  std::snprintf(msg, sizeof(msg),
                "sliced deviation not strictly decreasing: "
                "%.3e (2), %.3e (4), %.3e (8)",
                devs[0], devs[1], devs[2]);
  expect(fails, devs[0] > devs[1] && devs[1] > devs[2], msg);
}

// ---------------------------------------------------------------- 8
struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(TQFT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    r.out.append(buffer, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void criterion_cli(Fails& fails) {
  const std::string manifest_path =
      std::string(TQFT_EXPECTED_DIR) + "/cli_examples.txt";
  std::ifstream manifest(manifest_path);
  if (!manifest.good()) {
    fails.push_back("missing manifest " + manifest_path);
    return;
  }
  std::string line;
  int checked = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    if (bar == std::string::npos) {
      fails.push_back("bad manifest line: " + line);
      continue;
    }
    std::string name = line.substr(0, bar);
    std::string args = line.substr(bar + 1);
    const std::string token = "@DATA@";
    std::size_t pos = 0;
    while ((pos = args.find(token, pos)) != std::string::npos) {
      args.replace(pos, token.size(), TQFT_DATA_DIR);
      pos += std::string(TQFT_DATA_DIR).size();
    }
    auto result = run_cli(args);
    if (result.exit_code != 0) {
      fails.push_back(name + ": exit code " +
                      std::to_string(result.exit_code));
      continue;
    }
    std::ifstream expected_file(std::string(TQFT_EXPECTED_DIR) + "/" + name +
                                ".json",
                                std::ios::binary);
    if (!expected_file.good()) {
      fails.push_back(name + ": missing expected output");
      continue;
    }
    std::ostringstream expected;
    expected << expected_file.rdbuf();
    if (result.out != expected.str())
      fails.push_back(name + ": output differs from committed bytes");
    ++checked;
  }
  if (checked < 12)
    fails.push_back("manifest lists fewer than 12 examples");
}

struct Criterion {
  std::string label;
  std::function<void(Fails&)> run;
  double budget_seconds;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 exact homology invariants", criterion_homology, 1.0},
      {"2 orthogonal cochain decomposition", criterion_hodge, 5.0},
      {"3 laplacian determinants and partition function", criterion_partition,
       2.0},
      {"4 knot polynomial pipeline", criterion_knot, 10.0},
      {"5 fusion, braid data, and monodromy", criterion_anyon, 2.0},
      {"6 lattice gauge invariants", criterion_gauge, 5.0},
      {"7 quantum propagators and perturbation theory", criterion_quantum,
       10.0},
      {"8 command line round trip", criterion_cli, 5.0},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    Fails fails;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(fails);
    } catch (const std::exception& e) {
      fails.push_back(std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    if (elapsed > criterion.budget_seconds)
      fails.push_back("over the " +
                      std::to_string(criterion.budget_seconds) +
                      "s budget");
    if (fails.empty()) {
      std::printf("[PASS] %s (%.2fs)\n", criterion.label.c_str(), elapsed);
    } else {
      ++failures;
      std::printf("[FAIL] %s (%.2fs)\n", criterion.label.c_str(), elapsed);
      for (const auto& reason : fails)
        std::printf("       - %s\n", reason.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}
