// Compares the OpenMP kernels against their serial reference
// implementations: same inputs, timed separately, results required to agree
// exactly before any timing is reported.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "tqft/knot.hpp"
#include "tqft/latgauge.hpp"
#include "tqft/qmcore.hpp"

namespace kn = tqft::knot;
namespace lg = tqft::gauge;
namespace qm = tqft::qm;

namespace {

template <typename F>
double time_seconds(F&& f) {
  auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void report(const char* label, double serial, double parallel) {
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n",
              label, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  int failures = 0;

  {
    std::vector<int> word;
    for (int i = 0; i < 8; ++i) {
      word.push_back(1);
      word.push_back(-2);
    }
    auto diagram = kn::diagram_from_braid(3, word);
    kn::LaurentPolynomial serial_result, parallel_result;
    double ts = time_seconds(
        [&] { serial_result = kn::kauffman_bracket_serial(diagram); });
    double tp = time_seconds(
        [&] { parallel_result = kn::kauffman_bracket_parallel(diagram); });
    if (!(serial_result == parallel_result)) {
      std::printf("bracket state sum: serial and parallel results differ\n");
      ++failures;
    } else {
      report("bracket state sum (16x)", ts, tp);
    }
  }

  {
    auto field = lg::random_field({96, 96, 96}, 7);
    double serial_result = 0.0, parallel_result = 0.0;
    double ts = time_seconds(
        [&] { serial_result = lg::wilson_action_serial(field, 2.3); });
    double tp = time_seconds(
        [&] { parallel_result = lg::wilson_action_parallel(field, 2.3); });
    if (serial_result != parallel_result) {
      std::printf("wilson action: serial and parallel results differ\n");
      ++failures;
    } else {
      report("wilson action (96^3)", ts, tp);
    }
  }

  {
    qm::SpatialGrid grid{-8.0, 8.0, 2049};
    std::complex<double> serial_result, parallel_result;
    double ts = time_seconds([&] {
      serial_result = qm::path_integral_propagator_serial(
          1.0, 0.0, 0.7, 1.0, 12, grid, qm::KernelMode::kLorentzian);
    });
    double tp = time_seconds([&] {
      parallel_result = qm::path_integral_propagator_parallel(
          1.0, 0.0, 0.7, 1.0, 12, grid, qm::KernelMode::kLorentzian);
    });
    if (serial_result != parallel_result) {
      std::printf(
          "path integral: serial and parallel results differ\n");
      ++failures;
    } else {
      report("path integral (2049x12)", ts, tp);
    }
  }

  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
