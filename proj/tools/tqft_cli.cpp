// tqft: one binary exposing the toolkit as subcommands.
//
// Output contract: every invocation writes exactly one JSON document to
// standard out.  Object keys are serialized in lexicographic order.  Exit
// codes: 0 on success, 1 on a usage error (bad flags, unknown subcommand),
// 2 on a computation error (malformed input files, out-of-range parameters,
// numerical failures).  Errors are reported as
//   {"diagnostics": ["..."], "status": "error"}.
// No file is ever written unless --out is given explicitly.

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqft/anyon.hpp"
#include "tqft/cspartition.hpp"
#include "tqft/errors.hpp"
#include "tqft/hodge.hpp"
#include "tqft/knot.hpp"
#include "tqft/latgauge.hpp"
#include "tqft/laurent.hpp"
#include "tqft/qmcore.hpp"
#include "tqft/rational.hpp"
#include "tqft/simplicial.hpp"

namespace {

using nlohmann::json;

json complex_json(std::complex<double> z) {
  json obj = json::object();
  obj["im"] = z.imag();
  obj["re"] = z.real();
  return obj;
}

json rational_json(const tqft::Rat& r) {
  json obj = json::object();
  obj["den"] = r.denominator();
  obj["num"] = r.numerator();
  return obj;
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// Laurent polynomials are keyed by twice the exponent (half-unit steps), so
// "5" -> -1 means -t^(5/2).
json polynomial_json(const tqft::knot::LaurentPolynomial& p) {
  json obj = json::object();
  for (const auto& [half_exponent, coeff] : p.coefficients())
    obj[std::to_string(half_exponent)] = coeff;
  return obj;
}

std::vector<int> parse_extents(const std::string& text, char sep,
                               const std::string& what) {
  std::vector<int> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, sep)) {
    try {
      std::size_t used = 0;
      int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw tqft::InputError(what + " error: cannot parse '" + text + "'");
    }
  }
  if (values.empty()) throw tqft::InputError(what + " error: empty list");
  return values;
}

json det_report_json(const tqft::cs::DeterminantReport& r) {
  json obj = json::object();
  obj["degree"] = r.degree;
  obj["log_det_prime"] = r.log_det_prime;
  json eig = json::array();
  for (double v : r.nonzero_eigenvalues) eig.push_back(v);
  obj["nonzero_eigenvalues"] = eig;
  obj["zero_modes"] = r.zero_mode_count;
  return obj;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tqft: discrete exterior calculus, knot polynomials, anyon "
               "fusion, lattice gauge holonomy, and quantum propagators"};
  app.require_subcommand(1);

  bool pretty = false;
  std::string out_path;
  app.add_flag("--pretty", pretty, "indent the JSON output");
  app.add_option("--out", out_path,
                 "also write the JSON document to this file");
  // Let --pretty/--out appear after the subcommand and its arguments.
  app.fallthrough();

  // betti
  auto* cmd_betti = app.add_subcommand(
      "betti", "Betti numbers and Euler characteristic of a complex");
  std::string betti_complex;
  cmd_betti->add_option("--complex", betti_complex, "complex file")
      ->required();

  // hodge
  auto* cmd_hodge = app.add_subcommand(
      "hodge", "orthogonal decomposition of a cochain (unit metric)");
  std::string hodge_complex, hodge_cochain;
  cmd_hodge->add_option("--complex", hodge_complex, "complex file")
      ->required();
  cmd_hodge->add_option("--cochain", hodge_cochain, "cochain JSON file")
      ->required();

  // cs-z
  auto* cmd_csz = app.add_subcommand(
      "cs-z", "quadratic-fluctuation log partition function of a complex");
  std::string csz_complex;
  bool csz_spectra = false;
  cmd_csz->add_option("--complex", csz_complex, "complex file")->required();
  cmd_csz->add_flag("--spectra", csz_spectra,
                    "include the nonzero Laplacian spectra");

  // jones
  auto* cmd_jones = app.add_subcommand(
      "jones", "Jones polynomial of a planar-diagram file");
  std::string jones_pd;
  int jones_level = 0;
  bool jones_unnormalized = false;
  cmd_jones->add_option("--pd", jones_pd, "planar diagram file")->required();
  auto* jones_level_opt = cmd_jones->add_option(
      "--level", jones_level, "also evaluate at the level-k root of unity");
  cmd_jones->add_flag("--unnormalized", jones_unnormalized,
                      "emit the unnormalized bracket closure instead");

  // fuse
  auto* cmd_fuse =
      app.add_subcommand("fuse", "fusion channels of two primary fields");
  std::string fuse_cft;
  std::vector<std::string> fuse_fields;
  cmd_fuse->add_option("--cft", fuse_cft, "fusion table name")->required();
  cmd_fuse->add_option("fields", fuse_fields, "the two fields to fuse")
      ->expected(2);

  // blocks
  auto* cmd_blocks = app.add_subcommand(
      "blocks", "conformal-block count for n identical insertions");
  std::string blocks_cft, blocks_field, blocks_target;
  int blocks_n = 0;
  bool blocks_diagram = false;
  cmd_blocks->add_option("--cft", blocks_cft, "fusion table name")
      ->required();
  cmd_blocks->add_option("--field", blocks_field, "inserted field")
      ->required();
  cmd_blocks->add_option("-n,--count", blocks_n, "number of insertions")
      ->required();
  cmd_blocks->add_option("--target", blocks_target, "overall fusion channel")
      ->required();
  cmd_blocks->add_flag("--diagram", blocks_diagram,
                       "include the per-level path counts");

  // su2k
  auto* cmd_su2k = app.add_subcommand(
      "su2k", "level-k braid data: quantum dimension and eigenvalues");
  int su2k_k = 0;
  cmd_su2k->add_option("-k,--level", su2k_k, "level (k >= 1)")->required();

  // monodromy
  auto* cmd_mono = app.add_subcommand(
      "monodromy", "numeric monodromy of the four-point blocks around z=1");
  int mono_samples = 256, mono_loops = 1;
  double mono_radius = 0.5;
  cmd_mono->add_option("--samples", mono_samples, "steps per loop");
  cmd_mono->add_option("--radius", mono_radius, "contour radius in (0,1)");
  cmd_mono->add_option("--loops", mono_loops, "number of clockwise loops");

  // wilson
  auto* cmd_wilson = app.add_subcommand(
      "wilson", "Wilson loop and action on a random lattice gauge field");
  std::string wilson_dims, wilson_loop_kind = "plaq", wilson_corner;
  unsigned long long wilson_seed = 0;
  int wilson_mu = 0, wilson_nu = 1, wilson_lmu = 2, wilson_lnu = 2;
  double wilson_beta = 1.0;
  cmd_wilson->add_option("--dims", wilson_dims, "lattice extents, e.g. 3x3")
      ->required();
  auto* wilson_seed_opt =
      cmd_wilson->add_option("--seed", wilson_seed, "random seed");
  cmd_wilson->add_option("--loop", wilson_loop_kind, "loop kind")
      ->check(CLI::IsMember({"plaq", "rect"}));
  cmd_wilson->add_option("--corner", wilson_corner,
                         "loop corner as comma-separated coordinates");
  cmd_wilson->add_option("--mu", wilson_mu, "first loop direction (0-based)");
  cmd_wilson->add_option("--nu", wilson_nu, "second loop direction (0-based)");
  cmd_wilson->add_option("--lmu", wilson_lmu, "rectangle length along mu");
  cmd_wilson->add_option("--lnu", wilson_lnu, "rectangle length along nu");
  cmd_wilson->add_option("--beta", wilson_beta, "action coupling");

  // dyson
  auto* cmd_dyson = app.add_subcommand(
      "dyson", "perturbative transition operator for a ladder Hamiltonian");
  int dyson_levels = 2, dyson_order = 2, dyson_samples = 201;
  double dyson_omega = 1.0, dyson_eps = 0.1, dyson_t = 1.0, dyson_t0 = 0.0;
  cmd_dyson->add_option("--levels", dyson_levels, "number of levels (>= 2)");
  cmd_dyson->add_option("--omega", dyson_omega, "level spacing");
  cmd_dyson->add_option("--eps", dyson_eps, "perturbation strength");
  cmd_dyson->add_option("--order", dyson_order, "expansion order (1 or 2)");
  cmd_dyson->add_option("--t", dyson_t, "final time");
  cmd_dyson->add_option("--t0", dyson_t0, "initial time");
  cmd_dyson->add_option("--samples", dyson_samples, "time grid points");

  // propagator
  auto* cmd_prop = app.add_subcommand(
      "propagator", "free-particle propagator, closed form vs time-sliced");
  double prop_m = 1.0, prop_t = 1.0, prop_x = 0.0, prop_x0 = 0.0;
  double prop_xmin = -8.0, prop_xmax = 8.0;
  int prop_slices = 1, prop_points = 2049;
  bool prop_euclidean = false;
  cmd_prop->add_option("--m", prop_m, "mass (> 0)");
  cmd_prop->add_option("--t", prop_t, "propagation time");
  cmd_prop->add_option("--x", prop_x, "endpoint")->required();
  cmd_prop->add_option("--x0", prop_x0, "start point");
  cmd_prop->add_option("--slices", prop_slices, "number of time slices");
  cmd_prop->add_option("--xmin", prop_xmin, "grid lower edge");
  cmd_prop->add_option("--xmax", prop_xmax, "grid upper edge");
  cmd_prop->add_option("--points", prop_points, "grid point count");
  cmd_prop->add_flag("--euclidean", prop_euclidean,
                     "use the Wick-rotated real kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err = json::object();
    err["diagnostics"] = json::array({std::string(e.what())});
    err["status"] = "error";
    std::cout << err.dump() << "\n";
    return 1;
  }

  json payload;
  try {
    if (*cmd_betti) {
      auto complex = tqft::excalc::read_complex_file(betti_complex);
      auto betti = tqft::excalc::betti_numbers(complex);
      payload["betti"] = betti;
      payload["euler"] = tqft::excalc::euler_characteristic(complex);
    } else if (*cmd_hodge) {
      auto complex = tqft::excalc::read_complex_file(hodge_complex);
      auto omega = tqft::excalc::read_cochain_file(hodge_cochain);
      auto metric = tqft::excalc::HodgeMetric::unit(complex);
      auto parts = tqft::excalc::hodge_decompose(complex, omega, metric);
      payload["coexact"] = vector_json(parts.coexact.values);
      payload["degree"] = omega.degree;
      payload["exact"] = vector_json(parts.exact.values);
      payload["harmonic"] = vector_json(parts.harmonic.values);
      payload["residual"] = parts.residual_norm;
    } else if (*cmd_csz) {
      auto complex = tqft::excalc::read_complex_file(csz_complex);
      auto metric = tqft::excalc::HodgeMetric::unit(complex);
      auto result = tqft::cs::cs_partition(complex, metric);
      payload["harmonic_dimensions"] = json::array(
          {result.harmonic_dimension_0, result.harmonic_dimension_1});
      payload["log_Z"] = result.log_Z;
      if (csz_spectra) {
        json spectra = json::object();
        spectra["degree0"] =
            det_report_json(tqft::cs::det_prime(complex, 0, metric));
        spectra["degree1"] =
            det_report_json(tqft::cs::det_prime(complex, 1, metric));
        payload["spectra"] = spectra;
      }
    } else if (*cmd_jones) {
      auto diagram = tqft::knot::read_pd_file(jones_pd);
      auto poly = jones_unnormalized ? tqft::knot::bracket_closure(diagram)
                                     : tqft::knot::jones(diagram);
      payload["polynomial"] = polynomial_json(poly);
      if (jones_level_opt->count() > 0) {
        auto ev = tqft::knot::evaluate_at_level(poly, jones_level);
        payload["evaluation"] = complex_json(ev.value);
        payload["level"] = ev.k;
      }
    } else if (*cmd_fuse) {
      auto table = tqft::anyon::load_cft(fuse_cft);
      payload["channels"] =
          tqft::anyon::fuse(table, fuse_fields[0], fuse_fields[1]);
    } else if (*cmd_blocks) {
      auto table = tqft::anyon::load_cft(blocks_cft);
      payload["count"] = tqft::anyon::count_blocks(table, blocks_field,
                                                   blocks_n, blocks_target);
      if (blocks_diagram) {
        auto diagram = tqft::anyon::bratteli(table, blocks_field, blocks_n);
        json levels = json::array();
        for (const auto& level : diagram.levels) {
          json entry = json::object();
          for (const auto& [label, count] : level) entry[label] = count;
          levels.push_back(entry);
        }
        payload["levels"] = levels;
      }
    } else if (*cmd_su2k) {
      auto data = tqft::anyon::su2k(su2k_k);
      json spins = json::array();
      for (const auto& s : data.allowed_spins) spins.push_back(rational_json(s));
      payload["allowed_spins"] = spins;
      payload["d"] = data.d;
      payload["k"] = data.k;
      payload["lambda1"] = complex_json(data.lambda1);
      payload["lambda2"] = complex_json(data.lambda2);
    } else if (*cmd_mono) {
      Eigen::Matrix2cd m =
          tqft::anyon::ising_monodromy(mono_samples, mono_radius, mono_loops);
      payload["loops"] = mono_loops;
      payload["matrix"] = matrix_json(m);
      payload["radius"] = mono_radius;
      payload["samples"] = mono_samples;
    } else if (*cmd_wilson) {
      auto dims = parse_extents(wilson_dims, 'x', "dims");
      unsigned long long seed = 0;
      if (wilson_seed_opt->count() > 0) {
        seed = wilson_seed;
      } else if (const char* env = std::getenv("TQFT_SEED")) {
        try {
          seed = std::stoull(env);
        } catch (const std::exception&) {
          throw tqft::InputError(std::string("seed error: cannot parse "
                                             "TQFT_SEED='") + env + "'");
        }
      }
      auto field = tqft::gauge::random_field(dims, seed);
      std::vector<int> corner(dims.size(), 0);
      if (!wilson_corner.empty())
        corner = parse_extents(wilson_corner, ',', "corner");
      auto path = wilson_loop_kind == "plaq"
                      ? tqft::gauge::plaquette_path(corner, wilson_mu, wilson_nu)
                      : tqft::gauge::rectangle_path(corner, wilson_mu, wilson_nu,
                                                    wilson_lmu, wilson_lnu);
      payload["action"] = tqft::gauge::wilson_action(field, wilson_beta);
      payload["beta"] = wilson_beta;
      payload["dims"] = dims;
      payload["loop"] = wilson_loop_kind;
      payload["loop_value"] = tqft::gauge::wilson_loop(field, path);
      payload["seed"] = seed;
    } else if (*cmd_dyson) {
      if (dyson_levels < 2)
        throw tqft::InputError("levels error: need at least 2 levels");
      tqft::qm::Matrix e = tqft::qm::Matrix::Zero(dyson_levels, dyson_levels);
      tqft::qm::Matrix h1 = tqft::qm::Matrix::Zero(dyson_levels, dyson_levels);
      for (int i = 0; i < dyson_levels; ++i) e(i, i) = dyson_omega * i;
      for (int i = 0; i + 1 < dyson_levels; ++i) h1(i, i + 1) = h1(i + 1, i) = 1;
      auto problem = tqft::qm::constant_perturbation(
          tqft::qm::HermitianOperator(e), h1, dyson_eps, dyson_t0, dyson_t,
          dyson_samples);
      tqft::qm::Matrix tmat = tqft::qm::dyson_amplitude(problem, dyson_order);
      payload["epsilon"] = dyson_eps;
      payload["levels"] = dyson_levels;
      payload["matrix"] = matrix_json(tmat);
      payload["omega"] = dyson_omega;
      payload["order"] = dyson_order;
      payload["samples"] = dyson_samples;
      payload["t"] = dyson_t;
      payload["t0"] = dyson_t0;
      payload["transition_0_1"] = tqft::qm::transition_probability(
          problem, dyson_order, 0, 1);
    } else if (*cmd_prop) {
      tqft::qm::SpatialGrid grid{prop_xmin, prop_xmax, prop_points};
      auto mode = prop_euclidean ? tqft::qm::KernelMode::kEuclidean
                                 : tqft::qm::KernelMode::kLorentzian;
      auto sliced = tqft::qm::path_integral_propagator(
          prop_m, prop_x0, prop_x, prop_t, prop_slices, grid, mode);
      auto closed = tqft::qm::path_integral_propagator(
          prop_m, prop_x0, prop_x, prop_t, 1, grid, mode);
      payload["closed_form"] = complex_json(closed);
      payload["deviation"] = std::abs(sliced - closed);
      payload["m"] = prop_m;
      payload["mode"] = prop_euclidean ? "euclidean" : "lorentzian";
      payload["sliced"] = complex_json(sliced);
      payload["slices"] = prop_slices;
      payload["t"] = prop_t;
      payload["x"] = prop_x;
      payload["x0"] = prop_x0;
    }
  } catch (const std::exception& e) {
    json err = json::object();
    err["diagnostics"] = json::array({std::string(e.what())});
    err["status"] = "error";
    std::cout << err.dump() << "\n";
    return 2;
  }

  std::string text = (pretty ? payload.dump(2) : payload.dump()) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      json err = json::object();
      err["diagnostics"] =
          json::array({"output error: cannot open '" + out_path + "'"});
      err["status"] = "error";
      std::cout << err.dump() << "\n";
      return 2;
    }
    file << text;
  }
  return 0;
}
