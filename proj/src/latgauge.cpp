#include "tqft/latgauge.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace tqft::gauge {

namespace {

// Portable uniform in [0,1): fixed mapping from raw 64-bit engine output,
// so fields are bit-identical across platforms for a given seed.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Box-Muller standard normal pair from the portable uniforms.
void gaussian_pair(std::mt19937_64& eng, double& g1, double& g2) {
  double u1 = 1.0 - uniform01(eng);  // (0, 1]
  const double u2 = uniform01(eng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  g1 = r * std::cos(phi);
  g2 = r * std::sin(phi);
}

// Haar-uniform SU(2) element: normalized 4D Gaussian quaternion.
Su2Matrix haar_su2(std::mt19937_64& eng) {
  for (;;) {
    double g[4];
    gaussian_pair(eng, g[0], g[1]);
    gaussian_pair(eng, g[2], g[3]);
    const double n =
        std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
    if (n > 1e-12) {
      return {g[0] / n, g[1] / n, g[2] / n, g[3] / n};
    }
  }
}

void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) {
    throw InputError("lattice size error: need at least one dimension");
  }
  for (const int n : dims) {
    if (n < 2) {
      throw InputError(
          "lattice size error: every extent must be at least 2 (got " +
          std::to_string(n) + ")");
    }
  }
}

}  // namespace

Su2Matrix Su2Matrix::from_components(double a, double b, double c, double d) {
  const double n = std::sqrt(a * a + b * b + c * c + d * d);
  if (std::abs(n - 1.0) > 1e-6) {
    throw InputError("SU(2) element must be a unit quaternion (norm " +
                     std::to_string(n) + ")");
  }
  return {a / n, b / n, c / n, d / n};
}

double Su2Matrix::norm() const {
  return std::sqrt(a * a + b * b + c * c + d * d);
}

Eigen::Matrix2cd Su2Matrix::matrix() const {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd m;
  m << a + i * d, c + i * b,  //
      -c + i * b, a - i * d;
  return m;
}

// (a1 + i v1.s)(a2 + i v2.s) = (a1 a2 - v1.v2) + i (a1 v2 + a2 v1 - v1 x v2).s
Su2Matrix operator*(const Su2Matrix& u, const Su2Matrix& v) {
  Su2Matrix w;
  w.a = u.a * v.a - (u.b * v.b + u.c * v.c + u.d * v.d);
  w.b = u.a * v.b + v.a * u.b - (u.c * v.d - u.d * v.c);
  w.c = u.a * v.c + v.a * u.c - (u.d * v.b - u.b * v.d);
  w.d = u.a * v.d + v.a * u.d - (u.b * v.c - u.c * v.b);
  return w;
}

LatticeGaugeField::LatticeGaugeField(std::vector<int> dims)
    : dims_(std::move(dims)) {
  check_dims(dims_);
  strides_.assign(dims_.size(), 1);
  for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * dims_[i + 1];
  }
  nsites_ = strides_[0] * dims_[0];
  links_.assign(static_cast<size_t>(nsites_) * dims_.size(),
                Su2Matrix::identity());
}

long LatticeGaugeField::site_index(const std::vector<int>& coords) const {
  if (coords.size() != dims_.size()) {
    throw InputError("site coordinate has wrong dimension");
  }
  long idx = 0;
  for (size_t i = 0; i < dims_.size(); ++i) {
    int c = coords[i] % dims_[i];
    if (c < 0) c += dims_[i];
    idx += strides_[i] * c;
  }
  return idx;
}

std::vector<int> LatticeGaugeField::site_coords(long site) const {
  std::vector<int> coords(dims_.size());
  for (size_t i = 0; i < dims_.size(); ++i) {
    coords[i] = static_cast<int>(site / strides_[i]);
    site %= strides_[i];
  }
  return coords;
}

long LatticeGaugeField::neighbor(long site, int mu, int direction) const {
  const int extent = dims_[mu];
  const long stride = strides_[mu];
  const int coord = static_cast<int>((site / stride) % extent);
  int next = coord + direction;
  if (next < 0) next += extent;
  if (next >= extent) next -= extent;
  return site + static_cast<long>(next - coord) * stride;
}

void LatticeGaugeField::check_link(long site, int mu) const {
  if (site < 0 || site >= nsites_ || mu < 0 || mu >= ndim()) {
    throw InputError("link index out of range");
  }
}

const Su2Matrix& LatticeGaugeField::link(long site, int mu) const {
  check_link(site, mu);
  return links_[static_cast<size_t>(site) * ndim() + mu];
}

void LatticeGaugeField::set_link(long site, int mu, const Su2Matrix& u) {
  check_link(site, mu);
  links_[static_cast<size_t>(site) * ndim() + mu] = u;
}

LatticePath plaquette_path(const std::vector<int>& corner, int mu, int nu) {
  if (mu == nu) throw InputError("plaquette needs two distinct directions");
  LatticePath p;
  p.start = corner;
  p.steps = {mu + 1, nu + 1, -(mu + 1), -(nu + 1)};
  return p;
}

LatticePath rectangle_path(const std::vector<int>& corner, int mu, int nu,
                           int lmu, int lnu) {
  if (mu == nu) throw InputError("rectangle needs two distinct directions");
  if (lmu < 1 || lnu < 1) throw InputError("rectangle sides must be >= 1");
  LatticePath p;
  p.start = corner;
  for (int i = 0; i < lmu; ++i) p.steps.push_back(mu + 1);
  for (int i = 0; i < lnu; ++i) p.steps.push_back(nu + 1);
  for (int i = 0; i < lmu; ++i) p.steps.push_back(-(mu + 1));
  for (int i = 0; i < lnu; ++i) p.steps.push_back(-(nu + 1));
  return p;
}

LatticeGaugeField random_field(const std::vector<int>& dims,
                               unsigned long long seed) {
  LatticeGaugeField field(dims);
  std::mt19937_64 eng(seed);
  for (long s = 0; s < field.site_count(); ++s) {
    for (int mu = 0; mu < field.ndim(); ++mu) {
      field.set_link(s, mu, haar_su2(eng));
    }
  }
  return field;
}

std::vector<Su2Matrix> random_gauge(const std::vector<int>& dims,
                                    unsigned long long seed) {
  check_dims(dims);
  long nsites = 1;
  for (const int n : dims) nsites *= n;
  std::mt19937_64 eng(seed);
  std::vector<Su2Matrix> g;
  g.reserve(nsites);
  for (long s = 0; s < nsites; ++s) g.push_back(haar_su2(eng));
  return g;
}

Su2Matrix holonomy(const LatticeGaugeField& field, const LatticePath& path) {
  long site = field.site_index(path.start);
  Su2Matrix omega = Su2Matrix::identity();
  for (const int step : path.steps) {
    const int mu = std::abs(step) - 1;
    if (step == 0 || mu >= field.ndim()) {
      throw InputError("path error: step " + std::to_string(step) +
                       " is not a signed direction in 1.." +
                       std::to_string(field.ndim()));
    }
    if (step > 0) {
      omega = omega * field.link(site, mu);
      site = field.neighbor(site, mu, +1);
    } else {
      site = field.neighbor(site, mu, -1);
      omega = omega * field.link(site, mu).dagger();
    }
  }
  return omega;
}

double wilson_loop(const LatticeGaugeField& field, const LatticePath& loop) {
  long site = field.site_index(loop.start);
  for (const int step : loop.steps) {
    const int mu = std::abs(step) - 1;
    if (step == 0 || mu >= field.ndim()) {
      throw InputError("path error: invalid step in loop");
    }
    site = field.neighbor(site, mu, step > 0 ? +1 : -1);
  }
  if (site != field.site_index(loop.start)) {
    throw InputError("not-closed error: Wilson loop path must return to its "
                     "start site");
  }
  return holonomy(field, loop).half_trace();
}

LatticeGaugeField gauge_transform(const LatticeGaugeField& field,
                                  const std::vector<Su2Matrix>& g) {
  if (static_cast<long>(g.size()) != field.site_count()) {
    throw InputError(
        "domain error: gauge function must assign an element to every site");
  }
  LatticeGaugeField out(field.dims());
  for (long s = 0; s < field.site_count(); ++s) {
    for (int mu = 0; mu < field.ndim(); ++mu) {
      const long t = field.neighbor(s, mu, +1);
      out.set_link(s, mu, g[s] * field.link(s, mu) * g[t].dagger());
    }
  }
  return out;
}

LatticeGaugeField pure_gauge(const std::vector<int>& dims,
                             const std::vector<Su2Matrix>& g) {
  LatticeGaugeField identity(dims);
  return gauge_transform(identity, g);
}

namespace {

double plaquette_half_trace(const LatticeGaugeField& field, long s, int mu,
                            int nu) {
  const long smu = field.neighbor(s, mu, +1);
  const long snu = field.neighbor(s, nu, +1);
  const Su2Matrix u = field.link(s, mu) * field.link(smu, nu) *
                      field.link(snu, mu).dagger() *
                      field.link(s, nu).dagger();
  return u.half_trace();
}

}  // namespace

double wilson_action_serial(const LatticeGaugeField& field, double beta) {
  if (beta < 0) throw InputError("beta must be nonnegative");
  double acc = 0.0;
  for (long s = 0; s < field.site_count(); ++s) {
    for (int mu = 0; mu < field.ndim(); ++mu) {
      for (int nu = mu + 1; nu < field.ndim(); ++nu) {
        acc += 1.0 - plaquette_half_trace(field, s, mu, nu);
      }
    }
  }
  return beta * acc;
}

double wilson_action_parallel(const LatticeGaugeField& field, double beta) {
  if (beta < 0) throw InputError("beta must be nonnegative");
  const int nd = field.ndim();
  const int pairs = nd * (nd - 1) / 2;
  if (pairs == 0) return 0.0;

  std::vector<std::pair<int, int>> planes;
  planes.reserve(pairs);
  for (int mu = 0; mu < nd; ++mu) {
    for (int nu = mu + 1; nu < nd; ++nu) planes.emplace_back(mu, nu);
  }

  // Per-plaquette terms are written into fixed slots and summed in the same
  // order as the serial version, so the result is bit-identical to it.
  const long total = field.site_count() * pairs;
  std::vector<double> terms(static_cast<size_t>(total));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long idx = 0; idx < total; ++idx) {
    const long s = idx / pairs;
    const auto [mu, nu] = planes[idx % pairs];
    terms[static_cast<size_t>(idx)] =
        1.0 - plaquette_half_trace(field, s, mu, nu);
  }
  double acc = 0.0;
  for (const double v : terms) acc += v;
  return beta * acc;
}

double wilson_action(const LatticeGaugeField& field, double beta) {
#ifdef _OPENMP
  if (field.site_count() >= 256) return wilson_action_parallel(field, beta);
#endif
  return wilson_action_serial(field, beta);
}

std::string field_to_json(const LatticeGaugeField& field) {
  nlohmann::json j;
  j["dims"] = field.dims();
  nlohmann::json links = nlohmann::json::array();
  for (long s = 0; s < field.site_count(); ++s) {
    for (int mu = 0; mu < field.ndim(); ++mu) {
      const Su2Matrix& u = field.link(s, mu);
      links.push_back({u.a, u.b, u.c, u.d});
    }
  }
  j["links"] = std::move(links);
  return j.dump();
}

LatticeGaugeField field_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("gauge field JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dims") || !j.contains("links") ||
      !j["dims"].is_array() || !j["links"].is_array()) {
    throw InputError(
        "gauge field JSON must be an object with 'dims' and 'links' arrays");
  }
  std::vector<int> dims;
  for (const auto& v : j["dims"]) {
    if (!v.is_number_integer()) {
      throw InputError("gauge field dims must be integers");
    }
    dims.push_back(v.get<int>());
  }
  LatticeGaugeField field(dims);
  const auto& links = j["links"];
  if (static_cast<long>(links.size()) != field.link_count()) {
    throw InputError("gauge field JSON has " + std::to_string(links.size()) +
                     " links, expected " + std::to_string(field.link_count()));
  }
  long idx = 0;
  for (long s = 0; s < field.site_count(); ++s) {
    for (int mu = 0; mu < field.ndim(); ++mu, ++idx) {
      const auto& entry = links[idx];
      if (!entry.is_array() || entry.size() != 4) {
        throw InputError("each link must be a 4-component array");
      }
      double q[4];
      for (int i = 0; i < 4; ++i) {
        if (!entry[i].is_number()) {
          throw InputError("link components must be numbers");
        }
        q[i] = entry[i].get<double>();
      }
      field.set_link(s, mu, Su2Matrix::from_components(q[0], q[1], q[2], q[3]));
    }
  }
  return field;
}

}  // namespace tqft::gauge
