#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tqft/errors.hpp"

namespace tqft::gauge {

// SU(2) element stored as a unit quaternion (a, b, c, d) representing
// a*I + i(b s1 + c s2 + d s3) with s1..s3 the Pauli matrices.  The
// determinant is a^2+b^2+c^2+d^2 = 1 and Re Tr = 2a.
struct Su2Matrix {
  double a = 1.0, b = 0.0, c = 0.0, d = 0.0;

  static Su2Matrix identity() { return {}; }
  // Validates unit norm within 1e-6 (tolerating serialized rounding), then
  // renormalizes exactly.
  static Su2Matrix from_components(double a, double b, double c, double d);

  Su2Matrix dagger() const { return {a, -b, -c, -d}; }
  double norm() const;
  // (1/2) Re Tr of the 2x2 matrix.
  double half_trace() const { return a; }
  Eigen::Matrix2cd matrix() const;

  friend Su2Matrix operator*(const Su2Matrix& u, const Su2Matrix& v);
};

// Link variables U_mu(x) on a periodic hypercubic lattice.  Sites are
// flattened in row-major order (last coordinate fastest); links are stored
// site-major with the direction index innermost.
class LatticeGaugeField {
 public:
  explicit LatticeGaugeField(std::vector<int> dims);  // identity links

  const std::vector<int>& dims() const { return dims_; }
  int ndim() const { return static_cast<int>(dims_.size()); }
  long site_count() const { return nsites_; }
  long link_count() const { return nsites_ * ndim(); }

  // Coordinates are wrapped into range (periodic boundary).
  long site_index(const std::vector<int>& coords) const;
  std::vector<int> site_coords(long site) const;
  long neighbor(long site, int mu, int direction) const;  // direction = +-1

  const Su2Matrix& link(long site, int mu) const;
  void set_link(long site, int mu, const Su2Matrix& u);

 private:
  void check_link(long site, int mu) const;
  std::vector<int> dims_;
  std::vector<long> strides_;
  long nsites_ = 1;
  std::vector<Su2Matrix> links_;
};

// A lattice path: a start site (coordinates) plus signed unit steps.  Step
// +mu / -mu (1-based direction index) moves one lattice spacing along the
// positive / negative mu axis.
struct LatticePath {
  std::vector<int> start;
  std::vector<int> steps;
};

// Elementary plaquette loop at `corner` in the (mu, nu) plane, and the
// general axis-aligned rectangle of side lengths (lmu, lnu).
LatticePath plaquette_path(const std::vector<int>& corner, int mu, int nu);
LatticePath rectangle_path(const std::vector<int>& corner, int mu, int nu,
                           int lmu, int lnu);

// Haar-uniform random links / per-site gauge elements; deterministic per
// seed (fixed generator and sampling order, independent of platform).
LatticeGaugeField random_field(const std::vector<int>& dims,
                               unsigned long long seed);
std::vector<Su2Matrix> random_gauge(const std::vector<int>& dims,
                                    unsigned long long seed);

// Path-ordered product of link matrices along the path, first step leftmost:
// holonomy(p) = F_1 F_2 ... F_n with F_i the link matrix of step i (its
// inverse for a negative step).  Concatenating paths multiplies holonomies
// in traversal order: for q traversed first and p appended after,
// holonomy(p after q) = holonomy(q) * holonomy(p).  Under a gauge
// transformation the product telescopes to g(start) * holonomy * g(end)^+.
Su2Matrix holonomy(const LatticeGaugeField& field, const LatticePath& path);

// (1/2) Re Tr of the holonomy of a closed path.  Open paths are an error.
double wilson_loop(const LatticeGaugeField& field, const LatticePath& loop);

// U_mu(x) -> g(x) U_mu(x) g(x+mu)^+ with one gauge element per site.
LatticeGaugeField gauge_transform(const LatticeGaugeField& field,
                                  const std::vector<Su2Matrix>& g);

// Pure-gauge field U_mu(x) = g(x) g(x+mu)^+: every holonomy from x to y
// equals g(x) g(y)^+ and every Wilson loop is 1.
LatticeGaugeField pure_gauge(const std::vector<int>& dims,
                             const std::vector<Su2Matrix>& g);

// Wilson plaquette action S = beta * sum_plaquettes (1 - (1/2) Re Tr U_p),
// summed over all sites and ordered planes mu < nu.
double wilson_action(const LatticeGaugeField& field, double beta);
double wilson_action_serial(const LatticeGaugeField& field, double beta);
double wilson_action_parallel(const LatticeGaugeField& field, double beta);

// JSON serialization: {"dims": [...], "links": [[a,b,c,d], ...]} with links
// in storage order (site-major, direction innermost).
std::string field_to_json(const LatticeGaugeField& field);
LatticeGaugeField field_from_json(const std::string& text);

}  // namespace tqft::gauge
