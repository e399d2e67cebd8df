#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "tqft/errors.hpp"

namespace tqft::excalc {

// A p-simplex as a strictly increasing vertex tuple; the increasing order is
// the canonical orientation.
using Simplex = std::vector<int>;

// Finite abstract simplicial complex, closed under taking faces.
// simplices(p) lists the p-simplices in lexicographic order; that order
// fixes the chain/cochain basis used by every matrix in this module.
class SimplicialComplex {
 public:
  // Builds the closure of the given maximal simplices.  Tuples may come in
  // any vertex order but must not repeat a vertex.
  static SimplicialComplex from_maximal(const std::vector<Simplex>& maximal);

  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  const std::vector<Simplex>& simplices(int p) const;
  long simplex_count(int p) const;
  const std::vector<int>& vertices() const { return vertices_; }

  // Index of s in the canonical order of p-simplices, or -1 if absent.
  int index_of(int p, const Simplex& s) const;

  // Image of this complex under a vertex relabeling (used by isomorphism
  // tests).  The map must be injective on the vertex set.
  SimplicialComplex relabeled(const std::map<int, int>& vertex_map) const;

 private:
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::map<Simplex, int>> index_;
  std::vector<int> vertices_;
};

// Text format: one maximal simplex per line as comma-separated vertex ids;
// '#' starts a comment; blank lines ignored.
SimplicialComplex parse_complex(const std::string& text,
                                const std::string& source_name = "<string>");
SimplicialComplex read_complex_file(const std::string& path);

// A real-valued p-cochain over the canonical p-simplex basis.
struct Cochain {
  int degree = 0;
  Eigen::VectorXd values;
};

// JSON format: {"degree": p, "values": [...]} with values in canonical order.
Cochain parse_cochain_json(const std::string& text,
                           const std::string& source_name = "<string>");
Cochain read_cochain_file(const std::string& path);
std::string cochain_to_json(const Cochain& c);

// Signed incidence matrix of the boundary operator taking p-chains to
// (p-1)-chains: entry(f, s) = (-1)^i when f is s with its i-th vertex
// dropped.  Requires 1 <= p <= dimension.
Eigen::MatrixXi boundary_matrix(const SimplicialComplex& K, int p);

// Coboundary (discrete exterior derivative) on p-cochains: the transpose of
// boundary_matrix(K, p+1).  Requires 0 <= p <= dimension-1.
Eigen::MatrixXi coboundary_matrix(const SimplicialComplex& K, int p);

// Rank of an integer matrix over the rationals, computed exactly
// (fraction-free elimination on arbitrary-precision integers).
long exact_rank(const Eigen::MatrixXi& m);

// b_p = dim Ker boundary_p - rank boundary_{p+1}, exact arithmetic.
std::vector<long> betti_numbers(const SimplicialComplex& K);

// Alternating sum of Betti numbers; cross-checked internally against the
// alternating simplex-count sum (mismatch throws ConsistencyError).
long euler_characteristic(const SimplicialComplex& K);

}  // namespace tqft::excalc
