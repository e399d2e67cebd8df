#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tqft/errors.hpp"
#include "tqft/rational.hpp"

namespace tqft::anyon {

// Fusion data of a rational chiral algebra: field labels (the identity is
// always named "1"), exact rational conformal weights, central charge, and
// integer fusion multiplicities N(a,b,c), symmetric in (a,b).
class FusionTable {
 public:
  FusionTable(std::string name, Rat central_charge,
              std::vector<std::string> labels, std::map<std::string, Rat> dims,
              const std::map<std::pair<std::string, std::string>,
                             std::map<std::string, unsigned>>& rules);

  const std::string& name() const { return name_; }
  Rat central_charge() const { return central_charge_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Rat dim(const std::string& label) const;
  int index(const std::string& label) const;  // InputError on unknown label
  unsigned multiplicity(const std::string& a, const std::string& b,
                        const std::string& c) const;
  unsigned multiplicity(int a, int b, int c) const;

 private:
  void validate() const;
  std::string name_;
  Rat central_charge_;
  std::vector<std::string> labels_;
  std::map<std::string, Rat> dims_;
  std::map<std::string, int> index_;
  std::vector<std::vector<std::vector<unsigned>>> mult_;  // [a][b][c]
};

// Built-in tables: "ising" (c = 1/2), "z3_parafermion" (c = 4/5), and
// "chiral_boson_rational" (c = 1).  The chiral boson has infinitely many
// primaries e^{i alpha phi}; the built-in table keeps the finite rational
// charge lattice alpha in {0, 1/2, 1, 3/2} with charge addition modulo 2,
// which is closed and exactly associative, with Delta(alpha) = alpha^2/2
// on the representative in [0, 2).
FusionTable load_cft(const std::string& name);

// Fusion channels of a x b as a sorted multiset of labels (a channel with
// multiplicity m appears m times).
std::vector<std::string> fuse(const FusionTable& table, const std::string& a,
                              const std::string& b);

// Leading OPE exponent Delta_k - Delta_i - Delta_j of the channel i x j -> k.
// The channel must be allowed (N > 0), otherwise InputError.
Rat ope_exponent(const FusionTable& table, const std::string& i,
                 const std::string& j, const std::string& k);

// True iff the fields can fuse, in some channel choice, to the identity.
// Computed by dynamic programming over reachable label sets (fusion
// associativity makes the result order-independent).
bool neutral(const FusionTable& table, const std::vector<std::string>& fields);

// Path counts of iterated fusion with a fixed field, level by level.
struct BratteliDiagram {
  std::string fused_field;
  // levels[m][label] = number of m-step fusion paths from the identity
  // ending at label; levels[0] = {"1": 1}.
  std::vector<std::map<std::string, unsigned long long>> levels;
};

BratteliDiagram bratteli(const FusionTable& table, const std::string& field,
                         int n);

// Number of n-step fusion paths with `field` from the identity to `target`
// (the conformal-block count of the corresponding chiral correlator).
unsigned long long count_blocks(const FusionTable& table,
                                const std::string& field, int n,
                                const std::string& target);

// Level-k SU(2) anyon data: loop value d = 2cos(pi/(k+2)), the two braid
// eigenvalues, and the admissible spins {0, 1/2, ..., k/2}.
//
// The braid eigenvalues of a 2x2 representation are fixed only up to one
// overall phase (the representation is projective).  Su2kData stores the
// gauge in which the quantum-dimension identity
// d = (1 + lambda1*lambda2) / (lambda1 + lambda2) holds exactly:
// lambda1 = -e^{-3 i theta}, lambda2 = e^{-i theta} with theta = pi/(k+2).
// Multiplying both by the twist phase e^{3 i theta / 2} gives the
// often-quoted pair (-e^{-3 i theta/2}, e^{i theta/2}); the gauge-invariant
// ratio lambda1/lambda2 = -e^{-2 i theta} is the same.
struct Su2kData {
  int k = 0;
  double d = 0.0;
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  std::vector<Rat> allowed_spins;
};

Su2kData su2k(int k);

// Verifies the braid skein identity
//   q^{-1/2} rho(sigma) - q^{1/2} rho(sigma)^{-1} = (q - q^{-1}) * I
// for the diagonal 2x2 braid representation at q = -e^{i pi/(k+2)}, with
// q^{1/2} the principal branch.  The identity fixes the eigenvalue gauge:
// it holds for rho(sigma) = diag(q^{3/2}, -q^{-1/2}), the skein-normalized
// form of the Su2kData pair (same eigenvalue ratio up to ordering).
// `lambda1_perturbation` multiplies the first eigenvalue by (1 + p) and is
// a negative-control hook for tests.
bool braid_skein_check(int k, double tol, double lambda1_perturbation = 0.0);

// Chiral-boson vertex-operator correlator < prod_i e^{i alpha_i phi(z_i)} >:
// zero unless the charges sum to zero, otherwise
// prod_{i<j} (z_i - z_j)^{alpha_i alpha_j} with the principal branch per
// factor and factor order fixed by index order.
std::complex<double> vertex_correlator(
    const std::vector<Rat>& alphas,
    const std::vector<std::complex<double>>& zs);

// The two conformal blocks of the Ising <sigma sigma sigma sigma> function
// in the cross-ratio z, with the regulator factor stripped:
//   F_pm(z) = (z(1-z))^{-1/8} * sqrt(1 pm sqrt(1-z)),
// principal branches.  w_cutoff must be positive (it stands in for the
// removed regulator and does not affect the value).
std::pair<std::complex<double>, std::complex<double>> ising_four_point_blocks(
    std::complex<double> z, double w_cutoff);

// Monodromy of (F_plus, F_minus) along a clockwise circle of the given
// radius around z = 1, traversed `loops` times, computed by continuous
// numerical branch tracking with `samples` steps per loop.  The radius must
// lie in (0,1) so the contour encloses neither z = 0 nor infinity.
// Expected result for one loop: e^{i pi/4} * [[0,1],[1,0]].
Eigen::Matrix2cd ising_monodromy(int samples, double radius = 0.5,
                                 int loops = 1);

}  // namespace tqft::anyon
