#include "tqft/anyon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace tqft::anyon {

namespace {

constexpr double kPi = std::numbers::pi;

using Rules = std::map<std::pair<std::string, std::string>,
                       std::map<std::string, unsigned>>;

}  // namespace

FusionTable::FusionTable(std::string name, Rat central_charge,
                         std::vector<std::string> labels,
                         std::map<std::string, Rat> dims, const Rules& rules)
    : name_(std::move(name)),
      central_charge_(central_charge),
      labels_(std::move(labels)),
      dims_(std::move(dims)) {
  const int n = static_cast<int>(labels_.size());
  for (int i = 0; i < n; ++i) {
    if (index_.count(labels_[i])) {
      throw InputError("fusion table: duplicate label '" + labels_[i] + "'");
    }
    index_[labels_[i]] = i;
  }
  if (!index_.count("1")) {
    throw InputError("fusion table: missing identity label '1'");
  }
  mult_.assign(n, std::vector<std::vector<unsigned>>(
                      n, std::vector<unsigned>(n, 0)));

  // Identity fusion 1 x a = a is implied; other rules are given one way and
  // symmetrized.
  const int id = index_.at("1");
  for (int a = 0; a < n; ++a) {
    mult_[id][a][a] = 1;
    mult_[a][id][a] = 1;
  }
  for (const auto& [pair, channels] : rules) {
    const int a = index(pair.first);
    const int b = index(pair.second);
    for (const auto& [c, m] : channels) {
      const int ci = index(c);
      mult_[a][b][ci] = m;
      mult_[b][a][ci] = m;
    }
  }
  validate();
}

void FusionTable::validate() const {
  const int n = static_cast<int>(labels_.size());
  const int id = index_.at("1");
  for (const auto& label : labels_) {
    auto it = dims_.find(label);
    if (it == dims_.end()) {
      throw InputError("fusion table: missing conformal weight for '" + label +
                       "'");
    }
    if (it->second < Rat(0)) {
      throw InputError("fusion table: negative conformal weight for '" +
                       label + "'");
    }
  }
  if (dims_.at("1") != Rat(0)) {
    throw InputError("fusion table: identity must have weight 0");
  }
  for (int a = 0; a < n; ++a) {
    bool has_conjugate = false;
    for (int b = 0; b < n; ++b) {
      if (mult_[a][b][id] > 0) has_conjugate = true;
      for (int c = 0; c < n; ++c) {
        if (mult_[a][b][c] != mult_[b][a][c]) {
          throw InputError("fusion table: multiplicities not symmetric");
        }
      }
      if (mult_[id][a][b] != ((a == b) ? 1u : 0u)) {
        throw InputError("fusion table: identity row must be diagonal");
      }
    }
    if (!has_conjugate) {
      throw InputError("fusion table: label '" + labels_[a] +
                       "' has no conjugate");
    }
  }
}

Rat FusionTable::dim(const std::string& label) const {
  index(label);  // range check
  return dims_.at(label);
}

int FusionTable::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw InputError("unknown field label '" + label + "' in table " + name_);
  }
  return it->second;
}

unsigned FusionTable::multiplicity(const std::string& a, const std::string& b,
                                   const std::string& c) const {
  return mult_[index(a)][index(b)][index(c)];
}

unsigned FusionTable::multiplicity(int a, int b, int c) const {
  return mult_.at(a).at(b).at(c);
}

FusionTable load_cft(const std::string& name) {
  if (name == "ising") {
    return FusionTable(
        "ising", Rat(1, 2), {"1", "psi", "sigma"},
        {{"1", Rat(0)}, {"psi", Rat(1, 2)}, {"sigma", Rat(1, 16)}},
        {{{"psi", "psi"}, {{"1", 1}}},
         {{"sigma", "psi"}, {{"sigma", 1}}},
         {{"sigma", "sigma"}, {{"1", 1}, {"psi", 1}}}});
  }
  if (name == "z3_parafermion") {
    return FusionTable(
        "z3_parafermion", Rat(4, 5),
        {"1", "psi1", "psi2", "sigma1", "sigma2", "epsilon"},
        {{"1", Rat(0)},
         {"psi1", Rat(2, 3)},
         {"psi2", Rat(2, 3)},
         {"sigma1", Rat(1, 15)},
         {"sigma2", Rat(1, 15)},
         {"epsilon", Rat(2, 5)}},
        {{{"psi1", "psi1"}, {{"psi2", 1}}},
         {{"psi2", "psi1"}, {{"1", 1}}},
         {{"psi2", "psi2"}, {{"psi1", 1}}},
         {{"sigma1", "psi1"}, {{"epsilon", 1}}},
         {{"sigma1", "psi2"}, {{"sigma2", 1}}},
         {{"sigma2", "psi1"}, {{"sigma1", 1}}},
         {{"sigma2", "psi2"}, {{"epsilon", 1}}},
         {{"sigma1", "sigma1"}, {{"sigma2", 1}, {"psi1", 1}}},
         {{"sigma2", "sigma1"}, {{"1", 1}, {"epsilon", 1}}},
         {{"sigma2", "sigma2"}, {{"sigma1", 1}, {"psi2", 1}}},
         {{"epsilon", "psi1"}, {{"sigma2", 1}}},
         {{"epsilon", "psi2"}, {{"sigma1", 1}}},
         {{"epsilon", "sigma1"}, {{"sigma1", 1}, {"psi2", 1}}},
         {{"epsilon", "sigma2"}, {{"sigma2", 1}, {"psi1", 1}}},
         {{"epsilon", "epsilon"}, {{"1", 1}, {"epsilon", 1}}}});
  }
  if (name == "chiral_boson_rational") {
    // Charges j/2 for j = 0..3, addition modulo 2; Delta = alpha^2/2 on the
    // representative in [0,2).
    const std::vector<std::string> labels = {"1", "alpha=1/2", "alpha=1",
                                             "alpha=3/2"};
    std::map<std::string, Rat> dims;
    Rules rules;
    for (int j = 0; j < 4; ++j) {
      const Rat alpha(j, 2);
      dims[labels[j]] = alpha * alpha / 2;
    }
    for (int a = 1; a < 4; ++a) {
      for (int b = a; b < 4; ++b) {
        rules[{labels[a], labels[b]}] = {{labels[(a + b) % 4], 1}};
      }
    }
    return FusionTable("chiral_boson_rational", Rat(1), labels, dims, rules);
  }
  throw InputError("unknown CFT name '" + name +
                   "' (expected chiral_boson_rational, ising, or "
                   "z3_parafermion)");
}

std::vector<std::string> fuse(const FusionTable& table, const std::string& a,
                              const std::string& b) {
  const int ia = table.index(a);
  const int ib = table.index(b);
  std::vector<std::string> channels;
  for (int c = 0; c < static_cast<int>(table.labels().size()); ++c) {
    const unsigned m = table.multiplicity(ia, ib, c);
    for (unsigned rep = 0; rep < m; ++rep) {
      channels.push_back(table.labels()[c]);
    }
  }
  return channels;
}

Rat ope_exponent(const FusionTable& table, const std::string& i,
                 const std::string& j, const std::string& k) {
  if (table.multiplicity(i, j, k) == 0) {
    throw InputError("forbidden fusion channel " + i + " x " + j + " -> " + k);
  }
  return table.dim(k) - table.dim(i) - table.dim(j);
}

bool neutral(const FusionTable& table, const std::vector<std::string>& fields) {
  if (fields.empty()) {
    throw InputError("neutrality check needs at least one field");
  }
  const int n = static_cast<int>(table.labels().size());
  std::set<int> reachable = {table.index(fields[0])};
  for (size_t i = 1; i < fields.size(); ++i) {
    const int f = table.index(fields[i]);
    std::set<int> next;
    for (const int x : reachable) {
      for (int c = 0; c < n; ++c) {
        if (table.multiplicity(x, f, c) > 0) next.insert(c);
      }
    }
    reachable = std::move(next);
  }
  return reachable.count(table.index("1")) > 0;
}

BratteliDiagram bratteli(const FusionTable& table, const std::string& field,
                         int n) {
  if (n < 0) throw InputError("fusion step count must be nonnegative");
  const int f = table.index(field);
  const int nl = static_cast<int>(table.labels().size());

  BratteliDiagram diagram;
  diagram.fused_field = field;
  std::vector<unsigned long long> counts(nl, 0);
  counts[table.index("1")] = 1;

  auto snapshot = [&]() {
    std::map<std::string, unsigned long long> level;
    for (int c = 0; c < nl; ++c) {
      if (counts[c] != 0) level[table.labels()[c]] = counts[c];
    }
    return level;
  };

  diagram.levels.push_back(snapshot());
  for (int step = 1; step <= n; ++step) {
    std::vector<unsigned long long> next(nl, 0);
    for (int x = 0; x < nl; ++x) {
      if (counts[x] == 0) continue;
      for (int c = 0; c < nl; ++c) {
        const unsigned m = table.multiplicity(x, f, c);
        if (m == 0) continue;
        unsigned long long term = 0, sum = 0;
        if (__builtin_mul_overflow(counts[x],
                                   static_cast<unsigned long long>(m),
                                   &term) ||
            __builtin_add_overflow(next[c], term, &sum)) {
          throw NumericError("fusion path count overflow at step " +
                             std::to_string(step));
        }
        next[c] = sum;
      }
    }
    counts = std::move(next);
    diagram.levels.push_back(snapshot());
  }
  return diagram;
}

unsigned long long count_blocks(const FusionTable& table,
                                const std::string& field, int n,
                                const std::string& target) {
  table.index(target);  // validate before computing
  const BratteliDiagram diagram = bratteli(table, field, n);
  const auto& level = diagram.levels.back();
  auto it = level.find(target);
  return it == level.end() ? 0ull : it->second;
}

Su2kData su2k(int k) {
  if (k < 1) throw InputError("level k must be a positive integer");
  const double theta = kPi / (k + 2);
  Su2kData out;
  out.k = k;
  out.d = 2.0 * std::cos(theta);
  out.lambda1 = std::polar(1.0, kPi - 3.0 * theta);  // -e^{-3 i theta}
  out.lambda2 = std::polar(1.0, -theta);             //  e^{-i theta}
  const std::complex<double> ratio =
      (1.0 + out.lambda1 * out.lambda2) / (out.lambda1 + out.lambda2);
  if (std::abs(ratio - out.d) > 1e-12) {
    throw ConsistencyError(
        "su2k: quantum-dimension identity violated by stored eigenvalues");
  }
  for (int j = 0; j <= k; ++j) out.allowed_spins.push_back(Rat(j, 2));
  return out;
}

bool braid_skein_check(int k, double tol, double lambda1_perturbation) {
  if (k < 1) throw InputError("level k must be a positive integer");
  if (tol < 0) throw InputError("tolerance must be nonnegative");
  const double theta = kPi / (k + 2);
  const std::complex<double> q = std::polar(1.0, theta - kPi);
  const std::complex<double> sq = std::polar(1.0, (theta - kPi) / 2.0);

  // Skein-normalized diagonal braid generator diag(q^{3/2}, -q^{-1/2}).
  const std::complex<double> rho1 = q * sq * (1.0 + lambda1_perturbation);
  const std::complex<double> rho2 = -1.0 / sq;
  const std::complex<double> rhs = q - 1.0 / q;
  const std::complex<double> e1 = rho1 / sq - sq / rho1 - rhs;
  const std::complex<double> e2 = rho2 / sq - sq / rho2 - rhs;
  return std::max(std::abs(e1), std::abs(e2)) <= tol;
}

std::complex<double> vertex_correlator(
    const std::vector<Rat>& alphas,
    const std::vector<std::complex<double>>& zs) {
  if (alphas.size() != zs.size()) {
    throw InputError("vertex correlator: charge and point counts differ");
  }
  Rat total(0);
  for (const Rat& a : alphas) total += a;
  if (total != Rat(0)) return {0.0, 0.0};

  std::complex<double> acc(1.0, 0.0);
  for (size_t i = 0; i < zs.size(); ++i) {
    for (size_t j = i + 1; j < zs.size(); ++j) {
      const std::complex<double> dz = zs[i] - zs[j];
      if (dz == std::complex<double>(0.0, 0.0)) {
        throw NumericError(
            "singular configuration: coincident insertion points");
      }
      const Rat e = alphas[i] * alphas[j];
      const double exponent =
          static_cast<double>(e.numerator()) /
          static_cast<double>(e.denominator());
      acc *= std::pow(dz, exponent);
    }
  }
  return acc;
}

std::pair<std::complex<double>, std::complex<double>> ising_four_point_blocks(
    std::complex<double> z, double w_cutoff) {
  if (!(w_cutoff > 0)) {
    throw InputError("regulator cutoff must be positive");
  }
  if (z == std::complex<double>(0.0, 0.0) ||
      z == std::complex<double>(1.0, 0.0)) {
    throw NumericError("branch point: blocks are singular at z = 0 and z = 1");
  }
  const std::complex<double> u = std::pow(z * (1.0 - z), -0.125);
  const std::complex<double> s = std::sqrt(1.0 - z);
  return {u * std::sqrt(1.0 + s), u * std::sqrt(1.0 - s)};
}

Eigen::Matrix2cd ising_monodromy(int samples, double radius, int loops) {
  if (samples < 16) {
    throw NumericError(
        "continuation error: need at least 16 samples per loop to track "
        "branches");
  }
  if (!(radius > 0.0) || radius >= 1.0) {
    throw NumericError(
        "contour error: circle radius around z=1 must lie in (0,1)");
  }
  if (loops < 1) throw InputError("loop count must be >= 1");

  // Continues (F+, F-) along z(t) = 1 + radius * e^{i phi(t)}, phi
  // decreasing (clockwise), tracking each root continuously: the outer
  // factor by principal powers of consecutive ratios, the square roots by
  // nearest-root selection.
  auto continue_blocks = [&](double phi0) {
    auto zpoint = [&](double phi) {
      return 1.0 + radius * std::polar(1.0, phi);
    };
    std::complex<double> z = zpoint(phi0);
    std::complex<double> w = z * (1.0 - z);
    std::complex<double> u = std::pow(w, -0.125);
    std::complex<double> s = std::sqrt(1.0 - z);
    std::complex<double> gp = std::sqrt(1.0 + s);
    std::complex<double> gm = std::sqrt(1.0 - s);
    Eigen::Vector2cd initial(u * gp, u * gm);

    const long total = static_cast<long>(samples) * loops;
    for (long step = 1; step <= total; ++step) {
      const double phi =
          phi0 - 2.0 * kPi * loops * static_cast<double>(step) / total;
      const std::complex<double> z2 = zpoint(phi);
      const std::complex<double> w2 = z2 * (1.0 - z2);
      u *= std::pow(w2 / w, -0.125);
      w = w2;
      std::complex<double> s2 = std::sqrt(1.0 - z2);
      if (std::abs(-s2 - s) < std::abs(s2 - s)) s2 = -s2;
      s = s2;
      std::complex<double> gp2 = std::sqrt(1.0 + s);
      if (std::abs(-gp2 - gp) < std::abs(gp2 - gp)) gp2 = -gp2;
      gp = gp2;
      std::complex<double> gm2 = std::sqrt(1.0 - s);
      if (std::abs(-gm2 - gm) < std::abs(gm2 - gm)) gm2 = -gm2;
      gm = gm2;
    }
    Eigen::Vector2cd final(u * gp, u * gm);
    return std::make_pair(initial, final);
  };

  const auto [va0, va1] = continue_blocks(0.0);
  const auto [vb0, vb1] = continue_blocks(kPi / 2.0);
  Eigen::Matrix2cd v;
  v.col(0) = va0;
  v.col(1) = vb0;
  Eigen::Matrix2cd w;
  w.col(0) = va1;
  w.col(1) = vb1;
  if (std::abs(v.determinant()) < 1e-12) {
    throw NumericError("continuation error: degenerate block basis");
  }
  return w * v.inverse();
}

}  // namespace tqft::anyon
