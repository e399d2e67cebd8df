#include "tqft/simplicial.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tqft::excalc {

namespace {

void check_tuple(const Simplex& s, const std::string& where) {
  if (s.empty()) throw InputError(where + ": empty simplex tuple");
  for (int v : s)
    if (v < 0) throw InputError(where + ": negative vertex id");
  Simplex sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError(where + ": malformed simplex (repeated vertex)");
}

}  // namespace

SimplicialComplex SimplicialComplex::from_maximal(
    const std::vector<Simplex>& maximal) {
  int dim = -1;
  for (const Simplex& s : maximal) {
    check_tuple(s, "build_complex");
    dim = std::max(dim, static_cast<int>(s.size()) - 1);
  }
  std::vector<std::set<Simplex>> faces(dim + 1);
  // Closure: every subset of a maximal simplex is a face.  Tuples are tiny
  // (p <= 3 in practice), so subset enumeration is cheap.
  for (const Simplex& s : maximal) {
    Simplex sorted = s;
    std::sort(sorted.begin(), sorted.end());
    const int n = static_cast<int>(sorted.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex f;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(sorted[i]);
      faces[f.size() - 1].insert(std::move(f));
    }
  }

  SimplicialComplex K;
  K.by_dim_.resize(dim + 1);
  K.index_.resize(dim + 1);
  for (int p = 0; p <= dim; ++p) {
    K.by_dim_[p].assign(faces[p].begin(), faces[p].end());
    for (int i = 0; i < static_cast<int>(K.by_dim_[p].size()); ++i)
      K.index_[p][K.by_dim_[p][i]] = i;
  }
  for (const Simplex& v : K.by_dim_.empty() ? std::vector<Simplex>{}
                                            : K.by_dim_[0])
    K.vertices_.push_back(v[0]);
  return K;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int p) const {
  static const std::vector<Simplex> kEmpty;
  if (p < 0 || p > dimension()) return kEmpty;
  return by_dim_[p];
}

long SimplicialComplex::simplex_count(int p) const {
  return static_cast<long>(simplices(p).size());
}

int SimplicialComplex::index_of(int p, const Simplex& s) const {
  if (p < 0 || p > dimension()) return -1;
  auto it = index_[p].find(s);
  return it == index_[p].end() ? -1 : it->second;
}

SimplicialComplex SimplicialComplex::relabeled(
    const std::map<int, int>& vertex_map) const {
  std::set<int> images;
  for (const auto& [from, to] : vertex_map) {
    (void)from;
    if (!images.insert(to).second)
      throw InputError("relabeled: vertex map is not injective");
  }
  std::vector<Simplex> relabeled_simplices;
  for (int p = 0; p <= dimension(); ++p) {
    for (const Simplex& s : by_dim_[p]) {
      Simplex t;
      for (int v : s) {
        auto it = vertex_map.find(v);
        if (it == vertex_map.end())
          throw InputError("relabeled: vertex " + std::to_string(v) +
                           " missing from map");
        t.push_back(it->second);
      }
      relabeled_simplices.push_back(std::move(t));
    }
  }
  return from_maximal(relabeled_simplices);
}

SimplicialComplex parse_complex(const std::string& text,
                                const std::string& source_name) {
  std::vector<Simplex> maximal;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // Trim whitespace-only lines.
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    const std::string where =
        source_name + ":" + std::to_string(lineno);
    Simplex s;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        size_t used = 0;
        const int v = std::stoi(field, &used);
        while (used < field.size() &&
               (field[used] == ' ' || field[used] == '\t' ||
                field[used] == '\r'))
          ++used;
        if (used != field.size())
          throw InputError(where + ": trailing junk in vertex id '" + field +
                           "'");
        s.push_back(v);
      } catch (const std::invalid_argument&) {
        throw InputError(where + ": expected integer vertex id, got '" +
                         field + "'");
      } catch (const std::out_of_range&) {
        throw InputError(where + ": vertex id out of range: '" + field + "'");
      }
    }
    check_tuple(s, where);
    maximal.push_back(std::move(s));
  }
  if (maximal.empty())
    throw InputError(source_name + ": no simplices in complex file");
  return SimplicialComplex::from_maximal(maximal);
}

SimplicialComplex read_complex_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError(path + ": cannot open complex file");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_complex(buf.str(), path);
}

Cochain parse_cochain_json(const std::string& text,
                           const std::string& source_name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source_name + ": invalid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("degree") || !j.contains("values"))
    throw InputError(source_name +
                     ": cochain JSON must be {\"degree\": p, \"values\": [...]}");
  if (!j["degree"].is_number_integer())
    throw InputError(source_name + ": cochain degree must be an integer");
  if (!j["values"].is_array())
    throw InputError(source_name + ": cochain values must be an array");
  Cochain c;
  c.degree = j["degree"].get<int>();
  const auto& vals = j["values"];
  c.values.resize(static_cast<long>(vals.size()));
  for (long i = 0; i < c.values.size(); ++i) {
    if (!vals[i].is_number())
      throw InputError(source_name + ": cochain value " + std::to_string(i) +
                       " is not a number");
    c.values[i] = vals[i].get<double>();
  }
  return c;
}

Cochain read_cochain_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError(path + ": cannot open cochain file");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_cochain_json(buf.str(), path);
}

std::string cochain_to_json(const Cochain& c) {
  nlohmann::json j;
  j["degree"] = c.degree;
  j["values"] = nlohmann::json::array();
  for (long i = 0; i < c.values.size(); ++i) j["values"].push_back(c.values[i]);
  return j.dump();
}

Eigen::MatrixXi boundary_matrix(const SimplicialComplex& K, int p) {
  if (p < 1 || p > K.dimension())
    throw InputError("boundary_matrix: degree " + std::to_string(p) +
                     " out of range 1.." + std::to_string(K.dimension()));
  const auto& rows = K.simplices(p - 1);
  const auto& cols = K.simplices(p);
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(static_cast<long>(rows.size()),
                                            static_cast<long>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
    const Simplex& s = cols[j];
    int sign = 1;
    for (int i = 0; i <= p; ++i) {
      Simplex face;
      face.reserve(p);
      for (int v = 0; v <= p; ++v)
        if (v != i) face.push_back(s[v]);
      const int r = K.index_of(p - 1, face);
      if (r < 0)
        throw ConsistencyError("boundary_matrix: face missing from closure");
      m(r, j) = sign;
      sign = -sign;
    }
  }
  return m;
}

Eigen::MatrixXi coboundary_matrix(const SimplicialComplex& K, int p) {
  if (p < 0 || p >= K.dimension())
    throw InputError("coboundary_matrix: degree " + std::to_string(p) +
                     " out of range 0.." + std::to_string(K.dimension() - 1));
  return boundary_matrix(K, p + 1).transpose();
}

long exact_rank(const Eigen::MatrixXi& m) {
  const long rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  // Fraction-free (Bareiss) elimination over arbitrary-precision integers:
  // every division below is exact, so the rank is exact over Q.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) a[i][j] = m(static_cast<int>(i),
                                                static_cast<int>(j));
  mpz_class prev = 1;
  long rank = 0;
  const long steps = std::min(rows, cols);
  for (long k = 0; k < steps; ++k) {
    long pi = -1, pj = -1;
    for (long i = k; i < rows && pi < 0; ++i)
      for (long j = k; j < cols; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    std::swap(a[k], a[pi]);
    if (pj != k)
      for (long i = 0; i < rows; ++i) std::swap(a[i][k], a[i][pj]);
    for (long i = k + 1; i < rows; ++i) {
      for (long j = k + 1; j < cols; ++j) {
        mpz_class num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
    ++rank;
  }
  return rank;
}

std::vector<long> betti_numbers(const SimplicialComplex& K) {
  const int dim = K.dimension();
  // rank_bd[p] = rank of the boundary operator on p-chains (0 for p=0 and
  // p>dim, where the operator is the zero map).
  std::vector<long> rank_bd(dim + 2, 0);
  for (int p = 1; p <= dim; ++p) rank_bd[p] = exact_rank(boundary_matrix(K, p));
  std::vector<long> betti(dim + 1);
  for (int p = 0; p <= dim; ++p) {
    const long kernel_dim = K.simplex_count(p) - rank_bd[p];
    betti[p] = kernel_dim - rank_bd[p + 1];
  }
  return betti;
}

long euler_characteristic(const SimplicialComplex& K) {
  long from_betti = 0, from_counts = 0;
  int sign = 1;
  const std::vector<long> betti = betti_numbers(K);
  for (int p = 0; p <= K.dimension(); ++p) {
    from_betti += sign * betti[p];
    from_counts += sign * K.simplex_count(p);
    sign = -sign;
  }
  if (from_betti != from_counts)
    throw ConsistencyError(
        "euler_characteristic: Betti sum " + std::to_string(from_betti) +
        " != simplex-count sum " + std::to_string(from_counts));
  return from_betti;
}

}  // namespace tqft::excalc
