#include "tqft/knot.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>

namespace tqft::knot {

namespace {

enum class Role : unsigned char { kUnknown, kIn, kOut };

Role opposite(Role r) { return r == Role::kIn ? Role::kOut : Role::kIn; }

struct Occurrence {
  int crossing;
  int slot;
};

// Fixed-capacity union-find over crossing slots (4 per crossing).
struct SlotUnionFind {
  std::array<int, 4 * kMaxCrossings> parent;
  int merges = 0;

  void init(int n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
    merges = 0;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      ++merges;
    }
  }
};

// Slot partner induced by the arcs: ext[s] is the other endpoint of the arc
// occupying slot s.  An arc with both endpoints on the same slot cannot
// occur (slots are distinct), but both endpoints on the same crossing can.
std::vector<int> external_pairing(
    const std::vector<std::array<int, 4>>& tuples) {
  std::map<int, std::vector<int>> slots_of_arc;
  for (int c = 0; c < static_cast<int>(tuples.size()); ++c) {
    for (int s = 0; s < 4; ++s) slots_of_arc[tuples[c][s]].push_back(4 * c + s);
  }
  std::vector<int> ext(4 * tuples.size(), -1);
  for (const auto& [arc, slots] : slots_of_arc) {
    ext[slots[0]] = slots[1];
    ext[slots[1]] = slots[0];
  }
  return ext;
}

// Number of closed circles obtained by smoothing every crossing of `state`
// (bit c: 0 = A-smoothing joining slots (0,1) and (2,3); 1 = B-smoothing
// joining slots (0,3) and (1,2)) and following the arcs between crossings.
int state_loops(int n, const std::vector<int>& ext, unsigned long state,
                SlotUnionFind& uf) {
  uf.init(4 * n);
  for (int c = 0; c < n; ++c) {
    const int base = 4 * c;
    if ((state >> c) & 1UL) {
      uf.unite(base + 0, base + 3);
      uf.unite(base + 1, base + 2);
    } else {
      uf.unite(base + 0, base + 1);
      uf.unite(base + 2, base + 3);
    }
  }
  for (int s = 0; s < 4 * n; ++s) uf.unite(s, ext[s]);
  return 4 * n - uf.merges;
}

// delta = -A^2 - A^-2 in half-unit exponent keys of A.
LaurentPolynomial loop_value_poly() {
  LaurentPolynomial d = LaurentPolynomial::monomial(-1, 4);
  d += LaurentPolynomial::monomial(-1, -4);
  return d;
}

std::vector<LaurentPolynomial> loop_value_powers(int max_power) {
  std::vector<LaurentPolynomial> pows;
  pows.reserve(max_power + 1);
  pows.push_back(LaurentPolynomial::constant(1));
  const LaurentPolynomial d = loop_value_poly();
  for (int i = 1; i <= max_power; ++i) pows.push_back(pows.back() * d);
  return pows;
}

std::string role_name(Role r) {
  switch (r) {
    case Role::kIn:
      return "incoming";
    case Role::kOut:
      return "outgoing";
    default:
      return "unknown";
  }
}

}  // namespace

KnotDiagram KnotDiagram::from_crossings(
    std::vector<std::array<int, 4>> tuples, int free_loops) {
  if (free_loops < 0) {
    throw InputError("diagram error: negative free-loop count");
  }
  const int n = static_cast<int>(tuples.size());
  if (n == 0 && free_loops == 0) {
    throw InputError("empty diagram: no crossings and no loops");
  }
  if (n > kMaxCrossings) {
    throw InputError("diagram has " + std::to_string(n) +
                     " crossings, above the state-sum cap of " +
                     std::to_string(kMaxCrossings));
  }

  // Arc-degree condition: every arc id appears exactly twice.
  std::map<int, std::vector<Occurrence>> occ;
  for (int c = 0; c < n; ++c) {
    for (int s = 0; s < 4; ++s) {
      if (tuples[c][s] < 0) {
        throw InputError("malformed diagram: negative arc id");
      }
      occ[tuples[c][s]].push_back({c, s});
    }
  }
  for (const auto& [arc, os] : occ) {
    if (os.size() != 2) {
      throw InputError("malformed diagram: arc " + std::to_string(arc) +
                       " appears " + std::to_string(os.size()) +
                       " times (expected exactly 2)");
    }
  }

  // Orientation resolution.  Under-strand slots have fixed direction
  // (slot 0 incoming, slot 2 outgoing).  Each arc must be incoming at one
  // endpoint and outgoing at the other; propagating that constraint fixes
  // the direction of over-strands.  Directions the diagram leaves free are
  // completed by a canonical choice (over-strand enters at slot 3).
  std::vector<std::array<Role, 4>> role(
      n, {Role::kUnknown, Role::kUnknown, Role::kUnknown, Role::kUnknown});
  std::vector<int> over_entry(n, -1);
  std::deque<Occurrence> pending;

  for (int c = 0; c < n; ++c) {
    role[c][0] = Role::kIn;
    role[c][2] = Role::kOut;
    pending.push_back({c, 0});
    pending.push_back({c, 2});
  }

  auto resolve_over = [&](int c, int entry_slot) {
    if (over_entry[c] == entry_slot) return;
    if (over_entry[c] != -1) {
      throw InputError(
          "orientation error: over-strand direction at crossing " +
          std::to_string(c) + " is forced both ways");
    }
    over_entry[c] = entry_slot;
    const int exit_slot = entry_slot == 3 ? 1 : 3;
    role[c][entry_slot] = Role::kIn;
    role[c][exit_slot] = Role::kOut;
    pending.push_back({c, entry_slot});
    pending.push_back({c, exit_slot});
  };

  auto drain = [&]() {
    while (!pending.empty()) {
      const Occurrence cur = pending.front();
      pending.pop_front();
      const int arc = tuples[cur.crossing][cur.slot];
      const auto& pair = occ[arc];
      const Occurrence other = (pair[0].crossing == cur.crossing &&
                                pair[0].slot == cur.slot)
                                   ? pair[1]
                                   : pair[0];
      const Role want = opposite(role[cur.crossing][cur.slot]);
      const Role have = role[other.crossing][other.slot];
      if (have == want) continue;
      if (have == Role::kUnknown) {
        const int entry = (want == Role::kIn)
                              ? other.slot
                              : (other.slot == 1 ? 3 : 1);
        resolve_over(other.crossing, entry);
      } else {
        throw InputError("orientation error: arc " + std::to_string(arc) +
                         " would be " + role_name(have) + " at both ends");
      }
    }
  };

  drain();
  for (int c = 0; c < n; ++c) {
    if (over_entry[c] == -1) {
      resolve_over(c, 3);
      drain();
    }
  }

  // Crossing signs.  With slots counterclockwise from the incoming
  // under-strand, an over-strand entering at slot 3 crosses the under
  // direction left-to-right: positive crossing.
  KnotDiagram d;
  d.crossings_.reserve(n);
  d.free_loops_ = free_loops;
  d.writhe_ = 0;
  for (int c = 0; c < n; ++c) {
    Crossing x;
    x.arcs = tuples[c];
    x.over_enters_last = (over_entry[c] == 3);
    x.sign = x.over_enters_last ? +1 : -1;
    d.writhe_ += x.sign;
    d.crossings_.push_back(x);
  }

  // Component count: follow strands straight through each crossing.
  SlotUnionFind uf;
  uf.init(4 * n);
  for (int c = 0; c < n; ++c) {
    uf.unite(4 * c + 0, 4 * c + 2);
    uf.unite(4 * c + 1, 4 * c + 3);
  }
  const std::vector<int> ext = external_pairing(tuples);
  for (int s = 0; s < 4 * n; ++s) uf.unite(s, ext[s]);
  d.components_ = (4 * n - uf.merges) + free_loops;
  return d;
}

KnotDiagram KnotDiagram::with_extra_loops(int extra) const {
  if (extra < 0) throw InputError("diagram error: negative loop count");
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(crossings_.size());
  for (const auto& x : crossings_) tuples.push_back(x.arcs);
  return from_crossings(std::move(tuples), free_loops_ + extra);
}

KnotDiagram parse_pd(const std::string& text, const std::string& source_name) {
  static const std::regex tuple_re(
      R"(^\s*[Xx]\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$)");
  std::vector<std::array<int, 4>> tuples;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    while (std::getline(tokens, token, ';')) {
      if (token.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string where = source_name + ":" + std::to_string(lineno);
      std::smatch m;
      if (!std::regex_match(token, m, tuple_re)) {
        throw InputError(where + ": malformed crossing token '" + token +
                         "' (expected X(a,b,c,d))");
      }
      std::array<int, 4> t;
      for (int i = 0; i < 4; ++i) {
        try {
          t[i] = std::stoi(m[i + 1].str());
        } catch (const std::exception&) {
          throw InputError(where + ": arc label out of range in '" + token +
                           "'");
        }
      }
      tuples.push_back(t);
    }
  }
  if (tuples.empty()) {
    throw InputError(source_name +
                     ": empty diagram (a crossingless unknot cannot be "
                     "written in PD text; use the explicit unknot)");
  }
  return KnotDiagram::from_crossings(std::move(tuples), 0);
}

KnotDiagram read_pd_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open PD file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pd(buf.str(), path);
}

KnotDiagram unknot_diagram(int loops) {
  if (loops < 1) throw InputError("unknot diagram needs at least one loop");
  return KnotDiagram::from_crossings({}, loops);
}

KnotDiagram diagram_from_braid(int strands, const std::vector<int>& word) {
  if (strands < 1) throw InputError("braid error: need at least one strand");
  std::vector<int> cur(strands);
  for (int j = 0; j < strands; ++j) cur[j] = j;
  int next_arc = strands;

  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(word.size());
  for (const int g : word) {
    const int i = std::abs(g);
    if (i < 1 || i >= strands) {
      throw InputError("braid error: letter " + std::to_string(g) +
                       " out of range for " + std::to_string(strands) +
                       " strands");
    }
    const int p = cur[i - 1];
    const int q = cur[i];
    const int r = next_arc++;
    const int s = next_arc++;
    if (g > 0) {
      tuples.push_back({p, r, s, q});  // under-strand NW->SE
    } else {
      tuples.push_back({q, p, r, s});  // under-strand NE->SW
    }
    cur[i - 1] = r;
    cur[i] = s;
  }

  // Closure: identify each bottom arc with the top arc in the same
  // position, then relabel arcs by their class representative.
  std::vector<int> parent(next_arc);
  for (int a = 0; a < next_arc; ++a) parent[a] = a;
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (int j = 0; j < strands; ++j) parent[find(j)] = find(cur[j]);

  std::vector<int> occurrences(next_arc, 0);
  for (auto& t : tuples) {
    for (int s = 0; s < 4; ++s) {
      t[s] = find(t[s]);
      ++occurrences[t[s]];
    }
  }
  int free_loops = 0;
  for (int a = 0; a < next_arc; ++a) {
    if (find(a) == a && occurrences[a] == 0) ++free_loops;
  }
  return KnotDiagram::from_crossings(std::move(tuples), free_loops);
}

KnotDiagram mirror(const KnotDiagram& d) {
  // Switch over/under at every crossing, keeping every strand's direction.
  // The new incoming under-strand is the old incoming over-strand, so the
  // tuple is rotated to start there.
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(d.crossings().size());
  for (const auto& x : d.crossings()) {
    const auto& a = x.arcs;
    if (x.over_enters_last) {
      tuples.push_back({a[3], a[0], a[1], a[2]});
    } else {
      tuples.push_back({a[1], a[2], a[3], a[0]});
    }
  }
  return KnotDiagram::from_crossings(std::move(tuples), d.free_loop_count());
}

int writhe(const KnotDiagram& d) { return d.writhe(); }

LaurentPolynomial kauffman_bracket_serial(const KnotDiagram& d) {
  const int n = d.crossing_count();
  const int free = d.free_loop_count();
  const int max_loops = 2 * n + free;
  const auto dpow = loop_value_powers(std::max(0, max_loops - 1));
  if (n == 0) return dpow[free - 1];

  std::vector<std::array<int, 4>> tuples;
  for (const auto& x : d.crossings()) tuples.push_back(x.arcs);
  const std::vector<int> ext = external_pairing(tuples);

  LaurentPolynomial acc;
  SlotUnionFind uf;
  const unsigned long nstates = 1UL << n;
  for (unsigned long s = 0; s < nstates; ++s) {
    const int loops = state_loops(n, ext, s, uf) + free;
    const int b = std::popcount(s);
    acc += dpow[loops - 1].shifted(2 * (n - 2 * b));
  }
  return acc;
}

LaurentPolynomial kauffman_bracket_parallel(const KnotDiagram& d) {
  const int n = d.crossing_count();
  const int free = d.free_loop_count();
  const int max_loops = 2 * n + free;
  const auto dpow = loop_value_powers(std::max(0, max_loops - 1));
  if (n == 0) return dpow[free - 1];

  std::vector<std::array<int, 4>> tuples;
  for (const auto& x : d.crossings()) tuples.push_back(x.arcs);
  const std::vector<int> ext = external_pairing(tuples);

  // Bucket states by (number of B-smoothings, loop count).  Bucket counts
  // are merged by integer addition, so the result is independent of the
  // thread partition; the polynomial is assembled once at the end.
  const int rows = n + 1;
  const int cols = max_loops + 1;
  std::vector<long long> counts(static_cast<size_t>(rows) * cols, 0);
  const long long nstates = 1LL << n;

#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<long long> local(static_cast<size_t>(rows) * cols, 0);
    SlotUnionFind uf;
#pragma omp for schedule(static)
    for (long long s = 0; s < nstates; ++s) {
      const int loops =
          state_loops(n, ext, static_cast<unsigned long>(s), uf) + free;
      const int b = std::popcount(static_cast<unsigned long>(s));
      ++local[static_cast<size_t>(b) * cols + loops];
    }
#pragma omp critical
    for (size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
  }
#else
  {
    SlotUnionFind uf;
    for (long long s = 0; s < nstates; ++s) {
      const int loops =
          state_loops(n, ext, static_cast<unsigned long>(s), uf) + free;
      const int b = std::popcount(static_cast<unsigned long>(s));
      ++counts[static_cast<size_t>(b) * cols + loops];
    }
  }
#endif

  LaurentPolynomial acc;
  for (int b = 0; b <= n; ++b) {
    for (int loops = 1; loops <= max_loops; ++loops) {
      const long long c = counts[static_cast<size_t>(b) * cols + loops];
      if (c != 0) {
        acc += dpow[loops - 1].shifted(2 * (n - 2 * b)).scaled(c);
      }
    }
  }
  return acc;
}

LaurentPolynomial kauffman_bracket(const KnotDiagram& d) {
#ifdef _OPENMP
  if (d.crossing_count() >= 10) return kauffman_bracket_parallel(d);
#endif
  return kauffman_bracket_serial(d);
}

LaurentPolynomial jones(const KnotDiagram& d) {
  const int w = d.writhe();
  LaurentPolynomial v = kauffman_bracket(d).shifted(-6 * w);
  if (w % 2 != 0) v = v.scaled(-1);  // (-A)^(-3w) carries sign (-1)^w
  // t = A^-4 in half-unit keys: A-key kappa -> t-key -kappa/4.
  return v.mapped_exponents(-1, 4);
}

LaurentPolynomial bracket_closure(const KnotDiagram& d) {
  // delta * <D>, then A = q^(1/2): A-key kappa -> q-key kappa/2.
  return (kauffman_bracket(d) * loop_value_poly()).mapped_exponents(1, 2);
}

bool verify_jones_skein(const KnotDiagram& lplus, const KnotDiagram& lminus,
                        const KnotDiagram& lzero) {
  const LaurentPolynomial vp = jones(lplus);
  const LaurentPolynomial vm = jones(lminus);
  const LaurentPolynomial v0 = jones(lzero);
  const LaurentPolynomial lhs = vp.shifted(-2) - vm.shifted(2);
  const LaurentPolynomial rhs = v0.shifted(1) - v0.shifted(-1);
  return lhs == rhs;
}

LevelEvaluation evaluate_at_level(const LaurentPolynomial& v, int k) {
  if (k < 1) throw InputError("level must be a positive integer");
  const double theta = std::numbers::pi / (k + 2);
  LevelEvaluation out;
  out.k = k;
  // -e^{i theta} written with principal argument theta - pi in (-pi, 0).
  out.q = std::polar(1.0, theta - std::numbers::pi);
  out.value = v.evaluate(out.q);
  return out;
}

}  // namespace tqft::knot
