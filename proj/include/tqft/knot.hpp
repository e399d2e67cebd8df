#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "tqft/errors.hpp"
#include "tqft/laurent.hpp"

namespace tqft::knot {

// State-sum cost is 2^n; refuse diagrams beyond this crossing count.
inline constexpr int kMaxCrossings = 20;

// One crossing of a planar diagram.  `arcs` lists the four incident arc ids
// counterclockwise starting from the incoming under-strand, so the
// under-strand runs arcs[0] -> arcs[2].  The over-strand occupies slots 1
// and 3; `over_enters_last` records its derived direction (true: enters at
// arcs[3], exits at arcs[1]).  `sign` is the usual crossing sign (+1 when
// the over-strand crosses the under-strand left-to-right seen along the
// under direction).
struct Crossing {
  std::array<int, 4> arcs;
  bool over_enters_last = true;
  int sign = +1;
};

// A knot/link diagram: crossings plus a count of crossingless circles
// (which the PD text format cannot express).  Construction validates the
// arc-degree condition (every arc id appears exactly twice) and derives a
// globally consistent orientation; contradictory strand directions raise
// InputError.  Where the in/out direction of an over-strand is not forced
// by the rest of the diagram, a fixed canonical choice is made, so equal
// inputs always produce equal diagrams.
class KnotDiagram {
 public:
  static KnotDiagram from_crossings(std::vector<std::array<int, 4>> tuples,
                                    int free_loops);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int free_loop_count() const { return free_loops_; }
  int component_count() const { return components_; }
  int writhe() const { return writhe_; }

  // Same diagram with `extra` additional disjoint crossingless circles.
  KnotDiagram with_extra_loops(int extra) const;

 private:
  KnotDiagram() = default;
  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  int components_ = 0;
  int writhe_ = 0;
};

// Parses PD text: semicolon/newline separated tuples "X(a,b,c,d)" with
// nonnegative integer arc ids; '#' starts a comment.  Empty input is an
// error (a crossingless unknot has no PD text; use unknot_diagram()).
KnotDiagram parse_pd(const std::string& text,
                     const std::string& source_name = "<pd>");
KnotDiagram read_pd_file(const std::string& path);

// The 0-crossing unknot (or an unlink of `loops` circles).
KnotDiagram unknot_diagram(int loops = 1);

// Closure of a braid word on `strands` strands.  Letter +i / -i stands for
// the positive / negative elementary crossing of strands i and i+1
// (1-based, 1 <= i < strands).  Strands are oriented downward; the closure
// joins each bottom endpoint to the top endpoint in the same position.
KnotDiagram diagram_from_braid(int strands, const std::vector<int>& word);

// Mirror image: every crossing switched, planar projection unchanged.
KnotDiagram mirror(const KnotDiagram& d);

// Sum of crossing signs of the oriented diagram.
int writhe(const KnotDiagram& d);

// Kauffman bracket <D> in the variable A (exponent keys in half-units of
// A): sum over all 2^n smoothings of A^(a-b) * delta^(loops-1) with
// delta = -A^2 - A^-2.  The 0-crossing unknot has bracket 1.
LaurentPolynomial kauffman_bracket(const KnotDiagram& d);
LaurentPolynomial kauffman_bracket_serial(const KnotDiagram& d);
LaurentPolynomial kauffman_bracket_parallel(const KnotDiagram& d);

// Jones polynomial V(D) = (-A)^(-3w) <D> with t = A^-4, V(unknot) = 1.
// Exponent keys are half-units of t.
LaurentPolynomial jones(const KnotDiagram& d);

// Unnormalized bracket closure delta * <D> rewritten in the variable q via
// A = q^(1/2); exponent keys are half-units of q.  A single circle gives
// -q - q^(-1), the loop value whose level-k evaluation is 2cos(pi/(k+2)).
LaurentPolynomial bracket_closure(const KnotDiagram& d);

// Exact check of t^-1 V(L+) - t V(L-) = (t^(1/2) - t^(-1/2)) V(L0).
// The three diagrams must agree outside one crossing site (caller's
// responsibility); returns false when the identity fails.
bool verify_jones_skein(const KnotDiagram& lplus, const KnotDiagram& lminus,
                        const KnotDiagram& lzero);

struct LevelEvaluation {
  int k = 0;
  std::complex<double> q;
  std::complex<double> value;
};

// Evaluates a half-unit-exponent Laurent polynomial at the level-k root
// q = -exp(i*pi/(k+2)); half powers use the principal branch q^(1/2) =
// e^(i*theta/2) for q = e^(i*theta), theta in (-pi, pi].
LevelEvaluation evaluate_at_level(const LaurentPolynomial& v, int k);

}  // namespace tqft::knot
