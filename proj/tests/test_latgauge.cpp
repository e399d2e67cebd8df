#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tqft/errors.hpp"
#include "tqft/latgauge.hpp"

using tqft::InputError;
namespace lg = tqft::gauge;
using cd = std::complex<double>;

namespace {

double frobenius_distance(const lg::Su2Matrix& u, const lg::Su2Matrix& v) {
  return std::sqrt((u.a - v.a) * (u.a - v.a) + (u.b - v.b) * (u.b - v.b) +
                   (u.c - v.c) * (u.c - v.c) + (u.d - v.d) * (u.d - v.d));
}

bool bitwise_equal(const lg::Su2Matrix& u, const lg::Su2Matrix& v) {
  return u.a == v.a && u.b == v.b && u.c == v.c && u.d == v.d;
}

}  // namespace

TEST_CASE("group elements map faithfully to 2x2 unitaries") {
  // Quaternion components against the explicit matrix form: products,
  // adjoints, traces, and determinants must match Eigen's complex algebra.
  std::mt19937_64 rng(314);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 50; ++rep) {
    auto draw = [&]() {
      double a = gauss(rng), b = gauss(rng), c = gauss(rng), d = gauss(rng);
      double n = std::sqrt(a * a + b * b + c * c + d * d);
      return lg::Su2Matrix::from_components(a / n, b / n, c / n, d / n);
    };
    lg::Su2Matrix u = draw(), v = draw();
    Eigen::Matrix2cd mu = u.matrix(), mv = v.matrix();
    CHECK(((u * v).matrix() - mu * mv).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((u.dagger().matrix() - mu.adjoint()).cwiseAbs().maxCoeff() <=
          1e-14);
    CHECK(std::abs(mu.determinant() - cd(1.0, 0.0)) <= 1e-14);
    CHECK(std::abs(u.half_trace() - 0.5 * mu.trace().real()) <= 1e-14);
    CHECK(std::abs(mu.trace().imag()) <= 1e-14);
    lg::Su2Matrix w = u * u.dagger();
    CHECK(frobenius_distance(w, lg::Su2Matrix::identity()) <= 1e-14);
  }

  // Basis correspondence: component b multiplies i*sigma_x, and so on.
  Eigen::Matrix2cd isx, isy, isz;
  isx << cd(0, 0), cd(0, 1), cd(0, 1), cd(0, 0);
  isy << cd(0, 0), cd(1, 0), cd(-1, 0), cd(0, 0);
  isz << cd(0, 1), cd(0, 0), cd(0, 0), cd(0, -1);
  CHECK((lg::Su2Matrix{0, 1, 0, 0}.matrix() - isx).cwiseAbs().maxCoeff() <=
        1e-15);
  CHECK((lg::Su2Matrix{0, 0, 1, 0}.matrix() - isy).cwiseAbs().maxCoeff() <=
        1e-15);
  CHECK((lg::Su2Matrix{0, 0, 0, 1}.matrix() - isz).cwiseAbs().maxCoeff() <=
        1e-15);

  CHECK_THROWS_AS(lg::Su2Matrix::from_components(2, 0, 0, 0), InputError);
}

TEST_CASE("lattice sites, wrapping, and link storage") {
  lg::LatticeGaugeField field({2, 3, 4});
  CHECK(field.site_count() == 24);
  CHECK(field.link_count() == 72);
  for (long s = 0; s < field.site_count(); ++s)
    CHECK(field.site_index(field.site_coords(s)) == s);
  // Periodic wrapping in coordinates and neighbors.
  CHECK(field.site_index({2, 3, 4}) == field.site_index({0, 0, 0}));
  CHECK(field.site_index({-1, -1, -1}) == field.site_index({1, 2, 3}));
  long origin = field.site_index({0, 0, 0});
  CHECK(field.neighbor(origin, 2, +1) == field.site_index({0, 0, 1}));
  CHECK(field.neighbor(origin, 2, -1) == field.site_index({0, 0, 3}));
  CHECK(field.neighbor(field.site_index({1, 0, 0}), 0, +1) == origin);
  CHECK_THROWS_AS(field.site_index({0, 0}), InputError);
  CHECK_THROWS_AS(lg::LatticeGaugeField({3, 1}), InputError);
  CHECK_THROWS_WITH_AS(lg::LatticeGaugeField({0}),
                       doctest::Contains("size"), InputError);
}

TEST_CASE("holonomy composition and error handling") {
  auto field = lg::random_field({3, 3}, 7);
  lg::LatticePath p1{{0, 0}, {1, 2}};
  lg::LatticePath p2{{1, 1}, {2, -1}};
  lg::LatticePath joined{{0, 0}, {1, 2, 2, -1}};
  auto composed = lg::holonomy(field, p1) * lg::holonomy(field, p2);
  CHECK(frobenius_distance(lg::holonomy(field, joined), composed) <= 1e-14);

  CHECK_THROWS_WITH_AS(
      lg::holonomy(field, lg::LatticePath{{0, 0}, {0}}),
      doctest::Contains("path"), InputError);
  CHECK_THROWS_AS(lg::holonomy(field, lg::LatticePath{{0, 0}, {3}}),
                  InputError);
  CHECK_THROWS_WITH_AS(
      lg::wilson_loop(field, lg::LatticePath{{0, 0}, {1, 2}}),
      doctest::Contains("closed"), InputError);
}

TEST_CASE("identity field has unit loops and zero action") {
  lg::LatticeGaugeField field({3, 3, 3});
  CHECK(lg::wilson_loop(field, lg::plaquette_path({0, 0, 0}, 0, 1)) ==
        doctest::Approx(1.0));
  CHECK(lg::wilson_action(field, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("wilson loops and action are gauge invariant") {
  auto field = lg::random_field({3, 3}, 3);
  const double beta = 1.7;
  const double action = lg::wilson_action(field, beta);
  std::vector<lg::LatticePath> loops;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      loops.push_back(lg::plaquette_path({x, y}, 0, 1));
      loops.push_back(lg::rectangle_path({x, y}, 0, 1, 2, 2));
    }
  std::vector<double> values;
  for (const auto& loop : loops) values.push_back(lg::wilson_loop(field, loop));

  for (unsigned long long seed = 100; seed < 110; ++seed) {
    auto g = lg::random_gauge({3, 3}, seed);
    auto transformed = lg::gauge_transform(field, g);
    for (std::size_t i = 0; i < loops.size(); ++i)
      CHECK(std::abs(lg::wilson_loop(transformed, loops[i]) - values[i]) <=
            1e-12);
    CHECK(std::abs(lg::wilson_action(transformed, beta) - action) <= 1e-12);
  }
}

TEST_CASE("open holonomy transforms covariantly") {
  auto field = lg::random_field({3, 3}, 5);
  auto g = lg::random_gauge({3, 3}, 6);
  auto transformed = lg::gauge_transform(field, g);
  lg::LatticePath path{{0, 0}, {1, 2, 1, -2}};
  // Endpoint: two steps in x, one net step in y cancelled -> (2, 0).
  long x = 0;
  long y = 2;  // site (2, 0) in row-major (last coordinate fastest): 2*3+0
  (void)x;
  (void)y;
  auto start_site = field.site_index({0, 0});
  auto end_site = field.site_index({2, 0});
  auto expected =
      g[start_site] * lg::holonomy(field, path) * g[end_site].dagger();
  CHECK(frobenius_distance(lg::holonomy(transformed, path), expected) <=
        1e-12);
}

TEST_CASE("pure gauge fields are flat") {
  auto g = lg::random_gauge({3, 3}, 11);
  auto field = lg::pure_gauge({3, 3}, g);
  CHECK(lg::wilson_action(field, 1.0) <= 1e-10);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(std::abs(lg::wilson_loop(field, lg::plaquette_path({x, y}, 0, 1)) -
                     1.0) <= 1e-12);

  // Holonomy from x to y is g(x) g(y)^+, independent of the route.
  lg::LatticePath route_a{{0, 0}, {1, 2}};        // x then y
  lg::LatticePath route_b{{0, 0}, {2, 1}};        // y then x
  lg::LatticePath route_c{{0, 0}, {1, 1, 2, -1}};  // detour
  auto expected = g[field.site_index({0, 0})] *
                  g[field.site_index({1, 1})].dagger();
  for (const auto& route : {route_a, route_b, route_c}) {
    CHECK(frobenius_distance(lg::holonomy(field, route), expected) <= 1e-12);
  }
}

TEST_CASE("random fields are deterministic per seed") {
  auto a = lg::random_field({3, 3}, 0);
  auto b = lg::random_field({3, 3}, 0);
  auto c = lg::random_field({3, 3}, 1);
  bool all_equal = true, any_differ = false;
  for (long s = 0; s < a.site_count(); ++s)
    for (int mu = 0; mu < a.ndim(); ++mu) {
      all_equal = all_equal && bitwise_equal(a.link(s, mu), b.link(s, mu));
      any_differ = any_differ || !bitwise_equal(a.link(s, mu), c.link(s, mu));
    }
  CHECK(all_equal);
  CHECK(any_differ);
  // Haar draws are unit quaternions.
  for (long s = 0; s < a.site_count(); ++s)
    for (int mu = 0; mu < a.ndim(); ++mu)
      CHECK(std::abs(a.link(s, mu).norm() - 1.0) <= 1e-12);
}

TEST_CASE("parallel action matches serial bit for bit") {
  for (auto dims : std::vector<std::vector<int>>{{3, 3}, {4, 4, 4, 4}}) {
    auto field = lg::random_field(dims, 9);
    double serial = lg::wilson_action_serial(field, 1.25);
    double parallel = lg::wilson_action_parallel(field, 1.25);
    CHECK(serial == parallel);
    CHECK(lg::wilson_action(field, 1.25) == serial);
  }
}

TEST_CASE("action scales linearly in the coupling") {
  auto field = lg::random_field({4, 4}, 2);
  double s1 = lg::wilson_action(field, 1.0);
  double s2 = lg::wilson_action(field, 2.0);
  CHECK(std::abs(s2 - 2.0 * s1) <= 1e-12);
  CHECK(s1 > 0.0);
}

TEST_CASE("field JSON round trip") {
  auto field = lg::random_field({2, 3}, 4);
  auto text = lg::field_to_json(field);
  auto back = lg::field_from_json(text);
  CHECK(back.dims() == field.dims());
  // Deserialization re-normalizes each quaternion, so the round trip is
  // exact up to one ulp per component rather than bitwise.
  for (long s = 0; s < field.site_count(); ++s)
    for (int mu = 0; mu < field.ndim(); ++mu)
      CHECK(frobenius_distance(back.link(s, mu), field.link(s, mu)) <= 1e-15);
  // A second pass through the serializer must be a fixed point.
  auto again = lg::field_from_json(lg::field_to_json(back));
  for (long s = 0; s < field.site_count(); ++s)
    for (int mu = 0; mu < field.ndim(); ++mu)
      CHECK(bitwise_equal(again.link(s, mu), back.link(s, mu)));
  CHECK_THROWS_AS(lg::field_from_json("{"), InputError);
  CHECK_THROWS_AS(lg::field_from_json(R"({"dims": [2, 2]})"), InputError);
  CHECK_THROWS_AS(
      lg::field_from_json(R"({"dims": [2, 2], "links": [[1, 0, 0, 0]]})"),
      InputError);
}

TEST_CASE("gauge transform validates its input") {
  auto field = lg::random_field({3, 3}, 1);
  std::vector<lg::Su2Matrix> too_few(3);
  CHECK_THROWS_WITH_AS(lg::gauge_transform(field, too_few),
                       doctest::Contains("domain"), InputError);
}
