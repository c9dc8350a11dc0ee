#include <doctest.h>

#include <regex>
#include <set>

#include "cusp/checks.hpp"
#include "cusp/tessellation.hpp"
#include "oracles.hpp"

using namespace cusp;

namespace {

  unsigned const kPrimes[] = {2, 3, 5, 7, 11, 13};

  BoundaryValue rat(long long n, long long d) {
    return BoundaryValue::rational(n, d);
  }

  // Strictly interior point of the triangle (l, r, ∞), drawn numerically.
  HPoint random_in_triangle(Rational const& l, Rational const& r, Rng& rng) {
    long double L = static_cast<long double>(l), R = static_cast<long double>(r);
    long double m = (L + R) / 2, rad = (R - L) / 2;
    while (true) {
      long double x = L + (R - L) * (0.02L + 0.96L * rng.unit());
      long double y = 3 * rng.unit() + 1e-3L;
      if ((x - m) * (x - m) + y * y > rad * rad * 1.0001L) {
        return HPoint(x, y);
      }
    }
  }

}  // namespace

TEST_CASE("build_domain examples") {
  auto d5 = build_domain(5);
  REQUIRE(d5.spheres.size() == 4);
  for (unsigned q = 1; q <= 4; ++q) {
    CHECK(d5.spheres[q - 1].center == Rational(q, 5));
    CHECK(d5.spheres[q - 1].radius == Rational(1, 5));
  }
  REQUIRE(d5.vertices.size() == 5);
  CHECK(d5.vertices[1].re == Rational(3, 10));
  CHECK(d5.vertices[2].re == Rational(1, 2));
  CHECK(d5.vertices[3].re == Rational(7, 10));
  for (int k = 1; k <= 3; ++k) {
    CHECK(d5.vertices[k].im == normalize_surd(0, 1, 10, 3));
  }
  CHECK(d5.vertices[0].im == BoundaryValue(0));
  CHECK(d5.vertices[4].re == Rational(1));

  auto d2 = build_domain(2);
  REQUIRE(d2.spheres.size() == 1);
  CHECK(d2.spheres[0].center == Rational(1, 2));
  CHECK(d2.spheres[0].radius == Rational(1, 2));
  REQUIRE(d2.vertices.size() == 2);
  CHECK(d2.vertices[0].re == Rational(0));
  CHECK(d2.vertices[1].re == Rational(1));

  auto d3 = build_domain(3);
  REQUIRE(d3.spheres.size() == 2);
  CHECK(d3.spheres[0].center == Rational(1, 3));
  CHECK(d3.spheres[1].center == Rational(2, 3));
  CHECK(d3.vertices[1].re == Rational(1, 2));
  CHECK(d3.vertices[1].im == normalize_surd(0, 1, 6, 3));

  CHECK_THROWS_AS(build_domain(9), std::invalid_argument);
}

TEST_CASE("inner vertices lie on two spheres and maxima are tops") {
  for (unsigned p : kPrimes) {
    auto dom = build_domain(p);
    CHECK(dom.vertices.size() == p);
    for (unsigned k = 1; k + 1 < p; ++k) {
      auto const& v = dom.vertices[k];
      REQUIRE(v.im.is_surd());
      // Im² = (√3/(2p))² = 3/(4p²); |pv − q|² = (p·re − q)² + p²·Im².
      auto     q   = v.im.to_quadratic();
      Rational im2 = (q * q).rational_part();
      for (unsigned s : {k, k + 1}) {
        Rational dx = Rational(p) * v.re - Rational(s);
        CHECK(dx * dx + Rational(p * p) * im2 == 1);
      }
    }
    REQUIRE(dom.maxima.size() == p - 1);
    for (unsigned k = 1; k < p; ++k) {
      CHECK(dom.maxima[k - 1].re_exact() == Rational(k, p));
      CHECK(dom.maxima[k - 1].im_exact() == dom.spheres[k - 1].radius);
    }
  }
}

TEST_CASE("g_pair examples") {
  CHECK(g_pair(5, 1) == GroupElement(4, -1, 5, -1));
  CHECK(g_pair(5, 2) == GroupElement(2, -1, 5, -2));
  CHECK(g_pair(7, 3) == GroupElement(2, -1, 7, -3));
  CHECK_THROWS(g_pair(5, 0));
  CHECK_THROWS(g_pair(5, 5));
  for (unsigned p : kPrimes) {
    for (unsigned k = 1; k < p; ++k) {
      auto g = g_pair(p, k);
      CHECK(in_gamma0(g, p));
      auto s = isometric_sphere(g);
      CHECK(s.center == Rational(k, p));
      CHECK(s.radius == Rational(1, p));
    }
  }
}

TEST_CASE("cell examples") {
  auto c = cell(5, 2);
  CHECK(c.left == Rational(2, 5));
  CHECK(c.right == Rational(3, 5));
  REQUIRE(c.decomposition.size() == 3);
  CHECK(c.decomposition[0].g.is_identity());
  CHECK(c.decomposition[0].precell == 2);
  CHECK(c.decomposition[1].g == GroupElement(3, -2, 5, -3));
  CHECK(c.decomposition[1].precell == 3);
  CHECK(c.decomposition[2].g == GroupElement(2, -1, 5, -2));
  CHECK(c.decomposition[2].precell == 1);
  auto const& g33 = c.decomposition[1].g;
  CHECK(apply_boundary(g33, rat(4, 5)) == rat(2, 5));
  CHECK(apply_boundary(g33, BoundaryValue::infinity()) == rat(3, 5));

  auto c0 = cell(5, 0);
  CHECK(c0.left == Rational(0));
  CHECK(c0.right == Rational(1, 5));
  REQUIRE(c0.decomposition.size() == 2);
  CHECK(c0.decomposition[1].g == g_pair(5, 4));
  CHECK(c0.decomposition[1].precell == 4);
  CHECK(apply_boundary(g_pair(5, 4), BoundaryValue(1)) == BoundaryValue(0));
  CHECK(apply_boundary(g_pair(5, 4), BoundaryValue::infinity()) == rat(1, 5));

  auto c2 = cell(2, 0);
  REQUIRE(c2.decomposition.size() == 2);
  CHECK(c2.decomposition[1].g == GroupElement(1, -1, 2, -1));
  CHECK(c2.decomposition[1].precell == 1);
  CHECK(c2.right == Rational(1, 2));

  CHECK_THROWS(cell(5, 5));
}

TEST_CASE("side identities hold exactly for small primes") {
  for (unsigned p : kPrimes) {
    for (unsigned k = 0; k < p; ++k) {
      auto c = cell(p, k);
      CHECK(c.decomposition.size() == ((k == 0 || k == p - 1) ? 2u : 3u));
      auto ids = side_identities(p, k);
      CHECK(!ids.empty());
      for (auto const& s : ids) {
        CHECK(in_gamma0(s.g, p));
        CHECK(apply_boundary(s.g, s.from_first) == s.to_first);
        CHECK(apply_boundary(s.g, s.from_second) == s.to_second);
      }
    }
  }
}

TEST_CASE("cell decomposition pieces tile the triangle") {
  Rng rng(41);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (unsigned k = 0; k < p; ++k) {
      auto c = cell(p, k);
      for (int i = 0; i < 300; ++i) {
        auto z       = random_in_triangle(c.left, c.right, rng);
        int  covered = 0;
        for (auto const& piece : c.decomposition) {
          auto w = apply(piece.g.inverse(), z);
          if (in_closed_domain(p, w, 1e-9L)
              && w.re() >= (long double)piece.precell / p - 1e-9L
              && w.re() <= (long double)(piece.precell + 1) / p + 1e-9L) {
            ++covered;
          }
        }
        CHECK(covered >= 1);
      }
    }
  }
}

TEST_CASE("reduce_point examples") {
  auto r = reduce_point(5, HPoint(Rational(1, 2), Rational(1, 10)));
  CHECK(r.g == GroupElement(2, -1, 5, -2));
  REQUIRE(r.point.is_exact());
  CHECK(r.point.re_exact() == Rational(1, 5));
  CHECK(r.point.im_exact() == Rational(1, 5));
  CHECK(abs_cz_plus_d_squared(g_pair(5, 1), r.point) == 1);

  auto s = reduce_point(5, HPoint(Rational(0), Rational(1)));
  CHECK(s.g.is_identity());
  CHECK(s.point.im_exact() == 1);

  auto t = reduce_point(2, HPoint(Rational(53, 10), Rational(2)));
  CHECK(t.g == GroupElement::translation(-5));
  CHECK(t.point.re_exact() == Rational(3, 10));
  CHECK(t.point.im_exact() == Rational(2));
}

TEST_CASE("reduce_point lands in the closure and is a projection") {
  Rng rng(43);
  for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
    for (int i = 0; i < 400; ++i) {
      HPoint z(Rational(rng.between(-3000, 3000), 1000),
               Rational(rng.between(1, 2000), 1000));
      auto r = reduce_point(p, z);
      CHECK(in_gamma0(r.g, p));
      auto const& w = r.point;
      REQUIRE(w.is_exact());
      CHECK(w.re_exact() >= 0);
      CHECK(w.re_exact() <= 1);
      for (unsigned q = 1; q < p; ++q) {
        CHECK(abs_cz_plus_d_squared(g_pair(p, q), w) >= 1);
      }
      auto g = apply(r.g, z);
      CHECK(g.re_exact() == w.re_exact());
      CHECK(g.im_exact() == w.im_exact());
      CHECK(reduce_point(p, w).g.is_identity());
    }
  }
}

TEST_CASE("precells cover the closed domain") {
  Rng rng(47);
  unsigned const p      = 5;
  int            tested = 0;
  while (tested < 10000) {
    HPoint w(rng.unit(), 2 * rng.unit() + 1e-6L);
    if (!in_closed_domain(p, w)) {
      continue;
    }
    ++tested;
    unsigned j = precell_index(p, w);
    REQUIRE(j < p);
    CHECK(w.re() >= (long double)j / p);
    CHECK(w.re() <= (long double)(j + 1) / p);
    int strips = 0;
    for (unsigned i = 0; i < p; ++i) {
      if (w.re() > (long double)i / p && w.re() < (long double)(i + 1) / p) {
        ++strips;
      }
    }
    CHECK(strips == 1);
  }
}

TEST_CASE("locate_cell examples") {
  auto a = locate_cell(5, HPoint(Rational(15, 100), Rational(10)));
  CHECK(a.g.is_identity());
  CHECK(a.k == 0);
  CHECK_FALSE(a.boundary);

  HPoint z(Rational(3, 10), Rational(5, 100));
  auto   b = locate_cell(5, z);
  CHECK_FALSE(b.g.is_identity());
  auto c = cell(5, b.k);
  CHECK(triangle_membership(c.left, c.right, apply(b.g.inverse(), z))
        == TriangleMembership::interior);

  auto e = locate_cell(2, HPoint(Rational(1, 2), Rational(10)));
  CHECK(e.boundary);
}

TEST_CASE("locate_cell agrees with a brute-force translate search") {
  unsigned const p    = 5;
  auto const     elts = oracle::gamma0_elements(p, 40);
  Rng            rng(53);
  int            compared = 0;
  for (int i = 0; i < 1000; ++i) {
    long double x = -0.5L + 2 * rng.unit(), y = 0.05L + 1.95L * rng.unit();
    HPoint      z(x, y);
    auto        loc = locate_cell(p, z);
    CHECK(in_gamma0(loc.g, p));
    if (loc.boundary) {
      continue;
    }
    std::set<std::array<oracle::Frac, 3>> hits;
    for (auto const& e : elts) {
      // g⁻¹ = (d −b; −c a)
      auto w = oracle::act(e[3], -e[1], -e[2], e[0], {x, y});
      if (w.x <= 0 || w.x >= 1) {
        continue;
      }
      auto j = static_cast<unsigned>(w.x * p);
      if (oracle::strictly_in_triangle((long double)j / p,
                                       (long double)(j + 1) / p, w, 1e-12L)) {
        hits.insert(oracle::triangle_vertices(e, j, p));
      }
    }
    if (loc.g.height() > 40) {
      continue;
    }
    ++compared;
    // Translates of different cells may coincide as sets; the tiling
    // claim is that exactly one triangle contains z in its interior.
    REQUIRE(hits.size() == 1);
    auto const& g = loc.g;
    std::array<long long, 4> e{g.a().convert_to<long long>(),
                               g.b().convert_to<long long>(),
                               g.c().convert_to<long long>(),
                               g.d().convert_to<long long>()};
    CHECK(*hits.begin() == oracle::triangle_vertices(e, loc.k, p));
  }
  CHECK(compared > 900);
}

TEST_CASE("modular domain and reduction") {
  auto m = build_modular_domain();
  REQUIRE(m.spheres.size() == 2);
  CHECK(m.spheres[0].radius == 1);
  CHECK(m.vertex.re == Rational(1, 2));
  CHECK(m.vertex.im == normalize_surd(0, 1, 2, 3));
  CHECK(m.cell.left == 0);
  CHECK(m.cell.right == 1);

  Rng rng(59);
  for (int i = 0; i < 500; ++i) {
    HPoint z(Rational(rng.between(-5000, 5000), 1000),
             Rational(rng.between(1, 3000), 1000));
    auto r = reduce_point_modular(z);
    auto w = r.point;
    CHECK(w.re_exact() >= 0);
    CHECK(w.re_exact() <= 1);
    CHECK(abs_cz_plus_d_squared(GroupElement(0, -1, 1, 0), w) >= 1);
    CHECK(abs_cz_plus_d_squared(GroupElement(0, -1, 1, -1), w) >= 1);
    CHECK(reduce_point_modular(w).g.is_identity());
  }
}

TEST_CASE("svg output") {
  auto        dom = build_domain(5);
  std::string svg = domain_svg(dom);
  CHECK(svg == domain_svg(dom));
  std::regex sphere(R"(class="sphere" d="M [0-9.]+ [0-9.]+ A 200\.000000 )");
  auto       n = std::distance(
      std::sregex_iterator(svg.begin(), svg.end(), sphere),
      std::sregex_iterator());
  CHECK(n == 4);
  for (char const* wall : {"M 400.000000", "M 600.000000", "M 800.000000",
                           "M 1000.000000"}) {
    CHECK(svg.find(std::string("class=\"precell\" d=\"") + wall)
          != std::string::npos);
  }
  SvgOptions opts;
  opts.draw_cells = false;
  CHECK(domain_svg(dom, opts).find("class=\"cell\"") == std::string::npos);
  CHECK(modular_svg(build_modular_domain()).find("<svg") == 0);
}
