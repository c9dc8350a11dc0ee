#include "cusp/tessellation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cusp {

  namespace mp = boost::multiprecision;

  namespace {

    void require_prime(unsigned p) {
      if (!is_prime(p)) {
        throw std::invalid_argument("p = " + std::to_string(p)
                                    + " is not prime");
      }
    }

    Integer floor_of(Rational const& r) {
      Integer n = mp::numerator(r), d = mp::denominator(r);
      Integer f = n / d;
      if (n % d != 0 && n < 0) {
        --f;
      }
      return f;
    }

    // Numeric points closer than this to a sphere count as on it.
    constexpr long double kSphereSlack = 1e-15L;

    // Apply the translation that moves Re z into [0, 1).
    void translate_into_strip(HPoint& z, GroupElement& g) {
      Integer n;
      if (z.is_exact()) {
        n = floor_of(z.re_exact());
      } else {
        n = static_cast<long long>(std::floor(z.re()));
      }
      if (n != 0) {
        GroupElement t = GroupElement::translation(-n);
        z              = apply(t, z);
        g              = t * g;
      }
    }

    // The element among `candidates` whose isometric sphere contains z
    // strictly inside and deepest, if any.
    std::optional<GroupElement>
    deepest_sphere(std::vector<GroupElement> const& candidates,
                   HPoint const&                    z) {
      std::optional<GroupElement> best;
      if (z.is_exact()) {
        Rational best_value = 1;
        for (auto const& g : candidates) {
          Rational v = abs_cz_plus_d_squared(g, z);
          if (v < best_value) {
            best_value = v;
            best       = g;
          }
        }
      } else {
        long double best_value = 1 - kSphereSlack;
        for (auto const& g : candidates) {
          long double v = abs_cz_plus_d_squared_numeric(g, z);
          if (v < best_value) {
            best_value = v;
            best       = g;
          }
        }
      }
      return best;
    }

    Reduction reduce_with(std::vector<GroupElement> const& spheres,
                          HPoint const&                    z,
                          std::size_t                      max_steps) {
      GroupElement g;
      HPoint       w     = z;
      std::size_t  steps = 0;
      while (true) {
        if (steps >= max_steps) {
          throw std::runtime_error(
              "reduce_point: iteration cap reached; arithmetic precision "
              "is insufficient for this point");
        }
        translate_into_strip(w, g);
        auto h = deepest_sphere(spheres, w);
        if (!h) {
          break;
        }
        w = apply(*h, w);
        g = *h * g;
        ++steps;
      }
      return {g, w, steps};
    }

    std::vector<GroupElement> sphere_elements(unsigned p) {
      std::vector<GroupElement> out;
      for (unsigned q = 1; q < p; ++q) {
        out.push_back(g_pair(p, q));
      }
      return out;
    }

    std::string fmt6(double v) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6f", v);
      return buf;
    }

    double to_d(Rational const& r) {
      return mp::numerator(r).convert_to<double>()
             / mp::denominator(r).convert_to<double>();
    }

    class SvgWriter {
     public:
      explicit SvgWriter(SvgOptions const& o) : _o(o) {
        double w = (o.x_max - o.x_min) * o.scale, h = o.y_max * o.scale;
        _os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt6(w)
            << "\" height=\"" << fmt6(h) << "\" viewBox=\"0 0 " << fmt6(w)
            << " " << fmt6(h) << "\">\n";
        line(o.x_min, 0, o.x_max, 0, "axis", "#000000", "");
      }

      void line(double x1, double y1, double x2, double y2,
                std::string const& cls, std::string const& colour,
                std::string const& dash) {
        _os << "<path class=\"" << cls << "\" d=\"M " << X(x1) << " " << Y(y1)
            << " L " << X(x2) << " " << Y(y2) << "\" stroke=\"" << colour
            << "\" fill=\"none\"" << dash << "/>\n";
      }

      void vertical(double x, double y_from, std::string const& cls,
                    std::string const& colour) {
        line(x, y_from, x, _o.y_max, cls, colour, "");
      }

      // Upper semicircle over [left, right].
      void semicircle(double left, double right, std::string const& cls,
                      std::string const& colour, std::string const& dash) {
        double r = (right - left) / 2 * _o.scale;
        _os << "<path class=\"" << cls << "\" d=\"M " << X(left) << " "
            << Y(0) << " A " << fmt6(r) << " " << fmt6(r) << " 0 0 1 "
            << X(right) << " " << Y(0) << "\" stroke=\"" << colour
            << "\" fill=\"none\"" << dash << "/>\n";
      }

      std::string finish() {
        _os << "</svg>\n";
        return _os.str();
      }

     private:
      std::string X(double x) const {
        return fmt6((x - _o.x_min) * _o.scale);
      }
      std::string Y(double y) const {
        return fmt6((_o.y_max - y) * _o.scale);
      }

      SvgOptions         _o;
      std::ostringstream _os;
    };

    char const* const kDashed = " stroke-dasharray=\"4 4\"";

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Domain, cells
  ////////////////////////////////////////////////////////////////////////

  GroupElement g_pair(unsigned p, unsigned k) {
    require_prime(p);
    if (k < 1 || k >= p) {
      throw std::invalid_argument("g_pair: k = " + std::to_string(k)
                                  + " out of range 1.." + std::to_string(p - 1));
    }
    unsigned l = p - inverse_mod(k, p);
    Integer  b = -(1 + Integer(k) * l) / p;
    return GroupElement(l, b, p, -Integer(k));
  }

  FordDomain build_domain(unsigned p) {
    require_prime(p);
    FordDomain dom{p, {}, {}, {}};
    for (unsigned q = 1; q < p; ++q) {
      dom.spheres.push_back(isometric_sphere(g_pair(p, q)));
      dom.maxima.emplace_back(Rational(q, p), Rational(1, p));
    }
    dom.vertices.push_back({Rational(0), BoundaryValue(0)});
    for (unsigned k = 1; k + 1 < p; ++k) {
      dom.vertices.push_back(
          {Rational(2 * k + 1, 2 * p), normalize_surd(0, 1, 2 * p, 3)});
    }
    dom.vertices.push_back({Rational(1), BoundaryValue(0)});
    return dom;
  }

  Cell cell(unsigned p, unsigned k) {
    require_prime(p);
    if (k >= p) {
      throw std::invalid_argument("cell: k = " + std::to_string(k)
                                  + " out of range 0.." + std::to_string(p - 1));
    }
    Cell c{k, Rational(k, p), Rational(k + 1, p), {}};
    c.decomposition.push_back({GroupElement::identity(), k});
    if (k == 0) {
      c.decomposition.push_back({g_pair(p, p - 1), p - 1});
    } else if (k == p - 1) {
      c.decomposition.push_back({g_pair(p, 1), 0});
    } else {
      unsigned a  = p - inverse_mod(k + 1, p);
      unsigned b1 = p - inverse_mod(k, p);
      if (a < 1 || a > p - 2 || b1 < 2 || b1 > p - 1) {
        throw std::logic_error("cell: congruence data out of range");
      }
      c.decomposition.push_back({g_pair(p, a), a});
      c.decomposition.push_back({g_pair(p, b1), b1 - 1});
    }
    return c;
  }

  std::vector<SideIdentity> side_identities(unsigned p, unsigned k) {
    Cell                      c = cell(p, k);
    std::vector<SideIdentity> out;
    BoundaryValue const       inf = BoundaryValue::infinity();
    BoundaryValue const       lo(c.left), hi(c.right);
    if (k == 0) {
      out.push_back({c.decomposition[1].g, BoundaryValue(1), inf, lo, hi});
    } else if (k == p - 1) {
      out.push_back({c.decomposition[1].g, inf, BoundaryValue(0), lo, hi});
    } else {
      unsigned a = c.decomposition[1].precell;
      unsigned b = c.decomposition[2].precell;
      out.push_back(
          {c.decomposition[1].g, BoundaryValue(Rational(a + 1, p)), inf, lo, hi});
      out.push_back(
          {c.decomposition[2].g, inf, BoundaryValue(Rational(b, p)), lo, hi});
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reduction and location
  ////////////////////////////////////////////////////////////////////////

  Reduction reduce_point(unsigned p, HPoint const& z, std::size_t max_steps) {
    require_prime(p);
    return reduce_with(sphere_elements(p), z, max_steps);
  }

  bool in_closed_domain(unsigned p, HPoint const& z, long double tol) {
    auto spheres = sphere_elements(p);
    if (z.is_exact()) {
      if (z.re_exact() < 0 || z.re_exact() > 1) {
        return false;
      }
      for (auto const& g : spheres) {
        if (abs_cz_plus_d_squared(g, z) < 1) {
          return false;
        }
      }
      return true;
    }
    if (z.re() < -tol || z.re() > 1 + tol) {
      return false;
    }
    for (auto const& g : spheres) {
      if (abs_cz_plus_d_squared_numeric(g, z) < 1 - tol) {
        return false;
      }
    }
    return true;
  }

  unsigned precell_index(unsigned p, HPoint const& w) {
    long long k;
    if (w.is_exact()) {
      k = floor_of(Rational(w.re_exact() * p)).convert_to<long long>();
    } else {
      k = static_cast<long long>(std::floor(w.re() * p));
    }
    return static_cast<unsigned>(std::clamp<long long>(k, 0, p - 1));
  }

  CellLocation locate_cell(unsigned p, HPoint const& z, long double tol) {
    Reduction red = reduce_point(p, z);
    unsigned  k   = precell_index(p, red.point);
    bool      boundary;
    if (red.point.is_exact()) {
      boundary = mp::denominator(Rational(red.point.re_exact() * p)) == 1;
    } else {
      long double s = red.point.re() * p;
      boundary      = std::fabs(s - std::round(s)) <= tol * p;
    }
    return {red.g.inverse(), k, boundary};
  }

  TriangleMembership triangle_membership(Rational const& left,
                                         Rational const& right,
                                         HPoint const& z, long double tol) {
    if (z.is_exact()) {
      Rational const& x = z.re_exact();
      Rational const& y = z.im_exact();
      if (x < left || x > right) {
        return TriangleMembership::outside;
      }
      Rational m = (left + right) / 2, r = (right - left) / 2;
      Rational d = (x - m) * (x - m) + y * y - r * r;
      if (d < 0) {
        return TriangleMembership::outside;
      }
      if (d == 0 || x == left || x == right) {
        return TriangleMembership::boundary;
      }
      return TriangleMembership::interior;
    }
    long double l = to_d(left), rr = to_d(right);
    long double x = z.re(), y = z.im();
    long double m = (l + rr) / 2, r = (rr - l) / 2;
    long double d = (x - m) * (x - m) + y * y - r * r;
    if (x < l - tol || x > rr + tol || d < -tol) {
      return TriangleMembership::outside;
    }
    if (x <= l + tol || x >= rr - tol || d <= tol) {
      return TriangleMembership::boundary;
    }
    return TriangleMembership::interior;
  }

  ////////////////////////////////////////////////////////////////////////
  // Modular group
  ////////////////////////////////////////////////////////////////////////

  ModularDomain build_modular_domain() {
    ModularDomain dom;
    dom.spheres.push_back(isometric_sphere(GroupElement(0, -1, 1, 0)));
    dom.spheres.push_back(isometric_sphere(GroupElement(0, -1, 1, -1)));
    dom.vertex = {Rational(1, 2), normalize_surd(0, 1, 2, 3)};
    dom.cell   = Cell{0, Rational(0), Rational(1), {{GroupElement(), 0}}};
    return dom;
  }

  Reduction reduce_point_modular(HPoint const& z, std::size_t max_steps) {
    return reduce_with({GroupElement(0, -1, 1, 0), GroupElement(0, -1, 1, -1)},
                       z, max_steps);
  }

  ////////////////////////////////////////////////////////////////////////
  // SVG
  ////////////////////////////////////////////////////////////////////////

  std::string domain_svg(FordDomain const& domain, SvgOptions const& opts) {
    SvgWriter svg(opts);
    unsigned  p = domain.p;
    for (auto const& s : domain.spheres) {
      svg.semicircle(to_d(s.center - s.radius), to_d(s.center + s.radius),
                     "sphere", "#1f4e9c", "");
    }
    svg.vertical(0, 0, "domain", "#000000");
    svg.vertical(1, 0, "domain", "#000000");
    for (auto const& m : domain.maxima) {
      svg.vertical(static_cast<double>(m.re()), static_cast<double>(m.im()),
                   "precell", "#7a7a7a");
    }
    if (opts.draw_cells) {
      for (unsigned k = 0; k < p; ++k) {
        svg.semicircle(double(k) / p, double(k + 1) / p, "cell", "#b03a2e",
                       kDashed);
      }
    }
    return svg.finish();
  }

  std::string modular_svg(ModularDomain const& domain,
                          SvgOptions const&    opts) {
    SvgWriter svg(opts);
    for (auto const& s : domain.spheres) {
      svg.semicircle(to_d(s.center - s.radius), to_d(s.center + s.radius),
                     "sphere", "#1f4e9c", "");
    }
    svg.vertical(0, 0, "domain", "#000000");
    svg.vertical(1, 0, "domain", "#000000");
    if (opts.draw_cells) {
      svg.semicircle(0, 1, "cell", "#b03a2e", kDashed);
    }
    return svg.finish();
  }

}  // namespace cusp
