#include "cusp/moebius.hpp"

#include <cctype>
#include <cfloat>
#include <cmath>
#include <tuple>

namespace cusp {

  namespace mp = boost::multiprecision;

  namespace {

    // u·x + v·y = gcd(x, y) ≥ 0.
    std::tuple<Integer, Integer, Integer> extended_gcd(Integer x, Integer y) {
      Integer old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        Integer q   = old_r / r;
        Integer tmp = old_r - q * r;
        old_r       = r;
        r           = tmp;
        tmp         = old_s - q * s;
        old_s       = s;
        s           = tmp;
        tmp         = old_t - q * t;
        old_t       = t;
        t           = tmp;
      }
      if (old_r < 0) {
        return {-old_r, -old_s, -old_t};
      }
      return {old_r, old_s, old_t};
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // GroupElement
  ////////////////////////////////////////////////////////////////////////

  GroupElement::GroupElement(Integer a, Integer b, Integer c, Integer d)
      : _a(std::move(a)), _b(std::move(b)), _c(std::move(c)), _d(std::move(d)) {
    if (_a * _d - _b * _c != 1) {
      throw std::invalid_argument("GroupElement: determinant must be 1, got "
                                  + Integer(_a * _d - _b * _c).str());
    }
    canonicalize();
  }

  void GroupElement::canonicalize() {
    if (_c < 0 || (_c == 0 && _d < 0)) {
      _a = -_a;
      _b = -_b;
      _c = -_c;
      _d = -_d;
    }
  }

  GroupElement GroupElement::inverse() const {
    return GroupElement(_d, -_b, -_c, _a);
  }

  Integer GroupElement::height() const {
    return std::max({mp::abs(_a), mp::abs(_b), mp::abs(_c), mp::abs(_d)});
  }

  GroupElement operator*(GroupElement const& g, GroupElement const& h) {
    return GroupElement(g._a * h._a + g._b * h._c,
                        g._a * h._b + g._b * h._d,
                        g._c * h._a + g._d * h._c,
                        g._c * h._b + g._d * h._d);
  }

  bool operator<(GroupElement const& g, GroupElement const& h) {
    return std::tie(g._a, g._b, g._c, g._d) < std::tie(h._a, h._b, h._c, h._d);
  }

  ////////////////////////////////////////////////////////////////////////
  // Boundary action
  ////////////////////////////////////////////////////////////////////////

  BoundaryValue apply_boundary(GroupElement const& g,
                               QuadraticNumber const& x) {
    QuadraticNumber den = QuadraticNumber(Rational(g.c())) * x
                          + QuadraticNumber(Rational(g.d()));
    if (den.sign() == 0) {
      return BoundaryValue::infinity();
    }
    QuadraticNumber num = QuadraticNumber(Rational(g.a())) * x
                          + QuadraticNumber(Rational(g.b()));
    return BoundaryValue::from_quadratic(num / den);
  }

  BoundaryValue apply_boundary(GroupElement const& g, BoundaryValue const& x) {
    switch (x.kind()) {
      case BoundaryValue::Kind::infinity:
        if (g.c() == 0) {
          return BoundaryValue::infinity();
        }
        return BoundaryValue(Rational(g.a(), g.c()));
      case BoundaryValue::Kind::rational: {
        Rational const& r   = x.as_rational();
        Rational        den = Rational(g.c()) * r + Rational(g.d());
        if (den == 0) {
          return BoundaryValue::infinity();
        }
        return BoundaryValue((Rational(g.a()) * r + Rational(g.b())) / den);
      }
      case BoundaryValue::Kind::surd:
        return apply_boundary(g, x.to_quadratic());
      case BoundaryValue::Kind::approx: {
        long double v   = x.as_approx().value;
        long double a   = g.a().convert_to<long double>();
        long double b   = g.b().convert_to<long double>();
        long double c   = g.c().convert_to<long double>();
        long double d   = g.d().convert_to<long double>();
        long double den = c * v + d;
        if (den == 0) {
          return BoundaryValue::infinity();
        }
        long double value = (a * v + b) / den;
        // |g'(v)| = den⁻²; first-order propagation plus rounding.
        long double err = x.as_approx().error / (den * den)
                          + 8 * LDBL_EPSILON * std::fabs(value);
        return BoundaryValue::approx(value, err);
      }
    }
    return x;  // unreachable
  }

  QuadraticNumber derivative(GroupElement const& g, QuadraticNumber const& x) {
    QuadraticNumber den = QuadraticNumber(Rational(g.c())) * x
                          + QuadraticNumber(Rational(g.d()));
    return QuadraticNumber(1) / (den * den);
  }

  ////////////////////////////////////////////////////////////////////////
  // HPoint
  ////////////////////////////////////////////////////////////////////////

  HPoint::HPoint(Rational re, Rational im) : _v(Exact{std::move(re), im}) {
    if (im <= 0) {
      throw std::invalid_argument("HPoint: imaginary part must be > 0");
    }
  }

  HPoint::HPoint(long double re, long double im) : _v(Numeric{re, im}) {
    if (!(im > 0) || !std::isfinite(re) || !std::isfinite(im)) {
      throw std::invalid_argument("HPoint: imaginary part must be > 0");
    }
  }

  long double HPoint::re() const {
    if (auto e = std::get_if<Exact>(&_v)) {
      return mp::numerator(e->re).convert_to<long double>()
             / mp::denominator(e->re).convert_to<long double>();
    }
    return std::get<Numeric>(_v).re;
  }

  long double HPoint::im() const {
    if (auto e = std::get_if<Exact>(&_v)) {
      return mp::numerator(e->im).convert_to<long double>()
             / mp::denominator(e->im).convert_to<long double>();
    }
    return std::get<Numeric>(_v).im;
  }

  HPoint apply(GroupElement const& g, HPoint const& z) {
    if (z.is_exact()) {
      Rational const& x = z.re_exact();
      Rational const& y = z.im_exact();
      Rational        a(g.a()), b(g.b()), c(g.c()), d(g.d());
      Rational        cxd = c * x + d;
      Rational        den = cxd * cxd + c * c * y * y;
      return HPoint(((a * x + b) * cxd + a * c * y * y) / den, y / den);
    }
    long double x = z.re(), y = z.im();
    long double a = g.a().convert_to<long double>();
    long double b = g.b().convert_to<long double>();
    long double c = g.c().convert_to<long double>();
    long double d = g.d().convert_to<long double>();
    long double cxd = c * x + d;
    long double den = cxd * cxd + c * c * y * y;
    return HPoint(((a * x + b) * cxd + a * c * y * y) / den, y / den);
  }

  Rational abs_cz_plus_d_squared(GroupElement const& g, HPoint const& z) {
    if (!z.is_exact()) {
      throw std::domain_error("abs_cz_plus_d_squared: point is not exact");
    }
    Rational c(g.c()), d(g.d());
    Rational cxd = c * z.re_exact() + d;
    return cxd * cxd + c * c * z.im_exact() * z.im_exact();
  }

  long double abs_cz_plus_d_squared_numeric(GroupElement const& g,
                                            HPoint const&       z) {
    long double c   = g.c().convert_to<long double>();
    long double d   = g.d().convert_to<long double>();
    long double cxd = c * z.re() + d;
    return cxd * cxd + c * c * z.im() * z.im();
  }

  IsometricSphere isometric_sphere(GroupElement const& g) {
    if (g.c() == 0) {
      throw std::domain_error(
          "no isometric sphere for parabolic-at-∞ element " + to_string(g));
    }
    return {Rational(-g.d(), g.c()), Rational(Integer(1), mp::abs(g.c())), g};
  }

  bool in_gamma0(GroupElement const& g, unsigned p) {
    return g.c() % p == 0;
  }

  GroupElement cusp_witness(unsigned p, Rational const& r) {
    Integer n = mp::numerator(r), s = mp::denominator(r);
    if (s % p == 0) {
      // (c, d) = (s, −n) sends n/s to ∞.
      auto [g, u, v] = extended_gcd(n, s);
      return GroupElement(-u, -v, s, -n);
    }
    // (a, b) = (s, −n) sends n/s to 0; solve s·d + n·c = 1 with p | c.
    auto [g, u, v] = extended_gcd(s, n * p);
    return GroupElement(s, -n, v * p, u);
  }

  ////////////////////////////////////////////////////////////////////////
  // Grammar
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(GroupElement const& g) {
    return "[[" + g.a().str() + "," + g.b().str() + "],[" + g.c().str() + ","
           + g.d().str() + "]]";
  }

  GroupElement parse_group_element(std::string_view text) {
    std::string s;
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) {
        s.push_back(ch);
      }
    }
    auto fail = [&text](std::string const& what) {
      throw std::invalid_argument("cannot parse matrix '" + std::string(text)
                                  + "': " + what);
    };
    std::size_t i      = 0;
    auto        expect = [&](char ch) {
      if (i >= s.size() || s[i] != ch) {
        fail(std::string("expected '") + ch + "'");
      }
      ++i;
    };
    auto integer = [&]() {
      std::size_t start = i;
      if (i < s.size() && s[i] == '-') {
        ++i;
      }
      std::size_t digits = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      if (digits == i) {
        fail("expected integer");
      }
      return Integer(s.substr(start, i - start));
    };
    expect('[');
    expect('[');
    Integer a = integer();
    expect(',');
    Integer b = integer();
    expect(']');
    expect(',');
    expect('[');
    Integer c = integer();
    expect(',');
    Integer d = integer();
    expect(']');
    expect(']');
    if (i != s.size()) {
      fail("trailing characters");
    }
    try {
      return GroupElement(a, b, c, d);
    } catch (std::invalid_argument const& e) {
      fail(e.what());
    }
    return {};  // unreachable
  }

  unsigned inverse_mod(long long k, unsigned p) {
    long long m = ((k % static_cast<long long>(p)) + p) % p;
    if (m == 0) {
      throw std::invalid_argument("inverse_mod: k divisible by p");
    }
    auto [g, u, v] = extended_gcd(Integer(m), Integer(p));
    if (g != 1) {
      throw std::invalid_argument("inverse_mod: k not invertible mod p");
    }
    Integer r = ((u % p) + p) % p;
    return r.convert_to<unsigned>();
  }

  bool is_prime(unsigned long long n) {
    if (n < 2) {
      return false;
    }
    for (unsigned long long k = 2; k <= n / k; ++k) {
      if (n % k == 0) {
        return false;
      }
    }
    return true;
  }

}  // namespace cusp
