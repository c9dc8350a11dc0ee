#include "cusp/exact.hpp"

#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>

namespace cusp {

  namespace mp = boost::multiprecision;

  namespace {

    int sign_of(Rational const& r) {
      return r.sign();
    }

    int sign_of(Integer const& n) {
      return n.sign();
    }

    long double to_ld(Rational const& r) {
      return mp::numerator(r).convert_to<long double>()
             / mp::denominator(r).convert_to<long double>();
    }

    std::strong_ordering from_sign(int s) {
      if (s < 0) {
        return std::strong_ordering::less;
      } else if (s > 0) {
        return std::strong_ordering::greater;
      }
      return std::strong_ordering::equal;
    }

    Ordering to_ordering(std::strong_ordering o) {
      if (o < 0) {
        return Ordering::less;
      } else if (o > 0) {
        return Ordering::greater;
      }
      return Ordering::equal;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Squarefree decomposition
  ////////////////////////////////////////////////////////////////////////

  std::pair<Integer, Integer> squarefree_decomposition(Integer n) {
    if (n <= 0) {
      throw std::invalid_argument("squarefree_decomposition: n must be > 0");
    }
    if (n <= std::numeric_limits<std::uint64_t>::max()) {
      auto          m = n.convert_to<std::uint64_t>();
      std::uint64_t s = 1, r = 1;
      for (std::uint64_t k = 2; k <= m / k; ++k) {
        unsigned e = 0;
        while (m % k == 0) {
          m /= k;
          ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) {
          s *= k;
        }
        if (e % 2 == 1) {
          r *= k;
        }
      }
      return {Integer(s), Integer(r) * m};
    }
    Integer s = 1, r = 1, m = n;
    for (Integer k = 2; k * k <= m; ++k) {
      unsigned e = 0;
      while (m % k == 0) {
        m /= k;
        ++e;
      }
      for (unsigned i = 0; i < e / 2; ++i) {
        s *= k;
      }
      if (e % 2 == 1) {
        r *= k;
      }
    }
    return {s, r * m};
  }

  ////////////////////////////////////////////////////////////////////////
  // QuadraticNumber
  ////////////////////////////////////////////////////////////////////////

  QuadraticNumber::QuadraticNumber(Rational p, Rational q, Integer d)
      : _p(std::move(p)), _q(std::move(q)), _d(std::move(d)) {
    if (_d <= 0) {
      throw std::invalid_argument("QuadraticNumber: radicand must be > 0");
    }
    if (_d == 1) {
      _p += _q;
      _q = 0;
    }
    drop_field_if_rational();
  }

  void QuadraticNumber::drop_field_if_rational() {
    if (_q == 0) {
      _d = 1;
    }
  }

  void QuadraticNumber::unify_field(QuadraticNumber const& y) {
    if (y._q == 0) {
      return;
    }
    if (_q == 0) {
      _d = y._d;
    } else if (_d != y._d) {
      throw FieldMismatch("arithmetic across different quadratic fields");
    }
  }

  int QuadraticNumber::sign() const {
    int sp = sign_of(_p), sq = sign_of(_q);
    if (sq == 0) {
      return sp;
    } else if (sp == 0 || sp == sq) {
      return sq;
    }
    // Opposite signs: the larger of p² and q²d wins.
    Rational lhs = _p * _p, rhs = _q * _q * Rational(_d);
    return lhs > rhs ? sp : sq;
  }

  long double QuadraticNumber::to_long_double() const {
    if (_q == 0) {
      return to_ld(_p);
    }
    return to_ld(_p) + to_ld(_q) * std::sqrt(_d.convert_to<long double>());
  }

  Integer QuadraticNumber::floor() const {
    if (_q == 0) {
      Integer n = mp::numerator(_p), d = mp::denominator(_p);
      Integer f = n / d;
      if (n % d != 0 && n < 0) {
        --f;
      }
      return f;
    }
    long double approx = std::floor(to_long_double());
    Integer     f;
    if (std::isfinite(approx)
        && std::fabs(approx) < 9.0e18L) {  // fits in long long
      f = static_cast<long long>(approx);
    } else {
      // Fall back on the exact floors of the two parts.
      f = QuadraticNumber(_p).floor();
    }
    while (*this < QuadraticNumber(Rational(f))) {
      --f;
    }
    while (!(*this < QuadraticNumber(Rational(f + 1)))) {
      ++f;
    }
    return f;
  }

  QuadraticNumber QuadraticNumber::conjugate() const {
    QuadraticNumber r = *this;
    r._q              = -r._q;
    return r;
  }

  Rational QuadraticNumber::norm() const {
    return _p * _p - _q * _q * Rational(_d);
  }

  QuadraticNumber QuadraticNumber::operator-() const {
    QuadraticNumber r = *this;
    r._p              = -r._p;
    r._q              = -r._q;
    return r;
  }

  QuadraticNumber& QuadraticNumber::operator+=(QuadraticNumber const& y) {
    unify_field(y);
    _p += y._p;
    _q += y._q;
    drop_field_if_rational();
    return *this;
  }

  QuadraticNumber& QuadraticNumber::operator-=(QuadraticNumber const& y) {
    unify_field(y);
    _p -= y._p;
    _q -= y._q;
    drop_field_if_rational();
    return *this;
  }

  QuadraticNumber& QuadraticNumber::operator*=(QuadraticNumber const& y) {
    unify_field(y);
    Rational p = _p * y._p + _q * y._q * Rational(_d);
    Rational q = _p * y._q + _q * y._p;
    _p         = std::move(p);
    _q         = std::move(q);
    drop_field_if_rational();
    return *this;
  }

  QuadraticNumber& QuadraticNumber::operator/=(QuadraticNumber const& y) {
    Rational n = y.norm();
    if (n == 0) {
      throw std::domain_error("QuadraticNumber: division by zero");
    }
    *this *= y.conjugate();
    _p /= n;
    _q /= n;
    drop_field_if_rational();
    return *this;
  }

  std::strong_ordering operator<=>(QuadraticNumber const& x,
                                   QuadraticNumber const& y) {
    if (x._q == 0 || y._q == 0 || x._d == y._d) {
      return from_sign((x - y).sign());
    }
    // α = x − p_y lives in Q(√d_x), β = q_y√d_y; compare α with β.
    QuadraticNumber alpha = x - QuadraticNumber(y._p);
    int             sa = alpha.sign(), sb = sign_of(y._q);
    if (sa != sb) {
      return from_sign(sa - sb);
    }
    QuadraticNumber diff
        = alpha * alpha - QuadraticNumber(y._q * y._q * Rational(y._d));
    int s = diff.sign();
    return from_sign(sa > 0 ? s : -s);
  }

  ////////////////////////////////////////////////////////////////////////
  // BoundaryValue
  ////////////////////////////////////////////////////////////////////////

  BoundaryValue BoundaryValue::rational(Integer num, Integer den) {
    if (den == 0) {
      throw std::invalid_argument("rational: zero denominator");
    }
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return BoundaryValue(Rational(num, den));
  }

  BoundaryValue BoundaryValue::approx(long double value, long double error) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument("approx: value must be finite");
    }
    if (error < 0) {
      error = std::fabs(value) * LDBL_EPSILON;
    }
    return BoundaryValue(Approx{value, error});
  }

  BoundaryValue BoundaryValue::from_quadratic(QuadraticNumber const& x) {
    if (x.is_rational()) {
      return BoundaryValue(x.rational_part());
    }
    Rational const& p  = x.rational_part();
    Rational const& q  = x.surd_part();
    Integer         dp = mp::denominator(p), dq = mp::denominator(q);
    Integer         c  = mp::lcm(dp, dq);
    Integer         a  = mp::numerator(p) * (c / dp);
    Integer         b  = mp::numerator(q) * (c / dq);
    return normalize_surd(a, b, c, x.radicand());
  }

  QuadraticNumber BoundaryValue::to_quadratic() const {
    switch (kind()) {
      case Kind::rational:
        return QuadraticNumber(as_rational());
      case Kind::surd: {
        Surd const& s = as_surd();
        return QuadraticNumber(Rational(s.a, s.c), Rational(s.b, s.c), s.d);
      }
      default:
        throw std::domain_error("to_quadratic: value is not finite exact");
    }
  }

  long double BoundaryValue::to_long_double() const {
    switch (kind()) {
      case Kind::rational:
        return to_ld(as_rational());
      case Kind::surd:
        return to_quadratic().to_long_double();
      case Kind::infinity:
        return std::numeric_limits<long double>::infinity();
      case Kind::approx:
        return as_approx().value;
    }
    return 0;  // unreachable
  }

  long double BoundaryValue::error_bound() const {
    return is_approx() ? as_approx().error : 0.0L;
  }

  bool operator==(BoundaryValue const& x, BoundaryValue const& y) {
    if (x.kind() != y.kind()) {
      return false;
    }
    switch (x.kind()) {
      case BoundaryValue::Kind::rational:
        return x.as_rational() == y.as_rational();
      case BoundaryValue::Kind::surd:
        return x.as_surd() == y.as_surd();
      case BoundaryValue::Kind::infinity:
        return true;
      case BoundaryValue::Kind::approx:
        return x.as_approx().value == y.as_approx().value;
    }
    return false;
  }

  BoundaryValue normalize_surd(Integer a, Integer b, Integer c, Integer d) {
    if (c == 0) {
      throw std::invalid_argument("normalize_surd: zero denominator");
    }
    if (d <= 0) {
      throw std::invalid_argument(
          "normalize_surd: only real quadratic fields (d > 0) are supported");
    }
    if (c < 0) {
      // Boost 1.74 rejects negative denominators in Rational(num, den).
      a = -a;
      b = -b;
      c = -c;
    }
    auto [s, r] = squarefree_decomposition(d);
    b *= s;
    if (b == 0) {
      return BoundaryValue(Rational(a, c));
    }
    if (r == 1) {
      return BoundaryValue(Rational(a + b, c));
    }
    Integer g = mp::gcd(mp::gcd(mp::abs(a), mp::abs(b)), c);
    if (g > 1) {
      a /= g;
      b /= g;
      c /= g;
    }
    return BoundaryValue(Surd{std::move(a), std::move(b), std::move(c), r});
  }

  Comparison compare(BoundaryValue const& x, BoundaryValue const& y) {
    if (x.is_approx() || y.is_approx()) {
      long double u = x.to_long_double(), v = y.to_long_double();
      if (u < v) {
        return {Ordering::less, true};
      } else if (u > v) {
        return {Ordering::greater, true};
      }
      return {Ordering::equal, true};
    }
    if (x.is_infinity() || y.is_infinity()) {
      if (x.is_infinity() && y.is_infinity()) {
        return {Ordering::equal, false};
      }
      return {x.is_infinity() ? Ordering::greater : Ordering::less, false};
    }
    if (x.is_rational() && y.is_rational()) {
      return {to_ordering(x.as_rational() <=> y.as_rational()), false};
    }
    return {to_ordering(x.to_quadratic() <=> y.to_quadratic()), false};
  }

  bool exact_less(BoundaryValue const& x, BoundaryValue const& y) {
    Comparison c = compare(x, y);
    if (c.inexact) {
      throw std::domain_error("exact_less: inexact operand");
    }
    return c.order == Ordering::less;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text grammar
  ////////////////////////////////////////////////////////////////////////

  std::string to_string(Rational const& r) {
    return "rat:" + mp::numerator(r).str() + "/" + mp::denominator(r).str();
  }

  std::string to_string(BoundaryValue const& x) {
    switch (x.kind()) {
      case BoundaryValue::Kind::rational:
        return to_string(x.as_rational());
      case BoundaryValue::Kind::surd: {
        Surd const& s = x.as_surd();
        return "surd:(" + s.a.str() + "+" + s.b.str() + "*sqrt(" + s.d.str()
               + "))/" + s.c.str();
      }
      case BoundaryValue::Kind::infinity:
        return "inf";
      case BoundaryValue::Kind::approx: {
        std::ostringstream os;
        os << "approx:" << std::setprecision(21) << x.as_approx().value;
        return os.str();
      }
    }
    return {};
  }

  namespace {

    class Cursor {
     public:
      explicit Cursor(std::string_view s) : _s(s) {}

      bool done() const {
        return _i == _s.size();
      }

      bool accept(std::string_view tok) {
        if (_s.substr(_i, tok.size()) == tok) {
          _i += tok.size();
          return true;
        }
        return false;
      }

      void expect(std::string_view tok) {
        if (!accept(tok)) {
          fail("expected '" + std::string(tok) + "'");
        }
      }

      Integer integer() {
        std::size_t start = _i;
        if (_i < _s.size() && (_s[_i] == '-' || _s[_i] == '+')) {
          ++_i;
        }
        std::size_t digits = _i;
        while (_i < _s.size() && _s[_i] >= '0' && _s[_i] <= '9') {
          ++_i;
        }
        if (digits == _i) {
          fail("expected integer");
        }
        std::string tok(_s.substr(start, _i - start));
        if (tok[0] == '+') {
          tok.erase(0, 1);
        }
        return Integer(tok);
      }

      [[noreturn]] void fail(std::string const& what) const {
        throw std::invalid_argument("cannot parse boundary value '"
                                    + std::string(_s) + "': " + what
                                    + " at offset " + std::to_string(_i));
      }

     private:
      std::string_view _s;
      std::size_t      _i = 0;
    };

  }  // namespace

  BoundaryValue parse_boundary_value(std::string_view text,
                                     long double approx_relative_error) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text[0]))) {
      text.remove_prefix(1);
    }
    while (!text.empty()
           && std::isspace(static_cast<unsigned char>(text.back()))) {
      text.remove_suffix(1);
    }
    Cursor cur(text);
    if (cur.accept("inf")) {
      if (!cur.done()) {
        cur.fail("trailing characters");
      }
      return BoundaryValue::infinity();
    }
    if (cur.accept("rat:")) {
      Integer num = cur.integer();
      Integer den = 1;
      if (cur.accept("/")) {
        den = cur.integer();
      }
      if (!cur.done()) {
        cur.fail("trailing characters");
      }
      if (den == 0) {
        cur.fail("zero denominator");
      }
      return BoundaryValue::rational(num, den);
    }
    if (cur.accept("surd:(")) {
      Integer a = cur.integer();
      Integer b;
      if (cur.accept("+")) {
        b = cur.integer();
      } else if (cur.accept("-")) {
        b = -cur.integer();
      } else {
        cur.fail("expected '+' or '-'");
      }
      cur.expect("*sqrt(");
      Integer d = cur.integer();
      cur.expect("))/");
      Integer c = cur.integer();
      if (!cur.done()) {
        cur.fail("trailing characters");
      }
      try {
        return normalize_surd(a, b, c, d);
      } catch (std::invalid_argument const& e) {
        cur.fail(e.what());
      }
    }
    if (cur.accept("approx:")) {
      std::string body(text.substr(7));
      if (body.empty()) {
        cur.fail("empty decimal");
      }
      char*       end   = nullptr;
      long double value = std::strtold(body.c_str(), &end);
      if (end != body.c_str() + body.size() || !std::isfinite(value)) {
        cur.fail("malformed decimal");
      }
      return BoundaryValue::approx(
          value,
          approx_relative_error < 0 ? -1 : std::fabs(value)
                                               * approx_relative_error);
    }
    cur.fail("unknown prefix");
  }

}  // namespace cusp
