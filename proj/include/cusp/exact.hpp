// Exact arithmetic on points of the boundary R ∪ {∞} of the upper half
// plane: rationals, real quadratic surds (a + b√d)/c, the single point ∞,
// and a flagged floating-point fallback for user-supplied decimals.

#ifndef CUSP_EXACT_HPP_
#define CUSP_EXACT_HPP_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace cusp {

  using Integer  = boost::multiprecision::cpp_int;
  using Rational = boost::multiprecision::cpp_rational;

  // Thrown when two quadratic numbers from different fields Q(√d₁), Q(√d₂)
  // meet in an arithmetic operation.
  class FieldMismatch : public std::domain_error {
   public:
    using std::domain_error::domain_error;
  };

  // Canonical surd (a + b√d)/c: d squarefree > 1, c > 0, gcd(a, b, c) = 1,
  // b ≠ 0.
  struct Surd {
    Integer a, b, c, d;
    friend bool operator==(Surd const&, Surd const&) = default;
  };

  struct Infinity {
    friend bool operator==(Infinity, Infinity) {
      return true;
    }
  };

  // A binary floating-point real together with an absolute error bound.
  struct Approx {
    long double value;
    long double error;
  };

  ////////////////////////////////////////////////////////////////////////
  // QuadraticNumber
  ////////////////////////////////////////////////////////////////////////

  // p + q√d with p, q rational and d squarefree. A rational number has
  // q = 0 and d = 1. Field operations are closed inside Q(√d); mixing two
  // different irrational fields throws FieldMismatch.
  class QuadraticNumber {
   public:
    QuadraticNumber() : _p(0), _q(0), _d(1) {}
    QuadraticNumber(Rational p) : _p(std::move(p)), _q(0), _d(1) {}  // NOLINT
    QuadraticNumber(long long n) : _p(n), _q(0), _d(1) {}            // NOLINT
    // d must be squarefree and positive.
    QuadraticNumber(Rational p, Rational q, Integer d);

    Rational const& rational_part() const noexcept {
      return _p;
    }
    Rational const& surd_part() const noexcept {
      return _q;
    }
    Integer const& radicand() const noexcept {
      return _d;
    }
    bool is_rational() const noexcept {
      return _q == 0;
    }

    int         sign() const;
    long double to_long_double() const;
    Integer     floor() const;
    QuadraticNumber conjugate() const;
    // (p + q√d)(p − q√d) = p² − q²d.
    Rational norm() const;

    QuadraticNumber operator-() const;
    QuadraticNumber& operator+=(QuadraticNumber const& y);
    QuadraticNumber& operator-=(QuadraticNumber const& y);
    QuadraticNumber& operator*=(QuadraticNumber const& y);
    QuadraticNumber& operator/=(QuadraticNumber const& y);

    friend QuadraticNumber operator+(QuadraticNumber x,
                                     QuadraticNumber const& y) {
      return x += y;
    }
    friend QuadraticNumber operator-(QuadraticNumber x,
                                     QuadraticNumber const& y) {
      return x -= y;
    }
    friend QuadraticNumber operator*(QuadraticNumber x,
                                     QuadraticNumber const& y) {
      return x *= y;
    }
    friend QuadraticNumber operator/(QuadraticNumber x,
                                     QuadraticNumber const& y) {
      return x /= y;
    }
    friend bool operator==(QuadraticNumber const& x,
                           QuadraticNumber const& y) {
      return x._p == y._p && x._q == y._q && (x._q == 0 || x._d == y._d);
    }
    // Exact. Works across different fields (no FieldMismatch).
    friend std::strong_ordering operator<=>(QuadraticNumber const& x,
                                            QuadraticNumber const& y);

   private:
    void unify_field(QuadraticNumber const& y);
    void drop_field_if_rational();

    Rational _p, _q;
    Integer  _d;
  };

  ////////////////////////////////////////////////////////////////////////
  // BoundaryValue
  ////////////////////////////////////////////////////////////////////////

  enum class Ordering { less, equal, greater };

  // Result of compare(): `inexact` is set whenever an Approx operand took
  // part or the floating comparison fell inside the error bounds.
  struct Comparison {
    Ordering order;
    bool     inexact;
  };

  class BoundaryValue {
   public:
    enum class Kind { rational, surd, infinity, approx };

    BoundaryValue() : _v(Rational(0)) {}
    BoundaryValue(Rational r) : _v(std::move(r)) {}  // NOLINT
    BoundaryValue(long long n) : _v(Rational(n)) {}  // NOLINT

    static BoundaryValue rational(Integer num, Integer den);
    static BoundaryValue infinity() {
      return BoundaryValue(Infinity{});
    }
    // Relative error defaults to the long double epsilon.
    static BoundaryValue approx(long double value, long double error = -1);
    static BoundaryValue from_quadratic(QuadraticNumber const& x);

    Kind kind() const noexcept {
      return static_cast<Kind>(_v.index());
    }
    bool is_rational() const noexcept {
      return kind() == Kind::rational;
    }
    bool is_surd() const noexcept {
      return kind() == Kind::surd;
    }
    bool is_infinity() const noexcept {
      return kind() == Kind::infinity;
    }
    bool is_approx() const noexcept {
      return kind() == Kind::approx;
    }
    bool is_exact() const noexcept {
      return !is_approx();
    }
    // Finite exact value (rational or surd).
    bool is_finite_exact() const noexcept {
      return is_rational() || is_surd();
    }

    Rational const& as_rational() const {
      return std::get<Rational>(_v);
    }
    Surd const& as_surd() const {
      return std::get<Surd>(_v);
    }
    Approx const& as_approx() const {
      return std::get<Approx>(_v);
    }
    // Precondition: is_finite_exact().
    QuadraticNumber to_quadratic() const;
    long double     to_long_double() const;
    // Absolute error bound; zero for exact values.
    long double error_bound() const;

    friend bool operator==(BoundaryValue const& x, BoundaryValue const& y);

   private:
    friend BoundaryValue normalize_surd(Integer, Integer, Integer, Integer);
    explicit BoundaryValue(Infinity i) : _v(i) {}
    explicit BoundaryValue(Surd s) : _v(std::move(s)) {}
    explicit BoundaryValue(Approx a) : _v(a) {}

    std::variant<Rational, Surd, Infinity, Approx> _v;
  };

  // Canonical value of (a + b√d)/c. Collapses to a Rational when b = 0 or
  // d is a perfect square. Throws std::invalid_argument for c = 0 or d ≤ 0.
  BoundaryValue normalize_surd(Integer a, Integer b, Integer c, Integer d);

  // Total order on R ∪ {∞} with ∞ above every real.
  Comparison compare(BoundaryValue const& x, BoundaryValue const& y);

  // Convenience wrappers for exact operands; throw std::domain_error if
  // the comparison came out inexact.
  bool exact_less(BoundaryValue const& x, BoundaryValue const& y);

  // Squarefree decomposition n = s²·r; returns {s, r}. n > 0.
  std::pair<Integer, Integer> squarefree_decomposition(Integer n);

  // Text grammar: rat:<num>/<den>, surd:(<a>+<b>*sqrt(<d>))/<c>, inf,
  // approx:<decimal>. Emission reparses to an equal value. Decimals get
  // the relative error `approx_relative_error` (negative: long double
  // epsilon).
  std::string   to_string(BoundaryValue const& x);
  BoundaryValue parse_boundary_value(std::string_view text,
                                     long double approx_relative_error = -1);

  std::string to_string(Rational const& r);

}  // namespace cusp

#endif  // CUSP_EXACT_HPP_
