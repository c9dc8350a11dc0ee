// Integer Möbius transformations in PSL(2,Z), the congruence condition for
// Γ₀(p), and the action on the upper half plane and on its boundary.

#ifndef CUSP_MOEBIUS_HPP_
#define CUSP_MOEBIUS_HPP_

#include <string>
#include <string_view>
#include <variant>

#include "cusp/exact.hpp"

namespace cusp {

  // A class ±(a b; c d) in PSL(2,Z), stored with the canonical sign
  // c > 0, or c = 0 and d > 0. Equality is therefore field-wise.
  class GroupElement {
   public:
    // Identity.
    GroupElement() : _a(1), _b(0), _c(0), _d(1) {}
    // Throws std::invalid_argument unless ad − bc = 1.
    GroupElement(Integer a, Integer b, Integer c, Integer d);

    static GroupElement identity() {
      return GroupElement();
    }
    // z ↦ z + n
    static GroupElement translation(Integer n) {
      return GroupElement(1, std::move(n), 0, 1);
    }

    Integer const& a() const noexcept {
      return _a;
    }
    Integer const& b() const noexcept {
      return _b;
    }
    Integer const& c() const noexcept {
      return _c;
    }
    Integer const& d() const noexcept {
      return _d;
    }

    bool is_identity() const noexcept {
      return _a == 1 && _b == 0 && _c == 0 && _d == 1;
    }
    GroupElement inverse() const;
    Integer      trace() const {
      return _a + _d;
    }
    // Largest absolute value of an entry.
    Integer height() const;

    friend GroupElement operator*(GroupElement const& g, GroupElement const& h);
    friend bool operator==(GroupElement const&, GroupElement const&) = default;
    friend bool operator<(GroupElement const& g, GroupElement const& h);

   private:
    void canonicalize();

    Integer _a, _b, _c, _d;
  };

  inline GroupElement compose(GroupElement const& g, GroupElement const& h) {
    return g * h;
  }

  // Exact image g·x on R ∪ {∞}. Approx inputs propagate their error bound
  // through the derivative.
  BoundaryValue apply_boundary(GroupElement const& g, BoundaryValue const& x);

  // Same action on a finite quadratic number; the pole −d/c maps to ∞.
  BoundaryValue apply_boundary(GroupElement const& g,
                               QuadraticNumber const& x);

  // g'(x) = (cx + d)^(−2) at a finite exact point.
  QuadraticNumber derivative(GroupElement const& g, QuadraticNumber const& x);

  ////////////////////////////////////////////////////////////////////////
  // Upper half plane
  ////////////////////////////////////////////////////////////////////////

  // A point of H, either with exact rational coordinates or with long
  // double coordinates. Imaginary part > 0.
  class HPoint {
   public:
    HPoint(Rational re, Rational im);
    HPoint(long double re, long double im);

    bool is_exact() const noexcept {
      return std::holds_alternative<Exact>(_v);
    }
    Rational const& re_exact() const {
      return std::get<Exact>(_v).re;
    }
    Rational const& im_exact() const {
      return std::get<Exact>(_v).im;
    }
    long double re() const;
    long double im() const;

   private:
    struct Exact {
      Rational re, im;
    };
    struct Numeric {
      long double re, im;
    };
    std::variant<Exact, Numeric> _v;
  };

  HPoint apply(GroupElement const& g, HPoint const& z);

  // |cz + d|² for g = (a b; c d): exact for exact points.
  Rational    abs_cz_plus_d_squared(GroupElement const& g, HPoint const& z);
  long double abs_cz_plus_d_squared_numeric(GroupElement const& g,
                                            HPoint const&       z);

  // I(g) = {z ∈ H : |cz + d| = 1}.
  struct IsometricSphere {
    Rational     center;
    Rational     radius;
    GroupElement element;
  };

  // Throws std::domain_error when c = 0.
  IsometricSphere isometric_sphere(GroupElement const& g);

  bool in_gamma0(GroupElement const& g, unsigned p);

  // An element of Γ₀(p) mapping the rational r to ∞ (when p divides the
  // reduced denominator of r) or to 0 (otherwise). For p = 1 every
  // rational goes to ∞.
  GroupElement cusp_witness(unsigned p, Rational const& r);

  // Matrix literal grammar `[[a,b],[c,d]]`; emission uses the canonical
  // sign.
  std::string  to_string(GroupElement const& g);
  GroupElement parse_group_element(std::string_view text);

  // Modular inverse of k modulo p in {1, …, p−1}; k not divisible by p.
  unsigned inverse_mod(long long k, unsigned p);

  bool is_prime(unsigned long long n);

}  // namespace cusp

#endif  // CUSP_MOEBIUS_HPP_
