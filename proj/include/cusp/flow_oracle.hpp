// Geometric ground truth for the symbolic dynamics. Geodesics are pairs of
// boundary points; the cell-boundary family B = Γ·{k/p + iR⁺} is
// enumerated by brute force up to an entry bound, independently of the
// branch table, and first returns are read off from the sorted crossings.
//
// The representative oriented lines are R_j = (j/p → ∞) for 0 ≤ j ≤ p−1
// and R_{−1} = (∞ → 0) (the unit-left shift of the line over 1 with the
// reversed direction). The modular preset uses the single line R_0 = iR⁺.
// A geodesic from y to x crosses the oriented line t → h positively when
// y, t, x, h occur in this cyclic order on R ∪ {∞}.

#ifndef CUSP_FLOW_ORACLE_HPP_
#define CUSP_FLOW_ORACLE_HPP_

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cusp/dynamics.hpp"

namespace cusp {

  struct Geodesic {
    BoundaryValue backward;  // γ(−∞)
    BoundaryValue forward;   // γ(+∞)

    // Throws std::invalid_argument if the endpoints coincide.
    Geodesic(BoundaryValue back, BoundaryValue fwd);
  };

  // Intersection of γ with the vertical geodesic a + iR⁺.
  struct VerticalIntersection {
    enum class Kind { none, point, contained } kind = Kind::none;
    Rational        re;
    QuadraticNumber im_squared;  // valid when `exact`
    long double     im    = 0;
    bool            exact = true;
  };

  VerticalIntersection intersect_vertical(Geodesic const& g, Rational const& a);

  struct Classification {
    bool intersects;
    bool inf_future;
    bool inf_past;
    // False when `intersects` rests on the enumeration bound.
    bool exact;
  };

  ////////////////////////////////////////////////////////////////////////
  // Boundary family
  ////////////////////////////////////////////////////////////////////////

  struct OrientedLine {
    BoundaryValue tail, head;  // rationals or ∞
    GroupElement  g;           // the line is g·R_c
    Letter        c;
    double        tail_d, head_d;  // ∞ as +inf
  };

  // All distinct lines g·R_c with max |entry| of g ≤ bound, g ∈ Γ₀(p).
  class BoundaryFamily {
   public:
    // Cached per (p, modular, bound); thread-safe.
    static std::shared_ptr<BoundaryFamily const> get(BranchTable const& table,
                                                     unsigned bound);

    BoundaryFamily(BranchTable const& table, unsigned bound);

    unsigned p() const noexcept {
      return _p;
    }
    bool modular() const noexcept {
      return _modular;
    }
    unsigned bound() const noexcept {
      return _bound;
    }
    std::vector<OrientedLine> const& lines() const noexcept {
      return _lines;
    }
    // Representative labels: {−1, 0, …, p−1}, or {0} for the modular preset.
    std::vector<Letter> const& representatives() const noexcept {
      return _reps;
    }
    // The representative oriented line R_c.
    std::pair<BoundaryValue, BoundaryValue> representative(Letter c) const;

    OrientedLine const* find(BoundaryValue const& tail,
                             BoundaryValue const& head) const;
    // Number of oriented lines reached by two different (g, c).
    std::size_t collisions() const noexcept {
      return _collisions;
    }

   private:
    unsigned                              _p;
    bool                                  _modular;
    unsigned                              _bound;
    std::vector<Letter>                   _reps;
    std::vector<OrientedLine>             _lines;
    std::map<std::string, std::size_t>    _index;
    std::size_t                           _collisions = 0;
  };

  Classification classify(Geodesic const& g, BranchTable const& table,
                          unsigned bound = 50);

  ////////////////////////////////////////////////////////////////////////
  // Section points and returns
  ////////////////////////////////////////////////////////////////////////

  struct SectionPoint {
    Geodesic geodesic;
    Letter   line;  // representative label c
    // Crossing point with R_c.
    QuadraticNumber re;  // exact when the endpoints share a field
    long double     im;
  };

  // The section point on the last representative line crossed
  // positively by γ. Throws NotOnSection if there is none.
  SectionPoint section_point_for(Geodesic const& g, BranchTable const& table);

  struct Crossing {
    GroupElement    g;
    Letter          c;
    BoundaryValue   tail, head;
    QuadraticNumber re;      // Re of the crossing point
    long double     re_d;
    long double     im;
  };

  class BoundExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct ReturnRecord {
    Crossing     exterior;     // first non-representative crossing
    Letter       letter;       // cell side through which γ leaves
    Geodesic     renormalized; // g⁻¹γ
    SectionPoint next;         // on R_c for the renormalized geodesic
    // Crossings of representative lines strictly between sp and the
    // exterior crossing.
    std::vector<Crossing> interior;
    // All positive crossings sorted along γ (only with `trace`).
    std::vector<Crossing> trace;
  };

  // Throws BoundExhausted when no exterior crossing follows sp among the
  // enumerated lines.
  ReturnRecord first_return_geometric(SectionPoint const& sp,
                                      BranchTable const&  table,
                                      unsigned bound = 50, bool trace = false);

  // The last non-representative positive crossing before sp, or none when
  // the backward endpoint is a cusp point and nothing precedes sp. Throws
  // BoundExhausted otherwise.
  std::optional<Crossing> previous_exterior_geometric(SectionPoint const& sp,
                                                      BranchTable const& table,
                                                      unsigned bound = 50);

  // Letter of the cell side with endpoints {tail, head}, if any.
  std::optional<Letter> side_letter(BranchTable const&   table,
                                    BoundaryValue const& tail,
                                    BoundaryValue const& head);

}  // namespace cusp

#endif  // CUSP_FLOW_ORACLE_HPP_
