// The Ford fundamental domain of Γ₀(p) with its precells and cells. Points
// of H are reduced into the closed domain here too.
//
// For p prime the domain is bounded by Re z = 0, Re z = 1 and the arcs of
// the isometric spheres I_q = {|pz − q| = 1}, q = 1, …, p−1. The strip
// k/p ≤ Re z ≤ (k+1)/p of the closed domain is the precell A(v_k); the cell
// B(v_k) is the ideal triangle k/p, (k+1)/p, ∞, glued from A(v_k) and up to
// two translated precells.

#ifndef CUSP_TESSELLATION_HPP_
#define CUSP_TESSELLATION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "cusp/moebius.hpp"

namespace cusp {

  // Vertex of the fundamental domain: re + i·im, im ≥ 0 (im = 0 for the
  // cusp representatives v_0 = 0 and v_{p−1} = 1). im is kept as an exact
  // boundary value so that √3/(2p) stays exact.
  struct DomainVertex {
    Rational      re;
    BoundaryValue im;
  };

  struct FordDomain {
    unsigned                     p;
    std::vector<IsometricSphere> spheres;   // I_1 … I_{p−1}
    std::vector<DomainVertex>    vertices;  // v_0 … v_{p−1}
    std::vector<HPoint>          maxima;    // m_1 … m_{p−1}
  };

  // Throws std::invalid_argument for non-prime p.
  FordDomain build_domain(unsigned p);

  // g_{kl} = (l, −(1+kl)/p; p, −k) with k·l ≡ −1 (mod p); its isometric
  // sphere is I_k.
  GroupElement g_pair(unsigned p, unsigned k);

  struct CellPiece {
    GroupElement g;
    unsigned     precell;
  };

  struct Cell {
    unsigned               k;
    Rational               left, right;  // the triangle is (left, right, ∞)
    std::vector<CellPiece> decomposition;
  };

  Cell cell(unsigned p, unsigned k);

  // Boundary identities of a cell: the non-vertical side is
  // the image of vertical sides. Each entry records g, the vertical side
  // (finite foot of the vertical line and which end maps where) and the
  // expected image endpoints.
  struct SideIdentity {
    GroupElement  g;
    BoundaryValue from_first, from_second;
    BoundaryValue to_first, to_second;
  };
  std::vector<SideIdentity> side_identities(unsigned p, unsigned k);

  struct Reduction {
    GroupElement g;  // g·z is the reduced point
    HPoint       point;
    std::size_t  steps;
  };

  // Translate-then-sphere reduction into the closure of F. Exact points
  // stay exact. Throws std::runtime_error after `max_steps` iterations.
  Reduction reduce_point(unsigned p, HPoint const& z,
                         std::size_t max_steps = 1'000'000);

  // Whether z lies in the closure of F (tolerance for numeric points).
  bool in_closed_domain(unsigned p, HPoint const& z, long double tol = 1e-12L);

  // Index k of a precell A(v_k) containing a point of the closed domain.
  unsigned precell_index(unsigned p, HPoint const& w);

  struct CellLocation {
    GroupElement g;  // g⁻¹·z lies in the closed triangle of cell k
    unsigned     k;
    bool         boundary;
  };

  CellLocation locate_cell(unsigned p, HPoint const& z,
                           long double tol = 1e-12L);

  // Where z sits relative to the closed ideal triangle (left, right, ∞).
  enum class TriangleMembership { outside, boundary, interior };
  TriangleMembership triangle_membership(Rational const& left,
                                         Rational const& right,
                                         HPoint const&   z,
                                         long double     tol = 1e-12L);

  ////////////////////////////////////////////////////////////////////////
  // Modular group
  ////////////////////////////////////////////////////////////////////////

  // F = {0 < Re z < 1, |z| > 1, |z − 1| > 1}; the single inner vertex is
  // (1 + i√3)/2, the precell is the closure of F and the cell is the
  // triangle (0, 1, ∞).
  struct ModularDomain {
    std::vector<IsometricSphere> spheres;  // |z| = 1 and |z − 1| = 1
    DomainVertex                 vertex;
    Cell                         cell;
  };

  ModularDomain build_modular_domain();

  Reduction reduce_point_modular(HPoint const& z,
                                 std::size_t   max_steps = 1'000'000);

  ////////////////////////////////////////////////////////////////////////
  // Output
  ////////////////////////////////////////////////////////////////////////

  struct SvgOptions {
    double x_min = -0.2, x_max = 1.2, y_max = 1.2;
    double scale = 1000.0;
    bool   draw_cells = true;
  };

  // Static picture: spheres I_q, the domain boundary, precell walls and
  // (optionally) the cell bottoms. Deterministic byte-for-byte.
  std::string domain_svg(FordDomain const& domain, SvgOptions const& opts = {});
  std::string modular_svg(ModularDomain const& domain,
                          SvgOptions const&    opts = {});

}  // namespace cusp

#endif  // CUSP_TESSELLATION_HPP_
