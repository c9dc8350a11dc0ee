// The transfer operator of the generating map,
//   (L_β φ)(x) = Σ_k χ_{F(D_k)}(x) · |h_k'(x)|^β · φ(h_k x),
// where h_k' (x) = (c_k x + d_k)^(−2) > 0, so the β-power is taken of a
// positive number and complex β needs no branch cut.

#ifndef CUSP_TRANSFER_HPP_
#define CUSP_TRANSFER_HPP_

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cusp/dynamics.hpp"

namespace cusp {

  using Complex = std::complex<double>;

  struct DensityFunction {
    std::string                                name;
    std::function<Complex(long double)>        eval;
    // Optional exact rule on Q(√d), used by apply_transfer_exact.
    std::function<QuadraticNumber(QuadraticNumber const&)> exact;

    static DensityFunction one();
    static DensityFunction inv_x();
    // Piecewise-linear interpolation through sorted (node, value) pairs;
    // evaluation outside [first node, last node] throws.
    static DensityFunction samples(std::vector<long double> nodes,
                                   std::vector<Complex>     values);
  };

  // Throws std::domain_error when x is an endpoint of some F(D_k).
  Complex apply_transfer(BranchTable const& table, Complex beta,
                         DensityFunction const& phi, BoundaryValue const& x);
  Complex apply_transfer(BranchTable const& table, Complex beta,
                         DensityFunction const& phi, long double x);

  // Exact evaluation for integer β ≥ 0 at an exact finite point.
  QuadraticNumber apply_transfer_exact(BranchTable const& table, unsigned beta,
                                       DensityFunction const& phi,
                                       BoundaryValue const&   x);

  // Letter pairs (j, k) with D_j ⊆ F(D_k): the two-step branches
  // h_k·h_j on F(D_j).
  std::vector<std::pair<Letter, Letter>> admissible_pairs(BranchTable const& t);

  // Σ over admissible (j, k) of χ_{F(D_j)}(x)·|(h_k h_j)'(x)|^β·φ(h_k h_j x).
  Complex apply_transfer_two_step(BranchTable const& table, Complex beta,
                                  DensityFunction const& phi, long double x);

  // φ(x) − φ(x+1) − (x+1)^(−2β) φ(x/(x+1)) per point.
  std::vector<Complex> functional_equation_residual(
      Complex beta, DensityFunction const& phi, std::vector<long double> const& xs);

  ////////////////////////////////////////////////////////////////////////
  // Collocation
  ////////////////////////////////////////////////////////////////////////

  // Each branch interval D_k is mapped to (0, 1) by a fixed chart:
  //   (l, r)  t = (x − l)/(r − l)
  //   (l, ∞)  t = (x − l)/(x − l + 1)
  //   (−∞, r) t = 1/(1 + r − x)
  // with Chebyshev nodes in t. On intervals ending at 0 the interpolated
  // quantity is |x|·φ(x), which keeps densities with a simple pole at the
  // cusp 0 smooth. Results depend on this chart choice.
  class CollocationOperator {
   public:
    // Throws std::invalid_argument for fewer than 4 nodes.
    static CollocationOperator build(BranchTable const& table, Complex beta,
                                     unsigned nodes_per_interval);
    // Same nodes; matrix of the two-step branch system.
    static CollocationOperator build_two_step(BranchTable const& table,
                                              Complex            beta,
                                              unsigned nodes_per_interval);

    Complex  beta() const noexcept {
      return _beta;
    }
    unsigned nodes_per_interval() const noexcept {
      return _n;
    }
    Eigen::MatrixXcd const& matrix() const noexcept {
      return _m;
    }
    // Node x-coordinates, interval by interval in table order.
    std::vector<long double> const& nodes() const noexcept {
      return _nodes;
    }
    // Whether node i sits away from the ends of its chart (t ∈ [0.05, 0.95]).
    bool interior(std::size_t i) const;

    Eigen::VectorXcd sample(DensityFunction const& phi) const;
    Eigen::VectorXcd apply(Eigen::VectorXcd const& v) const;

    // Eigenvalues sorted by decreasing modulus (ties by argument).
    std::vector<Complex> eigenvalues() const;

    struct PowerResult {
      Complex          eigenvalue;
      Eigen::VectorXcd vector;
      unsigned         iterations;
      double           change;
    };
    PowerResult power_iteration(unsigned max_iter = 1000,
                                double   tol      = 1e-12) const;

   private:
    struct Chart {
      long double lo, hi;
      bool        lo_inf, hi_inf, cusp_weight;
      long double to_t(long double x) const;
      long double from_t(long double t) const;
      long double rho(long double x) const;
    };

    static CollocationOperator assemble(BranchTable const& table, Complex beta,
                                        unsigned n, bool two_step);

    Complex                  _beta;
    unsigned                 _n = 0;
    std::vector<Chart>       _charts;
    std::vector<long double> _t;
    std::vector<long double> _nodes;
    Eigen::MatrixXcd         _m;
  };

}  // namespace cusp

#endif  // CUSP_TRANSFER_HPP_
