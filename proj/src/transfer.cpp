#include "cusp/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cusp {

  namespace {

    long double ld(Integer const& n) {
      return n.convert_to<long double>();
    }

    // |g'(x)|^β with g'(x) = (cx + d)^(−2).
    Complex weight(GroupElement const& g, long double x, Complex beta) {
      long double den = ld(g.c()) * x + ld(g.d());
      if (beta == Complex(0)) {
        return 1;
      }
      long double logw = -2 * std::log(std::fabs(den));
      return std::exp(beta * static_cast<double>(logw));
    }

    long double act(GroupElement const& g, long double x) {
      return (ld(g.a()) * x + ld(g.b())) / (ld(g.c()) * x + ld(g.d()));
    }

    // Strict membership of a double point; an endpoint hit throws.
    bool contains(Interval const& I, long double x) {
      if (!I.lo.is_infinity()) {
        long double l = I.lo.to_long_double();
        if (x == l) {
          throw std::domain_error("x lies on an image-interval boundary");
        }
        if (x < l) {
          return false;
        }
      }
      if (!I.hi.is_infinity()) {
        long double h = I.hi.to_long_double();
        if (x == h) {
          throw std::domain_error("x lies on an image-interval boundary");
        }
        if (x > h) {
          return false;
        }
      }
      return true;
    }

    // lo endpoint a is ≤ lo endpoint b (∞ as −∞).
    bool lo_leq(BoundaryValue const& a, BoundaryValue const& b) {
      if (a.is_infinity()) {
        return true;
      }
      if (b.is_infinity()) {
        return false;
      }
      return compare(a, b).order != Ordering::greater;
    }

    // hi endpoint a is ≤ hi endpoint b (∞ as +∞).
    bool hi_leq(BoundaryValue const& a, BoundaryValue const& b) {
      if (b.is_infinity()) {
        return true;
      }
      if (a.is_infinity()) {
        return false;
      }
      return compare(a, b).order != Ordering::greater;
    }

    std::vector<long double> chebyshev_nodes(unsigned n) {
      std::vector<long double> t(n);
      for (unsigned i = 0; i < n; ++i) {
        t[i] = (1 - std::cos((2 * i + 1) * std::numbers::pi_v<long double>
                             / (2 * n)))
               / 2;
      }
      return t;
    }

    // Barycentric Lagrange basis at t for Chebyshev first-kind nodes.
    std::vector<long double> lagrange(std::vector<long double> const& nodes,
                                      long double                     t) {
      std::size_t const        n = nodes.size();
      std::vector<long double> l(n, 0.0L);
      for (std::size_t i = 0; i < n; ++i) {
        if (t == nodes[i]) {
          l[i] = 1;
          return l;
        }
      }
      long double sum = 0;
      for (std::size_t i = 0; i < n; ++i) {
        long double w = std::sin((2 * i + 1) * std::numbers::pi_v<long double>
                                 / (2 * n));
        // An affine change of variable rescales all weights by one factor.
        if (i % 2) {
          w = -w;
        }
        l[i] = w / (t - nodes[i]);
        sum += l[i];
      }
      for (auto& v : l) {
        v /= sum;
      }
      return l;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Densities
  ////////////////////////////////////////////////////////////////////////

  DensityFunction DensityFunction::one() {
    return {"one", [](long double) { return Complex(1); },
            [](QuadraticNumber const&) { return QuadraticNumber(1); }};
  }

  DensityFunction DensityFunction::inv_x() {
    return {"invx",
            [](long double x) { return Complex(static_cast<double>(1 / x)); },
            [](QuadraticNumber const& x) { return QuadraticNumber(1) / x; }};
  }

  DensityFunction DensityFunction::samples(std::vector<long double> nodes,
                                           std::vector<Complex>     values) {
    if (nodes.size() != values.size() || nodes.size() < 2) {
      throw std::invalid_argument(
          "sample density needs matching node/value lists of length >= 2");
    }
    if (!std::is_sorted(nodes.begin(), nodes.end())
        || std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
      throw std::invalid_argument("sample nodes must be strictly increasing");
    }
    auto eval = [nodes, values](long double x) -> Complex {
      if (x < nodes.front() || x > nodes.back()) {
        throw std::domain_error("sample density evaluated outside its nodes");
      }
      auto        it = std::upper_bound(nodes.begin(), nodes.end(), x);
      std::size_t i  = it == nodes.end() ? nodes.size() - 1
                                         : static_cast<std::size_t>(
                                             it - nodes.begin());
      long double s  = (x - nodes[i - 1]) / (nodes[i] - nodes[i - 1]);
      return values[i - 1] + static_cast<double>(s) * (values[i] - values[i - 1]);
    };
    return {"samples", eval, {}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Pointwise operator
  ////////////////////////////////////////////////////////////////////////

  Complex apply_transfer(BranchTable const& table, Complex beta,
                         DensityFunction const& phi, BoundaryValue const& x) {
    if (x.is_infinity()) {
      throw std::domain_error("apply_transfer: x = inf");
    }
    Complex sum = 0;
    for (auto const& b : table.branches) {
      Membership m = membership(b.image, x);
      if (m == Membership::undecided || (m == Membership::outside && x.is_exact()
                                         && ((!b.image.lo.is_infinity()
                                              && x == b.image.lo)
                                             || (!b.image.hi.is_infinity()
                                                 && x == b.image.hi)))) {
        throw std::domain_error("apply_transfer: x = " + to_string(x)
                                + " lies on the boundary of F(D_"
                                + to_string_letter(b.label) + ")");
      }
      if (m != Membership::inside) {
        continue;
      }
      long double xv  = x.to_long_double();
      long double hx  = apply_boundary(b.h, x).to_long_double();
      Complex     w   = weight(b.h, xv, beta);
      sum            += w * phi.eval(hx);
    }
    return sum;
  }

  Complex apply_transfer(BranchTable const& table, Complex beta,
                         DensityFunction const& phi, long double x) {
    return apply_transfer(table, beta, phi, BoundaryValue::approx(x, 0));
  }

  QuadraticNumber apply_transfer_exact(BranchTable const& table, unsigned beta,
                                       DensityFunction const& phi,
                                       BoundaryValue const&   x) {
    if (!phi.exact) {
      throw std::invalid_argument("density has no exact rule");
    }
    if (!x.is_finite_exact()) {
      throw std::invalid_argument("apply_transfer_exact needs a finite exact x");
    }
    QuadraticNumber const xq  = x.to_quadratic();
    QuadraticNumber       sum = 0;
    for (auto const& b : table.branches) {
      if (membership(b.image, x) != Membership::inside) {
        if ((!b.image.lo.is_infinity() && x == b.image.lo)
            || (!b.image.hi.is_infinity() && x == b.image.hi)) {
          throw std::domain_error("apply_transfer_exact: boundary point");
        }
        continue;
      }
      QuadraticNumber den = QuadraticNumber(Rational(b.h.c())) * xq
                            + QuadraticNumber(Rational(b.h.d()));
      QuadraticNumber w   = QuadraticNumber(1) / (den * den);
      QuadraticNumber wb  = 1;
      for (unsigned i = 0; i < beta; ++i) {
        wb *= w;
      }
      sum += wb * phi.exact(apply_boundary(b.h, xq).to_quadratic());
    }
    return sum;
  }

  std::vector<std::pair<Letter, Letter>> admissible_pairs(BranchTable const& t) {
    std::vector<std::pair<Letter, Letter>> out;
    for (auto const& j : t.branches) {
      for (auto const& k : t.branches) {
        if (lo_leq(k.image.lo, j.x.lo) && hi_leq(j.x.hi, k.image.hi)) {
          out.emplace_back(j.label, k.label);
        }
      }
    }
    return out;
  }

  Complex apply_transfer_two_step(BranchTable const& table, Complex beta,
                                  DensityFunction const& phi, long double x) {
    Complex sum = 0;
    for (auto [j, k] : admissible_pairs(table)) {
      Branch const& bj = table.branch(j);
      if (!contains(bj.image, x)) {
        continue;
      }
      GroupElement g  = table.branch(k).h * bj.h;
      sum            += weight(g, x, beta) * phi.eval(act(g, x));
    }
    return sum;
  }

  std::vector<Complex> functional_equation_residual(
      Complex beta, DensityFunction const& phi,
      std::vector<long double> const& xs) {
    std::vector<Complex> out;
    out.reserve(xs.size());
    for (long double x : xs) {
      Complex w = std::exp(-2.0 * beta * static_cast<double>(std::log(x + 1)));
      out.push_back(phi.eval(x) - phi.eval(x + 1) - w * phi.eval(x / (x + 1)));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Collocation
  ////////////////////////////////////////////////////////////////////////

  long double CollocationOperator::Chart::to_t(long double x) const {
    if (lo_inf) {
      return 1 / (1 + hi - x);
    }
    if (hi_inf) {
      return (x - lo) / (x - lo + 1);
    }
    return (x - lo) / (hi - lo);
  }

  long double CollocationOperator::Chart::from_t(long double t) const {
    if (lo_inf) {
      return hi + 1 - 1 / t;
    }
    if (hi_inf) {
      return lo + t / (1 - t);
    }
    return lo + t * (hi - lo);
  }

  long double CollocationOperator::Chart::rho(long double x) const {
    return cusp_weight ? std::fabs(x) : 1.0L;
  }

  CollocationOperator CollocationOperator::build(BranchTable const& table,
                                                 Complex            beta,
                                                 unsigned n) {
    return assemble(table, beta, n, false);
  }

  CollocationOperator CollocationOperator::build_two_step(
      BranchTable const& table, Complex beta, unsigned n) {
    return assemble(table, beta, n, true);
  }

  CollocationOperator CollocationOperator::assemble(BranchTable const& table,
                                                    Complex beta, unsigned n,
                                                    bool two_step) {
    if (n < 4) {
      throw std::invalid_argument(
          "collocation needs at least 4 nodes per interval");
    }
    CollocationOperator op;
    op._beta = beta;
    op._n    = n;
    op._t    = chebyshev_nodes(n);
    std::vector<Letter> labels;
    for (auto const& b : table.branches) {
      auto zero = [](BoundaryValue const& e) {
        return !e.is_infinity() && e == BoundaryValue(0);
      };
      Chart c{b.x.lo.is_infinity() ? 0 : b.x.lo.to_long_double(),
              b.x.hi.is_infinity() ? 0 : b.x.hi.to_long_double(),
              b.x.lo.is_infinity(), b.x.hi.is_infinity(),
              zero(b.x.lo) || zero(b.x.hi)};
      op._charts.push_back(c);
      labels.push_back(b.label);
      for (long double t : op._t) {
        op._nodes.push_back(c.from_t(t));
      }
    }
    auto chart_of = [&labels](Letter k) {
      return static_cast<std::size_t>(
          std::find(labels.begin(), labels.end(), k) - labels.begin());
    };

    // (g, target chart, χ-interval) per branch of the system.
    struct Map {
      GroupElement    g;
      std::size_t     chart;
      Interval const* domain;
    };
    std::vector<Map> maps;
    if (two_step) {
      for (auto [j, k] : admissible_pairs(table)) {
        maps.push_back({table.branch(k).h * table.branch(j).h, chart_of(k),
                        &table.branch(j).image});
      }
    } else {
      for (auto const& b : table.branches) {
        maps.push_back({b.h, chart_of(b.label), &b.image});
      }
    }

    std::size_t const N = op._nodes.size();
    op._m               = Eigen::MatrixXcd::Zero(N, N);
    for (std::size_t r = 0; r < N; ++r) {
      long double x = op._nodes[r];
      for (auto const& m : maps) {
        if (!contains(*m.domain, x)) {
          continue;
        }
        long double  y  = act(m.g, x);
        Chart const& c  = op._charts[m.chart];
        Complex      w  = weight(m.g, x, beta);
        auto         l  = lagrange(op._t, c.to_t(y));
        long double  ry = c.rho(y);
        for (unsigned j = 0; j < n; ++j) {
          std::size_t col = m.chart * n + j;
          op._m(r, col) +=
              w * static_cast<double>(l[j] * c.rho(op._nodes[col]) / ry);
        }
      }
    }
    return op;
  }

  bool CollocationOperator::interior(std::size_t i) const {
    long double t = _t[i % _n];
    return t >= 0.05L && t <= 0.95L;
  }

  Eigen::VectorXcd CollocationOperator::sample(DensityFunction const& phi) const {
    Eigen::VectorXcd v(_nodes.size());
    for (std::size_t i = 0; i < _nodes.size(); ++i) {
      v(i) = phi.eval(_nodes[i]);
    }
    return v;
  }

  Eigen::VectorXcd CollocationOperator::apply(Eigen::VectorXcd const& v) const {
    if (v.size() != _m.cols()) {
      throw std::invalid_argument("vector length does not match the nodes");
    }
    return _m * v;
  }

  std::vector<Complex> CollocationOperator::eigenvalues() const {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(_m, false);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("eigenvalue computation did not converge");
    }
    std::vector<Complex> ev(es.eigenvalues().begin(), es.eigenvalues().end());
    std::stable_sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
      if (std::abs(a) != std::abs(b)) {
        return std::abs(a) > std::abs(b);
      }
      return std::arg(a) < std::arg(b);
    });
    return ev;
  }

  CollocationOperator::PowerResult
  CollocationOperator::power_iteration(unsigned max_iter, double tol) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(_m.rows()).normalized();
    PowerResult      res{0, v, 0, 0};
    for (unsigned it = 1; it <= max_iter; ++it) {
      Eigen::VectorXcd w      = _m * v;
      Complex          lambda = v.dot(w);  // v is unit length
      double           norm   = w.norm();
      if (norm == 0) {
        return {0, v, it, 0};
      }
      w /= norm;
      Eigen::Index k;
      w.cwiseAbs().maxCoeff(&k);
      w *= std::conj(w(k)) / std::abs(w(k));
      double change = (w - v).norm();
      v             = w;
      res           = {lambda, v, it, change};
      if (change < tol) {
        break;
      }
    }
    return res;
  }

}  // namespace cusp
