#include "cusp/flow_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <tuple>

namespace cusp {

  namespace {

    constexpr double kInf = std::numeric_limits<double>::infinity();

    double to_d(BoundaryValue const& v) {
      return v.is_infinity() ? kInf : static_cast<double>(v.to_long_double());
    }

    bool lt(BoundaryValue const& a, BoundaryValue const& b) {
      return compare(a, b).order == Ordering::less;
    }
    bool eq(BoundaryValue const& a, BoundaryValue const& b) {
      return compare(a, b).order == Ordering::equal;
    }

    // a, b, c in counter-clockwise order on R ∪ {∞} (∞ above every real).
    template <class T, class Less>
    bool ccw(T const& a, T const& b, T const& c, Less less) {
      return (less(a, b) && less(b, c)) || (less(b, c) && less(c, a))
             || (less(c, a) && less(a, b));
    }

    bool cyclic_exact(BoundaryValue const& y, BoundaryValue const& t,
                      BoundaryValue const& x, BoundaryValue const& h) {
      if (eq(y, t) || eq(y, h) || eq(x, t) || eq(x, h)) {
        return false;
      }
      return ccw(y, t, x, lt) && ccw(y, x, h, lt);
    }

    bool near(double a, double b) {
      if (std::isinf(a) || std::isinf(b)) {
        return a == b;
      }
      return std::fabs(a - b) <= 1e-9 * (1 + std::max(std::fabs(a), std::fabs(b)));
    }

    // Geodesic data prepared once per scan.
    struct Ctx {
      BoundaryValue   x, y;  // forward, backward
      double          xd, yd;
      bool            finite;
      bool            exact;  // exact keys available
      QuadraticNumber S, P;   // x + y, x·y
      int             dir;    // +1 when Re increases from y to x
    };

    Ctx make_ctx(Geodesic const& g) {
      Ctx c{g.forward, g.backward, to_d(g.forward), to_d(g.backward),
            !g.forward.is_infinity() && !g.backward.is_infinity(),
            g.forward.is_exact() && g.backward.is_exact(), {}, {}, 0};
      if (c.finite) {
        c.dir = lt(c.y, c.x) ? 1 : -1;
        if (c.exact) {
          try {
            QuadraticNumber xq = c.x.to_quadratic(), yq = c.y.to_quadratic();
            c.S                = xq + yq;
            c.P                = xq * yq;
          } catch (FieldMismatch const&) {
            c.exact = false;
          }
        }
      }
      return c;
    }

    bool positive(Ctx const& c, BoundaryValue const& t, BoundaryValue const& h,
                  double td, double hd) {
      if (near(c.yd, td) || near(c.yd, hd) || near(c.xd, td) || near(c.xd, hd)) {
        return cyclic_exact(c.y, t, c.x, h);
      }
      auto less = [](double a, double b) { return a < b; };
      return ccw(c.yd, td, c.xd, less) && ccw(c.yd, c.xd, hd, less);
    }

    // Position of the crossing with the line {t, h} along γ (increasing
    // from γ(−∞) to γ(+∞)), and its real part.
    struct Key {
      long double     key_d, re_d, im2_d;
      QuadraticNumber key, re, im2;  // when Ctx::exact
    };

    Key crossing_key(Ctx const& c, BoundaryValue const& t,
                     BoundaryValue const& h) {
      Key k{};
      if (c.finite) {
        long double S = static_cast<long double>(c.xd) + c.yd;
        long double P = static_cast<long double>(c.x.to_long_double())
                        * c.y.to_long_double();
        if (t.is_infinity() || h.is_infinity()) {
          BoundaryValue const& u = t.is_infinity() ? h : t;
          k.re_d                 = u.to_long_double();
          if (c.exact) {
            k.re = u.to_quadratic();
          }
        } else {
          long double u = t.to_long_double(), v = h.to_long_double();
          k.re_d        = (u * v - P) / ((u + v) - S);
          if (c.exact) {
            QuadraticNumber uq = t.to_quadratic(), vq = h.to_quadratic();
            k.re               = (uq * vq - c.P) / ((uq + vq) - c.S);
          }
        }
        k.key_d = c.dir * k.re_d;
        k.im2_d = (k.re_d - c.yd) * (c.xd - k.re_d);
        if (c.exact) {
          k.key = QuadraticNumber(c.dir) * k.re;
          QuadraticNumber xq = c.x.to_quadratic(), yq = c.y.to_quadratic();
          k.im2              = (k.re - yq) * (xq - k.re);
        }
        return k;
      }
      // Vertical γ over a; the line is a finite semicircle.
      BoundaryValue const& a = c.x.is_infinity() ? c.y : c.x;
      long double          ad = a.to_long_double();
      long double u = t.to_long_double(), v = h.to_long_double();
      k.re_d        = ad;
      k.im2_d       = (ad - u) * (v - ad);
      if (k.im2_d < 0) {
        k.im2_d = -k.im2_d;
      }
      int s   = c.x.is_infinity() ? 1 : -1;
      k.key_d = s * k.im2_d;
      if (c.exact) {
        QuadraticNumber aq = a.to_quadratic();
        k.re               = aq;
        k.im2 = (aq - t.to_quadratic()) * (h.to_quadratic() - aq);
        if (k.im2.sign() < 0) {
          k.im2 = -k.im2;
        }
        k.key = QuadraticNumber(s) * k.im2;
      }
      return k;
    }

    // Sign of key a minus key b.
    int order(Ctx const& c, Key const& a, Key const& b) {
      double tol = 1e-9 * (1 + std::fabs(static_cast<double>(a.key_d)));
      if (!c.exact || std::fabs(static_cast<double>(a.key_d - b.key_d)) > tol) {
        return a.key_d < b.key_d ? -1 : (a.key_d > b.key_d ? 1 : 0);
      }
      auto o = a.key <=> b.key;
      return o < 0 ? -1 : (o > 0 ? 1 : 0);
    }

    struct Candidate {
      OrientedLine const* line;
      Key                 key;
    };

    std::vector<Candidate> positive_crossings(Ctx const&            c,
                                              BoundaryFamily const& fam) {
      std::vector<Candidate> out;
      for (auto const& l : fam.lines()) {
        if (positive(c, l.tail, l.head, l.tail_d, l.head_d)) {
          out.push_back({&l, crossing_key(c, l.tail, l.head)});
        }
      }
      std::sort(out.begin(), out.end(),
                [&c](Candidate const& a, Candidate const& b) {
                  return order(c, a.key, b.key) < 0;
                });
      return out;
    }

    Crossing make_crossing(OrientedLine const& l, Key const& k) {
      return {l.g,    l.c,    l.tail,
              l.head, k.re,   k.re_d,
              std::sqrt(std::max(k.im2_d, 0.0L))};
    }

    std::pair<BoundaryValue, BoundaryValue>
    representative_line(BranchTable const& table, Letter c) {
      if (c == -1 && !table.modular) {
        return {BoundaryValue::infinity(), BoundaryValue(0)};
      }
      long long p = table.modular ? 1 : table.p;
      if (c < 0 || c >= p) {
        throw std::invalid_argument("no representative line "
                                    + to_string_letter(c));
      }
      return {BoundaryValue(Rational(c, p)), BoundaryValue::infinity()};
    }

    std::vector<Letter> representative_labels(BranchTable const& table) {
      if (table.modular) {
        return {0};
      }
      std::vector<Letter> out;
      for (int c = -1; c < static_cast<int>(table.p); ++c) {
        out.push_back(c);
      }
      return out;
    }

    std::optional<SectionPoint> section_point_on(Geodesic const&    g,
                                                 BranchTable const& table,
                                                 Letter             c) {
      auto [t, h] = representative_line(table, c);
      if (!cyclic_exact(g.backward, t, g.forward, h)) {
        return std::nullopt;
      }
      Ctx ctx = make_ctx(g);
      Key k   = crossing_key(ctx, t, h);
      return SectionPoint{g, c, k.re, std::sqrt(std::max(k.im2_d, 0.0L))};
    }

    bool is_cusp(BoundaryValue const& v) {
      return v.is_rational() || v.is_infinity();
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Geodesics
  ////////////////////////////////////////////////////////////////////////

  Geodesic::Geodesic(BoundaryValue back, BoundaryValue fwd)
      : backward(std::move(back)), forward(std::move(fwd)) {
    if (backward == forward) {
      throw std::invalid_argument("geodesic endpoints must be distinct");
    }
  }

  VerticalIntersection intersect_vertical(Geodesic const& g,
                                          Rational const& a) {
    VerticalIntersection out;
    out.re = a;
    BoundaryValue const A(a);
    if (g.forward.is_infinity() || g.backward.is_infinity()) {
      BoundaryValue const& u = g.forward.is_infinity() ? g.backward : g.forward;
      if (u == A) {
        out.kind = VerticalIntersection::Kind::contained;
      }
      return out;
    }
    BoundaryValue const& lo = lt(g.forward, g.backward) ? g.forward : g.backward;
    BoundaryValue const& hi = lt(g.forward, g.backward) ? g.backward : g.forward;
    if (!(lt(lo, A) && lt(A, hi))) {
      return out;
    }
    out.kind         = VerticalIntersection::Kind::point;
    long double ad   = A.to_long_double();
    out.im           = std::sqrt((ad - lo.to_long_double())
                                 * (hi.to_long_double() - ad));
    out.exact        = lo.is_exact() && hi.is_exact();
    if (out.exact) {
      try {
        QuadraticNumber aq(a);
        out.im_squared = (aq - lo.to_quadratic()) * (hi.to_quadratic() - aq);
      } catch (FieldMismatch const&) {
        out.exact = false;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Boundary family
  ////////////////////////////////////////////////////////////////////////

  std::shared_ptr<BoundaryFamily const>
  BoundaryFamily::get(BranchTable const& table, unsigned bound) {
    static std::mutex m;
    static std::map<std::tuple<unsigned, bool, unsigned>,
                    std::shared_ptr<BoundaryFamily const>>
                     cache;
    std::lock_guard lock(m);
    auto            key = std::make_tuple(table.p, table.modular, bound);
    auto            it  = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, std::make_shared<BoundaryFamily>(table, bound))
               .first;
    }
    return it->second;
  }

  BoundaryFamily::BoundaryFamily(BranchTable const& table, unsigned bound)
      : _p(table.p),
        _modular(table.modular),
        _bound(bound),
        _reps(representative_labels(table)) {
    long long const B    = bound;
    long long const step = _modular ? 1 : _p;

    std::vector<std::pair<BoundaryValue, BoundaryValue>> reps;
    for (Letter c : _reps) {
      reps.push_back(representative_line(table, c));
    }
    auto add = [&](GroupElement const& g) {
      for (std::size_t i = 0; i < _reps.size(); ++i) {
        BoundaryValue t = apply_boundary(g, reps[i].first);
        BoundaryValue h = apply_boundary(g, reps[i].second);
        std::string   k = to_string(t) + ">" + to_string(h);
        auto [it, fresh] = _index.emplace(k, _lines.size());
        if (!fresh) {
          OrientedLine const& old = _lines[it->second];
          if (!(old.g == g && old.c == _reps[i])) {
            ++_collisions;
          }
          continue;
        }
        double td = to_d(t), hd = to_d(h);
        _lines.push_back({std::move(t), std::move(h), g, _reps[i], td, hd});
      }
    };

    for (long long b = -B; b <= B; ++b) {
      add(GroupElement::translation(b));
    }
    for (long long c = step; c <= B; c += step) {
      for (long long d = -B; d <= B; ++d) {
        if (std::gcd(c, d < 0 ? -d : d) != 1) {
          continue;
        }
        // a ≡ d⁻¹ (mod c), b = (ad − 1)/c.
        long long a0 = c == 1 ? 0 : inverse_mod(d, static_cast<unsigned>(c));
        long long a  = a0 - ((a0 + B) / c) * c;
        for (; a <= B; a += c) {
          if (a < -B) {
            continue;
          }
          long long num = a * d - 1;
          if (num % c != 0) {
            throw std::logic_error("boundary family: bad inverse");
          }
          long long b = num / c;
          if (b < -B || b > B) {
            continue;
          }
          add(GroupElement(a, b, c, d));
        }
      }
    }
  }

  std::pair<BoundaryValue, BoundaryValue>
  BoundaryFamily::representative(Letter c) const {
    BranchTable t{_p, _modular, {}};
    return representative_line(t, c);
  }

  OrientedLine const* BoundaryFamily::find(BoundaryValue const& tail,
                                           BoundaryValue const& head) const {
    auto it = _index.find(to_string(tail) + ">" + to_string(head));
    return it == _index.end() ? nullptr : &_lines[it->second];
  }

  Classification classify(Geodesic const& g, BranchTable const& table,
                          unsigned bound) {
    Classification out{true, !is_cusp(g.forward), !is_cusp(g.backward), true};
    if (!is_cusp(g.forward) || !is_cusp(g.backward)) {
      return out;
    }
    auto fam = BoundaryFamily::get(table, bound);
    if (fam->find(g.backward, g.forward) || fam->find(g.forward, g.backward)) {
      out.intersects = false;
      return out;
    }
    Ctx ctx = make_ctx(g);
    for (auto const& l : fam->lines()) {
      if (positive(ctx, l.tail, l.head, l.tail_d, l.head_d)
          || positive(ctx, l.head, l.tail, l.head_d, l.tail_d)) {
        return out;
      }
    }
    out.intersects = false;
    out.exact      = false;
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Returns
  ////////////////////////////////////////////////////////////////////////

  SectionPoint section_point_for(Geodesic const& g, BranchTable const& table) {
    std::optional<SectionPoint> best;
    Ctx                         ctx = make_ctx(g);
    Key                         best_key{};
    for (Letter c : representative_labels(table)) {
      auto sp = section_point_on(g, table, c);
      if (!sp) {
        continue;
      }
      auto [t, h] = representative_line(table, c);
      Key k       = crossing_key(ctx, t, h);
      if (!best || order(ctx, k, best_key) > 0) {
        best     = sp;
        best_key = k;
      }
    }
    if (!best) {
      throw NotOnSection("geodesic crosses no representative line positively");
    }
    return *best;
  }

  std::optional<Letter> side_letter(BranchTable const&   table,
                                    BoundaryValue const& tail,
                                    BoundaryValue const& head) {
    auto is = [&](BoundaryValue const& a, BoundaryValue const& b) {
      return (tail == a && head == b) || (tail == b && head == a);
    };
    BoundaryValue const inf = BoundaryValue::infinity();
    if (table.modular) {
      if (is(0, 1)) {
        return 0;
      }
      if (is(1, inf)) {
        return 1;
      }
      return std::nullopt;
    }
    long long const p = table.p;
    if (is(BoundaryValue(Rational(-1, p)), inf)) {
      return kMinusInfty;
    }
    if (is(BoundaryValue(Rational(-1, p)), 0)) {
      return -1;
    }
    for (long long j = 0; j < p; ++j) {
      if (is(BoundaryValue(Rational(j, p)), BoundaryValue(Rational(j + 1, p)))) {
        return static_cast<Letter>(j);
      }
    }
    if (is(1, inf)) {
      return static_cast<Letter>(p);
    }
    return std::nullopt;
  }

  ReturnRecord first_return_geometric(SectionPoint const& sp,
                                      BranchTable const&  table,
                                      unsigned bound, bool trace) {
    auto fam = BoundaryFamily::get(table, bound);
    Ctx  ctx = make_ctx(sp.geodesic);
    auto [t0, h0] = representative_line(table, sp.line);
    if (!cyclic_exact(ctx.y, t0, ctx.x, h0)) {
      throw std::invalid_argument("section point does not lie on its line");
    }
    Key const start = crossing_key(ctx, t0, h0);

    auto                    all = positive_crossings(ctx, *fam);
    std::vector<Crossing>   interior;
    Candidate const*        exit = nullptr;
    for (auto const& cand : all) {
      if (order(ctx, cand.key, start) <= 0) {
        continue;
      }
      if (cand.line->g.is_identity()) {
        interior.push_back(make_crossing(*cand.line, cand.key));
        continue;
      }
      exit = &cand;
      break;
    }
    if (!exit) {
      throw BoundExhausted("no exterior crossing after the section point "
                           "among translates of height <= "
                           + std::to_string(bound) + "; increase bound");
    }
    OrientedLine const& l      = *exit->line;
    auto                letter = side_letter(table, l.tail, l.head);
    if (!letter) {
      throw std::logic_error("exterior crossing " + to_string(l.tail) + " -> "
                             + to_string(l.head) + " is not a cell side");
    }
    GroupElement gi = l.g.inverse();
    Geodesic     ren(apply_boundary(gi, ctx.y), apply_boundary(gi, ctx.x));
    auto         next = section_point_on(ren, table, l.c);
    if (!next) {
      throw std::logic_error("renormalized geodesic misses its line");
    }
    ReturnRecord rec{make_crossing(l, exit->key), *letter, ren, *next,
                     std::move(interior), {}};
    if (trace) {
      for (auto const& cand : all) {
        rec.trace.push_back(make_crossing(*cand.line, cand.key));
      }
    }
    return rec;
  }

  std::optional<Crossing> previous_exterior_geometric(SectionPoint const& sp,
                                                      BranchTable const& table,
                                                      unsigned bound) {
    auto fam = BoundaryFamily::get(table, bound);
    Ctx  ctx = make_ctx(sp.geodesic);
    auto [t0, h0] = representative_line(table, sp.line);
    if (!cyclic_exact(ctx.y, t0, ctx.x, h0)) {
      throw std::invalid_argument("section point does not lie on its line");
    }
    Key const start = crossing_key(ctx, t0, h0);
    auto      all   = positive_crossings(ctx, *fam);
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
      if (order(ctx, it->key, start) >= 0 || it->line->g.is_identity()) {
        continue;
      }
      return make_crossing(*it->line, it->key);
    }
    if (is_cusp(sp.geodesic.backward)) {
      return std::nullopt;
    }
    throw BoundExhausted("no exterior crossing before the section point "
                         "among translates of height <= "
                         + std::to_string(bound) + "; increase bound");
  }

}  // namespace cusp
