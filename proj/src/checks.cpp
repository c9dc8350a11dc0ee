#include "cusp/checks.hpp"

#include <cmath>
#include <sstream>

namespace cusp {

  long long Rng::between(long long lo, long long hi) {
    if (hi < lo) {
      throw std::invalid_argument("Rng::between: empty range");
    }
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(span == 0 ? next() : next() % span);
  }

  long double Rng::unit() {
    return static_cast<long double>(next() >> 11) * 0x1.0p-53L;
  }

  std::vector<long long> const& sample_radicands() {
    static std::vector<long long> const r{2,  3,  5,  6,  7,  10, 11, 13,
                                          14, 15, 17, 19, 21, 22, 23, 26};
    return r;
  }

  BoundaryValue random_surd_in(Interval const& I, Integer const& d, Rng& rng,
                               long double span) {
    if (I.lo.is_infinity() && I.hi.is_infinity()) {
      throw std::invalid_argument("random_surd_in: interval must have an end");
    }
    long double lo = I.lo.is_infinity() ? I.hi.to_long_double() - span
                                        : I.lo.to_long_double();
    long double hi = I.hi.is_infinity() ? I.lo.to_long_double() + span
                                        : I.hi.to_long_double();
    long double root = std::sqrt(d.convert_to<long double>());
    for (int attempt = 0; attempt < 1000; ++attempt) {
      long double u = lo + (hi - lo) * rng.unit();
      long long   c = rng.between(1, 60);
      long long   b = rng.between(1, 4) * (rng.between(0, 1) ? 1 : -1);
      auto a = static_cast<long long>(std::llround(c * u - b * root));
      BoundaryValue v = normalize_surd(a, b, c, d);
      if (v.is_surd() && membership(I, v) == Membership::inside) {
        return v;
      }
    }
    throw std::runtime_error("random_surd_in: no surd found in interval");
  }

  namespace {

    Integer floor_of(Rational const& r) {
      Integer n = boost::multiprecision::numerator(r);
      Integer d = boost::multiprecision::denominator(r);
      Integer f = n / d;
      if (n % d != 0 && n < 0) {
        --f;
      }
      return f;
    }

  }  // namespace

  Rational random_rational_in(Rational const& lo, Rational const& hi, Rng& rng,
                              long long max_den) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      long long den = rng.between(1, max_den);
      // Numerators strictly between lo·den and hi·den.
      Integer first = floor_of(lo * den) + 1;
      Integer last  = -floor_of(-hi * den) - 1;
      if (last < first) {
        continue;
      }
      Integer  pick = first + Integer(rng.next()) % (last - first + 1);
      Rational r(pick, den);
      if (lo < r && r < hi) {
        return r;
      }
    }
    throw std::runtime_error("random_rational_in: no rational found");
  }

  Geodesic random_section_geodesic(BranchTable const& table, Rng& rng) {
    auto const& radicands = sample_radicands();
    Branch const& b = table.branches[static_cast<std::size_t>(
        rng.between(0, static_cast<long long>(table.branches.size()) - 1))];
    Integer d = radicands[static_cast<std::size_t>(
        rng.between(0, static_cast<long long>(radicands.size()) - 1))];
    BoundaryValue x = random_surd_in(b.x, d, rng);
    BoundaryValue y = random_surd_in(b.y, d, rng);
    return Geodesic(y, x);
  }

  ConjugacyReport conjugacy_check(BranchTable const& table, unsigned samples,
                                  std::uint64_t seed, unsigned bound) {
    ConjugacyReport rep{table.p, table.modular, samples, bound, seed, 0, {}};
    Rng             rng(seed);
    for (unsigned i = 0; i < samples; ++i) {
      Geodesic        g = random_section_geodesic(table, rng);
      ConjugacySample s{g, 0, 0, false, {}};
      try {
        StepPair     sym = apply_F_tilde(table, g.forward, g.backward);
        SectionPoint sp  = section_point_for(g, table);
        ReturnRecord geo = first_return_geometric(sp, table, bound);
        s.symbolic_letter  = sym.label;
        s.geometric_letter = geo.letter;
        bool same_letter   = sym.label == geo.letter;
        bool same_x        = sym.x == geo.renormalized.forward;
        bool same_y        = sym.y == geo.renormalized.backward;
        s.match            = same_letter && same_x && same_y;
        if (!s.match) {
          s.detail = "letter " + to_string_letter(sym.label) + " vs "
                     + to_string_letter(geo.letter) + ", x' "
                     + to_string(sym.x) + " vs "
                     + to_string(geo.renormalized.forward) + ", y' "
                     + to_string(sym.y) + " vs "
                     + to_string(geo.renormalized.backward);
        }
      } catch (std::exception const& e) {
        s.detail = e.what();
      }
      rep.matches += s.match;
      rep.records.push_back(std::move(s));
    }
    return rep;
  }

  std::string to_text(ConjugacyReport const& r) {
    std::ostringstream os;
    os << "conjugacy-check " << (r.modular ? "modular" : "p=" + std::to_string(r.p))
       << " samples=" << r.samples << " seed=" << r.seed
       << " bound=" << r.bound << "\n";
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      auto const& s = r.records[i];
      if (!s.match) {
        os << "mismatch #" << i << " y=" << to_string(s.geodesic.backward)
           << " x=" << to_string(s.geodesic.forward) << ": " << s.detail
           << "\n";
      }
    }
    os << r.matches << "/" << r.samples << " branch and endpoint matches\n";
    return os.str();
  }

}  // namespace cusp
