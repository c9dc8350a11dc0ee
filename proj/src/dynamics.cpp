#include "cusp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cusp {

  namespace {

    // Side of `end` on which `x` lies: +1 above, −1 below, 0 undecided.
    int side_of(BoundaryValue const& x, BoundaryValue const& end) {
      if (x.is_approx()) {
        long double v = x.as_approx().value, e = x.as_approx().error;
        long double w = end.to_long_double();
        if (v - e > w) {
          return 1;
        }
        if (v + e < w) {
          return -1;
        }
        return 0;
      }
      switch (compare(x, end).order) {
        case Ordering::less:
          return -1;
        case Ordering::greater:
          return 1;
        case Ordering::equal:
          return 0;
      }
      return 0;
    }

    Branch make_branch(Letter label, Interval x, Interval y, GroupElement h) {
      GroupElement inv = h.inverse();
      Interval image{apply_boundary(inv, x.lo), apply_boundary(inv, x.hi)};
      if (!image.lo.is_infinity() && !image.hi.is_infinity()
          && !exact_less(image.lo, image.hi)) {
        throw std::logic_error("branch image is not an interval of R");
      }
      return {label, std::move(x), std::move(y), std::move(h),
              std::move(image)};
    }

    bool is_endpoint(BranchTable const& table, BoundaryValue const& x) {
      if (x.is_infinity()) {
        return true;
      }
      for (auto const& b : table.branches) {
        for (auto const* e : {&b.x.lo, &b.x.hi}) {
          if (!e->is_infinity() && x.is_exact()
              && compare(x, *e).order == Ordering::equal) {
            return true;
          }
        }
      }
      return false;
    }

    // Lengths of maximal constant blocks of letters[from, to).
    std::vector<Integer> runs(std::vector<Letter> const& letters,
                              std::size_t from, std::size_t to) {
      std::vector<Integer> out;
      std::size_t          i = from;
      while (i < to) {
        std::size_t j = i;
        while (j < to && letters[j] == letters[i]) {
          ++j;
        }
        out.push_back(Integer(j - i));
        i = j;
      }
      return out;
    }

  }  // namespace

  std::string to_string_letter(Letter k) {
    return k == kMinusInfty ? "-inf" : std::to_string(k);
  }

  Letter parse_letter(std::string_view text) {
    if (text == "-inf") {
      return kMinusInfty;
    }
    std::size_t pos = 0;
    int         v   = std::stoi(std::string(text), &pos);
    if (pos != text.size()) {
      throw std::invalid_argument("bad letter '" + std::string(text) + "'");
    }
    return v;
  }

  Membership membership(Interval const& I, BoundaryValue const& x) {
    if (x.is_infinity()) {
      return Membership::outside;
    }
    bool undecided = false;
    if (!I.lo.is_infinity()) {
      int s = side_of(x, I.lo);
      if (s < 0 || (s == 0 && x.is_exact())) {
        return Membership::outside;
      }
      undecided |= s == 0;
    }
    if (!I.hi.is_infinity()) {
      int s = side_of(x, I.hi);
      if (s > 0 || (s == 0 && x.is_exact())) {
        return Membership::outside;
      }
      undecided |= s == 0;
    }
    return undecided ? Membership::undecided : Membership::inside;
  }

  Branch const& BranchTable::branch(Letter k) const {
    for (auto const& b : branches) {
      if (b.label == k) {
        return b;
      }
    }
    throw std::out_of_range("no branch with label " + to_string_letter(k));
  }

  BranchTable branch_table(unsigned p) {
    if (!is_prime(p)) {
      throw std::invalid_argument("p = " + std::to_string(p)
                                  + " is not prime");
    }
    BoundaryValue const inf = BoundaryValue::infinity();
    auto                at  = [p](long long k) {
      return BoundaryValue(Rational(k, static_cast<long long>(p)));
    };
    Integer const P(p);

    BranchTable t{p, false, {}};
    GroupElement const h_neg(-1, 0, P, -1);
    t.branches.push_back(
        make_branch(kMinusInfty, {inf, at(-1)}, {at(0), inf}, h_neg));
    t.branches.push_back(make_branch(-1, {at(-1), at(0)}, {at(0), inf}, h_neg));
    t.branches.push_back(make_branch(0, {at(0), at(1)}, {inf, at(0)},
                                     GroupElement(1, 0, P, 1)));
    for (unsigned k = 1; k + 2 <= p; ++k) {
      unsigned c1 = p - inverse_mod(k + 1, p);  // (c−1)(k+1) ≡ −1
      t.branches.push_back(make_branch(static_cast<Letter>(k),
                                       {at(k), at(k + 1)}, {inf, at(k)},
                                       g_pair(p, c1)));
    }
    t.branches.push_back(make_branch(static_cast<Letter>(p - 1),
                                     {at(p - 1), at(p)}, {inf, at(p - 1)},
                                     g_pair(p, 1)));
    // Y_p stops at (p−1)/p rather than 1 so that F̃ stays injective: the
    // strip between would duplicate images of D̃_{p−1}.
    t.branches.push_back(make_branch(static_cast<Letter>(p), {at(p), inf},
                                     {inf, at(p - 1)},
                                     GroupElement::translation(1)));
    return t;
  }

  BranchTable modular_table() {
    BoundaryValue const inf = BoundaryValue::infinity();
    BranchTable         t{1, true, {}};
    t.branches.push_back(make_branch(0, {BoundaryValue(0), BoundaryValue(1)},
                                     {inf, BoundaryValue(0)},
                                     GroupElement(1, 0, 1, 1)));
    t.branches.push_back(make_branch(1, {BoundaryValue(1), inf},
                                     {inf, BoundaryValue(0)},
                                     GroupElement::translation(1)));
    return t;
  }

  CuspPoint::CuspPoint(BoundaryValue const& x)
      : std::domain_error("cusp-point: " + to_string(x)
                          + " lies in the cusp orbit"),
        _x(x) {}

  Branch const& locate_branch(BranchTable const& table,
                              BoundaryValue const& x) {
    if (!table.modular && x.is_rational()) {
      throw CuspPoint(x);
    }
    for (auto const& b : table.branches) {
      switch (membership(b.x, x)) {
        case Membership::inside:
          return b;
        case Membership::undecided:
          throw PrecisionExhausted("precision-exhausted: " + to_string(x)
                                   + " is within its error bound of an "
                                     "endpoint of D_"
                                   + to_string_letter(b.label));
        case Membership::outside:
          break;
      }
    }
    if (is_endpoint(table, x)) {
      throw CuspPoint(x);
    }
    throw NotOnSection(to_string(x) + " is outside every branch interval");
  }

  Step apply_F(BranchTable const& table, BoundaryValue const& x) {
    Branch const& b = locate_branch(table, x);
    return {apply_boundary(b.h.inverse(), x), b.label};
  }

  bool in_section_branch(Branch const& b, BoundaryValue const& x,
                         BoundaryValue const& y) {
    Membership mx = membership(b.x, x), my = membership(b.y, y);
    if (mx == Membership::outside || my == Membership::outside) {
      return false;
    }
    if (mx == Membership::undecided || my == Membership::undecided) {
      throw PrecisionExhausted("precision-exhausted: membership in D~_"
                               + to_string_letter(b.label) + " undecided");
    }
    return true;
  }

  StepPair apply_F_tilde(BranchTable const& table, BoundaryValue const& x,
                         BoundaryValue const& y) {
    Branch const& b = locate_branch(table, x);
    if (!in_section_branch(b, x, y)) {
      throw NotOnSection("not on reduced cross section: y = " + to_string(y)
                         + " outside Y_" + to_string_letter(b.label));
    }
    GroupElement inv = b.h.inverse();
    return {apply_boundary(inv, x), apply_boundary(inv, y), b.label};
  }

  std::optional<StepPair> apply_F_tilde_inverse(BranchTable const&   table,
                                                BoundaryValue const& x,
                                                BoundaryValue const& y) {
    std::optional<StepPair> found;
    for (auto const& b : table.branches) {
      BoundaryValue hx = apply_boundary(b.h, x);
      BoundaryValue hy = apply_boundary(b.h, y);
      if (in_section_branch(b, hx, hy)) {
        if (found) {
          throw std::logic_error("past letter not unique: both "
                                 + to_string_letter(found->label) + " and "
                                 + to_string_letter(b.label) + " qualify");
        }
        found = StepPair{hx, hy, b.label};
      }
    }
    return found;
  }

  std::string to_string(Termination t) {
    switch (t) {
      case Termination::cusp_hit:
        return "cusp-hit";
      case Termination::period:
        return "period";
      case Termination::step_cap:
        return "step-cap";
      case Termination::precision_exhausted:
        return "precision-exhausted";
    }
    return {};
  }

  CodingSequence code_future(BranchTable const& table, BoundaryValue const& x,
                             std::size_t max_steps) {
    if (max_steps < 1) {
      throw std::invalid_argument("code_future: max_steps must be >= 1");
    }
    CodingSequence                     seq;
    seq.modular = table.modular;
    std::map<std::string, std::size_t> seen;
    BoundaryValue                      cur = x;
    seq.termination                        = Termination::step_cap;
    for (std::size_t n = 0;; ++n) {
      seq.states.push_back(cur);
      if (cur.is_exact()) {
        auto [it, fresh] = seen.emplace(to_string(cur), n);
        if (!fresh) {
          seq.termination = Termination::period;
          seq.preperiod   = it->second;
          seq.period      = n - it->second;
          seq.states.pop_back();
          break;
        }
      }
      if (n == max_steps) {
        seq.states.pop_back();
        break;
      }
      try {
        Step s = apply_F(table, cur);
        seq.letters.push_back(s.label);
        cur = s.x;
      } catch (CuspPoint const& e) {
        seq.termination = Termination::cusp_hit;
        seq.cusp        = e.point();
        break;
      } catch (PrecisionExhausted const&) {
        seq.termination = Termination::precision_exhausted;
        break;
      }
    }
    return seq;
  }

  CodingSequence code_two_sided(BranchTable const& table,
                                BoundaryValue const& x, BoundaryValue const& y,
                                std::size_t n_future, std::size_t n_past) {
    try {
      Branch const& b = locate_branch(table, x);
      if (!in_section_branch(b, x, y)) {
        throw NotOnSection("not on reduced cross section: y outside Y_"
                           + to_string_letter(b.label));
      }
    } catch (CuspPoint const&) {
      throw NotOnSection("not on reduced cross section: x = " + to_string(x)
                         + " is a cusp point");
    }

    CodingSequence seq;
    seq.modular   = table.modular;
    seq.two_sided = true;

    std::map<std::string, std::size_t> seen;
    BoundaryValue                      cx = x, cy = y;
    seq.termination                       = Termination::step_cap;
    bool periodic                         = false;
    for (std::size_t n = 0; n < n_future; ++n) {
      seq.states.push_back(cx);
      if (!periodic && cx.is_exact() && cy.is_exact()) {
        auto [it, fresh] = seen.emplace(to_string(cx) + "|" + to_string(cy), n);
        if (!fresh) {
          periodic      = true;
          seq.preperiod = it->second;
          seq.period    = n - it->second;
        }
      }
      try {
        StepPair s = apply_F_tilde(table, cx, cy);
        seq.letters.push_back(s.label);
        cx = s.x;
        cy = s.y;
      } catch (CuspPoint const& e) {
        seq.termination = Termination::cusp_hit;
        seq.cusp        = e.point();
        break;
      } catch (PrecisionExhausted const&) {
        seq.termination = Termination::precision_exhausted;
        break;
      }
    }
    if (periodic && seq.termination == Termination::step_cap) {
      seq.termination = Termination::period;
    }

    cx                   = x;
    cy                   = y;
    seq.past_termination = Termination::step_cap;
    for (std::size_t n = 0; n < n_past; ++n) {
      try {
        auto prev = apply_F_tilde_inverse(table, cx, cy);
        if (!prev) {
          seq.past_termination = Termination::cusp_hit;
          break;
        }
        seq.past.push_back(prev->label);
        cx = prev->x;
        cy = prev->y;
      } catch (PrecisionExhausted const&) {
        seq.past_termination = Termination::precision_exhausted;
        break;
      }
    }
    return seq;
  }

  ContinuedFraction accelerate_to_cf(CodingSequence const& seq) {
    if (!seq.modular) {
      throw std::invalid_argument(
          "accelerate_to_cf: only defined for the modular preset");
    }
    ContinuedFraction   cf;
    auto const&         L      = seq.letters;
    bool const          lead_0 = !L.empty() && L.front() == 0;
    std::vector<Integer> digits;

    switch (seq.termination) {
      case Termination::cusp_hit: {
        if (!seq.cusp) {
          throw std::invalid_argument("accelerate_to_cf: missing cusp");
        }
        if (*seq.cusp == BoundaryValue(1)) {
          digits = runs(L, 0, L.size());
          if (digits.empty()) {
            digits.push_back(1);
          } else {
            digits.back() += 1;
          }
        } else if (*seq.cusp == BoundaryValue(0) && L.empty()) {
          cf.preperiod.push_back(0);
          return cf;
        } else {
          throw std::invalid_argument(
              "accelerate_to_cf: coded point is not positive");
        }
        break;
      }
      case Termination::period: {
        std::size_t const l = seq.preperiod, m = seq.period;
        auto letter = [&](std::size_t i) {
          return i < l + m ? L[i] : L[l + (i - l) % m];
        };
        std::size_t b = l + 1;
        while (b <= l + m + 1 && letter(b) == letter(b - 1)) {
          ++b;
        }
        if (b > l + m + 1) {
          throw std::invalid_argument(
              "accelerate_to_cf: constant periodic tail has no digits");
        }
        std::vector<Letter> window;
        for (std::size_t i = 0; i < b + m; ++i) {
          window.push_back(letter(i));
        }
        digits                 = runs(window, 0, b);
        std::vector<Integer> P = runs(window, b, b + m);
        // Minimal period.
        for (std::size_t d = 1; d <= P.size(); ++d) {
          if (P.size() % d != 0) {
            continue;
          }
          bool ok = true;
          for (std::size_t i = d; i < P.size() && ok; ++i) {
            ok = P[i] == P[i - d];
          }
          if (ok) {
            P.resize(d);
            break;
          }
        }
        if (lead_0) {
          digits.insert(digits.begin(), Integer(0));
        }
        // Minimal preperiod.
        while (!digits.empty() && digits.back() == P.back()
               && !(lead_0 && digits.size() == 1)) {
          digits.pop_back();
          std::rotate(P.rbegin(), P.rbegin() + 1, P.rend());
        }
        cf.preperiod = std::move(digits);
        cf.period    = std::move(P);
        return cf;
      }
      case Termination::step_cap:
      case Termination::precision_exhausted: {
        digits = runs(L, 0, L.size());
        if (!digits.empty()) {
          digits.pop_back();
        }
        cf.truncated = true;
        break;
      }
    }
    if (lead_0) {
      digits.insert(digits.begin(), Integer(0));
    }
    cf.preperiod = std::move(digits);
    return cf;
  }

  std::string to_string(ContinuedFraction const& cf) {
    std::string out = "[";
    std::size_t i   = 0;
    auto        sep = [&]() -> std::string {
      return i == 1 ? ";" : (i == 0 ? "" : ",");
    };
    for (auto const& d : cf.preperiod) {
      out += sep() + d.str();
      ++i;
    }
    if (!cf.period.empty()) {
      out += sep() + "(";
      for (std::size_t j = 0; j < cf.period.size(); ++j) {
        out += (j ? "," : "") + cf.period[j].str();
      }
      out += ")";
    }
    if (cf.truncated) {
      out += sep() + "...";
    }
    return out + "]";
  }

}  // namespace cusp
