// Symbolic dynamics of the cusp-expansion cross section. Branch k has an
// interval D_k and an element h_k, and the generating map is
// F|_{D_k} = h_k⁻¹; F̃ acts on D̃ = ⋃ D_k × Y_k.
//
// Modular codings accelerate by run length to continued fractions.

#ifndef CUSP_DYNAMICS_HPP_
#define CUSP_DYNAMICS_HPP_

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "cusp/tessellation.hpp"

namespace cusp {

  // A letter of A = {−∞, −1, 0, 1, …, p}; −∞ is a sentinel value.
  using Letter                        = int;
  inline constexpr Letter kMinusInfty = INT_MIN;

  std::string to_string_letter(Letter k);
  // Accepts "-inf" and decimal integers.
  Letter parse_letter(std::string_view text);

  // Open interval (lo, hi) of R. ∞ as `lo` means −∞ and as `hi` means +∞,
  // so the single point ∞ is never a member.
  struct Interval {
    BoundaryValue lo, hi;

    friend bool operator==(Interval const&, Interval const&) = default;
  };

  enum class Membership { inside, outside, undecided };

  // Strict membership. `undecided` only for Approx points whose error
  // ball touches an endpoint.
  Membership membership(Interval const& I, BoundaryValue const& x);

  struct Branch {
    Letter       label;
    Interval     x;      // D_k
    Interval     y;      // Y_k with D̃_k = D_k × Y_k
    GroupElement h;      // h_k; F = h_k⁻¹ on D_k
    Interval     image;  // F(D_k)
  };

  struct BranchTable {
    unsigned            p;  // 1 for the modular preset
    bool                modular;
    std::vector<Branch> branches;

    Branch const& branch(Letter k) const;
  };

  // Throws std::invalid_argument for non-prime p.
  BranchTable branch_table(unsigned p);
  BranchTable modular_table();

  ////////////////////////////////////////////////////////////////////////
  // Errors
  ////////////////////////////////////////////////////////////////////////

  // x lies in the cusp orbit Γ{0, ∞}: a branch endpoint, or any rational
  // for Γ₀(p).
  class CuspPoint : public std::domain_error {
   public:
    explicit CuspPoint(BoundaryValue const& x);
    BoundaryValue const& point() const noexcept {
      return _x;
    }

   private:
    BoundaryValue _x;
  };

  // An Approx point came within its error bound of a branch endpoint.
  class PrecisionExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // The point is outside every branch interval (modular preset, x < 0) or
  // the pair is not in D̃.
  class NotOnSection : public std::domain_error {
   public:
    using std::domain_error::domain_error;
  };

  ////////////////////////////////////////////////////////////////////////
  // Maps
  ////////////////////////////////////////////////////////////////////////

  // The branch whose D_k contains x.
  Branch const& locate_branch(BranchTable const& table, BoundaryValue const& x);

  struct Step {
    BoundaryValue x;
    Letter        label;
  };

  Step apply_F(BranchTable const& table, BoundaryValue const& x);

  // Whether (x, y) ∈ D̃_k for the given branch.
  bool in_section_branch(Branch const& b, BoundaryValue const& x,
                         BoundaryValue const& y);

  struct StepPair {
    BoundaryValue x, y;
    Letter        label;
  };

  // F̃(x, y) = (h_k⁻¹x, h_k⁻¹y), k chosen by x. Throws NotOnSection if
  // y ∉ Y_k.
  StepPair apply_F_tilde(BranchTable const& table, BoundaryValue const& x,
                         BoundaryValue const& y);

  // The unique k with (h_k x, h_k y) ∈ D̃_k, or none. Throws
  // std::logic_error if more than one letter qualifies.
  std::optional<StepPair> apply_F_tilde_inverse(BranchTable const&   table,
                                                BoundaryValue const& x,
                                                BoundaryValue const& y);

  ////////////////////////////////////////////////////////////////////////
  // Coding
  ////////////////////////////////////////////////////////////////////////

  enum class Termination { cusp_hit, period, step_cap, precision_exhausted };
  std::string to_string(Termination t);

  struct CodingSequence {
    bool modular = false;
    bool two_sided = false;

    // Future letters a_0, a_1, …
    std::vector<Letter> letters;
    Termination         termination = Termination::step_cap;
    std::size_t         preperiod = 0, period = 0;  // set for `period`
    std::optional<BoundaryValue> cusp;              // set for `cusp_hit`
    // Orbit x_0, x_1, … (one more than letters when the orbit stopped at
    // a cusp).
    std::vector<BoundaryValue> states;

    // Past letters a_{−1}, a_{−2}, … for two-sided codings.
    std::vector<Letter> past;
    Termination         past_termination = Termination::step_cap;
  };

  CodingSequence code_future(BranchTable const& table, BoundaryValue const& x,
                             std::size_t max_steps);

  // Throws NotOnSection when (x, y) ∉ D̃.
  CodingSequence code_two_sided(BranchTable const& table,
                                BoundaryValue const& x, BoundaryValue const& y,
                                std::size_t n_future, std::size_t n_past);

  ////////////////////////////////////////////////////////////////////////
  // Continued fractions
  ////////////////////////////////////////////////////////////////////////

  // Regular continued fraction [a_0; a_1, …]. Finite expansions have an
  // empty period; `truncated` marks a step-capped input whose last run may
  // be incomplete (that run is dropped).
  struct ContinuedFraction {
    std::vector<Integer> preperiod;
    std::vector<Integer> period;
    bool                 truncated = false;

    friend bool operator==(ContinuedFraction const&,
                           ContinuedFraction const&) = default;
  };

  // Run-length encodes a modular coding. A cusp hit at 1 closes the last
  // run with one extra step; periodic codings yield the minimal
  // preperiod and period. Throws std::invalid_argument for Γ₀(p) codings.
  ContinuedFraction accelerate_to_cf(CodingSequence const& seq);

  std::string to_string(ContinuedFraction const& cf);

}  // namespace cusp

#endif  // CUSP_DYNAMICS_HPP_
