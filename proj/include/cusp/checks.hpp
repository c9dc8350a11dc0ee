// Seeded sampling of exact boundary points and geodesics, and the
// comparison of the symbolic map F̃ against the geometric first return.

#ifndef CUSP_CHECKS_HPP_
#define CUSP_CHECKS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cusp/flow_oracle.hpp"

namespace cusp {

  // Platform-independent draws from mt19937_64 (the standard
  // distributions are implementation-defined).
  class Rng {
   public:
    explicit Rng(std::uint64_t seed) : _eng(seed) {}

    std::uint64_t next() {
      return _eng();
    }
    // Uniform integer in [lo, hi].
    long long between(long long lo, long long hi);
    // Uniform in [0, 1).
    long double unit();

   private:
    std::mt19937_64 _eng;
  };

  // Squarefree radicands used for random surds.
  std::vector<long long> const& sample_radicands();

  // A random surd (a + b√d)/c strictly inside I. Unbounded ends are cut
  // `span` units away from the finite end. Throws std::runtime_error if
  // no point is found.
  BoundaryValue random_surd_in(Interval const& I, Integer const& d, Rng& rng,
                               long double span = 4);

  // A random rational strictly inside the bounded interval (lo, hi).
  Rational random_rational_in(Rational const& lo, Rational const& hi, Rng& rng,
                              long long max_den = 200);

  // A geodesic from y to x with (x, y) ∈ D̃_k for a uniformly drawn
  // branch k, both endpoints in the same field Q(√d).
  Geodesic random_section_geodesic(BranchTable const& table, Rng& rng);

  struct ConjugacySample {
    Geodesic    geodesic;
    Letter      symbolic_letter = 0, geometric_letter = 0;
    bool        match = false;
    std::string detail;  // mismatch or error description
  };

  struct ConjugacyReport {
    unsigned                     p;
    bool                         modular;
    unsigned                     samples, bound;
    std::uint64_t                seed;
    std::size_t                  matches = 0;
    std::vector<ConjugacySample> records;

    bool passed() const {
      return matches == samples;
    }
  };

  ConjugacyReport conjugacy_check(BranchTable const& table, unsigned samples,
                                  std::uint64_t seed, unsigned bound = 50);

  // Deterministic text report ending in "N/N branch and endpoint matches".
  std::string to_text(ConjugacyReport const& r);

}  // namespace cusp

#endif  // CUSP_CHECKS_HPP_
