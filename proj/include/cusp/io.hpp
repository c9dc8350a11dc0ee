// JSON views of the library objects. Every exact value is written in the
// boundary-value grammar so that it reparses to an equal value; each
// top-level document carries "schema": 1. Intervals follow the library
// convention: "lo": "inf" stands for −∞ and "hi": "inf" for +∞.

#ifndef CUSP_IO_HPP_
#define CUSP_IO_HPP_

#include <json.hpp>

#include "cusp/checks.hpp"
#include "cusp/tessellation.hpp"
#include "cusp/transfer.hpp"

namespace cusp {

  using Json = nlohmann::ordered_json;

  inline constexpr int kSchemaVersion = 1;

  Json to_json(GroupElement const& g);
  Json to_json(Interval const& I);
  Json to_json(FordDomain const& d);
  Json to_json(ModularDomain const& d);
  Json to_json(BranchTable const& t);
  Json to_json(CodingSequence const& s, bool trace = false);
  Json to_json(ContinuedFraction const& cf);
  Json to_json(Crossing const& c);
  Json to_json(ReturnRecord const& r, bool trace = false);
  Json to_json(ConjugacyReport const& r);
  Json to_json(Complex z);

  // Wraps a payload as {"schema": 1, "kind": kind, ...payload}.
  Json document(std::string const& kind, Json payload);

  // All string values in `j` that start with a boundary-value tag
  // (rat:, surd:, inf, approx:).
  std::vector<std::string> exact_value_strings(Json const& j);

}  // namespace cusp

#endif  // CUSP_IO_HPP_
