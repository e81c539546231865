#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "qpmut/algebra.hpp"
#include "qpmut/graded_qp.hpp"
#include "qpmut/invariants.hpp"
#include "qpmut/mutation.hpp"

namespace qpmut {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become QpError(Parse) with the byte offset.
Json parse_json(std::string_view text, const std::string& what = "document");

/// QP document. Errors carry a JSON-pointer prefix such as "/arrows/2/src".
GradedQP qp_from_json(const Json& doc);
Json qp_to_json(const GradedQP& qp);
GradedQP parse_qp(std::string_view text);
/// Canonical text: two-space indentation and a trailing newline.
std::string dump(const Json& doc);

Json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const Json& doc, const std::string& where = "");

/// {"arrow": degree, ...}; a full QP document is also accepted.
DegreeMap degrees_from_json(const Json& doc);
Json degrees_to_json(const DegreeMap& d);

MutationSequence sequence_from_json(const Json& doc);
Json step_to_json(const MutationStep& s);
Json sequence_to_json(const MutationSequence& s);

PresentedAlgebra algebra_from_json(const Json& doc);
Json algebra_to_json(const PresentedAlgebra& alg);

Json potential_to_json(const Potential& w);
Json path_sum_to_json(const PathSum& sum);
Json cycle_to_json(const UndirectedCycle& c);
Json weight_to_json(const WeightResult& w);
Json grading_verdict_to_json(const GradingVerdict& v);
Json ar_summary_to_json(const ArSummary& s);
Json polynomial_to_json(const Polynomial& p);

}  // namespace qpmut
