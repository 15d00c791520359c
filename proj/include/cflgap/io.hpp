#pragma once

#include <string>

#include <json.hpp>

#include "cflgap/certify.hpp"

namespace cflgap::io {

/// Documents keep insertion order so files read like the structs they mirror.
using Json = nlohmann::ordered_json;

// Rationals are "p/q" strings in lowest terms; big integers are decimal strings.
Json rational(const Rational& r);
Rational rational_from(const Json& j);

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json core_index_to_json(const CoreIndex& index);
CoreIndex core_index_from_json(const Json& j, const Instance& inst);

/// `repr` is "dense" (y array, sparse x triplets [i, j, "p/q"] of nonzeros) or
/// "classed" (facility class labels, client cuts, per-cell values).
Json vector_to_json(const FracVector& v);
FracVector vector_from_json(const Json& j);

/// Core file: the instance, the core index and its core vector.
struct CoreFile {
  Instance instance;
  CoreIndex index;
  FracVector vector;
};
Json core_file_to_json(const Instance& inst, const CoreIndex& index);
CoreFile core_file_from_json(const Json& j);

Json solution_to_json(const IntSolution& sol);
IntSolution solution_from_json(const Json& j);

Json outcome_class_to_json(const OutcomeClass& cls);
Json midpoint_certificate_to_json(const MidpointCertificate& cert);
Json lp_report_to_json(const LpReport& report);
Json census_to_json(const CensusReport& report);
Json mc_to_json(const McEstimate& mc);
Json lower_bound_to_json(const LowerBound& lb, const CoreShape& shape);
Json gap_certificate_to_json(const GapCertificate& cert);
Json membership_to_json(const MembershipResult& result);
Json violations_to_json(const std::vector<ParamViolation>& violations);

Json read_file(const std::string& path);
/// Pretty-printed with a trailing newline; throws Error (io) on failure.
void write_file(const std::string& path, const Json& doc);
std::string dump(const Json& doc);

}  // namespace cflgap::io
