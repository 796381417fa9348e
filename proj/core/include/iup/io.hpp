#pragma once

#include "iup/catalog.hpp"
#include "iup/orbit.hpp"

#include <json.hpp>

namespace iup {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const ExtRational& x);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const CoefficientMatrix& alpha);
Json to_json(const ConstraintMatrix& m);
Json to_json(const SymmetryTransform& s, const AlphaPtr& alpha = nullptr);
Json to_json(const std::vector<Atom>& atoms);
Json to_json(const PiecewiseAffineMap& map);
Json to_json(const ConditioningProblem& p);
Json to_json(const VerificationReport& r);
Json to_json(const ClusterReport& r);
Json to_json(const CatalogEntry& e);

Rational rational_from_json(const Json& j);
ExtRational ext_rational_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
AlphaPtr alpha_from_json(const Json& j);
ConstraintMatrix constraint_matrix_from_json(const Json& j, const AlphaPtr& alpha);
SymmetryTransform symmetry_from_json(const Json& j);
std::vector<SymmetryTransform> symmetries_from_json(const Json& j);
PiecewiseAffineMap map_from_json(const Json& j, const AlphaPtr& alpha);
ConditioningProblem problem_from_json(const Json& j);
// Reads a bundle written by to_json(CatalogEntry).
CatalogEntry catalog_entry_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Orbit CSV: header x1..xd,atom; RFC-4180 quoting for the label column.
void write_orbit_csv(const std::string& path, const Orbit& orbit);
Orbit read_orbit_csv(const std::string& path);

}  // namespace iup
