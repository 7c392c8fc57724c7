#pragma once

#include <nlohmann/json.hpp>

#include "graphknot/analysis.hpp"
#include "graphknot/degree_fit.hpp"
#include "graphknot/predict.hpp"
#include "graphknot/surfaces.hpp"

namespace graphknot {

using Json = nlohmann::ordered_json;

// Rationals are always written as "num/den" strings.
Json to_json(const QuasiPoly& qp);
Json to_json(const DeltaPrediction& d);
Json to_json(const SurfaceData& s);
Json to_json(const SSReport& r);
Json to_json(const SignProfile& s);
Json to_json(const ConditionDelta& c);
Json to_json(const ExpressionPrediction& p);
Json to_json(const MembershipReport& m);
Json to_json(const std::vector<DegreeRow>& rows);

// Inverse of to_json(QuasiPoly). Throws ValidationError on malformed input.
QuasiPoly quasi_from_json(const Json& j);

}  // namespace graphknot
