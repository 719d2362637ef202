#pragma once

#include <vector>

#include <json.hpp>

#include "krein/functions.hpp"

namespace krein::io {

using Json = nlohmann::ordered_json;

// {"rows", "cols", "data": [[re, im], ...]} row-major.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const Tolerance& t);
Tolerance tolerance_from_json(const Json& j);

Json to_json(const HermitianContractionData& d);
HermitianContractionData data_from_json(const Json& j, const Tolerance& tol = {});

// Selfadjoint exit parameters only; x21 is x12*.
Json to_json(const ExitParameter& x);
ExitParameter exit_from_json(const Json& j);

Json to_json(const PassiveSystem& s);
PassiveSystem system_from_json(const Json& j);

Json to_json(const LinearRelation& r);
LinearRelation relation_from_json(const Json& j);

Json to_json(cplx z);
cplx complex_from_json(const Json& j);

// {"points": [[re, im], ...]}
std::vector<cplx> points_from_json(const Json& j);

}  // namespace krein::io
