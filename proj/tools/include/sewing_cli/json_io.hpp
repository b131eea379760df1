#pragma once

#include <string>

#include <json.hpp>

#include "sewing/epsilon_sewing.hpp"
#include "sewing/formal_series.hpp"
#include "sewing/rho_sewing.hpp"
#include "sewing/sphere_models.hpp"

namespace sewing::cli {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accepts "a+bi", "a-bi", "bi", "i", "-i", "a", "2.5e-3-1e-2i", with optional
// surrounding parentheses and spaces. "j" is accepted for the imaginary unit.
Complex parse_complex(const std::string& text, const std::string& flag);

Json to_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const PeriodMatrix& omega);
PeriodMatrix period_matrix_from_json(const Json& j);

Json to_json(const EpsPoint& p);
Json to_json(const RhoPoint& p);
Json to_json(const ChiPoint& p);
Json to_json(const VerificationReport& r);

// {"text": "...", "terms": [{"coefficient": "6", "power": 6, "generators": {"E4": 1}}]}
Json to_json(const formal::GradedPoly& s, const std::string& param);

}  // namespace sewing::cli
