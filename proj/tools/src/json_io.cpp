#include "sewing_cli/json_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace sewing::cli {
namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    if (out.size() >= 2 && out.front() == '(' && out.back() == ')') out = out.substr(1, out.size() - 2);
    return out;
}

// Parses a real number occupying the whole of s; an empty or bare sign
// string stands for the unit coefficient of an imaginary part.
bool parse_real(const std::string& s, double& out, bool allow_unit) {
    if (allow_unit && (s.empty() || s == "+" || s == "-")) {
        out = (s == "-") ? -1.0 : 1.0;
        return true;
    }
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

Complex parse_complex(const std::string& text, const std::string& flag) {
    const std::string s = strip(text);
    auto fail = [&]() -> Complex { throw ParseError("--" + flag + ": cannot parse complex value '" + text + "'"); };
    if (s.empty()) return fail();
    double re = 0.0, im = 0.0;
    const char last = static_cast<char>(std::tolower(static_cast<unsigned char>(s.back())));
    if (last != 'i' && last != 'j') {
        if (!parse_real(s, re, false)) return fail();
    } else {
        const std::string body = s.substr(0, s.size() - 1);
        // split at the last sign that is not part of an exponent
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') && std::tolower(static_cast<unsigned char>(body[i - 1])) != 'e') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            if (!parse_real(body, im, true)) return fail();
        } else {
            if (!parse_real(body.substr(0, split), re, false)) return fail();
            if (!parse_real(body.substr(split), im, true)) return fail();
        }
    }
    if (!std::isfinite(re) || !std::isfinite(im)) return fail();
    return {re, im};
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

Json to_json(const PeriodMatrix& omega) {
    return Json{{"omega11", to_json(omega.omega11)}, {"omega12", to_json(omega.omega12)},
                {"omega22", to_json(omega.omega22)}};
}

PeriodMatrix period_matrix_from_json(const Json& j) {
    return {complex_from_json(j.at("omega11")), complex_from_json(j.at("omega12")),
            complex_from_json(j.at("omega22"))};
}

Json to_json(const EpsPoint& p) {
    return Json{{"tau1", to_json(p.tau1.value())}, {"tau2", to_json(p.tau2.value())}, {"eps", to_json(p.eps)}};
}

Json to_json(const RhoPoint& p) {
    return Json{{"tau", to_json(p.tau.value())}, {"w", to_json(p.w)}, {"rho", to_json(p.rho)}, {"branch", p.branch}};
}

Json to_json(const ChiPoint& p) {
    return Json{{"tau", to_json(p.tau.value())}, {"w", to_json(p.w)}, {"chi", to_json(p.chi)}};
}

Json to_json(const VerificationReport& r) {
    Json res = Json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    return Json{{"residuals", res}, {"margin", r.margin}, {"order", r.order}};
}

Json to_json(const formal::GradedPoly& s, const std::string& param) {
    Json terms = Json::array();
    for (const auto& [key, c] : s.terms()) {
        Json gens = Json::object();
        for (const auto& [g, e] : key.mono.factors) gens[g.name()] = e;
        Json power = key.half_power % 2 == 0 ? Json(key.half_power / 2) : Json(key.half_power / 2.0);
        terms.push_back(Json{{"coefficient", formal::rational_to_string(c)}, {"power", power}, {"generators", gens}});
    }
    return Json{{"text", s.to_string(param)}, {"terms", terms}};
}

}  // namespace sewing::cli
