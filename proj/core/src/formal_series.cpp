#include "sewing/formal_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sewing/special_functions.hpp"

namespace sewing::formal {

int Generator::weight() const {
    switch (family) {
        case Family::E:
        case Family::F:
        case Family::P: return index;
        default: return 0;
    }
}

std::string Generator::name() const {
    switch (family) {
        case Family::T: return index == 0 ? "T" : "T" + std::to_string(index);
        case Family::W: return "w";
        case Family::L: return "L";
        case Family::E: return "E" + std::to_string(index);
        case Family::F: return "F" + std::to_string(index);
        case Family::P: return "P" + std::to_string(index);
    }
    return "?";
}

int Monomial::weight() const {
    int w = 0;
    for (const auto& [g, e] : factors) w += g.weight() * e;
    return w;
}

std::string Monomial::to_string() const {
    std::string s;
    for (const auto& [g, e] : factors) {
        if (!s.empty()) s += ' ';
        s += g.name();
        if (e != 1) s += '^' + std::to_string(e);
    }
    return s;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    auto i = a.factors.begin();
    auto j = b.factors.begin();
    while (i != a.factors.end() || j != b.factors.end()) {
        if (j == b.factors.end() || (i != a.factors.end() && i->first < j->first)) {
            out.factors.push_back(*i++);
        } else if (i == a.factors.end() || j->first < i->first) {
            out.factors.push_back(*j++);
        } else {
            out.factors.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

bool TermKey::operator<(const TermKey& o) const {
    if (half_power != o.half_power) return half_power < o.half_power;
    const int wa = mono.weight(), wb = o.mono.weight();
    if (wa != wb) return wa < wb;
    return mono.factors < o.mono.factors;
}

GradedPoly GradedPoly::constant(const Rational& c) { return term(c, 0); }

GradedPoly GradedPoly::generator(const Generator& g) { return term(1, 0, Monomial{{{g, 1}}}); }

GradedPoly GradedPoly::term(const Rational& c, int half_power, const Monomial& m) {
    if (half_power < 0) throw InvalidArgument("GradedPoly: negative parameter power");
    GradedPoly p;
    p.add_term(TermKey{half_power, m}, c);
    return p;
}

void GradedPoly::add_term(const TermKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

GradedPoly GradedPoly::operator-() const { return scaled(-1); }

GradedPoly GradedPoly::scaled(const Rational& c) const {
    GradedPoly out;
    if (c == 0) return out;
    for (const auto& [k, v] : terms_) out.terms_.emplace(k, v * c);
    return out;
}

GradedPoly GradedPoly::truncated(int max_half_power) const {
    GradedPoly out;
    for (const auto& [k, c] : terms_)
        if (k.half_power <= max_half_power) out.terms_.emplace(k, c);
    return out;
}

GradedPoly GradedPoly::mul_truncated(const GradedPoly& o, int max_half_power) const {
    GradedPoly out;
    for (const auto& [ka, ca] : terms_) {
        if (ka.half_power > max_half_power) break;
        for (const auto& [kb, cb] : o.terms_) {
            if (ka.half_power + kb.half_power > max_half_power) break;
            out.add_term(TermKey{ka.half_power + kb.half_power, ka.mono * kb.mono}, ca * cb);
        }
    }
    return out;
}

GradedPoly GradedPoly::coefficient(int half_power) const {
    GradedPoly out;
    for (const auto& [k, c] : terms_)
        if (k.half_power == half_power) out.terms_.emplace(TermKey{0, k.mono}, c);
    return out;
}

GradedPoly GradedPoly::shifted(int half_shift) const {
    GradedPoly out;
    for (const auto& [k, c] : terms_) {
        if (k.half_power + half_shift < 0) throw InvalidArgument("GradedPoly: negative parameter power");
        out.terms_.emplace(TermKey{k.half_power + half_shift, k.mono}, c);
    }
    return out;
}

GradedPoly GradedPoly::swap_tori() const {
    GradedPoly out;
    for (const auto& [k, c] : terms_) {
        Monomial m;
        for (auto [g, e] : k.mono.factors) {
            if (g.family == Family::E) g.family = Family::F;
            else if (g.family == Family::F) g.family = Family::E;
            else if (g.family == Family::T && g.index != 0) g.index = 3 - g.index;
            m = m * Monomial{{{g, e}}};
        }
        out.add_term(TermKey{k.half_power, m}, c);
    }
    return out;
}

bool GradedPoly::integral_powers() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.half_power % 2 == 0; });
}

int GradedPoly::max_half_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first.half_power; }

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

std::string GradedPoly::to_string(const std::string& param) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (s.empty()) {
            if (negative) s += "-";
        } else {
            s += negative ? " - " : " + ";
        }
        std::string body;
        const std::string mono = k.mono.to_string();
        std::string pw;
        if (k.half_power == 2) pw = param;
        else if (k.half_power % 2 == 0 && k.half_power > 0) pw = param + "^" + std::to_string(k.half_power / 2);
        else if (k.half_power % 2 == 1) pw = param + "^(" + std::to_string(k.half_power) + "/2)";
        if (mag != 1 || (mono.empty() && pw.empty())) body = rational_to_string(mag);
        for (const std::string& part : {mono, pw}) {
            if (part.empty()) continue;
            if (!body.empty()) body += ' ';
            body += part;
        }
        s += body;
    }
    return s;
}

GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    return a.mul_truncated(b, std::max(0, a.max_half_power() + b.max_half_power()));
}

Complex evaluate_series(const GradedPoly& s, const Assignment& values, Complex param) {
    if (s.empty()) return 0.0;
    std::vector<Complex> by_power(static_cast<std::size_t>(s.max_half_power()) + 1, 0.0);
    for (const auto& [k, c] : s.terms()) {
        Complex v = c.convert_to<double>();
        for (const auto& [g, e] : k.mono.factors) {
            const auto it = values.find(g);
            if (it == values.end()) throw UnassignedGenerator("evaluate_series: no value for " + g.name());
            v *= std::pow(it->second, e);
        }
        by_power[static_cast<std::size_t>(k.half_power)] += v;
    }
    const Complex root = std::sqrt(param);
    Complex acc = 0.0;
    for (auto it = by_power.rbegin(); it != by_power.rend(); ++it) acc = acc * root + *it;
    return acc;
}

Assignment eps_assignment(const Tau& tau1, const Tau& tau2, int max_weight, const SeriesTolerance& tol) {
    Assignment a;
    a[Generator::T(1)] = two_pi_i * tau1.value();
    a[Generator::T(2)] = two_pi_i * tau2.value();
    const auto e1 = eisenstein_table(max_weight, tau1, tol);
    const auto e2 = eisenstein_table(max_weight, tau2, tol);
    for (int k = 2; k <= max_weight; ++k) {
        a[Generator::E(k)] = e1[k];
        a[Generator::F(k)] = e2[k];
    }
    return a;
}

Assignment rho_assignment(const Tau& tau, Complex w, Complex rho, long long branch, int max_weight,
                          const SeriesTolerance& tol) {
    Assignment a;
    a[Generator::T()] = two_pi_i * tau.value();
    a[Generator::W()] = w;
    const Complex k = prime_form(tau, w, tol);
    a[Generator::L()] = std::log(-rho / (k * k)) + two_pi_i * static_cast<double>(branch);
    const auto e = eisenstein_table(max_weight, tau, tol);
    const auto p = weierstrass_p_all(max_weight, tau, w, tol);
    for (int n = 1; n <= max_weight; ++n) {
        if (n >= 2) a[Generator::E(n)] = e[n];
        a[Generator::P(n)] = p[n];
    }
    return a;
}

}  // namespace sewing::formal
