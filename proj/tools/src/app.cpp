#include "sewing_cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sewing/special_functions.hpp"
#include "sewing_cli/json_io.hpp"

namespace sewing::cli {
namespace {

const char* command_name(Command c) {
    switch (c) {
        case Command::eisenstein: return "eisenstein";
        case Command::period_eps: return "period-eps";
        case Command::period_rho: return "period-rho";
        case Command::necklace: return "necklace";
        case Command::invert: return "invert";
        case Command::equivariance: return "equivariance";
        case Command::catalan: return "catalan";
        case Command::appendix_series: return "appendix-series";
        case Command::map_rho_to_eps: return "map-rho-to-eps";
        case Command::sweep: return "sweep";
    }
    return "?";
}

Complex value(const RunConfig& c, const std::string& name) {
    const auto it = c.values.find(name);
    if (it == c.values.end()) throw ParseError("--" + name + ": required");
    return parse_complex(it->second, name);
}

Tau tau_value(const RunConfig& c, const std::string& name) {
    const Complex z = value(c, name);
    if (!(z.imag() > 0.0)) throw ParseError("--" + name + ": imaginary part must be positive");
    return Tau(z);
}

SeriesTolerance tolerance(const RunConfig& c) {
    SeriesTolerance t;
    t.abs_tol = c.tol;
    if (!(c.tol > 0.0)) throw ParseError("--tol: must be positive");
    return t;
}

void check_order(const RunConfig& c) {
    if (c.order < 1) throw ParseError("--order: must be >= 1");
}

const std::string& require_formalism(const RunConfig& c, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (c.formalism == a) return c.formalism;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : "|") + a;
    throw ParseError("--formalism: expected one of " + list);
}

Json header(const RunConfig& c) { return Json{{"command", command_name(c.command)}}; }

EpsPoint eps_point(const RunConfig& c) { return {tau_value(c, "tau1"), tau_value(c, "tau2"), value(c, "eps")}; }

RhoPoint rho_point(const RunConfig& c) { return {tau_value(c, "tau"), value(c, "w"), value(c, "rho"), c.branch}; }

ChiPoint chi_point(const RunConfig& c) { return {tau_value(c, "tau"), value(c, "w"), value(c, "chi")}; }

Json cmd_eisenstein(const RunConfig& c) {
    const Tau tau = tau_value(c, "tau");
    if (c.k < 1) throw ParseError("--k: must be >= 1");
    Json j = header(c);
    j["k"] = c.k;
    j["tau"] = to_json(tau.value());
    j["value"] = to_json(eisenstein(c.k, tau, tolerance(c)));
    j["margin"] = std::abs(tau.nome());
    j["order"] = c.k;
    return j;
}

Json cmd_period_eps(const RunConfig& c) {
    check_order(c);
    const EpsPoint p = eps_point(c);
    const EpsEvaluation ev = evaluate_eps(p, c.order, tolerance(c));
    Json j = header(c);
    j["input"] = to_json(p);
    j["order"] = ev.order;
    j["margin"] = ev.margin;
    j["period_matrix"] = to_json(ev.omega);
    j["omega12_dual"] = to_json(ev.omega12_dual);
    j["siegel"] = ev.omega.in_siegel_space();
    return j;
}

Json cmd_period_rho(const RunConfig& c) {
    check_order(c);
    const RhoPoint p = rho_point(c);
    const RhoEvaluation ev = evaluate_rho(p, c.order, tolerance(c));
    Json j = header(c);
    j["input"] = to_json(p);
    j["order"] = ev.order;
    j["margin"] = ev.margin;
    j["period_matrix"] = to_json(ev.omega);
    j["log_term"] = to_json(ev.log_term);
    j["siegel"] = ev.omega.in_siegel_space();
    return j;
}

Json cmd_necklace(const RunConfig& c) {
    check_order(c);
    const std::string& f = require_formalism(c, {"eps", "rho"});
    if (c.max_order < 0) throw ParseError("--max-order: must be >= 0");
    const SeriesTolerance tol = tolerance(c);
    Json j = header(c);
    j["formalism"] = f;
    if (f == "eps") {
        const EpsPoint p = eps_point(c);
        const PeriodMatrix nk = necklace_period_eps(p, c.max_order, tol);
        const EpsEvaluation ev = evaluate_eps(p, c.order, tol);
        long long count = 0;
        for (auto [a, b] : {std::pair{2, 2}, std::pair{1, 2}, std::pair{1, 1}})
            count += static_cast<long long>(enumerate_necklaces_eps(a, b, c.max_order).size());
        j["input"] = to_json(p);
        j["max_order"] = c.max_order;
        j["necklaces"] = count;
        j["period_matrix"] = to_json(nk);
        j["matrix_route"] = to_json(ev.omega);
        j["difference"] = max_entry_diff(nk, ev.omega);
        j["margin"] = ev.margin;
    } else {
        const RhoPoint p = rho_point(c);
        const RhoNecklaceSums s = necklace_sums_rho(p, c.max_order, tol);
        const PeriodMatrix nk = necklace_period_rho(p, c.max_order, tol);
        const RhoEvaluation ev = evaluate_rho(p, c.order, tol);
        j["input"] = to_json(p);
        j["max_order"] = c.max_order;
        j["paths"] = s.count;
        j["omega_beta1"] = to_json(s.omega_beta1);
        j["omega_1betabar"] = to_json(s.omega_1betabar);
        j["period_matrix"] = to_json(nk);
        j["matrix_route"] = to_json(ev.omega);
        j["difference"] = max_entry_diff(nk, ev.omega);
        j["margin"] = ev.margin;
    }
    j["order"] = c.order;
    return j;
}

PeriodMatrix target_matrix(const RunConfig& c) {
    return {value(c, "omega11"), value(c, "omega12"), value(c, "omega22")};
}

Json cmd_invert(const RunConfig& c) {
    check_order(c);
    const std::string& f = require_formalism(c, {"eps", "chi"});
    if (!(c.newton_tol > 0.0)) throw ParseError("--newton-tol: must be positive");
    const PeriodMatrix target = target_matrix(c);
    const SeriesTolerance tol = tolerance(c);
    Json j = header(c);
    j["formalism"] = f;
    j["target"] = to_json(target);
    if (f == "eps") {
        const EpsInversion r = invert_eps_report(target, {}, c.newton_tol, c.order, tol);
        j["point"] = to_json(r.point);
        j["residual"] = r.residual;
        j["iterations"] = r.iterations;
        j["margin"] = in_domain_eps(r.point).margin;
    } else {
        const ChiInversion r = invert_chi_report(target, {}, c.newton_tol, c.order, tol);
        j["point"] = to_json(r.point);
        j["residual"] = r.residual;
        j["iterations"] = r.iterations;
        j["margin"] = in_domain_chi(r.point).margin;
    }
    j["order"] = c.order;
    return j;
}

Json cmd_equivariance(const RunConfig& c) {
    check_order(c);
    const std::string& f = require_formalism(c, {"eps", "rho"});
    const SeriesTolerance tol = tolerance(c);
    Json j = header(c);
    j["formalism"] = f;
    Json rows = Json::array();
    double worst = 0.0;
    if (f == "eps") {
        const EpsPoint p = eps_point(c);
        const std::vector<std::pair<std::string, GElement>> gens = {
            {"S1", GElement::gamma1(SL2::S())}, {"T1", GElement::gamma1(SL2::T())},
            {"S2", GElement::gamma2(SL2::S())}, {"T2", GElement::gamma2(SL2::T())},
            {"beta", GElement::beta()}};
        j["input"] = to_json(p);
        j["margin"] = in_domain_eps(p).margin;
        for (const auto& [name, g] : gens) {
            const double r = equivariance_residual_eps(g, p, c.order, tol);
            worst = std::max(worst, r);
            rows.push_back(Json{{"generator", name}, {"residual", r}});
        }
    } else {
        const RhoPoint p = rho_point(c);
        const std::vector<std::pair<std::string, LElement>> gens = {
            {"mu(1,0,0)", LElement::heisenberg(1, 0, 0)}, {"mu(0,1,0)", LElement::heisenberg(0, 1, 0)},
            {"mu(0,0,1)", LElement::heisenberg(0, 0, 1)}, {"T", LElement::gamma(SL2::T())},
            {"S", LElement::gamma(SL2::S())}};
        j["input"] = to_json(p);
        j["margin"] = in_domain_rho(p).margin;
        for (const auto& [name, g] : gens) {
            const RhoPoint image = l_action_rho(g, p, tol);
            const double r = equivariance_residual_rho(g, p, c.order, tol);
            worst = std::max(worst, r);
            rows.push_back(Json{{"generator", name}, {"residual", r}, {"image_branch", image.branch}});
        }
    }
    j["residuals"] = rows;
    j["max_residual"] = worst;
    j["order"] = c.order;
    return j;
}

Json cmd_catalan(const RunConfig& c) {
    check_order(c);
    const Complex chi = value(c, "chi");
    const Complex f = catalan_f(chi);
    Json j = header(c);
    j["chi"] = to_json(chi);
    j["f"] = to_json(f);
    if (chi != 0.0) {
        j["log_f"] = to_json(log_catalan_f(chi));
        j["q_computed"] = to_json(torus_modulus_catalan(chi, c.order));
        j["e2_from_catalan"] = to_json(e2_from_catalan(chi, c.order));
        j["e2_qseries"] = to_json(eisenstein_from_nome(2, f, tolerance(c)));
        const VerificationReport rep = catalan_report(chi, c.order);
        j["report"] = to_json(rep);
        j["margin"] = rep.margin;
    } else {
        j["margin"] = 0.0;
    }
    j["order"] = c.order;
    return j;
}

Json cmd_map_rho_to_eps(const RunConfig& c) {
    check_order(c);
    if (!(c.newton_tol > 0.0)) throw ParseError("--newton-tol: must be positive");
    const ChiPoint p = chi_point(c);
    const SeriesTolerance tol = tolerance(c);
    const PeriodMatrix omega = period_matrix_chi(p, c.order, tol);
    const EpsPoint e = eps_from_rho(p, c.order, c.newton_tol, tol);
    const Complex u = p.w * p.w * (1.0 - 4.0 * p.chi);
    const EpsPoint lead{Tau(p.tau.value() + u / (12.0 * two_pi_i)), Tau(log_catalan_f(p.chi) / two_pi_i),
                        -p.w * std::sqrt(1.0 - 4.0 * p.chi)};
    Json j = header(c);
    j["input"] = to_json(p);
    j["period_matrix"] = to_json(omega);
    j["eps_point"] = to_json(e);
    j["leading_order"] = to_json(lead);
    j["margin"] = std::max(in_domain_chi(p).margin, in_domain_eps(e).margin);
    j["order"] = c.order;
    return j;
}

std::string cmd_appendix(const RunConfig& c) {
    const std::string& f = require_formalism(c, {"eps", "rho"});
    const formal::SymbolicPeriod s = f == "eps" ? formal::symbolic_period_eps(c.order) : formal::symbolic_period_rho(c.order);
    const std::string param = f;
    const std::string names[3] = {"2 pi i Omega11", "2 pi i Omega12", "2 pi i Omega22"};
    const formal::GradedPoly* series[3] = {&s.omega11, &s.omega12, &s.omega22};
    if (c.format == Format::text) {
        std::string out;
        for (int i = 0; i < 3; ++i) out += names[i] + " = " + series[i]->to_string(param) + " + O(" + param + "^" +
                                           std::to_string(c.order + 1) + ")\n";
        return out;
    }
    Json j = header(c);
    j["formalism"] = f;
    j["order"] = c.order;
    j["margin"] = 0.0;
    j["omega11"] = to_json(s.omega11, param);
    j["omega12"] = to_json(s.omega12, param);
    j["omega22"] = to_json(s.omega22, param);
    return j.dump(2) + "\n";
}

// One sweep sample.
struct SweepRow {
    Complex param;
    PeriodMatrix omega{};
    double margin = 0.0;
    std::string status = "ok";
};

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string cmd_sweep(const RunConfig& c) {
    check_order(c);
    const std::string& f = require_formalism(c, {"eps", "rho", "chi"});
    const std::vector<std::string> params = f == "eps"   ? std::vector<std::string>{"tau1", "tau2", "eps"}
                                            : f == "rho" ? std::vector<std::string>{"tau", "w", "rho"}
                                                         : std::vector<std::string>{"tau", "w", "chi"};
    if (std::find(params.begin(), params.end(), c.vary) == params.end())
        throw ParseError("--vary: not a parameter of the " + f + " pipeline");
    if (c.steps < 1) throw ParseError("--steps: must be >= 1");
    const Complex from = value(c, "from");
    const Complex to = value(c, "to");
    // validate the fixed parameters once, up front
    for (const auto& name : params)
        if (name != c.vary) (name.rfind("tau", 0) == 0) ? (void)tau_value(c, name) : (void)value(c, name);
    const SeriesTolerance tol = tolerance(c);

    std::vector<SweepRow> rows(static_cast<std::size_t>(c.steps));
    auto sample = [&](int i) {
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        row.param = c.steps == 1 ? from : from + (to - from) * (static_cast<double>(i) / (c.steps - 1));
        RunConfig local = c;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", row.param.real(), row.param.imag());
        local.values[c.vary] = buf;
        try {
            if (f == "eps") {
                const EpsEvaluation ev = evaluate_eps(eps_point(local), c.order, tol);
                row.omega = ev.omega;
                row.margin = ev.margin;
            } else if (f == "rho") {
                const RhoEvaluation ev = evaluate_rho(rho_point(local), c.order, tol);
                row.omega = ev.omega;
                row.margin = ev.margin;
            } else {
                const ChiPoint p = chi_point(local);
                row.margin = in_domain_chi(p).margin;
                row.omega = period_matrix_chi(p, c.order, tol);
            }
        } catch (const ParseError&) {
            row.status = "invalid";
        } catch (const InvalidArgument&) {
            row.status = "invalid";
        } catch (const DomainError&) {
            row.status = "domain";
        } catch (const NearDegenerateSewing&) {
            row.status = "near_degenerate";
        } catch (const PoleError&) {
            row.status = "pole";
        } catch (const Error&) {
            row.status = "error";
        }
    };
    unsigned workers = c.threads > 0 ? static_cast<unsigned>(c.threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(c.steps));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < c.steps; i = next++) sample(i);
        });
    for (auto& th : pool) th.join();

    if (c.format == Format::json) {
        Json j = header(c);
        j["formalism"] = f;
        j["vary"] = c.vary;
        j["order"] = c.order;
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json e{{"param", to_json(r.param)}, {"status", r.status}, {"margin", r.margin}};
            if (r.status == "ok") e["period_matrix"] = to_json(r.omega);
            arr.push_back(e);
        }
        j["rows"] = arr;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "index," << c.vary << "_re," << c.vary << "_im,omega11_re,omega11_im,omega12_re,omega12_im,"
       << "omega22_re,omega22_im,margin,order,status\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        os << i << ',' << format_double(r.param.real()) << ',' << format_double(r.param.imag());
        for (Complex z : {r.omega.omega11, r.omega.omega12, r.omega.omega22}) {
            if (r.status == "ok") os << ',' << format_double(z.real()) << ',' << format_double(z.imag());
            else os << ",,";
        }
        os << ',' << format_double(r.margin) << ',' << c.order << ',' << r.status << '\n';
    }
    return os.str();
}

std::string dispatch(const RunConfig& c) {
    if (c.format == Format::csv && c.command != Command::sweep) throw ParseError("--format: csv is only available for sweep");
    if (c.format == Format::text && c.command != Command::appendix_series)
        throw ParseError("--format: text is only available for appendix-series");
    switch (c.command) {
        case Command::eisenstein: return cmd_eisenstein(c).dump(2) + "\n";
        case Command::period_eps: return cmd_period_eps(c).dump(2) + "\n";
        case Command::period_rho: return cmd_period_rho(c).dump(2) + "\n";
        case Command::necklace: return cmd_necklace(c).dump(2) + "\n";
        case Command::invert: return cmd_invert(c).dump(2) + "\n";
        case Command::equivariance: return cmd_equivariance(c).dump(2) + "\n";
        case Command::catalan: return cmd_catalan(c).dump(2) + "\n";
        case Command::appendix_series: return cmd_appendix(c);
        case Command::map_rho_to_eps: return cmd_map_rho_to_eps(c).dump(2) + "\n";
        case Command::sweep: return cmd_sweep(c);
    }
    throw ParseError("unknown subcommand");
}

}  // namespace

RunResult run(const RunConfig& config) {
    RunResult r;
    try {
        r.output = dispatch(config);
        return r;
    } catch (const ParseError& e) {
        r.exit_code = exit_parse;
        r.error = e.what();
    } catch (const InvalidArgument& e) {
        r.exit_code = exit_parse;
        r.error = e.what();
    } catch (const RangeError& e) {
        r.exit_code = exit_parse;
        r.error = e.what();
    } catch (const DomainError& e) {
        r.exit_code = exit_domain;
        r.error = std::string("domain: ") + e.what();
    } catch (const NearDegenerateSewing& e) {
        r.exit_code = exit_domain;
        r.error = std::string("near-degenerate: ") + e.what();
    } catch (const PoleError& e) {
        r.exit_code = exit_domain;
        r.error = std::string("pole: ") + e.what();
    } catch (const ActionSingular& e) {
        r.exit_code = exit_domain;
        r.error = std::string("action: ") + e.what();
    } catch (const ConvergenceFailure& e) {
        r.exit_code = exit_convergence;
        r.error = std::string("convergence: ") + e.what();
    } catch (const DomainExit& e) {
        r.exit_code = exit_convergence;
        r.error = std::string("convergence: ") + e.what();
    } catch (const ToleranceNotMet& e) {
        r.exit_code = exit_convergence;
        r.error = std::string("tolerance: ") + e.what();
    } catch (const TruncationTooCoarse& e) {
        r.exit_code = exit_convergence;
        r.error = std::string("truncation: ") + e.what();
    } catch (const BudgetExceeded& e) {
        r.exit_code = exit_convergence;
        r.error = std::string("budget: ") + e.what();
    } catch (const std::exception& e) {
        r.exit_code = exit_internal;
        r.error = std::string("internal: ") + e.what();
    }
    return r;
}

namespace {

const char* sweep_help =
    "CSV columns: index, <vary>_re, <vary>_im, omega11_re, omega11_im, omega12_re, omega12_im, "
    "omega22_re, omega22_im, margin, order, status (ok|domain|near_degenerate|pole|invalid|error)";

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Genus-two period matrices from sewn tori"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "json";
    std::map<std::string, std::string> raw;

    auto complex_opt = [&](CLI::App* sub, const std::string& name, const std::string& help) {
        sub->add_option("--" + name, raw[name], help);
    };
    auto common = [&](CLI::App* sub) {
        sub->add_option("--order", cfg.order, "truncation order N")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "absolute tolerance for q-series")->capture_default_str();
        sub->add_option("--output,-o", cfg.output, "output file (default stdout)");
        sub->add_option("--format", format, "json|csv|text")->capture_default_str();
    };
    struct Sub {
        CLI::App* app;
        Command cmd;
    };
    std::vector<Sub> subs;

    auto* eis = app.add_subcommand("eisenstein", "Eisenstein series E_k(tau)");
    eis->add_option("--k", cfg.k, "weight")->required();
    complex_opt(eis, "tau", "modular parameter");
    common(eis);
    subs.push_back({eis, Command::eisenstein});

    auto* pe = app.add_subcommand("period-eps", "period matrix of two sewn tori");
    for (const char* n : {"tau1", "tau2", "eps"}) complex_opt(pe, n, n);
    common(pe);
    subs.push_back({pe, Command::period_eps});

    auto* pr = app.add_subcommand("period-rho", "period matrix of a self-sewn torus");
    for (const char* n : {"tau", "w", "rho"}) complex_opt(pr, n, n);
    pr->add_option("--branch", cfg.branch, "log branch of Omega22")->capture_default_str();
    common(pr);
    subs.push_back({pr, Command::period_rho});

    auto* nk = app.add_subcommand("necklace", "necklace expansion compared with the matrix route");
    nk->add_option("--formalism", cfg.formalism, "eps|rho")->required();
    nk->add_option("--max-order", cfg.max_order, "parameter order of the expansion")->capture_default_str();
    for (const char* n : {"tau1", "tau2", "eps", "tau", "w", "rho"}) complex_opt(nk, n, n);
    nk->add_option("--branch", cfg.branch, "log branch of Omega22");
    common(nk);
    subs.push_back({nk, Command::necklace});

    auto* inv = app.add_subcommand("invert", "Newton inversion of a period matrix");
    inv->add_option("--formalism", cfg.formalism, "eps|chi")->required();
    for (const char* n : {"omega11", "omega12", "omega22"}) complex_opt(inv, n, n);
    inv->add_option("--newton-tol", cfg.newton_tol, "residual bound")->capture_default_str();
    common(inv);
    subs.push_back({inv, Command::invert});

    auto* eq = app.add_subcommand("equivariance", "residuals over the generator set");
    eq->add_option("--formalism", cfg.formalism, "eps|rho")->required();
    for (const char* n : {"tau1", "tau2", "eps", "tau", "w", "rho"}) complex_opt(eq, n, n);
    eq->add_option("--branch", cfg.branch, "log branch of Omega22");
    common(eq);
    subs.push_back({eq, Command::equivariance});

    auto* cat = app.add_subcommand("catalan", "sphere self-sewing identities");
    complex_opt(cat, "chi", "chi = -rho/w^2");
    common(cat);
    subs.push_back({cat, Command::catalan});

    auto* ap = app.add_subcommand("appendix-series", "exact period matrix series");
    ap->add_option("--formalism", cfg.formalism, "eps|rho")->required();
    common(ap);
    subs.push_back({ap, Command::appendix_series});

    auto* mp = app.add_subcommand("map-rho-to-eps", "eps parameters of a self-sewn torus");
    for (const char* n : {"tau", "w", "chi"}) complex_opt(mp, n, n);
    mp->add_option("--newton-tol", cfg.newton_tol, "residual bound")->capture_default_str();
    common(mp);
    subs.push_back({mp, Command::map_rho_to_eps});

    auto* sw = app.add_subcommand("sweep", "period matrices along a segment in one parameter");
    sw->footer(sweep_help);
    sw->add_option("--formalism", cfg.formalism, "eps|rho|chi")->required();
    sw->add_option("--vary", cfg.vary, "parameter to vary")->required();
    complex_opt(sw, "from", "start value");
    complex_opt(sw, "to", "end value");
    sw->add_option("--steps", cfg.steps, "number of samples")->capture_default_str();
    sw->add_option("--threads", cfg.threads, "worker threads (0: hardware count)");
    for (const char* n : {"tau1", "tau2", "eps", "tau", "w", "rho", "chi"}) complex_opt(sw, n, n);
    sw->add_option("--branch", cfg.branch, "log branch of Omega22");
    common(sw);
    subs.push_back({sw, Command::sweep});

    bool appendix_default_order = false;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        app.exit(e, os, os);
        err << os.str();
        return exit_parse;
    }
    for (const auto& s : subs)
        if (s.app->parsed()) {
            cfg.command = s.cmd;
            if (s.cmd == Command::appendix_series && s.app->count("--order") == 0) appendix_default_order = true;
        }
    if (appendix_default_order) cfg.order = cfg.formalism == "rho" ? 4 : 9;
    for (const auto& [k, v] : raw)
        if (!v.empty()) cfg.values[k] = v;
    if (format == "json") cfg.format = Format::json;
    else if (format == "csv") cfg.format = Format::csv;
    else if (format == "text") cfg.format = Format::text;
    else {
        err << "--format: expected json, csv or text\n";
        return exit_parse;
    }
    if (cfg.command == Command::sweep && !app.get_subcommand("sweep")->count("--format")) cfg.format = Format::csv;

    const RunResult r = run(cfg);
    if (r.exit_code != exit_ok) {
        err << r.error << '\n';
        return r.exit_code;
    }
    if (cfg.output.empty()) {
        out << r.output;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            err << "--output: cannot open " << cfg.output << '\n';
            return exit_parse;
        }
        f << r.output;
    }
    return exit_ok;
}

}  // namespace sewing::cli
