#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bundle_algebra.hpp"
#include "errors.hpp"
#include "modular_solve.hpp"
#include "numeric_theta.hpp"
#include "report.hpp"
#include "serialize.hpp"
#include "theta_q.hpp"

namespace oddanom::cli
{

enum class Format { json, latex, text };

inline Format parse_format(const std::string &s)
{
    if (s == "json") {
        return Format::json;
    }
    if (s == "latex") {
        return Format::latex;
    }
    if (s == "text") {
        return Format::text;
    }
    throw configuration_error("unknown output format '" + s + "'");
}

struct RunConfig {
    int r = 1;
    std::optional<long> concrete_n; // symbolic when empty
    bool twisted = false;
    std::optional<int> q_order;     // half-units; default r + 4
    EModel e_model = EModel::odd;
    std::vector<std::string> identities; // all when empty
    Format format = Format::text;
    std::string json_path;  // also write the JSON report here
    std::string latex_path; // also write the LaTeX report here
    bool require_printed = false;

    void validate() const
    {
        if (r < 1) {
            throw configuration_error("r must be at least 1");
        }
        if (concrete_n && (*concrete_n < 2 || *concrete_n % 2 != 0)) {
            throw configuration_error("concrete N must be even and at least 2");
        }
        if (q_order && *q_order < r + 2) {
            throw configuration_error("q_order must be at least r + 2");
        }
    }

    [[nodiscard]] GeometrySpec geometry() const { return {r, e_model, twisted, q_order.value_or(r + 4)}; }
};

inline void write_file(const std::string &path, const std::string &content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw configuration_error("cannot write '" + path + "'");
    }
    f << content;
}

// Runs the derivation pipeline and keeps the requested identities.
inline FormulaReport derive_report(const RunConfig &cfg)
{
    cfg.validate();
    const Derivation d(cfg.geometry());
    FormulaReport rep = d.report();
    if (!cfg.identities.empty()) {
        for (const auto &id : cfg.identities) {
            if (!d.has_identity(id)) {
                throw configuration_error("identity '" + id + "' is not emitted for r = " + std::to_string(cfg.r)
                                          + (cfg.twisted ? " (twisted)" : ""));
            }
        }
        std::erase_if(rep.identities, [&](const Identity &i) {
            return std::find(cfg.identities.begin(), cfg.identities.end(), i.id) == cfg.identities.end();
        });
    }
    if (cfg.concrete_n) {
        rep = apply_concrete_n(std::move(rep), *cfg.concrete_n);
    }
    return rep;
}

inline int report_exit(const FormulaReport &rep, bool require_printed)
{
    bool ok = rep.all_verified();
    if (require_printed) {
        ok = ok && std::all_of(rep.identities.begin(), rep.identities.end(), [](const Identity &i) { return i.verified; });
    }
    return static_cast<int>(ok ? exit_code::ok : exit_code::verification_mismatch);
}

inline int cmd_derive(const RunConfig &cfg, std::ostream &out)
{
    const FormulaReport rep = derive_report(cfg);
    if (!cfg.json_path.empty()) {
        write_file(cfg.json_path, to_json(rep).dump(2) + "\n");
    }
    if (!cfg.latex_path.empty()) {
        write_file(cfg.latex_path, to_latex(rep));
    }
    switch (cfg.format) {
    case Format::json:
        out << to_json(rep).dump(2) << "\n";
        break;
    case Format::latex:
        out << to_latex(rep);
        break;
    case Format::text:
        out << to_text(rep);
        break;
    }
    return report_exit(rep, cfg.require_printed);
}

// Sweeps r = 1..max_r and prints one summary line per dimension.
inline int cmd_catalog(int max_r, bool twisted, EModel model, Format format, std::ostream &out)
{
    if (max_r < 1) {
        throw configuration_error("catalog needs max r >= 1");
    }
    bool ok = true;
    nlohmann::json all = nlohmann::json::array();
    for (int r = 1; r <= max_r; ++r) {
        RunConfig cfg;
        cfg.r = r;
        cfg.twisted = twisted;
        cfg.e_model = model;
        const FormulaReport rep = derive_report(cfg);
        ok = ok && rep.all_verified();
        if (format == Format::json) {
            all.push_back(to_json(rep));
            continue;
        }
        const auto verified = std::count_if(rep.identities.begin(), rep.identities.end(),
                                            [](const Identity &i) { return i.verified; });
        const auto printed = std::count_if(rep.identities.begin(), rep.identities.end(),
                                           [](const Identity &i) { return !i.verified && i.printed_form; });
        out << "dim " << std::setw(2) << 4 * r - 1 << "  r=" << r << (twisted ? " twisted" : "") << "  identities "
            << verified << "/" << rep.identities.size() << " verified";
        if (printed > 0) {
            out << ", " << printed << " printed form(s) differ";
        }
        out << "  residual zero through q^(" << rep.residual_max_order << "/2)";
        for (const auto &t : rep.two_adic) {
            out << "  " << family_name(t.family) << ":" << (t.exponent ? t.exponent->str() : std::string("-"));
        }
        out << "\n";
    }
    if (format == Format::json) {
        out << all.dump(2) << "\n";
    }
    return static_cast<int>(ok ? exit_code::ok : exit_code::verification_mismatch);
}

inline int cmd_crosscheck(const std::string &id, int r, EModel model, Format format, bool require_printed,
                          std::ostream &out)
{
    if (r < 1) {
        throw configuration_error("r must be at least 1");
    }
    if (model == EModel::none) {
        throw configuration_error("bundle crosschecks need E generators");
    }
    std::vector<std::string> ids = id == "all" ? crosscheck_ids() : std::vector<std::string>{id};
    bool ok = true;
    nlohmann::json all = nlohmann::json::array();
    for (const auto &i : ids) {
        const CrosscheckResult res = crosscheck(i, r, model);
        ok = ok && res.engine_agrees && (!require_printed || res.printed_agrees());
        if (format == Format::json) {
            all.push_back(to_json(res));
        } else {
            out << to_text(res);
        }
    }
    if (format == Format::json) {
        out << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
    }
    return static_cast<int>(ok ? exit_code::ok : exit_code::verification_mismatch);
}

// Named q-expansions: delta1, eps1, delta2, eps2, theta1..3 (theta constants
// with their q^{1/8} shift noted), theta-prime, basis (needs r), or a log block.
inline int cmd_expand(const std::string &form, int order, std::optional<int> r, Format format, std::ostream &out)
{
    if (order < 0) {
        throw configuration_error("order must be non-negative");
    }
    const auto emit = [&](const std::string &name, const ScalarSeries &s, int eighths) {
        if (format == Format::json) {
            nlohmann::json j = to_json(s);
            j["form"] = name;
            j["q_eighths_shift"] = eighths;
            out << j.dump(2) << "\n";
        } else {
            out << (eighths != 0 ? "q^(" + std::to_string(eighths) + "/8) * (" + to_text(s) + ")" : to_text(s)) << "\n";
        }
    };
    for (auto w : {DeltaEps::delta1, DeltaEps::eps1, DeltaEps::delta2, DeltaEps::eps2}) {
        if (form == delta_eps_name(w)) {
            emit(form, delta_eps(w, order).series, 0);
            return 0;
        }
    }
    for (auto f : {ThetaFlavor::theta1, ThetaFlavor::theta2, ThetaFlavor::theta3}) {
        if (form == flavor_name(f)) {
            const ThetaConstant t = theta_nullwert(f, order);
            emit(form, t.series, t.q_eighths);
            return 0;
        }
    }
    if (form == "theta-prime") {
        const ThetaConstant t = theta_nullwert(ThetaFlavor::theta, order, true);
        emit("theta'(0)/(2 pi)", t.series, t.q_eighths);
        return 0;
    }
    if (form == "basis") {
        if (!r) {
            throw configuration_error("expand --form basis needs --r");
        }
        const ModularBasis b = basis_expansions(*r, order);
        for (std::size_t l = 0; l < b.lower.size(); ++l) {
            const std::string k = std::to_string(*r - 2 * static_cast<int>(l));
            emit("(8 delta1)^" + k + " eps1^" + std::to_string(l), b.lower[l], 0);
            emit("(8 delta2)^" + k + " eps2^" + std::to_string(l), b.upper[l], 0);
        }
        return 0;
    }
    for (BlockKind b : all_block_kinds) {
        if (form == block_name(b)) {
            const int D = 4 * r.value_or(2);
            const QSeries s = log_block(b, order, D);
            if (format == Format::json) {
                out << to_json(s).dump(2) << "\n";
            } else {
                out << to_text(s) << "\n";
            }
            return 0;
        }
    }
    throw configuration_error("unknown form '" + form + "'");
}

struct NumericOptions {
    std::string law = "all";  // law id, "all", "s-relation" or "agreement"
    std::string grid = "default";
    double tol = 1e-9;
    std::vector<int> rs{1, 2}; // for the S-relation
};

inline int cmd_numeric(const NumericOptions &opt, Format format, std::ostream &out)
{
    if (opt.grid != "default") {
        throw configuration_error("only the default grid is available");
    }
    bool ok = true;
    nlohmann::json all = nlohmann::json::array();
    const auto line = [&](const std::string &name, double residual, bool pass, int samples) {
        ok = ok && pass;
        if (format == Format::json) {
            all.push_back({{"law", name}, {"max_residual", residual}, {"samples", samples}, {"pass", pass}});
        } else {
            std::ostringstream s;
            s << std::left << std::setw(26) << name << " max residual " << std::scientific << std::setprecision(3)
              << residual << "  (" << samples << " samples)  " << (pass ? "PASS" : "FAIL") << "\n";
            out << s.str();
        }
    };
    const bool everything = opt.law == "all";
    std::vector<std::string> laws;
    if (everything) {
        laws = law_ids();
    } else if (std::find(law_ids().begin(), law_ids().end(), opt.law) != law_ids().end()) {
        laws = {opt.law};
    } else if (opt.law != "s-relation" && opt.law != "agreement") {
        throw configuration_error("unknown law '" + opt.law + "'");
    }
    for (const auto &l : laws) {
        const GridReport g = check_law_on_grid(l, default_grid(), opt.tol);
        line(l, g.max_residual, g.pass, g.samples);
    }
    if (everything || opt.law == "s-relation") {
        const std::vector<cplx> taus{{0.0, 1.3}, {0.3, 1.1}, {-0.4, 0.9}};
        for (int r : opt.rs) {
            for (bool tw : {false, true}) {
                for (EModel m : {EModel::none, EModel::odd, EModel::even}) {
                    double worst = 0.0;
                    bool pass = true;
                    for (cplx tau : taus) {
                        const SRelationCheck c =
                            check_phi_s_relation(r, m, sample_roots(r, m == EModel::none ? 0 : 4, tw), tau, 1e-6);
                        worst = std::max(worst, c.residual);
                        pass = pass && c.pass;
                    }
                    line("s-relation r=" + std::to_string(r) + " " + std::string(emodel_name(m)) + (tw ? " twisted" : ""),
                         worst, pass, static_cast<int>(taus.size()));
                }
            }
        }
    }
    if (everything || opt.law == "agreement") {
        const AgreementReport a = symbolic_numeric_agreement();
        line("symbolic-numeric", a.max_residual, a.max_residual < 1e-8, a.samples);
    }
    if (format == Format::json) {
        out << all.dump(2) << "\n";
    }
    return static_cast<int>(ok ? exit_code::ok : exit_code::verification_mismatch);
}

} // namespace oddanom::cli
