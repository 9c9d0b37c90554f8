#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "bundle_algebra.hpp"
#include "errors.hpp"
#include "graded_poly.hpp"
#include "modular_solve.hpp"
#include "numeric_theta.hpp"
#include "phi_builder.hpp"
#include "serialize.hpp"

namespace oddanom
{

// Substitutes a concrete even rank N >= 2 into every class and folds 2^{N/2}
// into the coefficients.
inline GradedPoly with_rank(const GradedPoly &p, long n)
{
    if (!p.context()->find("N")) {
        return p;
    }
    return p.substitute("N", p.constant_like(Rational(n)));
}

inline Pow2Poly with_rank(const Pow2Poly &p, long n) { return {0, with_rank(p.poly, n) * Rational::two_pow(p.half_n * (n / 2))}; }

inline FormulaReport apply_concrete_n(FormulaReport rep, long n)
{
    if (n < 2 || n % 2 != 0) {
        throw configuration_error("concrete N must be even and at least 2");
    }
    rep.concrete_n = n;
    for (auto &h : rep.h) {
        h = with_rank(h, n);
    }
    for (auto &id : rep.identities) {
        id.lhs = with_rank(id.lhs, n);
        id.rhs = with_rank(id.rhs, n);
        const bool printed = id.printed_form;
        const std::string note = id.note;
        id = finish_identity(id);
        id.printed_form = printed;
        id.note = note;
    }
    for (auto &t : rep.two_adic) {
        if (t.exponent) {
            t.exponent = AffinePow2{t.exponent->constant + t.exponent->half_n * (n / 2), 0};
        }
    }
    return rep;
}

inline nlohmann::json to_json(const AffinePow2 &a)
{
    return {{"const", a.constant}, {"coeffN", Rational(a.half_n, 2).str()}};
}

inline nlohmann::json to_json(const Pow2Poly &p)
{
    return {{"pow2_exponent", to_json(AffinePow2{0, p.half_n})},
            {"text", (p.half_n == 0 || p.poly.is_zero() ? std::string() : AffinePow2{0, p.half_n}.str() + " * ")
                         + "(" + p.poly.str() + ")"},
            {"poly", to_json(p.poly)}};
}

inline nlohmann::json to_json(const Identity &id)
{
    nlohmann::json j{{"id", id.id},
                     {"statement", id.statement},
                     {"latex", id.latex},
                     {"lhs", to_json(id.lhs)},
                     {"rhs", to_json(id.rhs)},
                     {"verified", id.verified},
                     {"printed_form", id.printed_form}};
    if (!id.difference.empty()) {
        j["difference"] = id.difference;
    }
    if (!id.note.empty()) {
        j["note"] = id.note;
    }
    return j;
}

inline nlohmann::json to_json(const FormulaReport &rep)
{
    nlohmann::json j;
    j["r"] = rep.r;
    j["dimension"] = 4 * rep.r - 1;
    j["twisted"] = rep.twisted;
    j["e_model"] = std::string(emodel_name(rep.e_model));
    j["N"] = rep.concrete_n ? nlohmann::json(*rep.concrete_n) : nlohmann::json("symbolic");
    j["q_order_half"] = rep.q_order;
    j["residual_max_order"] = rep.residual_max_order;
    j["transport_verified"] = rep.transport_verified;
    j["all_verified"] = rep.all_verified();
    nlohmann::json h = nlohmann::json::array();
    for (std::size_t l = 0; l < rep.h.size(); ++l) {
        h.push_back({{"l", l}, {"poly", to_json(rep.h[l])}});
    }
    j["h"] = h;
    nlohmann::json ids = nlohmann::json::array();
    for (const auto &id : rep.identities) {
        ids.push_back(to_json(id));
    }
    j["identities"] = ids;
    nlohmann::json two = nlohmann::json::array();
    for (const auto &t : rep.two_adic) {
        nlohmann::json e{{"family", family_name(t.family)}};
        e["exponent"] = t.exponent ? to_json(*t.exponent) : nlohmann::json(nullptr);
        e["isolation_gap"] = t.isolation_gap ? nlohmann::json(*t.isolation_gap) : nlohmann::json(nullptr);
        two.push_back(e);
    }
    j["two_adic"] = two;
    j["notes"] = rep.notes;
    return j;
}

// Polynomial in LaTeX with indexed generators (t_{2}, e_{3}, v_{2}).
inline std::string to_latex(const GradedPoly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    const auto &gens = p.context()->generators();
    std::string out;
    for (const auto &[m, c] : p.terms()) {
        std::string mono;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) {
                continue;
            }
            const std::string &name = gens[i].name;
            std::string g = name.size() > 1 ? name.substr(0, 1) + "_{" + name.substr(1) + "}" : name;
            if (m.exps[i] > 1) {
                g += "^{" + std::to_string(m.exps[i]) + "}";
            }
            mono += (mono.empty() ? "" : " ") + g;
        }
        const bool neg = c.sign() < 0;
        const Rational a = neg ? -c : c;
        std::string num;
        if (!a.is_one() || mono.empty()) {
            num = a.is_integer() ? a.str()
                                 : "\\frac{" + Rational(a.raw().get_num()).str() + "}{"
                                       + Rational(a.raw().get_den()).str() + "}";
        }
        const std::string body = num + (num.empty() || mono.empty() ? "" : " ") + mono;
        out += out.empty() ? (neg ? "-" : "") + body : (neg ? " - " : " + ") + body;
    }
    return out;
}

inline std::string to_latex(const Pow2Poly &p)
{
    const std::string body = "\\left(" + to_latex(p.poly) + "\\right)";
    if (p.half_n == 0 || p.poly.is_zero()) {
        return body;
    }
    const std::string k = p.half_n == 1 ? std::string() : std::to_string(p.half_n);
    return "2^{\\frac{" + k + "N}{2}} " + body;
}

inline std::string to_latex(const FormulaReport &rep)
{
    std::ostringstream s;
    s << "\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\begin{document}\n";
    s << "\\section*{Dimension " << 4 * rep.r - 1 << (rep.twisted ? ", twisted" : "") << "}\n";
    s << (rep.concrete_n ? "$N = " + std::to_string(*rep.concrete_n) + "$" : std::string("$N$ symbolic"))
      << ", residual zero through $q^{"
      << Rational(rep.residual_max_order, 2).str() << "}$.\n\n";
    s << "\\subsection*{Coefficients}\n\\begin{align*}\n";
    for (std::size_t l = 0; l < rep.h.size(); ++l) {
        s << "h_{" << l << "} &= " << to_latex(rep.h[l]) << (l + 1 < rep.h.size() ? "\\\\\n" : "\n");
    }
    s << "\\end{align*}\n\\subsection*{Identities}\n";
    for (const auto &id : rep.identities) {
        s << "\\paragraph{" << id.id << "} "
          << (id.verified ? "verified" : id.printed_form ? "printed form, mismatch" : "MISMATCH") << "\n";
        s << "\\[" << id.latex << "\\]\n";
        s << "\\begin{align*}\n\\text{lhs} &= " << to_latex(id.lhs) << "\\\\\n\\text{rhs} &= " << to_latex(id.rhs)
          << "\n\\end{align*}\n";
    }
    s << "\\end{document}\n";
    return s.str();
}

inline std::string to_text(const FormulaReport &rep)
{
    std::ostringstream s;
    s << "r = " << rep.r << " (dimension " << 4 * rep.r - 1 << ")" << (rep.twisted ? " twisted" : "")
      << ", E model " << emodel_name(rep.e_model) << ", N = "
      << (rep.concrete_n ? std::to_string(*rep.concrete_n) : std::string("symbolic")) << "\n";
    s << "residual zero through q^(" << rep.residual_max_order << "/2); transport "
      << (rep.transport_verified ? "OK" : "FAILED") << "\n";
    for (std::size_t l = 0; l < rep.h.size(); ++l) {
        s << "h" << l << " = " << rep.h[l].str() << "\n";
    }
    for (const auto &id : rep.identities) {
        s << (id.verified ? "[OK]       " : id.printed_form ? "[PRINTED]  " : "[MISMATCH] ") << id.id << ": "
          << id.statement << "\n";
        if (!id.difference.empty()) {
            s << "    lhs - rhs = " << id.difference << "\n";
        }
        if (!id.note.empty()) {
            s << "    note: " << id.note << "\n";
        }
    }
    for (const auto &t : rep.two_adic) {
        s << "2-adic " << family_name(t.family) << ": " << (t.exponent ? t.exponent->str() : std::string("none")) << "\n";
    }
    for (const auto &n : rep.notes) {
        s << "note: " << n << "\n";
    }
    return s.str();
}

inline nlohmann::json to_json(const CrosscheckResult &c)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto &k : c.coefficients) {
        coeffs.push_back({{"q_power", Rational(k.half_order, 2).str()},
                          {"expansion", k.expansion},
                          {"matches", k.matches},
                          {"difference", k.difference}});
    }
    nlohmann::json printed = nlohmann::json::array();
    for (const auto &p : c.printed) {
        printed.push_back({{"q_power", Rational(p.half_order, 2).str()},
                           {"printed", p.printed},
                           {"matches", p.matches},
                           {"difference", p.difference},
                           {"convention_only", p.convention}});
    }
    return {{"id", c.id},         {"description", c.description},  {"r", c.r},
            {"engine_agrees", c.engine_agrees}, {"printed_agrees", c.printed_agrees()}, {"coefficients", coeffs},
            {"printed", printed}, {"note", c.note}};
}

inline std::string to_text(const CrosscheckResult &c)
{
    std::ostringstream s;
    s << c.id << " (r = " << c.r << "): " << c.description << "\n";
    for (const auto &k : c.coefficients) {
        s << "  q^(" << k.half_order << "/2): " << k.expansion << (k.matches ? "  [theta build agrees]" : "  [DIFFERS]")
          << "\n";
        if (!k.matches) {
            s << "      difference " << k.difference << "\n";
        }
    }
    for (const auto &p : c.printed) {
        s << "  published q^(" << p.half_order << "/2): " << p.printed
          << (p.matches ? "  [agrees]" : p.convention ? "  [differs, normalization only]" : "  [DIFFERS]") << "\n";
        if (!p.matches) {
            s << "      difference " << p.difference << "\n";
        }
    }
    if (!c.note.empty()) {
        s << "  note: " << c.note << "\n";
    }
    s << "  engine " << (c.engine_agrees ? "PASS" : "FAIL") << ", published form "
      << (c.printed_agrees() ? "PASS" : "FAIL") << "\n";
    return s.str();
}

inline nlohmann::json to_json(const GridReport &g)
{
    return {{"law", g.law}, {"max_residual", g.max_residual}, {"samples", g.samples}, {"pass", g.pass}};
}

} // namespace oddanom
