#pragma once

#include <string>

#include <json.hpp>

#include "graded_poly.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace oddanom
{

// "q^(k/2)" for odd k, "q^m" for k = 2m, "q" for k = 2, "" for k = 0.
inline std::string q_power_str(int k)
{
    if (k == 0) {
        return "";
    }
    if (k % 2 != 0) {
        return "q^(" + std::to_string(k) + "/2)";
    }
    return k == 2 ? "q" : "q^" + std::to_string(k / 2);
}

namespace detail
{
inline std::string join_term(std::string &out, bool negative, const std::string &body)
{
    if (out.empty()) {
        out = negative ? "-" + body : body;
    } else {
        out += (negative ? " - " : " + ") + body;
    }
    return out;
}
} // namespace detail

// Scalar series: "1/4 + 6q + 6q^2", "-1/8 - 3q^(1/2)".
inline std::string to_text(const ScalarSeries &s)
{
    std::string out;
    for (int k = 0; k <= s.order(); ++k) {
        const Rational c = s[k];
        if (c.is_zero()) {
            continue;
        }
        const bool neg = c.sign() < 0;
        const Rational a = neg ? -c : c;
        const std::string qp = q_power_str(k);
        std::string body;
        if (qp.empty()) {
            body = a.str();
        } else if (a.is_one()) {
            body = qp;
        } else if (a.is_integer()) {
            body = a.str() + qp;
        } else {
            body = a.str() + "*" + qp;
        }
        detail::join_term(out, neg, body);
    }
    return out.empty() ? "0" : out;
}

// Polynomial series: "(1 - 1/6*t1) + (2*t1)*q^(1/2)".
inline std::string to_text(const QSeries &s)
{
    std::string out;
    for (int k = 0; k <= s.order(); ++k) {
        const GradedPoly c = s[k];
        if (c.is_zero()) {
            continue;
        }
        const std::string qp = q_power_str(k);
        std::string body = "(" + c.str() + ")";
        if (!qp.empty()) {
            body += "*" + qp;
        }
        detail::join_term(out, false, body);
    }
    return out.empty() ? "0" : out;
}

inline std::string to_text(const GradedPoly &p) { return p.str(); }

inline nlohmann::json to_json(const GradedPoly &p)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[m, c] : p.terms()) {
        std::string mono = p.monomial_str(m);
        terms.push_back({{"monomial", mono.empty() ? "1" : mono}, {"degree", m.degree}, {"coefficient", c.str()}});
    }
    nlohmann::json gens = nlohmann::json::array();
    for (const auto &g : p.context()->generators()) {
        gens.push_back({{"name", g.name}, {"degree", g.degree}, {"linear", g.linear}});
    }
    return {{"truncation_degree", p.max_degree()}, {"generators", gens}, {"terms", terms}, {"text", p.str()}};
}

inline nlohmann::json to_json(const ScalarSeries &s)
{
    nlohmann::json coeffs = nlohmann::json::object();
    for (int k = 0; k <= s.order(); ++k) {
        if (!s[k].is_zero()) {
            coeffs[std::to_string(k)] = s[k].str();
        }
    }
    return {{"q_order_half", s.order()}, {"coefficients_by_half_exponent", coeffs}, {"text", to_text(s)}};
}

inline nlohmann::json to_json(const QSeries &s)
{
    nlohmann::json coeffs = nlohmann::json::object();
    for (int k = 0; k <= s.order(); ++k) {
        if (!s[k].is_zero()) {
            coeffs[std::to_string(k)] = s[k].str();
        }
    }
    return {{"q_order_half", s.order()},
            {"truncation_degree", s[0].max_degree()},
            {"coefficients_by_half_exponent", coeffs},
            {"text", to_text(s)}};
}

} // namespace oddanom
