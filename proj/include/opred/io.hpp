#pragma once

#include "opred/cauchy.hpp"
#include "opred/reduction.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace opred {

namespace detail {

inline std::string coeff_prefix(const Rational& c)
{
    // magnitude-1 coefficients are absorbed into the symbol
    Rational a = c < 0 ? -c : c;
    return a == 1 ? "" : to_string(a);
}

inline std::string operator_power(int order, const std::string& symbol)
{
    if (order == 0)
        return symbol;
    if (order == 1)
        return "A(" + symbol + ")";
    return "A^" + std::to_string(order) + "(" + symbol + ")";
}

} // namespace detail

/// "A^2 - 2A" style rendering of a polynomial in the operator A.
inline std::string format_operator_poly(const Poly& p) { return p.str("A"); }

/// Renders a forcing combination, higher operator powers first; within one
/// power, positive terms precede negative ones, matching the usual
/// pairwise (b_i A(phi_j) - b_j A(phi_i)) layout.
inline std::string format_forcing(const ForcingExpr& expr,
                                  const std::vector<std::string>& names)
{
    if (expr.is_zero())
        return "0";
    std::vector<const ForcingTerm*> ordered;
    for (int order = expr.max_order(); order >= 0; --order) {
        for (const auto& t : expr.terms)
            if (t.order == order && t.coeff > 0)
                ordered.push_back(&t);
        for (const auto& t : expr.terms)
            if (t.order == order && t.coeff < 0)
                ordered.push_back(&t);
    }
    std::string out;
    for (const auto* t : ordered) {
        const bool neg = t->coeff < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += detail::coeff_prefix(t->coeff);
        out += detail::operator_power(t->order, names[static_cast<size_t>(t->index)]);
    }
    return out;
}

inline std::string format_equation(const ReducedEquation& eq,
                                   const std::vector<std::string>& variables,
                                   const std::vector<std::string>& forcing)
{
    std::string lhs;
    if (eq.lhs.degree() == 1 && eq.lhs.coeff(0) == 0) {
        lhs = "A(" + variables[static_cast<size_t>(eq.target)] + ")";
    } else {
        lhs = "(" + format_operator_poly(eq.lhs) + ") " +
              variables[static_cast<size_t>(eq.target)];
    }
    return lhs + " = " + format_forcing(eq.rhs, forcing);
}

inline std::string format_partial_system(const PartialSystem& ps)
{
    std::vector<std::string> vars, fsyms;
    for (size_t i = 0; i < ps.new_forcing.size(); ++i) {
        vars.push_back(ps.variable_name + std::to_string(i + 1));
        fsyms.push_back(ps.forcing_name + std::to_string(i + 1));
    }
    std::ostringstream out;
    for (const auto& eq : ps.equations) {
        if (const auto* red = std::get_if<ReducedEquation>(&eq))
            out << format_equation(*red, vars, fsyms) << "\n";
        else {
            const auto& cpl = std::get<CouplingEquation>(eq);
            out << vars[static_cast<size_t>(cpl.target)] << " = A("
                << vars[static_cast<size_t>(cpl.source)] << ") - "
                << fsyms[static_cast<size_t>(cpl.forcing)] << "\n";
        }
    }
    return out.str();
}

// --- machine-readable (JSON) form of reduced equations ---

inline nlohmann::json forcing_to_json(const ForcingExpr& e)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : e.terms)
        terms.push_back({{"coeff", to_string(t.coeff)},
                         {"order", t.order},
                         {"index", t.index + 1}});
    return terms;
}

inline nlohmann::json equation_to_json(const ReducedEquation& eq)
{
    nlohmann::json lhs = nlohmann::json::array();
    for (int k = 0; k <= eq.lhs.degree(); ++k)
        lhs.push_back(to_string(eq.lhs.coeff(k)));
    return {{"target", eq.target + 1}, {"lhs", lhs}, {"rhs", forcing_to_json(eq.rhs)}};
}

inline nlohmann::json equations_to_json(const std::vector<ReducedEquation>& eqs)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& eq : eqs)
        arr.push_back(equation_to_json(eq));
    return arr;
}

inline ForcingExpr forcing_from_json(const nlohmann::json& j)
{
    ForcingExpr e;
    for (const auto& t : j)
        e.add(parse_rational(t.at("coeff").get<std::string>()),
              t.at("order").get<int>(), t.at("index").get<int>() - 1);
    return e;
}

inline ReducedEquation equation_from_json(const nlohmann::json& j)
{
    ReducedEquation eq;
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("lhs"))
        coeffs.push_back(parse_rational(c.get<std::string>()));
    eq.lhs = Poly(std::move(coeffs));
    eq.target = j.at("target").get<int>() - 1;
    eq.rhs = forcing_from_json(j.at("rhs"));
    return eq;
}

inline std::vector<ReducedEquation> equations_from_json(const nlohmann::json& j)
{
    std::vector<ReducedEquation> eqs;
    for (const auto& e : j)
        eqs.push_back(equation_from_json(e));
    return eqs;
}

// --- problem file ---

struct ProblemFile {
    Mat matrix;
    std::optional<RankOneSpec> spec;
    std::vector<PolyExpFunction> forcing;
    std::optional<Rational> t0, horizon, step;
    std::vector<Rational> c;
};

inline Poly poly_from_json(const nlohmann::json& j)
{
    std::vector<Rational> coeffs;
    for (const auto& c : j)
        coeffs.push_back(parse_rational(c.get<std::string>()));
    return Poly(std::move(coeffs));
}

inline ProblemFile parse_problem(const nlohmann::json& doc)
{
    ProblemFile pf;
    const int n = doc.at("n").get<int>();
    if (n < 1)
        throw ArgumentError("n must be positive");

    const auto& mj = doc.at("matrix");
    const std::string kind = mj.at("kind").get<std::string>();
    if (kind == "hat" || kind == "check") {
        std::vector<Rational> b;
        for (const auto& x : mj.at("b"))
            b.push_back(parse_rational(x.get<std::string>()));
        if (static_cast<int>(b.size()) != n)
            throw ArgumentError("matrix.b length does not match n");
        pf.spec = RankOneSpec(std::move(b), kind == "hat" ? Orientation::Hat
                                                          : Orientation::Check);
        pf.matrix = build_matrix(*pf.spec);
    } else if (kind == "dense") {
        std::vector<std::vector<Rational>> rows;
        for (const auto& row : mj.at("entries")) {
            std::vector<Rational> r;
            for (const auto& x : row)
                r.push_back(parse_rational(x.get<std::string>()));
            rows.push_back(std::move(r));
        }
        pf.matrix = Mat(rows);
        if (pf.matrix.rows() != n || pf.matrix.cols() != n)
            throw ArgumentError("matrix.entries shape does not match n");
    } else {
        throw ArgumentError("matrix.kind must be hat, check or dense");
    }

    if (doc.contains("forcing")) {
        for (const auto& fj : doc.at("forcing")) {
            PolyExpFunction f;
            for (const auto& term : fj)
                f.add_term(poly_from_json(term.at("poly")),
                           parse_rational(term.at("rate").get<std::string>()));
            pf.forcing.push_back(std::move(f));
        }
        if (static_cast<int>(pf.forcing.size()) != n)
            throw ArgumentError("forcing length does not match n");
    }
    if (doc.contains("t0"))
        pf.t0 = parse_rational(doc.at("t0").get<std::string>());
    if (doc.contains("horizon"))
        pf.horizon = parse_rational(doc.at("horizon").get<std::string>());
    if (doc.contains("step"))
        pf.step = parse_rational(doc.at("step").get<std::string>());
    if (doc.contains("c")) {
        for (const auto& x : doc.at("c"))
            pf.c.push_back(parse_rational(x.get<std::string>()));
        if (static_cast<int>(pf.c.size()) != n)
            throw ArgumentError("c length does not match n");
    }
    return pf;
}

inline CauchyProblem to_cauchy_problem(const ProblemFile& pf)
{
    if (!pf.t0 || !pf.horizon || !pf.step || pf.c.empty() || pf.forcing.empty())
        throw ArgumentError("solve needs forcing, t0, c, horizon and step");
    CauchyProblem p{pf.matrix, pf.spec, pf.forcing, *pf.t0, pf.c, *pf.horizon, *pf.step};
    p.validate();
    return p;
}

/// CSV per the t, x1_coupled, x1_decoupled, ... layout with a trailing
/// max-deviation comment row.
inline std::string trajectories_to_csv(const Trajectory& coupled, const Trajectory& decoupled)
{
    std::ostringstream out;
    out.precision(15);
    const size_t n = coupled.x.size();
    out << "t";
    for (size_t i = 1; i <= n; ++i)
        out << ",x" << i << "_coupled,x" << i << "_decoupled";
    out << "\n";
    for (size_t k = 0; k < coupled.t.size(); ++k) {
        out << coupled.t[k];
        for (size_t i = 0; i < n; ++i)
            out << "," << coupled.x[i][k] << "," << decoupled.x[i][k];
        out << "\n";
    }
    out << "# max_abs_deviation=" << max_deviation(coupled, decoupled) << "\n";
    return out.str();
}

} // namespace opred
