#pragma once

#include "opred/poly.hpp"
#include "opred/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace opred {

/// Truncated rational sequence with explicit validity accounting: only the
/// first valid_length entries are trustworthy, and each shift costs one.
struct SequenceVec {
    std::vector<Rational> values;
    int valid_length = 0;

    SequenceVec() = default;

    SequenceVec(std::vector<Rational> v) : values(std::move(v))
    {
        valid_length = static_cast<int>(values.size());
    }

    SequenceVec(std::vector<Rational> v, int valid)
        : values(std::move(v)), valid_length(valid)
    {
        if (valid > static_cast<int>(values.size()))
            throw ArgumentError("valid_length exceeds stored entries");
    }

    Rational at(int i) const
    {
        return i < static_cast<int>(values.size()) ? values[static_cast<size_t>(i)]
                                                   : Rational(0);
    }
};

struct ShiftOracle {
    using Element = SequenceVec;

    Element apply(const Element& v) const
    {
        if (v.valid_length < 1)
            throw ValidityError("sequence validity exhausted");
        Element out;
        if (!v.values.empty())
            out.values.assign(v.values.begin() + 1, v.values.end());
        out.valid_length = v.valid_length == kUnbounded ? kUnbounded : v.valid_length - 1;
        return out;
    }

    Element zero() const
    {
        Element z;
        z.valid_length = kUnbounded;
        return z;
    }

    Element add(const Element& a, const Element& b) const
    {
        Element out;
        const size_t len = std::max(a.values.size(), b.values.size());
        for (size_t i = 0; i < len; ++i)
            out.values.push_back(a.at(static_cast<int>(i)) + b.at(static_cast<int>(i)));
        out.valid_length = std::min(a.valid_length, b.valid_length);
        return out;
    }

    Element scale(const Rational& s, const Element& v) const
    {
        Element out = v;
        for (auto& x : out.values)
            x *= s;
        return out;
    }

    /// Comparison over the shared trustworthy prefix. Throws if that prefix
    /// is empty, since then nothing can be concluded.
    bool equal(const Element& a, const Element& b) const
    {
        const int len = std::min(a.valid_length, b.valid_length);
        if (len < 1)
            throw ValidityError("no shared valid prefix to compare");
        const int upto = std::min<int>(len, static_cast<int>(std::max(a.values.size(), b.values.size())));
        for (int i = 0; i < upto; ++i)
            if (a.at(i) != b.at(i))
                return false;
        return true;
    }

    static constexpr int kUnbounded = std::numeric_limits<int>::max() / 2;
};

/// Sum of p_j(t) e^{r_j t} with distinct rational rates; closed under d/dt.
struct PolyExpTerm {
    Poly poly;
    Rational rate;

    friend bool operator==(const PolyExpTerm& a, const PolyExpTerm& b)
    {
        return a.poly == b.poly && a.rate == b.rate;
    }
};

struct PolyExpFunction {
    std::vector<PolyExpTerm> terms; // sorted by rate, no zero polynomials

    PolyExpFunction() = default;

    static PolyExpFunction from_poly(Poly p)
    {
        PolyExpFunction f;
        f.add_term(std::move(p), Rational(0));
        return f;
    }

    static PolyExpFunction exponential(Poly p, Rational rate)
    {
        PolyExpFunction f;
        f.add_term(std::move(p), std::move(rate));
        return f;
    }

    void add_term(Poly p, Rational rate)
    {
        if (p.is_zero())
            return;
        auto pos = terms.begin();
        while (pos != terms.end() && pos->rate < rate)
            ++pos;
        if (pos != terms.end() && pos->rate == rate) {
            pos->poly = pos->poly + p;
            if (pos->poly.is_zero())
                terms.erase(pos);
        } else {
            terms.insert(pos, PolyExpTerm{std::move(p), std::move(rate)});
        }
    }

    bool is_zero() const { return terms.empty(); }

    double eval(double t) const
    {
        double acc = 0.0;
        for (const auto& term : terms)
            acc += term.poly.eval(t) * std::exp(to_double(term.rate) * t);
        return acc;
    }

    /// Exact evaluation; defined when every term has rate 0, t = 0, or a
    /// vanishing polynomial part (otherwise e^{rt} is irrational).
    Rational eval_exact(const Rational& t) const
    {
        Rational acc(0);
        for (const auto& term : terms) {
            Rational p = term.poly.eval(t);
            if (p == 0)
                continue;
            if (term.rate != 0 && t != 0)
                throw ArgumentError("exact evaluation needs rate 0 or t = 0");
            acc += p;
        }
        return acc;
    }

    friend bool operator==(const PolyExpFunction& a, const PolyExpFunction& b)
    {
        return a.terms == b.terms;
    }
    friend bool operator!=(const PolyExpFunction& a, const PolyExpFunction& b)
    {
        return !(a == b);
    }
};

/// A polynomial function of t is the rate-zero slice of the class.
using PolyFunction = Poly;

struct DerivativeOracle {
    using Element = PolyExpFunction;

    Element apply(const Element& f) const
    {
        Element out;
        for (const auto& term : f.terms) {
            // (p e^{rt})' = (p' + r p) e^{rt}
            out.add_term(term.poly.derivative() + term.rate * term.poly, term.rate);
        }
        return out;
    }

    Element zero() const { return {}; }

    Element add(const Element& a, const Element& b) const
    {
        Element out = a;
        for (const auto& term : b.terms)
            out.add_term(term.poly, term.rate);
        return out;
    }

    Element scale(const Rational& s, const Element& f) const
    {
        Element out;
        if (s == 0)
            return out;
        for (const auto& term : f.terms)
            out.add_term(s * term.poly, term.rate);
        return out;
    }

    bool equal(const Element& a, const Element& b) const { return a == b; }
};

template <class Oracle>
typename Oracle::Element apply_power(const Oracle& oracle, int m,
                                     typename Oracle::Element v)
{
    if (m < 0)
        throw ArgumentError("operator power must be nonnegative");
    for (int i = 0; i < m; ++i)
        v = oracle.apply(v);
    return v;
}

/// p(A) applied to v: sum p_k A^k(v).
template <class Oracle>
typename Oracle::Element eval_poly_in_A(const Oracle& oracle, const Poly& p,
                                        const typename Oracle::Element& v)
{
    auto acc = oracle.zero();
    auto power = v;
    for (int k = 0; k <= std::max(p.degree(), 0); ++k) {
        if (k > 0)
            power = oracle.apply(power);
        const Rational c = p.coeff(k);
        if (c != 0)
            acc = oracle.add(std::move(acc), oracle.scale(c, power));
    }
    return acc;
}

/// Evaluates a symbolic forcing combination against concrete V-elements.
template <class Oracle>
typename Oracle::Element eval_forcing(const Oracle& oracle, const ForcingExpr& expr,
                                      const std::vector<typename Oracle::Element>& phi)
{
    auto acc = oracle.zero();
    for (const auto& term : expr.terms) {
        if (term.index < 0 || term.index >= static_cast<int>(phi.size()))
            throw ArgumentError("forcing index out of range");
        auto v = apply_power(oracle, term.order, phi[static_cast<size_t>(term.index)]);
        acc = oracle.add(std::move(acc), oracle.scale(term.coeff, v));
    }
    return acc;
}

/// Builds phi := A(x) - Bx, so that (x, phi) solves the system exactly.
template <class Oracle>
std::vector<typename Oracle::Element>
synthesize_instance(const Mat& b, const std::vector<typename Oracle::Element>& x,
                    const Oracle& oracle)
{
    if (!b.is_square() || b.rows() != static_cast<int>(x.size()))
        throw DimensionError("solution length does not match system matrix");
    const int n = b.rows();
    std::vector<typename Oracle::Element> phi;
    for (int i = 0; i < n; ++i) {
        auto acc = oracle.apply(x[static_cast<size_t>(i)]);
        for (int j = 0; j < n; ++j)
            if (b(i, j) != 0)
                acc = oracle.add(std::move(acc),
                                 oracle.scale(-b(i, j), x[static_cast<size_t>(j)]));
        phi.push_back(std::move(acc));
    }
    return phi;
}

struct CheckReport {
    bool ok = true;
    int failed_equation = -1;
    std::string message;
};

/// Substitutes a concrete solution into reduced equations and compares both
/// sides exactly.
template <class Oracle>
CheckReport check_reduced(const std::vector<ReducedEquation>& eqs,
                          const std::vector<typename Oracle::Element>& x,
                          const std::vector<typename Oracle::Element>& phi,
                          const Oracle& oracle)
{
    for (size_t e = 0; e < eqs.size(); ++e) {
        const auto& eq = eqs[e];
        auto lhs = eval_poly_in_A(oracle, eq.lhs, x[static_cast<size_t>(eq.target)]);
        auto rhs = eval_forcing(oracle, eq.rhs, phi);
        if (!oracle.equal(lhs, rhs)) {
            CheckReport r;
            r.ok = false;
            r.failed_equation = static_cast<int>(e);
            r.message = "equation " + std::to_string(e + 1) +
                        " (variable x" + std::to_string(eq.target + 1) +
                        "): lhs differs from rhs";
            return r;
        }
    }
    return {};
}

/// Verifies a partial system: maps (x, phi) through the recorded basis
/// change and checks every equation of the transformed system.
template <class Oracle>
CheckReport check_partial(const PartialSystem& ps,
                          const std::vector<typename Oracle::Element>& x,
                          const std::vector<typename Oracle::Element>& phi,
                          const Oracle& oracle)
{
    const Mat& tinv = ps.basis_change.transition_inverse;
    const int n = tinv.rows();
    std::vector<typename Oracle::Element> y, psi;
    for (int i = 0; i < n; ++i) {
        auto yi = oracle.zero();
        for (int j = 0; j < n; ++j)
            if (tinv(i, j) != 0)
                yi = oracle.add(std::move(yi),
                                oracle.scale(tinv(i, j), x[static_cast<size_t>(j)]));
        y.push_back(std::move(yi));
        psi.push_back(eval_forcing(oracle, ps.new_forcing[static_cast<size_t>(i)], phi));
    }
    for (size_t e = 0; e < ps.equations.size(); ++e) {
        bool ok = true;
        if (const auto* red = std::get_if<ReducedEquation>(&ps.equations[e])) {
            auto lhs = eval_poly_in_A(oracle, red->lhs, y[static_cast<size_t>(red->target)]);
            auto rhs = eval_forcing(oracle, red->rhs, psi);
            ok = oracle.equal(lhs, rhs);
        } else {
            const auto& cpl = std::get<CouplingEquation>(ps.equations[e]);
            auto rhs = oracle.add(oracle.apply(y[static_cast<size_t>(cpl.source)]),
                                  oracle.scale(Rational(-1), psi[static_cast<size_t>(cpl.forcing)]));
            ok = oracle.equal(y[static_cast<size_t>(cpl.target)], rhs);
        }
        if (!ok) {
            CheckReport r;
            r.ok = false;
            r.failed_equation = static_cast<int>(e);
            r.message = "partial equation " + std::to_string(e + 1) + " failed";
            return r;
        }
    }
    return {};
}

} // namespace opred
