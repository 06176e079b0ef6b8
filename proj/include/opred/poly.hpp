#pragma once

#include "opred/rational.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace opred {

/// Univariate polynomial over Rational, coefficients stored in ascending
/// degree with no trailing zeros.
class Poly {
public:
    // Degree of the zero polynomial. Kept far away from -1 so that degree
    // arithmetic stays total: deg_add saturates instead of wrapping.
    static constexpr int kNegInfDegree = std::numeric_limits<int>::min() / 2;

    Poly() = default;

    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }

    static Poly constant(Rational v) { return Poly({std::move(v)}); }

    static Poly monomial(int deg, Rational coeff = Rational(1))
    {
        if (deg < 0)
            throw ArgumentError("monomial degree must be nonnegative");
        std::vector<Rational> c(static_cast<size_t>(deg) + 1, Rational(0));
        c.back() = std::move(coeff);
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }

    int degree() const
    {
        return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1;
    }

    static int deg_add(int a, int b)
    {
        if (a == kNegInfDegree || b == kNegInfDegree)
            return kNegInfDegree;
        return a + b;
    }

    /// Coefficient of x^k; zero outside the stored range.
    Rational coeff(int k) const
    {
        if (k < 0 || k >= static_cast<int>(c_.size()))
            return Rational(0);
        return c_[static_cast<size_t>(k)];
    }

    const std::vector<Rational>& coeffs() const { return c_; }

    Rational leading() const
    {
        return c_.empty() ? Rational(0) : c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b)
    {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < c.size(); ++i)
            c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a) { return Rational(-1) * a; }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }

    friend Poly operator*(const Rational& s, const Poly& p)
    {
        std::vector<Rational> c(p.c_);
        for (auto& x : c)
            x *= s;
        return Poly(std::move(c));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Rational eval(const Rational& x) const
    {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    double eval(double x) const
    {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + to_double(*it);
        return acc;
    }

    Poly derivative() const
    {
        if (c_.size() <= 1)
            return Poly();
        std::vector<Rational> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = Rational(static_cast<long>(i)) * c_[i];
        return Poly(std::move(c));
    }

    /// Human-readable form, highest power first, e.g. "x^2 - 2x".
    std::string str(const std::string& var = "x") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            Rational a = coeff(k);
            if (a == 0)
                continue;
            bool first = out.empty();
            if (a < 0) {
                out += first ? "-" : " - ";
                a = -a;
            } else if (!first) {
                out += " + ";
            }
            const bool unit = (a == 1);
            if (k == 0) {
                out += to_string(unit ? Rational(1) : a);
            } else {
                if (!unit)
                    out += to_string(a);
                out += var;
                if (k > 1)
                    out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Rational> c_;
};

} // namespace opred
