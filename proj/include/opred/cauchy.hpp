#pragma once

#include "opred/oracle.hpp"
#include "opred/reduction.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace opred {

/// Initial-value problem for A = d/dt: x' = Bx + phi(t), x(t0) = c.
struct CauchyProblem {
    Mat matrix;
    std::optional<RankOneSpec> spec; // set when the matrix came from the family
    std::vector<PolyExpFunction> forcing;
    Rational t0;
    std::vector<Rational> c;
    Rational horizon;
    Rational step;

    int n() const { return matrix.rows(); }

    void validate() const
    {
        if (!matrix.is_square())
            throw DimensionError("system matrix must be square");
        const int dim = matrix.rows();
        if (static_cast<int>(forcing.size()) != dim || static_cast<int>(c.size()) != dim)
            throw DimensionError("forcing / initial condition length mismatch");
        if (step <= 0)
            throw ArgumentError("step must be positive");
        if (horizon <= t0)
            throw ArgumentError("horizon must exceed t0");
    }
};

/// table[i][m] = x_i^(m)(t0), exact, for 0 <= m <= n-1.
struct DerivedInitialConditions {
    std::vector<std::vector<Rational>> table;
};

/// Recursive substitution: column m+1 = B * column m + phi^(m)(t0).
inline DerivedInitialConditions derive_initial_conditions(const CauchyProblem& p)
{
    p.validate();
    const int n = p.n();
    DerivedInitialConditions out;
    out.table.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));

    DerivativeOracle d;
    std::vector<PolyExpFunction> phi = p.forcing;
    std::vector<Rational> col = p.c;
    for (int m = 0; m < n; ++m) {
        for (int i = 0; i < n; ++i)
            out.table[static_cast<size_t>(i)][static_cast<size_t>(m)] = col[static_cast<size_t>(i)];
        if (m == n - 1)
            break;
        std::vector<Rational> next = p.matrix * col;
        for (int i = 0; i < n; ++i)
            next[static_cast<size_t>(i)] += phi[static_cast<size_t>(i)].eval_exact(p.t0);
        for (auto& f : phi)
            f = d.apply(f);
        col = std::move(next);
    }
    return out;
}

struct Trajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> x; // x[variable][grid point]
};

namespace detail {

/// Classical RK4 over the rational grid t0, t0+h, ... while t <= horizon.
inline Trajectory rk4(const std::function<std::vector<double>(double, const std::vector<double>&)>& f,
                      std::vector<double> y0, const Rational& t0, const Rational& horizon,
                      const Rational& step, int keep)
{
    const double h = to_double(step);
    Trajectory traj;
    traj.x.assign(static_cast<size_t>(keep), {});
    std::vector<double> y = std::move(y0);
    Rational t = t0;
    auto record = [&](double tt, const std::vector<double>& yy) {
        traj.t.push_back(tt);
        for (int i = 0; i < keep; ++i)
            traj.x[static_cast<size_t>(i)].push_back(yy[static_cast<size_t>(i)]);
    };
    record(to_double(t), y);
    auto axpy = [](const std::vector<double>& a, double s, const std::vector<double>& b) {
        std::vector<double> r(a.size());
        for (size_t i = 0; i < a.size(); ++i)
            r[i] = a[i] + s * b[i];
        return r;
    };
    while (t + step <= horizon) {
        const double td = to_double(t);
        auto k1 = f(td, y);
        auto k2 = f(td + h / 2, axpy(y, h / 2, k1));
        auto k3 = f(td + h / 2, axpy(y, h / 2, k2));
        auto k4 = f(td + h, axpy(y, h, k3));
        for (size_t i = 0; i < y.size(); ++i)
            y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        t += step;
        record(to_double(t), y);
    }
    return traj;
}

} // namespace detail

/// Reference integration of the coupled first-order system.
inline Trajectory solve_coupled(const CauchyProblem& p)
{
    p.validate();
    const int n = p.n();
    std::vector<std::vector<double>> b(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b[static_cast<size_t>(i)][static_cast<size_t>(j)] = to_double(p.matrix(i, j));
    auto f = [&, b](double t, const std::vector<double>& x) {
        std::vector<double> dx(static_cast<size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = p.forcing[static_cast<size_t>(i)].eval(t);
            for (int j = 0; j < n; ++j)
                acc += b[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
            dx[static_cast<size_t>(i)] = acc;
        }
        return dx;
    };
    std::vector<double> y0;
    for (const auto& ci : p.c)
        y0.push_back(to_double(ci));
    return detail::rk4(f, std::move(y0), p.t0, p.horizon, p.step, n);
}

/// Integration of the totally reduced equations: each variable follows its
/// order-n scalar equation in companion first-order form, seeded with the
/// derived initial conditions.
inline Trajectory solve_decoupled(const CauchyProblem& p)
{
    p.validate();
    const int n = p.n();
    const auto eqs = p.spec ? total_reduce_rank_one(*p.spec)
                            : total_reduce_adjugate(OperatorSystem(p.matrix));
    const auto seeds = derive_initial_conditions(p);

    DerivativeOracle d;
    Trajectory traj;
    for (int i = 0; i < n; ++i) {
        const auto& eq = eqs[static_cast<size_t>(i)];
        const int order = eq.lhs.degree();
        // Right-hand side as one exact poly-exp function of t.
        PolyExpFunction rhs = eval_forcing(d, eq.rhs, p.forcing);
        std::vector<double> dcoef(static_cast<size_t>(order));
        for (int k = 0; k < order; ++k)
            dcoef[static_cast<size_t>(k)] = to_double(eq.lhs.coeff(k));
        auto f = [&, dcoef, order](double t, const std::vector<double>& z) {
            std::vector<double> dz(static_cast<size_t>(order));
            for (int k = 0; k + 1 < order; ++k)
                dz[static_cast<size_t>(k)] = z[static_cast<size_t>(k) + 1];
            double top = rhs.eval(t);
            for (int k = 0; k < order; ++k)
                top -= dcoef[static_cast<size_t>(k)] * z[static_cast<size_t>(k)];
            dz[static_cast<size_t>(order - 1)] = top;
            return dz;
        };
        std::vector<double> z0;
        for (int m = 0; m < order; ++m)
            z0.push_back(to_double(seeds.table[static_cast<size_t>(i)][static_cast<size_t>(m)]));
        Trajectory one = detail::rk4(f, std::move(z0), p.t0, p.horizon, p.step, 1);
        if (i == 0)
            traj.t = one.t;
        traj.x.push_back(std::move(one.x[0]));
    }
    return traj;
}

inline double max_deviation(const Trajectory& a, const Trajectory& b)
{
    double dev = 0.0;
    for (size_t v = 0; v < a.x.size(); ++v)
        for (size_t k = 0; k < a.x[v].size(); ++k)
            dev = std::max(dev, std::fabs(a.x[v][k] - b.x[v][k]));
    return dev;
}

} // namespace opred
