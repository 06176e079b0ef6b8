#include "opred/cauchy.hpp"
#include "opred/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace opred;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }

PolyExpFunction t_poly(std::vector<Rational> coeffs)
{
    return PolyExpFunction::from_poly(Poly(std::move(coeffs)));
}

CauchyProblem make_problem(Mat m, std::optional<RankOneSpec> spec,
                           std::vector<PolyExpFunction> forcing,
                           std::vector<Rational> c, Rational horizon = Rational(1),
                           Rational step = Rational(1, 100))
{
    return CauchyProblem{std::move(m), std::move(spec), std::move(forcing),
                         Rational(0), std::move(c), std::move(horizon),
                         std::move(step)};
}
}

TEST_CASE("derived initial conditions", "[cauchy]")
{
    SECTION("zero matrix, zero forcing")
    {
        auto p = make_problem(Mat::zero(3, 3), std::nullopt,
                              {PolyExpFunction{}, PolyExpFunction{}, PolyExpFunction{}},
                              {q(4), q(-1), q(2)});
        auto d = derive_initial_conditions(p);
        for (int i = 0; i < 3; ++i) {
            CHECK(d.table[static_cast<size_t>(i)][0] == p.c[static_cast<size_t>(i)]);
            CHECK(d.table[static_cast<size_t>(i)][1] == 0);
            CHECK(d.table[static_cast<size_t>(i)][2] == 0);
        }
    }
    SECTION("homogeneous n=2 rank-one")
    {
        RankOneSpec spec({q(1), q(1)}, Orientation::Hat);
        auto p = make_problem(build_matrix(spec), spec,
                              {PolyExpFunction{}, PolyExpFunction{}}, {q(1), q(0)});
        auto d = derive_initial_conditions(p);
        CHECK(d.table[0] == std::vector<Rational>{q(1), q(1)});
        CHECK(d.table[1] == std::vector<Rational>{q(0), q(1)});
    }
    SECTION("forced n=2 rank-one")
    {
        RankOneSpec spec({q(1), q(1)}, Orientation::Hat);
        auto p = make_problem(build_matrix(spec), spec,
                              {t_poly({q(1)}), t_poly({q(0), q(1)})}, {q(0), q(0)});
        auto d = derive_initial_conditions(p);
        CHECK(d.table[0] == std::vector<Rational>{q(0), q(1)});
        CHECK(d.table[1] == std::vector<Rational>{q(0), q(0)});
    }
    SECTION("matches exact derivatives of synthesized polynomial solutions")
    {
        DerivativeOracle o;
        TrialGen gen(501);
        for (int t = 0; t < 10; ++t) {
            const int n = gen.uniform_int(2, 4);
            Mat b = gen.dense_matrix(n);
            std::vector<PolyExpFunction> x;
            for (int i = 0; i < n; ++i)
                x.push_back(gen.poly_function(4));
            auto phi = synthesize_instance(b, x, o);
            std::vector<Rational> c;
            for (const auto& xi : x)
                c.push_back(xi.eval_exact(q(0)));
            auto p = make_problem(b, std::nullopt, phi, c);
            auto d = derive_initial_conditions(p);
            for (int i = 0; i < n; ++i) {
                auto deriv = x[static_cast<size_t>(i)];
                for (int m = 0; m < n; ++m) {
                    CHECK(d.table[static_cast<size_t>(i)][static_cast<size_t>(m)] ==
                          deriv.eval_exact(q(0)));
                    deriv = o.apply(deriv);
                }
            }
        }
    }
}

TEST_CASE("coupled integrator reference cases", "[cauchy]")
{
    SECTION("x' = 0 stays constant")
    {
        auto p = make_problem(Mat::zero(2, 2), std::nullopt,
                              {PolyExpFunction{}, PolyExpFunction{}}, {q(1), q(2)});
        auto traj = solve_coupled(p);
        for (double v : traj.x[0])
            CHECK(v == 1.0);
        for (double v : traj.x[1])
            CHECK(v == 2.0);
    }
    SECTION("n=1 exponential")
    {
        auto p = make_problem(Mat({{q(2)}}), std::nullopt, {PolyExpFunction{}}, {q(1)});
        auto traj = solve_coupled(p);
        for (size_t k = 0; k < traj.t.size(); ++k)
            CHECK(std::fabs(traj.x[0][k] - std::exp(2 * traj.t[k])) < 1e-7);
    }
    SECTION("nilpotent matrix integrates exactly")
    {
        RankOneSpec spec({q(1), q(-1)}, Orientation::Hat);
        auto p = make_problem(build_matrix(spec), spec,
                              {PolyExpFunction{}, PolyExpFunction{}}, {q(1), q(0)});
        auto traj = solve_coupled(p);
        // B^2 = O so x(t) = (I + tB)c = (1 + t, -t)
        for (size_t k = 0; k < traj.t.size(); ++k) {
            CHECK(std::fabs(traj.x[0][k] - (1 + traj.t[k])) < 1e-10);
            CHECK(std::fabs(traj.x[1][k] + traj.t[k]) < 1e-10);
        }
    }
    SECTION("invalid step or horizon")
    {
        auto p = make_problem(Mat::zero(2, 2), std::nullopt,
                              {PolyExpFunction{}, PolyExpFunction{}}, {q(1), q(2)});
        p.step = q(0);
        CHECK_THROWS_AS(solve_coupled(p), ArgumentError);
        p.step = q(1, 10);
        p.horizon = q(0);
        CHECK_THROWS_AS(solve_coupled(p), ArgumentError);
    }
}

TEST_CASE("decoupled integrator", "[cauchy]")
{
    SECTION("n=1 reduces to the same scalar ODE")
    {
        auto p = make_problem(Mat({{q(2)}}), std::nullopt,
                              {t_poly({q(1)})}, {q(1)});
        auto coupled = solve_coupled(p);
        auto decoupled = solve_decoupled(p);
        CHECK(max_deviation(coupled, decoupled) == 0.0);
    }
    SECTION("worked n=2 example follows x1 = t")
    {
        RankOneSpec spec({q(1), q(1)}, Orientation::Hat);
        auto p = make_problem(build_matrix(spec), spec,
                              {t_poly({q(0), q(-1)}), t_poly({q(-1), q(-1)})},
                              {q(0), q(1)});
        auto traj = solve_decoupled(p);
        for (size_t k = 0; k < traj.t.size(); ++k)
            CHECK(std::fabs(traj.x[0][k] - traj.t[k]) < 1e-8);
    }
    SECTION("homogeneous b=(1,2,3) coupled/decoupled agreement")
    {
        RankOneSpec spec({q(1), q(2), q(3)}, Orientation::Hat);
        auto p = make_problem(build_matrix(spec), spec,
                              {PolyExpFunction{}, PolyExpFunction{}, PolyExpFunction{}},
                              {q(1), q(1), q(1)});
        auto coupled = solve_coupled(p);
        auto decoupled = solve_decoupled(p);
        CHECK(max_deviation(coupled, decoupled) < 1e-6);
    }
}

TEST_CASE("fourth-order convergence of the deviation", "[cauchy][property]")
{
    RankOneSpec spec({q(1), q(2), q(3)}, Orientation::Hat);
    auto forcing = std::vector<PolyExpFunction>{
        t_poly({q(1), q(1)}), t_poly({q(0), q(0), q(1)}), t_poly({q(2)})};
    auto p = make_problem(build_matrix(spec), spec, forcing, {q(1), q(0), q(-1)});
    auto dev = [&](Rational step) {
        auto pp = p;
        pp.step = std::move(step);
        return max_deviation(solve_coupled(pp), solve_decoupled(pp));
    };
    const double d1 = dev(q(1, 100));
    const double d2 = dev(q(1, 200));
    CHECK(d1 <= 1e-6);
    const double factor = d1 / d2;
    CHECK(factor >= 8.0);
    CHECK(factor <= 32.0);
}
