#include "opred/oracle.hpp"
#include "opred/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace opred;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }

PolyExpFunction t_poly(std::vector<Rational> coeffs)
{
    return PolyExpFunction::from_poly(Poly(std::move(coeffs)));
}
}

TEST_CASE("sequence validity accounting", "[oracle]")
{
    ShiftOracle o;
    SequenceVec s({q(1), q(2), q(3)});
    CHECK(s.valid_length == 3);
    SequenceVec shifted = o.apply(s);
    CHECK(shifted.values == std::vector<Rational>{q(2), q(3)});
    CHECK(shifted.valid_length == 2);

    SequenceVec spent = o.apply(o.apply(shifted));
    CHECK(spent.valid_length == 0);
    CHECK_THROWS_AS(o.apply(spent), ValidityError);
    CHECK_THROWS_AS(o.equal(spent, s), ValidityError);
}

TEST_CASE("derivative oracle basics", "[oracle]")
{
    DerivativeOracle o;
    SECTION("second derivative of t^3 is 6t")
    {
        auto f = t_poly({q(0), q(0), q(0), q(1)});
        auto d2 = apply_power(o, 2, f);
        CHECK(d2 == t_poly({q(0), q(6)}));
    }
    SECTION("product rule on t e^{2t}")
    {
        auto f = PolyExpFunction::exponential(Poly({q(0), q(1)}), q(2));
        auto d = o.apply(f);
        CHECK(d == PolyExpFunction::exponential(Poly({q(1), q(2)}), q(2)));
    }
    SECTION("e^{2t} solves y'' - 2y' = 0")
    {
        auto f = PolyExpFunction::exponential(Poly({q(1)}), q(2));
        auto out = eval_poly_in_A(o, Poly({q(0), q(-2), q(1)}), f);
        CHECK(out.is_zero());
    }
    SECTION("degree-0 and degree-1 evaluation")
    {
        auto f = t_poly({q(3), q(1)});
        CHECK(eval_poly_in_A(o, Poly::constant(q(1)), f) == f);
        CHECK(eval_poly_in_A(o, Poly::monomial(1), f) == o.apply(f));
    }
}

TEST_CASE("shift apply_power", "[oracle]")
{
    ShiftOracle o;
    SequenceVec s({q(1), q(2), q(3)});
    SequenceVec once = apply_power(o, 1, s);
    CHECK(once.values == std::vector<Rational>{q(2), q(3)});
    CHECK(once.valid_length == 2);
    CHECK(o.equal(apply_power(o, 0, s), s));
    CHECK_THROWS_AS(apply_power(o, 4, s), ValidityError);
}

TEST_CASE("falling factorial derivative powers", "[oracle][property]")
{
    DerivativeOracle o;
    for (int k = 0; k <= 6; ++k) {
        auto f = PolyExpFunction::from_poly(Poly::monomial(k));
        for (int m = 0; m <= 6; ++m) {
            auto d = apply_power(o, m, f);
            if (m > k) {
                CHECK(d.is_zero());
            } else {
                Rational c(1);
                for (int j = 0; j < m; ++j)
                    c *= Rational(k - j);
                CHECK(d == PolyExpFunction::from_poly(c * Poly::monomial(k - m)));
            }
        }
    }
}

TEST_CASE("oracle linearity", "[oracle][property]")
{
    TrialGen gen(301);
    DerivativeOracle d;
    ShiftOracle sh;
    for (int t = 0; t < 25; ++t) {
        Rational a = gen.small_rational(), b = gen.small_rational();
        auto f = gen.poly_exp_function(4);
        auto g = gen.poly_exp_function(4);
        auto lhs = d.apply(d.add(d.scale(a, f), d.scale(b, g)));
        auto rhs = d.add(d.scale(a, d.apply(f)), d.scale(b, d.apply(g)));
        CHECK(lhs == rhs);

        auto u = gen.sequence(8);
        auto v = gen.sequence(8);
        auto slhs = sh.apply(sh.add(sh.scale(a, u), sh.scale(b, v)));
        auto srhs = sh.add(sh.scale(a, sh.apply(u)), sh.scale(b, sh.apply(v)));
        CHECK(sh.equal(slhs, srhs));
    }
}

TEST_CASE("poly-exp class is stable under differentiation", "[oracle][property]")
{
    TrialGen gen(307);
    DerivativeOracle o;
    for (int t = 0; t < 20; ++t) {
        auto f = gen.poly_exp_function(4);
        auto g = f;
        for (int m = 0; m < 5; ++m) {
            g = o.apply(g);
            // rates stay pairwise distinct and sorted
            for (size_t i = 1; i < g.terms.size(); ++i)
                CHECK(g.terms[i - 1].rate < g.terms[i].rate);
            // a nonzero-rate term never dies, and its degree is stable
            for (const auto& term : f.terms)
                if (term.rate != 0) {
                    bool found = false;
                    for (const auto& gt : g.terms)
                        if (gt.rate == term.rate) {
                            CHECK(gt.poly.degree() == term.poly.degree());
                            found = true;
                        }
                    CHECK(found);
                }
        }
    }
}

TEST_CASE("synthesize_instance builds exact solutions", "[oracle]")
{
    DerivativeOracle o;
    SECTION("worked n=2 example")
    {
        Mat b({{q(1), q(1)}, {q(1), q(1)}});
        std::vector<PolyExpFunction> x{t_poly({q(0), q(1)}), t_poly({q(1)})};
        auto phi = synthesize_instance(b, x, o);
        CHECK(phi[0] == t_poly({q(0), q(-1)}));  // -t
        CHECK(phi[1] == t_poly({q(-1), q(-1)})); // -t - 1
    }
    SECTION("zero solution gives zero forcing")
    {
        Mat b({{q(3), q(2)}, {q(1), q(4)}});
        std::vector<PolyExpFunction> x{PolyExpFunction{}, PolyExpFunction{}};
        auto phi = synthesize_instance(b, x, o);
        CHECK(phi[0].is_zero());
        CHECK(phi[1].is_zero());
    }
    SECTION("zero matrix decouples")
    {
        Mat b = Mat::zero(2, 2);
        std::vector<PolyExpFunction> x{t_poly({q(0), q(0), q(1)}), t_poly({q(2)})};
        auto phi = synthesize_instance(b, x, o);
        CHECK(phi[0] == o.apply(x[0]));
        CHECK(phi[1] == o.apply(x[1]));
    }
}

TEST_CASE("check_reduced validates and detects perturbations", "[oracle]")
{
    DerivativeOracle o;
    Mat b({{q(1), q(1)}, {q(1), q(1)}});
    RankOneSpec spec({q(1), q(1)}, Orientation::Hat);
    std::vector<PolyExpFunction> x{t_poly({q(0), q(1)}), t_poly({q(1)})};
    auto phi = synthesize_instance(b, x, o);
    auto eqs = total_reduce_rank_one(spec);

    CHECK(check_reduced(eqs, x, phi, o).ok);

    // (A^2 - 2A)(t) = -2 must equal A(phi1) + phi2 - phi1 = -1 + (-1) = -2
    auto lhs = eval_poly_in_A(o, eqs[0].lhs, x[0]);
    CHECK(lhs == t_poly({q(-2)}));
    auto rhs = eval_forcing(o, eqs[0].rhs, phi);
    CHECK(rhs == t_poly({q(-2)}));

    SECTION("homogeneous zero case")
    {
        std::vector<PolyExpFunction> zx{PolyExpFunction{}, PolyExpFunction{}};
        auto zphi = synthesize_instance(b, zx, o);
        CHECK(check_reduced(eqs, zx, zphi, o).ok);
    }
    SECTION("perturbed coefficient is caught and reported")
    {
        auto bad = eqs;
        bad[1].rhs.add(q(1), 0, 0);
        auto report = check_reduced(bad, x, phi, o);
        CHECK_FALSE(report.ok);
        CHECK(report.failed_equation == 1);
        CHECK_FALSE(report.message.empty());
    }
}

TEST_CASE("full pipeline over both oracles", "[oracle][property]")
{
    CHECK(verify_implication_shift(100, 401).failed == 0);
    CHECK(verify_implication_derivative(100, 409).failed == 0);
}
