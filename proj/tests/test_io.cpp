#include "opred/io.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace opred;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("reduced equation rendering", "[io]")
{
    RankOneSpec spec({q(1), q(1)}, Orientation::Hat);
    OperatorSystem sys(build_matrix(spec));
    auto eqs = total_reduce_rank_one(spec);
    CHECK(format_equation(eqs[0], sys.variables, sys.forcing) ==
          "(A^2 - 2A) x1 = A(phi1) + phi2 - phi1");
    CHECK(format_equation(eqs[1], sys.variables, sys.forcing) ==
          "(A^2 - 2A) x2 = A(phi2) + phi1 - phi2");
}

TEST_CASE("partial system rendering", "[io]")
{
    RankOneSpec spec({q(1), q(1)}, Orientation::Hat);
    auto ps = partial_reduce_jordan(spec);
    std::string text = format_partial_system(ps);
    CHECK(text.find("A(y1) = psi1") != std::string::npos);
    CHECK(text.find("(A - 2) y2 = psi2") != std::string::npos);
}

TEST_CASE("machine-readable reductions round-trip", "[io]")
{
    RankOneSpec spec({q(3), q(-2), q(5, 2)}, Orientation::Check);
    auto eqs = total_reduce_rank_one(spec);
    auto parsed = equations_from_json(equations_to_json(eqs));
    REQUIRE(parsed.size() == eqs.size());
    for (size_t i = 0; i < eqs.size(); ++i)
        CHECK(parsed[i] == eqs[i]);

    // dense systems as well
    auto dense = total_reduce_adjugate(OperatorSystem(
        Mat({{q(1, 3), q(2)}, {q(0), q(-4)}})));
    CHECK(equations_from_json(equations_to_json(dense)) == dense);
}

TEST_CASE("problem parsing", "[io]")
{
    auto doc = nlohmann::json::parse(R"({
        "n": 2,
        "matrix": {"kind": "hat", "b": ["1", "1"]},
        "forcing": [
          [{"poly": ["0", "-1"], "rate": "0"}],
          [{"poly": ["-1", "-1"], "rate": "0"}]
        ],
        "t0": "0", "c": ["0", "1"], "horizon": "1", "step": "1/100"
    })");
    ProblemFile pf = parse_problem(doc);
    REQUIRE(pf.spec.has_value());
    CHECK(pf.spec->orientation == Orientation::Hat);
    CHECK(pf.matrix == Mat({{q(1), q(1)}, {q(1), q(1)}}));
    CauchyProblem p = to_cauchy_problem(pf);
    CHECK(p.step == q(1, 100));

    SECTION("dense matrices")
    {
        auto dense = nlohmann::json::parse(R"({
            "n": 2,
            "matrix": {"kind": "dense", "entries": [["1", "1/2"], ["0", "3"]]}
        })");
        ProblemFile df = parse_problem(dense);
        CHECK_FALSE(df.spec.has_value());
        CHECK(df.matrix(0, 1) == q(1, 2));
        CHECK_THROWS_AS(to_cauchy_problem(df), ArgumentError);
    }
    SECTION("malformed input")
    {
        auto bad = doc;
        bad["matrix"]["kind"] = "sparse";
        CHECK_THROWS_AS(parse_problem(bad), ArgumentError);
        bad = doc;
        bad["c"] = {"1"};
        CHECK_THROWS_AS(parse_problem(bad), ArgumentError);
        bad = doc;
        bad["matrix"]["b"] = {"1", "x"};
        CHECK_THROWS_AS(parse_problem(bad), ArgumentError);
    }
}

TEST_CASE("csv layout", "[io]")
{
    Trajectory a, b;
    a.t = {0.0, 0.5};
    a.x = {{1.0, 2.0}};
    b.t = a.t;
    b.x = {{1.0, 2.5}};
    std::string csv = trajectories_to_csv(a, b);
    CHECK(csv.rfind("t,x1_coupled,x1_decoupled\n", 0) == 0);
    CHECK(csv.find("# max_abs_deviation=0.5") != std::string::npos);
}
