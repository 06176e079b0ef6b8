#pragma once

#include "opred/cauchy.hpp"
#include "opred/io.hpp"
#include "opred/oracle.hpp"
#include "opred/reduction.hpp"

#include <random>
#include <string>
#include <vector>

namespace opred {

/// Deterministic generators for randomized identity checks.
class TrialGen {
public:
    explicit TrialGen(uint64_t seed) : rng_(seed) {}

    int uniform_int(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    Rational small_rational(int lo = -9, int hi = 9)
    {
        return Rational(uniform_int(lo, hi));
    }

    std::vector<Rational> coefficients(int n, bool nonzero_sum, bool zero_sum)
    {
        for (;;) {
            std::vector<Rational> b;
            for (int i = 0; i < n; ++i)
                b.push_back(small_rational());
            if (zero_sum) {
                // force the sum to zero through the last entry
                Rational s(0);
                for (int i = 0; i < n - 1; ++i)
                    s += b[static_cast<size_t>(i)];
                b[static_cast<size_t>(n - 1)] = -s;
            }
            bool all_zero = true;
            Rational sum(0);
            for (const auto& x : b) {
                if (x != 0)
                    all_zero = false;
                sum += x;
            }
            if (all_zero)
                continue;
            if (nonzero_sum && sum == 0)
                continue;
            return b;
        }
    }

    RankOneSpec rank_one_spec(int n, bool zero_sum = false)
    {
        auto b = coefficients(n, !zero_sum, zero_sum);
        Orientation o = uniform_int(0, 1) ? Orientation::Hat : Orientation::Check;
        return RankOneSpec(std::move(b), o);
    }

    Mat dense_matrix(int n, int lo = -5, int hi = 5)
    {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = small_rational(lo, hi);
        return m;
    }

    Poly poly(int max_degree, int lo = -4, int hi = 4)
    {
        std::vector<Rational> c;
        const int d = uniform_int(0, max_degree);
        for (int i = 0; i <= d; ++i)
            c.push_back(small_rational(lo, hi));
        return Poly(std::move(c));
    }

    PolyExpFunction poly_function(int max_degree)
    {
        return PolyExpFunction::from_poly(poly(max_degree));
    }

    PolyExpFunction poly_exp_function(int max_degree)
    {
        PolyExpFunction f = poly_function(max_degree);
        if (uniform_int(0, 1))
            f.add_term(poly(max_degree), Rational(uniform_int(-3, 3)));
        return f;
    }

    SequenceVec sequence(int length)
    {
        std::vector<Rational> v;
        for (int i = 0; i < length; ++i)
            v.push_back(small_rational(-6, 6));
        return SequenceVec(std::move(v));
    }

private:
    std::mt19937_64 rng_;
};

struct VerifyResult {
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures;

    void record(bool ok, const std::string& what)
    {
        if (ok) {
            ++passed;
        } else {
            ++failed;
            failures.push_back(what);
        }
    }

    void merge(const VerifyResult& other)
    {
        passed += other.passed;
        failed += other.failed;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }
};

/// Decomposition identities on random specs, both parts and orientations.
inline VerifyResult verify_decompositions(int trials, uint64_t seed)
{
    TrialGen gen(seed);
    VerifyResult res;
    for (int t = 0; t < trials; ++t) {
        const int n = gen.uniform_int(2, 8);
        const bool zero_sum = t % 4 == 3; // a quarter of trials hit Part 2
        RankOneSpec spec = gen.rank_one_spec(n, zero_sum);
        const Mat b = build_matrix(spec);
        const auto j = jordan_decomposition(spec);
        const auto r = rational_decomposition(spec);
        bool ok = j.transition * j.transition_inverse == Mat::identity(n) &&
                  j.transition_inverse * b * j.transition == j.canonical &&
                  r.transition * r.transition_inverse == Mat::identity(n) &&
                  r.transition_inverse * b * r.transition == r.canonical;
        res.record(ok, "decomposition identity failed for trial " + std::to_string(t));
    }
    return res;
}

/// total_reduce_rank_one against total_reduce_adjugate, term for term.
inline VerifyResult verify_closed_form_agreement(int trials, uint64_t seed)
{
    TrialGen gen(seed);
    VerifyResult res;
    for (int t = 0; t < trials; ++t) {
        const int n = gen.uniform_int(2, 8);
        RankOneSpec spec = gen.rank_one_spec(n, t % 5 == 4);
        auto closed = total_reduce_rank_one(spec);
        auto general = total_reduce_adjugate(OperatorSystem(build_matrix(spec)));
        res.record(closed == general,
                   "closed-form mismatch for trial " + std::to_string(t));
    }
    return res;
}

/// Adjugate route against the principal-minor route on random dense systems.
inline VerifyResult verify_route_agreement(int trials, uint64_t seed)
{
    TrialGen gen(seed);
    DerivativeOracle oracle;
    VerifyResult res;
    for (int t = 0; t < trials; ++t) {
        const int n = gen.uniform_int(1, 5);
        OperatorSystem sys(gen.dense_matrix(n));
        std::vector<PolyExpFunction> forcing;
        for (int i = 0; i < n; ++i)
            forcing.push_back(gen.poly_function(4));
        auto minors = total_reduce_minors(sys, oracle, forcing);
        auto adjugate = total_reduce_adjugate(sys);
        bool ok = true;
        for (int i = 0; i < n; ++i)
            if (!oracle.equal(minors[static_cast<size_t>(i)],
                              eval_forcing(oracle, adjugate[static_cast<size_t>(i)].rhs, forcing))) {
                ok = false;
                break;
            }
        res.record(ok, "route disagreement for trial " + std::to_string(t));
    }
    return res;
}

/// Synthesize a solution, reduce, substitute back; total and partial.
template <class Oracle, class MakeElement>
VerifyResult verify_implication(int trials, uint64_t seed, const Oracle& oracle,
                                MakeElement make_element, const std::string& label)
{
    TrialGen gen(seed);
    VerifyResult res;
    for (int t = 0; t < trials; ++t) {
        const int n = gen.uniform_int(2, 6);
        RankOneSpec spec = gen.rank_one_spec(n, t % 6 == 5);
        const Mat b = build_matrix(spec);
        std::vector<typename Oracle::Element> x;
        for (int i = 0; i < n; ++i)
            x.push_back(make_element(gen, n));
        auto phi = synthesize_instance(b, x, oracle);

        bool ok = check_reduced(total_reduce_rank_one(spec), x, phi, oracle).ok;
        if (ok && !spec.degenerate())
            ok = check_partial(partial_reduce_jordan(spec), x, phi, oracle).ok;
        if (ok)
            ok = check_partial(partial_reduce_rational(spec), x, phi, oracle).ok;
        res.record(ok, label + " implication failed for trial " + std::to_string(t));
    }
    return res;
}

inline VerifyResult verify_implication_shift(int trials, uint64_t seed)
{
    ShiftOracle oracle;
    return verify_implication(trials, seed, oracle,
                              [](TrialGen& g, int n) { return g.sequence(n + 8); },
                              "shift");
}

inline VerifyResult verify_implication_derivative(int trials, uint64_t seed)
{
    DerivativeOracle oracle;
    return verify_implication(trials, seed, oracle,
                              [](TrialGen& g, int) { return g.poly_exp_function(4); },
                              "derivative");
}

inline VerifyResult run_verify(int trials, uint64_t seed)
{
    VerifyResult res;
    res.merge(verify_decompositions(trials, seed));
    res.merge(verify_closed_form_agreement(trials, seed + 1));
    res.merge(verify_route_agreement(std::max(1, trials / 4), seed + 2));
    res.merge(verify_implication_shift(trials, seed + 3));
    res.merge(verify_implication_derivative(trials, seed + 4));
    return res;
}

} // namespace opred
