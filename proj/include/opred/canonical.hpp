#pragma once

#include "opred/linalg.hpp"
#include "opred/matrix.hpp"
#include "opred/poly.hpp"

#include <numeric>
#include <vector>

namespace opred {

enum class Orientation { Hat, Check };

/// The rank-one system-matrix family: Hat has every row equal to b,
/// Check (its transpose) has every column equal to b.
struct RankOneSpec {
    std::vector<Rational> b;
    Orientation orientation = Orientation::Hat;

    RankOneSpec(std::vector<Rational> coeffs, Orientation o)
        : b(std::move(coeffs)), orientation(o)
    {
        if (b.size() < 2)
            throw ArgumentError("rank-one spec needs n >= 2");
        bool all_zero = true;
        for (const auto& x : b)
            if (x != 0) {
                all_zero = false;
                break;
            }
        if (all_zero)
            throw ArgumentError("rank-one spec rejects b = 0 (system matrix would be zero)");
    }

    int n() const { return static_cast<int>(b.size()); }

    Rational sum() const
    {
        return std::accumulate(b.begin(), b.end(), Rational(0));
    }

    bool degenerate() const { return sum() == 0; }
};

enum class CanonicalKind { Jordan, Rational };

struct Decomposition {
    Mat canonical;
    Mat transition;
    Mat transition_inverse;
    CanonicalKind kind = CanonicalKind::Jordan;
    bool degenerate = false;
    // Pivot row used for the Check orientation when b_1 = 0 forces a
    // permuted kernel basis; -1 when the default first-entry pivot applies.
    int pivot = -1;
};

inline Mat build_matrix(const RankOneSpec& spec)
{
    const int n = spec.n();
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = spec.orientation == Orientation::Hat ? spec.b[static_cast<size_t>(i)]
                                                           : spec.b[static_cast<size_t>(j)];
    return m;
}

/// lambda^{n-1} (lambda - sum b_i)
inline Poly rank_one_char_poly(const RankOneSpec& spec)
{
    return Poly::monomial(spec.n() - 1) * (Poly::monomial(1) - Poly::constant(spec.sum()));
}

/// lambda (lambda - sum b_i); equals lambda^2 in the degenerate case.
inline Poly rank_one_min_poly(const RankOneSpec& spec)
{
    return Poly::monomial(1) * (Poly::monomial(1) - Poly::constant(spec.sum()));
}

/// Nontrivial invariant factors, largest last: n-2 copies of lambda followed
/// by lambda(lambda - sum b_i) (which degenerates to lambda^2 when the sum
/// vanishes).
inline std::vector<Poly> invariant_factors(const RankOneSpec& spec)
{
    std::vector<Poly> f;
    for (int i = 0; i < spec.n() - 2; ++i)
        f.push_back(Poly::monomial(1));
    f.push_back(rank_one_min_poly(spec));
    return f;
}

namespace detail {

/// First index with b_p != 0.
inline int first_nonzero(const std::vector<Rational>& b)
{
    for (size_t i = 0; i < b.size(); ++i)
        if (b[i] != 0)
            return static_cast<int>(i);
    throw ArgumentError("all-zero coefficient vector");
}

/// Kernel basis of the Hat matrix, i.e. of {x : sum x_i = 0}:
/// v_j = e_{j+1} - e_1 for j = 1..n-1.
inline std::vector<std::vector<Rational>> hat_kernel_basis(int n)
{
    std::vector<std::vector<Rational>> basis;
    for (int j = 1; j < n; ++j) {
        std::vector<Rational> v(static_cast<size_t>(n), Rational(0));
        v[0] = -1;
        v[static_cast<size_t>(j)] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Kernel basis of the Check matrix, i.e. of {x : sum b_i x_i = 0}:
/// w_j = e_j - (b_j / b_p) e_p for j != p, p the pivot.
inline std::vector<std::vector<Rational>> check_kernel_basis(const std::vector<Rational>& b, int p)
{
    const int n = static_cast<int>(b.size());
    std::vector<std::vector<Rational>> basis;
    for (int j = 0; j < n; ++j) {
        if (j == p)
            continue;
        std::vector<Rational> w(static_cast<size_t>(n), Rational(0));
        w[static_cast<size_t>(j)] = 1;
        w[static_cast<size_t>(p)] = -b[static_cast<size_t>(j)] / b[static_cast<size_t>(p)];
        basis.push_back(std::move(w));
    }
    return basis;
}

/// Greedily selects `count` vectors from `candidates` that extend `seed` to
/// an independent set, by Gaussian elimination with leftmost pivots.
inline std::vector<std::vector<Rational>>
complete_basis(const std::vector<std::vector<Rational>>& seed,
               const std::vector<std::vector<Rational>>& candidates, int count)
{
    std::vector<std::vector<Rational>> reduced; // row-echelon workspace
    auto try_insert = [&](std::vector<Rational> v) -> bool {
        for (const auto& r : reduced) {
            size_t lead = 0;
            while (lead < r.size() && r[lead] == 0)
                ++lead;
            if (lead < v.size() && v[lead] != 0) {
                Rational f = v[lead] / r[lead];
                for (size_t j = lead; j < v.size(); ++j)
                    v[j] -= f * r[j];
            }
        }
        for (const auto& x : v)
            if (x != 0) {
                reduced.push_back(std::move(v));
                std::sort(reduced.begin(), reduced.end(), [](const auto& a, const auto& b) {
                    size_t la = 0, lb = 0;
                    while (la < a.size() && a[la] == 0)
                        ++la;
                    while (lb < b.size() && b[lb] == 0)
                        ++lb;
                    return la < lb;
                });
                return true;
            }
        return false;
    };
    for (const auto& s : seed)
        if (!try_insert(s))
            throw ArgumentError("seed vectors are dependent");
    std::vector<std::vector<Rational>> chosen;
    for (const auto& c : candidates) {
        if (static_cast<int>(chosen.size()) == count)
            break;
        if (try_insert(c))
            chosen.push_back(c);
    }
    if (static_cast<int>(chosen.size()) != count)
        throw ArgumentError("could not complete basis");
    return chosen;
}

inline Mat columns_to_matrix(const std::vector<std::vector<Rational>>& cols)
{
    const int n = static_cast<int>(cols.size());
    Mat m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return m;
}

/// Part 1 Jordan canonical form diag(0, ..., 0, sum).
inline Mat jordan_canonical(int n, const Rational& sum)
{
    Mat j(n, n);
    j(n - 1, n - 1) = sum;
    return j;
}

/// Part 1 rational canonical form: single nilpotent 1x1 blocks then the
/// companion of lambda^2 - sum lambda in the bottom-right corner.
inline Mat rational_canonical(int n, const Rational& sum)
{
    Mat c(n, n);
    c(n - 2, n - 1) = 1;
    c(n - 1, n - 1) = sum;
    return c;
}

/// Part 2 shared canonical form: one size-2 Jordan block at 0.
inline Mat degenerate_canonical(int n)
{
    Mat c(n, n);
    c(n - 2, n - 1) = 1;
    return c;
}

/// Closed-form inverse of the nondegenerate Hat modal matrix S.
inline Mat hat_modal_inverse(const std::vector<Rational>& b, const Rational& sum)
{
    const int n = static_cast<int>(b.size());
    Mat inv(n, n);
    const Rational pre = Rational(-1) / sum;
    for (int k = 0; k < n - 1; ++k)
        for (int j = 0; j < n; ++j) {
            if (j == k + 1) {
                Rational s(0);
                for (int i = 0; i < n; ++i)
                    if (i != k + 1)
                        s += b[static_cast<size_t>(i)];
                inv(k, j) = pre * (-s);
            } else {
                inv(k, j) = pre * b[static_cast<size_t>(k + 1)];
            }
        }
    for (int j = 0; j < n; ++j)
        inv(n - 1, j) = pre * Rational(-1);
    return inv;
}

/// Corrector R: identity with -1/sum at (n-2, n-1); maps J to C.
inline Mat corrector(int n, const Rational& sum)
{
    Mat r = Mat::identity(n);
    r(n - 2, n - 1) = Rational(-1) / sum;
    return r;
}

inline Mat corrector_inverse(int n, const Rational& sum)
{
    Mat r = Mat::identity(n);
    r(n - 2, n - 1) = Rational(1) / sum;
    return r;
}

inline Decomposition jordan_part1(const RankOneSpec& spec)
{
    const int n = spec.n();
    const Rational sum = spec.sum();
    Decomposition d;
    d.kind = CanonicalKind::Jordan;
    d.degenerate = false;
    d.canonical = jordan_canonical(n, sum);
    if (spec.orientation == Orientation::Hat) {
        auto cols = hat_kernel_basis(n);
        cols.push_back(spec.b); // eigenvector for lambda = sum
        d.transition = columns_to_matrix(cols);
        d.transition_inverse = hat_modal_inverse(spec.b, sum);
    } else {
        const int p = first_nonzero(spec.b);
        d.pivot = p == 0 ? -1 : p;
        auto cols = check_kernel_basis(spec.b, p);
        cols.push_back(std::vector<Rational>(static_cast<size_t>(n), Rational(1)));
        d.transition = columns_to_matrix(cols);
        d.transition_inverse = inverse(d.transition);
    }
    return d;
}

inline Decomposition jordan_part2(const RankOneSpec& spec)
{
    const int n = spec.n();
    Decomposition d;
    d.kind = CanonicalKind::Jordan;
    d.degenerate = true;
    d.canonical = degenerate_canonical(n);

    // Kernel contains the chain eigenvector; complete it to a kernel basis,
    // then append the generalized eigenvector u with B u = chain vector.
    std::vector<std::vector<Rational>> chain;
    std::vector<std::vector<Rational>> kernel;
    std::vector<Rational> u(static_cast<size_t>(n), Rational(0));
    if (spec.orientation == Orientation::Hat) {
        chain.push_back(spec.b); // B^ e_1 = b
        kernel = hat_kernel_basis(n);
        u[0] = 1;
    } else {
        const int p = first_nonzero(spec.b);
        d.pivot = p == 0 ? -1 : p;
        chain.push_back(std::vector<Rational>(static_cast<size_t>(n), Rational(1)));
        kernel = check_kernel_basis(spec.b, p);
        // B~ (e_p / b_p) = ones
        u[static_cast<size_t>(p)] = Rational(1) / spec.b[static_cast<size_t>(p)];
    }
    auto completion = complete_basis(chain, kernel, n - 2);
    std::vector<std::vector<Rational>> cols = std::move(completion);
    cols.push_back(chain[0]);
    cols.push_back(std::move(u));
    d.transition = columns_to_matrix(cols);
    d.transition_inverse = inverse(d.transition);
    return d;
}

} // namespace detail

inline Decomposition jordan_decomposition(const RankOneSpec& spec)
{
    return spec.degenerate() ? detail::jordan_part2(spec) : detail::jordan_part1(spec);
}

inline Decomposition rational_decomposition(const RankOneSpec& spec)
{
    if (spec.degenerate()) {
        // Jordan and rational forms coincide; reuse the Jordan output.
        return detail::jordan_part2(spec);
    }
    const int n = spec.n();
    const Rational sum = spec.sum();
    Decomposition j = detail::jordan_part1(spec);
    Decomposition d;
    d.kind = CanonicalKind::Rational;
    d.degenerate = false;
    d.pivot = j.pivot;
    d.canonical = detail::rational_canonical(n, sum);
    const Mat r = detail::corrector(n, sum);
    const Mat rinv = detail::corrector_inverse(n, sum);
    // T = S R turns J = S^-1 B S into C = T^-1 B T; the same order works
    // for the Check orientation (H = G R).
    d.transition = j.transition * r;
    d.transition_inverse = rinv * j.transition_inverse;
    return d;
}

} // namespace opred
