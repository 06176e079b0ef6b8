#pragma once

#include "opred/matrix.hpp"
#include "opred/poly.hpp"

#include <utility>
#include <vector>

namespace opred {

/// Coefficients of adj(lambda I - B) as a matrix polynomial:
/// adj(lambda I - B) = lambda^{n-1} B_0 + lambda^{n-2} B_1 + ... + B_{n-1}.
struct AdjugateCoeffs {
    int n = 0;
    std::vector<Mat> coeffs; // B_0 ... B_{n-1}
};

namespace detail {

/// Faddeev-LeVerrier pass: produces the characteristic polynomial
/// lambda^n + d_1 lambda^{n-1} + ... + d_n together with the adjugate
/// coefficients B_0..B_{n-1} (B_0 = I, B_k = B_{k-1} B + d_k I).
inline std::pair<Poly, AdjugateCoeffs> faddeev(const Mat& m)
{
    if (!m.is_square())
        throw DimensionError("characteristic polynomial of non-square matrix");
    const int n = m.rows();

    std::vector<Rational> d(static_cast<size_t>(n) + 1, Rational(0));
    AdjugateCoeffs adj;
    adj.n = n;

    Mat bk = Mat::identity(n);
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            bk = bk * m;
            for (int i = 0; i < n; ++i)
                bk(i, i) += d[static_cast<size_t>(k - 1)];
        }
        if (k <= n)
            adj.coeffs.push_back(bk);
        Mat prod = bk * m;
        Rational tr(0);
        for (int i = 0; i < n; ++i)
            tr += prod(i, i);
        d[static_cast<size_t>(k)] = -tr / Rational(k);
    }
    // adj.coeffs currently holds B_0..B_{n-1}.
    std::vector<Rational> ascending(static_cast<size_t>(n) + 1);
    ascending[static_cast<size_t>(n)] = 1;
    for (int k = 1; k <= n; ++k)
        ascending[static_cast<size_t>(n - k)] = d[static_cast<size_t>(k)];
    return {Poly(std::move(ascending)), std::move(adj)};
}

/// Enumerates k-subsets of {0..n-1} that contain `fixed`, invoking fn with
/// each sorted subset.
template <class Fn>
void for_each_subset_containing(int n, int k, int fixed, Fn&& fn)
{
    std::vector<int> others;
    for (int i = 0; i < n; ++i)
        if (i != fixed)
            others.push_back(i);
    std::vector<int> pick(static_cast<size_t>(k - 1));
    // choose k-1 indices from `others`
    std::vector<int> subset;
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k - 1) {
            subset.clear();
            subset.push_back(fixed);
            for (int j = 0; j < k - 1; ++j)
                subset.push_back(pick[static_cast<size_t>(j)]);
            std::sort(subset.begin(), subset.end());
            fn(subset);
            return;
        }
        for (int i = start; i <= static_cast<int>(others.size()) - (k - 1 - depth); ++i) {
            pick[static_cast<size_t>(depth)] = others[static_cast<size_t>(i)];
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

} // namespace detail

/// Monic characteristic polynomial det(lambda I - m).
inline Poly char_poly(const Mat& m) { return detail::faddeev(m).first; }

/// Coefficients B_0..B_{n-1} of the adjugate of the characteristic matrix.
inline AdjugateCoeffs adjugate_char_coeffs(const Mat& m)
{
    return detail::faddeev(m).second;
}

/// Sum over all order-k principal minors of (b with column i replaced by the
/// module column v) whose index set contains i, each expanded by cofactors
/// along the replaced column. V-elements are combined through Ops, which
/// must supply zero(), add(V, V) and scale(Rational, V).
template <class V, class Ops>
V delta_minor_sum(const Mat& b, int i, int k, const std::vector<V>& v, const Ops& ops)
{
    if (!b.is_square())
        throw DimensionError("delta_minor_sum needs a square matrix");
    const int n = b.rows();
    if (i < 0 || i >= n)
        throw ArgumentError("column index out of range");
    if (k < 1 || k > n)
        throw ArgumentError("minor order out of range");
    if (static_cast<int>(v.size()) != n)
        throw DimensionError("module column length does not match matrix");

    V acc = ops.zero();
    detail::for_each_subset_containing(n, k, i, [&](const std::vector<int>& s) {
        // position of column i inside the subset
        int pos_i = 0;
        while (s[static_cast<size_t>(pos_i)] != i)
            ++pos_i;
        std::vector<int> cols_without_i;
        for (int c : s)
            if (c != i)
                cols_without_i.push_back(c);
        for (int pos_r = 0; pos_r < k; ++pos_r) {
            const int row = s[static_cast<size_t>(pos_r)];
            std::vector<int> rows_without_r;
            for (int r : s)
                if (r != row)
                    rows_without_r.push_back(r);
            Rational cof;
            if (k == 1) {
                cof = 1;
            } else {
                cof = det(b.submatrix(rows_without_r, cols_without_i));
                if ((pos_r + pos_i) % 2 != 0)
                    cof = -cof;
            }
            if (cof != 0)
                acc = ops.add(std::move(acc), ops.scale(cof, v[static_cast<size_t>(row)]));
        }
    });
    return acc;
}

/// Ops instance for plain Rational columns.
struct RationalOps {
    Rational zero() const { return Rational(0); }
    Rational add(Rational a, Rational b) const { return a + b; }
    Rational scale(const Rational& s, const Rational& x) const { return s * x; }
};

} // namespace opred
