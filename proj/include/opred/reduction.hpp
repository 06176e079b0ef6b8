#pragma once

#include "opred/canonical.hpp"
#include "opred/linalg.hpp"

#include <string>
#include <variant>
#include <vector>

namespace opred {

/// Formal linear combination sum c * A^order(phi_index) with exact
/// coefficients. Terms are kept normalized: sorted by descending operator
/// order then ascending index, no duplicates, no zero coefficients.
struct ForcingTerm {
    Rational coeff;
    int order = 0; // power of A applied to the forcing symbol
    int index = 0; // 0-based forcing symbol index

    friend bool operator==(const ForcingTerm& a, const ForcingTerm& b)
    {
        return a.coeff == b.coeff && a.order == b.order && a.index == b.index;
    }
};

struct ForcingExpr {
    std::vector<ForcingTerm> terms;

    static ForcingExpr zero() { return {}; }

    static ForcingExpr single(Rational coeff, int order, int index)
    {
        ForcingExpr e;
        e.add(std::move(coeff), order, index);
        return e;
    }

    void add(Rational coeff, int order, int index)
    {
        if (coeff == 0)
            return;
        auto pos = terms.begin();
        for (; pos != terms.end(); ++pos) {
            if (pos->order < order || (pos->order == order && pos->index >= index))
                break;
        }
        if (pos != terms.end() && pos->order == order && pos->index == index) {
            pos->coeff += coeff;
            if (pos->coeff == 0)
                terms.erase(pos);
        } else {
            terms.insert(pos, ForcingTerm{std::move(coeff), order, index});
        }
    }

    bool is_zero() const { return terms.empty(); }

    int max_order() const
    {
        int m = 0;
        for (const auto& t : terms)
            m = std::max(m, t.order);
        return m;
    }

    friend ForcingExpr operator+(const ForcingExpr& a, const ForcingExpr& b)
    {
        ForcingExpr r = a;
        for (const auto& t : b.terms)
            r.add(t.coeff, t.order, t.index);
        return r;
    }

    friend ForcingExpr operator*(const Rational& s, const ForcingExpr& e)
    {
        ForcingExpr r;
        if (s == 0)
            return r;
        r.terms = e.terms;
        for (auto& t : r.terms)
            t.coeff *= s;
        return r;
    }

    friend bool operator==(const ForcingExpr& a, const ForcingExpr& b)
    {
        return a.terms == b.terms;
    }
    friend bool operator!=(const ForcingExpr& a, const ForcingExpr& b)
    {
        return !(a == b);
    }
};

/// Ops adapter so delta_minor_sum can build symbolic combinations.
struct ForcingOps {
    ForcingExpr zero() const { return ForcingExpr::zero(); }
    ForcingExpr add(ForcingExpr a, const ForcingExpr& b) const { return a + b; }
    ForcingExpr scale(const Rational& s, const ForcingExpr& e) const { return s * e; }
};

/// One scalar operator equation p(A)(x_target) = rhs.
struct ReducedEquation {
    Poly lhs;   // monic polynomial in A, degree >= 1
    int target = 0; // 0-based variable index
    ForcingExpr rhs;

    friend bool operator==(const ReducedEquation& a, const ReducedEquation& b)
    {
        return a.lhs == b.lhs && a.target == b.target && a.rhs == b.rhs;
    }
};

/// Chain equation y_target = A(y_source) - psi_forcing.
struct CouplingEquation {
    int target = 0;
    int source = 0;
    int forcing = 0;

    friend bool operator==(const CouplingEquation& a, const CouplingEquation& b)
    {
        return a.target == b.target && a.source == b.source && a.forcing == b.forcing;
    }
};

using PartialEquation = std::variant<ReducedEquation, CouplingEquation>;

/// A(x) = Bx + phi with symbolic forcing and variable names.
struct OperatorSystem {
    Mat matrix;
    std::vector<std::string> variables;
    std::vector<std::string> forcing;

    explicit OperatorSystem(Mat b) : matrix(std::move(b))
    {
        if (!matrix.is_square())
            throw DimensionError("system matrix must be square");
        for (int i = 1; i <= matrix.rows(); ++i) {
            variables.push_back("x" + std::to_string(i));
            forcing.push_back("phi" + std::to_string(i));
        }
    }

    int n() const { return matrix.rows(); }
};

/// Blockwise-decoupled system after a change of basis. Equations are stated
/// over the transformed forcing symbols; `new_forcing[j]` expands symbol j
/// back into the original phi's (rows of transition_inverse).
struct PartialSystem {
    std::vector<PartialEquation> equations;
    Decomposition basis_change;
    std::vector<ForcingExpr> new_forcing;
    std::string variable_name = "y";
    std::string forcing_name = "psi";
};

/// Total reduction via the adjugate of the characteristic matrix:
/// Delta_B(A)(x_i) = sum_k row_i(B_{k-1}) A^{n-k}(phi).
inline std::vector<ReducedEquation> total_reduce_adjugate(const OperatorSystem& sys)
{
    const int n = sys.n();
    auto [delta, adj] = detail::faddeev(sys.matrix);
    std::vector<ReducedEquation> eqs;
    for (int i = 0; i < n; ++i) {
        ReducedEquation eq;
        eq.lhs = delta;
        eq.target = i;
        for (int k = 1; k <= n; ++k) {
            const Mat& bk = adj.coeffs[static_cast<size_t>(k - 1)];
            for (int j = 0; j < n; ++j)
                eq.rhs.add(bk(i, j), n - k, j);
        }
        eqs.push_back(std::move(eq));
    }
    return eqs;
}

/// Closed-form total reduction for the rank-one family.
inline std::vector<ReducedEquation> total_reduce_rank_one(const RankOneSpec& spec)
{
    const int n = spec.n();
    std::vector<ReducedEquation> eqs;
    const Poly delta = rank_one_char_poly(spec);
    for (int i = 0; i < n; ++i) {
        ReducedEquation eq;
        eq.lhs = delta;
        eq.target = i;
        eq.rhs.add(Rational(1), n - 1, i);
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            if (spec.orientation == Orientation::Hat) {
                // b_i A^{n-2}(phi_j) - b_j A^{n-2}(phi_i)
                eq.rhs.add(spec.b[static_cast<size_t>(i)], n - 2, j);
                eq.rhs.add(-spec.b[static_cast<size_t>(j)], n - 2, i);
            } else {
                // b_j (A^{n-2}(phi_j) - A^{n-2}(phi_i))
                eq.rhs.add(spec.b[static_cast<size_t>(j)], n - 2, j);
                eq.rhs.add(-spec.b[static_cast<size_t>(j)], n - 2, i);
            }
        }
        eqs.push_back(std::move(eq));
    }
    return eqs;
}

/// Total reduction via principal minors, evaluated on concrete forcing.
/// Returns the right-hand side sum_k (-1)^{k-1} delta_k^i(B; A^{n-k}(phi))
/// for every i. Oracle must supply Element, apply, zero, add, scale.
template <class Oracle>
std::vector<typename Oracle::Element>
total_reduce_minors(const OperatorSystem& sys, const Oracle& oracle,
                    const std::vector<typename Oracle::Element>& forcing)
{
    using V = typename Oracle::Element;
    const int n = sys.n();
    if (static_cast<int>(forcing.size()) != n)
        throw DimensionError("forcing length does not match system dimension");

    // Columns A^{n-k}(phi) for k = n..1, i.e. powers 0..n-1.
    std::vector<std::vector<V>> powers;
    powers.push_back(forcing);
    for (int p = 1; p <= n - 1; ++p) {
        std::vector<V> next;
        for (const auto& v : powers.back())
            next.push_back(oracle.apply(v));
        powers.push_back(std::move(next));
    }

    std::vector<V> rhs;
    for (int i = 0; i < n; ++i) {
        V acc = oracle.zero();
        for (int k = 1; k <= n; ++k) {
            V term = delta_minor_sum(sys.matrix, i, k,
                                     powers[static_cast<size_t>(n - k)], oracle);
            if (k % 2 == 0)
                term = oracle.scale(Rational(-1), term);
            acc = oracle.add(std::move(acc), std::move(term));
        }
        rhs.push_back(std::move(acc));
    }
    return rhs;
}

/// Partial reduction through the Jordan form (Part 1 only):
/// A(y_j) = psi_j for j < n and A(y_n) = (sum b_i) y_n + psi_n.
inline PartialSystem partial_reduce_jordan(const RankOneSpec& spec)
{
    if (spec.degenerate())
        throw ArgumentError("sum b_i = 0 has no Part 1 Jordan reduction; "
                            "use partial_reduce_rational");
    const int n = spec.n();
    PartialSystem ps;
    ps.basis_change = jordan_decomposition(spec);
    ps.variable_name = "y";
    ps.forcing_name = "psi";
    for (int i = 0; i < n; ++i) {
        ForcingExpr row;
        for (int j = 0; j < n; ++j)
            row.add(ps.basis_change.transition_inverse(i, j), 0, j);
        ps.new_forcing.push_back(std::move(row));
    }
    for (int j = 0; j < n - 1; ++j)
        ps.equations.push_back(ReducedEquation{Poly::monomial(1), j,
                                               ForcingExpr::single(Rational(1), 0, j)});
    Poly last = Poly::monomial(1) - Poly::constant(spec.sum());
    ps.equations.push_back(ReducedEquation{std::move(last), n - 1,
                                           ForcingExpr::single(Rational(1), 0, n - 1)});
    return ps;
}

/// Partial reduction through the rational form (works in both parts):
/// A(z_j) = nu_j for j <= n-2,
/// (A^2 - sum b_i A)(z_{n-1}) = nu_n + A(nu_{n-1}) - sum b_i nu_{n-1},
/// A(z_n) - sum b_i z_n = nu_n.
inline PartialSystem partial_reduce_rational(const RankOneSpec& spec)
{
    const int n = spec.n();
    const Rational sum = spec.sum();
    PartialSystem ps;
    ps.basis_change = rational_decomposition(spec);
    ps.variable_name = "z";
    ps.forcing_name = "nu";
    for (int i = 0; i < n; ++i) {
        ForcingExpr row;
        for (int j = 0; j < n; ++j)
            row.add(ps.basis_change.transition_inverse(i, j), 0, j);
        ps.new_forcing.push_back(std::move(row));
    }
    for (int j = 0; j < n - 2; ++j)
        ps.equations.push_back(ReducedEquation{Poly::monomial(1), j,
                                               ForcingExpr::single(Rational(1), 0, j)});
    ReducedEquation second;
    second.lhs = Poly::monomial(2) - sum * Poly::monomial(1);
    second.target = n - 2;
    second.rhs.add(Rational(1), 0, n - 1);
    second.rhs.add(Rational(1), 1, n - 2);
    second.rhs.add(-sum, 0, n - 2);
    ps.equations.push_back(std::move(second));
    ReducedEquation first_order;
    first_order.lhs = Poly::monomial(1) - Poly::constant(sum);
    first_order.target = n - 1;
    first_order.rhs.add(Rational(1), 0, n - 1);
    ps.equations.push_back(std::move(first_order));
    return ps;
}

/// General partial reduction over a caller-supplied rational canonical
/// decomposition: per block one lead equation of order n_i plus the chain
/// couplings y_{l+m+1} = A(y_{l+m}) - psi_{l+m}.
inline PartialSystem partial_reduce_companion_blocks(const std::vector<Mat>& blocks,
                                                     const Decomposition& transition,
                                                     const OperatorSystem& sys)
{
    const int n = sys.n();
    int total = 0;
    for (const auto& b : blocks) {
        if (!b.is_square())
            throw DimensionError("companion block must be square");
        total += b.rows();
    }
    if (total != n)
        throw DimensionError("block sizes do not sum to system dimension");

    // Assemble the block diagonal and verify the supplied transition.
    Mat c(n, n);
    int off = 0;
    for (const auto& blk : blocks) {
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j)
                c(off + i, off + j) = blk(i, j);
        off += blk.rows();
    }
    if (transition.transition_inverse * sys.matrix * transition.transition != c)
        throw ArgumentError("transition does not conjugate the system matrix "
                            "to the given blocks");

    PartialSystem ps;
    ps.basis_change = transition;
    ps.variable_name = "y";
    ps.forcing_name = "psi";
    for (int i = 0; i < n; ++i) {
        ForcingExpr row;
        for (int j = 0; j < n; ++j)
            row.add(transition.transition_inverse(i, j), 0, j);
        ps.new_forcing.push_back(std::move(row));
    }

    int lead = 0;
    for (const auto& blk : blocks) {
        const int ni = blk.rows();
        ReducedEquation eq;
        eq.lhs = char_poly(blk);
        eq.target = lead;
        ForcingOps ops;
        for (int k = 1; k <= ni; ++k) {
            std::vector<ForcingExpr> column;
            for (int r = 0; r < ni; ++r)
                column.push_back(ForcingExpr::single(Rational(1), ni - k, lead + r));
            ForcingExpr term = delta_minor_sum(blk, 0, k, column, ops);
            if (k % 2 == 0)
                term = Rational(-1) * term;
            eq.rhs = eq.rhs + term;
        }
        ps.equations.push_back(std::move(eq));
        for (int m = 1; m < ni; ++m)
            ps.equations.push_back(CouplingEquation{lead + m, lead + m - 1, lead + m - 1});
        lead += ni;
    }
    return ps;
}

} // namespace opred
