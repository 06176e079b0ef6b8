#pragma once

#include "opred/rational.hpp"

#include <string>
#include <vector>

namespace opred {

/// Dense matrix of Rational entries, row-major.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}

    Mat(int rows, int cols)
        : rows_(rows), cols_(cols), e_(check_size(rows, cols), Rational(0))
    {
    }

    Mat(int rows, int cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries))
    {
        if (e_.size() != check_size(rows, cols))
            throw DimensionError("entry count does not match matrix shape");
    }

    /// Row-of-rows construction, mostly for tests and literals.
    explicit Mat(const std::vector<std::vector<Rational>>& rows)
    {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows.empty() ? 0 : static_cast<int>(rows[0].size());
        e_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw DimensionError("ragged rows in matrix literal");
            e_.insert(e_.end(), r.begin(), r.end());
        }
    }

    static Mat identity(int n)
    {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(int i, int j) { return e_[index(i, j)]; }
    const Rational& operator()(int i, int j) const { return e_[index(i, j)]; }

    Mat transpose() const
    {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator+(const Mat& a, const Mat& b)
    {
        require_same_shape(a, b);
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.e_.size(); ++i)
            c.e_[i] = a.e_[i] + b.e_[i];
        return c;
    }

    friend Mat operator-(const Mat& a, const Mat& b)
    {
        require_same_shape(a, b);
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.e_.size(); ++i)
            c.e_[i] = a.e_[i] - b.e_[i];
        return c;
    }

    friend Mat operator*(const Rational& s, const Mat& a)
    {
        Mat c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.e_.size(); ++i)
            c.e_[i] = s * a.e_[i];
        return c;
    }

    friend Mat operator*(const Mat& a, const Mat& b)
    {
        if (a.cols_ != b.rows_)
            throw DimensionError("inner dimensions do not match");
        Mat c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (int j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::vector<Rational> operator*(const Mat& a, const std::vector<Rational>& x)
    {
        if (a.cols_ != static_cast<int>(x.size()))
            throw DimensionError("matrix-vector dimension mismatch");
        std::vector<Rational> y(static_cast<size_t>(a.rows_), Rational(0));
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j)
                y[static_cast<size_t>(i)] += a(i, j) * x[static_cast<size_t>(j)];
        return y;
    }

    friend bool operator==(const Mat& a, const Mat& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    bool is_zero() const
    {
        for (const auto& x : e_)
            if (x != 0)
                return false;
        return true;
    }

    /// Submatrix on the given (sorted) row and column index sets.
    Mat submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const
    {
        Mat s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j)
                s(static_cast<int>(i), static_cast<int>(j)) = (*this)(rows[i], cols[j]);
        return s;
    }

    std::string str() const
    {
        std::string out;
        for (int i = 0; i < rows_; ++i) {
            out += "[";
            for (int j = 0; j < cols_; ++j) {
                if (j)
                    out += ", ";
                out += to_string((*this)(i, j));
            }
            out += "]\n";
        }
        return out;
    }

private:
    static size_t check_size(int rows, int cols)
    {
        if (rows <= 0 || cols <= 0)
            throw DimensionError("matrix dimensions must be positive");
        return static_cast<size_t>(rows) * static_cast<size_t>(cols);
    }

    static void require_same_shape(const Mat& a, const Mat& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionError("matrix shapes do not match");
    }

    size_t index(int i, int j) const
    {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw ArgumentError("matrix index out of range");
        return static_cast<size_t>(i) * cols_ + j;
    }

    int rows_;
    int cols_;
    std::vector<Rational> e_;
};

/// Determinant by cofactor expansion along the first row.
inline Rational det_cofactor(const Mat& m)
{
    if (!m.is_square())
        throw DimensionError("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 1)
        return m(0, 0);
    Rational acc(0);
    std::vector<int> rows;
    for (int i = 1; i < n; ++i)
        rows.push_back(i);
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0)
            continue;
        std::vector<int> cols;
        for (int c = 0; c < n; ++c)
            if (c != j)
                cols.push_back(c);
        Rational minor = det_cofactor(m.submatrix(rows, cols));
        if (j % 2 == 0)
            acc += m(0, j) * minor;
        else
            acc -= m(0, j) * minor;
    }
    return acc;
}

/// Determinant by fraction-free Bareiss elimination (after clearing row
/// denominators).
inline Rational det_bareiss(const Mat& m)
{
    if (!m.is_square())
        throw DimensionError("determinant of non-square matrix");
    const int n = m.rows();

    // Scale each row to integer entries; track the accumulated factor.
    std::vector<std::vector<Integer>> a(static_cast<size_t>(n),
                                        std::vector<Integer>(static_cast<size_t>(n)));
    Rational factor(1);
    for (int i = 0; i < n; ++i) {
        Integer lcm = 1;
        for (int j = 0; j < n; ++j)
            lcm = boost::multiprecision::lcm(lcm, denominator(m(i, j)));
        factor /= Rational(lcm);
        for (int j = 0; j < n; ++j) {
            Rational scaled = Rational(lcm) * m(i, j);
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = numerator(scaled);
        }
    }

    int sign = 1;
    Integer prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    p = i;
                    break;
                }
            if (p < 0)
                return Rational(0);
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(p)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Integer num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = num / prev; // exact by Sylvester's identity
            }
            a[i][k] = 0;
        }
        prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    Rational result = factor * Rational(a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)]);
    return sign > 0 ? result : -result;
}

inline Rational det(const Mat& m)
{
    if (!m.is_square())
        throw DimensionError("determinant of non-square matrix");
    return m.rows() <= 4 ? det_cofactor(m) : det_bareiss(m);
}

/// Exact inverse by Gauss-Jordan elimination. Throws on singular input.
inline Mat inverse(const Mat& m)
{
    if (!m.is_square())
        throw DimensionError("inverse of non-square matrix");
    const int n = m.rows();
    Mat a = m;
    Mat inv = Mat::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (a(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            throw ArgumentError("matrix is singular");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        Rational p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0)
                continue;
            Rational f = a(i, col);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace opred
