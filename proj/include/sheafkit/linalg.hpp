/**
 * @file linalg.hpp
 * Exact dense linear algebra over a field scalar.
 *
 * Everything here is templated on the scalar so the same elimination code
 * runs on Rational (the production case) and on any exact field type that
 * provides +, -, *, / and == against Scalar(0).
 */
#pragma once

#include "sheafkit/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheafkit {

typedef Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> RationalMatrix;
typedef Eigen::Matrix<Rational, Eigen::Dynamic, 1> RationalVector;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct Decomposition {
    Eigen::Index rank = 0;
    std::vector<DenseVector<Scalar>> kernel_basis;
    std::vector<DenseVector<Scalar>> image_basis;
    DenseMatrix<Scalar> rref;
    std::vector<Eigen::Index> pivots;  // pivot column of each nonzero rref row
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m,
                                            std::vector<Eigen::Index>* pivots = nullptr) {
    typedef typename Derived::Scalar Scalar;
    DenseMatrix<Scalar> r = m;
    const Scalar zero(0);
    Eigen::Index row = 0;
    std::vector<Eigen::Index> piv;
    for (Eigen::Index col = 0; col < r.cols() && row < r.rows(); ++col) {
        Eigen::Index p = row;
        while (p < r.rows() && r(p, col) == zero) ++p;
        if (p == r.rows()) continue;
        if (p != row) r.row(p).swap(r.row(row));
        Scalar inv = Scalar(1) / r(row, col);
        for (Eigen::Index j = col; j < r.cols(); ++j) r(row, j) *= inv;
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == zero) continue;
            Scalar f = r(i, col);
            for (Eigen::Index j = col; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    if (pivots) *pivots = std::move(piv);
    return r;
}

/// Rank, kernel basis, image basis (pivot columns of m) and rref.
template <typename Derived>
Decomposition<typename Derived::Scalar> decompose(const Eigen::MatrixBase<Derived>& m) {
    typedef typename Derived::Scalar Scalar;
    Decomposition<Scalar> d;
    d.rref = rref(m, &d.pivots);
    d.rank = static_cast<Eigen::Index>(d.pivots.size());

    std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
    for (auto c : d.pivots) is_pivot[static_cast<size_t>(c)] = true;

    for (Eigen::Index free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        DenseVector<Scalar> k = DenseVector<Scalar>::Constant(m.cols(), Scalar(0));
        k(free) = Scalar(1);
        for (size_t i = 0; i < d.pivots.size(); ++i)
            k(d.pivots[i]) = -d.rref(static_cast<Eigen::Index>(i), free);
        d.kernel_basis.push_back(std::move(k));
    }
    for (auto c : d.pivots) d.image_basis.push_back(m.col(c));
    return d;
}

/// Checked product; Eigen itself only asserts on shape.
template <typename A, typename B>
DenseMatrix<typename A::Scalar> matmul(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    typedef typename A::Scalar Scalar;
    if (a.cols() != b.rows())
        throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Constant(a.rows(), b.cols(), Scalar(0));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (a(i, k) == Scalar(0)) continue;
            for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

/// Zero-filled block matrix; a missing block is a zero block.
template <typename Scalar>
DenseMatrix<Scalar> block_assemble(const std::vector<std::vector<std::optional<DenseMatrix<Scalar>>>>& blocks,
                                   const std::vector<Eigen::Index>& row_dims,
                                   const std::vector<Eigen::Index>& col_dims) {
    if (blocks.size() != row_dims.size())
        throw DimensionError("block_assemble: grid has " + std::to_string(blocks.size()) + " rows, expected " +
                             std::to_string(row_dims.size()));
    Eigen::Index rows = 0, cols = 0;
    for (auto r : row_dims) rows += r;
    for (auto c : col_dims) cols += c;
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Constant(rows, cols, Scalar(0));
    Eigen::Index r0 = 0;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].size() != col_dims.size())
            throw DimensionError("block_assemble: grid row " + std::to_string(i) + " has " +
                                 std::to_string(blocks[i].size()) + " columns, expected " +
                                 std::to_string(col_dims.size()));
        Eigen::Index c0 = 0;
        for (size_t j = 0; j < col_dims.size(); ++j) {
            if (const auto& b = blocks[i][j]) {
                if (b->rows() != row_dims[i] || b->cols() != col_dims[j])
                    throw DimensionError("block_assemble: block (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") is " + std::to_string(b->rows()) + "x" + std::to_string(b->cols()) +
                                         ", slot is " + std::to_string(row_dims[i]) + "x" +
                                         std::to_string(col_dims[j]));
                out.block(r0, c0, row_dims[i], col_dims[j]) = *b;
            }
            c0 += col_dims[j];
        }
        r0 += row_dims[i];
    }
    return out;
}

/// Some x with a*x = b (free variables set to zero), or nothing if inconsistent.
template <typename A, typename B>
std::optional<DenseVector<typename A::Scalar>> solve(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    typedef typename A::Scalar Scalar;
    if (a.rows() != b.rows()) throw DimensionError("solve: right-hand side has wrong length");
    DenseMatrix<Scalar> aug(a.rows(), a.cols() + 1);
    aug << a, b;
    std::vector<Eigen::Index> piv;
    DenseMatrix<Scalar> r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    DenseVector<Scalar> x = DenseVector<Scalar>::Constant(a.cols(), Scalar(0));
    for (size_t i = 0; i < piv.size(); ++i) x(piv[i]) = r(static_cast<Eigen::Index>(i), a.cols());
    return x;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
    typedef typename Derived::Scalar Scalar;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!(m(i, j) == Scalar(0))) return false;
    return true;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
    std::vector<Eigen::Index> piv;
    rref(m, &piv);
    return static_cast<Eigen::Index>(piv.size());
}

RationalMatrix zeros(Eigen::Index rows, Eigen::Index cols);
RationalMatrix identity(Eigen::Index n);

/// Row-major construction from nested initializer lists of integers.
RationalMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows);
RationalVector vec(std::initializer_list<Rational> entries);

std::string to_string(const RationalMatrix& m);

} // namespace sheafkit
