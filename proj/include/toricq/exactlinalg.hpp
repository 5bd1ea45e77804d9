#pragma once

// Exact integer/rational linear algebra and lattice algorithms.
//
// Everything here works over GMP integers and rationals; there is no floating
// point anywhere in the library.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricq {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/** Malformed or inconsistent input (dimension mismatch, dependent basis, ...). */
class InputError : public std::runtime_error {
  public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/** A post-condition the library verifies at runtime did not hold. */
class InternalError : public std::runtime_error {
  public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

/** Dense row-major matrix. */
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InputError("matrix row has wrong length");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<std::vector<T>> row_list() const {
        std::vector<std::vector<T>> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
        return out;
    }

    void append_row(std::span<const T> r) {
        if (r.size() != cols_) throw InputError("appended row has wrong length");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            T s = 0;
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(std::span<const Integer> v);
/** Converts a rational matrix to integers; throws InputError on a non-integral entry. */
IntMatrix to_integer(const RatMatrix& m);

Integer dot(std::span<const Integer> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const Rational> a, std::span<const Integer> b);

bool is_zero(std::span<const Integer> v);
bool is_zero(std::span<const Rational> v);

/** Positive multiple of v with coprime integer entries; the zero vector maps to itself. */
IntVector primitive(std::span<const Rational> v);
IntVector primitive(std::span<const Integer> v);

IntVector negated(std::span<const Integer> v);

/**
 * Canonical total order on integer vectors: lexicographic with larger entries
 * first, so that e_1 precedes e_2 precedes e_3.
 */
bool canonical_less(std::span<const Integer> a, std::span<const Integer> b);

/** Reduced row echelon form; `pivots` receives the pivot column of each nonzero row. */
RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
std::size_t rank(const std::vector<IntVector>& vectors, std::size_t dim);

/** Basis of the rational null space {x : m x = 0}. */
std::vector<RatVector> kernel(const RatMatrix& m);

/** Some solution of a x = b, if one exists. */
std::optional<RatVector> solve(const RatMatrix& a, std::span<const Rational> b);

/** Determinant by fraction-free (Bareiss) elimination. */
Integer determinant(const IntMatrix& m);

struct HnfResult {
    IntMatrix h;  ///< row Hermite normal form of the input
    IntMatrix u;  ///< unimodular transform with h = u * input
};

/**
 * Row Hermite normal form: h is in echelon form with positive pivots, entries
 * above each pivot reduced into [0, pivot), zero rows last.
 */
HnfResult hnf(const IntMatrix& m);

/** Canonical (HNF) basis of the lattice generated by `vectors` in Z^dim. */
std::vector<IntVector> lattice_basis(const std::vector<IntVector>& vectors, std::size_t dim);

/** HNF basis of the saturated lattice {v in Z^n : m v = 0}. */
std::vector<IntVector> kernel_saturated(const IntMatrix& m);

/** HNF basis of span_Q(vectors) intersected with Z^dim; vectors may be dependent. */
std::vector<IntVector> saturation(const std::vector<IntVector>& vectors, std::size_t dim);

/**
 * HNF basis of span_Q(basis) intersected with Z^dim.
 * Throws InputError if the given basis vectors are linearly dependent.
 */
std::vector<IntVector> saturate(const std::vector<IntVector>& basis, std::size_t dim);

/** True iff the lattice generated by `basis` equals its saturation. */
bool is_saturated(const std::vector<IntVector>& basis, std::size_t dim);

/**
 * Integer matrix whose rows form a basis of the dual of Z^dim / L for the
 * saturated sublattice L spanned by `sublattice`; i.e. the surjection
 * Z^dim -> Z^(dim - rank L) with kernel exactly L (HNF rows).
 */
IntMatrix quotient_projection(const std::vector<IntVector>& sublattice, std::size_t dim);

/** Matrix with the given vectors as rows. */
IntMatrix rows_matrix(const std::vector<IntVector>& vectors, std::size_t dim);

std::string to_string(const Rational& q);
std::string to_string(std::span<const Integer> v);
std::string to_string(std::span<const Rational> v);

}  // namespace toricq
