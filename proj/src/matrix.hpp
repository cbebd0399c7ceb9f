#ifndef RGC_MATRIX_HPP
#define RGC_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "gf.hpp"

namespace rgc {

// Dense row-major matrix over a prime field. Values are canonical
// representatives in [0, q); all entries share the matrix's field.
class Matrix {
  public:
    Matrix(std::size_t rows, std::size_t cols, const PrimeField& field);

    static Matrix identity(std::size_t n, const PrimeField& field);
    static Matrix from_rows(const std::vector<std::vector<uint32_t>>& rows,
                            const PrimeField& field);
    static Matrix row_vector(const std::vector<uint32_t>& row, const PrimeField& field);
    static Matrix column_vector(const std::vector<uint32_t>& col, const PrimeField& field);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrimeField& field() const noexcept { return field_; }

    uint32_t at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, uint32_t v);

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(uint32_t s) const;
    Matrix transpose() const;

    // Gauss-Jordan with first-nonzero pivot; singular_matrix if rank < n.
    Matrix inverse() const;
    std::size_t rank() const;
    // Right-nullspace basis, one vector per column; 0 columns when trivial.
    Matrix nullspace() const;

    // Rows/cols are picked in the order given; indices validated, repeats allowed.
    Matrix submatrix(const std::vector<std::size_t>& row_idx,
                     const std::vector<std::size_t>& col_idx) const;
    Matrix select_rows(const std::vector<std::size_t>& row_idx) const;
    Matrix select_cols(const std::vector<std::size_t>& col_idx) const;

    static Matrix hstack(const std::vector<Matrix>& parts);
    static Matrix vstack(const std::vector<Matrix>& parts);

    std::vector<uint32_t> row(std::size_t r) const;
    std::vector<uint32_t> col(std::size_t c) const;

    // x * (*this) for a row vector x of length rows().
    std::vector<uint32_t> left_mul(const std::vector<uint32_t>& x) const;
    // (*this) * x for a column vector x of length cols().
    std::vector<uint32_t> right_mul(const std::vector<uint32_t>& x) const;

    // Solve (*this) * x = b; requires a square invertible matrix.
    std::vector<uint32_t> solve(const std::vector<uint32_t>& b) const;

    bool is_zero() const noexcept;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

  private:
    friend struct EchelonForm;
    void require_same_shape(const Matrix& o, const char* op) const;

    std::size_t rows_;
    std::size_t cols_;
    PrimeField field_;
    std::vector<uint32_t> a_;
};

// Permutation of n positions, stored as an index map: to[i] is where
// position i lands. Decoders compose these explicitly instead of
// reshuffling matrices in place.
class Permutation {
  public:
    explicit Permutation(std::vector<std::size_t> to);
    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return to_.size(); }
    std::size_t operator()(std::size_t i) const { return to_.at(i); }

    Permutation inverse() const;
    // (other ∘ this): apply this first, then other.
    Permutation then(const Permutation& other) const;

    // Reorder a vector: out[to[i]] = v[i].
    template <typename T>
    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != to_.size()) {
            fail(ErrorCode::shape_mismatch, "permutation size mismatch");
        }
        std::vector<T> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[to_[i]] = v[i];
        return out;
    }

    // Column i of the input becomes column to[i] of the output.
    Matrix apply_to_cols(const Matrix& m) const;

  private:
    std::vector<std::size_t> to_;
};

} // namespace rgc

#endif
