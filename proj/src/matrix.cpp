#include "matrix.hpp"

#include <algorithm>
#include <string>

namespace rgc {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, const PrimeField& field)
    : rows_(rows), cols_(cols), field_(field), a_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, const PrimeField& field) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<uint32_t>>& rows,
                         const PrimeField& field) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c, field);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) {
            fail(ErrorCode::shape_mismatch, "ragged row list");
        }
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::row_vector(const std::vector<uint32_t>& row, const PrimeField& field) {
    return from_rows({row}, field);
}

Matrix Matrix::column_vector(const std::vector<uint32_t>& col, const PrimeField& field) {
    Matrix m(col.size(), 1, field);
    for (std::size_t i = 0; i < col.size(); ++i) m.set(i, 0, col[i]);
    return m;
}

uint32_t Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
        fail(ErrorCode::index_out_of_range,
             "entry (" + std::to_string(r) + "," + std::to_string(c) +
                 ") outside " + shape_str(rows_, cols_) + " matrix");
    }
    return a_[r * cols_ + c];
}

void Matrix::set(std::size_t r, std::size_t c, uint32_t v) {
    if (r >= rows_ || c >= cols_) {
        fail(ErrorCode::index_out_of_range,
             "entry (" + std::to_string(r) + "," + std::to_string(c) +
                 ") outside " + shape_str(rows_, cols_) + " matrix");
    }
    if (!field_.in_range(v)) {
        fail(ErrorCode::invalid_argument,
             "value " + std::to_string(v) + " out of range for F_" +
                 std::to_string(field_.q()));
    }
    a_[r * cols_ + c] = v;
}

void Matrix::require_same_shape(const Matrix& o, const char* op) const {
    if (field_ != o.field_) {
        fail(ErrorCode::field_mismatch, std::string(op) + ": fields differ");
    }
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        fail(ErrorCode::shape_mismatch,
             std::string(op) + ": " + shape_str(rows_, cols_) + " vs " +
                 shape_str(o.rows_, o.cols_));
    }
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (field_ != o.field_) {
        fail(ErrorCode::field_mismatch, "matmul: fields differ");
    }
    if (cols_ != o.rows_) {
        fail(ErrorCode::shape_mismatch,
             "matmul: " + shape_str(rows_, cols_) + " times " +
                 shape_str(o.rows_, o.cols_));
    }
    Matrix out(rows_, o.cols_, field_);
    const uint64_t q = field_.q();
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t t = 0; t < cols_; ++t) {
            uint64_t v = a_[i * cols_ + t];
            if (v == 0) continue;
            const uint32_t* orow = &o.a_[t * o.cols_];
            uint32_t* dst = &out.a_[i * o.cols_];
            for (std::size_t j = 0; j < o.cols_; ++j) {
                dst[j] = static_cast<uint32_t>((dst[j] + v * orow[j]) % q);
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require_same_shape(o, "add");
    Matrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(a_[i], o.a_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require_same_shape(o, "sub");
    Matrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.sub(a_[i], o.a_[i]);
    return out;
}

Matrix Matrix::scaled(uint32_t s) const {
    if (!field_.in_range(s)) {
        fail(ErrorCode::invalid_argument, "scale factor out of range");
    }
    Matrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.mul(a_[i], s);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.a_[j * rows_ + i] = a_[i * cols_ + j];
    }
    return out;
}

// Gauss-Jordan elimination with first-nonzero pivoting; shared by inverse,
// rank and nullspace.
struct EchelonForm {
    std::size_t rank;
    Matrix reduced;
    std::vector<std::size_t> pivot_col; // one entry per pivot row

    static EchelonForm of(const Matrix& input) {
        Matrix m = input;
        const std::size_t rows = m.rows_;
        const std::size_t cols = m.cols_;
        const PrimeField& field = m.field_;
        std::vector<std::size_t> pivots;
        std::size_t pivot_row = 0;
        for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
            // First nonzero entry in this column at or below pivot_row.
            std::size_t sel = pivot_row;
            while (sel < rows && m.a_[sel * cols + col] == 0) ++sel;
            if (sel == rows) continue;
            if (sel != pivot_row) {
                for (std::size_t j = 0; j < cols; ++j) {
                    std::swap(m.a_[sel * cols + j], m.a_[pivot_row * cols + j]);
                }
            }
            uint32_t inv = field.inv(m.a_[pivot_row * cols + col]);
            for (std::size_t j = 0; j < cols; ++j) {
                m.a_[pivot_row * cols + j] = field.mul(m.a_[pivot_row * cols + j], inv);
            }
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == pivot_row) continue;
                uint32_t f = m.a_[r * cols + col];
                if (f == 0) continue;
                for (std::size_t j = 0; j < cols; ++j) {
                    m.a_[r * cols + j] =
                        field.sub(m.a_[r * cols + j], field.mul(f, m.a_[pivot_row * cols + j]));
                }
            }
            pivots.push_back(col);
            ++pivot_row;
        }
        return EchelonForm{pivots.size(), std::move(m), std::move(pivots)};
    }
};

Matrix Matrix::inverse() const {
    if (rows_ != cols_) {
        fail(ErrorCode::shape_mismatch,
             "inverse of non-square " + shape_str(rows_, cols_) + " matrix");
    }
    Matrix aug(rows_, 2 * cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.a_[i * 2 * cols_ + j] = a_[i * cols_ + j];
        aug.a_[i * 2 * cols_ + cols_ + i] = 1;
    }
    EchelonForm e = EchelonForm::of(aug);
    // Invertible iff the left half reduced to the identity: n pivots, all in
    // the first n columns.
    if (e.rank < rows_ || (rows_ > 0 && e.pivot_col[rows_ - 1] >= cols_)) {
        fail(ErrorCode::singular_matrix,
             "matrix of rank " + std::to_string(this->rank()) + " is singular (" +
                 shape_str(rows_, cols_) + ")");
    }
    Matrix out(rows_, cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out.a_[i * cols_ + j] = e.reduced.a_[i * 2 * cols_ + cols_ + j];
        }
    }
    return out;
}

std::size_t Matrix::rank() const { return EchelonForm::of(*this).rank; }

Matrix Matrix::nullspace() const {
    EchelonForm e = EchelonForm::of(*this);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t r = 0; r < e.rank; ++r) is_pivot[e.pivot_col[r]] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (!is_pivot[c]) free_cols.push_back(c);
    }
    Matrix basis(cols_, free_cols.size(), field_);
    for (std::size_t v = 0; v < free_cols.size(); ++v) {
        std::size_t fc = free_cols[v];
        basis.set(fc, v, 1);
        for (std::size_t r = 0; r < e.rank; ++r) {
            uint32_t coef = e.reduced.a_[r * cols_ + fc];
            basis.set(e.pivot_col[r], v, field_.neg(coef));
        }
    }
    return basis;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const {
    for (std::size_t r : row_idx) {
        if (r >= rows_) {
            fail(ErrorCode::index_out_of_range, "row index " + std::to_string(r));
        }
    }
    for (std::size_t c : col_idx) {
        if (c >= cols_) {
            fail(ErrorCode::index_out_of_range, "column index " + std::to_string(c));
        }
    }
    Matrix out(row_idx.size(), col_idx.size(), field_);
    for (std::size_t i = 0; i < row_idx.size(); ++i) {
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            out.a_[i * col_idx.size() + j] = a_[row_idx[i] * cols_ + col_idx[j]];
        }
    }
    return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& row_idx) const {
    std::vector<std::size_t> all_cols(cols_);
    for (std::size_t c = 0; c < cols_; ++c) all_cols[c] = c;
    return submatrix(row_idx, all_cols);
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& col_idx) const {
    std::vector<std::size_t> all_rows(rows_);
    for (std::size_t r = 0; r < rows_; ++r) all_rows[r] = r;
    return submatrix(all_rows, col_idx);
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) {
        fail(ErrorCode::invalid_argument, "hstack of zero matrices");
    }
    std::size_t rows = parts.front().rows_;
    std::size_t cols = 0;
    for (const Matrix& p : parts) {
        if (p.field_ != parts.front().field_) {
            fail(ErrorCode::field_mismatch, "hstack: fields differ");
        }
        if (p.rows_ != rows) {
            fail(ErrorCode::shape_mismatch, "hstack: row counts differ");
        }
        cols += p.cols_;
    }
    Matrix out(rows, cols, parts.front().field_);
    std::size_t off = 0;
    for (const Matrix& p : parts) {
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < p.cols_; ++j) {
                out.a_[i * cols + off + j] = p.a_[i * p.cols_ + j];
            }
        }
        off += p.cols_;
    }
    return out;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) {
        fail(ErrorCode::invalid_argument, "vstack of zero matrices");
    }
    std::size_t cols = parts.front().cols_;
    std::size_t rows = 0;
    for (const Matrix& p : parts) {
        if (p.field_ != parts.front().field_) {
            fail(ErrorCode::field_mismatch, "vstack: fields differ");
        }
        if (p.cols_ != cols) {
            fail(ErrorCode::shape_mismatch, "vstack: column counts differ");
        }
        rows += p.rows_;
    }
    Matrix out(rows, cols, parts.front().field_);
    std::size_t off = 0;
    for (const Matrix& p : parts) {
        std::copy(p.a_.begin(), p.a_.end(), out.a_.begin() + off * cols);
        off += p.rows_;
    }
    return out;
}

std::vector<uint32_t> Matrix::row(std::size_t r) const {
    if (r >= rows_) {
        fail(ErrorCode::index_out_of_range, "row index " + std::to_string(r));
    }
    return std::vector<uint32_t>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

std::vector<uint32_t> Matrix::col(std::size_t c) const {
    if (c >= cols_) {
        fail(ErrorCode::index_out_of_range, "column index " + std::to_string(c));
    }
    std::vector<uint32_t> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = a_[i * cols_ + c];
    return out;
}

std::vector<uint32_t> Matrix::left_mul(const std::vector<uint32_t>& x) const {
    if (x.size() != rows_) {
        fail(ErrorCode::shape_mismatch,
             "row vector of length " + std::to_string(x.size()) + " times " +
                 shape_str(rows_, cols_) + " matrix");
    }
    std::vector<uint32_t> out(cols_, 0);
    const uint64_t q = field_.q();
    for (std::size_t i = 0; i < rows_; ++i) {
        uint64_t v = x[i] % q;
        if (v == 0) continue;
        const uint32_t* rowp = &a_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) {
            out[j] = static_cast<uint32_t>((out[j] + v * rowp[j]) % q);
        }
    }
    return out;
}

std::vector<uint32_t> Matrix::right_mul(const std::vector<uint32_t>& x) const {
    if (x.size() != cols_) {
        fail(ErrorCode::shape_mismatch,
             shape_str(rows_, cols_) + " matrix times column vector of length " +
                 std::to_string(x.size()));
    }
    std::vector<uint32_t> out(rows_, 0);
    const uint64_t q = field_.q();
    for (std::size_t i = 0; i < rows_; ++i) {
        uint64_t acc = 0;
        const uint32_t* rowp = &a_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) {
            acc = (acc + static_cast<uint64_t>(rowp[j]) * (x[j] % q)) % q;
        }
        out[i] = static_cast<uint32_t>(acc);
    }
    return out;
}

std::vector<uint32_t> Matrix::solve(const std::vector<uint32_t>& b) const {
    return inverse().right_mul(b);
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(a_.begin(), a_.end(), [](uint32_t v) { return v == 0; });
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Permutation::Permutation(std::vector<std::size_t> to) : to_(std::move(to)) {
    std::vector<bool> seen(to_.size(), false);
    for (std::size_t t : to_) {
        if (t >= to_.size() || seen[t]) {
            fail(ErrorCode::invalid_argument, "index map is not a permutation");
        }
        seen[t] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> to(n);
    for (std::size_t i = 0; i < n; ++i) to[i] = i;
    return Permutation(std::move(to));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(to_.size());
    for (std::size_t i = 0; i < to_.size(); ++i) inv[to_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& other) const {
    if (other.size() != size()) {
        fail(ErrorCode::shape_mismatch, "permutation sizes differ");
    }
    std::vector<std::size_t> comp(to_.size());
    for (std::size_t i = 0; i < to_.size(); ++i) comp[i] = other.to_[to_[i]];
    return Permutation(std::move(comp));
}

Matrix Permutation::apply_to_cols(const Matrix& m) const {
    if (m.cols() != to_.size()) {
        fail(ErrorCode::shape_mismatch, "permutation does not match column count");
    }
    Matrix out(m.rows(), m.cols(), m.field());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) out.set(i, to_[j], m.at(i, j));
    }
    return out;
}

} // namespace rgc
