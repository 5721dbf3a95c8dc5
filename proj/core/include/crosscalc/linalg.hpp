#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace crosscalc {

/// Prime field F_p with 2 <= p < 2^31. Primality is checked on construction.
class Field {
public:
    using Scalar = std::uint32_t;

    explicit Field(std::uint32_t p = 2);

    [[nodiscard]] std::uint32_t p() const noexcept { return p_; }

    [[nodiscard]] Scalar add(Scalar a, Scalar b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Scalar>(s >= p_ ? s - p_ : s);
    }
    [[nodiscard]] Scalar sub(Scalar a, Scalar b) const noexcept {
        return a >= b ? a - b : static_cast<Scalar>(std::uint64_t{a} + p_ - b);
    }
    [[nodiscard]] Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
    [[nodiscard]] Scalar mul(Scalar a, Scalar b) const noexcept {
        return static_cast<Scalar>((std::uint64_t{a} * b) % p_);
    }
    [[nodiscard]] Scalar inv(Scalar a) const;
    /// Reduces an arbitrary signed integer into [0, p).
    [[nodiscard]] Scalar reduce(std::int64_t v) const noexcept;

    friend bool operator==(const Field&, const Field&) = default;

private:
    std::uint32_t p_;
};

/// Dense row-major matrix over a prime field. Zero-row and zero-column
/// matrices are valid and stand for maps from or to the zero space.
class Matrix {
public:
    using Scalar = Field::Scalar;

    Matrix() = default;
    Matrix(Field field, std::size_t rows, std::size_t cols);
    /// Entries are reduced mod p; `values.size()` must equal rows * cols.
    Matrix(Field field, std::size_t rows, std::size_t cols, std::span<const std::int64_t> values);

    static Matrix zero(Field field, std::size_t rows, std::size_t cols) { return {field, rows, cols}; }
    static Matrix identity(Field field, std::size_t n);

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    [[nodiscard]] Scalar operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Scalar v) noexcept { data_[r * cols_ + c] = v; }
    [[nodiscard]] std::span<const Scalar> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] const std::vector<Scalar>& data() const noexcept { return data_; }

    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] Matrix column(std::size_t c) const;
    [[nodiscard]] Matrix columns(std::size_t first, std::size_t count) const;
    [[nodiscard]] Matrix rows_range(std::size_t first, std::size_t count) const;
    [[nodiscard]] Matrix select_columns(std::span<const std::size_t> cols) const;

    /// Copies `block` into this matrix with its top-left corner at (r0, c0).
    void place(std::size_t r0, std::size_t c0, const Matrix& block);

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Field field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& m, Field::Scalar s);

Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix hstack(std::span<const Matrix> blocks, Field field, std::size_t rows);
Matrix vstack(std::span<const Matrix> blocks, Field field, std::size_t cols);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

/// Reduced row-echelon form; pivots are taken leftmost-first.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
};
Echelon rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Columns form a basis of ker m, one per non-pivot column of rref(m).
Matrix kernel_basis(const Matrix& m);

/// The columns of m at the pivot positions of rref(m).
Matrix image_basis(const Matrix& m);

/// A surjection q : F^rows -> F^(rows - rank m) with q * m = 0.
Matrix cokernel_projection(const Matrix& m);

/// Some h with g * h = f, or nullopt when col(f) is not contained in col(g).
std::optional<Matrix> solve(const Matrix& g, const Matrix& f);

/// Like `solve`, but throws NoFactorization when no solution exists.
Matrix factor_through(const Matrix& f, const Matrix& g);

/// Some r with m * r = identity; requires m to be surjective.
Matrix right_inverse(const Matrix& m);

[[nodiscard]] inline bool is_injective(const Matrix& m) { return rank(m) == m.cols(); }
[[nodiscard]] inline bool is_surjective(const Matrix& m) { return rank(m) == m.rows(); }
[[nodiscard]] inline bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

bool is_prime(std::uint32_t p) noexcept;

}  // namespace crosscalc
