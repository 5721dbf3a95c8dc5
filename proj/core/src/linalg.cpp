#include "crosscalc/linalg.hpp"

#include <ostream>
#include <sstream>
#include <utility>

#include "crosscalc/errors.hpp"

namespace crosscalc {

bool is_prime(std::uint32_t p) noexcept {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

Field::Field(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
        throw NotPrime("field modulus " + std::to_string(p) + " is not a prime below 2^31");
}

Field::Scalar Field::inv(Scalar a) const {
    if (a % p_ == 0) throw InvalidArgument("inverse of zero");
    // extended Euclid on signed 64-bit values
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a % p_;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return reduce(t);
}

Field::Scalar Field::reduce(std::int64_t v) const noexcept {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += p_;
    return static_cast<Scalar>(m);
}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::span<const std::int64_t> values)
    : Matrix(field, rows, cols) {
    if (values.size() != rows * cols)
        throw ShapeMismatch("expected " + std::to_string(rows * cols) + " entries, got " +
                            std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) data_[i] = field.reduce(values[i]);
}

Matrix Matrix::identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

bool Matrix::is_zero() const noexcept {
    for (auto v : data_)
        if (v != 0) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
    return t;
}

Matrix Matrix::column(std::size_t c) const { return columns(c, 1); }

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw ShapeMismatch("column range out of bounds");
    Matrix out(field_, rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < count; ++c) out.set(r, c, (*this)(r, first + c));
    return out;
}

Matrix Matrix::rows_range(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw ShapeMismatch("row range out of bounds");
    Matrix out(field_, count, cols_);
    for (std::size_t r = 0; r < count; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, (*this)(first + r, c));
    return out;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
    Matrix out(field_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) out.set(r, j, (*this)(r, cols[j]));
    return out;
}

void Matrix::place(std::size_t r0, std::size_t c0, const Matrix& block) {
    if (r0 + block.rows() > rows_ || c0 + block.cols() > cols_)
        throw ShapeMismatch("block does not fit");
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) set(r0 + r, c0 + c, block(r, c));
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << m.rows() << 'x' << m.cols() << " [";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    }
    return os << ']';
}

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field())) throw ShapeMismatch("matrices over different fields");
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "cannot multiply " << a.rows() << 'x' << a.cols() << " by " << b.rows() << 'x' << b.cols();
        throw ShapeMismatch(msg.str());
    }
    const Field& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    const std::uint64_t p = f.p();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint64_t s = a(r, k);
            if (s == 0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) {
                std::uint64_t v = out(r, c) + s * b(k, c);
                out.set(r, c, static_cast<Matrix::Scalar>(v % p));
            }
        }
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("cannot add matrices of different shape");
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.field().add(a(r, c), b(r, c)));
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("cannot subtract matrices of different shape");
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.field().sub(a(r, c), b(r, c)));
    return out;
}

Matrix scale(const Matrix& m, Field::Scalar s) {
    Matrix out = m;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.set(r, c, m.field().mul(m(r, c), s));
    return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    require_same_field(a, b);
    Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    out.place(0, 0, a);
    out.place(a.rows(), a.cols(), b);
    return out;
}

Matrix hstack(std::span<const Matrix> blocks, Field field, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw ShapeMismatch("hstack: row counts differ");
        cols += b.cols();
    }
    Matrix out(field, rows, cols);
    std::size_t c0 = 0;
    for (const auto& b : blocks) {
        out.place(0, c0, b);
        c0 += b.cols();
    }
    return out;
}

Matrix vstack(std::span<const Matrix> blocks, Field field, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw ShapeMismatch("vstack: column counts differ");
        rows += b.rows();
    }
    Matrix out(field, rows, cols);
    std::size_t r0 = 0;
    for (const auto& b : blocks) {
        out.place(r0, 0, b);
        r0 += b.rows();
    }
    return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    const Matrix blocks[] = {a, b};
    return hstack(blocks, a.field(), a.rows());
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    const Matrix blocks[] = {a, b};
    return vstack(blocks, a.field(), a.cols());
}

Echelon rref(const Matrix& m) {
    Echelon e{m, {}};
    Matrix& a = e.reduced;
    const Field& f = m.field();
    std::size_t lead_row = 0;
    for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
        std::size_t pivot = lead_row;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != lead_row)
            for (std::size_t c = 0; c < a.cols(); ++c) {
                auto tmp = a(pivot, c);
                a.set(pivot, c, a(lead_row, c));
                a.set(lead_row, c, tmp);
            }
        const auto inv = f.inv(a(lead_row, col));
        for (std::size_t c = col; c < a.cols(); ++c) a.set(lead_row, c, f.mul(a(lead_row, c), inv));
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead_row) continue;
            const auto factor = a(r, col);
            if (factor == 0) continue;
            for (std::size_t c = col; c < a.cols(); ++c)
                a.set(r, c, f.sub(a(r, c), f.mul(factor, a(lead_row, c))));
        }
        e.pivot_cols.push_back(col);
        ++lead_row;
    }
    return e;
}

std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    return rref(m).pivot_cols.size();
}

Matrix kernel_basis(const Matrix& m) {
    const Field& f = m.field();
    const auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    Matrix basis(f, m.cols(), m.cols() - e.pivot_cols.size());
    std::size_t out_col = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        basis.set(free, out_col, 1);
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            basis.set(e.pivot_cols[r], out_col, f.neg(e.reduced(r, free)));
        ++out_col;
    }
    return basis;
}

Matrix image_basis(const Matrix& m) {
    const auto e = rref(m);
    return m.select_columns(e.pivot_cols);
}

Matrix cokernel_projection(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

std::optional<Matrix> solve(const Matrix& g, const Matrix& f) {
    require_same_field(g, f);
    if (g.rows() != f.rows()) throw ShapeMismatch("solve: row counts differ");
    const std::size_t k = g.cols();
    const auto e = rref(hstack(g, f));
    Matrix h(g.field(), k, f.cols());
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
        const auto pc = e.pivot_cols[r];
        if (pc >= k) return std::nullopt;
        for (std::size_t c = 0; c < f.cols(); ++c) h.set(pc, c, e.reduced(r, k + c));
    }
    return h;
}

Matrix factor_through(const Matrix& f, const Matrix& g) {
    auto h = solve(g, f);
    if (!h) throw NoFactorization("column space of f is not contained in column space of g");
    return *std::move(h);
}

Matrix right_inverse(const Matrix& m) {
    auto r = solve(m, Matrix::identity(m.field(), m.rows()));
    if (!r) throw NoFactorization("right_inverse: matrix is not surjective");
    return *std::move(r);
}

}  // namespace crosscalc
