#include "gla/matrix.hpp"

namespace gla {

Matrix Matrix::identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(PrimeField field, std::size_t cols,
                         const std::vector<Vec>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

void Matrix::set_row(std::size_t r, const Vec& v) {
    if (v.size() != cols_) throw Error("row length mismatch");
    for (std::size_t c = 0; c < cols_; ++c) data_[r * cols_ + c] = v[c] % field_.p();
}

void Matrix::append_row(const Vec& v) {
    if (v.size() != cols_) throw Error("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
    for (std::size_t c = 0; c < cols_; ++c)
        data_[(rows_ - 1) * cols_ + c] %= field_.p();
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != rows_) throw Error("vector length mismatch in apply");
    Vec out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (v[r] == 0) continue;
        for (std::size_t c = 0; c < cols_; ++c)
            out[c] = field_.add(out[c], field_.mul(v[r], at(r, c)));
    }
    return out;
}

Matrix Matrix::multiply(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix shape mismatch in multiply");
    Matrix out(field_, rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            Scalar a = at(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < o.cols_; ++c)
                out.at(r, c) = field_.add(out.at(r, c), field_.mul(a, o.at(k, c)));
        }
    return out;
}

Matrix rref(const Matrix& m, std::size_t* rank_out, bool drop_zero_rows) {
    Matrix a = m;
    const PrimeField f = m.field();
    std::size_t lead = 0;
    for (std::size_t col = 0; col < a.cols() && lead < a.rows(); ++col) {
        std::size_t piv = lead;
        while (piv < a.rows() && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != lead)
            for (std::size_t c = 0; c < a.cols(); ++c)
                std::swap(a.at(piv, c), a.at(lead, c));
        Scalar inv = f.inv(a.at(lead, col));
        for (std::size_t c = 0; c < a.cols(); ++c)
            a.at(lead, c) = f.mul(a.at(lead, c), inv);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead || a.at(r, col) == 0) continue;
            Scalar k = a.at(r, col);
            for (std::size_t c = 0; c < a.cols(); ++c)
                a.at(r, c) = f.sub(a.at(r, c), f.mul(k, a.at(lead, c)));
        }
        ++lead;
    }
    if (rank_out) *rank_out = lead;
    if (drop_zero_rows && lead < a.rows()) {
        Matrix out(f, lead, a.cols());
        for (std::size_t r = 0; r < lead; ++r) out.set_row(r, a.row(r));
        return out;
    }
    return a;
}

std::vector<std::size_t> pivot_columns(const Matrix& reduced) {
    std::vector<std::size_t> piv;
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        std::size_t c = 0;
        while (c < reduced.cols() && reduced.at(r, c) == 0) ++c;
        if (c < reduced.cols()) piv.push_back(c);
    }
    return piv;
}

Matrix kernel_basis(const Matrix& m) {
    // Right kernel: RREF the matrix, read free columns.
    const PrimeField f = m.field();
    Matrix r = rref(m);
    auto piv = pivot_columns(r);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec> rows;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_piv[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            v[piv[i]] = f.neg(r.at(i, free));
        rows.push_back(v);
    }
    return rref(Matrix::from_rows(f, m.cols(), rows));
}

Matrix left_kernel_basis(const Matrix& m) { return kernel_basis(m.transpose()); }

std::optional<Vec> solve_left(const Matrix& m, const Vec& target) {
    // v * m = target  <=>  m^T * v^T = target^T; do Gaussian elimination on
    // [m^T | target^T].
    if (target.size() != m.cols()) throw Error("target length mismatch");
    const PrimeField f = m.field();
    Matrix aug(f, m.cols(), m.rows() + 1);
    for (std::size_t r = 0; r < m.cols(); ++r) {
        for (std::size_t c = 0; c < m.rows(); ++c) aug.at(r, c) = m.at(c, r);
        aug.at(r, m.rows()) = target[r];
    }
    Matrix red = rref(aug, nullptr, false);
    Vec v(m.rows(), 0);
    for (std::size_t r = 0; r < red.rows(); ++r) {
        std::size_t c = 0;
        while (c < red.cols() && red.at(r, c) == 0) ++c;
        if (c == red.cols()) continue;
        if (c == m.rows()) return std::nullopt;  // pivot in augmented column
        v[c] = red.at(r, m.rows());
    }
    return v;
}

Vec vec_add(const PrimeField& f, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

Vec vec_sub(const PrimeField& f, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

Vec vec_scale(const PrimeField& f, Scalar k, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(k, a[i]);
    return out;
}

bool vec_is_zero(const Vec& a) {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

}  // namespace gla
