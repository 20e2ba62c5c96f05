#include "gla/subspace.hpp"

#include <algorithm>
#include <functional>

namespace gla {

Subspace Subspace::zero(PrimeField field, std::size_t ambient) {
    return Subspace(Matrix(field, 0, ambient));
}

Subspace Subspace::full(PrimeField field, std::size_t ambient) {
    return Subspace(Matrix::identity(field, ambient));
}

Subspace Subspace::span(const Matrix& rows) { return Subspace(rref(rows)); }

Subspace Subspace::span(PrimeField field, std::size_t ambient,
                        const std::vector<Vec>& rows) {
    return span(Matrix::from_rows(field, ambient, rows));
}

Vec Subspace::reduce(const Vec& v) const {
    if (v.size() != ambient_dim()) throw Error("ambient mismatch in reduce");
    const PrimeField f = field();
    Vec out = v;
    auto piv = pivot_columns(basis_);
    for (std::size_t i = 0; i < piv.size(); ++i) {
        Scalar k = out[piv[i]];
        if (k == 0) continue;
        for (std::size_t c = 0; c < out.size(); ++c)
            out[c] = f.sub(out[c], f.mul(k, basis_.at(i, c)));
    }
    return out;
}

bool Subspace::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
    if (o.ambient_dim() != ambient_dim()) throw Error("ambient mismatch");
    for (std::size_t r = 0; r < o.dim(); ++r)
        if (!contains(o.basis_row(r))) return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const {
    Vec coords(dim(), 0);
    auto piv = pivot_columns(basis_);
    Vec rest = v;
    const PrimeField f = field();
    for (std::size_t i = 0; i < piv.size(); ++i) {
        coords[i] = rest[piv[i]];
        if (coords[i] == 0) continue;
        for (std::size_t c = 0; c < rest.size(); ++c)
            rest[c] = f.sub(rest[c], f.mul(coords[i], basis_.at(i, c)));
    }
    if (!vec_is_zero(rest)) throw Error("vector not in subspace");
    return coords;
}

Subspace Subspace::sum(const Subspace& o) const {
    if (o.ambient_dim() != ambient_dim()) throw Error("ambient mismatch");
    Matrix stacked(field(), 0, ambient_dim());
    for (std::size_t r = 0; r < dim(); ++r) stacked.append_row(basis_row(r));
    for (std::size_t r = 0; r < o.dim(); ++r) stacked.append_row(o.basis_row(r));
    return span(stacked);
}

Subspace Subspace::intersect(const Subspace& o) const {
    if (o.ambient_dim() != ambient_dim()) throw Error("ambient mismatch");
    // Zassenhaus-style: kernel of [A; B] combinations with signs.
    // v = x*A = y*B  <=>  (x, y) in left kernel of [A; -B].
    Matrix stacked(field(), 0, ambient_dim());
    for (std::size_t r = 0; r < dim(); ++r) stacked.append_row(basis_row(r));
    for (std::size_t r = 0; r < o.dim(); ++r)
        stacked.append_row(vec_scale(field(), field().neg(1), o.basis_row(r)));
    Matrix ker = left_kernel_basis(stacked);
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        Vec xy = ker.row(r);
        Vec x(xy.begin(), xy.begin() + dim());
        rows.push_back(basis_.apply(x));
    }
    return span(field(), ambient_dim(), rows);
}

std::vector<Vec> Subspace::complement_in(const Subspace& sup) const {
    if (!sup.contains(*this)) throw Error("complement_in: not a subspace of sup");
    std::vector<Vec> reps;
    Subspace cur = *this;
    for (std::size_t r = 0; r < sup.dim(); ++r) {
        Vec v = sup.basis_row(r);
        if (!cur.contains(v)) {
            Vec red = cur.reduce(v);
            reps.push_back(red);
            cur = cur.sum(span(field(), ambient_dim(), {red}));
        }
    }
    return reps;
}

Vec Subspace::key() const {
    Vec k;
    k.push_back(static_cast<Scalar>(ambient_dim()));
    k.push_back(static_cast<Scalar>(dim()));
    for (std::size_t r = 0; r < dim(); ++r) {
        Vec row = basis_row(r);
        k.insert(k.end(), row.begin(), row.end());
    }
    return k;
}

std::uint64_t gaussian_binomial(std::uint32_t p, std::size_t n, std::size_t k) {
    if (k > n) return 0;
    // Product formula (p^(n-i) - 1)/(p^(k-i) - 1), computed as exact integer
    // via iterative numerator/denominator pairing in 128-bit.
    unsigned __int128 num = 1, den = 1;
    auto powp = [&](std::size_t e) {
        unsigned __int128 r = 1;
        for (std::size_t i = 0; i < e; ++i) {
            r *= p;
            if (r > (unsigned __int128)1 << 100) throw EnumerationTooLarge("gaussian binomial overflow");
        }
        return r;
    };
    for (std::size_t i = 0; i < k; ++i) {
        num *= powp(n - i) - 1;
        den *= powp(k - i) - 1;
        if (num > ((unsigned __int128)1 << 126) / 4)
            throw EnumerationTooLarge("gaussian binomial overflow");
    }
    unsigned __int128 q = num / den;
    if (q > (unsigned __int128)UINT64_MAX >> 1)
        throw EnumerationTooLarge("gaussian binomial overflow");
    return static_cast<std::uint64_t>(q);
}

namespace {

// Enumerate k x n RREF matrices in canonical order and feed them to sink.
void enumerate_rref(const PrimeField& f, std::size_t n, std::size_t k,
                    const std::function<void(const Matrix&)>& sink) {
    if (k == 0) {
        sink(Matrix(f, 0, n));
        return;
    }
    if (k > n) return;
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    auto next_combo = [&]() -> bool {
        std::size_t i = k;
        while (i-- > 0) {
            if (piv[i] < n - k + i) {
                ++piv[i];
                for (std::size_t j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    do {
        // Free positions: (r, c) with c > piv[r], c not a pivot column.
        std::vector<bool> is_piv(n, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::pair<std::size_t, std::size_t>> free_pos;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = piv[r] + 1; c < n; ++c)
                if (!is_piv[c]) free_pos.emplace_back(r, c);
        Vec vals(free_pos.size(), 0);
        while (true) {
            Matrix m(f, k, n);
            for (std::size_t r = 0; r < k; ++r) m.at(r, piv[r]) = 1;
            for (std::size_t i = 0; i < free_pos.size(); ++i)
                m.at(free_pos[i].first, free_pos[i].second) = vals[i];
            sink(m);
            // Odometer increment.
            std::size_t i = 0;
            while (i < vals.size()) {
                if (++vals[i] < f.p()) break;
                vals[i] = 0;
                ++i;
            }
            if (i == vals.size()) break;
            if (vals.empty()) break;
        }
    } while (next_combo());
}

}  // namespace

std::vector<Subspace> enumerate_subspaces(const Subspace& ambient,
                                          std::size_t dim, std::uint64_t cap) {
    if (dim > ambient.dim()) return {};
    std::uint64_t count = gaussian_binomial(ambient.field().p(), ambient.dim(), dim);
    if (count > cap) throw EnumerationTooLarge("subspace enumeration over cap");
    std::vector<Subspace> out;
    out.reserve(count);
    const bool embedded = ambient.dim() != ambient.ambient_dim() ||
                          ambient.basis() != Matrix::identity(ambient.field(), ambient.dim());
    enumerate_rref(ambient.field(), ambient.dim(), dim, [&](const Matrix& m) {
        if (!embedded) {
            out.push_back(Subspace::span(m));
        } else {
            std::vector<Vec> rows;
            for (std::size_t r = 0; r < m.rows(); ++r)
                rows.push_back(ambient.basis().apply(m.row(r)));
            out.push_back(Subspace::span(ambient.field(), ambient.ambient_dim(), rows));
        }
    });
    return out;
}

std::vector<Subspace> enumerate_all_subspaces(const Subspace& ambient,
                                              std::uint64_t cap) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= ambient.dim(); ++k) {
        total += gaussian_binomial(ambient.field().p(), ambient.dim(), k);
        if (total > cap) throw EnumerationTooLarge("subspace enumeration over cap");
    }
    std::vector<Subspace> out;
    out.reserve(total);
    for (std::size_t k = 0; k <= ambient.dim(); ++k) {
        auto part = enumerate_subspaces(ambient, k, cap);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<Subspace> enumerate_superspaces(const Subspace& sub,
                                            const Subspace& ambient,
                                            std::uint64_t cap) {
    if (!ambient.contains(sub)) throw Error("enumerate_superspaces: sub not inside ambient");
    std::vector<Vec> comp = sub.complement_in(ambient);
    const std::size_t q = comp.size();
    const PrimeField f = sub.field();
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= q; ++k) {
        total += gaussian_binomial(f.p(), q, k);
        if (total > cap) throw EnumerationTooLarge("superspace enumeration over cap");
    }
    Matrix compm = Matrix::from_rows(f, sub.ambient_dim(), comp);
    std::vector<Subspace> out;
    out.reserve(total);
    for (const auto& t : enumerate_all_subspaces(Subspace::full(f, q), cap)) {
        std::vector<Vec> rows;
        for (std::size_t r = 0; r < t.dim(); ++r)
            rows.push_back(compm.apply(t.basis_row(r)));
        out.push_back(sub.sum(Subspace::span(f, sub.ambient_dim(), rows)));
    }
    return out;
}

std::vector<Vec> projective_points(const Subspace& space, std::uint64_t cap) {
    auto lines = enumerate_subspaces(space, 1, cap);
    std::vector<Vec> pts;
    pts.reserve(lines.size());
    for (const auto& l : lines) pts.push_back(l.basis_row(0));
    return pts;
}

}  // namespace gla
