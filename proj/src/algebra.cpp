#include "gla/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace gla {

// ---------- LieElement ----------

LieElement::LieElement(AlgebraPtr parent) : parent_(std::move(parent)) {
    for (int d = 1; d <= 3; ++d) coords_[d] = Vec(parent_->dim(d), 0);
}

static void check_same_parent(const LieElement& a, const LieElement& b) {
    if (a.parent() != b.parent()) throw Error("elements of different algebras");
}

LieElement LieElement::add(const LieElement& o) const {
    check_same_parent(*this, o);
    LieElement r(parent_);
    for (int d = 1; d <= 3; ++d)
        r.coords(d) = vec_add(parent_->field(), coords_[d], o.coords_[d]);
    return r;
}

LieElement LieElement::sub(const LieElement& o) const {
    check_same_parent(*this, o);
    LieElement r(parent_);
    for (int d = 1; d <= 3; ++d)
        r.coords(d) = vec_sub(parent_->field(), coords_[d], o.coords_[d]);
    return r;
}

LieElement LieElement::scale(Scalar k) const {
    LieElement r(parent_);
    for (int d = 1; d <= 3; ++d)
        r.coords(d) = vec_scale(parent_->field(), k % parent_->field().p(), coords_[d]);
    return r;
}

LieElement LieElement::neg() const { return scale(parent_->field().neg(1)); }

LieElement LieElement::bracket(const LieElement& o) const {
    check_same_parent(*this, o);
    LieElement r(parent_);
    const PrimeField f = parent_->field();
    for (int d1 = 1; d1 <= parent_->class_c(); ++d1) {
        if (vec_is_zero(coords_[d1])) continue;
        for (int d2 = 1; d1 + d2 <= parent_->class_c(); ++d2) {
            if (vec_is_zero(o.coords_[d2])) continue;
            Vec part = parent_->bracket_coords(d1, coords_[d1], d2, o.coords_[d2]);
            r.coords(d1 + d2) = vec_add(f, r.coords(d1 + d2), part);
        }
    }
    return r;
}

LieElement LieElement::pr(int d) const {
    LieElement r(parent_);
    if (d >= 1 && d <= 3) r.coords(d) = coords_[d];
    return r;
}

bool LieElement::is_zero() const {
    for (int d = 1; d <= 3; ++d)
        if (!vec_is_zero(coords_[d])) return false;
    return true;
}

int LieElement::homogeneous_degree() const {
    int deg = 0;
    for (int d = 1; d <= 3; ++d)
        if (!vec_is_zero(coords_[d])) {
            if (deg != 0) return -1;
            deg = d;
        }
    return deg;
}

bool LieElement::operator==(const LieElement& o) const {
    return parent_ == o.parent_ && coords_ == o.coords_;
}

// ---------- Algebra ----------

AlgebraPtr Algebra::free_algebra(PrimeField field, int class_c,
                                 std::vector<GeneratorSymbol> gens) {
    return free_algebra(std::make_shared<const FreeLie>(field, class_c, std::move(gens)));
}

AlgebraPtr Algebra::free_algebra(std::shared_ptr<const FreeLie> fl) {
    auto a = std::shared_ptr<Algebra>(new Algebra(fl->field(), fl->class_c()));
    a->dims_ = fl->dims();
    for (int d1 = 1; d1 <= a->c_; ++d1)
        for (int d2 = 1; d1 + d2 <= a->c_; ++d2) {
            auto& t = a->tables_[d1][d2];
            t.resize(a->dims_[d1] * a->dims_[d2]);
            for (std::size_t i = 0; i < a->dims_[d1]; ++i)
                for (std::size_t j = 0; j < a->dims_[d2]; ++j)
                    t[i * a->dims_[d2] + j] = fl->bracket_basis(d1, i, d2, j);
        }
    a->hall_ = std::move(fl);
    return a;
}

AlgebraPtr Algebra::zero_algebra(PrimeField field, int class_c) {
    auto a = std::shared_ptr<Algebra>(new Algebra(field, class_c));
    return a;
}

AlgebraPtr Algebra::from_tables(
    PrimeField field, int class_c, GradedDims dims,
    const std::array<std::array<std::vector<Vec>, 4>, 4>& tables) {
    auto a = std::shared_ptr<Algebra>(new Algebra(field, class_c));
    a->dims_ = dims;
    a->dims_[0] = 0;
    for (int d = class_c + 1; d <= 3; ++d)
        if (dims[d] != 0) throw Error("dimension above class bound");
    a->tables_ = tables;
    a->check_tables();
    return a;
}

void Algebra::check_tables() const {
    const PrimeField f = field_;
    for (int d1 = 1; d1 <= c_; ++d1)
        for (int d2 = 1; d1 + d2 <= c_; ++d2) {
            if (tables_[d1][d2].size() != dims_[d1] * dims_[d2])
                throw Error("structure table shape mismatch");
            for (const auto& v : tables_[d1][d2])
                if (v.size() != dims_[d1 + d2])
                    throw Error("structure table entry shape mismatch");
        }
    // antisymmetry on basis pairs
    for (int d1 = 1; d1 <= c_; ++d1)
        for (int d2 = d1; d1 + d2 <= c_; ++d2)
            for (std::size_t i = 0; i < dims_[d1]; ++i)
                for (std::size_t j = 0; j < dims_[d2]; ++j) {
                    const Vec& ab = tables_[d1][d2][i * dims_[d2] + j];
                    const Vec& ba = tables_[d2][d1][j * dims_[d1] + i];
                    if (vec_add(f, ab, ba) != Vec(ab.size(), 0))
                        throw Error("antisymmetry violated in tables");
                    if (d1 == d2 && i == j && !vec_is_zero(ab))
                        throw Error("alternation violated in tables");
                }
    // Jacobi on basis triples (only degree 1+1+1 can survive for c <= 3)
    if (c_ >= 3)
        for (std::size_t i = 0; i < dims_[1]; ++i)
            for (std::size_t j = 0; j < dims_[1]; ++j)
                for (std::size_t k = 0; k < dims_[1]; ++k) {
                    Vec ab = tables_[1][1][i * dims_[1] + j];
                    // [[a,b],c]
                    Vec c_unit(dims_[1], 0);
                    c_unit[k] = 1;
                    Vec t1 = bracket_coords(2, ab, 1, c_unit);
                    Vec ac = tables_[1][1][i * dims_[1] + k];
                    Vec b_unit(dims_[1], 0);
                    b_unit[j] = 1;
                    Vec t2 = bracket_coords(2, ac, 1, b_unit);
                    Vec bc = tables_[1][1][j * dims_[1] + k];
                    Vec a_unit(dims_[1], 0);
                    a_unit[i] = 1;
                    Vec t3 = bracket_coords(1, a_unit, 2, bc);
                    // [[a,b],c] = [[a,c],b] + [a,[b,c]]
                    if (t1 != vec_add(f, t2, t3))
                        throw Error("Jacobi identity violated in tables");
                }
}

Vec Algebra::bracket_coords(int d1, const Vec& a, int d2, const Vec& b) const {
    if (d1 + d2 > c_) return Vec{};
    Vec out(dims_[d1 + d2], 0);
    const auto& t = tables_[d1][d2];
    for (std::size_t i = 0; i < dims_[d1]; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dims_[d2]; ++j) {
            if (b[j] == 0) continue;
            Scalar k = field_.mul(a[i], b[j]);
            const Vec& entry = t[i * dims_[d2] + j];
            for (std::size_t x = 0; x < out.size(); ++x)
                out[x] = field_.add(out[x], field_.mul(k, entry[x]));
        }
    }
    return out;
}

LieElement Algebra::element() const {
    return LieElement(shared_from_this());
}

LieElement Algebra::basis_element(int d, std::size_t i) const {
    LieElement e(shared_from_this());
    e.coords(d)[i] = 1;
    return e;
}

LieElement Algebra::from_degree_vec(int d, const Vec& v) const {
    LieElement e(shared_from_this());
    if (v.size() != dims_[d]) throw Error("coordinate length mismatch");
    e.coords(d) = v;
    return e;
}

Vec Algebra::project_from_free(int d, const Vec& free_coords) const {
    if (!qdata_) throw Error("not a quotient algebra");
    Vec red = qdata_->ideal[d - 1].reduce(free_coords);
    Vec out(dims_[d]);
    const auto& cols = qdata_->coset_cols[d - 1];
    for (std::size_t i = 0; i < cols.size(); ++i) out[i] = red[cols[i]];
    return out;
}

Vec Algebra::lift_to_free(int d, const Vec& quot_coords) const {
    if (!qdata_) throw Error("not a quotient algebra");
    Vec out(qdata_->free_algebra->dim(d), 0);
    const auto& cols = qdata_->coset_cols[d - 1];
    for (std::size_t i = 0; i < cols.size(); ++i) out[cols[i]] = quot_coords[i];
    return out;
}

LieElement Algebra::project_from_free(const LieElement& e) const {
    LieElement out(shared_from_this());
    for (int d = 1; d <= c_; ++d) out.coords(d) = project_from_free(d, e.coords(d));
    return out;
}

LieElement Algebra::lift_to_free(const LieElement& e) const {
    if (!qdata_) throw Error("not a quotient algebra");
    LieElement out(qdata_->free_algebra);
    for (int d = 1; d <= c_; ++d) out.coords(d) = lift_to_free(d, e.coords(d));
    return out;
}

Vec Algebra::structure_key() const {
    Vec k{field_.p(), static_cast<Scalar>(c_)};
    for (int d = 1; d <= 3; ++d) k.push_back(static_cast<Scalar>(dims_[d]));
    for (int d1 = 1; d1 <= c_; ++d1)
        for (int d2 = 1; d1 + d2 <= c_; ++d2)
            for (const auto& v : tables_[d1][d2])
                k.insert(k.end(), v.begin(), v.end());
    return k;
}

// ---------- quotient ----------

AlgebraPtr quotient(AlgebraPtr free_alg, const std::vector<LieElement>& relations) {
    if (!free_alg->hall()) throw Error("quotient requires a free algebra");
    const int c = free_alg->class_c();
    const PrimeField f = free_alg->field();

    std::vector<std::vector<Vec>> spans(4);
    for (const auto& r : relations) {
        if (r.parent() != free_alg) throw Error("relation not in the given free algebra");
        int deg = r.homogeneous_degree();
        if (deg == -1) throw Error("inhomogeneous relation");
        if (deg == 1) throw Error("degree-1 relation not allowed");
        if (deg == 0) continue;
        spans[deg].push_back(r.coords(deg));
    }
    std::vector<Subspace> ideal;
    for (int d = 1; d <= 3; ++d)
        ideal.push_back(Subspace::span(f, free_alg->dim(d), spans[d]));

    // Close under bracketing with everything (grading bounds the rounds).
    bool changed = true;
    while (changed) {
        changed = false;
        for (int d1 = 2; d1 <= c; ++d1)
            for (int d2 = 1; d1 + d2 <= c; ++d2) {
                std::vector<Vec> extra;
                for (std::size_t i = 0; i < ideal[d1 - 1].dim(); ++i)
                    for (std::size_t j = 0; j < free_alg->dim(d2); ++j) {
                        Vec unit(free_alg->dim(d2), 0);
                        unit[j] = 1;
                        extra.push_back(free_alg->bracket_coords(
                            d1, ideal[d1 - 1].basis_row(i), d2, unit));
                    }
                if (extra.empty()) continue;
                Subspace bigger = ideal[d1 + d2 - 1].sum(
                    Subspace::span(f, free_alg->dim(d1 + d2), extra));
                if (bigger != ideal[d1 + d2 - 1]) {
                    ideal[d1 + d2 - 1] = bigger;
                    changed = true;
                }
            }
    }

    auto qd = std::make_shared<QuotientData>();
    qd->free_algebra = free_alg;
    qd->relations = relations;
    qd->ideal = ideal;
    GradedDims dims{0, 0, 0, 0};
    for (int d = 1; d <= c; ++d) {
        auto piv = pivot_columns(ideal[d - 1].basis());
        std::vector<bool> is_piv(free_alg->dim(d), false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<std::size_t> cols;
        for (std::size_t cidx = 0; cidx < free_alg->dim(d); ++cidx)
            if (!is_piv[cidx]) cols.push_back(cidx);
        qd->coset_cols.push_back(cols);
        dims[d] = cols.size();
    }

    auto a = std::shared_ptr<Algebra>(new Algebra(f, c));
    a->dims_ = dims;
    a->qdata_ = qd;
    for (int d1 = 1; d1 <= c; ++d1)
        for (int d2 = 1; d1 + d2 <= c; ++d2) {
            auto& t = a->tables_[d1][d2];
            t.resize(dims[d1] * dims[d2]);
            for (std::size_t i = 0; i < dims[d1]; ++i) {
                Vec li(free_alg->dim(d1), 0);
                li[qd->coset_cols[d1 - 1][i]] = 1;
                for (std::size_t j = 0; j < dims[d2]; ++j) {
                    Vec lj(free_alg->dim(d2), 0);
                    lj[qd->coset_cols[d2 - 1][j]] = 1;
                    Vec br = free_alg->bracket_coords(d1, li, d2, lj);
                    t[i * dims[d2] + j] = a->project_from_free(d1 + d2, br);
                }
            }
        }
    return a;
}

// ---------- GradedSubalgebra ----------

GradedSubalgebra GradedSubalgebra::zero(AlgebraPtr parent) {
    std::vector<Subspace> parts;
    for (int d = 1; d <= 3; ++d)
        parts.push_back(Subspace::zero(parent->field(), parent->dim(d)));
    return GradedSubalgebra(std::move(parent), std::move(parts));
}

GradedSubalgebra GradedSubalgebra::full(AlgebraPtr parent) {
    std::vector<Subspace> parts;
    for (int d = 1; d <= 3; ++d)
        parts.push_back(Subspace::full(parent->field(), parent->dim(d)));
    return GradedSubalgebra(std::move(parent), std::move(parts));
}

GradedSubalgebra GradedSubalgebra::from_parts(AlgebraPtr parent,
                                              std::vector<Subspace> parts) {
    while (parts.size() < 3)
        parts.push_back(Subspace::zero(parent->field(),
                                       parent->dim(static_cast<int>(parts.size()) + 1)));
    for (int d = 1; d <= 3; ++d)
        if (parts[d - 1].ambient_dim() != parent->dim(d))
            throw Error("part ambient mismatch");
    return GradedSubalgebra(std::move(parent), std::move(parts));
}

std::size_t GradedSubalgebra::total_dim() const {
    return parts_[0].dim() + parts_[1].dim() + parts_[2].dim();
}

GradedDims GradedSubalgebra::dims() const {
    return GradedDims{0, parts_[0].dim(), parts_[1].dim(), parts_[2].dim()};
}

bool GradedSubalgebra::contains(const LieElement& e) const {
    if (e.parent() != parent_) throw Error("element of a different algebra");
    for (int d = 1; d <= 3; ++d)
        if (!part(d).contains(e.coords(d))) return false;
    return true;
}

bool GradedSubalgebra::contains(const GradedSubalgebra& o) const {
    for (int d = 1; d <= 3; ++d)
        if (!part(d).contains(o.part(d))) return false;
    return true;
}

bool GradedSubalgebra::is_bracket_closed() const {
    const int c = parent_->class_c();
    for (int d1 = 1; d1 <= c; ++d1)
        for (int d2 = d1; d1 + d2 <= c; ++d2)
            for (std::size_t i = 0; i < dim(d1); ++i)
                for (std::size_t j = 0; j < dim(d2); ++j) {
                    Vec br = parent_->bracket_coords(d1, part(d1).basis_row(i), d2,
                                                     part(d2).basis_row(j));
                    if (!part(d1 + d2).contains(br)) return false;
                }
    return true;
}

GradedSubalgebra GradedSubalgebra::sum_spans(const GradedSubalgebra& o) const {
    if (parent_ != o.parent_) throw Error("subalgebras of different algebras");
    std::vector<Subspace> parts;
    for (int d = 1; d <= 3; ++d) parts.push_back(part(d).sum(o.part(d)));
    return GradedSubalgebra(parent_, std::move(parts));
}

GradedSubalgebra GradedSubalgebra::intersect(const GradedSubalgebra& o) const {
    if (parent_ != o.parent_) throw Error("subalgebras of different algebras");
    std::vector<Subspace> parts;
    for (int d = 1; d <= 3; ++d) parts.push_back(part(d).intersect(o.part(d)));
    return GradedSubalgebra(parent_, std::move(parts));
}

std::vector<LieElement> GradedSubalgebra::basis_elements() const {
    std::vector<LieElement> out;
    for (int d = 1; d <= 3; ++d)
        for (std::size_t i = 0; i < dim(d); ++i)
            out.push_back(parent_->from_degree_vec(d, part(d).basis_row(i)));
    return out;
}

bool GradedSubalgebra::operator==(const GradedSubalgebra& o) const {
    return parent_ == o.parent_ && parts_[0] == o.parts_[0] &&
           parts_[1] == o.parts_[1] && parts_[2] == o.parts_[2];
}

Vec GradedSubalgebra::key() const {
    Vec k;
    for (int d = 1; d <= 3; ++d) {
        Vec pk = part(d).key();
        k.insert(k.end(), pk.begin(), pk.end());
    }
    return k;
}

GradedSubalgebra generated_closure(const GradedSubalgebra& seed) {
    GradedSubalgebra cur = seed;
    const AlgebraPtr& M = seed.parent();
    const int c = M->class_c();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int d1 = 1; d1 <= c; ++d1)
            for (int d2 = d1; d1 + d2 <= c; ++d2) {
                std::vector<Vec> extra;
                for (std::size_t i = 0; i < cur.dim(d1); ++i)
                    for (std::size_t j = 0; j < cur.dim(d2); ++j) {
                        Vec br = M->bracket_coords(d1, cur.part(d1).basis_row(i), d2,
                                                   cur.part(d2).basis_row(j));
                        if (!cur.part(d1 + d2).contains(br)) extra.push_back(br);
                    }
                if (extra.empty()) continue;
                std::vector<Subspace> parts;
                for (int d = 1; d <= 3; ++d) {
                    Subspace s = cur.part(d);
                    if (d == d1 + d2)
                        s = s.sum(Subspace::span(M->field(), M->dim(d), extra));
                    parts.push_back(s);
                }
                cur = GradedSubalgebra::from_parts(M, parts);
                changed = true;
            }
    }
    return cur;
}

GradedSubalgebra generated_subalgebra(AlgebraPtr M,
                                      const std::vector<LieElement>& elems) {
    std::vector<std::vector<Vec>> spans(4);
    for (const auto& e : elems) {
        if (e.parent() != M) throw Error("element of a different algebra");
        for (int d = 1; d <= 3; ++d)
            if (!vec_is_zero(e.coords(d))) spans[d].push_back(e.coords(d));
    }
    std::vector<Subspace> parts;
    for (int d = 1; d <= 3; ++d)
        parts.push_back(Subspace::span(M->field(), M->dim(d), spans[d]));
    return generated_closure(GradedSubalgebra::from_parts(M, parts));
}

GradedSubalgebra generated_join(const GradedSubalgebra& a,
                                const GradedSubalgebra& c) {
    return generated_closure(a.sum_spans(c));
}

// ---------- GradedHom ----------

GradedHom::GradedHom(AlgebraPtr src, AlgebraPtr tgt, std::vector<Matrix> mats)
    : src_(std::move(src)), tgt_(std::move(tgt)), mats_(std::move(mats)) {
    if (mats_.size() != 3) throw Error("hom needs 3 degree matrices");
    for (int d = 1; d <= 3; ++d)
        if (mats_[d - 1].rows() != src_->dim(d) || mats_[d - 1].cols() != tgt_->dim(d))
            throw Error("hom matrix shape mismatch");
}

GradedHom GradedHom::identity(AlgebraPtr a) {
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d) mats.push_back(Matrix::identity(a->field(), a->dim(d)));
    return GradedHom(a, a, std::move(mats));
}

GradedHom GradedHom::zero(AlgebraPtr src, AlgebraPtr tgt) {
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d)
        mats.push_back(Matrix(src->field(), src->dim(d), tgt->dim(d)));
    return GradedHom(std::move(src), std::move(tgt), std::move(mats));
}

Vec GradedHom::apply(int d, const Vec& v) const { return mats_[d - 1].apply(v); }

LieElement GradedHom::apply(const LieElement& e) const {
    if (e.parent() != src_) throw Error("element of a different algebra");
    LieElement out(tgt_);
    for (int d = 1; d <= 3; ++d) out.coords(d) = apply(d, e.coords(d));
    return out;
}

GradedHom GradedHom::then(const GradedHom& g) const {
    if (g.src() != tgt_) throw Error("hom composition mismatch");
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d) mats.push_back(mats_[d - 1].multiply(g.mats_[d - 1]));
    return GradedHom(src_, g.tgt(), std::move(mats));
}

bool GradedHom::is_embedding() const {
    for (int d = 1; d <= 3; ++d) {
        std::size_t rank;
        rref(mats_[d - 1], &rank);
        if (rank != src_->dim(d)) return false;
    }
    return true;
}

bool GradedHom::is_surjective() const {
    for (int d = 1; d <= 3; ++d) {
        std::size_t rank;
        rref(mats_[d - 1], &rank);
        if (rank != tgt_->dim(d)) return false;
    }
    return true;
}

std::vector<Subspace> GradedHom::kernel() const {
    std::vector<Subspace> out;
    for (int d = 1; d <= 3; ++d) out.push_back(Subspace::span(left_kernel_basis(mats_[d - 1])));
    return out;
}

std::size_t GradedHom::kernel_total_dim() const {
    std::size_t n = 0;
    for (const auto& k : kernel()) n += k.dim();
    return n;
}

GradedSubalgebra GradedHom::image() const {
    std::vector<Subspace> parts;
    for (int d = 1; d <= 3; ++d) parts.push_back(Subspace::span(mats_[d - 1]));
    return GradedSubalgebra::from_parts(tgt_, std::move(parts));
}

bool GradedHom::respects_brackets() const {
    const int c = src_->class_c();
    for (int d1 = 1; d1 <= c; ++d1)
        for (int d2 = d1; d1 + d2 <= c; ++d2)
            for (std::size_t i = 0; i < src_->dim(d1); ++i)
                for (std::size_t j = 0; j < src_->dim(d2); ++j) {
                    Vec ei(src_->dim(d1), 0), ej(src_->dim(d2), 0);
                    ei[i] = 1;
                    ej[j] = 1;
                    Vec lhs = apply(d1 + d2, src_->bracket_coords(d1, ei, d2, ej));
                    Vec rhs = tgt_->bracket_coords(d1, apply(d1, ei), d2, apply(d2, ej));
                    if (rhs.empty()) rhs = Vec(tgt_->dim(d1 + d2), 0);
                    if (lhs != rhs) return false;
                }
    return true;
}

// ---------- o-systems and canonical pairs ----------

OSystem extract_o_system(const GradedSubalgebra& target,
                         const GradedSubalgebra* over) {
    const AlgebraPtr M = target.parent();
    const int c = M->class_c();
    OSystem out;
    GradedSubalgebra cur = over ? *over : GradedSubalgebra::zero(M);
    for (int d = 1; d <= c; ++d) {
        cur = generated_closure(cur);
        std::vector<Vec> fresh;
        for (std::size_t i = 0; i < target.dim(d); ++i) {
            Vec v = target.part(d).basis_row(i);
            Subspace have = cur.part(d).sum(Subspace::span(M->field(), M->dim(d), fresh));
            if (have.contains(v)) continue;
            fresh.push_back(have.reduce(v));
        }
        for (const auto& v : fresh) out.elems.push_back(M->from_degree_vec(d, v));
        out.counts[d] = fresh.size();
        if (!fresh.empty()) {
            std::vector<Subspace> parts;
            for (int dd = 1; dd <= 3; ++dd) {
                Subspace s = cur.part(dd);
                if (dd == d) s = s.sum(Subspace::span(M->field(), M->dim(d), fresh));
                parts.push_back(s);
            }
            cur = GradedSubalgebra::from_parts(M, parts);
        }
    }
    return out;
}

OSystem extract_o_system(AlgebraPtr M) {
    return extract_o_system(GradedSubalgebra::full(std::move(M)));
}

namespace {

// Evaluate every Hall monomial of the free shape at the given generator
// images (in parent coordinates); returns per-degree matrices free -> parent.
std::vector<Matrix> evaluate_hall(const FreeLie& shape, const AlgebraPtr& parent,
                                  const std::vector<LieElement>& images) {
    if (images.size() != shape.generators().size())
        throw Error("generator image count mismatch");
    // per degree: vector of parent-coordinate vectors, one per basis monomial
    std::array<std::vector<Vec>, 4> img;
    for (int d = 1; d <= shape.class_c(); ++d) img[d].resize(shape.dim(d));
    for (int d = 1; d <= shape.class_c(); ++d) {
        for (std::size_t i = 0; i < shape.dim(d); ++i) {
            const HallMonomial& m = shape.basis(d)[i];
            if (m.is_leaf()) {
                const LieElement& e = images[m.gen];
                int hd = e.homogeneous_degree();
                if (hd != 0 && hd != d)
                    throw Error("generator image has wrong degree");
                img[d][i] = e.coords(d);
            } else {
                Vec br = parent->bracket_coords(m.left_deg, img[m.left_deg][m.left_idx],
                                                m.right_deg, img[m.right_deg][m.right_idx]);
                if (br.empty()) br = Vec(parent->dim(d), 0);
                img[d][i] = br;
            }
        }
    }
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d) {
        Matrix m(parent->field(), shape.dim(d), parent->dim(d));
        for (std::size_t i = 0; i < shape.dim(d); ++i) m.set_row(i, img[d][i]);
        mats.push_back(m);
    }
    return mats;
}

// Graded ideal closure of per-degree spans inside a free algebra.
std::vector<Subspace> ideal_closure(const AlgebraPtr& free_alg,
                                    std::vector<Subspace> spans) {
    const int c = free_alg->class_c();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int d1 = 2; d1 <= c; ++d1)
            for (int d2 = 1; d1 + d2 <= c; ++d2) {
                std::vector<Vec> extra;
                for (std::size_t i = 0; i < spans[d1 - 1].dim(); ++i)
                    for (std::size_t j = 0; j < free_alg->dim(d2); ++j) {
                        Vec unit(free_alg->dim(d2), 0);
                        unit[j] = 1;
                        extra.push_back(free_alg->bracket_coords(
                            d1, spans[d1 - 1].basis_row(i), d2, unit));
                    }
                if (extra.empty()) continue;
                Subspace bigger = spans[d1 + d2 - 1].sum(
                    Subspace::span(free_alg->field(), free_alg->dim(d1 + d2), extra));
                if (bigger != spans[d1 + d2 - 1]) {
                    spans[d1 + d2 - 1] = bigger;
                    changed = true;
                }
            }
    }
    return spans;
}

}  // namespace

CanonicalPair canonical_pair(const GradedSubalgebra& target) {
    const AlgebraPtr M = target.parent();
    const PrimeField f = M->field();
    const int c = M->class_c();
    OSystem osys = extract_o_system(target);
    auto shape = free_lie_shape(f, c, osys.counts[1], osys.counts[2], osys.counts[3]);
    AlgebraPtr free_alg = Algebra::free_algebra(shape);

    auto mats = evaluate_hall(*shape, M, osys.elems);
    GradedHom onto(free_alg, M, mats);

    std::vector<Subspace> kernel;
    for (int d = 1; d <= 3; ++d)
        kernel.push_back(Subspace::span(left_kernel_basis(mats[d - 1])));

    // ideal dims: kernel_d modulo the ideal generated by lower-degree kernels
    GradedDims ideal_dims{0, 0, 0, 0};
    std::vector<std::vector<Vec>> reps(3);
    std::vector<Subspace> lower;
    for (int d = 1; d <= 3; ++d) lower.push_back(Subspace::zero(f, free_alg->dim(d)));
    for (int d = 2; d <= c; ++d) {
        Subspace inside = lower[d - 1].intersect(kernel[d - 1]);
        reps[d - 1] = inside.complement_in(kernel[d - 1]);
        ideal_dims[d] = reps[d - 1].size();
        // extend the generated ideal with this degree's kernel
        lower[d - 1] = lower[d - 1].sum(kernel[d - 1]);
        lower = ideal_closure(free_alg, lower);
    }

    // lift: for each basis row of target.part(d), one preimage in free coords
    std::vector<Matrix> lift;
    for (int d = 1; d <= 3; ++d) {
        Matrix l(f, target.dim(d), free_alg->dim(d));
        for (std::size_t i = 0; i < target.dim(d); ++i) {
            auto pre = solve_left(mats[d - 1], target.part(d).basis_row(i));
            if (!pre) throw Error("internal: o-system does not generate target");
            l.set_row(i, *pre);
        }
        lift.push_back(l);
    }

    CanonicalPair cp{free_alg, onto, kernel, ideal_dims, reps, osys, lift};
    return cp;
}

CanonicalPair canonical_pair(AlgebraPtr M) {
    return canonical_pair(GradedSubalgebra::full(std::move(M)));
}

// ---------- star ----------

std::pair<AlgebraPtr, GradedHom> star(AlgebraPtr M) {
    const int c = M->class_c();
    if (c < 2) throw Error("star needs class >= 2");
    GradedDims dims = M->dims();
    dims[c] = 0;
    std::array<std::array<std::vector<Vec>, 4>, 4> tables;
    for (int d1 = 1; d1 <= c - 1; ++d1)
        for (int d2 = 1; d1 + d2 <= c - 1; ++d2) {
            tables[d1][d2].resize(dims[d1] * dims[d2]);
            for (std::size_t i = 0; i < dims[d1]; ++i)
                for (std::size_t j = 0; j < dims[d2]; ++j) {
                    Vec ei(M->dim(d1), 0), ej(M->dim(d2), 0);
                    ei[i] = 1;
                    ej[j] = 1;
                    tables[d1][d2][i * dims[d2] + j] = M->bracket_coords(d1, ei, d2, ej);
                }
        }
    AlgebraPtr st = Algebra::from_tables(M->field(), c - 1, dims, tables);
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d) {
        Matrix m(M->field(), M->dim(d), st->dim(d));
        if (d < c)
            for (std::size_t i = 0; i < M->dim(d); ++i) m.at(i, i) = 1;
        mats.push_back(m);
    }
    return {st, GradedHom(M, st, std::move(mats))};
}

// ---------- homs from generators ----------

GradedHom hom_from_generators(const CanonicalPair& src_cp, AlgebraPtr tgt,
                              const std::vector<LieElement>& images) {
    const AlgebraPtr& free_alg = src_cp.free_alg;
    auto mats = evaluate_hall(*free_alg->hall(), tgt, images);
    // relations (the kernel) must die
    for (int d = 1; d <= 3; ++d)
        for (std::size_t i = 0; i < src_cp.kernel[d - 1].dim(); ++i) {
            Vec k = src_cp.kernel[d - 1].basis_row(i);
            if (!vec_is_zero(mats[d - 1].apply(k)))
                throw NotAHomomorphism("relation of degree " + std::to_string(d) +
                                       " not killed by generator images");
        }
    std::vector<Matrix> out;
    for (int d = 1; d <= 3; ++d) out.push_back(src_cp.lift[d - 1].multiply(mats[d - 1]));
    return GradedHom(src_cp.onto.tgt(), tgt, std::move(out));
}

GradedHom hom_from_generators(AlgebraPtr src, AlgebraPtr tgt,
                              const std::vector<LieElement>& images) {
    return hom_from_generators(canonical_pair(src), std::move(tgt), images);
}

// ---------- as_algebra ----------

std::pair<AlgebraPtr, GradedHom> as_algebra(const GradedSubalgebra& a) {
    if (!a.is_bracket_closed()) throw Error("as_algebra: not bracket-closed");
    const AlgebraPtr M = a.parent();
    const int c = M->class_c();
    GradedDims dims = a.dims();
    std::array<std::array<std::vector<Vec>, 4>, 4> tables;
    for (int d1 = 1; d1 <= c; ++d1)
        for (int d2 = 1; d1 + d2 <= c; ++d2) {
            tables[d1][d2].resize(dims[d1] * dims[d2]);
            for (std::size_t i = 0; i < dims[d1]; ++i)
                for (std::size_t j = 0; j < dims[d2]; ++j) {
                    Vec br = M->bracket_coords(d1, a.part(d1).basis_row(i), d2,
                                               a.part(d2).basis_row(j));
                    tables[d1][d2][i * dims[d2] + j] =
                        a.part(d1 + d2).coordinates(br);
                }
        }
    AlgebraPtr alg = Algebra::from_tables(M->field(), c, dims, tables);
    std::vector<Matrix> mats;
    for (int d = 1; d <= 3; ++d) {
        Matrix m(M->field(), dims[d], M->dim(d));
        for (std::size_t i = 0; i < dims[d]; ++i) m.set_row(i, a.part(d).basis_row(i));
        mats.push_back(m);
    }
    return {alg, GradedHom(alg, M, std::move(mats))};
}

// ---------- isomorphism search ----------

std::optional<GradedHom> find_isomorphism(AlgebraPtr a, AlgebraPtr b,
                                          std::uint64_t cap) {
    if (a->field() != b->field() || a->class_c() != b->class_c()) return std::nullopt;
    for (int d = 1; d <= 3; ++d)
        if (a->dim(d) != b->dim(d)) return std::nullopt;
    CanonicalPair cp = canonical_pair(a);
    const PrimeField f = a->field();
    // candidate count: prod over generators of p^dim_b(deg)
    long double est = 1;
    for (const auto& e : cp.osys.elems) {
        int d = e.homogeneous_degree();
        est *= std::pow((long double)f.p(), (long double)b->dim(d == 0 ? 1 : d));
        if (est > (long double)cap) throw EnumerationTooLarge("isomorphism search over cap");
    }
    std::vector<int> degs;
    for (const auto& e : cp.osys.elems) degs.push_back(e.homogeneous_degree());
    std::vector<Vec> vals;
    for (int d : degs) vals.push_back(Vec(b->dim(d), 0));
    while (true) {
        std::vector<LieElement> images;
        for (std::size_t i = 0; i < vals.size(); ++i)
            images.push_back(b->from_degree_vec(degs[i], vals[i]));
        try {
            GradedHom h = hom_from_generators(cp, b, images);
            if (h.is_embedding() && h.is_surjective()) return h;
        } catch (const NotAHomomorphism&) {
        }
        // odometer over all coordinate tuples
        std::size_t gi = 0;
        while (gi < vals.size()) {
            bool carried = true;
            for (auto& x : vals[gi]) {
                if (++x < f.p()) {
                    carried = false;
                    break;
                }
                x = 0;
            }
            if (!carried) break;
            ++gi;
        }
        if (gi == vals.size()) break;
        if (vals.empty()) break;
    }
    return std::nullopt;
}

}  // namespace gla
