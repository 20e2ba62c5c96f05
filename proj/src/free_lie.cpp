#include "gla/free_lie.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace gla {

std::uint64_t FreeLie::pack(int ld, std::size_t li, int rd, std::size_t ri) const {
    return (std::uint64_t(ld) << 60) | (std::uint64_t(li) << 34) |
           (std::uint64_t(rd) << 30) | std::uint64_t(ri);
}

FreeLie::FreeLie(PrimeField field, int class_c, std::vector<GeneratorSymbol> gens)
    : field_(field), c_(class_c), gens_(std::move(gens)) {
    if (c_ < 1 || c_ > 3) throw Error("class must be 1, 2 or 3");
    std::set<std::string> names;
    for (const auto& g : gens_) {
        if (g.degree < 1 || g.degree > c_)
            throw Error("generator degree out of range: " + g.name);
        if (!names.insert(g.name).second)
            throw Error("duplicate generator name: " + g.name);
    }
    std::stable_sort(gens_.begin(), gens_.end(),
                     [](const GeneratorSymbol& a, const GeneratorSymbol& b) {
                         return a.degree != b.degree ? a.degree < b.degree
                                                     : a.name < b.name;
                     });

    // Degree-1 basis: the degree-1 generators in canonical order.
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].degree == 1)
            basis_[1].push_back(HallMonomial{1, static_cast<int>(i)});
    const std::size_t n1 = basis_[1].size();

    // Degree-2 basis: degree-2 generators, then [a,b] for a > b in degree 1.
    if (c_ >= 2) {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].degree == 2)
                basis_[2].push_back(HallMonomial{2, static_cast<int>(i)});
        for (std::size_t a = 0; a < n1; ++a)
            for (std::size_t b = 0; b < a; ++b) {
                HallMonomial m{2, -1, 1, a, 1, b};
                hall_index_[pack(1, a, 1, b)] = basis_[2].size();
                basis_[2].push_back(m);
            }
    }

    // Degree-3 basis: degree-3 generators, then [u, v] with u a degree-2
    // basis monomial, v degree 1, subject to the Hall condition: when
    // u = [a,b] require b <= v.
    if (c_ >= 3) {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].degree == 3)
                basis_[3].push_back(HallMonomial{3, static_cast<int>(i)});
        for (std::size_t j = 0; j < basis_[2].size(); ++j) {
            const HallMonomial& u = basis_[2][j];
            for (std::size_t k = 0; k < n1; ++k) {
                if (!u.is_leaf() && u.right_idx > k) continue;
                HallMonomial m{3, -1, 2, j, 1, k};
                hall_index_[pack(2, j, 1, k)] = basis_[3].size();
                basis_[3].push_back(m);
            }
        }
    }

    // Structure-constant tables for all degree pairs within the class bound.
    for (int d1 = 1; d1 <= c_; ++d1)
        for (int d2 = 1; d1 + d2 <= c_; ++d2) {
            auto& t = tables_[d1][d2];
            t.resize(dim(d1) * dim(d2));
            for (std::size_t i1 = 0; i1 < dim(d1); ++i1)
                for (std::size_t i2 = 0; i2 < dim(d2); ++i2)
                    t[i1 * dim(d2) + i2] = compute_bracket(d1, i1, d2, i2);
        }
}

Vec FreeLie::compute_bracket(int d1, std::size_t i1, int d2, std::size_t i2) const {
    const int dt = d1 + d2;
    Vec out(dim(dt), 0);
    if (d1 == d2 && i1 == i2) return out;
    if (d1 < d2 || (d1 == d2 && i1 < i2)) {
        Vec v = compute_bracket(d2, i2, d1, i1);
        return vec_scale(field_, field_.neg(1), v);
    }
    // Now (d1,i1) > (d2,i2) in the basis order.
    auto it = hall_index_.find(pack(d1, i1, d2, i2));
    if (it != hall_index_.end()) {
        out[it->second] = 1;
        return out;
    }
    if (d1 == 2 && d2 == 1) {
        const HallMonomial& u = basis_[2][i1];
        if (u.is_leaf()) throw Error("internal: generator bracket not in Hall index");
        // u = [a,b] with b > v: Jacobi rewrite
        // [[a,b],v] = [[a,v],b] - [[b,v],a], both right-hand monomials basic.
        std::size_t a = u.left_idx, b = u.right_idx, v = i2;
        std::size_t ab_av = hall_index_.at(pack(1, a, 1, v));
        std::size_t ab_bv = hall_index_.at(pack(1, b, 1, v));
        std::size_t m1 = hall_index_.at(pack(2, ab_av, 1, b));
        std::size_t m2 = hall_index_.at(pack(2, ab_bv, 1, a));
        out[m1] = field_.add(out[m1], 1);
        out[m2] = field_.sub(out[m2], 1);
        return out;
    }
    throw Error("internal: unexpected bracket shape");
}

Vec FreeLie::bracket_basis(int d1, std::size_t i1, int d2, std::size_t i2) const {
    if (d1 + d2 > c_) return Vec{};
    return tables_[d1][d2][i1 * dim(d2) + i2];
}

GradedDims FreeLie::dims() const {
    GradedDims d{0, 0, 0, 0};
    for (int i = 1; i <= c_; ++i) d[i] = dim(i);
    return d;
}

std::string FreeLie::monomial_name(int d, std::size_t i) const {
    const HallMonomial& m = basis_[d][i];
    if (m.is_leaf()) return gens_[m.gen].name;
    return "[" + monomial_name(m.left_deg, m.left_idx) + "," +
           monomial_name(m.right_deg, m.right_idx) + "]";
}

std::pair<int, std::size_t> FreeLie::generator_position(std::size_t gen_idx) const {
    int d = gens_[gen_idx].degree;
    for (std::size_t i = 0; i < basis_[d].size(); ++i)
        if (basis_[d][i].is_leaf() && basis_[d][i].gen == static_cast<int>(gen_idx))
            return {d, i};
    throw Error("internal: generator not found in basis");
}

std::shared_ptr<const FreeLie> free_lie_shape(PrimeField field, int class_c,
                                              std::size_t n1, std::size_t n2,
                                              std::size_t n3) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint32_t, int, std::size_t, std::size_t, std::size_t>,
                    std::shared_ptr<const FreeLie>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(field.p(), class_c, n1, n2, n3);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<GeneratorSymbol> gens;
    auto name = [](char prefix, std::size_t i) {
        // zero-padded so lexicographic name order equals index order
        std::string digits = std::to_string(i);
        return std::string(1, prefix) + std::string(3 - std::min<std::size_t>(3, digits.size()), '0') + digits;
    };
    for (std::size_t i = 0; i < n1; ++i) gens.push_back({name('a', i), 1});
    for (std::size_t i = 0; i < n2; ++i) gens.push_back({name('b', i), 2});
    for (std::size_t i = 0; i < n3; ++i) gens.push_back({name('c', i), 3});
    auto ptr = std::make_shared<const FreeLie>(field, class_c, std::move(gens));
    cache[key] = ptr;
    return ptr;
}

}  // namespace gla
