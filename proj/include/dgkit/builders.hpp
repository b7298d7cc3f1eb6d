#ifndef DGKIT_BUILDERS_HPP
#define DGKIT_BUILDERS_HPP

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dgkit/dg_algebra.hpp"

namespace dgkit {

/// Exterior algebra on one generator: basis {1, x}, x^2 = 0, d = 0,
/// augmented by x -> 0.  Any nonzero degree is allowed.
inline DGAlgebra exterior_algebra(const std::string& gen, int degree, const Field& f) {
    AlgebraData d;
    d.field = f;
    d.basis.push("1", 0);
    d.basis.push(gen, degree);
    d.unit_label = "1";
    const Scalar one = Scalar::one(f);
    for (const std::string& l : {std::string("1"), gen}) {
        d.multiplication.emplace_back("1", l, l, one);
        if (l != "1") d.multiplication.emplace_back(l, "1", l, one);
    }
    d.augmentation = {{{"1", one}}};
    return validate_dga(d);
}

/// Truncated one-generator algebra: basis y^0..y^top with y^i y^j = y^{i+j}
/// (dropped beyond top), d = 0, augmented.  For |y| even this is a truncated
/// polynomial algebra; for |y| odd it is the free associative algebra on one
/// generator, truncated — there is no sign in the product either way.
inline DGAlgebra power_algebra(const std::string& gen, int degree, std::size_t top, const Field& f) {
    if (degree == 0) throw Error(ErrorKind::Internal, "use nilpotent_algebra for degree 0");
    AlgebraData d;
    d.field = f;
    auto name = [&](std::size_t k) {
        if (k == 0) return std::string("1");
        if (k == 1) return gen;
        return gen + "^" + std::to_string(k);
    };
    for (std::size_t k = 0; k <= top; ++k) d.basis.push(name(k), degree * static_cast<int>(k));
    d.unit_label = "1";
    const Scalar one = Scalar::one(f);
    for (std::size_t i = 0; i <= top; ++i)
        for (std::size_t j = 0; i + j <= top; ++j)
            d.multiplication.emplace_back(name(i), name(j), name(i + j), one);
    d.augmentation = {{{"1", one}}};
    int lo = std::min(0, degree * static_cast<int>(top));
    int hi = std::max(0, degree * static_cast<int>(top));
    d.truncation = Window{lo, hi};
    return validate_dga(d);
}

/// Ungraded k[x]/(x^m): basis x^0..x^{m-1} all in degree 0.
inline DGAlgebra nilpotent_algebra(const std::string& gen, std::size_t m, const Field& f) {
    if (m < 2) throw Error(ErrorKind::Internal, "nilpotent_algebra needs m >= 2");
    AlgebraData d;
    d.field = f;
    auto name = [&](std::size_t k) {
        if (k == 0) return std::string("1");
        if (k == 1) return gen;
        return gen + "^" + std::to_string(k);
    };
    for (std::size_t k = 0; k < m; ++k) d.basis.push(name(k), 0);
    d.unit_label = "1";
    const Scalar one = Scalar::one(f);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; i + j < m; ++j)
            d.multiplication.emplace_back(name(i), name(j), name(i + j), one);
    d.augmentation = {{{"1", one}}};
    return validate_dga(d);
}

/// Two-cell semifree left module: the cone of right multiplication by an
/// algebra element y, i.e. A·e ⊕ A·s with d(s) = y·e.  For a one-generator
/// algebra this is the Koszul complex, a perfect replacement of the trivial
/// module whose extra homology sits at the top of the truncation.
inline DGModule cone_module(const DGAlgebra& a, const std::string& y_label) {
    std::size_t y = a.complex().index_of(y_label);
    ModuleData d;
    d.side = ModuleSide::Left;
    auto en = [&](std::size_t i) { return a.label_of(i) + "·e"; };
    auto sn = [&](std::size_t i) { return a.label_of(i) + "·s"; };
    for (std::size_t i = 0; i < a.size(); ++i) d.basis.push(en(i), a.degree_of(i));
    for (std::size_t i = 0; i < a.size(); ++i)
        d.basis.push(sn(i), a.degree_of(i) + a.degree_of(y) + 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (const auto& [j, c] : a.d(i)) {
            d.differential.emplace_back(en(i), en(j), c);
            d.differential.emplace_back(sn(i), sn(j), c);
        }
        Scalar sgn = sign_scalar(a.degree_of(i), a.field());
        for (const auto& [j, c] : a.mul(i, y)) d.differential.emplace_back(sn(i), en(j), sgn * c);
        for (std::size_t b = 0; b < a.size(); ++b)
            for (const auto& [j, c] : a.mul(b, i)) {
                d.left_action.emplace_back(a.label_of(b), en(i), en(j), c);
                d.left_action.emplace_back(a.label_of(b), sn(i), sn(j), c);
            }
    }
    d.truncation = a.truncation();
    return validate_module(a, d);
}

/// Group algebra of the symmetric group S3, ungraded.  A small noncommutative
/// algebra whose unit is a basis label (the identity permutation).
inline DGAlgebra s3_group_algebra(const Field& f) {
    // permutations of {0,1,2} in one-line notation
    const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    auto name = [&](std::size_t k) {
        const auto& p = perms[k];
        return "g" + std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]);
    };
    auto compose = [&](std::size_t i, std::size_t j) {
        std::array<int, 3> c{};
        for (int t = 0; t < 3; ++t) c[t] = perms[i][perms[j][t]];
        for (std::size_t k = 0; k < perms.size(); ++k)
            if (perms[k] == c) return k;
        throw Error(ErrorKind::Internal, "bad permutation table");
    };
    AlgebraData d;
    d.field = f;
    for (std::size_t k = 0; k < perms.size(); ++k) d.basis.push(name(k), 0);
    d.unit_label = name(0);
    const Scalar one = Scalar::one(f);
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (std::size_t j = 0; j < perms.size(); ++j)
            d.multiplication.emplace_back(name(i), name(j), name(compose(i, j)), one);
    d.augmentation = std::vector<std::pair<std::string, Scalar>>{};
    for (std::size_t k = 0; k < perms.size(); ++k) d.augmentation->emplace_back(name(k), one);
    return validate_dga(d);
}

/// Monomial data for the free graded-commutative builder.
struct CommutativeModelGenerator {
    std::string label;
    int degree;                                         // nonzero; all generators same sign
    std::vector<std::pair<std::vector<unsigned>, Scalar>> differential;  // d(gen) as monomials
};

namespace detail {

inline std::string monomial_label(const std::vector<CommutativeModelGenerator>& gens,
                                  const std::vector<unsigned>& e) {
    std::string out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += gens[i].label;
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

inline int monomial_degree(const std::vector<CommutativeModelGenerator>& gens,
                           const std::vector<unsigned>& e) {
    int d = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) d += gens[i].degree * static_cast<int>(e[i]);
    return d;
}

/// Product of two monomials with the Koszul sign; zero (nullopt) when an odd
/// generator squares.
inline std::optional<std::pair<std::vector<unsigned>, int>> monomial_product(
    const std::vector<CommutativeModelGenerator>& gens, const std::vector<unsigned>& a,
    const std::vector<unsigned>& b) {
    std::vector<unsigned> e(a.size());
    int sgn = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        e[i] = a[i] + b[i];
        bool odd = (gens[i].degree % 2) != 0;
        if (odd && e[i] > 1) return std::nullopt;
        if (odd && b[i]) {
            // move this odd letter of b past the odd letters of a with larger index
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if ((gens[j].degree % 2) != 0) sgn += static_cast<int>(b[i] * a[j]);
        }
    }
    return std::make_pair(std::move(e), sgn % 2);
}

} // namespace detail

/// Free graded-commutative algebra on finitely many generators (odd ones
/// square to zero), with a generator-level differential extended as a graded
/// derivation, truncated to a degree window.  All generator degrees must have
/// the same sign, so the monomial basis inside the window is finite.
inline DGAlgebra free_graded_commutative(const std::vector<CommutativeModelGenerator>& gens,
                                         Window window, const Field& f) {
    if (gens.empty()) throw Error(ErrorKind::Internal, "no generators");
    bool pos = gens.front().degree > 0;
    for (const auto& g : gens) {
        if (g.degree == 0 || (g.degree > 0) != pos)
            throw Error(ErrorKind::Internal, "generator degrees must be nonzero of one sign");
    }
    if (!window.contains(0)) throw Error(ErrorKind::WindowTooSmall, "window must contain degree 0");

    // enumerate monomials with degree in window
    std::vector<std::vector<unsigned>> monomials;
    std::vector<unsigned> cur(gens.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int deg) {
        if (i == gens.size()) {
            monomials.push_back(cur);
            return;
        }
        unsigned cap = (gens[i].degree % 2 != 0) ? 1u : 1000000u;
        for (unsigned e = 0;; ++e) {
            int dd = deg + static_cast<int>(e) * gens[i].degree;
            if (pos ? dd > window.hi : dd < window.lo) break;
            cur[i] = e;
            rec(i + 1, dd);
            if (e >= cap) break;
        }
        cur[i] = 0;
    };
    rec(0, 0);
    std::sort(monomials.begin(), monomials.end(), [&](const auto& a, const auto& b) {
        int da = detail::monomial_degree(gens, a), db = detail::monomial_degree(gens, b);
        int ka = pos ? da : -da, kb = pos ? db : -db;
        return std::tie(ka, a) < std::tie(kb, b);
    });

    std::map<std::vector<unsigned>, std::size_t> index;
    AlgebraData d;
    d.field = f;
    for (std::size_t k = 0; k < monomials.size(); ++k) {
        index[monomials[k]] = k;
        d.basis.push(detail::monomial_label(gens, monomials[k]),
                     detail::monomial_degree(gens, monomials[k]));
    }
    d.unit_label = "1";

    auto in_basis = [&](const std::vector<unsigned>& e) {
        return index.count(e) ? std::optional<std::size_t>(index.at(e)) : std::nullopt;
    };
    for (const auto& a : monomials)
        for (const auto& b : monomials) {
            auto prod = detail::monomial_product(gens, a, b);
            if (!prod) continue;
            auto at = in_basis(prod->first);
            if (!at) continue;
            Scalar c = prod->second ? -Scalar::one(f) : Scalar::one(f);
            d.multiplication.emplace_back(detail::monomial_label(gens, a),
                                          detail::monomial_label(gens, b),
                                          d.basis.labels[*at], c);
        }

    // derivation extension of the generator differentials, via word expansion
    for (const auto& m : monomials) {
        std::vector<std::size_t> word;  // generator index per letter, ascending
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (unsigned e = 0; e < m[i]; ++e) word.push_back(i);
        std::map<std::size_t, Scalar> acc;
        int prefix_deg = 0;
        for (std::size_t t = 0; t < word.size(); ++t) {
            std::size_t gi = word[t];
            std::vector<unsigned> prefix(gens.size(), 0), suffix(gens.size(), 0);
            for (std::size_t s = 0; s < t; ++s) prefix[word[s]]++;
            for (std::size_t s = t + 1; s < word.size(); ++s) suffix[word[s]]++;
            Scalar outer = sign_scalar(prefix_deg, f);
            for (const auto& [dg_mono, dg_coef] : gens[gi].differential) {
                auto p1 = detail::monomial_product(gens, prefix, dg_mono);
                if (!p1) continue;
                auto p2 = detail::monomial_product(gens, p1->first, suffix);
                if (!p2) continue;
                auto at = in_basis(p2->first);
                if (!at) continue;
                Scalar c = outer * dg_coef * sign_scalar(p1->second + p2->second, f);
                auto [it, fresh] = acc.emplace(*at, c);
                if (!fresh) it->second += c;
            }
            prefix_deg += gens[gi].degree;
        }
        for (const auto& [at, c] : acc)
            if (!c.is_zero())
                d.differential.emplace_back(detail::monomial_label(gens, m), d.basis.labels[at], c);
    }

    d.augmentation = {{{"1", Scalar::one(f)}}};
    d.truncation = window;
    return validate_dga(d);
}

} // namespace dgkit

#endif
