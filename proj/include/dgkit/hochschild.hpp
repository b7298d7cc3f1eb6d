#ifndef DGKIT_HOCHSCHILD_HPP
#define DGKIT_HOCHSCHILD_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgkit/bar.hpp"
#include "dgkit/dg_category.hpp"

namespace dgkit {

/// Normalized Hochschild chain complex of an augmented DGA with bimodule
/// coefficients: words p⊗a_1⊗...⊗a_j with the a_i in reduced slots,
/// degree |p| + sum(|a_i|+1), truncated by word length and degree window.
struct HochschildChains {
    struct Word {
        std::size_t p_idx;
        std::vector<std::size_t> letters;
        int degree;
    };

    DGAlgebra algebra;
    DGModule coeff;
    std::shared_ptr<ChainComplex> complex;
    std::vector<Word> words;
    std::size_t effective_cutoff = 0;
    bool certificate = false;
    Window window{0, 0};
    std::map<std::string, std::size_t> index;

    static std::string key(std::size_t p, const std::vector<std::size_t>& ls) {
        std::string k = std::to_string(p) + ";";
        for (auto l : ls) k += std::to_string(l) + ",";
        return k;
    }

    std::optional<std::size_t> find(std::size_t p, const std::vector<std::size_t>& ls) const {
        auto it = index.find(key(p, ls));
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    /// Connes' boundary on normalized chains with algebra coefficients:
    /// all cyclic rotations prefixed by the unit.  Degree +1; B∘B = 0 on the
    /// nose because the inner unit lands in a reduced slot.
    SparseVec connes_b(const SparseVec& chain) const {
        if (coeff.size() != algebra.size())
            throw Error(ErrorKind::DimensionMismatch, "Connes B needs algebra coefficients");
        const Field f = algebra.field();
        const std::size_t unit = algebra.unit();
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (const auto& [wi, c] : chain) {
            const Word& w = words[wi];
            if (w.p_idx == unit) continue;  // 1 in a reduced slot dies
            const std::size_t j = w.letters.size();
            int sp = algebra.degree_of(w.p_idx) + 1;
            std::vector<int> susp(j);
            for (std::size_t t = 0; t < j; ++t) susp[t] = algebra.degree_of(w.letters[t]) + 1;
            for (std::size_t i = 0; i <= j; ++i) {
                // word 1 ⊗ a_{i+1} ... a_j ⊗ p ⊗ a_1 ... a_i
                std::vector<std::size_t> ls;
                for (std::size_t t = i; t < j; ++t) ls.push_back(w.letters[t]);
                ls.push_back(w.p_idx);
                for (std::size_t t = 0; t < i; ++t) ls.push_back(w.letters[t]);
                int degX = sp, degY = 0;
                for (std::size_t t = 0; t < i; ++t) degX += susp[t];
                for (std::size_t t = i; t < j; ++t) degY += susp[t];
                auto at = find(unit, ls);
                if (!at)
                    throw Error(ErrorKind::WindowTooSmall,
                                "Connes B leaves the truncated complex", {complex->label_of(wi)});
                terms.emplace_back(*at, c * sign_scalar(degX * degY, f));
            }
        }
        return sv_cleanup(std::move(terms));
    }
};

inline HochschildChains hochschild_chains(const DGAlgebra& a, const DGModule& coeff,
                                          std::size_t cutoff, Window window) {
    a.require_augmented();
    if (!coeff.has_left() || !coeff.has_right())
        throw Error(ErrorKind::DimensionMismatch, "Hochschild coefficients must be a bimodule");
    Window padded = Window::checked(window.lo - 1, window.hi + 1);
    const Field f = a.field();

    int base_min = INT32_MAX, base_max = INT32_MIN;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        base_min = std::min(base_min, coeff.degree_of(i));
        base_max = std::max(base_max, coeff.degree_of(i));
    }
    auto plan = detail::plan_cutoff(a, base_min, base_max, padded, cutoff);

    const auto& letters = a.reduced_indices();
    std::vector<int> susp;
    for (auto i : letters) susp.push_back(a.degree_of(i) + 1);

    HochschildChains hc{a, coeff, nullptr, {}, plan.effective, plan.certificate, window, {}};
    for (std::size_t p = 0; p < coeff.size(); ++p)
        detail::enumerate_letter_words(letters, susp, coeff.degree_of(p), padded, plan.effective,
                                       [&](const std::vector<std::size_t>& ls, int degree) {
                                           hc.words.push_back({p, ls, degree});
                                       });
    std::sort(hc.words.begin(), hc.words.end(),
              [](const HochschildChains::Word& x, const HochschildChains::Word& y) {
                  return std::tie(x.degree, x.p_idx, x.letters) <
                         std::tie(y.degree, y.p_idx, y.letters);
              });
    GradedBasis basis;
    for (std::size_t k = 0; k < hc.words.size(); ++k) {
        const auto& w = hc.words[k];
        basis.push(coeff.label_of(w.p_idx) + detail::word_string(a, w.letters), w.degree);
        hc.index[HochschildChains::key(w.p_idx, w.letters)] = k;
    }

    // Semifree convention with eps_i = |p| + sum_{l<=i}(|a_l|+1):
    //   b = (dp)[...] - sum (-1)^{eps_{i-1}} p[...|da_i|...]
    //     + (-1)^{eps_0}(p·a_1)[...] + sum (-1)^{eps_i} p[...|a_i a_{i+1}|...]
    //     - (-1)^{(|a_j|+1)·(eps_{j-1} - 1... )} wrap; the wrap sign is the
    //       Koszul braid of sa_j past p⊗sa_1...sa_{j-1} with p unsuspended.
    const std::size_t unit = a.unit();
    std::vector<SparseVec> diff(hc.words.size());
    for (std::size_t k = 0; k < hc.words.size(); ++k) {
        const auto& w = hc.words[k];
        const std::size_t j = w.letters.size();
        std::vector<int> eps(j + 1);
        eps[0] = coeff.degree_of(w.p_idx);
        for (std::size_t i = 1; i <= j; ++i) eps[i] = eps[i - 1] + a.degree_of(w.letters[i - 1]) + 1;
        std::vector<std::pair<std::size_t, Scalar>> terms;
        auto add = [&](std::optional<std::size_t> at, const Scalar& c) {
            if (at && !c.is_zero()) terms.emplace_back(*at, c);
        };

        for (const auto& [p2, c] : coeff.d(w.p_idx)) add(hc.find(p2, w.letters), c);
        for (std::size_t i = 1; i <= j; ++i) {
            Scalar sgn = -sign_scalar(eps[i - 1], f);
            std::vector<std::size_t> repl(w.letters);
            for (const auto& [r, c] : a.d(w.letters[i - 1])) {
                if (r == unit) continue;
                repl[i - 1] = r;
                add(hc.find(w.p_idx, repl), sgn * c);
            }
        }
        if (j >= 1) {
            {  // face 0: p·a_1
                Scalar sgn = sign_scalar(eps[0], f);
                std::vector<std::size_t> rest(w.letters.begin() + 1, w.letters.end());
                for (const auto& [p2, c] : coeff.act_right(w.p_idx, w.letters[0]))
                    add(hc.find(p2, rest), sgn * c);
            }
            for (std::size_t i = 1; i < j; ++i) {
                Scalar sgn = sign_scalar(eps[i], f);
                std::vector<std::size_t> merged(w.letters);
                merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
                for (const auto& [r, c] : a.mul(w.letters[i - 1], w.letters[i])) {
                    if (r == unit) continue;
                    merged[i - 1] = r;
                    add(hc.find(w.p_idx, merged), sgn * c);
                }
            }
            {  // wrap-around face (a_j·p)
                int bd = eps[j - 1];  // |p| + suspended degrees of a_1..a_{j-1}
                Scalar sgn = -sign_scalar((a.degree_of(w.letters[j - 1]) + 1) * bd, f);
                std::vector<std::size_t> rest(w.letters.begin(), w.letters.end() - 1);
                for (const auto& [p2, c] : coeff.act_left(w.letters[j - 1], w.p_idx))
                    add(hc.find(p2, rest), sgn * c);
            }
        }
        diff[k] = sv_cleanup(std::move(terms));
    }
    hc.complex = std::make_shared<ChainComplex>(f, std::move(basis), std::move(diff));
    return hc;
}

inline GradedResult hh(const DGAlgebra& a, const DGModule& coeff, std::size_t cutoff,
                       Window window) {
    auto primary = hochschild_chains(a, coeff, cutoff, window);
    GradedResult res = detail::homology_in_window(*primary.complex, window);
    res.stability.window = window;
    res.stability.certificate = primary.certificate;
    res.stability.cutoff_a = primary.effective_cutoff;
    res.stability.cutoff_b = primary.effective_cutoff;
    res.stability.stable = true;
    if (!primary.certificate) {
        auto compare = hochschild_chains(a, coeff, cutoff + 2, window);
        res.stability.cutoff_b = cutoff + 2;
        for (int d = window.lo; d <= window.hi; ++d) {
            std::size_t d1 = res.dims.count(d) ? res.dims.at(d) : 0;
            if (d1 != compare.complex->homology_at(d).dim) res.stability.stable = false;
        }
    }
    return res;
}

inline GradedResult hh(const DGAlgebra& a, std::size_t cutoff, Window window) {
    return hh(a, as_module(a, ModuleSide::Bimodule), cutoff, window);
}

/// Normalized Hochschild cochain complex with bimodule coefficients: basis
/// cochains (a_1,...,a_j) -> p of degree |p| - sum(|a_i|+1).
struct HochschildCochains {
    struct Elem {
        std::vector<std::size_t> letters;
        std::size_t p_idx;
        int degree;
    };

    DGAlgebra algebra;
    DGModule coeff;
    std::shared_ptr<ChainComplex> complex;
    std::vector<Elem> elems;
    std::size_t cutoff = 0;
    bool certificate = false;
    Window window{0, 0};
    std::map<std::string, std::size_t> index;

    static std::string key(const std::vector<std::size_t>& ls, std::size_t p) {
        std::string k;
        for (auto l : ls) k += std::to_string(l) + ",";
        return k + ";" + std::to_string(p);
    }
    std::optional<std::size_t> find(const std::vector<std::size_t>& ls, std::size_t p) const {
        auto it = index.find(key(ls, p));
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    /// Total degree of a homogeneous cochain vector.
    int degree_of(const SparseVec& v) const {
        if (v.empty()) throw Error(ErrorKind::Internal, "degree of zero cochain");
        int d = complex->degree_of(v.front().first);
        for (const auto& [i, c] : v) {
            (void)c;
            if (complex->degree_of(i) != d)
                throw Error(ErrorKind::Internal, "cochain is not homogeneous");
        }
        return d;
    }

    /// Cup product (f∪g)(w1 w2) = ± f(w1)·g(w2); requires algebra
    /// coefficients.  The truncated complex is the dual of the sub-coalgebra
    /// of words of length <= cutoff, so terms beyond the cutoff (or outside
    /// the degree window) are projected away; `overflow`, when given, records
    /// whether a nonzero term was dropped.
    SparseVec cup(const SparseVec& fv, const SparseVec& gv, bool* overflow = nullptr) const {
        require_algebra_coeff();
        if (overflow) *overflow = false;
        if (fv.empty() || gv.empty()) return {};
        const Field f = algebra.field();
        int gdeg = degree_of(gv);
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (const auto& [fi, fc] : fv)
            for (const auto& [gi, gc] : gv) {
                const Elem& ef = elems[fi];
                const Elem& eg = elems[gi];
                SparseVec val = algebra.mul(ef.p_idx, eg.p_idx);
                if (val.empty()) continue;
                std::vector<std::size_t> w(ef.letters);
                w.insert(w.end(), eg.letters.begin(), eg.letters.end());
                if (w.size() > cutoff) {
                    if (overflow) *overflow = true;
                    continue;
                }
                int susp_f = 0;
                for (auto l : ef.letters) susp_f += algebra.degree_of(l) + 1;
                Scalar sgn = sign_scalar(gdeg * susp_f, f) * fc * gc;
                for (const auto& [pk, pc] : val) {
                    auto at = find(w, pk);
                    if (!at) {
                        if (overflow) *overflow = true;
                        continue;
                    }
                    terms.emplace_back(*at, sgn * pc);
                }
            }
        return sv_cleanup(std::move(terms));
    }

    /// Pre-Lie circle product: f∘g plugs the value of g into one slot of f.
    SparseVec circle(const SparseVec& fv, const SparseVec& gv, bool* overflow = nullptr) const {
        require_algebra_coeff();
        if (overflow) *overflow = false;
        if (fv.empty() || gv.empty()) return {};
        const Field f = algebra.field();
        int gdeg = degree_of(gv);
        const std::size_t unit = algebra.unit();
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (const auto& [fi, fc] : fv) {
            const Elem& ef = elems[fi];
            for (std::size_t pos = 0; pos < ef.letters.size(); ++pos) {
                int susp_prefix = 0;
                for (std::size_t t = 0; t < pos; ++t)
                    susp_prefix += algebra.degree_of(ef.letters[t]) + 1;
                Scalar sgn = sign_scalar((gdeg + 1) * susp_prefix, f);
                for (const auto& [gi, gc] : gv) {
                    const Elem& eg = elems[gi];
                    if (eg.p_idx == unit) continue;       // unit insertion dies (normalized)
                    if (eg.p_idx != ef.letters[pos]) continue;  // value must match the slot letter
                    std::vector<std::size_t> w;
                    w.insert(w.end(), ef.letters.begin(), ef.letters.begin() + static_cast<std::ptrdiff_t>(pos));
                    w.insert(w.end(), eg.letters.begin(), eg.letters.end());
                    w.insert(w.end(), ef.letters.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                             ef.letters.end());
                    auto at = w.size() > cutoff ? std::nullopt : find(w, ef.p_idx);
                    if (!at) {
                        if (overflow) *overflow = true;
                        continue;
                    }
                    terms.emplace_back(*at, sgn * fc * gc);
                }
            }
        }
        return sv_cleanup(std::move(terms));
    }

    /// Gerstenhaber bracket [f,g] = f∘g - (-1)^{(|f|+1)(|g|+1)} g∘f.
    SparseVec gerstenhaber(const SparseVec& fv, const SparseVec& gv) const {
        if (fv.empty() || gv.empty()) return {};
        const Field f = algebra.field();
        int fd = degree_of(fv), gd = degree_of(gv);
        SparseVec out = circle(fv, gv);
        Scalar sgn = -sign_scalar((fd + 1) * (gd + 1), f);
        return sv_axpy(out, sgn, circle(gv, fv));
    }

    void require_algebra_coeff() const {
        if (coeff.size() != algebra.size())
            throw Error(ErrorKind::DimensionMismatch,
                        "cup/circle products need algebra coefficients");
    }
};

inline HochschildCochains hochschild_cochains(const DGAlgebra& a, const DGModule& coeff,
                                              std::size_t cutoff, Window window) {
    a.require_augmented();
    if (!coeff.has_left() || !coeff.has_right())
        throw Error(ErrorKind::DimensionMismatch, "Hochschild coefficients must be a bimodule");
    Window padded = Window::checked(window.lo - 1, window.hi + 1);
    const Field f = a.field();

    int pmin = INT32_MAX, pmax = INT32_MIN;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
        pmin = std::min(pmin, coeff.degree_of(i));
        pmax = std::max(pmax, coeff.degree_of(i));
    }
    // word suspended degrees land in [pmin - (hi+1), pmax - (lo-1)]
    Window word_window = Window::checked(pmin - padded.hi, pmax - padded.lo);
    auto plan = detail::plan_cutoff(a, 0, 0, word_window, cutoff);

    const auto& letters = a.reduced_indices();
    std::vector<int> susp;
    for (auto i : letters) susp.push_back(a.degree_of(i) + 1);

    HochschildCochains hc{a, coeff, nullptr, {}, plan.effective, plan.certificate, window, {}};
    detail::enumerate_letter_words(letters, susp, 0, word_window, plan.effective,
                                   [&](const std::vector<std::size_t>& ls, int wdeg) {
                                       for (std::size_t p = 0; p < coeff.size(); ++p) {
                                           int deg = coeff.degree_of(p) - wdeg;
                                           if (padded.contains(deg))
                                               hc.elems.push_back({ls, p, deg});
                                       }
                                   });
    std::sort(hc.elems.begin(), hc.elems.end(),
              [](const HochschildCochains::Elem& x, const HochschildCochains::Elem& y) {
                  return std::tie(x.degree, x.letters, x.p_idx) <
                         std::tie(y.degree, y.letters, y.p_idx);
              });
    GradedBasis basis;
    for (std::size_t k = 0; k < hc.elems.size(); ++k) {
        const auto& e = hc.elems[k];
        basis.push(detail::word_string(a, e.letters) + "=>" + coeff.label_of(e.p_idx), e.degree);
        hc.index[HochschildCochains::key(e.letters, e.p_idx)] = k;
    }

    // D on the bimodule bar resolution generator 1⊗w'⊗1, as terms
    // (a_left, word, a_right, coeff); then (δφ)(w') = d_P φ(w')
    // - (-1)^{|φ|} Σ (-1)^{|φ||a_left|} a_left·φ(word)·a_right.
    const std::size_t unit = a.unit();
    struct DTerm {
        std::size_t a_left, a_right;
        Scalar c;
    };
    std::set<std::vector<std::size_t>> universe;
    for (const auto& e : hc.elems) universe.insert(e.letters);
    std::map<std::vector<std::size_t>, std::vector<std::pair<std::vector<std::size_t>, DTerm>>>
        rev;  // target word -> (source word w', term)
    // semifree convention on B(A,A,A) generators 1⊗w'⊗1, with
    // eps_i = sum_{l<=i}(|a_l|+1) (both outer slots hold 1, degree 0)
    for (const auto& wp : universe) {
        const std::size_t j = wp.size();
        if (j == 0) continue;
        std::vector<int> eps(j + 1, 0);
        for (std::size_t i = 1; i <= j; ++i) eps[i] = eps[i - 1] + a.degree_of(wp[i - 1]) + 1;
        auto push = [&](std::size_t al, std::size_t ar, std::vector<std::size_t> word,
                        const Scalar& c) {
            if (c.is_zero()) return;
            rev[word].emplace_back(wp, DTerm{al, ar, c});
        };
        for (std::size_t i = 1; i <= j; ++i) {
            Scalar sgn = -sign_scalar(eps[i - 1], f);
            std::vector<std::size_t> repl(wp);
            for (const auto& [r, c] : a.d(wp[i - 1])) {
                if (r == unit) continue;
                repl[i - 1] = r;
                push(unit, unit, repl, sgn * c);
            }
        }
        {  // face 0: first letter exits to the left
            std::vector<std::size_t> rest(wp.begin() + 1, wp.end());
            push(wp[0], unit, rest, Scalar::one(f));
        }
        for (std::size_t i = 1; i < j; ++i) {
            Scalar sgn = sign_scalar(eps[i], f);
            std::vector<std::size_t> merged(wp);
            merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
            for (const auto& [r, c] : a.mul(wp[i - 1], wp[i])) {
                if (r == unit) continue;
                merged[i - 1] = r;
                push(unit, unit, merged, sgn * c);
            }
        }
        {  // face j: last letter exits to the right
            Scalar sgn = -sign_scalar(eps[j - 1], f);
            std::vector<std::size_t> rest(wp.begin(), wp.end() - 1);
            push(unit, wp[j - 1], rest, sgn);
        }
    }

    std::vector<SparseVec> diff(hc.elems.size());
    for (std::size_t k = 0; k < hc.elems.size(); ++k) {
        const auto& e = hc.elems[k];
        const int q = e.degree;
        std::vector<std::pair<std::size_t, Scalar>> terms;
        auto add = [&](const std::vector<std::size_t>& w, std::size_t p, const Scalar& c) {
            auto at = hc.find(w, p);
            if (at && !c.is_zero()) terms.emplace_back(*at, c);
        };
        for (const auto& [p2, c] : coeff.d(e.p_idx)) add(e.letters, p2, c);
        auto it = rev.find(e.letters);
        if (it != rev.end()) {
            for (const auto& [src, term] : it->second) {
                Scalar sgn = -sign_scalar(q + q * a.degree_of(term.a_left), f) * term.c;
                // a_left · p · a_right through the bimodule actions
                SparseVec lp = coeff.act_left(term.a_left, e.p_idx);
                SparseVec lpr = coeff.act_right_vec(lp, SparseVec{{term.a_right, Scalar::one(f)}});
                for (const auto& [p2, c2] : lpr) add(src, p2, sgn * c2);
            }
        }
        diff[k] = sv_cleanup(std::move(terms));
    }
    hc.complex = std::make_shared<ChainComplex>(f, std::move(basis), std::move(diff));
    return hc;
}

inline GradedResult hhc(const DGAlgebra& a, const DGModule& coeff, std::size_t cutoff,
                        Window window) {
    auto primary = hochschild_cochains(a, coeff, cutoff, window);
    GradedResult res = detail::homology_in_window(*primary.complex, window);
    res.stability.window = window;
    res.stability.certificate = primary.certificate;
    res.stability.cutoff_a = primary.cutoff;
    res.stability.cutoff_b = primary.cutoff;
    res.stability.stable = true;
    if (!primary.certificate) {
        auto compare = hochschild_cochains(a, coeff, cutoff + 2, window);
        res.stability.cutoff_b = cutoff + 2;
        for (int d = window.lo; d <= window.hi; ++d) {
            std::size_t d1 = res.dims.count(d) ? res.dims.at(d) : 0;
            if (d1 != compare.complex->homology_at(d).dim) res.stability.stable = false;
        }
    }
    return res;
}

inline GradedResult hhc(const DGAlgebra& a, std::size_t cutoff, Window window) {
    return hhc(a, as_module(a, ModuleSide::Bimodule), cutoff, window);
}

/// Normalized Hochschild chain complex of a DG-category: cyclic words
/// (p; f_1, ..., f_j) with f_t: λ_t -> λ_{t-1} in reduced slots (no identity
/// components) and p: λ_0 -> λ_j closing the cycle.  For a one-object
/// category this is literally the algebra complex.
struct CategoryHochschildChains {
    struct Word {
        std::vector<std::size_t> objs;     // λ_0 ... λ_j
        std::size_t p_local;               // in mor(λ_0, λ_j)
        std::vector<std::size_t> letters;  // f_t in mor(λ_t, λ_{t-1}), local indices
        int degree;
    };

    const DGCategory* category = nullptr;
    std::shared_ptr<ChainComplex> complex;
    std::vector<Word> words;
    std::size_t effective_cutoff = 0;
    bool certificate = false;
    Window window{0, 0};
    std::map<std::string, std::size_t> index;

    static std::string key(const std::vector<std::size_t>& objs, std::size_t p,
                           const std::vector<std::size_t>& ls) {
        std::string k;
        for (auto o : objs) k += std::to_string(o) + ".";
        k += ";" + std::to_string(p) + ";";
        for (auto l : ls) k += std::to_string(l) + ",";
        return k;
    }
    std::optional<std::size_t> find(const std::vector<std::size_t>& objs, std::size_t p,
                                    const std::vector<std::size_t>& ls) const {
        auto it = index.find(key(objs, p, ls));
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

inline CategoryHochschildChains category_hochschild_chains(const DGCategory& c,
                                                           std::size_t cutoff, Window window) {
    const Field f = c.field();
    const std::size_t no = c.objects().size();
    Window padded = Window::checked(window.lo - 1, window.hi + 1);

    // identity labels per object, required for the normalized slots
    std::vector<std::size_t> id_label(no);
    for (std::size_t x = 0; x < no; ++x) {
        auto idx = c.identity_label_index(x);
        if (!idx)
            throw Error(ErrorKind::AxiomViolation,
                        "hh_category requires each identity to be a single basis label",
                        {c.objects()[x]});
        id_label[x] = *idx;
    }
    auto is_identity = [&](std::size_t from, std::size_t to, std::size_t local) {
        return from == to && id_label[from] == local;
    };

    int pmin = INT32_MAX, pmax = INT32_MIN;
    std::vector<int> all_susp;
    int min_step = 0, max_step = 0;
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t y = 0; y < no; ++y) {
            const auto& m = c.mor(x, y);
            for (std::size_t i = 0; i < m.size(); ++i) {
                pmin = std::min(pmin, m.degree_of(i));
                pmax = std::max(pmax, m.degree_of(i));
                if (!is_identity(x, y, i)) {
                    all_susp.push_back(m.degree_of(i) + 1);
                    min_step = std::min(min_step, m.degree_of(i) + 1);
                    max_step = std::max(max_step, m.degree_of(i) + 1);
                }
            }
        }
    if (pmin > pmax) throw Error(ErrorKind::DimensionMismatch, "category has no morphisms");
    auto plan = detail::plan_cutoff_list(all_susp, pmin, pmax, padded, cutoff);

    CategoryHochschildChains hc;
    hc.category = &c;
    hc.effective_cutoff = plan.effective;
    hc.certificate = plan.certificate;
    hc.window = window;

    // DFS over letter chains λ_0 <- λ_1 <- ... <- λ_j, closing with p
    std::vector<std::size_t> objs, letters;
    std::function<void(std::size_t, int)> rec = [&](std::size_t tail, int susp_sum) {
        for (std::size_t p = 0; p < c.mor(objs.front(), tail).size(); ++p) {
            int degree = c.mor(objs.front(), tail).degree_of(p) + susp_sum;
            if (padded.contains(degree)) {
                auto full = objs;
                hc.words.push_back({full, p, letters, degree});
            }
        }
        if (letters.size() == plan.effective) return;
        long remaining = static_cast<long>(plan.effective - letters.size());
        for (std::size_t nxt = 0; nxt < no; ++nxt) {
            const auto& m = c.mor(nxt, tail);
            for (std::size_t l = 0; l < m.size(); ++l) {
                if (is_identity(nxt, tail, l)) continue;
                int ns = susp_sum + m.degree_of(l) + 1;
                long lo_reach = ns + (remaining - 1) * static_cast<long>(std::min(min_step, 0)) + pmin;
                long hi_reach = ns + (remaining - 1) * static_cast<long>(std::max(max_step, 0)) + pmax;
                if (hi_reach < padded.lo || lo_reach > padded.hi) continue;
                objs.push_back(nxt);
                letters.push_back(l);
                rec(nxt, ns);
                objs.pop_back();
                letters.pop_back();
            }
        }
    };
    for (std::size_t x = 0; x < no; ++x) {
        objs = {x};
        letters.clear();
        rec(x, 0);
    }

    std::sort(hc.words.begin(), hc.words.end(),
              [](const CategoryHochschildChains::Word& a, const CategoryHochschildChains::Word& b) {
                  return std::tie(a.degree, a.objs, a.p_local, a.letters) <
                         std::tie(b.degree, b.objs, b.p_local, b.letters);
              });
    GradedBasis basis;
    for (std::size_t k = 0; k < hc.words.size(); ++k) {
        const auto& w = hc.words[k];
        std::string lbl = c.mor(w.objs.front(), w.objs.back()).label_of(w.p_local) + "[";
        for (std::size_t t = 0; t < w.letters.size(); ++t) {
            if (t) lbl += "|";
            lbl += c.mor(w.objs[t + 1], w.objs[t]).label_of(w.letters[t]);
        }
        basis.push(lbl + "]", w.degree);
        hc.index[CategoryHochschildChains::key(w.objs, w.p_local, w.letters)] = k;
    }

    auto letter_degree = [&](const CategoryHochschildChains::Word& w, std::size_t t) {
        return c.mor(w.objs[t + 1], w.objs[t]).degree_of(w.letters[t]);
    };

    std::vector<SparseVec> diff(hc.words.size());
    for (std::size_t k = 0; k < hc.words.size(); ++k) {
        const auto& w = hc.words[k];
        const std::size_t j = w.letters.size();
        int pdeg = c.mor(w.objs.front(), w.objs.back()).degree_of(w.p_local);
        std::vector<int> eps(j + 1);
        eps[0] = pdeg;
        for (std::size_t i = 1; i <= j; ++i) eps[i] = eps[i - 1] + letter_degree(w, i - 1) + 1;
        std::vector<std::pair<std::size_t, Scalar>> terms;
        auto add = [&](const std::vector<std::size_t>& objs2, std::size_t p2,
                       const std::vector<std::size_t>& ls2, const Scalar& cc) {
            auto at = hc.find(objs2, p2, ls2);
            if (at && !cc.is_zero()) terms.emplace_back(*at, cc);
        };

        for (const auto& [p2, cc] : c.mor(w.objs.front(), w.objs.back()).d(w.p_local))
            add(w.objs, p2, w.letters, cc);
        for (std::size_t t = 0; t < j; ++t) {
            Scalar sgn = -sign_scalar(eps[t], f);
            std::vector<std::size_t> repl(w.letters);
            for (const auto& [r, cc] : c.mor(w.objs[t + 1], w.objs[t]).d(w.letters[t])) {
                if (is_identity(w.objs[t + 1], w.objs[t], r)) continue;
                repl[t] = r;
                add(w.objs, w.p_local, repl, sgn * cc);
            }
        }
        if (j >= 1) {
            {  // face 0: p∘f_1 in mor(λ_1, λ_j)
                Scalar sgn = sign_scalar(eps[0], f);
                std::vector<std::size_t> objs2(w.objs.begin() + 1, w.objs.end());
                std::vector<std::size_t> ls2(w.letters.begin() + 1, w.letters.end());
                const SparseVec& comp = c.compose(w.objs[1], w.objs[0], w.objs.back(),
                                                  w.p_local, w.letters[0]);
                for (const auto& [p2, cc] : comp) add(objs2, p2, ls2, sgn * cc);
            }
            for (std::size_t i = 1; i < j; ++i) {  // merge f_i∘f_{i+1}
                Scalar sgn = sign_scalar(eps[i], f);
                std::vector<std::size_t> objs2(w.objs);
                objs2.erase(objs2.begin() + static_cast<std::ptrdiff_t>(i));
                std::vector<std::size_t> ls2(w.letters);
                ls2.erase(ls2.begin() + static_cast<std::ptrdiff_t>(i));
                const SparseVec& comp = c.compose(w.objs[i + 1], w.objs[i], w.objs[i - 1],
                                                  w.letters[i - 1], w.letters[i]);
                for (const auto& [r, cc] : comp) {
                    if (is_identity(w.objs[i + 1], w.objs[i - 1], r)) continue;
                    ls2[i - 1] = r;
                    add(objs2, w.p_local, ls2, sgn * cc);
                }
            }
            {  // wrap-around face f_j∘p with the Koszul braid of sf_j
                int bd = eps[j - 1];
                Scalar sgn = -sign_scalar((letter_degree(w, j - 1) + 1) * bd, f);
                std::vector<std::size_t> objs2(w.objs.begin(), w.objs.end() - 1);
                std::vector<std::size_t> ls2(w.letters.begin(), w.letters.end() - 1);
                const SparseVec& comp = c.compose(w.objs[0], w.objs[j], w.objs[j - 1],
                                                  w.letters[j - 1], w.p_local);
                for (const auto& [p2, cc] : comp) add(objs2, p2, ls2, sgn * cc);
            }
        }
        diff[k] = sv_cleanup(std::move(terms));
    }
    hc.complex = std::make_shared<ChainComplex>(f, std::move(basis), std::move(diff));
    return hc;
}

/// Cyclic words of one fixed weight for a weight-graded category: weights are
/// non-negative, additive under composition, zero exactly on identities and on
/// a cycle-free set of degree-marker morphisms, and preserved by the
/// differential.  Each weight piece of the cyclic complex is finite, so its
/// homology is exact — no length cutoff enters.
inline GradedResult hh_category_weighted(const DGCategory& c,
                                         const std::map<std::string, unsigned>& weights,
                                         Window window, unsigned max_weight) {
    const Field f = c.field();
    const std::size_t no = c.objects().size();

    std::vector<std::size_t> id_label(no);
    for (std::size_t x = 0; x < no; ++x) {
        auto idx = c.identity_label_index(x);
        if (!idx)
            throw Error(ErrorKind::AxiomViolation,
                        "hh_category requires each identity to be a single basis label",
                        {c.objects()[x]});
        id_label[x] = *idx;
    }
    auto is_identity = [&](std::size_t from, std::size_t to, std::size_t local) {
        return from == to && id_label[from] == local;
    };
    auto wt = [&](std::size_t x, std::size_t y, std::size_t local) -> unsigned {
        auto it = weights.find(c.mor(x, y).label_of(local));
        if (it == weights.end())
            throw Error(ErrorKind::UnknownLabel,
                        "no weight for morphism '" + c.mor(x, y).label_of(local) + "'");
        return it->second;
    };

    // validation: identities weight 0; differential preserves weight;
    // composition additive; weight-0 non-identity morphisms form a DAG
    for (std::size_t x = 0; x < no; ++x)
        if (wt(x, x, id_label[x]) != 0)
            throw Error(ErrorKind::AxiomViolation, "identity must have weight 0", {c.objects()[x]});
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t y = 0; y < no; ++y)
            for (std::size_t i = 0; i < c.mor(x, y).size(); ++i)
                for (const auto& [j, cc] : c.mor(x, y).d(i)) {
                    (void)cc;
                    if (wt(x, y, j) != wt(x, y, i))
                        throw Error(ErrorKind::AxiomViolation, "differential must preserve weight",
                                    {c.mor(x, y).label_of(i)});
                }
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t y = 0; y < no; ++y)
            for (std::size_t z = 0; z < no; ++z)
                for (std::size_t g = 0; g < c.mor(y, z).size(); ++g)
                    for (std::size_t ff = 0; ff < c.mor(x, y).size(); ++ff)
                        for (const auto& [r, cc] : c.compose(x, y, z, g, ff)) {
                            (void)cc;
                            if (wt(x, z, r) != wt(y, z, g) + wt(x, y, ff))
                                throw Error(ErrorKind::AxiomViolation,
                                            "composition must be weight-additive",
                                            {c.mor(y, z).label_of(g), c.mor(x, y).label_of(ff)});
                        }
    {
        // weight-0 DAG check: depth-first search for a cycle through
        // non-identity weight-0 morphisms
        std::vector<std::vector<std::size_t>> adj(no);
        for (std::size_t x = 0; x < no; ++x)
            for (std::size_t y = 0; y < no; ++y)
                for (std::size_t i = 0; i < c.mor(x, y).size(); ++i)
                    if (!is_identity(x, y, i) && wt(x, y, i) == 0) adj[x].push_back(y);
        std::vector<int> state(no, 0);
        std::function<void(std::size_t)> visit = [&](std::size_t v) {
            state[v] = 1;
            for (auto w2 : adj[v]) {
                if (state[w2] == 1)
                    throw Error(ErrorKind::AxiomViolation,
                                "weight-0 morphisms must not form cycles", {c.objects()[v]});
                if (state[w2] == 0) visit(w2);
            }
            state[v] = 2;
        };
        for (std::size_t v = 0; v < no; ++v)
            if (state[v] == 0) visit(v);
    }

    GradedResult res;
    res.window = window;
    res.stability.window = window;
    res.stability.certificate = true;  // each weight piece is exact
    res.stability.cutoff_a = max_weight;
    res.stability.cutoff_b = max_weight;
    res.stability.stable = true;
    std::size_t tail_contribution = 0;

    for (unsigned W = 0; W <= max_weight; ++W) {
        // enumerate all cyclic words of weight exactly W (finite)
        struct WWord {
            std::vector<std::size_t> objs;
            std::size_t p_local;
            std::vector<std::size_t> letters;
            int degree;
        };
        std::vector<WWord> words;
        std::vector<std::size_t> objs, letters;
        std::set<std::size_t> zero_run;  // objects since the last positive-weight letter
        std::function<void(std::size_t, unsigned, int)> rec = [&](std::size_t tail, unsigned used,
                                                                  int susp) {
            for (std::size_t p = 0; p < c.mor(objs.front(), tail).size(); ++p) {
                if (used + wt(objs.front(), tail, p) != W) continue;
                words.push_back({objs, p, letters, c.mor(objs.front(), tail).degree_of(p) + susp});
            }
            for (std::size_t nxt = 0; nxt < no; ++nxt) {
                const auto& m = c.mor(nxt, tail);
                for (std::size_t l = 0; l < m.size(); ++l) {
                    if (is_identity(nxt, tail, l)) continue;
                    unsigned lw = wt(nxt, tail, l);
                    if (used + lw > W) continue;
                    if (lw == 0 && zero_run.count(nxt)) continue;  // would need a weight-0 cycle
                    auto saved = zero_run;
                    if (lw == 0) zero_run.insert(nxt);
                    else zero_run = {nxt};
                    objs.push_back(nxt);
                    letters.push_back(l);
                    rec(nxt, used + lw, susp + m.degree_of(l) + 1);
                    objs.pop_back();
                    letters.pop_back();
                    zero_run = saved;
                }
            }
        };
        for (std::size_t x = 0; x < no; ++x) {
            objs = {x};
            letters.clear();
            zero_run = {x};
            rec(x, 0, 0);
        }

        if (words.empty()) continue;
        std::sort(words.begin(), words.end(), [](const WWord& a, const WWord& b) {
            return std::tie(a.degree, a.objs, a.p_local, a.letters) <
                   std::tie(b.degree, b.objs, b.p_local, b.letters);
        });
        std::map<std::string, std::size_t> index;
        auto key = [&](const std::vector<std::size_t>& o, std::size_t p,
                       const std::vector<std::size_t>& ls) {
            return CategoryHochschildChains::key(o, p, ls);
        };
        GradedBasis basis;
        for (std::size_t k = 0; k < words.size(); ++k) {
            basis.push("w" + std::to_string(W) + "#" + std::to_string(k), words[k].degree);
            index[key(words[k].objs, words[k].p_local, words[k].letters)] = k;
        }
        auto find = [&](const std::vector<std::size_t>& o, std::size_t p,
                        const std::vector<std::size_t>& ls) -> std::optional<std::size_t> {
            auto it = index.find(key(o, p, ls));
            if (it == index.end()) return std::nullopt;
            return it->second;
        };
        auto letter_degree = [&](const WWord& w, std::size_t t) {
            return c.mor(w.objs[t + 1], w.objs[t]).degree_of(w.letters[t]);
        };
        std::vector<SparseVec> diff(words.size());
        bool piece_truncated = false;
        for (std::size_t k = 0; k < words.size(); ++k) {
            const auto& w = words[k];
            const std::size_t j = w.letters.size();
            int pdeg = c.mor(w.objs.front(), w.objs.back()).degree_of(w.p_local);
            std::vector<int> eps(j + 1);
            eps[0] = pdeg;
            for (std::size_t i = 1; i <= j; ++i) eps[i] = eps[i - 1] + letter_degree(w, i - 1) + 1;
            std::vector<std::pair<std::size_t, Scalar>> terms;
            auto add = [&](const std::vector<std::size_t>& o2, std::size_t p2,
                           const std::vector<std::size_t>& ls2, const Scalar& cc) {
                if (cc.is_zero()) return;
                auto at = find(o2, p2, ls2);
                if (!at) { piece_truncated = true; return; }
                terms.emplace_back(*at, cc);
            };

            for (const auto& [p2, cc] : c.mor(w.objs.front(), w.objs.back()).d(w.p_local))
                add(w.objs, p2, w.letters, cc);
            for (std::size_t t = 0; t < j; ++t) {
                Scalar sgn = -sign_scalar(eps[t], f);
                std::vector<std::size_t> repl(w.letters);
                for (const auto& [r, cc] : c.mor(w.objs[t + 1], w.objs[t]).d(w.letters[t])) {
                    if (is_identity(w.objs[t + 1], w.objs[t], r)) continue;
                    repl[t] = r;
                    add(w.objs, w.p_local, repl, sgn * cc);
                }
            }
            if (j >= 1) {
                {
                    Scalar sgn = sign_scalar(eps[0], f);
                    std::vector<std::size_t> o2(w.objs.begin() + 1, w.objs.end());
                    std::vector<std::size_t> ls2(w.letters.begin() + 1, w.letters.end());
                    for (const auto& [p2, cc] :
                         c.compose(w.objs[1], w.objs[0], w.objs.back(), w.p_local, w.letters[0]))
                        add(o2, p2, ls2, sgn * cc);
                }
                for (std::size_t i = 1; i < j; ++i) {
                    Scalar sgn = sign_scalar(eps[i], f);
                    std::vector<std::size_t> o2(w.objs);
                    o2.erase(o2.begin() + static_cast<std::ptrdiff_t>(i));
                    std::vector<std::size_t> ls2(w.letters);
                    ls2.erase(ls2.begin() + static_cast<std::ptrdiff_t>(i));
                    for (const auto& [r, cc] : c.compose(w.objs[i + 1], w.objs[i], w.objs[i - 1],
                                                         w.letters[i - 1], w.letters[i])) {
                        if (is_identity(w.objs[i + 1], w.objs[i - 1], r)) continue;
                        ls2[i - 1] = r;
                        add(o2, w.p_local, ls2, sgn * cc);
                    }
                }
                {
                    int bd = eps[j - 1];
                    Scalar sgn = -sign_scalar((letter_degree(w, j - 1) + 1) * bd, f);
                    std::vector<std::size_t> o2(w.objs.begin(), w.objs.end() - 1);
                    std::vector<std::size_t> ls2(w.letters.begin(), w.letters.end() - 1);
                    for (const auto& [p2, cc] : c.compose(w.objs[0], w.objs[j], w.objs[j - 1],
                                                          w.letters[j - 1], w.p_local))
                        add(o2, p2, ls2, sgn * cc);
                }
            }
            diff[k] = sv_cleanup(std::move(terms));
        }
        if (piece_truncated)
            throw Error(ErrorKind::Internal, "weight piece not closed under the differential");
        ChainComplex cx(f, std::move(basis), std::move(diff));
        bool contributed = false;
        for (int d = window.lo; d <= window.hi; ++d) {
            std::size_t dim = cx.homology_at(d).dim;
            if (dim) {
                res.dims[d] += dim;
                contributed = true;
            }
        }
        if (W + 2 > max_weight && contributed) tail_contribution += 1;
    }
    // honesty: the two highest weights must contribute nothing to the window
    if (tail_contribution) res.stability.stable = false;
    return res;
}

inline GradedResult hh_category(const DGCategory& c, std::size_t cutoff, Window window) {
    auto primary = category_hochschild_chains(c, cutoff, window);
    GradedResult res = detail::homology_in_window(*primary.complex, window);
    res.stability.window = window;
    res.stability.certificate = primary.certificate;
    res.stability.cutoff_a = primary.effective_cutoff;
    res.stability.cutoff_b = primary.effective_cutoff;
    res.stability.stable = true;
    if (!primary.certificate) {
        auto compare = category_hochschild_chains(c, cutoff + 2, window);
        res.stability.cutoff_b = cutoff + 2;
        for (int d = window.lo; d <= window.hi; ++d) {
            std::size_t d1 = res.dims.count(d) ? res.dims.at(d) : 0;
            if (d1 != compare.complex->homology_at(d).dim) res.stability.stable = false;
        }
    }
    return res;
}

} // namespace dgkit

#endif
