#ifndef DGKIT_BAR_HPP
#define DGKIT_BAR_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dgkit/dg_algebra.hpp"

namespace dgkit {

struct StabilityReport {
    bool stable = true;
    bool certificate = false;  // exact inside the window, no cutoff dependence
    std::size_t cutoff_a = 0;
    std::size_t cutoff_b = 0;
    Window window{0, 0};
};

struct GradedResult {
    Window window{0, 0};
    std::map<int, std::size_t> dims;  // zero entries omitted
    std::map<int, std::vector<std::string>> representatives;
    StabilityReport stability;
};

namespace detail {

/// Enumerates letter sequences (indices into `letters`, whose entry i has
/// suspended degree susp[i]) of length <= cutoff such that base + sum(susp)
/// lies in [target.lo, target.hi].  Deterministic lexicographic order.
inline void enumerate_letter_words(const std::vector<std::size_t>& letters,
                                   const std::vector<int>& susp, int base, Window target,
                                   std::size_t cutoff,
                                   const std::function<void(const std::vector<std::size_t>&, int)>& emit) {
    int min_step = 0, max_step = 0;
    for (int s : susp) {
        min_step = std::min(min_step, s);
        max_step = std::max(max_step, s);
    }
    std::vector<std::size_t> word;
    std::function<void(int)> rec = [&](int degree) {
        if (target.contains(degree)) emit(word, degree);
        if (word.size() == cutoff) return;
        long remaining = static_cast<long>(cutoff - word.size());
        for (std::size_t li = 0; li < letters.size(); ++li) {
            int nd = degree + susp[li];
            long lo_reach = nd + (remaining - 1) * static_cast<long>(min_step);
            long hi_reach = nd + (remaining - 1) * static_cast<long>(max_step);
            if (hi_reach < target.lo || lo_reach > target.hi) continue;
            word.push_back(letters[li]);
            rec(nd);
            word.pop_back();
        }
    };
    rec(base);
}

inline std::string word_string(const DGAlgebra& a, const std::vector<std::size_t>& letters) {
    std::string out = "[";
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) out += "|";
        out += a.label_of(letters[i]);
    }
    return out + "]";
}

} // namespace detail

struct BarWord {
    std::size_t m_idx;
    std::vector<std::size_t> letters;  // algebra indices, never the unit
    std::size_t n_idx;
    int degree;  // |m| + sum(|a_i|+1) + |n|
};

/// Truncated normalized two-sided bar complex B(M, A, N): words
/// m[a_1|...|a_j]n with the a_i in the reduced slots, j <= cutoff, and word
/// degree inside the (padded) window.
struct BarComplex {
    std::shared_ptr<ChainComplex> complex;
    std::vector<BarWord> words;
    std::size_t effective_cutoff = 0;
    bool certificate = false;
    Window window{0, 0};

    std::size_t word_index(const BarWord& w) const {
        auto it = index_.find(key(w.m_idx, w.letters, w.n_idx));
        if (it == index_.end()) throw Error(ErrorKind::Internal, "bar word not enumerated");
        return it->second;
    }

    static std::string key(std::size_t m, const std::vector<std::size_t>& ls, std::size_t n) {
        std::string k = std::to_string(m) + ";";
        for (auto l : ls) k += std::to_string(l) + ",";
        return k + ";" + std::to_string(n);
    }
    std::map<std::string, std::size_t> index_;
};

namespace detail {

struct CutoffPlan {
    bool certificate = false;
    std::size_t effective = 0;
};

/// Finiteness certificate: when the reduced letters' suspended degrees are
/// uniformly >= 1 (or <= -1), only finitely many word lengths reach the
/// window, and the needed cutoff is computable.
inline CutoffPlan plan_cutoff_list(const std::vector<int>& susp, int base_min, int base_max,
                                   Window padded, std::size_t requested) {
    bool all_pos = true, all_neg = true;
    int min_abs = INT32_MAX;
    for (int s : susp) {
        if (s < 1) all_pos = false;
        if (s > -1) all_neg = false;
        min_abs = std::min(min_abs, std::abs(s));
    }
    CutoffPlan plan;
    plan.effective = requested;
    bool applies = susp.empty() || all_pos || all_neg;
    if (!applies) return plan;
    long needed = 0;
    if (!susp.empty()) {
        long range = all_pos ? static_cast<long>(padded.hi) - base_min   // letters add >= min_abs
                             : static_cast<long>(base_max) - padded.lo;  // letters subtract >= min_abs
        needed = range < 0 ? 0 : range / min_abs;
    }
    if (static_cast<std::size_t>(needed) <= requested) {
        plan.certificate = true;
        plan.effective = static_cast<std::size_t>(needed);
    }
    return plan;
}

inline CutoffPlan plan_cutoff(const DGAlgebra& a, int base_min, int base_max, Window padded,
                              std::size_t requested) {
    std::vector<int> susp;
    for (auto i : a.reduced_indices()) susp.push_back(a.degree_of(i) + 1);
    return plan_cutoff_list(susp, base_min, base_max, padded, requested);
}

} // namespace detail

/// Builds the truncated bar complex.  Requires an augmented algebra, a right
/// module m and a left module n.
inline BarComplex bar_complex(const DGModule& m, const DGAlgebra& a, const DGModule& n,
                              std::size_t cutoff, Window window) {
    a.require_augmented();
    if (!m.has_right()) throw Error(ErrorKind::DimensionMismatch, "left slot needs a right module");
    if (!n.has_left()) throw Error(ErrorKind::DimensionMismatch, "right slot needs a left module");
    if (m.size() == 0 || n.size() == 0 || a.size() == 0)
        throw Error(ErrorKind::DimensionMismatch, "empty module or algebra");

    Window padded = Window::checked(window.lo - 1, window.hi + 1);
    const Field f = a.field();

    int base_min = INT32_MAX, base_max = INT32_MIN;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < n.size(); ++j) {
            base_min = std::min(base_min, m.degree_of(i) + n.degree_of(j));
            base_max = std::max(base_max, m.degree_of(i) + n.degree_of(j));
        }
    auto plan = detail::plan_cutoff(a, base_min, base_max, padded, cutoff);

    const auto& letters = a.reduced_indices();
    std::vector<int> susp;
    susp.reserve(letters.size());
    for (auto i : letters) susp.push_back(a.degree_of(i) + 1);

    BarComplex bc;
    bc.effective_cutoff = plan.effective;
    bc.certificate = plan.certificate;
    bc.window = window;
    for (std::size_t mi = 0; mi < m.size(); ++mi)
        for (std::size_t ni = 0; ni < n.size(); ++ni) {
            int base = m.degree_of(mi) + n.degree_of(ni);
            detail::enumerate_letter_words(
                letters, susp, base, padded, plan.effective,
                [&](const std::vector<std::size_t>& ls, int degree) {
                    bc.words.push_back(BarWord{mi, ls, ni, degree});
                });
        }
    std::sort(bc.words.begin(), bc.words.end(), [&](const BarWord& x, const BarWord& y) {
        return std::tie(x.degree, x.m_idx, x.letters, x.n_idx) <
               std::tie(y.degree, y.m_idx, y.letters, y.n_idx);
    });
    GradedBasis basis;
    for (std::size_t k = 0; k < bc.words.size(); ++k) {
        const auto& w = bc.words[k];
        basis.push(m.label_of(w.m_idx) + detail::word_string(a, w.letters) + n.label_of(w.n_idx),
                   w.degree);
        bc.index_[BarComplex::key(w.m_idx, w.letters, w.n_idx)] = k;
    }

    auto find = [&](std::size_t mi, const std::vector<std::size_t>& ls, std::size_t ni)
        -> std::optional<std::size_t> {
        auto it = bc.index_.find(BarComplex::key(mi, ls, ni));
        if (it == bc.index_.end()) return std::nullopt;
        return it->second;
    };

    // Semifree convention with suspended prefix degrees
    // eps_i = |m| + sum_{l<=i}(|a_l|+1):
    //   D = (dm)[...]n - sum (-1)^{eps_{i-1}} m[...|da_i|...]n + (-1)^{eps_j} m[...](dn)
    //     + (-1)^{eps_0}(m·a_1)[...]n + sum (-1)^{eps_i} m[...|a_i a_{i+1}|...]n
    //     - (-1)^{eps_{j-1}} m[...](a_j·n)
    const std::size_t unit = a.unit();
    std::vector<SparseVec> diff(bc.words.size());
    for (std::size_t k = 0; k < bc.words.size(); ++k) {
        const BarWord& w = bc.words[k];
        const std::size_t j = w.letters.size();
        std::vector<int> eps(j + 1);
        eps[0] = m.degree_of(w.m_idx);
        for (std::size_t i = 1; i <= j; ++i) eps[i] = eps[i - 1] + a.degree_of(w.letters[i - 1]) + 1;
        std::vector<std::pair<std::size_t, Scalar>> terms;
        auto add = [&](std::optional<std::size_t> at, const Scalar& c) {
            if (at && !c.is_zero()) terms.emplace_back(*at, c);
        };

        for (const auto& [m2, c] : m.d(w.m_idx)) add(find(m2, w.letters, w.n_idx), c);
        for (std::size_t i = 1; i <= j; ++i) {
            Scalar sgn = -sign_scalar(eps[i - 1], f);
            std::vector<std::size_t> repl(w.letters);
            for (const auto& [r, c] : a.d(w.letters[i - 1])) {
                if (r == unit) continue;
                repl[i - 1] = r;
                add(find(w.m_idx, repl, w.n_idx), sgn * c);
            }
        }
        {
            Scalar sgn = sign_scalar(eps[j], f);
            for (const auto& [n2, c] : n.d(w.n_idx)) add(find(w.m_idx, w.letters, n2), sgn * c);
        }
        if (j >= 1) {
            {  // face 0: m·a_1
                Scalar sgn = sign_scalar(eps[0], f);
                std::vector<std::size_t> rest(w.letters.begin() + 1, w.letters.end());
                for (const auto& [m2, c] : m.act_right(w.m_idx, w.letters[0]))
                    add(find(m2, rest, w.n_idx), sgn * c);
            }
            for (std::size_t i = 1; i < j; ++i) {  // merge letters i-1, i
                Scalar sgn = sign_scalar(eps[i], f);
                std::vector<std::size_t> merged(w.letters);
                merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
                for (const auto& [r, c] : a.mul(w.letters[i - 1], w.letters[i])) {
                    if (r == unit) continue;  // normalized quotient
                    merged[i - 1] = r;
                    add(find(w.m_idx, merged, w.n_idx), sgn * c);
                }
            }
            {  // face j: a_j·n
                Scalar sgn = -sign_scalar(eps[j - 1], f);
                std::vector<std::size_t> rest(w.letters.begin(), w.letters.end() - 1);
                for (const auto& [n2, c] : n.act_left(w.letters[j - 1], w.n_idx))
                    add(find(w.m_idx, rest, n2), sgn * c);
            }
        }
        diff[k] = sv_cleanup(std::move(terms));
    }

    bc.complex = std::make_shared<ChainComplex>(f, std::move(basis), std::move(diff));
    return bc;
}

namespace detail {

inline GradedResult homology_in_window(const ChainComplex& cx, Window window) {
    GradedResult res;
    res.window = window;
    for (int d = window.lo; d <= window.hi; ++d) {
        auto h = cx.homology_at(d);
        if (h.dim == 0) continue;
        res.dims[d] = h.dim;
        auto& reps = res.representatives[d];
        for (const auto& r : h.representatives) reps.push_back(cx.format(r));
    }
    return res;
}

} // namespace detail

/// Derived tensor product dimensions: homology of the bar complex, with the
/// two-cutoff stability policy when no finiteness certificate applies.
inline GradedResult tor(const DGModule& m, const DGAlgebra& a, const DGModule& n,
                        std::size_t cutoff, Window window) {
    auto primary = bar_complex(m, a, n, cutoff, window);
    GradedResult res = detail::homology_in_window(*primary.complex, window);
    res.stability.window = window;
    res.stability.certificate = primary.certificate;
    res.stability.cutoff_a = primary.effective_cutoff;
    if (primary.certificate) {
        res.stability.cutoff_b = primary.effective_cutoff;
        res.stability.stable = true;
        return res;
    }
    auto compare = bar_complex(m, a, n, cutoff + 2, window);
    res.stability.cutoff_b = compare.effective_cutoff;
    res.stability.stable = true;
    for (int d = window.lo; d <= window.hi; ++d) {
        std::size_t d1 = res.dims.count(d) ? res.dims.at(d) : 0;
        std::size_t d2 = compare.complex->homology_at(d).dim;
        if (d1 != d2) res.stability.stable = false;
    }
    return res;
}

} // namespace dgkit

#endif
