#ifndef DGKIT_EXT_HPP
#define DGKIT_EXT_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dgkit/bar.hpp"
#include "dgkit/dg_category.hpp"

namespace dgkit {

/// Semifree bar resolution B(A, A, M) of a left module M, truncated by word
/// length and a generator-degree window.  Generators 1[a_1|...|a_j]m span a
/// free A-module; the underlying complex has basis pairs a⊗w.
class BarResolution {
public:
    struct Gen {
        std::vector<std::size_t> letters;
        std::size_t m_idx;
        int degree;  // sum(|a_i|+1) + |m|
    };

    BarResolution(DGAlgebra a, DGModule m, std::size_t cutoff, Window gen_window)
        : a_(std::move(a)), m_(std::move(m)), cutoff_(cutoff), gen_window_(gen_window) {
        if (!m_.has_left()) throw Error(ErrorKind::DimensionMismatch, "bar resolution needs a left module");
        a_.require_augmented();
        const auto& letters = a_.reduced_indices();
        std::vector<int> susp;
        for (auto i : letters) susp.push_back(a_.degree_of(i) + 1);
        for (std::size_t mi = 0; mi < m_.size(); ++mi)
            detail::enumerate_letter_words(letters, susp, m_.degree_of(mi), gen_window, cutoff,
                                           [&](const std::vector<std::size_t>& ls, int degree) {
                                               gens_.push_back(Gen{ls, mi, degree});
                                           });
        std::sort(gens_.begin(), gens_.end(), [](const Gen& x, const Gen& y) {
            return std::tie(x.degree, x.letters, x.m_idx) < std::tie(y.degree, y.letters, y.m_idx);
        });
        for (std::size_t k = 0; k < gens_.size(); ++k)
            index_[key(gens_[k].letters, gens_[k].m_idx)] = k;

        // D on the generator 1[a_1|...|a_j]m, semifree convention with
        // eps_i = sum_{l<=i}(|a_l|+1) (the A-slot holds 1, degree 0):
        //   D = a_1⊗[a_2|...]m - sum (-1)^{eps_{i-1}}[...|da_i|...]m
        //     + sum (-1)^{eps_i}[...|a_i a_{i+1}|...]m
        //     - (-1)^{eps_{j-1}}[...](a_j·m) + (-1)^{eps_j}[...](dm)
        const Field f = a_.field();
        const std::size_t unit = a_.unit();
        dgen_.resize(gens_.size());
        for (std::size_t k = 0; k < gens_.size(); ++k) {
            const Gen& w = gens_[k];
            const std::size_t j = w.letters.size();
            std::vector<int> eps(j + 1, 0);
            for (std::size_t i = 1; i <= j; ++i)
                eps[i] = eps[i - 1] + a_.degree_of(w.letters[i - 1]) + 1;
            auto& out = dgen_[k];
            auto add = [&](std::size_t a_idx, const std::vector<std::size_t>& ls, std::size_t mi,
                           const Scalar& c) {
                if (c.is_zero()) return;
                auto it = index_.find(key(ls, mi));
                if (it == index_.end()) return;  // outside the generator window
                out.emplace_back(a_idx, it->second, c);
            };
            for (std::size_t i = 1; i <= j; ++i) {
                Scalar sgn = -sign_scalar(eps[i - 1], f);
                std::vector<std::size_t> repl(w.letters);
                for (const auto& [r, c] : a_.d(w.letters[i - 1])) {
                    if (r == unit) continue;
                    repl[i - 1] = r;
                    add(unit, repl, w.m_idx, sgn * c);
                }
            }
            {
                Scalar sgn = sign_scalar(eps[j], f);
                for (const auto& [m2, c] : m_.d(w.m_idx)) add(unit, w.letters, m2, sgn * c);
            }
            if (j >= 1) {
                {  // face 0: the first letter becomes the algebra coefficient
                    std::vector<std::size_t> rest(w.letters.begin() + 1, w.letters.end());
                    add(w.letters[0], rest, w.m_idx, Scalar::one(f));
                }
                for (std::size_t i = 1; i < j; ++i) {
                    Scalar sgn = sign_scalar(eps[i], f);
                    std::vector<std::size_t> merged(w.letters);
                    merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
                    for (const auto& [r, c] : a_.mul(w.letters[i - 1], w.letters[i])) {
                        if (r == unit) continue;
                        merged[i - 1] = r;
                        add(unit, merged, w.m_idx, sgn * c);
                    }
                }
                {  // face j: last letter acts on the module slot
                    Scalar sgn = -sign_scalar(eps[j - 1], f);
                    std::vector<std::size_t> rest(w.letters.begin(), w.letters.end() - 1);
                    for (const auto& [m2, c] : m_.act_left(w.letters[j - 1], w.m_idx))
                        add(unit, rest, m2, sgn * c);
                }
            }
        }

        for (std::size_t k = 0; k < gens_.size(); ++k)
            for (std::size_t ai = 0; ai < a_.size(); ++ai)
                pairs_by_degree_[a_.degree_of(ai) + gens_[k].degree].push_back(pair_index(ai, k));
    }

    const DGAlgebra& algebra() const { return a_; }
    const DGModule& module() const { return m_; }
    const std::vector<Gen>& gens() const { return gens_; }
    std::size_t cutoff() const { return cutoff_; }
    Window gen_window() const { return gen_window_; }

    std::optional<std::size_t> gen_index(const std::vector<std::size_t>& ls, std::size_t mi) const {
        auto it = index_.find(key(ls, mi));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// D_B on the generator 1⊗w: terms (algebra index, generator index, coeff).
    const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& d_gen(std::size_t k) const {
        return dgen_[k];
    }

    std::size_t pair_count() const { return a_.size() * gens_.size(); }
    std::size_t pair_index(std::size_t a_idx, std::size_t g_idx) const {
        return a_idx * gens_.size() + g_idx;
    }
    std::pair<std::size_t, std::size_t> pair_split(std::size_t p) const {
        return {p / gens_.size(), p % gens_.size()};
    }
    int pair_degree(std::size_t p) const {
        auto [ai, gi] = pair_split(p);
        return a_.degree_of(ai) + gens_[gi].degree;
    }
    const std::vector<std::size_t>& pairs_at(int degree) const {
        static const std::vector<std::size_t> empty;
        auto it = pairs_by_degree_.find(degree);
        return it == pairs_by_degree_.end() ? empty : it->second;
    }

    /// d(a⊗w) = (da)⊗w + (-1)^{|a|} a·D_B(w).
    SparseVec d_pair(std::size_t p) const {
        auto [ai, gi] = pair_split(p);
        const Field f = a_.field();
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (const auto& [a2, c] : a_.d(ai)) terms.emplace_back(pair_index(a2, gi), c);
        Scalar sgn = sign_scalar(a_.degree_of(ai), f);
        for (const auto& [b, g2, c] : dgen_[gi])
            for (const auto& [ab, c2] : a_.mul(ai, b))
                terms.emplace_back(pair_index(ab, g2), sgn * c * c2);
        return sv_cleanup(std::move(terms));
    }

    /// Left multiplication a·(element of B).
    SparseVec act(std::size_t a_idx, const SparseVec& v) const {
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (const auto& [p, c] : v) {
            auto [ai, gi] = pair_split(p);
            for (const auto& [ab, c2] : a_.mul(a_idx, ai))
                terms.emplace_back(pair_index(ab, gi), c * c2);
        }
        return sv_cleanup(std::move(terms));
    }

    /// Augmentation B -> M: a⊗((), m) -> a·m, longer words -> 0.
    SparseVec eps(const SparseVec& v) const {
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (const auto& [p, c] : v) {
            auto [ai, gi] = pair_split(p);
            if (!gens_[gi].letters.empty()) continue;
            for (const auto& [m2, c2] : m_.act_left(ai, gens_[gi].m_idx))
                terms.emplace_back(m2, c * c2);
        }
        return sv_cleanup(std::move(terms));
    }

    std::string gen_label(std::size_t k) const {
        return detail::word_string(a_, gens_[k].letters) + m_.label_of(gens_[k].m_idx);
    }

private:
    static std::string key(const std::vector<std::size_t>& ls, std::size_t mi) {
        std::string k;
        for (auto l : ls) k += std::to_string(l) + ",";
        return k + ";" + std::to_string(mi);
    }

    DGAlgebra a_;
    DGModule m_;
    std::size_t cutoff_;
    Window gen_window_;
    std::vector<Gen> gens_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, Scalar>>> dgen_;
    std::map<int, std::vector<std::size_t>> pairs_by_degree_;
};

/// The complex Hom_A(B(A,A,M), N) computing Ext_A(M, N).  Basis cochains send
/// one generator word to one basis element of N; degree = |n| - |word|.
class ExtComplex {
public:
    ExtComplex(std::shared_ptr<const BarResolution> res, DGModule target, Window window)
        : res_(std::move(res)), n_(std::move(target)), window_(window) {
        if (!n_.has_left()) throw Error(ErrorKind::DimensionMismatch, "ext target must be a left module");
        const Field f = res_->algebra().field();
        Window padded = Window::checked(window.lo - 1, window.hi + 1);
        for (std::size_t g = 0; g < res_->gens().size(); ++g)
            for (std::size_t nb = 0; nb < n_.size(); ++nb) {
                int deg = n_.degree_of(nb) - res_->gens()[g].degree;
                if (padded.contains(deg)) elems_.emplace_back(g, nb);
            }
        std::sort(elems_.begin(), elems_.end());
        for (std::size_t k = 0; k < elems_.size(); ++k) index_[elems_[k]] = k;

        // reverse map of D_B: for each generator w, which (w', a) hit it
        std::vector<std::vector<std::tuple<std::size_t, std::size_t, Scalar>>> hits(
            res_->gens().size());
        for (std::size_t w2 = 0; w2 < res_->gens().size(); ++w2)
            for (const auto& [ai, w, c] : res_->d_gen(w2)) hits[w].emplace_back(w2, ai, c);

        GradedBasis basis;
        std::vector<SparseVec> diff(elems_.size());
        for (std::size_t k = 0; k < elems_.size(); ++k) {
            auto [g, nb] = elems_[k];
            basis.push(res_->gen_label(g) + "=>" + n_.label_of(nb),
                       n_.degree_of(nb) - res_->gens()[g].degree);
        }
        for (std::size_t k = 0; k < elems_.size(); ++k) {
            auto [g, nb] = elems_[k];
            const int q = n_.degree_of(nb) - res_->gens()[g].degree;
            std::vector<std::pair<std::size_t, Scalar>> terms;
            auto add = [&](std::size_t g2, std::size_t nb2, const Scalar& c) {
                auto it = index_.find({g2, nb2});
                if (it != index_.end() && !c.is_zero()) terms.emplace_back(it->second, c);
            };
            for (const auto& [n2, c] : n_.d(nb)) add(g, n2, c);
            for (const auto& [w2, ai, c] : hits[g]) {
                Scalar sgn = -sign_scalar(q * (1 + res_->algebra().degree_of(ai)), f);
                for (const auto& [n2, c2] : n_.act_left(ai, nb)) add(w2, n2, sgn * c * c2);
            }
            diff[k] = sv_cleanup(std::move(terms));
        }
        cx_ = std::make_shared<ChainComplex>(f, std::move(basis), std::move(diff));
    }

    const BarResolution& resolution() const { return *res_; }
    std::shared_ptr<const BarResolution> resolution_ptr() const { return res_; }
    const DGModule& target() const { return n_; }
    const ChainComplex& complex() const { return *cx_; }
    Window window() const { return window_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& elems() const { return elems_; }

    std::optional<std::size_t> elem_index(std::size_t g, std::size_t nb) const {
        auto it = index_.find({g, nb});
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Value f(w) of a cochain vector on generator w, as an element of N.
    SparseVec value(const SparseVec& f, std::size_t g) const {
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (const auto& [k, c] : f)
            if (elems_[k].first == g) terms.emplace_back(elems_[k].second, c);
        return sv_cleanup(std::move(terms));
    }

    /// The augmentation cochain ((), m_b) -> m_b — the identity class when N = M.
    SparseVec unit_cochain() const {
        if (&n_ == nullptr) throw Error(ErrorKind::Internal, "no target");
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (std::size_t g = 0; g < res_->gens().size(); ++g) {
            if (!res_->gens()[g].letters.empty()) continue;
            std::size_t mi = res_->gens()[g].m_idx;
            // requires target = source module with identical bases
            auto it = index_.find({g, mi});
            if (it == index_.end())
                throw Error(ErrorKind::WindowTooSmall,
                            "window too small to contain the identity cochain");
            terms.emplace_back(it->second, Scalar::one(res_->algebra().field()));
        }
        return sv_cleanup(std::move(terms));
    }

private:
    std::shared_ptr<const BarResolution> res_;
    DGModule n_;
    Window window_;
    std::vector<std::pair<std::size_t, std::size_t>> elems_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
    std::shared_ptr<ChainComplex> cx_;
};

namespace detail {

inline Window ext_gen_window(const DGModule& n, Window window) {
    int min_n = INT32_MAX, max_n = INT32_MIN;
    for (std::size_t i = 0; i < n.size(); ++i) {
        min_n = std::min(min_n, n.degree_of(i));
        max_n = std::max(max_n, n.degree_of(i));
    }
    return Window::checked(min_n - window.hi - 1, max_n - window.lo + 1);
}

inline detail::CutoffPlan ext_plan(const DGAlgebra& a, const DGModule& m, const DGModule& n,
                                   Window window, std::size_t requested) {
    int min_m = INT32_MAX, max_m = INT32_MIN;
    for (std::size_t i = 0; i < m.size(); ++i) {
        min_m = std::min(min_m, m.degree_of(i));
        max_m = std::max(max_m, m.degree_of(i));
    }
    return plan_cutoff(a, min_m, max_m, ext_gen_window(n, window), requested);
}

} // namespace detail

/// Derived Hom dimensions Ext_A(M, N) in the window, with representative
/// cocycles and the stability policy.
inline GradedResult ext(const DGAlgebra& a, const DGModule& m, const DGModule& n,
                        std::size_t cutoff, Window window) {
    a.require_augmented();
    auto plan = detail::ext_plan(a, m, n, window, cutoff);
    auto build = [&](std::size_t cut) {
        auto res = std::make_shared<BarResolution>(a, m, cut, detail::ext_gen_window(n, window));
        return ExtComplex(res, n, window);
    };
    ExtComplex primary = build(plan.effective);
    GradedResult res = detail::homology_in_window(primary.complex(), window);
    res.stability.window = window;
    res.stability.certificate = plan.certificate;
    res.stability.cutoff_a = plan.effective;
    res.stability.cutoff_b = plan.effective;
    res.stability.stable = true;
    if (!plan.certificate) {
        ExtComplex compare = build(cutoff + 2);
        res.stability.cutoff_b = cutoff + 2;
        for (int d = window.lo; d <= window.hi; ++d) {
            std::size_t d1 = res.dims.count(d) ? res.dims.at(d) : 0;
            if (d1 != compare.complex().homology_at(d).dim) res.stability.stable = false;
        }
    }
    return res;
}

/// Chain-map lift F: B(A,A,M) -> B(A,A,N) of a cocycle f in Hom(B_M, N),
/// with eps_N∘F = f and dF = (-1)^{|f|} Fd.  Values are produced on demand by
/// linear solves against the bar differential, in dependency order.
class YonedaLift {
public:
    YonedaLift(const ExtComplex& src_complex, std::shared_ptr<const BarResolution> dst,
               SparseVec cocycle, int degree)
        : src_(src_complex.resolution_ptr()), dst_(std::move(dst)), q_(degree) {
        const auto& gens = src_->gens();
        f_values_.resize(gens.size());
        for (std::size_t g = 0; g < gens.size(); ++g)
            f_values_[g] = src_complex.value(cocycle, g);
        values_.assign(gens.size(), std::nullopt);
        // dependency order: length ascending, then degree ascending
        std::vector<std::size_t> order(gens.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return std::make_pair(gens[x].letters.size(), gens[x].degree) <
                   std::make_pair(gens[y].letters.size(), gens[y].degree);
        });
        for (auto g : order) compute(g);
    }

    const SparseVec& value(std::size_t g) const {
        if (!values_[g]) throw Error(ErrorKind::Internal, "lift value missing");
        return *values_[g];
    }

private:
    void compute(std::size_t g) {
        const Field f = src_->algebra().field();
        // rhs of the chain condition: (-1)^q * F(D_B w), extended A-linearly
        SparseVec rhs;
        for (const auto& [ai, g2, c] : src_->d_gen(g)) {
            const SparseVec& prev = *values_[g2];
            Scalar sgn = sign_scalar(q_ * src_->algebra().degree_of(ai), f) * c;
            rhs = sv_axpy(rhs, sgn, dst_->act(ai, prev));
        }
        rhs = sv_scale(rhs, sign_scalar(q_, f));

        int target_deg = src_->gens()[g].degree + q_;
        const auto& cols = dst_->pairs_at(target_deg);
        const auto& below = dst_->pairs_at(target_deg - 1);
        std::map<std::size_t, std::size_t> below_loc;
        for (std::size_t i = 0; i < below.size(); ++i) below_loc[below[i]] = i;
        const std::size_t nmod = dst_->module().size();

        // stacked system: [d_B; eps] X = [rhs; f(w)]
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> es;
        for (std::size_t cidx = 0; cidx < cols.size(); ++cidx) {
            for (const auto& [p2, c] : dst_->d_pair(cols[cidx])) {
                auto it = below_loc.find(p2);
                if (it != below_loc.end()) es.emplace_back(it->second, cidx, c);
            }
            for (const auto& [mb, c] : dst_->eps(SparseVec{{cols[cidx], Scalar::one(f)}}))
                es.emplace_back(below.size() + mb, cidx, c);
        }
        SparseMatrix sys = SparseMatrix::make(below.size() + nmod, cols.size(), std::move(es));

        std::vector<std::pair<std::size_t, Scalar>> b;
        for (const auto& [p, c] : rhs) {
            auto it = below_loc.find(p);
            if (it == below_loc.end())
                throw Error(ErrorKind::LiftFailure, "chain condition leaves the truncated resolution",
                            {src_->gen_label(g)});
            b.emplace_back(it->second, c);
        }
        for (const auto& [mb, c] : f_values_[g]) b.emplace_back(below.size() + mb, c);

        auto sol = solve(sys, sv_cleanup(std::move(b)), f);
        if (!sol)
            throw Error(ErrorKind::LiftFailure, "no lift within cutoff", {src_->gen_label(g)});
        SparseVec x;
        for (const auto& [cidx, c] : *sol) x.emplace_back(cols[cidx], c);
        values_[g] = sv_cleanup(std::move(x));
    }

    std::shared_ptr<const BarResolution> src_;
    std::shared_ptr<const BarResolution> dst_;
    int q_;
    std::vector<SparseVec> f_values_;
    std::vector<std::optional<SparseVec>> values_;
};

/// g∘F for a cocycle g in Hom(B_N, P) and a lift F: B_M -> B_N: the composite
/// cochain in Hom(B_M, P).
inline SparseVec compose_with_lift(const ExtComplex& g_complex, const SparseVec& g, int gdeg,
                                   const YonedaLift& lift, const ExtComplex& out_complex) {
    const BarResolution& src = out_complex.resolution();
    const DGAlgebra& a = src.algebra();
    const DGModule& p = g_complex.target();
    std::vector<std::pair<std::size_t, Scalar>> terms;
    for (std::size_t w = 0; w < src.gens().size(); ++w) {
        // value of g-hat on F(w)
        SparseVec val;
        for (const auto& [pair, c] : lift.value(w)) {
            auto [ai, gi] = g_complex.resolution().pair_split(pair);
            SparseVec gv = g_complex.value(g, gi);
            if (gv.empty()) continue;
            Scalar sgn = sign_scalar(gdeg * a.degree_of(ai), a.field()) * c;
            val = sv_axpy(val, sgn, p.act_left_vec(SparseVec{{ai, Scalar::one(a.field())}}, gv));
        }
        for (const auto& [pb, c] : val) {
            auto at = out_complex.elem_index(w, pb);
            if (at) terms.emplace_back(*at, c);
        }
    }
    return sv_cleanup(std::move(terms));
}

namespace detail {

/// Homology classes of an ext complex with chosen representatives and a
/// coordinate solver (class coefficients of a cocycle, modulo coboundaries).
struct DerivedHomClasses {
    std::shared_ptr<ExtComplex> E;
    struct Cls {
        int degree;
        SparseVec rep;
    };
    std::vector<Cls> classes;                        // sorted by (degree, pivot order)
    std::map<int, std::vector<std::size_t>> by_degree;

    void collect(Window window) {
        for (int d = window.lo; d <= window.hi; ++d) {
            auto h = E->complex().homology_at(d);
            for (const auto& r : h.representatives) {
                by_degree[d].push_back(classes.size());
                classes.push_back(Cls{d, r});
            }
        }
    }

    /// Makes `unit` the first degree-0 class (used for identity classes).
    void install_unit(const SparseVec& unit) {
        if (!E->complex().apply_d(unit).empty())
            throw Error(ErrorKind::Internal, "identity cochain is not a cocycle");
        auto coords = coordinates(unit, 0);
        if (!coords || coords->empty())
            throw Error(ErrorKind::Internal, "identity class vanishes");
        auto& deg0 = by_degree[0];
        const Field f = E->complex().field();
        // keep the reps whose coordinate vectors extend span{coords}
        SpanTracker span(deg0.size(), f);
        span.add(*coords);
        std::vector<SparseVec> keep;
        for (std::size_t k = 0; k < deg0.size(); ++k)
            if (span.add(SparseVec{{k, Scalar::one(f)}})) keep.push_back(classes[deg0[k]].rep);
        std::vector<SparseVec> reps;
        reps.push_back(unit);
        for (auto& r : keep) reps.push_back(std::move(r));
        for (std::size_t k = 0; k < deg0.size(); ++k) classes[deg0[k]].rep = reps[k];
    }

    /// Class coordinates of a homogeneous cocycle at degree d, or nullopt if
    /// it is not in the span of classes + coboundaries (cannot happen for an
    /// honest cocycle).
    std::optional<SparseVec> coordinates(const SparseVec& v, int d) const {
        const ChainComplex& cx = E->complex();
        const Field f = cx.field();
        std::vector<SparseVec> cols;
        auto it = by_degree.find(d);
        std::size_t nreps = it == by_degree.end() ? 0 : it->second.size();
        if (it != by_degree.end())
            for (auto ci : it->second) cols.push_back(classes[ci].rep);
        for (auto i : cx.at_degree(d + 1))
            if (!cx.d(i).empty()) cols.push_back(cx.d(i));
        auto m = SparseMatrix::from_columns(cols, cx.size());
        auto sol = solve(m, v, f);
        if (!sol) return std::nullopt;
        SparseVec out;
        for (const auto& [i, c] : *sol)
            if (i < nreps) out.emplace_back(i, c);
        return out;
    }
};

} // namespace detail

/// Ext algebra of a module: graded homology algebra of the derived
/// endomorphisms, with the Yoneda product computed by bar-resolution lifts.
/// Products landing outside the window are dropped (window truncation).
inline DGAlgebra ext_algebra(const DGAlgebra& a, const DGModule& m, std::size_t cutoff,
                             Window window) {
    a.require_augmented();
    auto plan = detail::ext_plan(a, m, m, window, cutoff);
    auto res = std::make_shared<BarResolution>(a, m, plan.effective,
                                               detail::ext_gen_window(m, window));
    detail::DerivedHomClasses H;
    H.E = std::make_shared<ExtComplex>(res, m, window);
    H.collect(window);
    H.install_unit(H.E->unit_cochain());

    const Field f = a.field();
    auto label = [&](int deg, std::size_t k) {
        if (deg == 0 && k == 0) return std::string("1");
        return "e" + std::to_string(deg) + "_" + std::to_string(k);
    };

    AlgebraData out;
    out.field = f;
    for (const auto& [d, idxs] : H.by_degree)
        for (std::size_t k = 0; k < idxs.size(); ++k) out.basis.push(label(d, k), d);
    out.unit_label = "1";
    out.truncation = window;

    std::map<std::size_t, std::pair<int, std::size_t>> name_of;  // class idx -> (deg, k)
    for (const auto& [d, idxs] : H.by_degree)
        for (std::size_t k = 0; k < idxs.size(); ++k) name_of[idxs[k]] = {d, k};

    std::map<std::size_t, std::shared_ptr<YonedaLift>> lifts;
    auto lift_of = [&](std::size_t ci) {
        auto it = lifts.find(ci);
        if (it != lifts.end()) return it->second;
        auto l = std::make_shared<YonedaLift>(*H.E, res, H.classes[ci].rep, H.classes[ci].degree);
        lifts[ci] = l;
        return l;
    };

    for (std::size_t xi = 0; xi < H.classes.size(); ++xi)
        for (std::size_t yi = 0; yi < H.classes.size(); ++yi) {
            int pd = H.classes[xi].degree + H.classes[yi].degree;
            if (!window.contains(pd)) continue;  // recorded as out-of-window
            auto lf = lift_of(yi);
            SparseVec prod = compose_with_lift(*H.E, H.classes[xi].rep, H.classes[xi].degree,
                                               *lf, *H.E);
            auto coords = H.coordinates(prod, pd);
            if (!coords)
                throw Error(ErrorKind::LiftFailure, "Yoneda product is not a class within cutoff");
            auto [xd, xk] = name_of[xi];
            auto [yd, yk] = name_of[yi];
            for (const auto& [j, c] : *coords) {
                auto target = H.by_degree.at(pd)[j];
                auto [td, tk] = name_of[target];
                out.multiplication.emplace_back(label(xd, xk), label(yd, yk), label(td, tk), c);
            }
        }

    return validate_dga(out);
}

/// The derived endomorphism category of a list of left modules: objects the
/// modules, morphisms the Ext classes, composition the Yoneda product.
inline DGCategory ext_category(const DGAlgebra& a, const std::vector<DGModule>& modules,
                               const std::vector<std::string>& names, std::size_t cutoff,
                               Window window) {
    a.require_augmented();
    if (modules.empty() || modules.size() != names.size())
        throw Error(ErrorKind::DimensionMismatch, "ext_category needs named modules");
    const Field f = a.field();
    const std::size_t n = modules.size();

    // one generator window covering every target module
    int min_n = INT32_MAX, max_n = INT32_MIN;
    for (const auto& mod : modules)
        for (std::size_t i = 0; i < mod.size(); ++i) {
            min_n = std::min(min_n, mod.degree_of(i));
            max_n = std::max(max_n, mod.degree_of(i));
        }
    Window gen_window = Window::checked(min_n - window.hi - 1, max_n - window.lo + 1);

    std::vector<std::shared_ptr<BarResolution>> res;
    for (const auto& mod : modules)
        res.push_back(std::make_shared<BarResolution>(a, mod, cutoff, gen_window));

    std::vector<std::vector<detail::DerivedHomClasses>> H(n);
    for (std::size_t i = 0; i < n; ++i) {
        H[i].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            H[i][j].E = std::make_shared<ExtComplex>(res[i], modules[j], window);
            H[i][j].collect(window);
        }
        H[i][i].install_unit(H[i][i].E->unit_cochain());
    }

    auto label = [&](std::size_t i, std::size_t j, int deg, std::size_t k) {
        if (i == j && deg == 0 && k == 0) return "id_" + names[i];
        return names[i] + ">" + names[j] + "@" + std::to_string(deg) + "#" + std::to_string(k);
    };

    CategoryData out;
    out.field = f;
    out.objects = names;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [d, idxs] : H[i][j].by_degree)
                for (std::size_t k = 0; k < idxs.size(); ++k)
                    out.elements.emplace_back(label(i, j, d, k), names[i], names[j], d);
    for (std::size_t i = 0; i < n; ++i)
        out.identities[names[i]] = {{label(i, i, 0, 0), Scalar::one(f)}};

    // lifts of classes in mor(i,j) as maps B_i -> B_j
    std::map<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>,
             std::shared_ptr<YonedaLift>> lifts;
    auto lift_of = [&](std::size_t i, std::size_t j, std::size_t ci) {
        auto key = std::make_pair(std::make_pair(i, j), ci);
        auto it = lifts.find(key);
        if (it != lifts.end()) return it->second;
        auto l = std::make_shared<YonedaLift>(*H[i][j].E, res[j], H[i][j].classes[ci].rep,
                                              H[i][j].classes[ci].degree);
        lifts[key] = l;
        return l;
    };
    auto name_of = [&](std::size_t i, std::size_t j, std::size_t ci) {
        for (const auto& [d, idxs] : H[i][j].by_degree)
            for (std::size_t k = 0; k < idxs.size(); ++k)
                if (idxs[k] == ci) return label(i, j, d, k);
        throw Error(ErrorKind::Internal, "class not found");
    };

    // comp(g in mor(j,k), f in mor(i,j)) = g∘(lift f) in mor(i,k)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t gi = 0; gi < H[j][k].classes.size(); ++gi)
                    for (std::size_t fi = 0; fi < H[i][j].classes.size(); ++fi) {
                        int pd = H[j][k].classes[gi].degree + H[i][j].classes[fi].degree;
                        if (!window.contains(pd)) continue;
                        auto lf = lift_of(i, j, fi);
                        SparseVec prod =
                            compose_with_lift(*H[j][k].E, H[j][k].classes[gi].rep,
                                              H[j][k].classes[gi].degree, *lf, *H[i][k].E);
                        auto coords = H[i][k].coordinates(prod, pd);
                        if (!coords)
                            throw Error(ErrorKind::LiftFailure,
                                        "Yoneda composition is not a class within cutoff");
                        for (const auto& [t, c] : *coords)
                            out.composition.emplace_back(name_of(j, k, gi), name_of(i, j, fi),
                                                         name_of(i, k, H[i][k].by_degree.at(pd)[t]),
                                                         c);
                    }

    return validate_dg_category(out);
}

/// Searches for an isomorphism in the homotopy category between two objects of
/// a graded category: a degree-0 class u: x -> y with a two-sided inverse.
inline bool objects_isomorphic(const DGCategory& c, std::size_t x, std::size_t y) {
    const Field f = c.field();
    const auto& mxy = c.mor(x, y);
    const auto& myx = c.mor(y, x);
    std::vector<std::size_t> uxy, uyx;
    for (auto i : mxy.at_degree(0)) uxy.push_back(i);
    for (auto i : myx.at_degree(0)) uyx.push_back(i);
    if (uxy.empty() || uyx.empty()) return false;

    // candidates: basis classes and their sum; for each, solving for a
    // two-sided inverse v is linear
    std::vector<SparseVec> candidates;
    for (auto i : uxy) candidates.push_back(SparseVec{{i, Scalar::one(f)}});
    if (uxy.size() > 1) {
        SparseVec sum;
        for (auto i : uxy) sum.emplace_back(i, Scalar::one(f));
        candidates.push_back(sum);
    }
    const SparseVec& idx_ = c.identity(x);
    const SparseVec& idy_ = c.identity(y);
    for (const auto& u : candidates) {
        // unknowns: coefficients of v over uyx; equations: v∘u = id_x, u∘v = id_y
        std::size_t rows = c.mor(x, x).size() + c.mor(y, y).size();
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> es;
        for (std::size_t vc = 0; vc < uyx.size(); ++vc) {
            SparseVec vu = c.compose_vec(x, y, x, SparseVec{{uyx[vc], Scalar::one(f)}}, u);
            for (const auto& [r, cc] : vu) es.emplace_back(r, vc, cc);
            SparseVec uv = c.compose_vec(y, x, y, u, SparseVec{{uyx[vc], Scalar::one(f)}});
            for (const auto& [r, cc] : uv) es.emplace_back(c.mor(x, x).size() + r, vc, cc);
        }
        SparseVec rhs = idx_;
        for (const auto& [r, cc] : idy_) rhs.emplace_back(c.mor(x, x).size() + r, cc);
        auto m = SparseMatrix::make(rows, uyx.size(), std::move(es));
        if (solve(m, sv_cleanup(SparseVec(rhs)), f)) return true;
    }
    return false;
}

} // namespace dgkit

#endif
