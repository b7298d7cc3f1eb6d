#ifndef DGKIT_CHAIN_COMPLEX_HPP
#define DGKIT_CHAIN_COMPLEX_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dgkit/sparse.hpp"

namespace dgkit {

/// Inclusive degree range.
struct Window {
    int lo;
    int hi;

    bool contains(int d) const { return lo <= d && d <= hi; }
    int span() const { return hi - lo; }

    static Window checked(int lo, int hi) {
        if (lo > hi) throw Error(ErrorKind::EmptyWindow, "window " + std::to_string(lo) + ":" + std::to_string(hi));
        return Window{lo, hi};
    }
    Window intersect(const Window& o) const { return checked(std::max(lo, o.lo), std::min(hi, o.hi)); }
    std::string str() const { return std::to_string(lo) + ":" + std::to_string(hi); }
};

/// Labeled graded basis: unique labels, integer degrees.
struct GradedBasis {
    std::vector<std::string> labels;
    std::vector<int> degrees;

    std::size_t size() const { return labels.size(); }

    void push(const std::string& label, int degree) {
        labels.push_back(label);
        degrees.push_back(degree);
    }

    std::map<std::string, std::size_t> index_map() const {
        std::map<std::string, std::size_t> m;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!m.emplace(labels[i], i).second)
                throw Error(ErrorKind::AxiomViolation, "duplicate basis label", {labels[i]});
        }
        return m;
    }
};

struct Homology {
    std::size_t dim = 0;
    std::vector<SparseVec> representatives;  // cycles over the global basis
};

/// Finite chain complex with labeled basis and degree -1 differential.
/// d*d = 0 is checked on construction.
class ChainComplex {
public:
    ChainComplex(Field field, GradedBasis basis, std::vector<SparseVec> differential)
        : field_(field), basis_(std::move(basis)), diff_(std::move(differential)) {
        index_ = basis_.index_map();
        if (diff_.size() != basis_.size())
            throw Error(ErrorKind::DimensionMismatch, "differential size != basis size");
        for (std::size_t i = 0; i < diff_.size(); ++i) {
            diff_[i] = sv_cleanup(diff_[i]);
            for (const auto& [j, c] : diff_[i]) {
                (void)c;
                if (j >= basis_.size())
                    throw Error(ErrorKind::UnknownLabel, "differential target out of range");
                if (basis_.degrees[j] != basis_.degrees[i] - 1)
                    throw Error(ErrorKind::AxiomViolation, "differential is not of degree -1",
                                {basis_.labels[i], basis_.labels[j]});
            }
        }
        for (std::size_t i = 0; i < diff_.size(); ++i) {
            SparseVec dd;
            for (const auto& [j, c] : diff_[i]) dd = sv_axpy(dd, c, diff_[j]);
            if (!dd.empty())
                throw Error(ErrorKind::AxiomViolation, "d*d != 0", {basis_.labels[i]});
        }
        for (std::size_t i = 0; i < basis_.size(); ++i)
            by_degree_[basis_.degrees[i]].push_back(i);
    }

    const Field& field() const { return field_; }
    const GradedBasis& basis() const { return basis_; }
    std::size_t size() const { return basis_.size(); }
    int degree_of(std::size_t i) const { return basis_.degrees[i]; }
    const std::string& label_of(std::size_t i) const { return basis_.labels[i]; }
    const SparseVec& d(std::size_t i) const { return diff_[i]; }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw Error(ErrorKind::UnknownLabel, "no basis element '" + label + "'");
        return it->second;
    }
    bool has_label(const std::string& label) const { return index_.count(label) != 0; }

    const std::vector<std::size_t>& at_degree(int n) const {
        static const std::vector<std::size_t> empty;
        auto it = by_degree_.find(n);
        return it == by_degree_.end() ? empty : it->second;
    }

    std::vector<int> degrees_present() const {
        std::vector<int> ds;
        for (const auto& [d, v] : by_degree_) {
            (void)v;
            ds.push_back(d);
        }
        return ds;
    }

    SparseVec apply_d(const SparseVec& v) const {
        SparseVec out;
        for (const auto& [i, c] : v) out = sv_axpy(out, c, diff_[i]);
        return out;
    }

    bool is_cycle(const SparseVec& v) const { return apply_d(v).empty(); }

    Homology homology_at(int n) const {
        const auto& here = at_degree(n);
        const auto& below = at_degree(n - 1);
        const auto& above = at_degree(n + 1);

        std::map<std::size_t, std::size_t> loc_here, loc_below;
        for (std::size_t k = 0; k < here.size(); ++k) loc_here[here[k]] = k;
        for (std::size_t k = 0; k < below.size(); ++k) loc_below[below[k]] = k;

        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> es;
        for (std::size_t k = 0; k < here.size(); ++k)
            for (const auto& [j, c] : diff_[here[k]]) es.emplace_back(loc_below.at(j), k, c);
        auto dmat = SparseMatrix::make(below.size(), here.size(), std::move(es));
        auto rki = rank_kernel_image(dmat, field_);

        SpanTracker span(here.size(), field_);
        for (auto i : above) {
            SparseVec b;
            for (const auto& [j, c] : diff_[i]) b.emplace_back(loc_here.at(j), c);
            span.add(sv_cleanup(std::move(b)));
        }
        Homology h;
        for (const auto& z : rki.kernel_basis) {
            if (span.add(z)) {
                SparseVec global;
                for (const auto& [k, c] : z) global.emplace_back(here[k], c);
                h.representatives.push_back(sv_cleanup(std::move(global)));
            }
        }
        h.dim = h.representatives.size();
        return h;
    }

    /// Homology in every supported degree.  Also asserts the Euler
    /// characteristic of homology against the Euler characteristic of the
    /// basis (field coefficients) as an internal consistency check.
    std::map<int, std::size_t> homology_table() const {
        std::map<int, std::size_t> h;
        long chi_basis = 0, chi_h = 0;
        for (const auto& [d, idx] : by_degree_) {
            std::size_t dim = homology_at(d).dim;
            if (dim != 0) h[d] = dim;
            chi_basis += (d % 2 == 0 ? 1 : -1) * static_cast<long>(idx.size());
            chi_h += (d % 2 == 0 ? 1 : -1) * static_cast<long>(dim);
        }
        if (chi_basis != chi_h)
            throw Error(ErrorKind::Internal, "Euler characteristic mismatch between basis and homology");
        return h;
    }

    /// Is v a boundary?  Decided by a linear solve against d restricted to the
    /// degree above.
    bool is_boundary(const SparseVec& v) const {
        if (v.empty()) return true;
        int n = basis_.degrees[v.front().first];
        const auto& here = at_degree(n);
        const auto& above = at_degree(n + 1);
        std::map<std::size_t, std::size_t> loc_here;
        for (std::size_t k = 0; k < here.size(); ++k) loc_here[here[k]] = k;
        std::vector<SparseVec> cols;
        for (auto i : above) {
            SparseVec b;
            for (const auto& [j, c] : diff_[i]) b.emplace_back(loc_here.at(j), c);
            cols.push_back(sv_cleanup(std::move(b)));
        }
        SparseVec rhs;
        for (const auto& [i, c] : v) rhs.emplace_back(loc_here.at(i), c);
        auto m = SparseMatrix::from_columns(cols, here.size());
        return solve(m, sv_cleanup(std::move(rhs)), field_).has_value();
    }

    std::string format(const SparseVec& v) const {
        if (v.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0) out += " + ";
            const auto& [i, c] = v[k];
            if (c.is_one()) out += basis_.labels[i];
            else out += "(" + c.str() + ")" + basis_.labels[i];
        }
        return out;
    }

private:
    Field field_;
    GradedBasis basis_;
    std::vector<SparseVec> diff_;
    std::map<std::string, std::size_t> index_;
    std::map<int, std::vector<std::size_t>> by_degree_;
};

inline ChainComplex unit_complex(const Field& f, const std::string& label = "1") {
    GradedBasis b;
    b.push(label, 0);
    return ChainComplex(f, std::move(b), {SparseVec{}});
}

/// Tensor product with the Koszul sign rule:
/// d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db.
inline ChainComplex tensor_complex(const ChainComplex& c, const ChainComplex& d) {
    if (c.field() != d.field()) throw Error(ErrorKind::DimensionMismatch, "field mismatch");
    const Field f = c.field();
    GradedBasis basis;
    auto pair_index = [&](std::size_t i, std::size_t j) { return i * d.size() + j; };
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            basis.push(c.label_of(i) + "⊗" + d.label_of(j), c.degree_of(i) + d.degree_of(j));
    std::vector<SparseVec> diff(basis.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            std::vector<std::pair<std::size_t, Scalar>> terms;
            for (const auto& [i2, x] : c.d(i)) terms.emplace_back(pair_index(i2, j), x);
            Scalar sgn = sign_scalar(c.degree_of(i), f);
            for (const auto& [j2, x] : d.d(j)) terms.emplace_back(pair_index(i, j2), sgn * x);
            diff[pair_index(i, j)] = sv_cleanup(std::move(terms));
        }
    }
    return ChainComplex(f, std::move(basis), std::move(diff));
}

/// Hom complex: degree-n part consists of maps raising degree by n;
/// the differential is delta(f) = d of - (-1)^{|f|} f od.
inline ChainComplex hom_complex(const ChainComplex& c, const ChainComplex& d) {
    if (c.field() != d.field()) throw Error(ErrorKind::DimensionMismatch, "field mismatch");
    const Field f = c.field();
    GradedBasis basis;
    auto pair_index = [&](std::size_t i, std::size_t j) { return i * d.size() + j; };
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            basis.push("[" + c.label_of(i) + "=>" + d.label_of(j) + "]",
                       d.degree_of(j) - c.degree_of(i));
    // transpose of c's differential: which x have i in d(x)
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> into(c.size());
    for (std::size_t x = 0; x < c.size(); ++x)
        for (const auto& [i, coef] : c.d(x)) into[i].emplace_back(x, coef);
    std::vector<SparseVec> diff(basis.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            std::vector<std::pair<std::size_t, Scalar>> terms;
            for (const auto& [j2, x] : d.d(j)) terms.emplace_back(pair_index(i, j2), x);
            Scalar sgn = -sign_scalar(d.degree_of(j) - c.degree_of(i), f);
            for (const auto& [x, coef] : into[i]) terms.emplace_back(pair_index(x, j), sgn * coef);
            diff[pair_index(i, j)] = sv_cleanup(std::move(terms));
        }
    }
    return ChainComplex(f, std::move(basis), std::move(diff));
}

/// Degree shift by m; the shifted differential carries the sign (-1)^m.
/// Labels are preserved, so shift(shift(c, m), -m) == c.
inline ChainComplex shift_complex(const ChainComplex& c, int m) {
    GradedBasis basis;
    for (std::size_t i = 0; i < c.size(); ++i) basis.push(c.label_of(i), c.degree_of(i) + m);
    std::vector<SparseVec> diff(c.size());
    Scalar sgn = sign_scalar(m, c.field());
    for (std::size_t i = 0; i < c.size(); ++i) diff[i] = sv_scale(c.d(i), sgn);
    return ChainComplex(c.field(), std::move(basis), std::move(diff));
}

inline bool same_complex(const ChainComplex& a, const ChainComplex& b) {
    if (a.field() != b.field() || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.label_of(i) != b.label_of(i) || a.degree_of(i) != b.degree_of(i)) return false;
        if (a.d(i) != b.d(i)) return false;
    }
    return true;
}

} // namespace dgkit

#endif
