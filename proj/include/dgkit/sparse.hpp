#ifndef DGKIT_SPARSE_HPP
#define DGKIT_SPARSE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "dgkit/scalar.hpp"

namespace dgkit {

/// Sparse vector: (index, coefficient) pairs sorted by index, no zero entries.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

inline SparseVec sv_cleanup(std::vector<std::pair<std::size_t, Scalar>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second.is_zero(); }),
              out.end());
    return out;
}

inline Scalar sv_get(const SparseVec& v, std::size_t i, const Field& f) {
    auto it = std::lower_bound(v.begin(), v.end(), i,
                               [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != v.end() && it->first == i) return it->second;
    return Scalar::zero(f);
}

inline SparseVec sv_scale(const SparseVec& v, const Scalar& c) {
    if (c.is_zero()) return {};
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) out.emplace_back(i, x * c);
    return out;
}

/// a + c*b, merged.
inline SparseVec sv_axpy(const SparseVec& a, const Scalar& c, const SparseVec& b) {
    if (c.is_zero()) return a;
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Scalar s = a[i].second + c * b[j].second;
            if (!s.is_zero()) out.emplace_back(a[i].first, s);
            ++i;
            ++j;
        }
    }
    return out;
}

inline SparseVec sv_add(const SparseVec& a, const SparseVec& b, const Field& f) {
    return sv_axpy(a, Scalar::one(f), b);
}

/// Sparse matrix: entry list sorted by (row, col), indices in range, no zeros,
/// no duplicates.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> entries;

    static SparseMatrix make(std::size_t rows, std::size_t cols,
                             std::vector<std::tuple<std::size_t, std::size_t, Scalar>> entries) {
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            return std::make_pair(std::get<0>(a), std::get<1>(a)) <
                   std::make_pair(std::get<0>(b), std::get<1>(b));
        });
        for (std::size_t i = 0; i < entries.size(); ++i) {
            auto [r, c, v] = entries[i];
            if (r >= rows || c >= cols)
                throw Error(ErrorKind::DimensionMismatch, "matrix entry out of range");
            if (v.is_zero())
                throw Error(ErrorKind::DimensionMismatch, "explicit zero entry in sparse matrix");
            if (i > 0 && std::get<0>(entries[i - 1]) == r && std::get<1>(entries[i - 1]) == c)
                throw Error(ErrorKind::DimensionMismatch, "duplicate entry in sparse matrix");
        }
        SparseMatrix m;
        m.rows = rows;
        m.cols = cols;
        m.entries = std::move(entries);
        return m;
    }

    static SparseMatrix from_rows(const std::vector<SparseVec>& row_vecs, std::size_t cols) {
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> es;
        for (std::size_t r = 0; r < row_vecs.size(); ++r)
            for (const auto& [c, v] : row_vecs[r]) es.emplace_back(r, c, v);
        return make(row_vecs.size(), cols, std::move(es));
    }

    /// Columns of the matrix as the given vectors in k^rows.
    static SparseMatrix from_columns(const std::vector<SparseVec>& col_vecs, std::size_t rows) {
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> es;
        for (std::size_t c = 0; c < col_vecs.size(); ++c)
            for (const auto& [r, v] : col_vecs[c]) es.emplace_back(r, c, v);
        return make(rows, col_vecs.size(), std::move(es));
    }

    std::vector<SparseVec> row_vectors() const {
        std::vector<SparseVec> rv(rows);
        for (const auto& [r, c, v] : entries) rv[r].emplace_back(c, v);
        return rv;
    }

    SparseMatrix transposed() const {
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> es;
        es.reserve(entries.size());
        for (const auto& [r, c, v] : entries) es.emplace_back(c, r, v);
        return make(cols, rows, std::move(es));
    }

    /// Matrix-vector product A·x for x in k^cols.
    SparseVec apply(const SparseVec& x) const {
        const Field f = field_hint();
        std::vector<std::pair<std::size_t, Scalar>> terms;
        auto rv = row_vectors();
        for (std::size_t r = 0; r < rows; ++r) {
            Scalar acc = Scalar::zero(f);
            std::size_t i = 0, j = 0;
            const auto& row = rv[r];
            while (i < row.size() && j < x.size()) {
                if (row[i].first < x[j].first) ++i;
                else if (x[j].first < row[i].first) ++j;
                else { acc += row[i].second * x[j].second; ++i; ++j; }
            }
            if (!acc.is_zero()) terms.emplace_back(r, acc);
        }
        return sv_cleanup(std::move(terms));
    }

    Field field_hint() const {
        return entries.empty() ? Field::Q() : std::get<2>(entries.front()).field();
    }
};

namespace detail {

struct RrefResult {
    std::vector<SparseVec> rows;          // nonzero echelon rows, pivots = 1, one per pivot col
    std::vector<std::size_t> pivot_cols;  // strictly increasing
};

/// Exact Gauss-Jordan to reduced row echelon form.  Pivot order is
/// deterministic: columns ascending; within a column, the unused row with the
/// smallest original index.
inline RrefResult rref(std::vector<SparseVec> work, std::size_t cols, const Field& f) {
    const std::size_t n = work.size();
    std::vector<bool> used(n, false);
    std::vector<std::size_t> pivot_row_of_col;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t pick = n;
        for (std::size_t r = 0; r < n; ++r) {
            if (used[r]) continue;
            if (!sv_get(work[r], c, f).is_zero()) { pick = r; break; }
        }
        if (pick == n) continue;
        Scalar pv = sv_get(work[pick], c, f);
        work[pick] = sv_scale(work[pick], pv.inverse());
        for (std::size_t r = 0; r < n; ++r) {
            if (r == pick) continue;
            Scalar x = sv_get(work[r], c, f);
            if (!x.is_zero()) work[r] = sv_axpy(work[r], -x, work[pick]);
        }
        used[pick] = true;
        pivot_cols.push_back(c);
        pivot_row_of_col.push_back(pick);
    }
    RrefResult res;
    res.pivot_cols = pivot_cols;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
        res.rows.push_back(work[pivot_row_of_col[i]]);
    return res;
}

} // namespace detail

struct RankKernelImage {
    std::size_t rank = 0;
    std::vector<SparseVec> kernel_basis;  // vectors in k^cols, echelonized
    std::vector<SparseVec> image_basis;   // vectors in k^rows, echelonized column space
};

/// Rank, kernel and image of the linear map k^cols -> k^rows given by m.
inline RankKernelImage rank_kernel_image(const SparseMatrix& m, const Field& f) {
    RankKernelImage out;
    auto r = detail::rref(m.row_vectors(), m.cols, f);
    out.rank = r.pivot_cols.size();

    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<std::pair<std::size_t, Scalar>> terms;
        terms.emplace_back(c, Scalar::one(f));
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
            Scalar x = sv_get(r.rows[i], c, f);
            if (!x.is_zero()) terms.emplace_back(r.pivot_cols[i], -x);
        }
        out.kernel_basis.push_back(sv_cleanup(std::move(terms)));
    }

    auto rt = detail::rref(m.transposed().row_vectors(), m.rows, f);
    if (rt.pivot_cols.size() != out.rank)
        throw Error(ErrorKind::Internal, "rank(m) != rank(transpose(m))");
    out.image_basis = rt.rows;
    if (out.rank + out.kernel_basis.size() != m.cols)
        throw Error(ErrorKind::Internal, "rank-nullity violated");
    return out;
}

/// Coset representatives completing `sub` to a basis of k^ambient_dim:
/// standard basis vectors taken greedily in index order.
inline std::vector<SparseVec> quotient_basis(const std::vector<SparseVec>& sub,
                                             std::size_t ambient_dim, const Field& f) {
    for (const auto& v : sub)
        for (const auto& [i, x] : v) {
            (void)x;
            if (i >= ambient_dim)
                throw Error(ErrorKind::DimensionMismatch, "subspace vector exceeds ambient dimension");
        }
    auto ech = detail::rref(sub, ambient_dim, f);
    std::vector<SparseVec> rows = ech.rows;
    std::vector<std::size_t> pivots = ech.pivot_cols;
    std::vector<SparseVec> reps;
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        if (rows.size() == ambient_dim) break;
        SparseVec v{{i, Scalar::one(f)}};
        SparseVec red = v;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            Scalar x = sv_get(red, pivots[k], f);
            if (!x.is_zero()) red = sv_axpy(red, -x, rows[k]);
        }
        if (red.empty()) continue;
        reps.push_back(v);
        Scalar lead = red.front().second;
        red = sv_scale(red, lead.inverse());
        std::size_t pc = red.front().first;
        auto pos = std::lower_bound(pivots.begin(), pivots.end(), pc);
        std::size_t at = static_cast<std::size_t>(pos - pivots.begin());
        pivots.insert(pos, pc);
        rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(at), red);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == at) continue;
            Scalar x = sv_get(rows[k], pc, f);
            if (!x.is_zero()) rows[k] = sv_axpy(rows[k], -x, rows[at]);
        }
    }
    return reps;
}

/// Solves A·x = b exactly.  Returns the pivot-based particular solution (free
/// variables zero), or nullopt if inconsistent.
inline std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b, const Field& f) {
    auto rows = a.row_vectors();
    for (const auto& [i, v] : b) {
        if (i >= a.rows) throw Error(ErrorKind::DimensionMismatch, "rhs exceeds row count");
        rows[i].emplace_back(a.cols, v);
    }
    auto r = detail::rref(std::move(rows), a.cols + 1, f);
    std::vector<std::pair<std::size_t, Scalar>> terms;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
        if (r.pivot_cols[i] == a.cols) return std::nullopt;  // 0 = 1 row
        Scalar rhs = sv_get(r.rows[i], a.cols, f);
        if (!rhs.is_zero()) terms.emplace_back(r.pivot_cols[i], rhs);
    }
    return sv_cleanup(std::move(terms));
}

/// Incremental echelon span tracker over k^dim.
class SpanTracker {
public:
    SpanTracker(std::size_t dim, const Field& f) : dim_(dim), field_(f) {}

    /// Adds v to the span; returns true if v was independent of the current span.
    bool add(const SparseVec& v) {
        SparseVec red = reduce(v);
        if (red.empty()) return false;
        Scalar lead = red.front().second;
        red = sv_scale(red, lead.inverse());
        std::size_t pc = red.front().first;
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pc);
        std::size_t at = static_cast<std::size_t>(pos - pivots_.begin());
        pivots_.insert(pos, pc);
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), red);
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (k == at) continue;
            Scalar x = sv_get(rows_[k], pc, field_);
            if (!x.is_zero()) rows_[k] = sv_axpy(rows_[k], -x, rows_[at]);
        }
        return true;
    }

    SparseVec reduce(SparseVec v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Scalar x = sv_get(v, pivots_[k], field_);
            if (!x.is_zero()) v = sv_axpy(v, -x, rows_[k]);
        }
        return v;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

private:
    std::size_t dim_;
    Field field_;
    std::vector<SparseVec> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace dgkit

#endif
