#ifndef DGKIT_DG_ALGEBRA_HPP
#define DGKIT_DG_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dgkit/chain_complex.hpp"

namespace dgkit {

/// Raw algebra description, as parsed from a document or built in code.
struct AlgebraData {
    Field field;
    GradedBasis basis;
    std::string unit_label;
    // (src, dst, coeff) triples of the differential
    std::vector<std::tuple<std::string, std::string, Scalar>> differential;
    // (a, b, result, coeff) quadruples of the multiplication
    std::vector<std::tuple<std::string, std::string, std::string, Scalar>> multiplication;
    // optional (label, value) pairs of the augmentation; pairs omitted are zero
    std::optional<std::vector<std::pair<std::string, Scalar>>> augmentation;
    std::optional<Window> truncation;  // present when the algebra is a window truncation
};

/// Differential graded algebra over explicit structure constants.  Immutable
/// once validated; every axiom (degrees, d^2, unit, associativity, Leibniz,
/// augmentation laws) holds on the full basis.
class DGAlgebra {
public:
    friend DGAlgebra validate_dga(const AlgebraData&);

    const ChainComplex& complex() const { return *cx_; }
    const Field& field() const { return cx_->field(); }
    std::size_t size() const { return cx_->size(); }
    std::size_t unit() const { return unit_; }
    int degree_of(std::size_t i) const { return cx_->degree_of(i); }
    const std::string& label_of(std::size_t i) const { return cx_->label_of(i); }
    const SparseVec& d(std::size_t i) const { return cx_->d(i); }
    const SparseVec& mul(std::size_t i, std::size_t j) const { return mult_[i][j]; }

    SparseVec mul_vec(const SparseVec& u, const SparseVec& v) const {
        SparseVec out;
        for (const auto& [i, a] : u)
            for (const auto& [j, b] : v) out = sv_axpy(out, a * b, mult_[i][j]);
        return out;
    }

    bool is_augmented() const { return aug_.has_value(); }

    Scalar aug(std::size_t i) const {
        require_augmented();
        return (*aug_)[i];
    }
    Scalar aug_vec(const SparseVec& v) const {
        require_augmented();
        Scalar s = Scalar::zero(field());
        for (const auto& [i, c] : v) s += c * (*aug_)[i];
        return s;
    }
    void require_augmented() const {
        if (!aug_) throw Error(ErrorKind::MissingAugmentation,
                               "algebra has no augmentation (bar-ineligible)");
    }

    /// Basis indices other than the unit; these coordinatize the normalized
    /// (reduced) slots of bar and Hochschild words.
    const std::vector<std::size_t>& reduced_indices() const { return reduced_; }

    const std::optional<Window>& truncation() const { return trunc_; }

    AlgebraData data() const {
        AlgebraData d;
        d.field = field();
        d.basis = cx_->basis();
        d.unit_label = label_of(unit_);
        for (std::size_t i = 0; i < size(); ++i)
            for (const auto& [j, c] : cx_->d(i))
                d.differential.emplace_back(label_of(i), label_of(j), c);
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                for (const auto& [k, c] : mult_[i][j])
                    d.multiplication.emplace_back(label_of(i), label_of(j), label_of(k), c);
        if (aug_) {
            std::vector<std::pair<std::string, Scalar>> pairs;
            for (std::size_t i = 0; i < size(); ++i)
                if (!(*aug_)[i].is_zero()) pairs.emplace_back(label_of(i), (*aug_)[i]);
            d.augmentation = std::move(pairs);
        }
        d.truncation = trunc_;
        return d;
    }

private:
    DGAlgebra(ChainComplex cx, std::size_t unit, std::vector<std::vector<SparseVec>> mult,
              std::optional<std::vector<Scalar>> aug, std::optional<Window> trunc)
        : cx_(std::make_shared<ChainComplex>(std::move(cx))), unit_(unit),
          mult_(std::move(mult)), aug_(std::move(aug)), trunc_(trunc) {
        for (std::size_t i = 0; i < cx_->size(); ++i)
            if (i != unit_) reduced_.push_back(i);
    }

    std::shared_ptr<const ChainComplex> cx_;
    std::size_t unit_;
    std::vector<std::vector<SparseVec>> mult_;
    std::optional<std::vector<Scalar>> aug_;
    std::optional<Window> trunc_;
    std::vector<std::size_t> reduced_;
};

/// Validates an algebra description.  Returns the algebra only if every axiom
/// holds; otherwise throws AxiomViolation naming the first violated axiom and
/// the witness basis elements.
inline DGAlgebra validate_dga(const AlgebraData& spec) {
    auto index = spec.basis.index_map();
    auto lookup = [&](const std::string& l) -> std::size_t {
        auto it = index.find(l);
        if (it == index.end()) throw Error(ErrorKind::UnknownLabel, "no basis element '" + l + "'");
        return it->second;
    };
    const std::size_t n = spec.basis.size();
    const Field f = spec.field;

    std::vector<std::vector<std::pair<std::size_t, Scalar>>> draw(n);
    for (const auto& [src, dst, c] : spec.differential)
        draw[lookup(src)].emplace_back(lookup(dst), c);
    std::vector<SparseVec> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = sv_cleanup(std::move(draw[i]));
    ChainComplex cx(f, spec.basis, std::move(diff));  // checks degrees and d^2 = 0

    std::size_t unit = lookup(spec.unit_label);
    if (cx.degree_of(unit) != 0)
        throw Error(ErrorKind::AxiomViolation, "unit must have degree 0", {spec.unit_label});

    std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> mraw(
        n, std::vector<std::vector<std::pair<std::size_t, Scalar>>>(n));
    for (const auto& [a, b, r, c] : spec.multiplication)
        mraw[lookup(a)][lookup(b)].emplace_back(lookup(r), c);
    std::vector<std::vector<SparseVec>> mult(n, std::vector<SparseVec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            mult[i][j] = sv_cleanup(std::move(mraw[i][j]));
            for (const auto& [k, c] : mult[i][j]) {
                (void)c;
                if (cx.degree_of(k) != cx.degree_of(i) + cx.degree_of(j))
                    throw Error(ErrorKind::AxiomViolation, "multiplication is not degree-additive",
                                {cx.label_of(i), cx.label_of(j), cx.label_of(k)});
            }
        }

    auto mul_vec = [&](const SparseVec& u, const SparseVec& v) {
        SparseVec out;
        for (const auto& [i, a] : u)
            for (const auto& [j, b] : v) out = sv_axpy(out, a * b, mult[i][j]);
        return out;
    };

    const Scalar one = Scalar::one(f);
    for (std::size_t i = 0; i < n; ++i) {
        SparseVec e{{i, one}};
        if (mult[unit][i] != e || mult[i][unit] != e)
            throw Error(ErrorKind::AxiomViolation, "unit law", {cx.label_of(i)});
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            SparseVec lhs = cx.apply_d(mult[i][j]);
            SparseVec rhs = mul_vec(cx.d(i), {{j, one}});
            rhs = sv_axpy(rhs, sign_scalar(cx.degree_of(i), f), mul_vec({{i, one}}, cx.d(j)));
            if (lhs != rhs)
                throw Error(ErrorKind::AxiomViolation, "Leibniz", {cx.label_of(i), cx.label_of(j)});
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                SparseVec lhs = mul_vec(mult[i][j], {{k, one}});
                SparseVec rhs = mul_vec({{i, one}}, mult[j][k]);
                if (lhs != rhs)
                    throw Error(ErrorKind::AxiomViolation, "associativity",
                                {cx.label_of(i), cx.label_of(j), cx.label_of(k)});
            }

    std::optional<std::vector<Scalar>> aug;
    if (spec.augmentation) {
        std::vector<Scalar> eps(n, Scalar::zero(f));
        for (const auto& [l, c] : *spec.augmentation) eps[lookup(l)] = c;
        auto eps_vec = [&](const SparseVec& v) {
            Scalar s = Scalar::zero(f);
            for (const auto& [i, c] : v) s += c * eps[i];
            return s;
        };
        if (!eps[unit].is_one())
            throw Error(ErrorKind::AxiomViolation, "augmentation must send the unit to 1",
                        {spec.unit_label});
        for (std::size_t i = 0; i < n; ++i)
            if (cx.degree_of(i) != 0 && !eps[i].is_zero())
                throw Error(ErrorKind::AxiomViolation, "augmentation must vanish off degree 0",
                            {cx.label_of(i)});
        for (std::size_t i = 0; i < n; ++i)
            if (!eps_vec(cx.d(i)).is_zero())
                throw Error(ErrorKind::AxiomViolation, "augmentation must kill the differential",
                            {cx.label_of(i)});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (eps_vec(mult[i][j]) != eps[i] * eps[j])
                    throw Error(ErrorKind::AxiomViolation, "augmentation must be multiplicative",
                                {cx.label_of(i), cx.label_of(j)});
        aug = std::move(eps);
    }

    return DGAlgebra(std::move(cx), unit, std::move(mult), std::move(aug), spec.truncation);
}

/// Graded opposite algebra: a *op b = (-1)^{|a||b|} b * a.  Labels preserved.
inline DGAlgebra opposite(const DGAlgebra& a) {
    AlgebraData d = a.data();
    d.multiplication.clear();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            Scalar sgn = sign_scalar(a.degree_of(i) * a.degree_of(j), a.field());
            for (const auto& [k, c] : a.mul(j, i))
                d.multiplication.emplace_back(a.label_of(i), a.label_of(j), a.label_of(k), sgn * c);
        }
    return validate_dga(d);
}

/// Degree-window truncation: basis restricted to the window, products and
/// differentials landing outside dropped.  The result is again a valid DGA
/// and carries the window as its reliability marker.
inline DGAlgebra truncate(const DGAlgebra& a, Window window) {
    if (!window.contains(0))
        throw Error(ErrorKind::WindowTooSmall, "truncation window must contain degree 0 (the unit)");
    AlgebraData src = a.data();
    AlgebraData d;
    d.field = src.field;
    d.unit_label = src.unit_label;
    std::set<std::string> kept;
    for (std::size_t i = 0; i < src.basis.size(); ++i)
        if (window.contains(src.basis.degrees[i])) {
            d.basis.push(src.basis.labels[i], src.basis.degrees[i]);
            kept.insert(src.basis.labels[i]);
        }
    for (const auto& [s, t, c] : src.differential)
        if (kept.count(s) && kept.count(t)) d.differential.emplace_back(s, t, c);
    for (const auto& [x, y, r, c] : src.multiplication)
        if (kept.count(x) && kept.count(y) && kept.count(r)) d.multiplication.emplace_back(x, y, r, c);
    if (src.augmentation) {
        std::vector<std::pair<std::string, Scalar>> pairs;
        for (const auto& [l, c] : *src.augmentation)
            if (kept.count(l)) pairs.emplace_back(l, c);
        d.augmentation = std::move(pairs);
    }
    d.truncation = a.truncation() ? a.truncation()->intersect(window) : window;
    return validate_dga(d);
}

enum class ModuleSide { Left, Right, Bimodule };

struct ModuleData {
    GradedBasis basis;
    ModuleSide side = ModuleSide::Left;
    // (src, dst, coeff) triples of the module differential
    std::vector<std::tuple<std::string, std::string, Scalar>> differential;
    // (a, m, result, coeff): a·m entries (left/bimodule)
    std::vector<std::tuple<std::string, std::string, std::string, Scalar>> left_action;
    // (m, a, result, coeff): m·a entries (right/bimodule)
    std::vector<std::tuple<std::string, std::string, std::string, Scalar>> right_action;
    std::optional<Window> truncation;
};

/// DG-module over a DGAlgebra, with validated action axioms.
class DGModule {
public:
    friend DGModule validate_module(const DGAlgebra&, const ModuleData&);

    const DGAlgebra& algebra() const { return algebra_; }
    const ChainComplex& complex() const { return *cx_; }
    ModuleSide side() const { return side_; }
    std::size_t size() const { return cx_->size(); }
    int degree_of(std::size_t i) const { return cx_->degree_of(i); }
    const std::string& label_of(std::size_t i) const { return cx_->label_of(i); }
    const SparseVec& d(std::size_t i) const { return cx_->d(i); }

    bool has_left() const { return side_ == ModuleSide::Left || side_ == ModuleSide::Bimodule; }
    bool has_right() const { return side_ == ModuleSide::Right || side_ == ModuleSide::Bimodule; }

    const SparseVec& act_left(std::size_t alg_i, std::size_t mod_j) const { return left_[alg_i][mod_j]; }
    const SparseVec& act_right(std::size_t mod_j, std::size_t alg_i) const { return right_[alg_i][mod_j]; }

    SparseVec act_left_vec(const SparseVec& a, const SparseVec& m) const {
        SparseVec out;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : m) out = sv_axpy(out, x * y, left_[i][j]);
        return out;
    }
    SparseVec act_right_vec(const SparseVec& m, const SparseVec& a) const {
        SparseVec out;
        for (const auto& [j, y] : m)
            for (const auto& [i, x] : a) out = sv_axpy(out, y * x, right_[i][j]);
        return out;
    }

    const std::optional<Window>& truncation() const { return trunc_; }

private:
    DGModule(DGAlgebra alg, ChainComplex cx, ModuleSide side,
             std::vector<std::vector<SparseVec>> left, std::vector<std::vector<SparseVec>> right,
             std::optional<Window> trunc)
        : algebra_(std::move(alg)), cx_(std::make_shared<ChainComplex>(std::move(cx))),
          side_(side), left_(std::move(left)), right_(std::move(right)), trunc_(trunc) {}

    DGAlgebra algebra_;
    std::shared_ptr<const ChainComplex> cx_;
    ModuleSide side_;
    std::vector<std::vector<SparseVec>> left_;   // [alg][mod]
    std::vector<std::vector<SparseVec>> right_;  // [alg][mod]
    std::optional<Window> trunc_;
};

inline DGModule validate_module(const DGAlgebra& a, const ModuleData& spec) {
    auto aindex = a.complex().basis().index_map();
    auto mindex = spec.basis.index_map();
    auto alook = [&](const std::string& l) -> std::size_t {
        auto it = aindex.find(l);
        if (it == aindex.end()) throw Error(ErrorKind::UnknownLabel, "no algebra element '" + l + "'");
        return it->second;
    };
    auto mlook = [&](const std::string& l) -> std::size_t {
        auto it = mindex.find(l);
        if (it == mindex.end()) throw Error(ErrorKind::UnknownLabel, "no module element '" + l + "'");
        return it->second;
    };
    const Field f = a.field();
    const std::size_t na = a.size(), nm = spec.basis.size();
    const Scalar one = Scalar::one(f);

    std::vector<std::vector<std::pair<std::size_t, Scalar>>> draw(nm);
    for (const auto& [src, dst, c] : spec.differential)
        draw[mlook(src)].emplace_back(mlook(dst), c);
    std::vector<SparseVec> diff(nm);
    for (std::size_t i = 0; i < nm; ++i) diff[i] = sv_cleanup(std::move(draw[i]));
    ChainComplex cx(f, spec.basis, std::move(diff));

    const bool want_left = spec.side != ModuleSide::Right;
    const bool want_right = spec.side != ModuleSide::Left;

    std::vector<std::vector<SparseVec>> left(na, std::vector<SparseVec>(nm));
    std::vector<std::vector<SparseVec>> right(na, std::vector<SparseVec>(nm));
    {
        std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> lr(
            na, std::vector<std::vector<std::pair<std::size_t, Scalar>>>(nm)), rr = lr;
        for (const auto& [al, ml, res, c] : spec.left_action)
            lr[alook(al)][mlook(ml)].emplace_back(mlook(res), c);
        for (const auto& [ml, al, res, c] : spec.right_action)
            rr[alook(al)][mlook(ml)].emplace_back(mlook(res), c);
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nm; ++j) {
                left[i][j] = sv_cleanup(std::move(lr[i][j]));
                right[i][j] = sv_cleanup(std::move(rr[i][j]));
                for (const auto& [k, c] : left[i][j]) {
                    (void)c;
                    if (cx.degree_of(k) != a.degree_of(i) + cx.degree_of(j))
                        throw Error(ErrorKind::AxiomViolation, "left action is not degree-additive",
                                    {a.label_of(i), cx.label_of(j)});
                }
                for (const auto& [k, c] : right[i][j]) {
                    (void)c;
                    if (cx.degree_of(k) != a.degree_of(i) + cx.degree_of(j))
                        throw Error(ErrorKind::AxiomViolation, "right action is not degree-additive",
                                    {cx.label_of(j), a.label_of(i)});
                }
            }
    }

    auto lact = [&](const SparseVec& av, const SparseVec& mv) {
        SparseVec out;
        for (const auto& [i, x] : av)
            for (const auto& [j, y] : mv) out = sv_axpy(out, x * y, left[i][j]);
        return out;
    };
    auto ract = [&](const SparseVec& mv, const SparseVec& av) {
        SparseVec out;
        for (const auto& [j, y] : mv)
            for (const auto& [i, x] : av) out = sv_axpy(out, y * x, right[i][j]);
        return out;
    };

    if (want_left) {
        for (std::size_t j = 0; j < nm; ++j) {
            SparseVec e{{j, one}};
            if (left[a.unit()][j] != e)
                throw Error(ErrorKind::AxiomViolation, "left unit action", {cx.label_of(j)});
        }
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t i2 = 0; i2 < na; ++i2)
                for (std::size_t j = 0; j < nm; ++j) {
                    SparseVec lhs = lact(a.mul(i, i2), {{j, one}});
                    SparseVec rhs = lact({{i, one}}, left[i2][j]);
                    if (lhs != rhs)
                        throw Error(ErrorKind::AxiomViolation, "left action associativity",
                                    {a.label_of(i), a.label_of(i2), cx.label_of(j)});
                }
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nm; ++j) {
                SparseVec lhs = cx.apply_d(left[i][j]);
                SparseVec rhs = lact(a.d(i), {{j, one}});
                rhs = sv_axpy(rhs, sign_scalar(a.degree_of(i), f), lact({{i, one}}, cx.d(j)));
                if (lhs != rhs)
                    throw Error(ErrorKind::AxiomViolation, "left action Leibniz",
                                {a.label_of(i), cx.label_of(j)});
            }
    }
    if (want_right) {
        for (std::size_t j = 0; j < nm; ++j) {
            SparseVec e{{j, one}};
            if (right[a.unit()][j] != e)
                throw Error(ErrorKind::AxiomViolation, "right unit action", {cx.label_of(j)});
        }
        for (std::size_t j = 0; j < nm; ++j)
            for (std::size_t i = 0; i < na; ++i)
                for (std::size_t i2 = 0; i2 < na; ++i2) {
                    SparseVec lhs = ract({{j, one}}, a.mul(i, i2));
                    SparseVec rhs = ract(right[i][j], {{i2, one}});
                    if (lhs != rhs)
                        throw Error(ErrorKind::AxiomViolation, "right action associativity",
                                    {cx.label_of(j), a.label_of(i), a.label_of(i2)});
                }
        for (std::size_t j = 0; j < nm; ++j)
            for (std::size_t i = 0; i < na; ++i) {
                SparseVec lhs = cx.apply_d(right[i][j]);
                SparseVec rhs = ract(cx.d(j), {{i, one}});
                rhs = sv_axpy(rhs, sign_scalar(cx.degree_of(j), f), ract({{j, one}}, a.d(i)));
                if (lhs != rhs)
                    throw Error(ErrorKind::AxiomViolation, "right action Leibniz",
                                {cx.label_of(j), a.label_of(i)});
            }
    }
    if (spec.side == ModuleSide::Bimodule) {
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nm; ++j)
                for (std::size_t i2 = 0; i2 < na; ++i2) {
                    SparseVec lhs = ract(left[i][j], {{i2, one}});
                    SparseVec rhs = lact({{i, one}}, right[i2][j]);
                    if (lhs != rhs)
                        throw Error(ErrorKind::AxiomViolation, "bimodule compatibility",
                                    {a.label_of(i), cx.label_of(j), a.label_of(i2)});
                }
    }

    return DGModule(a, std::move(cx), spec.side, std::move(left), std::move(right),
                    spec.truncation ? spec.truncation : a.truncation());
}

/// The algebra as a module over itself.
inline DGModule as_module(const DGAlgebra& a, ModuleSide side) {
    ModuleData d;
    d.basis = a.complex().basis();
    d.side = side;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& [j, c] : a.d(i)) d.differential.emplace_back(a.label_of(i), a.label_of(j), c);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            for (const auto& [k, c] : a.mul(i, j)) {
                if (side != ModuleSide::Right)
                    d.left_action.emplace_back(a.label_of(i), a.label_of(j), a.label_of(k), c);
                if (side != ModuleSide::Left)
                    d.right_action.emplace_back(a.label_of(i), a.label_of(j), a.label_of(k), c);
            }
    d.truncation = a.truncation();
    return validate_module(a, d);
}

/// The trivial module k, with the action through the augmentation.
inline DGModule trivial_module(const DGAlgebra& a, ModuleSide side, const std::string& label = "k") {
    a.require_augmented();
    ModuleData d;
    d.basis.push(label, 0);
    d.side = side;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Scalar e = a.aug(i);
        if (e.is_zero()) continue;
        if (side != ModuleSide::Right) d.left_action.emplace_back(a.label_of(i), label, label, e);
        if (side != ModuleSide::Left) d.right_action.emplace_back(label, a.label_of(i), label, e);
    }
    return validate_module(a, d);
}

/// Free module on generators (label, degree): basis elements e_i·g with the
/// action on the algebra factor.
inline DGModule free_module(const DGAlgebra& a, ModuleSide side,
                            const std::vector<std::pair<std::string, int>>& generators) {
    if (side == ModuleSide::Bimodule)
        throw Error(ErrorKind::Internal, "free bimodules not supported");
    ModuleData d;
    d.side = side;
    auto name = [&](std::size_t i, const std::string& g) {
        return side == ModuleSide::Left ? a.label_of(i) + "·" + g : g + "·" + a.label_of(i);
    };
    for (const auto& [g, gdeg] : generators)
        for (std::size_t i = 0; i < a.size(); ++i)
            d.basis.push(name(i, g), a.degree_of(i) + gdeg);
    for (const auto& [g, gdeg] : generators) {
        // right modules write m = g·e_i, so d passes the generator: a (-1)^{|g|}
        Scalar dsgn = side == ModuleSide::Right ? sign_scalar(gdeg, a.field()) : Scalar::one(a.field());
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (const auto& [j, c] : a.d(i))
                d.differential.emplace_back(name(i, g), name(j, g), dsgn * c);
            for (std::size_t i2 = 0; i2 < a.size(); ++i2)
                for (const auto& [k, c] : side == ModuleSide::Left ? a.mul(i2, i) : a.mul(i, i2)) {
                    if (side == ModuleSide::Left)
                        d.left_action.emplace_back(a.label_of(i2), name(i, g), name(k, g), c);
                    else
                        d.right_action.emplace_back(name(i, g), a.label_of(i2), name(k, g), c);
                }
        }
    }
    d.truncation = a.truncation();
    return validate_module(a, d);
}

} // namespace dgkit

#endif
