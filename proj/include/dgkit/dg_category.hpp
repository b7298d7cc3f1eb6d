#ifndef DGKIT_DG_CATEGORY_HPP
#define DGKIT_DG_CATEGORY_HPP

#include <map>
#include <string>
#include <vector>

#include "dgkit/dg_algebra.hpp"

namespace dgkit {

/// Raw DG-category description.  Morphism labels are globally unique.
struct CategoryData {
    Field field;
    std::vector<std::string> objects;
    // (label, from, to, degree)
    std::vector<std::tuple<std::string, std::string, std::string, int>> elements;
    // (src, dst, coeff); src and dst must live in the same hom complex
    std::vector<std::tuple<std::string, std::string, Scalar>> differential;
    // (g, f, result, coeff) meaning g∘f, with f: x->y, g: y->z, result: x->z
    std::vector<std::tuple<std::string, std::string, std::string, Scalar>> composition;
    // identity cycle per object, as (label, coeff) pairs in mor(x,x)
    std::map<std::string, std::vector<std::pair<std::string, Scalar>>> identities;
};

/// Small DG-category: finitely many objects, chain-complex morphism spaces,
/// strictly associative composition satisfying Leibniz, with identity cycles.
class DGCategory {
public:
    friend DGCategory validate_dg_category(const CategoryData&);

    const Field& field() const { return field_; }
    const std::vector<std::string>& objects() const { return objects_; }
    std::size_t object_index(const std::string& name) const {
        for (std::size_t i = 0; i < objects_.size(); ++i)
            if (objects_[i] == name) return i;
        throw Error(ErrorKind::UnknownLabel, "no object '" + name + "'");
    }

    const ChainComplex& mor(std::size_t x, std::size_t y) const { return mor_[x][y]; }

    /// comp(g in mor(y,z), f in mor(x,y)) = g∘f in mor(x,z), on basis indices.
    const SparseVec& compose(std::size_t x, std::size_t y, std::size_t z, std::size_t g,
                             std::size_t f) const {
        return comp_[x][y][z][g][f];
    }
    SparseVec compose_vec(std::size_t x, std::size_t y, std::size_t z, const SparseVec& g,
                          const SparseVec& f) const {
        SparseVec out;
        for (const auto& [gi, gc] : g)
            for (const auto& [fi, fc] : f) out = sv_axpy(out, gc * fc, comp_[x][y][z][gi][fi]);
        return out;
    }

    const SparseVec& identity(std::size_t x) const { return id_[x]; }

    /// The identity of x when it is a single basis label with coefficient 1.
    std::optional<std::size_t> identity_label_index(std::size_t x) const {
        if (id_[x].size() == 1 && id_[x].front().second.is_one())
            return id_[x].front().first;
        return std::nullopt;
    }

private:
    DGCategory(Field field, std::vector<std::string> objects,
               std::vector<std::vector<ChainComplex>> mor,
               std::vector<std::vector<std::vector<std::vector<std::vector<SparseVec>>>>> comp,
               std::vector<SparseVec> id)
        : field_(field), objects_(std::move(objects)), mor_(std::move(mor)),
          comp_(std::move(comp)), id_(std::move(id)) {}

    Field field_;
    std::vector<std::string> objects_;
    std::vector<std::vector<ChainComplex>> mor_;  // [x][y]
    // comp_[x][y][z][g][f]
    std::vector<std::vector<std::vector<std::vector<std::vector<SparseVec>>>>> comp_;
    std::vector<SparseVec> id_;
};

inline DGCategory validate_dg_category(const CategoryData& spec) {
    const Field f = spec.field;
    const std::size_t no = spec.objects.size();
    std::map<std::string, std::size_t> oidx;
    for (std::size_t i = 0; i < no; ++i)
        if (!oidx.emplace(spec.objects[i], i).second)
            throw Error(ErrorKind::AxiomViolation, "duplicate object", {spec.objects[i]});

    struct Elem { std::size_t from, to, local; };
    std::map<std::string, Elem> eidx;
    std::vector<std::vector<GradedBasis>> bases(no, std::vector<GradedBasis>(no));
    for (const auto& [label, from, to, degree] : spec.elements) {
        auto fi = oidx.find(from), ti = oidx.find(to);
        if (fi == oidx.end()) throw Error(ErrorKind::UnknownLabel, "no object '" + from + "'");
        if (ti == oidx.end()) throw Error(ErrorKind::UnknownLabel, "no object '" + to + "'");
        if (eidx.count(label))
            throw Error(ErrorKind::AxiomViolation, "duplicate morphism label", {label});
        eidx[label] = Elem{fi->second, ti->second, bases[fi->second][ti->second].size()};
        bases[fi->second][ti->second].push(label, degree);
    }
    auto elook = [&](const std::string& l) -> const Elem& {
        auto it = eidx.find(l);
        if (it == eidx.end()) throw Error(ErrorKind::UnknownLabel, "no morphism '" + l + "'");
        return it->second;
    };

    std::vector<std::vector<std::vector<SparseVec>>> draw(no);
    for (std::size_t x = 0; x < no; ++x) {
        draw[x].resize(no);
        for (std::size_t y = 0; y < no; ++y) draw[x][y].resize(bases[x][y].size());
    }
    for (const auto& [src, dst, c] : spec.differential) {
        const Elem &s = elook(src), &t = elook(dst);
        if (s.from != t.from || s.to != t.to)
            throw Error(ErrorKind::AxiomViolation, "differential leaves its hom complex", {src, dst});
        draw[s.from][s.to][s.local].emplace_back(t.local, c);
    }
    std::vector<std::vector<ChainComplex>> mor;
    mor.reserve(no);
    for (std::size_t x = 0; x < no; ++x) {
        std::vector<ChainComplex> row;
        for (std::size_t y = 0; y < no; ++y) {
            for (auto& v : draw[x][y]) v = sv_cleanup(std::move(v));
            row.emplace_back(f, bases[x][y], std::move(draw[x][y]));
        }
        mor.push_back(std::move(row));
    }

    // comp[x][y][z][g][f]
    std::vector<std::vector<std::vector<std::vector<std::vector<SparseVec>>>>> comp(no);
    for (std::size_t x = 0; x < no; ++x) {
        comp[x].resize(no);
        for (std::size_t y = 0; y < no; ++y) {
            comp[x][y].resize(no);
            for (std::size_t z = 0; z < no; ++z)
                comp[x][y][z].assign(mor[y][z].size(), std::vector<SparseVec>(mor[x][y].size()));
        }
    }
    for (const auto& [g, ff, res, c] : spec.composition) {
        const Elem &ge = elook(g), &fe = elook(ff), &re = elook(res);
        if (fe.to != ge.from || re.from != fe.from || re.to != ge.to)
            throw Error(ErrorKind::AxiomViolation, "composition is not typed x->y->z", {g, ff, res});
        comp[fe.from][fe.to][ge.to][ge.local][fe.local].emplace_back(re.local, c);
    }
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t y = 0; y < no; ++y)
            for (std::size_t z = 0; z < no; ++z)
                for (auto& per_g : comp[x][y][z])
                    for (auto& v : per_g) v = sv_cleanup(std::move(v));

    const Scalar one = Scalar::one(f);
    // degree additivity and Leibniz
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t y = 0; y < no; ++y)
            for (std::size_t z = 0; z < no; ++z) {
                const auto& mxy = mor[x][y];
                const auto& myz = mor[y][z];
                const auto& mxz = mor[x][z];
                for (std::size_t g = 0; g < myz.size(); ++g)
                    for (std::size_t ff = 0; ff < mxy.size(); ++ff) {
                        const SparseVec& gf = comp[x][y][z][g][ff];
                        for (const auto& [k, c] : gf) {
                            (void)c;
                            if (mxz.degree_of(k) != myz.degree_of(g) + mxy.degree_of(ff))
                                throw Error(ErrorKind::AxiomViolation,
                                            "composition is not degree-additive",
                                            {myz.label_of(g), mxy.label_of(ff)});
                        }
                        SparseVec lhs = mxz.apply_d(gf);
                        SparseVec rhs;
                        for (const auto& [g2, c] : myz.d(g))
                            rhs = sv_axpy(rhs, c, comp[x][y][z][g2][ff]);
                        Scalar sgn = sign_scalar(myz.degree_of(g), f);
                        for (const auto& [f2, c] : mxy.d(ff))
                            rhs = sv_axpy(rhs, sgn * c, comp[x][y][z][g][f2]);
                        if (lhs != rhs)
                            throw Error(ErrorKind::AxiomViolation, "composition Leibniz",
                                        {myz.label_of(g), mxy.label_of(ff)});
                    }
            }

    // associativity h∘(g∘f) = (h∘g)∘f over all composable basis triples
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t y = 0; y < no; ++y)
            for (std::size_t z = 0; z < no; ++z)
                for (std::size_t w = 0; w < no; ++w)
                    for (std::size_t h = 0; h < mor[z][w].size(); ++h)
                        for (std::size_t g = 0; g < mor[y][z].size(); ++g)
                            for (std::size_t ff = 0; ff < mor[x][y].size(); ++ff) {
                                SparseVec lhs;
                                for (const auto& [gf, c] : comp[x][y][z][g][ff])
                                    lhs = sv_axpy(lhs, c, comp[x][z][w][h][gf]);
                                SparseVec rhs;
                                for (const auto& [hg, c] : comp[y][z][w][h][g])
                                    rhs = sv_axpy(rhs, c, comp[x][y][w][hg][ff]);
                                if (lhs != rhs)
                                    throw Error(ErrorKind::AxiomViolation, "composition associativity",
                                                {mor[z][w].label_of(h), mor[y][z].label_of(g),
                                                 mor[x][y].label_of(ff)});
                            }

    // identities: degree-0 cycles, neutral on both sides
    std::vector<SparseVec> id(no);
    for (std::size_t x = 0; x < no; ++x) {
        auto it = spec.identities.find(spec.objects[x]);
        if (it == spec.identities.end())
            throw Error(ErrorKind::AxiomViolation, "missing identity", {spec.objects[x]});
        SparseVec v;
        for (const auto& [l, c] : it->second) {
            const Elem& e = elook(l);
            if (e.from != x || e.to != x)
                throw Error(ErrorKind::AxiomViolation, "identity outside mor(x,x)", {l});
            v.emplace_back(e.local, c);
        }
        id[x] = sv_cleanup(std::move(v));
        for (const auto& [i, c] : id[x]) {
            (void)c;
            if (mor[x][x].degree_of(i) != 0)
                throw Error(ErrorKind::AxiomViolation, "identity not of degree 0", {spec.objects[x]});
        }
        if (!mor[x][x].apply_d(id[x]).empty())
            throw Error(ErrorKind::AxiomViolation, "identity is not a cycle", {spec.objects[x]});
    }
    for (std::size_t x = 0; x < no; ++x)
        for (std::size_t y = 0; y < no; ++y) {
            const auto& mxy = mor[x][y];
            for (std::size_t ff = 0; ff < mxy.size(); ++ff) {
                SparseVec e{{ff, one}};
                SparseVec l;
                for (const auto& [gi, gc] : id[y])
                    l = sv_axpy(l, gc, comp[x][y][y][gi][ff]);
                if (l != e)
                    throw Error(ErrorKind::AxiomViolation, "left identity law", {mxy.label_of(ff)});
                SparseVec r;
                for (const auto& [fi, fc] : id[x])
                    r = sv_axpy(r, fc, comp[x][x][y][ff][fi]);
                if (r != e)
                    throw Error(ErrorKind::AxiomViolation, "right identity law", {mxy.label_of(ff)});
            }
        }

    return DGCategory(f, spec.objects, std::move(mor), std::move(comp), std::move(id));
}

/// A DGAlgebra as a one-object DG-category; composition is the product.
inline DGCategory as_category(const DGAlgebra& a, const std::string& object = "*") {
    CategoryData d;
    d.field = a.field();
    d.objects = {object};
    for (std::size_t i = 0; i < a.size(); ++i)
        d.elements.emplace_back(a.label_of(i), object, object, a.degree_of(i));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& [j, c] : a.d(i)) d.differential.emplace_back(a.label_of(i), a.label_of(j), c);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            for (const auto& [k, c] : a.mul(i, j))
                d.composition.emplace_back(a.label_of(i), a.label_of(j), a.label_of(k), c);
    d.identities[object] = {{a.label_of(a.unit()), Scalar::one(a.field())}};
    return validate_dg_category(d);
}

} // namespace dgkit

#endif
