#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgkit/builders.hpp"
#include "dgkit/hochschild.hpp"

using namespace dgkit;

namespace {
const Field Q = Field::Q();

DGAlgebra ground_field_algebra() {
    AlgebraData d;
    d.field = Q;
    d.basis.push("1", 0);
    d.unit_label = "1";
    d.multiplication.emplace_back("1", "1", "1", Scalar::one(Q));
    d.augmentation = {{{"1", Scalar::one(Q)}}};
    return validate_dga(d);
}

SparseVec random_homogeneous(const ChainComplex& cx, int degree, std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::vector<std::pair<std::size_t, Scalar>> terms;
    for (auto i : cx.at_degree(degree)) {
        int c = coef(rng);
        if (c != 0) terms.emplace_back(i, Scalar::from_int(c, Q));
    }
    return sv_cleanup(std::move(terms));
}

} // namespace

TEST_CASE("hh of the ground field is k in degree 0") {
    auto k = ground_field_algebra();
    auto r = hh(k, 4, Window{-2, 4});
    REQUIRE(r.dims == std::map<int, std::size_t>{{0, 1}});
    REQUIRE(r.stability.certificate);
}

TEST_CASE("HKR oracle: hh of the truncated polynomial algebra on y_2") {
    // oracle: k[y] ⊗ Λ(dy) with |dy| = 3 and zero differential — dims 1 in
    // degrees {2j} and {2j+3}, i.e. 1,0,1,1,1,1,1,1,1,1 on [0,9]
    std::map<int, std::size_t> oracle;
    for (int j = 0; 2 * j <= 9; ++j) oracle[2 * j] += 1;
    for (int j = 0; 2 * j + 3 <= 9; ++j) oracle[2 * j + 3] += 1;
    REQUIRE(oracle == std::map<int, std::size_t>{
                          {0, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}, {9, 1}});

    auto a = power_algebra("y", 2, 6, Q);  // truncated at y^6, top degree 12
    auto r = hh(a, 6, Window{0, 9});
    REQUIRE(r.dims == oracle);
    REQUIRE(r.stability.certificate);
}

TEST_CASE("hh of a one-object category equals hh of the algebra") {
    auto a = power_algebra("y", 2, 4, Q);
    auto ra = hh(a, 5, Window{0, 7});
    auto rc = hh_category(as_category(a), 5, Window{0, 7});
    REQUIRE(ra.dims == rc.dims);

    auto lx = exterior_algebra("x", -3, Q);
    auto rlx = hh(lx, 6, Window{-8, 0});
    auto rlc = hh_category(as_category(lx), 6, Window{-8, 0});
    REQUIRE(rlx.dims == rlc.dims);
}

TEST_CASE("hh_category of the codiscrete two-object category is Morita-trivial") {
    CategoryData d;
    d.field = Q;
    d.objects = {"p", "q"};
    const char* names[2][2] = {{"upp", "upq"}, {"uqp", "uqq"}};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) d.elements.emplace_back(names[x][y], d.objects[x], d.objects[y], 0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                d.composition.emplace_back(names[y][z], names[x][y], names[x][z], Scalar::one(Q));
    d.identities["p"] = {{"upp", Scalar::one(Q)}};
    d.identities["q"] = {{"uqq", Scalar::one(Q)}};
    auto c = validate_dg_category(d);
    auto r = hh_category(c, 8, Window{0, 3});
    REQUIRE(r.dims == std::map<int, std::size_t>{{0, 1}});
    REQUIRE(r.stability.stable);
}

TEST_CASE("upper-triangular two-object category splits") {
    CategoryData d;
    d.field = Q;
    d.objects = {"p", "q"};
    d.elements.emplace_back("ep", "p", "p", 0);
    d.elements.emplace_back("eq", "q", "q", 0);
    d.elements.emplace_back("u", "p", "q", 0);
    const Scalar one = Scalar::one(Q);
    d.composition.emplace_back("ep", "ep", "ep", one);
    d.composition.emplace_back("eq", "eq", "eq", one);
    d.composition.emplace_back("u", "ep", "u", one);
    d.composition.emplace_back("eq", "u", "u", one);
    d.identities["p"] = {{"ep", one}};
    d.identities["q"] = {{"eq", one}};
    auto c = validate_dg_category(d);
    auto r = hh_category(c, 6, Window{0, 3});
    // hh(mor(p,p)) ⊕ hh(mor(q,q)) = k ⊕ k in degree 0
    REQUIRE(r.dims == std::map<int, std::size_t>{{0, 2}});
}

TEST_CASE("duplicating an object does not change hh_category dimensions") {
    auto lx = exterior_algebra("x", -3, Q);
    // two isomorphic objects: all four hom complexes are copies of Λ(x)
    CategoryData d;
    d.field = Q;
    d.objects = {"o1", "o2"};
    const Scalar one = Scalar::one(Q);
    auto nm = [&](int x, int y, const std::string& base) {
        return base + std::to_string(x) + std::to_string(y);
    };
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            d.elements.emplace_back(nm(x, y, "one"), d.objects[x], d.objects[y], 0);
            d.elements.emplace_back(nm(x, y, "x"), d.objects[x], d.objects[y], -3);
        }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                d.composition.emplace_back(nm(y, z, "one"), nm(x, y, "one"), nm(x, z, "one"), one);
                d.composition.emplace_back(nm(y, z, "one"), nm(x, y, "x"), nm(x, z, "x"), one);
                d.composition.emplace_back(nm(y, z, "x"), nm(x, y, "one"), nm(x, z, "x"), one);
            }
    d.identities["o1"] = {{"one00", one}};
    d.identities["o2"] = {{"one11", one}};
    auto c = validate_dg_category(d);

    auto rdup = hh_category(c, 8, Window{-6, 0});
    auto rone = hh(lx, 8, Window{-6, 0});
    REQUIRE(rdup.dims == rone.dims);
    REQUIRE(rdup.stability.stable);
}

TEST_CASE("hhc of the ground field is k in degree 0") {
    auto k = ground_field_algebra();
    auto r = hhc(k, 4, Window{-4, 2});
    REQUIRE(r.dims == std::map<int, std::size_t>{{0, 1}});
}

TEST_CASE("HH^0 of an ungraded algebra is its center") {
    auto a3 = nilpotent_algebra("x", 3, Q);  // commutative: center = everything
    auto r = hhc(a3, 5, Window{-4, 0});
    REQUIRE(r.dims.at(0) == 3);

    auto s3 = s3_group_algebra(Q);  // center has dimension 3 (conjugacy classes)
    auto rs = hhc(s3, 3, Window{-2, 0});
    REQUIRE(rs.dims.at(0) == 3);
}

TEST_CASE("hhc of the exterior algebra matches the loop-space pattern") {
    auto lx = exterior_algebra("x", -3, Q);
    auto r = hhc(lx, 10, Window{-8, 8});
    std::map<int, std::size_t> expect;
    for (int j = 0; 2 * j <= 8; ++j) expect[2 * j] += 1;           // powers of the dual class
    for (int j = 0; 2 * j - 3 <= 8; ++j) expect[2 * j - 3] += 1;   // x-valued tower
    // degrees -3,-1,0,1,2,...,8 each of dimension 1
    REQUIRE(r.dims == expect);
    REQUIRE(r.stability.certificate);
}

TEST_CASE("cochain differential interacts with cup as a derivation") {
    std::mt19937 rng(2024);
    auto a3 = nilpotent_algebra("x", 3, Q);
    auto hc = hochschild_cochains(a3, as_module(a3, ModuleSide::Bimodule), 4, Window{-4, 0});
    for (int trial = 0; trial < 20; ++trial) {
        int df = -(trial % 3), dg = -((trial / 3) % 3);
        SparseVec fv = random_homogeneous(*hc.complex, df, rng);
        SparseVec gv = random_homogeneous(*hc.complex, dg, rng);
        if (fv.empty() || gv.empty()) continue;
        SparseVec lhs = hc.complex->apply_d(hc.cup(fv, gv));
        SparseVec rhs = hc.cup(hc.complex->apply_d(fv), gv);
        rhs = sv_axpy(rhs, sign_scalar(df, Q), hc.cup(fv, hc.complex->apply_d(gv)));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("unit cochain is neutral for cup") {
    auto a3 = nilpotent_algebra("x", 3, Q);
    auto hc = hochschild_cochains(a3, as_module(a3, ModuleSide::Bimodule), 4, Window{-4, 0});
    auto unit = hc.find({}, a3.unit());
    REQUIRE(unit.has_value());
    SparseVec u{{*unit, Scalar::one(Q)}};
    std::mt19937 rng(7);
    for (int deg : {0, -1, -2}) {
        SparseVec fv = random_homogeneous(*hc.complex, deg, rng);
        REQUIRE(hc.cup(u, fv) == fv);
        REQUIRE(hc.cup(fv, u) == fv);
    }
}

TEST_CASE("cup on HH^0 of a commutative ungraded algebra is the multiplication") {
    auto a3 = nilpotent_algebra("x", 3, Q);
    auto hc = hochschild_cochains(a3, as_module(a3, ModuleSide::Bimodule), 4, Window{-4, 0});
    auto x = a3.complex().index_of("x");
    auto x2 = a3.complex().index_of("x^2");
    SparseVec fx{{*hc.find({}, x), Scalar::one(Q)}};
    SparseVec fx2{{*hc.find({}, x2), Scalar::one(Q)}};
    REQUIRE(hc.cup(fx, fx) == fx2);
    REQUIRE(hc.cup(fx, fx2).empty());  // x^3 = 0
}

TEST_CASE("cup of the generating classes of hhc(Λ(x_-3)) is nonzero") {
    auto lx = exterior_algebra("x", -3, Q);
    auto hc = hochschild_cochains(lx, as_module(lx, ModuleSide::Bimodule), 8, Window{-8, 8});
    auto x = lx.complex().index_of("x");
    // α: (x) -> 1 in degree 2;  β: () -> x in degree -3
    SparseVec alpha{{*hc.find({x}, lx.unit()), Scalar::one(Q)}};
    SparseVec beta{{*hc.find({}, x), Scalar::one(Q)}};
    REQUIRE(hc.complex->apply_d(alpha).empty());
    REQUIRE(hc.complex->apply_d(beta).empty());
    SparseVec prod = hc.cup(alpha, beta);
    REQUIRE_FALSE(prod.empty());
    REQUIRE(hc.complex->is_cycle(prod));
    REQUIRE_FALSE(hc.complex->is_boundary(prod));
}

TEST_CASE("cup is graded-commutative up to coboundary on classes") {
    auto lx = exterior_algebra("x", -3, Q);
    auto hc = hochschild_cochains(lx, as_module(lx, ModuleSide::Bimodule), 8, Window{-8, 8});
    std::vector<std::pair<SparseVec, int>> classes;
    for (int d = -6; d <= 6; ++d)
        for (const auto& rep : hc.complex->homology_at(d).representatives)
            classes.emplace_back(rep, d);
    REQUIRE(classes.size() >= 4);
    for (const auto& [fv, df] : classes)
        for (const auto& [gv, dg] : classes) {
            if (!Window{-8, 8}.contains(df + dg)) continue;
            SparseVec comm = hc.cup(fv, gv);
            comm = sv_axpy(comm, -sign_scalar(df * dg, Q), hc.cup(gv, fv));
            REQUIRE(hc.complex->is_cycle(comm));
            REQUIRE(hc.complex->is_boundary(comm));
        }
}

TEST_CASE("bracket on HH^1 of k[x]/(x^3) is the commutator of derivations") {
    auto a3 = nilpotent_algebra("x", 3, Q);
    auto hc = hochschild_cochains(a3, as_module(a3, ModuleSide::Bimodule), 4, Window{-4, 0});
    auto x = a3.complex().index_of("x");
    auto x2 = a3.complex().index_of("x^2");
    // derivation D_v: x -> v extends by the Leibniz rule: x^2 -> x v + v x
    auto der_cochain = [&](const SparseVec& v) {
        SparseVec out;
        for (const auto& [vi, vc] : v) out = sv_axpy(out, vc, SparseVec{{*hc.find({x}, vi), Scalar::one(Q)}});
        SparseVec xv = a3.mul_vec(SparseVec{{x, Scalar::one(Q)}}, v);
        SparseVec vx = a3.mul_vec(v, SparseVec{{x, Scalar::one(Q)}});
        for (const auto& [vi, vc] : sv_add(xv, vx, Q))
            out = sv_axpy(out, vc, SparseVec{{*hc.find({x2}, vi), Scalar::one(Q)}});
        return out;
    };
    // D = x d/dx, E = x^2 d/dx, [D,E] = x^2 d/dx
    SparseVec D = der_cochain({{x, Scalar::one(Q)}});
    SparseVec E = der_cochain({{x2, Scalar::one(Q)}});
    REQUIRE(hc.complex->apply_d(D).empty());
    REQUIRE(hc.complex->apply_d(E).empty());
    SparseVec bracket = hc.gerstenhaber(D, E);
    SparseVec expect = E;  // [x d/dx, x^2 d/dx] = x^2 d/dx
    SparseVec diffv = sv_axpy(bracket, -Scalar::one(Q), expect);
    REQUIRE(hc.complex->is_cycle(bracket));
    REQUIRE(hc.complex->is_boundary(diffv));
}

TEST_CASE("self-bracket vanishes when the suspended degree is even") {
    auto lx = exterior_algebra("x", -3, Q);
    auto hc = hochschild_cochains(lx, as_module(lx, ModuleSide::Bimodule), 8, Window{-8, 8});
    auto x = lx.complex().index_of("x");
    SparseVec beta{{*hc.find({}, x), Scalar::one(Q)}};  // degree -3: suspended degree even
    REQUIRE(hc.gerstenhaber(beta, beta).empty());
}

TEST_CASE("bracket is a derivation of cup up to coboundary") {
    auto a2 = nilpotent_algebra("x", 2, Q);
    auto hc = hochschild_cochains(a2, as_module(a2, ModuleSide::Bimodule), 5, Window{-4, 0});
    std::vector<std::pair<SparseVec, int>> classes;
    for (int d = -3; d <= 0; ++d)
        for (const auto& rep : hc.complex->homology_at(d).representatives)
            classes.emplace_back(rep, d);
    REQUIRE(classes.size() >= 3);
    for (const auto& [fv, df] : classes)
        for (const auto& [gv, dg] : classes)
            for (const auto& [hv, dh] : classes) {
                if (df + dg + dh + 1 < -4) continue;
                SparseVec lhs = hc.gerstenhaber(fv, hc.cup(gv, hv));
                SparseVec rhs = hc.cup(hc.gerstenhaber(fv, gv), hv);
                rhs = sv_axpy(rhs, sign_scalar((df + 1) * dg, Q),
                              hc.cup(gv, hc.gerstenhaber(fv, hv)));
                SparseVec diffv = sv_axpy(lhs, -Scalar::one(Q), rhs);
                REQUIRE(hc.complex->is_cycle(diffv));
                REQUIRE(hc.complex->is_boundary(diffv));
            }
}

TEST_CASE("Connes operator: B^2 = 0 and the mixed-complex identity") {
    auto a2 = nilpotent_algebra("x", 2, Q);
    auto ch = hochschild_chains(a2, as_module(a2, ModuleSide::Bimodule), 6, Window{-1, 5});
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        SparseVec v = random_homogeneous(*ch.complex, trial % 4, rng);
        if (v.empty()) continue;
        REQUIRE(ch.connes_b(ch.connes_b(v)).empty());
    }
    // b B + B b = 0 on every basis word whose B-image stays in the complex
    for (std::size_t i = 0; i + 1 < ch.words.size(); ++i) {
        if (ch.words[i].letters.size() + 1 > ch.effective_cutoff) continue;
        if (ch.words[i].degree + 1 > ch.window.hi) continue;
        SparseVec w{{i, Scalar::one(Q)}};
        SparseVec anti = sv_add(ch.complex->apply_d(ch.connes_b(w)),
                                ch.connes_b(ch.complex->apply_d(w)), Q);
        REQUIRE(anti.empty());
    }
}

TEST_CASE("B of the class [y] is the nonzero odd generator; B[1] = 0") {
    auto a = power_algebra("y", 2, 5, Q);
    auto ch = hochschild_chains(a, as_module(a, ModuleSide::Bimodule), 5, Window{0, 8});
    auto y = a.complex().index_of("y");
    SparseVec cy{{*ch.find(y, {}), Scalar::one(Q)}};
    SparseVec by = ch.connes_b(cy);
    REQUIRE_FALSE(by.empty());
    REQUIRE(ch.complex->is_cycle(by));
    REQUIRE_FALSE(ch.complex->is_boundary(by));
    SparseVec c1{{*ch.find(a.unit(), {}), Scalar::one(Q)}};
    REQUIRE(ch.connes_b(c1).empty());
}
