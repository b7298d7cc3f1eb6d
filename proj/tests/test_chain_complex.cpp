#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dgkit/chain_complex.hpp"

using namespace dgkit;

namespace {

const Field Q = Field::Q();

Scalar qs(long n) { return Scalar::from_int(n, Q); }

/// Cellular chain complex of S^n with two cells: degrees {0, n}, zero differential.
ChainComplex sphere_cells(int n) {
    GradedBasis b;
    b.push("pt", 0);
    b.push("cell", n);
    return ChainComplex(Q, std::move(b), {{}, {}});
}

ChainComplex acyclic_pair() {
    GradedBasis b;
    b.push("a", 1);
    b.push("b", 0);
    return ChainComplex(Q, std::move(b), {SparseVec{{1, qs(1)}}, SparseVec{}});
}

/// Random two-term complex: degrees {n, n-1}, arbitrary matrix (d^2 = 0 automatically).
ChainComplex random_two_term(std::mt19937& rng, int n, int tag) {
    std::uniform_int_distribution<int> cnt(1, 3), coef(-3, 3);
    int top = cnt(rng), bot = cnt(rng);
    GradedBasis b;
    for (int i = 0; i < top; ++i) b.push("t" + std::to_string(tag) + "_" + std::to_string(i), n);
    for (int i = 0; i < bot; ++i) b.push("b" + std::to_string(tag) + "_" + std::to_string(i), n - 1);
    std::vector<SparseVec> d(static_cast<std::size_t>(top + bot));
    for (int i = 0; i < top; ++i) {
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (int j = 0; j < bot; ++j) {
            int c = coef(rng);
            if (c != 0) terms.emplace_back(static_cast<std::size_t>(top + j), qs(c));
        }
        d[static_cast<std::size_t>(i)] = sv_cleanup(std::move(terms));
    }
    return ChainComplex(Q, std::move(b), std::move(d));
}

} // namespace

TEST_CASE("homology of a point") {
    GradedBasis b;
    b.push("x", 0);
    ChainComplex c(Q, std::move(b), {SparseVec{}});
    REQUIRE(c.homology_at(0).dim == 1);
    REQUIRE(c.homology_at(1).dim == 0);
}

TEST_CASE("acyclic two-term complex has no homology") {
    auto c = acyclic_pair();
    for (int n = -1; n <= 2; ++n) REQUIRE(c.homology_at(n).dim == 0);
}

TEST_CASE("cellular three-sphere") {
    auto c = sphere_cells(3);
    auto h = c.homology_table();
    REQUIRE(h == std::map<int, std::size_t>{{0, 1}, {3, 1}});
}

TEST_CASE("construction rejects d*d != 0 and degree errors") {
    GradedBasis b;
    b.push("a", 2);
    b.push("b", 1);
    b.push("c", 0);
    // d(a) = b, d(b) = c: d^2(a) = c != 0
    REQUIRE_THROWS_AS(
        ChainComplex(Q, b, {SparseVec{{1, qs(1)}}, SparseVec{{2, qs(1)}}, SparseVec{}}),
        Error);
    // degree -2 differential
    REQUIRE_THROWS_AS(ChainComplex(Q, b, {SparseVec{{2, qs(1)}}, SparseVec{}, SparseVec{}}),
                      Error);
    GradedBasis dup;
    dup.push("a", 0);
    dup.push("a", 1);
    REQUIRE_THROWS_AS(ChainComplex(Q, dup, {SparseVec{}, SparseVec{}}), Error);
}

TEST_CASE("tensor with the unit complex is the identity up to labels") {
    auto c = sphere_cells(3);
    auto t = tensor_complex(c, unit_complex(Q));
    REQUIRE(t.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) REQUIRE(t.degree_of(i) == c.degree_of(i));
    REQUIRE(t.homology_table() == c.homology_table());
}

TEST_CASE("acyclic tensor anything is acyclic") {
    auto a = acyclic_pair();
    auto c = sphere_cells(2);
    auto t = tensor_complex(a, c);
    REQUIRE(t.homology_table().empty());
}

TEST_CASE("Kuenneth for two three-spheres") {
    auto t = tensor_complex(sphere_cells(3), sphere_cells(3));
    auto h = t.homology_table();
    REQUIRE(h == std::map<int, std::size_t>{{0, 1}, {3, 2}, {6, 1}});
}

TEST_CASE("tensor product is associative up to the canonical relabeling") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_two_term(rng, 1, 1);
        auto b = random_two_term(rng, 0, 2);
        auto c = random_two_term(rng, 2, 3);
        auto left = tensor_complex(tensor_complex(a, b), c);
        auto right = tensor_complex(a, tensor_complex(b, c));
        REQUIRE(left.size() == right.size());
        // the canonical bijection ((i,j),k) <-> (i,(j,k)) is the identity on
        // linear indices, so degrees and differentials compare positionally
        for (std::size_t i = 0; i < left.size(); ++i) {
            REQUIRE(left.degree_of(i) == right.degree_of(i));
            REQUIRE(left.d(i) == right.d(i));
        }
    }
}

TEST_CASE("hom out of the unit complex is the identity") {
    auto c = sphere_cells(2);
    auto h = hom_complex(unit_complex(Q), c);
    REQUIRE(h.size() == c.size());
    REQUIRE(h.homology_table() == c.homology_table());
}

TEST_CASE("hom into the unit complex negates degrees of homology") {
    auto c = sphere_cells(3);
    auto h = hom_complex(c, unit_complex(Q));
    REQUIRE(h.homology_table() == std::map<int, std::size_t>{{-3, 1}, {0, 1}});
}

TEST_CASE("hom complex differential squares to zero on random elements") {
    std::mt19937 rng(4242);
    auto a = random_two_term(rng, 1, 1);
    auto b = random_two_term(rng, 2, 2);
    auto h = hom_complex(a, b);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<std::size_t, Scalar>> terms;
        for (std::size_t i = 0; i < h.size(); ++i) {
            int c = coef(rng);
            if (c != 0) terms.emplace_back(i, qs(c));
        }
        // not graded-homogeneous, but d extends linearly and d^2 = 0 regardless
        SparseVec f = sv_cleanup(std::move(terms));
        REQUIRE(h.apply_d(h.apply_d(f)).empty());
    }
}

TEST_CASE("shift conventions") {
    auto c = sphere_cells(3);
    REQUIRE(same_complex(shift_complex(c, 0), c));
    auto a = acyclic_pair();
    REQUIRE(same_complex(shift_complex(shift_complex(a, 5), -5), a));
    auto s = shift_complex(c, 2);
    REQUIRE(s.homology_table() == std::map<int, std::size_t>{{2, 1}, {5, 1}});
    // shifted differential carries (-1)^m
    auto a1 = shift_complex(a, 1);
    REQUIRE(a1.d(0) == sv_scale(a.d(0), qs(-1)));
}

TEST_CASE("homology representatives are cycles completing the boundary space") {
    // d(a) = x - y on degree-0 basis {x, y, z}
    GradedBasis b;
    b.push("a", 1);
    b.push("x", 0);
    b.push("y", 0);
    b.push("z", 0);
    ChainComplex c(Q, std::move(b), {SparseVec{{1, qs(1)}, {2, qs(-1)}}, {}, {}, {}});
    auto h = c.homology_at(0);
    REQUIRE(h.dim == 2);
    for (const auto& rep : h.representatives) {
        REQUIRE(c.is_cycle(rep));
        REQUIRE_FALSE(c.is_boundary(rep));
    }
    REQUIRE(c.is_boundary(SparseVec{{1, qs(2)}, {2, qs(-2)}}));
}
