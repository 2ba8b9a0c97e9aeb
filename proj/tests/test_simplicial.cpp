#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "seppoly/simplicial.hpp"

using namespace seppoly;

namespace {

Partition P(const std::vector<std::vector<int>>& blocks, int n) { return make_partition(blocks, n); }

PartitionAntichain random_antichain(int n, std::mt19937& rng) {
    auto all = enumerate_partitions(n);
    int count = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<Partition> picked;
    for (int i = 0; i < count; ++i)
        picked.push_back(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
    return maximal_elements(picked);
}

bool has_violation(const std::vector<Violation>& vs, ViolationKind kind) {
    for (const auto& v : vs)
        if (v.kind == kind) return true;
    return false;
}

// Pascal-triangle binomials, independent of the f-vector path.
long binom(int n, int k) {
    std::vector<std::vector<long>> c(n + 1, std::vector<long>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
    }
    return c[n][k];
}

}  // namespace

TEST_CASE("build_polytope reproduces the three-qubit pictograms") {
    // One bipartition: an edge.
    auto edge = build_polytope(PartitionAntichain({P({{0}, {1, 2}}, 3)}));
    CHECK(edge.vertices == std::vector<Block>{Block::from_members({0}), Block::from_members({1, 2})});
    CHECK(f_vector(edge).counts == std::vector<long>{2, 1});
    CHECK(is_single_simplex(edge));

    // One-block partition: a single point.
    auto point = build_polytope(PartitionAntichain({Partition::one_block(3)}));
    CHECK(point.vertices.size() == 1);
    CHECK(f_vector(point).counts == std::vector<long>{1});
    CHECK(connected_components(point) == 1);

    // All three bipartitions: three disjoint edges on six vertices.
    auto three = build_polytope(
        PartitionAntichain({P({{0}, {1, 2}}, 3), P({{1}, {0, 2}}, 3), P({{2}, {0, 1}}, 3)}));
    CHECK(three.vertices.size() == 6);
    CHECK(f_vector(three).counts == std::vector<long>{6, 3});
    CHECK(connected_components(three) == 3);
    CHECK_FALSE(is_single_simplex(three));

    CHECK_THROWS_AS(build_polytope({P({{0}, {1, 2}}, 3), Partition::one_block(3)}), NotAntichain);
}

TEST_CASE("validate accepts built complexes and flags hand-made defects") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        auto k = build_polytope(random_antichain(n, rng));
        CHECK(validate(k).empty());
    }

    // A maximal simplex contained in another.
    SimplicialComplex bad;
    bad.party_count = 3;
    bad.vertices = {Block::from_members({0}), Block::from_members({1, 2})};
    bad.maximal = {Simplex({Block::from_members({0}), Block::from_members({1, 2})}),
                   Simplex({Block::from_members({0})})};
    CHECK(has_violation(validate(bad), ViolationKind::AntichainViolation));

    // Two vertices sharing a label.
    SimplicialComplex dup;
    dup.party_count = 3;
    dup.vertices = {Block::from_members({0}), Block::from_members({0}), Block::from_members({1, 2})};
    dup.maximal = {Simplex({Block::from_members({0}), Block::from_members({1, 2})})};
    CHECK(has_violation(validate(dup), ViolationKind::DuplicateLabel));

    // A vertex in no maximal simplex.
    SimplicialComplex unused;
    unused.party_count = 3;
    unused.vertices = {Block::from_members({0}), Block::from_members({1, 2}), Block::from_members({1})};
    unused.maximal = {Simplex({Block::from_members({0}), Block::from_members({1, 2})})};
    CHECK(has_violation(validate(unused), ViolationKind::UnusedVertex));

    // Blocks of one simplex overlapping / failing to cover.
    SimplicialComplex overlap;
    overlap.party_count = 3;
    overlap.vertices = {Block::from_members({0, 1}), Block::from_members({1, 2})};
    overlap.maximal = {Simplex({Block::from_members({0, 1}), Block::from_members({1, 2})})};
    CHECK(has_violation(validate(overlap), ViolationKind::BlockOverlap));

    SimplicialComplex gap;
    gap.party_count = 3;
    gap.vertices = {Block::from_members({0}), Block::from_members({1})};
    gap.maximal = {Simplex({Block::from_members({0}), Block::from_members({1})})};
    CHECK(has_violation(validate(gap), ViolationKind::CoverGap));
}

TEST_CASE("f_vector counts distinct faces once") {
    auto triangle = build_polytope(PartitionAntichain({Partition::finest(3)}));
    CHECK(f_vector(triangle).counts == std::vector<long>{3, 3, 1});

    // Two maximal simplices sharing an edge (two shared blocks, n = 5):
    // faces on the shared pair must not be double counted.
    auto shared = build_polytope(
        PartitionAntichain({P({{0}, {1}, {2, 3}, {4}}, 5), P({{0}, {1}, {2, 4}, {3}}, 5)}));
    REQUIRE(shared.maximal.size() == 2);
    CHECK(validate(shared).empty());
    // 6 distinct vertices; edges: C(4,2) per simplex minus the shared {0}{1} edge.
    CHECK(f_vector(shared).counts == std::vector<long>{6, 11, 8, 2});
}

TEST_CASE("f_vector of a single M-block partition is binomial") {
    for (int m = 1; m <= 5; ++m) {
        std::vector<std::vector<int>> blocks;
        for (int i = 0; i < m; ++i) blocks.push_back({i});
        auto k = build_polytope(PartitionAntichain({P(blocks, m)}));
        auto f = f_vector(k);
        REQUIRE(static_cast<int>(f.counts.size()) == m);
        for (int d = 0; d < m; ++d) CHECK(f.counts[d] == binom(m, d + 1));
    }
}

TEST_CASE("connected_components counts 1-skeleton components") {
    auto two = build_polytope(PartitionAntichain({P({{0}, {1, 2}}, 3), P({{1}, {0, 2}}, 3)}));
    CHECK(connected_components(two) == 2);
    CHECK(connected_components(build_polytope(PartitionAntichain({Partition::finest(3)}))) == 1);
    CHECK(connected_components(build_polytope(PartitionAntichain({Partition::one_block(4)}))) == 1);
}

TEST_CASE("round trip: maximal simplices read back as the input antichain") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        PartitionAntichain a = random_antichain(n, rng);
        CHECK(read_antichain(build_polytope(a)) == a);
    }
}

TEST_CASE("simplicial maps validate the face-preservation condition") {
    auto edge = build_polytope(PartitionAntichain({P({{0}, {1, 2}}, 3)}));
    auto point = build_polytope(PartitionAntichain({Partition::one_block(3)}));

    auto id = identity_map(edge);
    CHECK(id.apply(Block::from_members({0})) == Block::from_members({0}));

    // Edge collapse onto the single point.
    std::map<Block, Block> collapse{{Block::from_members({0}), Block::from_members({0, 1, 2})},
                                    {Block::from_members({1, 2}), Block::from_members({0, 1, 2})}};
    auto c = make_simplicial_map(edge, point, collapse);
    CHECK(c.apply(Block::from_members({1, 2})) == Block::from_members({0, 1, 2}));

    // Sending the endpoints of an edge to vertices spanning no common simplex.
    auto two = build_polytope(PartitionAntichain({P({{0}, {1, 2}}, 3), P({{1}, {0, 2}}, 3)}));
    std::map<Block, Block> busted{{Block::from_members({0}), Block::from_members({0})},
                                  {Block::from_members({1, 2}), Block::from_members({0, 2})}};
    CHECK_THROWS_AS(make_simplicial_map(edge, two, busted), NotSimplicial);

    std::map<Block, Block> partial{{Block::from_members({0}), Block::from_members({0, 1, 2})}};
    CHECK_THROWS_AS(make_simplicial_map(edge, point, partial), UnmappedVertex);

    std::map<Block, Block> stray{{Block::from_members({0}), Block::from_members({0, 1})},
                                 {Block::from_members({1, 2}), Block::from_members({0, 1})}};
    CHECK_THROWS_AS(make_simplicial_map(edge, point, stray), NotSimplicial);
}

TEST_CASE("compose chains maps and rejects mismatched endpoints") {
    auto triangle = build_polytope(PartitionAntichain({Partition::finest(3)}));
    auto edge = build_polytope(PartitionAntichain({P({{0, 1}, {2}}, 3)}));
    auto point = build_polytope(PartitionAntichain({Partition::one_block(3)}));

    std::map<Block, Block> first{{Block::from_members({0}), Block::from_members({0, 1})},
                                 {Block::from_members({1}), Block::from_members({0, 1})},
                                 {Block::from_members({2}), Block::from_members({2})}};
    std::map<Block, Block> second{{Block::from_members({0, 1}), Block::from_members({0, 1, 2})},
                                  {Block::from_members({2}), Block::from_members({0, 1, 2})}};
    auto f = make_simplicial_map(triangle, edge, first);
    auto g = make_simplicial_map(edge, point, second);

    auto fg = compose(f, g);
    for (const Block& v : triangle.vertices) CHECK(fg.apply(v) == Block::from_members({0, 1, 2}));

    CHECK(compose(identity_map(triangle), f) == f);
    CHECK(compose(f, identity_map(edge)) == f);
    CHECK_THROWS_AS(compose(g, f), ChainMismatch);
}

TEST_CASE("distinct antichains build distinct complexes") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 4)(rng);
        PartitionAntichain a = random_antichain(n, rng);
        PartitionAntichain b = random_antichain(n, rng);
        if (a == b) continue;
        CHECK_FALSE(build_polytope(a).maximal == build_polytope(b).maximal);
    }
}
