#include <doctest.h>

#include <random>
#include <set>

#include "test_util.hpp"
#include "triecode/combinatorics.hpp"

using namespace triecode;
using namespace triecode::testutil;

TEST_CASE("example matrices: D/L sequences and Lukasiewicz validity") {
    auto top = demo_matrix();
    auto p = LukasiewiczPath::of(top);
    CHECK(p.D == std::vector<std::int64_t>{0, 1, -1, -1, 0, 1, -1});
    CHECK(p.L == std::vector<std::int64_t>{0, 1, 0, -1, -1, 0, -1});
    CHECK(!p.valid());
    CHECK(p.first_negative() == 4);

    auto bottom = demo_matrix_rotated();
    auto q = LukasiewiczPath::of(bottom);
    CHECK(q.D == std::vector<std::int64_t>{0, 1, -1, 0, 1, -1, -1});
    CHECK(q.valid());
}

TEST_CASE("matrix_to_trie: reject index, demo-matrix inversion, root-only") {
    std::int64_t reject = 0;
    CHECK(!matrix_to_trie(demo_matrix(), letters(3), &reject));
    CHECK(reject == 4);

    auto t = matrix_to_trie(demo_matrix_rotated(), letters(3));
    REQUIRE(t);
    CHECK(*t == demo_matrix_trie());

    DegreeMatrix one(1, 1);
    auto root_only = matrix_to_trie(one, letters(1));
    REQUIRE(root_only);
    CHECK(root_only->n() == 1);
}

TEST_CASE("trie_to_matrix: example trie, root-only, unary path") {
    CHECK(trie_to_matrix(demo_matrix_trie()) == demo_matrix_rotated());

    Trie root = Trie::from_dictionary({}, letters(1));
    auto m = trie_to_matrix(root);
    CHECK(m.total_ones() == 0);
    CHECK(m.cols() == 1);

    std::vector<Trie::Edge> path_edges{{0, 1, 'a'}, {1, 2, 'a'}, {2, 3, 'a'}};
    Trie path = Trie::from_edges(4, path_edges, letters(1));
    auto pm = trie_to_matrix(path);
    for (std::uint64_t c = 0; c < 4; ++c) CHECK(pm.get(0, c) == (c < 3));
}

TEST_CASE("rotation semantics and identities") {
    auto top = demo_matrix();
    CHECK(rotate(top, 0) == top);
    CHECK(rotate(top, 7) == top);
    CHECK(rotate(top, 3) == demo_matrix_rotated());
    CHECK(rotate(rotate(top, 2), 5) == top);
}

TEST_CASE("canonical rotation: demo matrix, already valid, exhaustive uniqueness") {
    CHECK(canonical_rotation(demo_matrix()) == 3);
    CHECK(canonical_rotation(demo_matrix_rotated()) == 0);

    std::mt19937_64 rng(test_seed());
    for (int iter = 0; iter < 50; ++iter) {
        std::uint64_t n = 2 + rng() % 24;
        std::size_t sigma = 1 + rng() % 4;
        auto m = random_matrix(random_distribution(n, sigma, rng), rng);
        std::uint64_t r = canonical_rotation(m);
        std::set<std::vector<std::int64_t>> seen_D;
        std::uint64_t accepted = 0;
        for (std::uint64_t shift = 0; shift < n; ++shift) {
            auto rot = rotate(m, shift);
            seen_D.insert(LukasiewiczPath::of(rot).D);
            if (matrix_to_trie(rot, letters(sigma))) {
                ++accepted;
                CHECK(shift == r);
            }
        }
        CHECK(accepted == 1);
        CHECK(seen_D.size() == n);  // all rotations distinct (as D sequences)
    }
}

TEST_CASE("round trip matrix_to_trie . trie_to_matrix = id on random tries") {
    std::mt19937_64 rng(test_seed());
    for (int iter = 0; iter < 100; ++iter) {
        Trie t = make_random_trie(1 + rng() % 80, 1 + rng() % 5, rng);
        auto m = trie_to_matrix(t);
        auto back = matrix_to_trie(m, t.alphabet());
        REQUIRE(back);
        CHECK(*back == t);
        CHECK(LukasiewiczPath::of(m).L.back() == -1);
    }
}

TEST_CASE("count_tries: closed formula vs brute-force enumeration") {
    SymbolDistribution d{4, {2, 1}};
    CHECK(count_tries(d) == 6);
    CHECK(enumerate_tries(d, letters(2)).size() == 6);

    SymbolDistribution d31{3, {1, 1}};
    CHECK(count_tries(d31) == 3);
    CHECK(enumerate_tries(d31, letters(2)).size() == 3);

    SymbolDistribution unary{7, {6}};
    CHECK(count_tries(unary) == 1);
    auto tries = enumerate_tries(unary, letters(1));
    REQUIRE(tries.size() == 1);
    CHECK(tries[0].height() == 6);  // the path

    SymbolDistribution trivial{1, {0, 0}};
    CHECK(count_tries(trivial) == 1);
}

TEST_CASE("enumerate_tries outputs are pairwise distinct and match the count") {
    std::mt19937_64 rng(test_seed());
    for (int iter = 0; iter < 12; ++iter) {
        std::uint64_t n = 1 + rng() % 6;
        std::size_t sigma = 1 + rng() % 3;
        auto d = random_distribution(n, sigma, rng);
        auto tries = enumerate_tries(d, letters(sigma));
        CHECK(count_tries(d) == tries.size());
        std::set<std::string> seen;
        for (std::size_t i = 0; i < tries.size(); ++i) {
            auto m = trie_to_matrix(tries[i]);
            if (i > 0) CHECK(trie_to_matrix(tries[i - 1]) < m);  // row-major lex order
            std::string key;
            for (std::uint32_t r = 0; r < m.rows(); ++r)
                for (std::uint64_t c = 0; c < m.cols(); ++c) key += m.get(r, c) ? '1' : '0';
            seen.insert(key);
        }
        CHECK(seen.size() == tries.size());
    }
}

TEST_CASE("enumeration cap is enforced") {
    SymbolDistribution big{24, {12, 11}};
    CHECK_THROWS_AS(enumerate_tries(big, letters(2), 1000), EnumerationCapExceeded);
}

TEST_CASE("count_all_tries and the Vandermonde sum over distributions") {
    CHECK(count_all_tries(1, 5) == 1);
    CHECK(count_all_tries(4, 2) == 14);
    CHECK(count_all_tries(2, 3) == 3);

    for (std::uint64_t n = 1; n <= 8; ++n) {
        for (std::size_t sigma = 1; sigma <= 3; ++sigma) {
            mpz_class total = 0;
            for (const auto& counts : all_distributions(n, sigma))
                total += count_tries(SymbolDistribution{n, counts});
            CHECK(total == count_all_tries(n, sigma));
        }
    }
}

TEST_CASE("distribution validation") {
    SymbolDistribution bad{4, {2, 2}};
    CHECK_THROWS_AS(count_tries(bad), InputError);
}
