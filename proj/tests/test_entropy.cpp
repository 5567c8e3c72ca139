#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "triecode/combinatorics.hpp"
#include "triecode/entropy.hpp"
#include "triecode/xbwt.hpp"

using namespace triecode;
using namespace triecode::testutil;

namespace {
constexpr double kTol = 1e-9;
double rel_tol(double scale) { return kTol * std::max(1.0, std::abs(scale)); }
}  // namespace

TEST_CASE("string_h0: uniform, constant, skewed") {
    std::vector<std::uint64_t> uniform{5, 5};
    CHECK(string_h0(uniform) == doctest::Approx(1.0).epsilon(kTol));
    std::vector<std::uint64_t> single{7};
    CHECK(string_h0(single) == doctest::Approx(0.0));
    std::vector<std::uint64_t> ab{2, 1};
    double expect = 2.0 / 3 * std::log2(3.0 / 2) + 1.0 / 3 * std::log2(3.0);
    CHECK(string_h0(ab) == doctest::Approx(expect).epsilon(kTol));
}

TEST_CASE("worst-case entropy equals log2 of the enumeration count") {
    SymbolDistribution d{4, {2, 1}};
    double oracle = std::log2(static_cast<double>(enumerate_tries(d, letters(2)).size()));
    CHECK(worst_case_entropy(d) == doctest::Approx(oracle).epsilon(kTol));
    CHECK(worst_case_entropy(d) == doctest::Approx(std::log2(6.0)).epsilon(kTol));

    SymbolDistribution unary{9, {8}};
    CHECK(worst_case_entropy(unary) == doctest::Approx(0.0));
    SymbolDistribution root{1, {0}};
    CHECK(worst_case_entropy(root) == doctest::Approx(0.0));
}

TEST_CASE("empirical entropy: example trie, adversarial family, root-only") {
    // n H_0 = [2 log 2 + 2 log 2] + [1 log 4 + 3 log(4/3)]
    double expect = 4.0 + std::log2(4.0) + 3.0 * std::log2(4.0 / 3.0);
    CHECK(empirical_entropy(example_trie4(), 0) == doctest::Approx(expect).epsilon(kTol));

    Trie fam = make_level_alphabet_trie(2, 3);
    CHECK(fam.n() == 15);
    CHECK(empirical_entropy(fam, 1) == doctest::Approx(0.0));
    CHECK(empirical_entropy_is_zero(fam, 1));
    CHECK(!empirical_entropy_is_zero(fam, 0));

    Trie root = Trie::from_dictionary({}, letters(2));
    for (std::uint32_t k = 0; k <= 3; ++k) CHECK(empirical_entropy(root, k) == 0.0);
}

TEST_CASE("label entropy: level-alphabet trie, single symbol, example trie") {
    Trie fam = make_level_alphabet_trie(2, 3);
    for (std::uint32_t k = 3; k <= 5; ++k)
        CHECK(label_entropy(fam, k) == doctest::Approx(14.0).epsilon(kTol));
    for (std::uint32_t k = 0; k <= 5; ++k)
        CHECK(label_entropy(fam, k) >= 14.0 - rel_tol(14.0));

    std::vector<Trie::Edge> path_edges{{0, 1, 'a'}, {1, 2, 'a'}};
    Trie path = Trie::from_edges(3, path_edges, letters(1));
    CHECK(label_entropy(path, 0) == doctest::Approx(0.0));

    // cover(eps) = "aab": 3 H_0 = 2 log(3/2) + log 3
    double expect = 2 * std::log2(1.5) + std::log2(3.0);
    CHECK(label_entropy(example_trie4(), 0) == doctest::Approx(expect).epsilon(kTol));
}

TEST_CASE("label entropy at k=0 equals the label multiset string entropy") {
    std::mt19937_64 rng(test_seed());
    for (int iter = 0; iter < 20; ++iter) {
        Trie t = make_random_trie(2 + rng() % 100, 1 + rng() % 6, rng);
        auto d = t.symbol_distribution();
        double expect = static_cast<double>(t.n() - 1) * string_h0(d.counts);
        CHECK(label_entropy(t, 0) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("entropy inequalities on random tries") {
    std::mt19937_64 rng(test_seed());
    for (int iter = 0; iter < 40; ++iter) {
        std::uint64_t n = 1 + rng() % 200;
        std::size_t sigma = 1 + rng() % 8;
        Trie t = make_random_trie(n, sigma, rng);
        double nh_prev = 0;
        for (std::uint32_t k = 0; k <= 4; ++k) {
            double nh = empirical_entropy(t, k);
            if (k > 0) CHECK(nh <= nh_prev + rel_tol(nh_prev));
            CHECK(nh <= label_entropy(t, k) + 1.443 * static_cast<double>(n) + rel_tol(n));
            nh_prev = nh;
        }
        double h_wc = worst_case_entropy(t.symbol_distribution());
        double nh0 = empirical_entropy(t, 0);
        double lo = nh0 - static_cast<double>(sigma) * std::log2(static_cast<double>(n) + 1) -
                    std::log2(static_cast<double>(n));
        double hi = nh0 - std::log2(static_cast<double>(n));
        CHECK(lo <= h_wc + rel_tol(h_wc));
        CHECK(h_wc <= hi + rel_tol(hi));
    }
}

TEST_CASE("level-alphabet family: shape and entropies") {
    Trie t = make_level_alphabet_trie(2, 2);
    CHECK(t.n() == 7);
    CHECK(t.sigma() == 4);

    Trie unary = make_level_alphabet_trie(1, 3);
    CHECK(unary.n() == 4);
    CHECK(unary.sigma() == 3);
    CHECK(unary.height() == 3);

    Trie fam = make_level_alphabet_trie(2, 3);
    for (std::uint32_t k = 1; k <= 3; ++k) CHECK(empirical_entropy_is_zero(fam, k));
    for (std::uint32_t k = 0; k <= 4; ++k)
        CHECK(label_entropy(fam, k) >=
              static_cast<double>(fam.n() - 1) * std::log2(2.0) - kTol);
}

TEST_CASE("complete binary trie: runs and nH_0 / n -> 2") {
    CHECK(make_complete_binary_trie(1).n() == 3);
    Trie t4 = make_complete_binary_trie(4);
    CHECK(t4.n() == 31);
    CHECK(runs_profile(t4).r == 16);

    for (std::uint32_t h = 2; h <= 8; ++h) {
        Trie t = make_complete_binary_trie(h);
        CHECK(runs_profile(t).r == (t.n() + 1) / 2);
    }

    Trie t10 = make_complete_binary_trie(10);
    double ratio = empirical_entropy(t10, 0) / static_cast<double>(t10.n());
    CHECK(std::abs(ratio - 2.0) < 0.01);

    Trie t2 = make_complete_binary_trie(2);
    CHECK(empirical_entropy(t2, 0) / static_cast<double>(t2.n()) ==
          doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("entropy report aggregates bounds and runs") {
    std::mt19937_64 rng(test_seed());
    Trie t = make_random_trie(120, 4, rng);
    auto reports = entropy_report(t, 3);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].runs_r == runs_profile(t).r);
    for (const auto& rep : reports) {
        CHECK(rep.bounds.emp_wc_ok);
        CHECK(rep.bounds.label_ok);
        CHECK(rep.bounds.runs_ok);
        CHECK(rep.bounds.monotone_ok);
        CHECK(rep.h_wc == doctest::Approx(reports[0].h_wc));
    }
}
