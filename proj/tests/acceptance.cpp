// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code 0 iff everything passed.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "test_util.hpp"
#include "triecode/bitvector.hpp"
#include "triecode/boosted.hpp"
#include "triecode/coder.hpp"
#include "triecode/combinatorics.hpp"
#include "triecode/entropy.hpp"
#include "triecode/xbwt.hpp"

using namespace triecode;
using namespace triecode::testutil;

namespace {

std::uint64_t g_seed = 20250810;

struct Checker {
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        ++failures;
        if (notes.size() < 5) notes.push_back(what);
    }
};

constexpr double kRel = 1e-9;
double tol(double scale) { return kRel * std::max(1.0, std::abs(scale)); }

// ---- criterion 1 ----------------------------------------------------------

void criterion_counting(Checker& c) {
    for (std::uint64_t n = 1; n <= 6; ++n) {
        for (std::size_t sigma = 1; sigma <= 3; ++sigma) {
            mpz_class total = 0;
            for (const auto& counts : all_distributions(n, sigma)) {
                SymbolDistribution d{n, counts};
                auto tries = enumerate_tries(d, letters(sigma));
                c.expect(count_tries(d) == tries.size(),
                         "enumeration size != closed formula at n=" + std::to_string(n));
                total += static_cast<unsigned long>(tries.size());
            }
            c.expect(total == count_all_tries(n, sigma),
                     "distribution sum != (1/n) C(n sigma, n-1) at n=" + std::to_string(n) +
                         ", sigma=" + std::to_string(sigma));
        }
    }
}

// ---- criterion 2 ----------------------------------------------------------

void criterion_bijection(Checker& c) {
    std::mt19937_64 rng(g_seed + 2);
    for (int iter = 0; iter < 1000; ++iter) {
        Trie t = make_random_trie(1 + rng() % 200, 1 + rng() % 8, rng);
        auto back = matrix_to_trie(trie_to_matrix(t), t.alphabet());
        c.expect(back.has_value() && *back == t, "bijection round trip failed");
    }
    for (int iter = 0; iter < 200; ++iter) {
        std::uint64_t n = 2 + rng() % 39;
        std::size_t sigma = 1 + rng() % 6;
        DegreeMatrix m = random_matrix(random_distribution(n, sigma, rng), rng);
        std::set<std::vector<std::int64_t>> ds;
        std::uint64_t accepted = 0;
        for (std::uint64_t r = 0; r < n; ++r) {
            DegreeMatrix rot = rotate(m, r);
            ds.insert(LukasiewiczPath::of(rot).D);
            if (matrix_to_trie(rot, letters(sigma))) ++accepted;
        }
        c.expect(ds.size() == n, "rotations not pairwise distinct");
        c.expect(accepted == 1, "not exactly one rotation accepted");
    }
}

// ---- criterion 3 ----------------------------------------------------------

void criterion_coder_golden(Checker& c) {
    Trie t = example_trie4();
    TrieCode code = compress(t, 0);
    mpz_class d7 = 1;
    d7 <<= 7;
    mpz_class d12 = 1;
    d12 <<= 12;
    c.expect(code.final_interval.l == mpq_class(115, d7), "l != 115/2^7");
    c.expect(code.final_interval.s == mpq_class(27, d12), "s != 27/2^12");
    c.expect(code.d == 9, "d != 9");
    std::string bits;
    for (std::uint64_t i = 1; i <= code.d; ++i) bits += code.payload_bit(i) ? '1' : '0';
    c.expect(bits == "111001101", "payload bits != 111001101");

    TrieCode handmade;
    handmade.k = 0;
    handmade.n = 4;
    handmade.alphabet = letters(2);
    handmade.model.k = 0;
    handmade.model.n = 4;
    ContextStats::Entry e;
    e.n_w = 4;
    e.out_counts[0] = 2;
    e.out_counts[1] = 1;
    handmade.model.entries[Context{}] = e;
    handmade.d = 9;
    handmade.payload = {0xE6, 0x80};
    c.expect(decompress(handmade) == t, "reference bits + model do not reproduce the trie");
}

// ---- criterion 4 ----------------------------------------------------------

void check_coder(Checker& c, const Trie& t, std::uint32_t k) {
    TrieCode code = compress(t, k);
    c.expect(decompress(code) == t, "coder round trip failed");
    std::int64_t ceil_nhk = ceil_log2_q(1 / code.final_interval.s);
    c.expect(static_cast<std::int64_t>(code.d) <= ceil_nhk + 2, "d > ceil(nH_k) + 2");
    double nh_k = empirical_entropy(t, k);
    double neg_log_s = -log2_q(code.final_interval.s);
    c.expect(std::abs(neg_log_s - nh_k) <= tol(nh_k), "-log2 s != nH_k");
}

void criterion_coder_bounds(Checker& c) {
    for (std::uint64_t n = 1; n <= 6; ++n)
        for (std::size_t sigma = 1; sigma <= 5; ++sigma)
            for (const auto& counts : all_distributions(n, sigma))
                for (const Trie& t : enumerate_tries(SymbolDistribution{n, counts},
                                                     letters(sigma)))
                    for (std::uint32_t k = 0; k <= 2; ++k) check_coder(c, t, k);

    std::mt19937_64 rng(g_seed + 4);
    for (int iter = 0; iter < 500; ++iter) {
        Trie t = make_random_trie(1 + rng() % 300, 1 + rng() % 8, rng);
        for (std::uint32_t k = 0; k <= 2; ++k) check_coder(c, t, k);
    }
}

// ---- criterion 5 ----------------------------------------------------------

void check_entropy_suite(Checker& c, const Trie& t) {
    const double n = static_cast<double>(t.n());
    const double sigma = static_cast<double>(t.sigma());
    std::vector<double> nh(5);
    for (std::uint32_t k = 0; k <= 4; ++k) nh[k] = empirical_entropy(t, k);
    for (std::uint32_t k = 0; k <= 3; ++k)
        c.expect(nh[k + 1] <= nh[k] + tol(nh[k]), "H_{k+1} > H_k");
    double h_wc = worst_case_entropy(t.symbol_distribution());
    double lo = nh[0] - sigma * std::log2(n + 1) - std::log2(n);
    double hi = nh[0] - std::log2(n);
    c.expect(lo <= h_wc + tol(h_wc), "emp_wc lower bound violated");
    c.expect(h_wc <= hi + tol(hi), "emp_wc upper bound violated");
    for (std::uint32_t k = 0; k <= 4; ++k) {
        double bound = label_entropy(t, k) + 1.443 * n;
        c.expect(nh[k] <= bound + tol(bound), "label-entropy bound violated");
    }
}

void criterion_entropy_suite(Checker& c) {
    std::mt19937_64 rng(g_seed + 5);
    for (int iter = 0; iter < 500; ++iter)
        check_entropy_suite(c, make_random_trie(1 + rng() % 500, 1 + rng() % 16, rng));
    check_entropy_suite(c, make_level_alphabet_trie(2, 3));
    check_entropy_suite(c, make_complete_binary_trie(6));
}

// ---- criterion 6 ----------------------------------------------------------

void criterion_adversarial_family(Checker& c) {
    Trie fam = make_level_alphabet_trie(2, 3);
    c.expect(fam.n() == 15, "family trie must have 15 nodes");
    for (std::uint32_t k = 1; k <= 3; ++k)
        c.expect(empirical_entropy_is_zero(fam, k),
                 "nH_k not exactly zero at k=" + std::to_string(k));
    for (std::uint32_t k = 0; k <= 4; ++k)
        c.expect(label_entropy(fam, k) >= 14.0 - kRel,
                 "(n-1)H^label_k < 14 at k=" + std::to_string(k));
}

// ---- criterion 7 ----------------------------------------------------------

void criterion_xbwt_goldens(Checker& c) {
    Trie t = example_trie28();
    c.expect(runs_profile(t).r == 12, "28-node example: r != 12");
    XbwtIndex idx = XbwtIndex::build(t);
    c.expect(idx.runs().r == 12, "28-node example index: r != 12");
    c.expect(idx.parent(17) == 21, "28-node example: parent(17) != 21");

    auto order = colex_sort(t);
    for (const auto& [expected_rank, path] : example28_paths()) {
        std::int64_t u = 0;
        for (Symbol s : path) u = t.child(static_cast<NodeId>(u), *t.alphabet().index_of(s));
        c.expect(u >= 0 && order.rank[static_cast<NodeId>(u)] == expected_rank,
                 "28-node example: colex rank mismatch");
    }

    for (std::uint32_t h = 2; h <= 8; ++h) {
        Trie cb = make_complete_binary_trie(h);
        c.expect(runs_profile(cb).r == (cb.n() + 1) / 2,
                 "complete binary trie: r != (n+1)/2 at h=" + std::to_string(h));
    }
}

// ---- criteria 8 and 9 share a corpus ---------------------------------------

const std::vector<Trie>& shared_corpus() {
    static const std::vector<Trie> corpus = [] {
        std::mt19937_64 rng(g_seed + 8);
        std::vector<Trie> out;
        out.reserve(200);
        for (int iter = 0; iter < 200; ++iter)
            out.push_back(make_random_trie(1 + rng() % 200, 1 + rng() % 16, rng));
        return out;
    }();
    return corpus;
}

void criterion_query_oracle(Checker& c) {
    std::mt19937_64 rng(g_seed + 88);
    int iter = -1;
    for (const Trie& t : shared_corpus()) {
        ++iter;
        const std::uint64_t n = t.n();
        const std::size_t sigma = t.sigma();
        std::optional<std::uint64_t> bs;
        if (iter % 2 == 1) bs = 8 + rng() % 57;
        XbwtIndex idx = XbwtIndex::build(t, {.block_size = bs});
        auto order = colex_sort(t);

        // traversal oracle: suffix (length <= 6) -> number of nodes
        std::map<std::vector<SymbolIndex>, std::uint64_t> suffix_count;
        for (NodeId u = 0; u < n; ++u) {
            auto path = root_path(t, u);
            std::size_t max_len = std::min<std::size_t>(path.size(), 6);
            for (std::size_t len = 0; len <= max_len; ++len)
                suffix_count[{path.end() - static_cast<std::ptrdiff_t>(len), path.end()}]++;
        }
        for (const auto& [p, cnt] : suffix_count)
            c.expect(idx.count(p) == cnt, "count(path suffix) != traversal oracle");
        for (int q = 0; q < 100; ++q) {
            std::vector<SymbolIndex> p;
            std::size_t len = rng() % 7;
            for (std::size_t j = 0; j < len; ++j)
                p.push_back(static_cast<SymbolIndex>(rng() % sigma));
            auto it = suffix_count.find(p);
            std::uint64_t expect = it == suffix_count.end() ? 0 : it->second;
            c.expect(idx.count(p) == expect, "count(random pattern) != traversal oracle");
        }

        // navigation, exhaustively
        for (std::uint64_t i = 1; i <= n; ++i) {
            NodeId u = order.node[i - 1];
            for (std::size_t s = 0; s < sigma; ++s) {
                std::int64_t v = t.child(u, static_cast<SymbolIndex>(s));
                std::int64_t expect =
                    v < 0 ? -1 : static_cast<std::int64_t>(order.rank[static_cast<NodeId>(v)]);
                c.expect(idx.child(i, static_cast<SymbolIndex>(s)) == expect,
                         "child() != pointer navigation");
            }
            if (i >= 2)
                c.expect(idx.parent(i) == order.rank[t.parent(u)],
                         "parent() != pointer navigation");
            auto kids = t.children(u);
            for (std::uint64_t k = 1; k <= kids.size() + 1; ++k) {
                std::int64_t expect =
                    k <= kids.size() ? static_cast<std::int64_t>(order.rank[kids[k - 1]]) : -1;
                c.expect(idx.kth_child(i, k) == expect, "kth_child() != pointer navigation");
            }
        }
    }
}

void criterion_space_inequalities(Checker& c) {
    std::mt19937_64 rng(g_seed + 99);
    for (const Trie& t : shared_corpus()) {
        const std::uint64_t n = t.n();
        XbwtIndex idx = XbwtIndex::build(t);
        auto rep = idx.space_report(t, 1);
        for (const auto& pk : rep.per_k)
            c.expect(pk.ok, "payload bound violated at k=" + std::to_string(pk.k));

        auto rp = runs_profile(t);
        for (std::uint32_t k = 0; k <= 3; ++k) {
            double bound = empirical_entropy(t, k) +
                           std::pow(static_cast<double>(t.sigma()), k + 1);
            c.expect(static_cast<double>(rp.r) <= bound + tol(bound),
                     "runs bound violated at k=" + std::to_string(k));
        }

        auto dist = t.symbol_distribution();
        bool all_light = true;
        for (auto nc : dist.counts) all_light = all_light && 2 * nc <= n;
        if (all_light && n >= 2) {
            double sum_log = 0;
            for (auto nc : dist.counts) sum_log += log2_z(binomial(n, nc));
            c.expect(sum_log >= static_cast<double>(n) - 1 -
                                    std::log2(static_cast<double>(n)) - kRel,
                     "sum log C(n, n_c) < n - 1 - log n");
        }

        // instrumented probe bound for rank-through-select
        auto order = colex_sort(t);
        for (std::size_t s = 0; s < t.sigma(); ++s) {
            std::vector<std::uint8_t> bits(n, 0);
            for (std::uint64_t i = 0; i < n; ++i)
                bits[i] = t.has_child(order.node[i], static_cast<SymbolIndex>(s)) ? 1 : 0;
            PlainBitvector pv(bits);
            if (pv.ones() == 0) continue;
            std::uint64_t bound = static_cast<std::uint64_t>(std::ceil(
                                      std::log2(static_cast<double>(pv.ones())))) + 1;
            for (int q = 0; q < 16; ++q) {
                std::uint64_t i = 1 + rng() % n;
                std::uint64_t probes = 0;
                std::uint64_t r = rank_via_select(pv, i, &probes);
                c.expect(r == pv.rank(i), "rank-through-select mismatch");
                c.expect(probes <= std::max<std::uint64_t>(bound, 1),
                         "probe count exceeds ceil(log2 ones) + 1");
            }
        }
    }
}

// ---- criterion 10 ----------------------------------------------------------

void criterion_bitvector_layer(Checker& c) {
    std::mt19937_64 rng(g_seed + 10);
    const std::vector<double> densities{0.0, 0.01, 0.5, 0.99, 1.0};
    std::vector<std::uint64_t> lengths;
    for (std::uint64_t m = 1; m <= 64; ++m) lengths.push_back(m);
    lengths.push_back(1000);
    lengths.push_back(10000);

    int vectors = 0;
    for (int rep = 0; rep < 3 && vectors < 1000; ++rep) {
        for (std::uint64_t m : lengths) {
            for (double density : densities) {
                ++vectors;
                std::vector<std::uint8_t> bits(m);
                std::bernoulli_distribution coin(density);
                for (auto& b : bits) b = coin(rng) ? 1 : 0;
                std::vector<std::uint64_t> prefix(m + 1, 0);
                for (std::uint64_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + bits[i];

                PlainBitvector pv(bits);
                BoostedBitvector bv(bits, 1 + rng() % 96);
                c.expect(pv.ones() == prefix[m], "plain ones mismatch");
                c.expect(bv.decode_all() == bits, "boosted decode mismatch");
                for (int q = 0; q < 24; ++q) {
                    std::uint64_t i = 1 + rng() % m;
                    c.expect(pv.rank(i) == prefix[i], "plain rank != naive");
                    c.expect(bv.rank(i) == prefix[i], "boosted rank != naive");
                    std::int64_t pr = bits[i - 1] ? static_cast<std::int64_t>(prefix[i]) : -1;
                    c.expect(pv.prank(i) == pr, "plain prank != naive");
                    c.expect(bv.prank(i) == pr, "boosted prank != naive");
                }
                std::vector<std::uint32_t> xs;
                for (std::uint64_t i = 0; i < bv.num_blocks(); ++i)
                    xs.push_back(bv.block_ones(i));
                SelectOverlay overlay(xs);
                std::uint64_t step = 1 + pv.ones() / 32;
                for (std::uint64_t j = 1; j <= pv.ones(); j += step) {
                    std::uint64_t pos = pv.select(j);
                    c.expect(prefix[pos] == j && bits[pos - 1] == 1, "plain select != naive");
                    c.expect(bv.select(j) == pos, "boosted select != plain select");
                    c.expect(overlay.select(bv, j) == pos, "overlay select != plain select");
                }
            }
        }
    }

    for (std::uint32_t w = 1; w <= 12; ++w) {
        for (std::uint32_t pattern = 0; pattern < (1u << w); ++pattern) {
            std::vector<std::uint8_t> bits(w);
            std::uint32_t ones = 0;
            for (std::uint32_t i = 0; i < w; ++i) {
                bits[i] = (pattern >> i) & 1;
                ones += bits[i];
            }
            mpz_class offset = enumerative_encode(bits);
            bool ok = offset < binomial(w, ones) &&
                      enumerative_decode(w, ones, offset) == bits;
            c.expect(ok, "enumerative code not bijective at width " + std::to_string(w));
        }
    }
}

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;  // 0 = no stated budget
    std::function<void(Checker&)> run;
};

}  // namespace

namespace triecode::testutil {
void set_test_seed(std::uint64_t s);
}

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i)
        if (std::strncmp(argv[i], "--seed=", 7) == 0)
            g_seed = std::strtoull(argv[i] + 7, nullptr, 10);
    triecode::testutil::set_test_seed(g_seed);

    std::vector<Criterion> criteria{
        {1, "counting formula vs enumeration (n<=6, sigma<=3, Vandermonde sum)", 10,
         criterion_counting},
        {2, "bijection round trip and rotation uniqueness", 5, criterion_bijection},
        {3, "golden arithmetic coding (l, s, d, bits, inverse)", 0,
         criterion_coder_golden},
        {4, "coder round trip, d <= ceil(nH_k)+2, -log2 s = nH_k", 60,
         criterion_coder_bounds},
        {5, "entropy inequality suite (monotonicity, sandwich, label bound)", 30,
         criterion_entropy_suite},
        {6, "adversarial family: nH_k = 0 exactly, label entropy >= 14", 0,
         criterion_adversarial_family},
        {7, "XBWT goldens: 28-node example and complete binary tries", 0,
         criterion_xbwt_goldens},
        {8, "query oracle equivalence (count, child, parent, kth_child)", 60,
         criterion_query_oracle},
        {9, "space inequalities, runs bound, succinctness, probe bounds", 0,
         criterion_space_inequalities},
        {10, "bitvector layer vs naive scans; enumerative bijectivity", 30,
         criterion_bitvector_layer},
    };

    bool all_pass = true;
    for (auto& crit : criteria) {
        Checker c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            crit.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_budget = crit.budget_seconds == 0 || secs < crit.budget_seconds;
        bool pass = c.failures == 0 && in_budget;
        all_pass = all_pass && pass;
        std::ostringstream line;
        line << (pass ? "PASS" : "FAIL") << " criterion " << crit.id << ": " << crit.name
             << " [" << c.checks << " checks, " << std::fixed;
        line.precision(2);
        line << secs << "s";
        if (crit.budget_seconds > 0) line << " / " << crit.budget_seconds << "s budget";
        line << "]";
        std::cout << line.str() << std::endl;
        if (!in_budget) std::cout << "    over budget" << std::endl;
        for (const auto& note : c.notes) std::cout << "    " << note << std::endl;
    }
    return all_pass ? 0 : 1;
}
