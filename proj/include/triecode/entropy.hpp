#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "triecode/trie.hpp"

namespace triecode {

// 0-th order empirical entropy of a multiset with the given counts, in bits
// per symbol (0 log x/0 = 0).
double string_h0(std::span<const std::uint64_t> counts);

// H^wc = sum_c log2 C(n, n_c) - log2 n, from exact binomials.
double worst_case_entropy(const SymbolDistribution& dist);

// Unnormalized k-th order empirical trie entropy n*H_k.
double empirical_entropy(const Trie& t, std::uint32_t k);
double empirical_entropy(const ContextStats& stats);

// Unnormalized k-th order label entropy (n-1)*H^label_k (cover strings).
double label_entropy(const Trie& t, std::uint32_t k);

// True iff every n_{w,c} is 0 or n_w, i.e. n*H_k is exactly zero (integer
// test, no floating point).
bool empirical_entropy_is_zero(const Trie& t, std::uint32_t k);

// One row of the per-k entropy profile, with every inequality the profile is
// expected to satisfy evaluated on both sides.
struct EntropyReport {
    std::uint32_t k = 0;
    double h_wc = 0;          // bits, constant over k
    double nh_k = 0;          // n * H_k
    double nh_label_k = 0;    // (n-1) * H^label_k
    std::uint64_t runs_r = 0; // XBWT runs, constant over k

    struct Bounds {
        double emp_wc_lower = 0;   // n*H_0 - sigma*log(n+1) - log n  (k = 0 row)
        double emp_wc_upper = 0;   // n*H_0 - log n                   (k = 0 row)
        bool emp_wc_ok = false;
        double label_bound = 0;    // (n-1)*H^label_k + 1.443 n
        bool label_ok = false;
        double runs_bound = 0;     // n*H_k + sigma^{k+1}
        bool runs_ok = false;
        bool monotone_ok = false;  // nh_{k} <= nh_{k-1} (true for k = 0)
    } bounds;
};

// Profile for k = 0..k_max. Builds the XBWT runs statistic once.
std::vector<EntropyReport> entropy_report(const Trie& t, std::uint32_t k_max);

// Complete balanced y-ary trie whose depth-d internal nodes all branch on the
// same y symbols: n*H_k = 0 for k >= 1 while the label entropy stays
// >= (n-1) log y.
Trie make_level_alphabet_trie(std::uint32_t y, std::uint32_t h);

// Complete balanced binary trie of height h over {a, b}: n = 2^{h+1} - 1 and
// the XBWT runs count is exactly (n+1)/2.
Trie make_complete_binary_trie(std::uint32_t h);

}  // namespace triecode
