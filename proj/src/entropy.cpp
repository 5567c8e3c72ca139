#include "triecode/entropy.hpp"

#include <cmath>
#include <functional>

#include "triecode/bigint.hpp"
#include "triecode/xbwt.hpp"

namespace triecode {

namespace {

// n_wc * log2(n_w / n_wc) + (n_w - n_wc) * log2(n_w / (n_w - n_wc))
double binary_term(std::uint64_t n_w, std::uint64_t n_wc) {
    double r = 0;
    if (n_wc > 0 && n_wc < n_w)
        r = static_cast<double>(n_wc) * std::log2(static_cast<double>(n_w) / n_wc) +
            static_cast<double>(n_w - n_wc) *
                std::log2(static_cast<double>(n_w) / (n_w - n_wc));
    return r;
}

}  // namespace

double string_h0(std::span<const std::uint64_t> counts) {
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    if (total == 0) return 0;
    double h = 0;
    for (std::uint64_t c : counts)
        if (c > 0) h += static_cast<double>(c) / total * std::log2(static_cast<double>(total) / c);
    return h;
}

double worst_case_entropy(const SymbolDistribution& dist) {
    dist.validate();
    double bits = 0;
    for (std::uint64_t nc : dist.counts) bits += log2_z(binomial(dist.n, nc));
    return bits - std::log2(static_cast<double>(dist.n));
}

double empirical_entropy(const ContextStats& stats) {
    double bits = 0;
    for (const auto& [w, e] : stats.entries)
        for (const auto& [c, n_wc] : e.out_counts) bits += binary_term(e.n_w, n_wc);
    return bits;
}

double empirical_entropy(const Trie& t, std::uint32_t k) {
    return empirical_entropy(t.context_stats(k));
}

bool empirical_entropy_is_zero(const Trie& t, std::uint32_t k) {
    ContextStats stats = t.context_stats(k);
    for (const auto& [w, e] : stats.entries)
        for (const auto& [c, n_wc] : e.out_counts)
            if (n_wc != e.n_w) return false;
    return true;
}

double label_entropy(const Trie& t, std::uint32_t k) {
    ContextStats stats = t.context_stats(k);
    double bits = 0;
    for (const auto& [w, e] : stats.entries) {
        std::uint64_t m_w = 0;  // |cover(w)|
        for (const auto& [c, n_wc] : e.out_counts) m_w += n_wc;
        for (const auto& [c, n_wc] : e.out_counts)
            bits += static_cast<double>(n_wc) * std::log2(static_cast<double>(m_w) / n_wc);
    }
    return bits;
}

std::vector<EntropyReport> entropy_report(const Trie& t, std::uint32_t k_max) {
    const double n = static_cast<double>(t.n());
    const double sigma = static_cast<double>(t.sigma());
    const double h_wc = worst_case_entropy(t.symbol_distribution());
    const std::uint64_t r = runs_profile(t).r;
    const double tol = 1e-9 * std::max(1.0, n);

    std::vector<EntropyReport> out;
    double prev_nh = 0;
    for (std::uint32_t k = 0; k <= k_max; ++k) {
        EntropyReport rep;
        rep.k = k;
        rep.h_wc = h_wc;
        rep.nh_k = empirical_entropy(t, k);
        rep.nh_label_k = label_entropy(t, k);
        rep.runs_r = r;

        rep.bounds.emp_wc_lower = out.empty() ? rep.nh_k : out[0].nh_k;
        rep.bounds.emp_wc_lower -= sigma * std::log2(n + 1) + std::log2(n);
        rep.bounds.emp_wc_upper = (out.empty() ? rep.nh_k : out[0].nh_k) - std::log2(n);
        rep.bounds.emp_wc_ok =
            rep.bounds.emp_wc_lower <= h_wc + tol && h_wc <= rep.bounds.emp_wc_upper + tol;
        rep.bounds.label_bound = rep.nh_label_k + 1.443 * n;
        rep.bounds.label_ok = rep.nh_k <= rep.bounds.label_bound + tol;
        rep.bounds.runs_bound = rep.nh_k + std::pow(sigma, k + 1);
        rep.bounds.runs_ok = static_cast<double>(r) <= rep.bounds.runs_bound + tol;
        rep.bounds.monotone_ok = k == 0 || rep.nh_k <= prev_nh + tol;

        prev_nh = rep.nh_k;
        out.push_back(rep);
    }
    return out;
}

namespace {

// Complete y-ary tree where a node at depth d < h branches on the labels
// lab(d, 0..y-1). Ids are assigned on visit, i.e. in pre-order.
Trie make_complete_tree(std::uint32_t y, std::uint32_t h, Alphabet alphabet,
                        const std::function<SymbolIndex(std::uint32_t, std::uint32_t)>& lab) {
    std::vector<NodeId> parent;
    std::vector<SymbolIndex> label;
    struct Pending {
        NodeId parent_id;
        SymbolIndex incoming;
        std::uint32_t depth;
    };
    std::vector<Pending> stack{{0, kPadSymbol, 0}};
    while (!stack.empty()) {
        auto [par, in_lab, depth] = stack.back();
        stack.pop_back();
        NodeId id = static_cast<NodeId>(parent.size());
        parent.push_back(par);
        label.push_back(in_lab);
        if (depth == h) continue;
        for (std::uint32_t j = y; j-- > 0;) stack.push_back({id, lab(depth, j), depth + 1});
    }
    return Trie::from_preorder(std::move(parent), std::move(label), std::move(alphabet));
}

}  // namespace

Trie make_level_alphabet_trie(std::uint32_t y, std::uint32_t h) {
    TRIECODE_CHECK(y >= 1, "arity must be >= 1");
    const std::size_t sigma = std::max<std::size_t>(1, static_cast<std::size_t>(h) * y);
    std::vector<Symbol> symbols(sigma);
    for (std::size_t i = 0; i < sigma; ++i) symbols[i] = static_cast<Symbol>('a' + i);
    return make_complete_tree(y, h, Alphabet{symbols}, [&](std::uint32_t d, std::uint32_t j) {
        return static_cast<SymbolIndex>(d * y + j);
    });
}

Trie make_complete_binary_trie(std::uint32_t h) {
    return make_complete_tree(2, h, Alphabet{{Symbol{'a'}, Symbol{'b'}}},
                              [](std::uint32_t, std::uint32_t j) {
                                  return static_cast<SymbolIndex>(j);
                              });
}

}  // namespace triecode
