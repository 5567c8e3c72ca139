#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "triecode/boosted.hpp"
#include "triecode/trie.hpp"

namespace triecode {

// Co-lexicographic order of the root paths: ranks are 1-based, the root
// (empty path) has rank 1.
struct ColexOrder {
    std::vector<std::uint32_t> rank;  // node id -> rank
    std::vector<NodeId> node;         // rank - 1 -> node id
};

// Comparison-based colex sort by iterated refinement over
// (incoming label, parent rank) pairs; at most height+1 rounds.
ColexOrder colex_sort(const Trie& t);

struct RunsProfile {
    std::uint64_t r = 0;              // total runs
    std::vector<std::uint64_t> r_c;   // c-run breaks per symbol
};

// Runs statistic straight from the trie (no index build needed).
RunsProfile runs_profile(const Trie& t);

// Auto applies the heavy-symbol complement trick iff some n_c > n/2.
enum class ComplementMode { Auto, Off };

struct XbwtOptions {
    std::optional<std::uint64_t> block_size;  // default: default_block_size(n, sigma)
    ComplementMode complement = ComplementMode::Auto;
};

struct SpaceReport {
    std::uint64_t payload_bits = 0;    // sum of per-block enumerative budgets
    std::uint64_t overhead_bits = 0;   // R rows + S overlay + C + block directory
    std::uint64_t aux_bits = 0;        // rank/select machinery of the S bitvector
    std::uint64_t block_size = 0;
    std::uint64_t nonempty_blocks = 0;
    struct PerK {
        std::uint32_t k = 0;
        double nh_k = 0;
        std::uint64_t realized_contexts = 0;  // ell_k
        double bound = 0;  // nH_k + sigma ceil(n/b) + #nonempty + sigma (ell_k - 1) b
        bool ok = false;
    };
    std::vector<PerK> per_k;
    // Per-symbol binomial bound sum_c log C(n, min(n_c, n - n_c)) + #nonempty.
    double binomial_bound = 0;
    bool binomial_ok = false;
};

// Compressed XBWT index: sigma boosted bitvectors B_c in co-lex node order,
// the C array, and a global unary select overlay S. Immutable after build.
class XbwtIndex {
   public:
    static XbwtIndex build(const Trie& t, const XbwtOptions& options = {});

    std::uint64_t n() const { return n_; }
    std::size_t sigma() const { return alphabet_.size(); }
    const Alphabet& alphabet() const { return alphabet_; }
    std::uint64_t block_size() const { return b_; }
    SymbolIndex complemented_symbol() const { return complemented_; }
    const std::vector<std::uint64_t>& c_array() const { return c_; }
    std::uint64_t symbol_count(SymbolIndex c) const;  // n_c

    // rank/select/partial rank on the logical B_c (complement resolved).
    std::uint64_t rank(SymbolIndex c, std::uint64_t i) const;
    std::int64_t prank(SymbolIndex c, std::uint64_t i) const;
    std::uint64_t select(SymbolIndex c, std::uint64_t j) const;
    bool bit(SymbolIndex c, std::uint64_t i) const;

    // child(i, c) = C[c] + prank(i, B_c); -1 when u_i has no c-child.
    std::int64_t child(std::uint64_t i, SymbolIndex c) const;
    // parent(i) = select(i - C[c], B_c) with c the incoming label of u_i;
    // undefined for the root (i = 1).
    std::uint64_t parent(std::uint64_t i) const;
    // Incoming label of u_i recovered from the C array (root: kPadSymbol).
    SymbolIndex incoming_label(std::uint64_t i) const;
    // k-th child in label order, -1 if the out-degree is smaller; Theta(sigma)
    // scan over the bitvectors.
    std::int64_t kth_child(std::uint64_t i, std::uint64_t k) const;

    struct Interval {
        std::uint64_t lo = 1, hi = 0;
        std::uint64_t count() const { return lo <= hi ? hi - lo + 1 : 0; }
    };
    // Forward search: co-lex interval of the nodes reached by p (anchored
    // anywhere); empty pattern maps to [1, n]. Symbols outside the alphabet
    // yield an empty interval.
    Interval count_interval(std::span<const SymbolIndex> p) const;
    Interval count_interval_symbols(std::span<const Symbol> p) const;
    std::uint64_t count(std::span<const SymbolIndex> p) const;

    // Rank of the node spelling p from the root, or -1 (prefix matching).
    std::int64_t prefix_locate(std::span<const SymbolIndex> p) const;
    std::int64_t prefix_locate_symbols(std::span<const Symbol> p) const;

    RunsProfile runs() const;

    SpaceReport space_report(const Trie& t, std::uint32_t k_max) const;

    const BoostedBitvector& stored_bitvector(SymbolIndex c) const {
        return bv_[static_cast<std::size_t>(c)];
    }

    // alphabet_mode records how pattern text maps to symbols (0 = bytes,
    // 1 = UTF-8 code points); queries read it back to decode patterns.
    void serialize(std::ostream& os, std::uint8_t alphabet_mode = 0) const;
    static XbwtIndex load(std::istream& is, std::uint8_t* alphabet_mode = nullptr);

    bool operator==(const XbwtIndex& o) const;

   private:
    XbwtIndex() = default;
    void rebuild_overlay();

    std::uint64_t n_ = 0;
    Alphabet alphabet_;
    std::uint64_t b_ = 1;
    SymbolIndex complemented_ = kPadSymbol;   // kPadSymbol = none
    std::vector<std::uint64_t> c_;            // C[c] = sum_{c' < c} n_c' + 1
    std::vector<BoostedBitvector> bv_;        // stored (possibly complemented)
    PlainBitvector s_;                        // global unary overlay
    std::vector<std::uint64_t> s_ones_off_;   // stored ones before symbol c in S
    std::vector<std::uint64_t> s_pos_off_;    // S position offset of symbol c's region
};

// Colex intervals of the realized k-contexts, in colex order of the context;
// used by the space accounting and its tests.
std::vector<std::pair<std::uint64_t, std::uint64_t>> context_intervals(const Trie& t,
                                                                       const ColexOrder& order,
                                                                       std::uint32_t k);

}  // namespace triecode
