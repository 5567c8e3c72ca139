#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "triecode/alphabet.hpp"

namespace triecode {

using NodeId = std::uint32_t;

// Per-symbol edge counts {n_c} of a trie, summing to n - 1.
struct SymbolDistribution {
    std::uint64_t n = 1;                // node count
    std::vector<std::uint64_t> counts;  // indexed by SymbolIndex

    std::uint64_t edges() const;
    void validate() const;  // throws InputError unless sum(counts) == n - 1
};

// A k-context: the last k labels on a root path, left-padded with kPadSymbol.
using Context = std::vector<SymbolIndex>;

// Exact n_w / n_{w,c} tables for all realized contexts of one length k.
struct ContextStats {
    std::uint32_t k = 0;
    std::uint64_t n = 0;
    struct Entry {
        std::uint64_t n_w = 0;
        std::map<SymbolIndex, std::uint64_t> out_counts;  // c -> n_{w,c}, nonzero only
    };
    std::map<Context, Entry> entries;  // realized contexts only

    void validate(std::size_t sigma) const;
};

// Immutable edge-labeled ordered tree with distinct sibling labels.
// Node ids are dense pre-order ranks: the root is 0 and children are visited
// in label order, so preorder(t) is the identity sequence by construction.
class Trie {
   public:
    // Builds the trie of all distinct prefixes of the given strings (the empty
    // prefix is the root). Duplicates are deduplicated; a symbol outside the
    // alphabet is rejected with the offending string and position.
    static Trie from_dictionary(const std::vector<std::vector<Symbol>>& strings,
                                Alphabet alphabet);

    struct Edge {
        NodeId parent;
        NodeId child;
        Symbol symbol;
    };

    // Builds a trie from an explicit edge list over nodes 0..n-1 rooted at 0.
    // Duplicate sibling labels, cycles and disconnected nodes are reported
    // distinctly. Ids are renumbered to pre-order if they are not already.
    static Trie from_edges(std::uint64_t n, std::span<const Edge> edges, Alphabet alphabet);

    // Assembles a trie from parent/label arrays already in pre-order
    // (label[0] is ignored). Used by the decoder and the bijection inverse.
    static Trie from_preorder(std::vector<NodeId> parent, std::vector<SymbolIndex> label,
                              Alphabet alphabet);

    std::uint64_t n() const { return parent_.size(); }
    std::size_t sigma() const { return alphabet_.size(); }
    const Alphabet& alphabet() const { return alphabet_; }

    NodeId root() const { return 0; }
    NodeId parent(NodeId u) const { return parent_[u]; }
    // Incoming label of u as an alphabet index; kPadSymbol for the root.
    SymbolIndex label(NodeId u) const { return label_[u]; }
    std::uint32_t depth(NodeId u) const { return depth_[u]; }
    std::uint32_t height() const { return height_; }

    // Children of u in label order.
    std::span<const NodeId> children(NodeId u) const {
        return {children_.data() + child_off_[u], child_off_[u + 1] - child_off_[u]};
    }
    // Child of u along label c, or -1.
    std::int64_t child(NodeId u, SymbolIndex c) const;
    bool has_child(NodeId u, SymbolIndex c) const { return child(u, c) >= 0; }

    // Node ids in pre-order (the identity permutation, kept as an explicit
    // operation because callers iterate "the i-th pre-order node").
    std::vector<NodeId> preorder() const;

    // lambda_k(u): length-k context, left-padded with kPadSymbol.
    Context context(NodeId u, std::uint32_t k) const;

    ContextStats context_stats(std::uint32_t k) const;
    SymbolDistribution symbol_distribution() const;

    // Drops alphabet symbols with n_c = 0 (the effective alphabet). Labels are
    // re-indexed; a trie with no edges keeps a single placeholder symbol.
    Trie effective_alphabet() const;

    // Root paths of all leaves, in lexicographic order. Inverse of
    // from_dictionary on prefix-free deduplicated inputs.
    std::vector<std::vector<Symbol>> leaf_dictionary() const;

    bool operator==(const Trie& o) const {
        return alphabet_ == o.alphabet_ && parent_ == o.parent_ && label_ == o.label_;
    }

   private:
    Trie() = default;
    void finish();  // derives children/depth tables from parent_/label_

    Alphabet alphabet_;
    std::vector<NodeId> parent_;        // parent_[0] == 0
    std::vector<SymbolIndex> label_;    // label_[0] == kPadSymbol
    std::vector<std::uint32_t> depth_;
    std::vector<std::size_t> child_off_;  // CSR offsets into children_
    std::vector<NodeId> children_;
    std::uint32_t height_ = 0;
};

}  // namespace triecode
