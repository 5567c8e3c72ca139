#include "triecode/trie.hpp"

#include <algorithm>
#include <numeric>

#include "triecode/bigint.hpp"

namespace triecode {

std::uint64_t SymbolDistribution::edges() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

void SymbolDistribution::validate() const {
    if (n < 1) throw InputError("symbol distribution: node count must be >= 1");
    if (edges() != n - 1)
        throw InputError("symbol distribution: counts sum to " + std::to_string(edges()) +
                         ", expected n - 1 = " + std::to_string(n - 1));
}

void ContextStats::validate(std::size_t sigma) const {
    std::uint64_t total_nodes = 0, total_edges = 0;
    for (const auto& [w, e] : entries) {
        TRIECODE_CHECK(w.size() == k, "context length mismatch");
        TRIECODE_CHECK(e.n_w > 0, "unrealized context stored");
        for (const auto& [c, cnt] : e.out_counts) {
            TRIECODE_CHECK(c >= 0 && static_cast<std::size_t>(c) < sigma, "symbol out of range");
            TRIECODE_CHECK(cnt >= 1 && cnt <= e.n_w, "n_wc out of range");
            total_edges += cnt;
        }
        total_nodes += e.n_w;
    }
    TRIECODE_CHECK(total_nodes == n, "sum of n_w != n");
    TRIECODE_CHECK(total_edges == n - 1, "sum of n_wc != n - 1");
}

namespace {

// Mutable adjacency used by the builders before pre-order numbering.
struct Scratch {
    std::vector<std::map<SymbolIndex, std::size_t>> kids;  // label -> scratch node
    std::vector<SymbolIndex> label;

    std::size_t add(SymbolIndex lab) {
        kids.emplace_back();
        label.push_back(lab);
        return kids.size() - 1;
    }
};

}  // namespace

void Trie::finish() {
    const std::uint64_t n = parent_.size();
    TRIECODE_CHECK(n >= 1, "trie must have a root");
    depth_.assign(n, 0);
    height_ = 0;
    std::vector<std::size_t> deg(n, 0);
    for (NodeId u = 1; u < n; ++u) {
        TRIECODE_CHECK(parent_[u] < u, "parent must precede child in pre-order");
        deg[parent_[u]]++;
        depth_[u] = depth_[parent_[u]] + 1;
        height_ = std::max(height_, depth_[u]);
    }
    child_off_.assign(n + 1, 0);
    for (NodeId u = 0; u < n; ++u) child_off_[u + 1] = child_off_[u] + deg[u];
    children_.assign(n ? n - 1 : 0, 0);
    std::vector<std::size_t> cur(child_off_.begin(), child_off_.end() - 1);
    for (NodeId u = 1; u < n; ++u) children_[cur[parent_[u]]++] = u;
    // Ids must be true pre-order ranks under label-ordered children: each
    // child list is label-sorted and a DFS visits 0, 1, ..., n-1 in order.
    for (NodeId u = 0; u < n; ++u) {
        auto ch = children(u);
        for (std::size_t i = 0; i + 1 < ch.size(); ++i)
            TRIECODE_CHECK(label_[ch[i]] < label_[ch[i + 1]],
                           "children not in strict label order");
    }
    std::vector<NodeId> stack{0};
    NodeId expect = 0;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        TRIECODE_CHECK(u == expect, "node ids are not in pre-order");
        ++expect;
        auto ch = children(u);
        for (std::size_t i = ch.size(); i-- > 0;) stack.push_back(ch[i]);
    }
    TRIECODE_CHECK(expect == n, "pre-order traversal must reach every node");
}

Trie Trie::from_preorder(std::vector<NodeId> parent, std::vector<SymbolIndex> label,
                         Alphabet alphabet) {
    Trie t;
    t.alphabet_ = std::move(alphabet);
    t.parent_ = std::move(parent);
    t.label_ = std::move(label);
    TRIECODE_CHECK(t.parent_.size() == t.label_.size(), "parent/label size mismatch");
    if (!t.label_.empty()) t.label_[0] = kPadSymbol;
    for (NodeId u = 1; u < t.parent_.size(); ++u)
        TRIECODE_CHECK(t.label_[u] >= 0 &&
                           static_cast<std::size_t>(t.label_[u]) < t.alphabet_.size(),
                       "edge label out of range");
    t.finish();
    return t;
}

Trie Trie::from_dictionary(const std::vector<std::vector<Symbol>>& strings, Alphabet alphabet) {
    Scratch s;
    s.add(kPadSymbol);  // root
    for (std::size_t si = 0; si < strings.size(); ++si) {
        std::size_t cur = 0;
        for (std::size_t pos = 0; pos < strings[si].size(); ++pos) {
            auto idx = alphabet.index_of(strings[si][pos]);
            if (!idx)
                throw InputError("string " + std::to_string(si) + ", position " +
                                 std::to_string(pos) + ": symbol not in alphabet");
            auto [it, inserted] = s.kids[cur].try_emplace(*idx, 0);
            if (inserted) it->second = s.add(*idx);
            cur = it->second;
        }
    }
    // Number nodes in pre-order (maps iterate in label order).
    std::vector<NodeId> parent;
    std::vector<SymbolIndex> label;
    parent.reserve(s.kids.size());
    label.reserve(s.kids.size());
    std::vector<std::pair<std::size_t, NodeId>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [node, par] = stack.back();
        stack.pop_back();
        NodeId id = static_cast<NodeId>(parent.size());
        parent.push_back(par);
        label.push_back(s.label[node]);
        for (auto it = s.kids[node].rbegin(); it != s.kids[node].rend(); ++it)
            stack.push_back({it->second, id});
    }
    return from_preorder(std::move(parent), std::move(label), std::move(alphabet));
}

Trie Trie::from_edges(std::uint64_t n, std::span<const Edge> edges, Alphabet alphabet) {
    if (n < 1) throw InputError("edge list: node count must be >= 1");
    std::vector<std::map<SymbolIndex, NodeId>> kids(n);
    std::vector<std::int64_t> par(n, -1);
    for (const Edge& e : edges) {
        if (e.parent >= n || e.child >= n)
            throw InputError("edge list: node id out of range");
        if (e.child == 0) throw InputError("edge list: the root cannot have an incoming edge");
        auto idx = alphabet.index_of(e.symbol);
        if (!idx) throw InputError("edge list: symbol not in alphabet");
        if (par[e.child] != -1)
            throw InputError("edge list: node " + std::to_string(e.child) +
                             " has two incoming edges");
        par[e.child] = e.parent;
        if (!kids[e.parent].try_emplace(*idx, e.child).second)
            throw InputError("edge list: duplicate sibling label at node " +
                             std::to_string(e.parent));
    }
    for (NodeId u = 1; u < n; ++u) {
        if (par[u] != -1) continue;
        throw InputError("edge list: node " + std::to_string(u) + " is disconnected");
    }
    // Every non-root has one parent, so a node off the root component sits on
    // a cycle; detect it by walking the parent chain.
    std::vector<NodeId> parent, order(n, 0);
    std::vector<SymbolIndex> label;
    std::vector<char> seen(n, 0);
    std::vector<std::pair<NodeId, NodeId>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [node, par_id] = stack.back();
        stack.pop_back();
        seen[node] = 1;
        order[node] = static_cast<NodeId>(parent.size());
        parent.push_back(par_id);
        label.push_back(kPadSymbol);  // filled once pre-order ids are known
        for (auto it = kids[node].rbegin(); it != kids[node].rend(); ++it)
            stack.push_back({it->second, order[node]});
    }
    if (parent.size() != n) {
        for (NodeId u = 0; u < n; ++u) {
            if (seen[u]) continue;
            NodeId w = u;
            for (std::uint64_t steps = 0; steps <= n; ++steps) w = static_cast<NodeId>(par[w]);
            // w now sits on the cycle itself
            throw InputError("edge list: node " + std::to_string(w) + " lies on a cycle");
        }
    }
    // Second pass to fill labels now that pre-order ids are known.
    for (NodeId u = 0; u < n; ++u)
        for (const auto& [c, v] : kids[u]) label[order[v]] = c;
    label[0] = kPadSymbol;
    return from_preorder(std::move(parent), std::move(label), std::move(alphabet));
}

std::int64_t Trie::child(NodeId u, SymbolIndex c) const {
    auto ch = children(u);
    auto it = std::lower_bound(ch.begin(), ch.end(), c,
                               [&](NodeId v, SymbolIndex x) { return label_[v] < x; });
    if (it == ch.end() || label_[*it] != c) return -1;
    return static_cast<std::int64_t>(*it);
}

std::vector<NodeId> Trie::preorder() const {
    std::vector<NodeId> order(n());
    std::iota(order.begin(), order.end(), NodeId{0});
    return order;
}

Context Trie::context(NodeId u, std::uint32_t k) const {
    Context w(k, kPadSymbol);
    NodeId cur = u;
    for (std::uint32_t i = k; i-- > 0 && cur != 0;) {
        w[i] = label_[cur];
        cur = parent_[cur];
    }
    return w;
}

ContextStats Trie::context_stats(std::uint32_t k) const {
    ContextStats cs;
    cs.k = k;
    cs.n = n();
    for (NodeId u = 0; u < n(); ++u) {
        auto& entry = cs.entries[context(u, k)];
        entry.n_w++;
        for (NodeId v : children(u)) entry.out_counts[label_[v]]++;
    }
    cs.validate(sigma());
    return cs;
}

SymbolDistribution Trie::symbol_distribution() const {
    SymbolDistribution d;
    d.n = n();
    d.counts.assign(sigma(), 0);
    for (NodeId u = 1; u < n(); ++u) d.counts[static_cast<std::size_t>(label_[u])]++;
    d.validate();
    return d;
}

Trie Trie::effective_alphabet() const {
    SymbolDistribution d = symbol_distribution();
    std::vector<Symbol> kept;
    std::vector<SymbolIndex> remap(sigma(), kPadSymbol);
    for (std::size_t i = 0; i < sigma(); ++i) {
        if (d.counts[i] == 0) continue;
        remap[i] = static_cast<SymbolIndex>(kept.size());
        kept.push_back(alphabet_.symbol(static_cast<SymbolIndex>(i)));
    }
    if (kept.empty()) kept.push_back(alphabet_.symbol(0));
    std::vector<SymbolIndex> label = label_;
    for (NodeId u = 1; u < n(); ++u) label[u] = remap[static_cast<std::size_t>(label[u])];
    return from_preorder(parent_, std::move(label), Alphabet(std::move(kept)));
}

std::vector<std::vector<Symbol>> Trie::leaf_dictionary() const {
    // Pre-order visits children in label order, so ascending leaf ids give
    // the paths in lexicographic order already.
    std::vector<std::vector<Symbol>> out;
    for (NodeId u = 0; u < n(); ++u) {
        if (!children(u).empty()) continue;
        std::vector<Symbol> path(depth_[u]);
        NodeId cur = u;
        for (std::size_t i = path.size(); i-- > 0; cur = parent_[cur])
            path[i] = alphabet_.symbol(label_[cur]);
        out.push_back(std::move(path));
    }
    return out;
}

}  // namespace triecode
