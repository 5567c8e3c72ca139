#include "triecode/combinatorics.hpp"

#include <algorithm>
#include <numeric>

namespace triecode {

std::uint64_t DegreeMatrix::row_ones(std::uint32_t r) const {
    std::uint64_t s = 0;
    for (std::uint64_t c = 0; c < cols_; ++c) s += get(r, c);
    return s;
}

std::uint64_t DegreeMatrix::col_ones(std::uint64_t c) const {
    std::uint64_t s = 0;
    for (std::uint32_t r = 0; r < rows_; ++r) s += get(r, c);
    return s;
}

std::uint64_t DegreeMatrix::total_ones() const {
    return std::accumulate(bits_.begin(), bits_.end(), std::uint64_t{0});
}

void DegreeMatrix::validate() const {
    if (cols_ < 1) throw InputError("degree matrix: needs at least one column");
    if (total_ones() != cols_ - 1)
        throw InputError("degree matrix: total ones must equal n - 1");
}

SymbolDistribution DegreeMatrix::distribution() const {
    SymbolDistribution d;
    d.n = cols_;
    d.counts.resize(rows_);
    for (std::uint32_t r = 0; r < rows_; ++r) d.counts[r] = row_ones(r);
    return d;
}

LukasiewiczPath LukasiewiczPath::of(const DegreeMatrix& m) {
    LukasiewiczPath p;
    p.D.resize(m.cols());
    p.L.resize(m.cols());
    std::int64_t acc = 0;
    for (std::uint64_t c = 0; c < m.cols(); ++c) {
        p.D[c] = static_cast<std::int64_t>(m.col_ones(c)) - 1;
        acc += p.D[c];
        p.L[c] = acc;
    }
    return p;
}

std::int64_t LukasiewiczPath::first_negative() const {
    for (std::size_t i = 0; i < L.size(); ++i)
        if (L[i] < 0) return static_cast<std::int64_t>(i) + 1;
    TRIECODE_CHECK(false, "L[n] must be -1 for matrices in Set M");
    return -1;
}

std::int64_t LukasiewiczPath::leftmost_minimum() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < L.size(); ++i)
        if (L[i] < L[best]) best = i;
    return static_cast<std::int64_t>(best) + 1;
}

DegreeMatrix trie_to_matrix(const Trie& t) {
    DegreeMatrix m(static_cast<std::uint32_t>(t.sigma()), t.n());
    for (NodeId u = 0; u < t.n(); ++u)
        for (NodeId v : t.children(u)) m.set(static_cast<std::uint32_t>(t.label(v)), u, true);
    m.validate();
    return m;
}

std::optional<Trie> matrix_to_trie(const DegreeMatrix& m, const Alphabet& alphabet,
                                   std::int64_t* reject_index) {
    m.validate();
    TRIECODE_CHECK(alphabet.size() == m.rows(), "alphabet size must match matrix rows");
    LukasiewiczPath p = LukasiewiczPath::of(m);
    if (reject_index) *reject_index = -1;
    if (!p.valid()) {
        if (reject_index) *reject_index = p.first_negative();
        return std::nullopt;
    }
    const std::uint64_t n = m.cols();
    std::vector<NodeId> parent(n, 0);
    std::vector<SymbolIndex> label(n, kPadSymbol);
    // Pending edges, deepest last; column j's ones give the out-labels of the
    // j-th pre-order node top-down, i.e. in alphabet order.
    std::vector<std::pair<NodeId, SymbolIndex>> pending;
    for (std::uint64_t j = 0; j < n; ++j) {
        if (j > 0) {
            TRIECODE_CHECK(!pending.empty(), "Lukasiewicz validity guarantees a pending edge");
            auto [par, lab] = pending.back();
            pending.pop_back();
            parent[j] = par;
            label[j] = lab;
        }
        for (std::uint32_t r = m.rows(); r-- > 0;)
            if (m.get(r, j))
                pending.emplace_back(static_cast<NodeId>(j), static_cast<SymbolIndex>(r));
    }
    TRIECODE_CHECK(pending.empty(), "all pending edges must be consumed");
    return Trie::from_preorder(std::move(parent), std::move(label), alphabet);
}

DegreeMatrix rotate(const DegreeMatrix& m, std::uint64_t r) {
    const std::uint64_t n = m.cols();
    r %= n;
    DegreeMatrix out(m.rows(), n);
    for (std::uint64_t j = 0; j < n; ++j) {
        std::uint64_t src = (j + n - r) % n;  // last r columns move to the front
        for (std::uint32_t row = 0; row < m.rows(); ++row) out.set(row, j, m.get(row, src));
    }
    return out;
}

std::uint64_t canonical_rotation(const DegreeMatrix& m) {
    m.validate();
    LukasiewiczPath p = LukasiewiczPath::of(m);
    std::int64_t i = p.leftmost_minimum();
    std::uint64_t r = (m.cols() - static_cast<std::uint64_t>(i)) % m.cols();
    TRIECODE_CHECK(LukasiewiczPath::of(rotate(m, r)).valid(),
                   "rotation at the leftmost minimum must be Lukasiewicz");
    return r;
}

mpz_class count_matrices(const SymbolDistribution& dist) {
    dist.validate();
    mpz_class total = 1;
    for (std::uint64_t nc : dist.counts) total *= binomial(dist.n, nc);
    return total;
}

mpz_class count_tries(const SymbolDistribution& dist) {
    mpz_class total = count_matrices(dist);
    mpz_class q, rem;
    mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), total.get_mpz_t(),
                   static_cast<unsigned long>(dist.n));
    TRIECODE_CHECK(rem == 0, "|M| must be divisible by n");
    return q;
}

mpz_class count_all_tries(std::uint64_t n, std::uint64_t sigma) {
    if (n < 1) throw InputError("count_all_tries: n must be >= 1");
    mpz_class total = binomial(n * sigma, n - 1);
    mpz_class q, rem;
    mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), total.get_mpz_t(),
                   static_cast<unsigned long>(n));
    TRIECODE_CHECK(rem == 0, "C(n*sigma, n-1) must be divisible by n");
    return q;
}

std::vector<Trie> enumerate_tries(const SymbolDistribution& dist, const Alphabet& alphabet,
                                  std::uint64_t cap) {
    dist.validate();
    TRIECODE_CHECK(alphabet.size() == dist.counts.size(),
                   "alphabet size must match distribution");
    mpz_class size = count_matrices(dist);
    if (size > cap)
        throw EnumerationCapExceeded("enumeration would visit " + size.get_str() +
                                     " matrices, cap is " + std::to_string(cap));
    const std::uint64_t n = dist.n;
    const std::uint32_t sigma = static_cast<std::uint32_t>(dist.counts.size());
    // One 0/1 row pattern per symbol; std::next_permutation over the row bits
    // yields exactly the row-major lexicographic matrix order when the top
    // row is the outermost odometer digit.
    std::vector<std::vector<std::uint8_t>> row(sigma, std::vector<std::uint8_t>(n, 0));
    for (std::uint32_t r = 0; r < sigma; ++r)
        for (std::uint64_t j = 0; j < dist.counts[r]; ++j) row[r][n - 1 - j] = 1;

    std::vector<Trie> out;
    while (true) {
        DegreeMatrix m(sigma, n);
        for (std::uint32_t r = 0; r < sigma; ++r)
            for (std::uint64_t c = 0; c < n; ++c) m.set(r, c, row[r][c] != 0);
        if (auto t = matrix_to_trie(m, alphabet)) out.push_back(std::move(*t));
        std::uint32_t r = sigma;
        while (r-- > 0) {
            if (std::next_permutation(row[r].begin(), row[r].end())) break;
            // row r wrapped to its first pattern; carry into the row above
            if (r == 0) return out;
        }
    }
}

std::vector<std::vector<std::uint64_t>> all_distributions(std::uint64_t n, std::size_t sigma) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur(sigma, 0);
    std::uint64_t edges = n - 1;
    // Lexicographic compositions of n-1 into sigma ordered parts.
    auto rec = [&](auto&& self, std::size_t pos, std::uint64_t left) -> void {
        if (pos + 1 == sigma) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (std::uint64_t v = 0; v <= left; ++v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (sigma > 0) rec(rec, 0, edges);
    return out;
}

}  // namespace triecode
