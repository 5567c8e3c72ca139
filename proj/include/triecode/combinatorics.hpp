#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "triecode/bigint.hpp"
#include "triecode/trie.hpp"

namespace triecode {

// sigma x n binary matrix whose row i carries n_c ones for the i-th symbol;
// column j is the out-label characteristic vector of the j-th pre-order node.
class DegreeMatrix {
   public:
    DegreeMatrix(std::uint32_t rows, std::uint64_t cols)
        : rows_(rows), cols_(cols), bits_(static_cast<std::size_t>(rows) * cols, 0) {}

    std::uint32_t rows() const { return rows_; }
    std::uint64_t cols() const { return cols_; }

    bool get(std::uint32_t r, std::uint64_t c) const { return bits_[r * cols_ + c] != 0; }
    void set(std::uint32_t r, std::uint64_t c, bool v) { bits_[r * cols_ + c] = v ? 1 : 0; }

    std::uint64_t row_ones(std::uint32_t r) const;
    std::uint64_t col_ones(std::uint64_t c) const;
    std::uint64_t total_ones() const;

    // Throws InputError unless total ones == cols - 1 (the Set M membership
    // condition for the distribution the rows carry).
    void validate() const;

    SymbolDistribution distribution() const;

    bool operator==(const DegreeMatrix& o) const = default;
    bool operator<(const DegreeMatrix& o) const { return bits_ < o.bits_; }  // row-major lex

   private:
    std::uint32_t rows_;
    std::uint64_t cols_;
    std::vector<std::uint8_t> bits_;  // row-major
};

// D[i] = ones(column i) - 1 and its prefix sums L; L[n] = -1 always, and L is
// a Lukasiewicz path iff additionally L[i] >= 0 for all i < n.
struct LukasiewiczPath {
    std::vector<std::int64_t> D;  // 1-based values stored at [0..n-1]
    std::vector<std::int64_t> L;

    static LukasiewiczPath of(const DegreeMatrix& m);
    bool valid() const { return first_negative() == static_cast<std::int64_t>(L.size()); }
    // Smallest 1-based i with L[i] < 0 (n when the path is Lukasiewicz, since
    // L[n] = -1 by construction).
    std::int64_t first_negative() const;
    // 1-based position of the leftmost minimum of L.
    std::int64_t leftmost_minimum() const;
};

DegreeMatrix trie_to_matrix(const Trie& t);

// Inverts the bijection when L is a Lukasiewicz path; otherwise returns
// nullopt and stores the first 1-based index with L[i] < 0 in reject_index.
std::optional<Trie> matrix_to_trie(const DegreeMatrix& m, const Alphabet& alphabet,
                                   std::int64_t* reject_index = nullptr);

// Moves the last r mod n columns of m to the front.
DegreeMatrix rotate(const DegreeMatrix& m, std::uint64_t r);

// The unique r in [0, n-1] such that rotate(m, r) inverts to a trie; computed
// as n - i with i the leftmost minimum of L. The uniqueness of that minimum
// is asserted at runtime.
std::uint64_t canonical_rotation(const DegreeMatrix& m);

// Number of matrices in Set M: prod_c C(n, n_c).
mpz_class count_matrices(const SymbolDistribution& dist);

// |U| = (1/n) prod_c C(n, n_c); the division is exact and checked.
mpz_class count_tries(const SymbolDistribution& dist);

// S(n, sigma) = (1/n) C(n*sigma, n-1).
mpz_class count_all_tries(std::uint64_t n, std::uint64_t sigma);

struct EnumerationCapExceeded : InputError {
    using InputError::InputError;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Brute-force oracle for count_tries: enumerates Set M in row-major
// lexicographic matrix order, keeps Lukasiewicz columns, inverts each.
std::vector<Trie> enumerate_tries(const SymbolDistribution& dist, const Alphabet& alphabet,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// All distributions {n_c} with sum n - 1 over sigma symbols, in lexicographic
// order. Enumeration helper shared by tests and the CLI.
std::vector<std::vector<std::uint64_t>> all_distributions(std::uint64_t n, std::size_t sigma);

}  // namespace triecode
