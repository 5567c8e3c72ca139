#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "triecode/bigint.hpp"
#include "triecode/coder.hpp"
#include "triecode/combinatorics.hpp"
#include "triecode/trie.hpp"

namespace triecode {

// How raw text turns into symbols: one byte per symbol, or UTF-8 code points.
enum class AlphabetMode : std::uint8_t { Bytes = 0, Utf8 = 1 };

std::vector<Symbol> decode_text(const std::string& line, AlphabetMode mode);
std::string encode_text(const std::vector<Symbol>& symbols, AlphabetMode mode);

// Edge-list token for one symbol: the character itself when printable ASCII,
// otherwise 0xHH.. hex of the code point.
std::string symbol_token(Symbol s);
Symbol parse_symbol_token(const std::string& token);

// Dictionary file: one string per line, newline-terminated, no escaping.
struct Dictionary {
    std::vector<std::vector<Symbol>> strings;
    Alphabet alphabet;  // distinct symbols of the file (or a placeholder)
};
Dictionary read_dictionary(std::istream& is, AlphabetMode mode);

// Trie edge-list file: header "n sigma", then n-1 lines "parent child symbol".
// The reader derives the alphabet from the edge symbols; a root-only file
// ("1 sigma") gets sigma placeholder symbols.
Trie read_edge_list(std::istream& is);
void write_edge_list(std::ostream& os, const Trie& t);
std::string edge_list_string(const Trie& t);

// Matrix text format: header "sigma n", then sigma lines of n '0'/'1' chars.
DegreeMatrix read_matrix(std::istream& is);
void write_matrix(std::ostream& os, const DegreeMatrix& m);

// TAC1 coder container (layout in docs/FORMATS.md). Byte-exact: the payload
// is the d code bits MSB-first, zero-padded to a byte boundary.
void write_tac1(std::ostream& os, const TrieCode& code, AlphabetMode mode);
struct Tac1 {
    TrieCode code;
    AlphabetMode mode = AlphabetMode::Bytes;
};
Tac1 read_tac1(std::istream& is);

// Little-endian binary primitives shared by the containers.
namespace bin {
void write_u8(std::ostream& os, std::uint8_t v);
void write_u16(std::ostream& os, std::uint16_t v);
void write_u32(std::ostream& os, std::uint32_t v);
void write_u64(std::ostream& os, std::uint64_t v);
void write_i32(std::ostream& os, std::int32_t v);
void write_varint(std::ostream& os, std::uint64_t v);
std::uint8_t read_u8(std::istream& is);
std::uint16_t read_u16(std::istream& is);
std::uint32_t read_u32(std::istream& is);
std::uint64_t read_u64(std::istream& is);
std::int32_t read_i32(std::istream& is);
std::uint64_t read_varint(std::istream& is);

// MSB-first bit packing used by the XBW1 offset streams and overlay bits.
class BitWriter {
   public:
    void push(bool bit);
    void push_mpz(const mpz_class& v, std::uint64_t width);
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::uint64_t bit_count() const { return bits_; }

   private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bits_ = 0;
};

class BitReader {
   public:
    BitReader(const std::uint8_t* data, std::uint64_t bit_count)
        : data_(data), bits_(bit_count) {}
    bool pop();
    mpz_class pop_mpz(std::uint64_t width);
    std::uint64_t remaining() const { return bits_ - pos_; }

   private:
    const std::uint8_t* data_;
    std::uint64_t bits_;
    std::uint64_t pos_ = 0;
};
}  // namespace bin

}  // namespace triecode
