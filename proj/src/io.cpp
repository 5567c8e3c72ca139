#include "triecode/io.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

namespace triecode {

namespace {

std::vector<Symbol> decode_utf8(const std::string& line) {
    std::vector<Symbol> out;
    std::size_t i = 0;
    while (i < line.size()) {
        std::uint8_t b0 = static_cast<std::uint8_t>(line[i]);
        std::size_t extra;
        Symbol cp;
        if (b0 < 0x80) {
            extra = 0;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            extra = 1;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            extra = 2;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            extra = 3;
            cp = b0 & 0x07;
        } else {
            throw InputError("invalid UTF-8 lead byte at offset " + std::to_string(i));
        }
        if (i + extra >= line.size()) throw InputError("truncated UTF-8 sequence");
        for (std::size_t j = 1; j <= extra; ++j) {
            std::uint8_t b = static_cast<std::uint8_t>(line[i + j]);
            if ((b & 0xC0) != 0x80)
                throw InputError("invalid UTF-8 continuation at offset " + std::to_string(i + j));
            cp = (cp << 6) | (b & 0x3F);
        }
        static constexpr Symbol kMin[4] = {0, 0x80, 0x800, 0x10000};
        if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            throw InputError("invalid UTF-8 code point at offset " + std::to_string(i));
        out.push_back(cp);
        i += extra + 1;
    }
    return out;
}

void encode_utf8(Symbol cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

std::vector<Symbol> decode_text(const std::string& line, AlphabetMode mode) {
    if (mode == AlphabetMode::Utf8) return decode_utf8(line);
    std::vector<Symbol> out(line.size());
    for (std::size_t i = 0; i < line.size(); ++i)
        out[i] = static_cast<std::uint8_t>(line[i]);
    return out;
}

std::string encode_text(const std::vector<Symbol>& symbols, AlphabetMode mode) {
    std::string out;
    for (Symbol s : symbols) {
        if (mode == AlphabetMode::Bytes) {
            if (s > 0xFF) throw InputError("symbol does not fit a byte");
            out.push_back(static_cast<char>(s));
        } else {
            encode_utf8(s, out);
        }
    }
    return out;
}

std::string symbol_token(Symbol s) {
    if (s > 32 && s < 127) return std::string(1, static_cast<char>(s));
    std::ostringstream os;
    os << "0x" << std::hex << std::uppercase << s;
    return os.str();
}

Symbol parse_symbol_token(const std::string& token) {
    if (token.size() == 1) return static_cast<std::uint8_t>(token[0]);
    if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
        Symbol v = 0;
        for (std::size_t i = 2; i < token.size(); ++i) {
            char c = token[i];
            int d;
            if (c >= '0' && c <= '9')
                d = c - '0';
            else if (c >= 'a' && c <= 'f')
                d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F')
                d = c - 'A' + 10;
            else
                throw InputError("bad symbol token: " + token);
            v = v * 16 + static_cast<Symbol>(d);
        }
        return v;
    }
    throw InputError("bad symbol token: " + token);
}

Dictionary read_dictionary(std::istream& is, AlphabetMode mode) {
    Dictionary d;
    std::vector<Symbol> seen;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto syms = decode_text(line, mode);
        seen.insert(seen.end(), syms.begin(), syms.end());
        d.strings.push_back(std::move(syms));
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    d.alphabet = seen.empty() ? Alphabet{} : Alphabet{seen};
    return d;
}

Trie read_edge_list(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InputError("edge list: missing header");
    std::istringstream hdr(line);
    std::uint64_t n = 0, sigma = 0;
    if (!(hdr >> n >> sigma) || n < 1 || sigma < 1)
        throw InputError("edge list: header must be \"n sigma\" with n, sigma >= 1");
    std::vector<Trie::Edge> edges;
    std::vector<Symbol> symbols;
    edges.reserve(n - 1);
    for (std::uint64_t i = 0; i + 1 < n; ++i) {
        if (!std::getline(is, line))
            throw InputError("edge list: expected " + std::to_string(n - 1) + " edge lines");
        std::istringstream ls(line);
        std::uint64_t p, c;
        std::string tok;
        if (!(ls >> p >> c >> tok)) throw InputError("edge list: bad edge line: " + line);
        Symbol s = parse_symbol_token(tok);
        edges.push_back({static_cast<NodeId>(p), static_cast<NodeId>(c), s});
        symbols.push_back(s);
    }
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    if (n == 1) {
        // no edges to infer symbols from; synthesize sigma placeholders
        symbols.resize(sigma);
        for (std::uint64_t i = 0; i < sigma; ++i) symbols[i] = static_cast<Symbol>('a' + i);
    } else if (symbols.size() != sigma) {
        throw InputError("edge list: header sigma = " + std::to_string(sigma) + " but " +
                         std::to_string(symbols.size()) + " distinct symbols appear");
    }
    return Trie::from_edges(n, edges, Alphabet{symbols});
}

void write_edge_list(std::ostream& os, const Trie& t) {
    os << t.n() << ' ' << t.sigma() << '\n';
    for (NodeId u = 1; u < t.n(); ++u)
        os << t.parent(u) << ' ' << u << ' ' << symbol_token(t.alphabet().symbol(t.label(u)))
           << '\n';
}

std::string edge_list_string(const Trie& t) {
    std::ostringstream os;
    write_edge_list(os, t);
    return os.str();
}

DegreeMatrix read_matrix(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InputError("matrix: missing header");
    std::istringstream hdr(line);
    std::uint64_t sigma = 0, n = 0;
    if (!(hdr >> sigma >> n) || sigma < 1 || n < 1)
        throw InputError("matrix: header must be \"sigma n\"");
    DegreeMatrix m(static_cast<std::uint32_t>(sigma), n);
    for (std::uint64_t r = 0; r < sigma; ++r) {
        if (!std::getline(is, line)) throw InputError("matrix: missing row " + std::to_string(r));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() != n) throw InputError("matrix: row length != n");
        for (std::uint64_t c = 0; c < n; ++c) {
            if (line[c] != '0' && line[c] != '1') throw InputError("matrix: rows are 0/1 only");
            m.set(static_cast<std::uint32_t>(r), c, line[c] == '1');
        }
    }
    m.validate();
    return m;
}

void write_matrix(std::ostream& os, const DegreeMatrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (std::uint32_t r = 0; r < m.rows(); ++r) {
        for (std::uint64_t c = 0; c < m.cols(); ++c) os << (m.get(r, c) ? '1' : '0');
        os << '\n';
    }
}

namespace bin {

void write_u8(std::ostream& os, std::uint8_t v) { os.put(static_cast<char>(v)); }

void write_u16(std::ostream& os, std::uint16_t v) {
    for (int i = 0; i < 2; ++i) os.put(static_cast<char>(v >> (8 * i) & 0xFF));
}

void write_u32(std::ostream& os, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) os.put(static_cast<char>(v >> (8 * i) & 0xFF));
}

void write_u64(std::ostream& os, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>(v >> (8 * i) & 0xFF));
}

void write_i32(std::ostream& os, std::int32_t v) {
    write_u32(os, static_cast<std::uint32_t>(v));
}

void write_varint(std::ostream& os, std::uint64_t v) {
    while (v >= 0x80) {
        os.put(static_cast<char>((v & 0x7F) | 0x80));
        v >>= 7;
    }
    os.put(static_cast<char>(v));
}

namespace {
std::uint8_t get_byte(std::istream& is) {
    int c = is.get();
    if (c == EOF) throw InputError("container: unexpected end of file");
    return static_cast<std::uint8_t>(c);
}
}  // namespace

std::uint8_t read_u8(std::istream& is) { return get_byte(is); }

std::uint16_t read_u16(std::istream& is) {
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(get_byte(is)) << (8 * i);
    return v;
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(get_byte(is)) << (8 * i);
    return v;
}

std::uint64_t read_u64(std::istream& is) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(get_byte(is)) << (8 * i);
    return v;
}

std::int32_t read_i32(std::istream& is) { return static_cast<std::int32_t>(read_u32(is)); }

std::uint64_t read_varint(std::istream& is) {
    std::uint64_t v = 0;
    int shift = 0;
    while (true) {
        std::uint8_t b = get_byte(is);
        v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
        if (!(b & 0x80)) break;
        shift += 7;
        if (shift > 63) throw InputError("container: varint too long");
    }
    return v;
}

void BitWriter::push(bool bit) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80 >> (bits_ % 8));
    ++bits_;
}

void BitWriter::push_mpz(const mpz_class& v, std::uint64_t width) {
    for (std::uint64_t i = 0; i < width; ++i)
        push(mpz_tstbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(width - 1 - i)) != 0);
}

bool BitReader::pop() {
    if (pos_ >= bits_) throw InputError("container: bit stream exhausted");
    bool bit = data_[pos_ / 8] >> (7 - pos_ % 8) & 1;
    ++pos_;
    return bit;
}

mpz_class BitReader::pop_mpz(std::uint64_t width) {
    mpz_class v = 0;
    for (std::uint64_t i = 0; i < width; ++i) {
        v <<= 1;
        if (pop()) v += 1;
    }
    return v;
}

}  // namespace bin

namespace {

constexpr char kTac1Magic[4] = {'T', 'A', 'C', '1'};

void write_context(std::ostream& os, const Context& w) {
    for (SymbolIndex c : w) bin::write_varint(os, static_cast<std::uint64_t>(c + 1));
}

Context read_context(std::istream& is, std::uint32_t k) {
    Context w(k);
    for (std::uint32_t i = 0; i < k; ++i)
        w[i] = static_cast<SymbolIndex>(bin::read_varint(is)) - 1;
    return w;
}

}  // namespace

void write_tac1(std::ostream& os, const TrieCode& code, AlphabetMode mode) {
    os.write(kTac1Magic, 4);
    bin::write_u8(os, 1);  // version
    bin::write_u8(os, static_cast<std::uint8_t>(mode));
    bin::write_u32(os, code.k);
    bin::write_u64(os, code.n);
    bin::write_u32(os, static_cast<std::uint32_t>(code.alphabet.size()));
    for (Symbol s : code.alphabet.symbols()) bin::write_u32(os, s);
    bin::write_u32(os, static_cast<std::uint32_t>(code.model.entries.size()));
    for (const auto& [w, e] : code.model.entries) {
        write_context(os, w);
        bin::write_varint(os, e.n_w);
        bin::write_varint(os, e.out_counts.size());
        SymbolIndex prev = -1;
        for (const auto& [c, n_wc] : e.out_counts) {
            bin::write_varint(os, static_cast<std::uint64_t>(c - prev - 1));  // symbol gap
            bin::write_varint(os, n_wc);
            prev = c;
        }
    }
    bin::write_u32(os, static_cast<std::uint32_t>(code.d));
    os.write(reinterpret_cast<const char*>(code.payload.data()),
             static_cast<std::streamsize>(code.payload.size()));
}

Tac1 read_tac1(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (is.gcount() != 4 || std::memcmp(magic, kTac1Magic, 4) != 0)
        throw InputError("not a TAC1 container (bad magic)");
    if (bin::read_u8(is) != 1) throw InputError("TAC1: unsupported version");
    Tac1 out;
    out.mode = static_cast<AlphabetMode>(bin::read_u8(is));
    TrieCode& code = out.code;
    code.k = bin::read_u32(is);
    code.n = bin::read_u64(is);
    std::uint32_t sigma = bin::read_u32(is);
    if (sigma < 1) throw InputError("TAC1: sigma must be >= 1");
    std::vector<Symbol> symbols(sigma);
    for (auto& s : symbols) s = bin::read_u32(is);
    code.alphabet = Alphabet{symbols};
    code.model.k = code.k;
    code.model.n = code.n;
    std::uint32_t contexts = bin::read_u32(is);
    for (std::uint32_t i = 0; i < contexts; ++i) {
        Context w = read_context(is, code.k);
        ContextStats::Entry e;
        e.n_w = bin::read_varint(is);
        std::uint64_t entries = bin::read_varint(is);
        SymbolIndex prev = -1;
        for (std::uint64_t j = 0; j < entries; ++j) {
            SymbolIndex c = prev + 1 + static_cast<SymbolIndex>(bin::read_varint(is));
            std::uint64_t n_wc = bin::read_varint(is);
            if (c < 0 || static_cast<std::uint32_t>(c) >= sigma)
                throw InputError("TAC1: model symbol out of range");
            e.out_counts[c] = n_wc;
            prev = c;
        }
        if (!code.model.entries.emplace(std::move(w), std::move(e)).second)
            throw InputError("TAC1: duplicate model context");
    }
    code.d = bin::read_u32(is);
    code.payload.resize((code.d + 7) / 8);
    is.read(reinterpret_cast<char*>(code.payload.data()),
            static_cast<std::streamsize>(code.payload.size()));
    if (static_cast<std::size_t>(is.gcount()) != code.payload.size())
        throw InputError("TAC1: truncated payload");
    try {
        code.model.validate(sigma);
    } catch (const std::logic_error& e) {
        throw InputError(std::string("TAC1: inconsistent model: ") + e.what());
    }
    return out;
}

}  // namespace triecode
