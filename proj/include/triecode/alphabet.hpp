#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace triecode {

// A symbol is a byte value or a Unicode code point, depending on the input mode.
using Symbol = std::uint32_t;

// 0-based position of a symbol in the alphabet order; -1 denotes the virtual
// root/padding label '#', which is smaller than every real symbol and never
// stored on an edge.
using SymbolIndex = std::int32_t;
inline constexpr SymbolIndex kPadSymbol = -1;

// Error on malformed external input (files, CLI arguments, containers).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite ordered alphabet. The order is the numeric order of the symbol
// values; '#' is handled out of band as kPadSymbol.
class Alphabet {
   public:
    Alphabet() : symbols_{'a'} {}

    explicit Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw InputError("alphabet must contain at least one symbol");
        std::sort(symbols_.begin(), symbols_.end());
        if (std::adjacent_find(symbols_.begin(), symbols_.end()) != symbols_.end())
            throw InputError("alphabet contains a duplicate symbol");
    }

    std::size_t size() const { return symbols_.size(); }

    Symbol symbol(SymbolIndex i) const { return symbols_.at(static_cast<std::size_t>(i)); }

    std::optional<SymbolIndex> index_of(Symbol s) const {
        auto it = std::lower_bound(symbols_.begin(), symbols_.end(), s);
        if (it == symbols_.end() || *it != s) return std::nullopt;
        return static_cast<SymbolIndex>(it - symbols_.begin());
    }

    const std::vector<Symbol>& symbols() const { return symbols_; }

    bool operator==(const Alphabet& o) const = default;

   private:
    std::vector<Symbol> symbols_;  // sorted ascending
};

}  // namespace triecode
