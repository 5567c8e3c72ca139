#include "triecode/coder.hpp"

namespace triecode {

namespace {

// Interval state kept as integer triples l = L/D, s = S/D over one shared
// denominator: every update multiplies by n_wc/n_w or (n_w - n_wc)/n_w, so
// the three legs stay exact without any rational canonicalization. Steps
// with p in {0, 1} leave the interval untouched and are skipped to keep D
// small.
struct IntervalState {
    mpz_class low = 0;   // L
    mpz_class size = 1;  // S
    mpz_class den = 1;   // D

    void step(std::uint64_t n_w, std::uint64_t n_wc, bool present) {
        TRIECODE_CHECK(n_wc > 0 || !present, "model forbids a present edge");
        TRIECODE_CHECK(n_wc < n_w || present, "model demands a missing edge");
        if (n_wc == 0 || n_wc == n_w) return;  // width-1 factor
        if (present) {
            // l += s * (1 - p); s *= p
            low *= static_cast<unsigned long>(n_w);
            mpz_addmul_ui(low.get_mpz_t(), size.get_mpz_t(),
                          static_cast<unsigned long>(n_w - n_wc));
            size *= static_cast<unsigned long>(n_wc);
        } else {
            // s *= (1 - p)
            low *= static_cast<unsigned long>(n_w);
            size *= static_cast<unsigned long>(n_w - n_wc);
        }
        den *= static_cast<unsigned long>(n_w);
        TRIECODE_CHECK(low >= 0 && size > 0 && low + size <= den, "interval left [0,1)");
    }

    RationalInterval to_interval() const {
        RationalInterval iv;
        iv.l = mpq_class(low, den);
        iv.l.canonicalize();
        iv.s = mpq_class(size, den);
        iv.s.canonicalize();
        iv.check();
        return iv;
    }
};

}  // namespace

mpq_class TrieCode::truncated_value() const {
    mpz_class num = 0;
    for (std::uint64_t i = 1; i <= d; ++i) {
        num <<= 1;
        if (payload_bit(i)) num += 1;
    }
    mpz_class den = 1;
    den <<= static_cast<std::size_t>(d);
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

TrieCode compress(const Trie& t, std::uint32_t k) {
    TrieCode code;
    code.k = k;
    code.n = t.n();
    code.alphabet = t.alphabet();
    code.model = t.context_stats(k);

    IntervalState st;
    for (NodeId u = 0; u < t.n(); ++u) {
        auto entry = code.model.entries.find(t.context(u, k));
        TRIECODE_CHECK(entry != code.model.entries.end(), "context missing from model");
        const auto& e = entry->second;
        for (std::size_t c = 0; c < t.sigma(); ++c) {
            SymbolIndex ci = static_cast<SymbolIndex>(c);
            auto oc = e.out_counts.find(ci);
            std::uint64_t n_wc = oc == e.out_counts.end() ? 0 : oc->second;
            st.step(e.n_w, n_wc, t.has_child(u, ci));
        }
    }
    code.final_interval = st.to_interval();

    code.d = static_cast<std::uint64_t>(ceil_log2_q(2 / code.final_interval.s));
    mpq_class mid = code.final_interval.l + code.final_interval.s / 2;
    mpz_class bits = floor_shift(mid, code.d);  // the d leading fraction bits
    code.payload.assign((code.d + 7) / 8, 0);
    for (std::uint64_t i = 0; i < code.d; ++i) {
        if (mpz_tstbit(bits.get_mpz_t(), static_cast<mp_bitcnt_t>(code.d - 1 - i)))
            code.payload[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
    }
    // Truncating the midpoint to d bits must not leave the interval.
    mpq_class trunc = code.truncated_value();
    TRIECODE_CHECK(trunc >= code.final_interval.l &&
                       trunc < code.final_interval.l + code.final_interval.s,
                   "truncated midpoint left the interval");
    return code;
}

Trie decompress(const TrieCode& code) {
    std::uint64_t model_nodes = 0;
    for (const auto& [w, e] : code.model.entries) model_nodes += e.n_w;
    if (model_nodes != code.n)
        throw InputError("code model inconsistent: context counts sum to " +
                         std::to_string(model_nodes) + ", expected n = " +
                         std::to_string(code.n));
    if (code.model.k != code.k) throw InputError("code model order mismatch");

    const std::size_t sigma = code.alphabet.size();
    // Track y = x - l as y_num / (2^d * D); the decoder never needs l
    // itself. The branch "x < l + s (1 - p)" becomes
    // y_num * n_w < (S * (n_w - n_wc)) << d.
    mpz_class y_num = 0;
    for (std::uint64_t i = 1; i <= code.d; ++i) {
        y_num <<= 1;
        if (code.payload_bit(i)) y_num += 1;
    }
    mpz_class size = 1;  // the shared denominator D cancels in every test

    std::vector<NodeId> parent;
    std::vector<SymbolIndex> label;
    // Nodes take ids when visited, i.e. in pre-order; a node's out-edges are
    // decoded at visit time and its children pushed in reverse label order.
    struct Pending {
        NodeId parent_id;
        SymbolIndex incoming;
    };
    std::vector<Pending> stack{{0, kPadSymbol}};
    while (parent.size() < code.n) {
        if (stack.empty()) throw InputError("code ran out of pending nodes before n");
        auto [par, in_lab] = stack.back();
        stack.pop_back();
        NodeId id = static_cast<NodeId>(parent.size());
        parent.push_back(par);
        label.push_back(in_lab);

        Context w(code.k, kPadSymbol);
        NodeId cur = id;
        for (std::uint32_t i = code.k; i-- > 0 && cur != 0;) {
            w[i] = label[cur];
            cur = parent[cur];
        }
        auto entry = code.model.entries.find(w);
        if (entry == code.model.entries.end())
            throw InputError("code model lacks a realized context");
        const auto& e = entry->second;

        std::vector<SymbolIndex> out;
        for (std::size_t c = 0; c < sigma; ++c) {
            SymbolIndex ci = static_cast<SymbolIndex>(c);
            auto oc = e.out_counts.find(ci);
            std::uint64_t n_wc = oc == e.out_counts.end() ? 0 : oc->second;
            if (n_wc == 0) continue;  // p = 0: never present, interval fixed
            if (n_wc == e.n_w) {      // p = 1: always present, interval fixed
                out.push_back(ci);
                continue;
            }
            mpz_class absent_width = size * static_cast<unsigned long>(e.n_w - n_wc);
            absent_width <<= static_cast<std::size_t>(code.d);
            mpz_class lhs = y_num * static_cast<unsigned long>(e.n_w);
            bool present = !(lhs < absent_width);
            if (present) {
                out.push_back(ci);
                y_num = lhs - absent_width;
                size *= static_cast<unsigned long>(n_wc);
            } else {
                y_num = std::move(lhs);
                size *= static_cast<unsigned long>(e.n_w - n_wc);
            }
            // 0 <= y < s must hold throughout for a well-formed code
            mpz_class s_shift = size;
            s_shift <<= static_cast<std::size_t>(code.d);
            if (y_num < 0 || y_num >= s_shift)
                throw InputError("code value fell outside the decoding interval");
        }
        for (std::size_t j = out.size(); j-- > 0;) stack.push_back({id, out[j]});
    }
    if (!stack.empty()) throw InputError("code left pending nodes after n");
    return Trie::from_preorder(std::move(parent), std::move(label), code.alphabet);
}

std::uint64_t model_size_bits(std::size_t sigma, std::uint32_t k, std::uint64_t n) {
    mpz_class contexts = 1;
    for (std::uint32_t i = 0; i < k; ++i) contexts *= static_cast<unsigned long>(sigma);
    mpz_class bits = contexts * static_cast<unsigned long>(sigma + 1);
    std::uint64_t logn = n <= 1 ? 0 : static_cast<std::uint64_t>(ceil_log2_z(mpz_class(n)));
    bits *= static_cast<unsigned long>(logn);
    TRIECODE_CHECK(bits.fits_ulong_p(), "model size bound overflows 64 bits");
    return bits.get_ui();
}

}  // namespace triecode
