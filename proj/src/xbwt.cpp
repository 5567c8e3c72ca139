#include "triecode/xbwt.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>

#include "triecode/entropy.hpp"
#include "triecode/io.hpp"

namespace triecode {

ColexOrder colex_sort(const Trie& t) {
    const std::uint64_t n = t.n();
    // rank0: order by incoming label alone (# sorts first, so the root is
    // rank 1 from the start).
    std::vector<std::uint32_t> rank(n), next(n);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    auto label_key = [&](NodeId u) { return t.label(u); };
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return label_key(a) < label_key(b); });
    std::uint32_t distinct = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i > 0 && label_key(order[i]) != label_key(order[i - 1])) ++distinct;
        rank[order[i]] = distinct + 1;
    }
    distinct += 1;

    // Refine by (own label, parent rank) until all ranks are distinct. Round
    // r resolves ties up to path suffixes of length r+1, so height+1 rounds
    // always suffice for the distinct root paths of a trie.
    while (distinct < n) {
        auto key = [&](NodeId u) {
            return std::pair<std::uint32_t, std::uint32_t>(
                rank[u], u == 0 ? 0 : rank[t.parent(u)]);
        };
        std::sort(order.begin(), order.end(),
                  [&](NodeId a, NodeId b) { return key(a) < key(b); });
        std::uint32_t d = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (i > 0 && key(order[i]) != key(order[i - 1])) ++d;
            next[order[i]] = d + 1;
        }
        TRIECODE_CHECK(d + 1 > distinct, "colex refinement must make progress");
        distinct = d + 1;
        rank.swap(next);
    }
    ColexOrder out;
    out.rank = std::move(rank);
    out.node.resize(n);
    for (NodeId u = 0; u < n; ++u) out.node[out.rank[u] - 1] = u;
    return out;
}

RunsProfile runs_profile(const Trie& t) {
    ColexOrder order = colex_sort(t);
    RunsProfile rp;
    rp.r_c.assign(t.sigma(), 0);
    for (std::size_t c = 0; c < t.sigma(); ++c) {
        bool prev = false;
        for (std::uint64_t i = 0; i < t.n(); ++i) {
            bool cur = t.has_child(order.node[i], static_cast<SymbolIndex>(c));
            if (prev && !cur) rp.r_c[c]++;
            prev = cur;
        }
        if (prev) rp.r_c[c]++;
        rp.r += rp.r_c[c];
    }
    return rp;
}

std::uint64_t XbwtIndex::symbol_count(SymbolIndex c) const {
    std::size_t i = static_cast<std::size_t>(c);
    std::uint64_t hi = i + 1 < c_.size() ? c_[i + 1] : n_;
    return hi - c_[i];
}

XbwtIndex XbwtIndex::build(const Trie& t, const XbwtOptions& options) {
    XbwtIndex idx;
    idx.n_ = t.n();
    idx.alphabet_ = t.alphabet();
    idx.b_ = options.block_size.value_or(default_block_size(t.n(), t.sigma()));
    TRIECODE_CHECK(idx.b_ >= 1, "block size must be >= 1");

    ColexOrder order = colex_sort(t);
    SymbolDistribution dist = t.symbol_distribution();

    idx.c_.resize(t.sigma());
    std::uint64_t acc = 1;
    for (std::size_t c = 0; c < t.sigma(); ++c) {
        idx.c_[c] = acc;
        acc += dist.counts[c];
    }

    // At most one symbol can occur more than n/2 times; store that bitvector
    // complemented unless the trick is switched off.
    idx.complemented_ = kPadSymbol;
    if (options.complement != ComplementMode::Off)
        for (std::size_t c = 0; c < t.sigma(); ++c)
            if (2 * dist.counts[c] > t.n()) idx.complemented_ = static_cast<SymbolIndex>(c);

    idx.bv_.reserve(t.sigma());
    for (std::size_t c = 0; c < t.sigma(); ++c) {
        std::vector<std::uint8_t> bits(t.n(), 0);
        for (std::uint64_t i = 0; i < t.n(); ++i)
            bits[i] = t.has_child(order.node[i], static_cast<SymbolIndex>(c)) ? 1 : 0;
        if (static_cast<SymbolIndex>(c) == idx.complemented_)
            for (auto& bit : bits) bit ^= 1;
        idx.bv_.emplace_back(bits, idx.b_);
    }
    idx.rebuild_overlay();
    return idx;
}

void XbwtIndex::rebuild_overlay() {
    std::vector<std::uint8_t> s;
    s_ones_off_.assign(sigma() + 1, 0);
    s_pos_off_.assign(sigma() + 1, 0);
    for (std::size_t c = 0; c < sigma(); ++c) {
        s_ones_off_[c] = c == 0 ? 0 : s_ones_off_[c - 1] + bv_[c - 1].ones();
        s_pos_off_[c] = s.size();
        for (std::uint64_t i = 0; i < bv_[c].num_blocks(); ++i) {
            s.insert(s.end(), bv_[c].block_ones(i), 1);
            s.push_back(0);
        }
    }
    s_ones_off_[sigma()] = s_ones_off_[sigma() - 1] + bv_[sigma() - 1].ones();
    s_pos_off_[sigma()] = s.size();
    s_ = PlainBitvector(s);
}

bool XbwtIndex::bit(SymbolIndex c, std::uint64_t i) const {
    bool stored = bv_[static_cast<std::size_t>(c)].get(i);
    return c == complemented_ ? !stored : stored;
}

std::uint64_t XbwtIndex::rank(SymbolIndex c, std::uint64_t i) const {
    const auto& v = bv_[static_cast<std::size_t>(c)];
    std::uint64_t stored = v.rank(i);
    return c == complemented_ ? i - stored : stored;
}

std::int64_t XbwtIndex::prank(SymbolIndex c, std::uint64_t i) const {
    const auto& v = bv_[static_cast<std::size_t>(c)];
    if (c != complemented_) return v.prank(i);
    if (v.get(i)) return -1;  // stored 1 means logical 0
    return static_cast<std::int64_t>(i - v.rank(i));
}

std::uint64_t XbwtIndex::select(SymbolIndex c, std::uint64_t j) const {
    const auto& v = bv_[static_cast<std::size_t>(c)];
    if (c != complemented_) {
        // S overlay: the stored ones of symbol c start after s_ones_off_[c]
        // ones of S; the zero count before that position inside the region is
        // the owning block.
        if (j < 1 || j > v.ones()) throw std::out_of_range("select rank out of range");
        std::uint64_t pos = s_.select(s_ones_off_[static_cast<std::size_t>(c)] + j);
        std::uint64_t local = pos - s_pos_off_[static_cast<std::size_t>(c)];
        std::uint64_t blk = local - j;
        auto bits = v.decode_block(blk);
        std::uint64_t need = j - v.pre_rank(blk);
        for (std::uint64_t p = 0; p < bits.size(); ++p) {
            if (!bits[p]) continue;
            if (--need == 0) return blk * b_ + p + 1;
        }
        TRIECODE_CHECK(false, "select: overlay out of sync");
    }
    // Complemented symbol: binary search the logical pre-ranks
    // (block i holds i*b - pre_rank(i) logical ones before it).
    std::uint64_t total = symbol_count(c);
    if (j < 1 || j > total) throw std::out_of_range("select rank out of range");
    std::uint64_t lo = 0, hi = v.num_blocks() - 1;
    auto logical_pre = [&](std::uint64_t blk) { return blk * b_ - v.pre_rank(blk); };
    while (lo < hi) {
        std::uint64_t mid = (lo + hi + 1) / 2;
        if (logical_pre(mid) < j)
            lo = mid;
        else
            hi = mid - 1;
    }
    auto bits = v.decode_block(lo);
    std::uint64_t need = j - logical_pre(lo);
    for (std::uint64_t p = 0; p < bits.size(); ++p) {
        if (bits[p]) continue;  // stored 0 = logical 1
        if (--need == 0) return lo * b_ + p + 1;
    }
    TRIECODE_CHECK(false, "select: directory out of sync");
    return 0;
}

std::int64_t XbwtIndex::child(std::uint64_t i, SymbolIndex c) const {
    if (i < 1 || i > n_) throw std::out_of_range("colex rank out of range");
    if (c < 0 || static_cast<std::size_t>(c) >= sigma())
        throw std::out_of_range("symbol out of range");
    std::int64_t pr = prank(c, i);
    if (pr < 0) return -1;
    return static_cast<std::int64_t>(c_[static_cast<std::size_t>(c)]) + pr;
}

SymbolIndex XbwtIndex::incoming_label(std::uint64_t i) const {
    if (i == 1) return kPadSymbol;
    // largest c with C[c] < i
    std::size_t lo = 0, hi = sigma() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (c_[mid] < i)
            lo = mid;
        else
            hi = mid - 1;
    }
    return static_cast<SymbolIndex>(lo);
}

std::uint64_t XbwtIndex::parent(std::uint64_t i) const {
    if (i < 2 || i > n_) throw std::out_of_range("parent is undefined for this rank");
    SymbolIndex c = incoming_label(i);
    return select(c, i - c_[static_cast<std::size_t>(c)]);
}

std::int64_t XbwtIndex::kth_child(std::uint64_t i, std::uint64_t k) const {
    if (i < 1 || i > n_) throw std::out_of_range("colex rank out of range");
    if (k < 1) throw std::out_of_range("child ordinal must be >= 1");
    std::uint64_t seen = 0;
    for (std::size_t c = 0; c < sigma(); ++c) {
        if (!bit(static_cast<SymbolIndex>(c), i)) continue;
        if (++seen == k) return child(i, static_cast<SymbolIndex>(c));
    }
    return -1;
}

XbwtIndex::Interval XbwtIndex::count_interval(std::span<const SymbolIndex> p) const {
    Interval iv{1, n_};
    for (SymbolIndex c : p) {
        if (c < 0 || static_cast<std::size_t>(c) >= sigma()) return Interval{1, 0};
        std::uint64_t cc = c_[static_cast<std::size_t>(c)];
        std::uint64_t lo = cc + rank(c, iv.lo - 1) + 1;
        std::uint64_t hi = cc + rank(c, iv.hi);
        if (lo > hi) return Interval{1, 0};
        iv = {lo, hi};
    }
    return iv;
}

XbwtIndex::Interval XbwtIndex::count_interval_symbols(std::span<const Symbol> p) const {
    std::vector<SymbolIndex> idx(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto ix = alphabet_.index_of(p[i]);
        if (!ix) return Interval{1, 0};
        idx[i] = *ix;
    }
    return count_interval(idx);
}

std::uint64_t XbwtIndex::count(std::span<const SymbolIndex> p) const {
    return count_interval(p).count();
}

std::int64_t XbwtIndex::prefix_locate(std::span<const SymbolIndex> p) const {
    std::int64_t i = 1;
    for (SymbolIndex c : p) {
        if (c < 0 || static_cast<std::size_t>(c) >= sigma()) return -1;
        i = child(static_cast<std::uint64_t>(i), c);
        if (i < 0) return -1;
    }
    return i;
}

std::int64_t XbwtIndex::prefix_locate_symbols(std::span<const Symbol> p) const {
    std::vector<SymbolIndex> idx(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto ix = alphabet_.index_of(p[i]);
        if (!ix) return -1;
        idx[i] = *ix;
    }
    return prefix_locate(idx);
}

RunsProfile XbwtIndex::runs() const {
    RunsProfile rp;
    rp.r_c.assign(sigma(), 0);
    for (std::size_t c = 0; c < sigma(); ++c) {
        auto bits = bv_[c].decode_all();
        if (static_cast<SymbolIndex>(c) == complemented_)
            for (auto& bit : bits) bit ^= 1;
        bool prev = false;
        for (std::uint64_t i = 0; i < n_; ++i) {
            bool cur = bits[i] != 0;
            if (prev && !cur) rp.r_c[c]++;
            prev = cur;
        }
        if (prev) rp.r_c[c]++;
        rp.r += rp.r_c[c];
    }
    return rp;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> context_intervals(const Trie& t,
                                                                       const ColexOrder& order,
                                                                       std::uint32_t k) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    if (t.n() == 0) return out;
    Context prev = t.context(order.node[0], k);
    std::uint64_t start = 1;
    for (std::uint64_t i = 1; i < t.n(); ++i) {
        Context cur = t.context(order.node[i], k);
        if (cur != prev) {
            out.emplace_back(start, i);
            start = i + 1;
            prev = std::move(cur);
        }
    }
    out.emplace_back(start, t.n());
    return out;
}

SpaceReport XbwtIndex::space_report(const Trie& t, std::uint32_t k_max) const {
    SpaceReport rep;
    rep.block_size = b_;
    std::uint64_t blocks_total = 0;
    for (const auto& v : bv_) {
        rep.payload_bits += v.payload_bits();
        rep.nonempty_blocks += v.nonempty_blocks();
        blocks_total += v.num_blocks();
    }
    // R rows as plain words, the S overlay bits, the C array, and the
    // per-block one counts kept by the directory.
    rep.overhead_bits = 64 * blocks_total          // R table
                        + s_.size()                // S overlay payload
                        + 64 * sigma()             // C array
                        + 16 * blocks_total;       // per-block x values
    rep.aux_bits = s_.directory_bits();

    ColexOrder order = colex_sort(t);
    const double sigma_d = static_cast<double>(sigma());
    const double n_d = static_cast<double>(n_);
    const double ceil_nb = std::ceil(n_d / static_cast<double>(b_));
    for (std::uint32_t k = 0; k <= k_max; ++k) {
        SpaceReport::PerK pk;
        pk.k = k;
        pk.nh_k = empirical_entropy(t, k);
        pk.realized_contexts = context_intervals(t, order, k).size();
        pk.bound = pk.nh_k + sigma_d * ceil_nb + static_cast<double>(rep.nonempty_blocks) +
                   sigma_d * static_cast<double>(pk.realized_contexts - 1) *
                       static_cast<double>(b_);
        pk.ok = static_cast<double>(rep.payload_bits) <= pk.bound + 1e-9 * std::max(1.0, n_d);
        rep.per_k.push_back(pk);
    }

    SymbolDistribution dist = t.symbol_distribution();
    rep.binomial_bound = static_cast<double>(rep.nonempty_blocks);
    for (std::uint64_t nc : dist.counts) {
        std::uint64_t w = std::min(nc, t.n() - nc);
        if (w > 0) rep.binomial_bound += log2_z(binomial(t.n(), w));
    }
    rep.binomial_ok =
        static_cast<double>(rep.payload_bits) <= rep.binomial_bound + 1e-9 * std::max(1.0, n_d);
    return rep;
}

namespace {
constexpr char kXbw1Magic[4] = {'X', 'B', 'W', '1'};
}

void XbwtIndex::serialize(std::ostream& os, std::uint8_t alphabet_mode) const {
    os.write(kXbw1Magic, 4);
    bin::write_u8(os, 1);  // version
    bin::write_u8(os, alphabet_mode);
    bin::write_u8(os, complemented_ == kPadSymbol ? 0 : 1);
    bin::write_i32(os, complemented_);
    bin::write_u64(os, n_);
    bin::write_u32(os, static_cast<std::uint32_t>(sigma()));
    for (Symbol s : alphabet_.symbols()) bin::write_u32(os, s);
    bin::write_u64(os, b_);
    for (std::uint64_t c : c_) bin::write_u64(os, c);
    for (std::size_t c = 0; c < sigma(); ++c) {
        const auto& v = bv_[c];
        bin::write_u64(os, v.num_blocks());
        for (std::uint64_t i = 0; i < v.num_blocks(); ++i)
            bin::write_u16(os, static_cast<std::uint16_t>(v.block_ones(i)));
        for (std::uint64_t i = 0; i < v.num_blocks(); ++i) bin::write_u64(os, v.pre_rank(i));
        bin::BitWriter bw;
        for (std::uint64_t i = 0; i < v.num_blocks(); ++i)
            bw.push_mpz(v.block_offset(i),
                        enumerative_code_bits(static_cast<std::uint32_t>(v.block_width(i)),
                                              v.block_ones(i)));
        bin::write_u64(os, bw.bit_count());
        os.write(reinterpret_cast<const char*>(bw.bytes().data()),
                 static_cast<std::streamsize>(bw.bytes().size()));
    }
    // select overlay bits (reconstructible from the block counts, stored so
    // the container is self-contained field-by-field)
    bin::write_u64(os, s_.size());
    bin::BitWriter sw;
    for (std::uint64_t i = 1; i <= s_.size(); ++i) sw.push(s_.get(i));
    os.write(reinterpret_cast<const char*>(sw.bytes().data()),
             static_cast<std::streamsize>(sw.bytes().size()));
}

XbwtIndex XbwtIndex::load(std::istream& is, std::uint8_t* alphabet_mode) {
    char magic[4];
    is.read(magic, 4);
    if (is.gcount() != 4 || std::memcmp(magic, kXbw1Magic, 4) != 0)
        throw InputError("not an XBW1 container (bad magic)");
    if (bin::read_u8(is) != 1) throw InputError("XBW1: unsupported version");
    std::uint8_t mode = bin::read_u8(is);
    if (mode > 1) throw InputError("XBW1: unknown alphabet mode");
    if (alphabet_mode) *alphabet_mode = mode;
    XbwtIndex idx;
    std::uint8_t has_complement = bin::read_u8(is);
    idx.complemented_ = bin::read_i32(is);
    if ((has_complement != 0) != (idx.complemented_ != kPadSymbol))
        throw InputError("XBW1: complement flag mismatch");
    idx.n_ = bin::read_u64(is);
    std::uint32_t sigma = bin::read_u32(is);
    if (sigma < 1 || idx.n_ < 1) throw InputError("XBW1: bad dimensions");
    std::vector<Symbol> symbols(sigma);
    for (auto& s : symbols) s = bin::read_u32(is);
    idx.alphabet_ = Alphabet{symbols};
    idx.b_ = bin::read_u64(is);
    if (idx.b_ < 1) throw InputError("XBW1: bad block size");
    idx.c_.resize(sigma);
    for (auto& c : idx.c_) c = bin::read_u64(is);
    const std::uint64_t t = (idx.n_ + idx.b_ - 1) / idx.b_;
    for (std::uint32_t c = 0; c < sigma; ++c) {
        std::uint64_t blocks = bin::read_u64(is);
        if (blocks != t) throw InputError("XBW1: block count mismatch");
        std::vector<std::uint32_t> xs(blocks);
        for (auto& x : xs) x = bin::read_u16(is);
        std::vector<std::uint64_t> pre(blocks);
        for (auto& p : pre) p = bin::read_u64(is);
        std::uint64_t nbits = bin::read_u64(is);
        std::vector<std::uint8_t> bytes((nbits + 7) / 8);
        is.read(reinterpret_cast<char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
        if (static_cast<std::size_t>(is.gcount()) != bytes.size())
            throw InputError("XBW1: truncated offset stream");
        bin::BitReader br(bytes.data(), nbits);
        std::vector<mpz_class> offsets(blocks);
        try {
            for (std::uint64_t i = 0; i < blocks; ++i) {
                std::uint64_t lo = i * idx.b_;
                std::uint32_t w = static_cast<std::uint32_t>(std::min(idx.b_, idx.n_ - lo));
                if (xs[i] > w) throw InputError("XBW1: block weight exceeds width");
                offsets[i] = br.pop_mpz(enumerative_code_bits(w, xs[i]));
                if (offsets[i] >= binomial(w, xs[i]))
                    throw InputError("XBW1: block offset out of range");
            }
            idx.bv_.emplace_back(idx.n_, idx.b_, std::move(xs), std::move(offsets));
        } catch (const std::logic_error& e) {
            throw InputError(std::string("XBW1: bad block directory: ") + e.what());
        }
        for (std::uint64_t i = 0; i < blocks; ++i)
            if (idx.bv_.back().pre_rank(i) != pre[i])
                throw InputError("XBW1: stored pre-ranks disagree with block weights");
    }
    std::uint64_t s_bits = bin::read_u64(is);
    std::vector<std::uint8_t> s_bytes((s_bits + 7) / 8);
    is.read(reinterpret_cast<char*>(s_bytes.data()),
            static_cast<std::streamsize>(s_bytes.size()));
    if (static_cast<std::size_t>(is.gcount()) != s_bytes.size())
        throw InputError("XBW1: truncated overlay");
    idx.rebuild_overlay();
    if (idx.s_.size() != s_bits) throw InputError("XBW1: overlay bits disagree with directory");
    bin::BitReader sr(s_bytes.data(), s_bits);
    for (std::uint64_t i = 1; i <= s_bits; ++i)
        if (sr.pop() != idx.s_.get(i))
            throw InputError("XBW1: overlay bits disagree with directory");
    // cross-check the C array against the logical weights
    std::uint64_t acc = 1;
    for (std::uint32_t c = 0; c < sigma; ++c) {
        if (idx.c_[c] != acc) throw InputError("XBW1: C array inconsistent");
        const auto& v = idx.bv_[c];
        std::uint64_t ones = static_cast<SymbolIndex>(c) == idx.complemented_
                                 ? idx.n_ - v.ones()
                                 : v.ones();
        acc += ones;
    }
    if (acc != idx.n_) throw InputError("XBW1: symbol counts do not sum to n - 1");
    return idx;
}

bool XbwtIndex::operator==(const XbwtIndex& o) const {
    if (n_ != o.n_ || !(alphabet_ == o.alphabet_) || b_ != o.b_ ||
        complemented_ != o.complemented_ || c_ != o.c_)
        return false;
    for (std::size_t c = 0; c < sigma(); ++c) {
        if (bv_[c].num_blocks() != o.bv_[c].num_blocks()) return false;
        for (std::uint64_t i = 0; i < bv_[c].num_blocks(); ++i)
            if (bv_[c].block_ones(i) != o.bv_[c].block_ones(i) ||
                bv_[c].block_offset(i) != o.bv_[c].block_offset(i))
                return false;
    }
    return true;
}

}  // namespace triecode
