#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "vlcode/words.hpp"

namespace vlcode {

// Decoding fault: a maximal parsed prefix that matches no codeword and
// cannot be extended.  position is the index of the offending symbol.
class decode_error : public std::runtime_error {
public:
    decode_error(std::string what, std::size_t position)
        : std::runtime_error(std::move(what)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/*
 * Kraft sum.  For table codes the sum is kept as an exact integer fraction
 * numerator / base^exponent, so completeness is an integer equality and
 * never a float comparison.  Parametric codes with infinite image carry a
 * (value, tail bound) pair instead.
 */
struct kraft_value {
    bool exact = true;
    unsigned __int128 numerator = 0;
    int exponent = 0;
    int base = 2;
    double value = 0.0;  // parametric only
    double tail = 0.0;   // parametric only

    bool is_one() const noexcept {
        if (!exact) return false;
        unsigned __int128 d = 1;
        for (int i = 0; i < exponent; ++i) d *= static_cast<unsigned>(base);
        return numerator == d;
    }
    double as_double() const noexcept {
        if (!exact) return value;
        long double d = 1.0L;
        for (int i = 0; i < exponent; ++i) d *= base;
        return static_cast<double>(static_cast<long double>(numerator) / d);
    }
};

struct freeness_flags {
    bool prefix_free = false;
    bool suffix_free = false;
    bool fix_free = false;
    bool complete = false;
};

namespace detail {

// Fixed-fanout trie used by the freeness checks and the greedy decoders.
class word_trie {
public:
    explicit word_trie(int fanout) : fanout_(fanout) { nodes_.emplace_back(fanout); }

    void insert(const word& w, int entry) {
        int cur = 0;
        for (std::uint32_t s : w) {
            int& slot = nodes_[cur].child[s];
            if (slot < 0) {
                slot = static_cast<int>(nodes_.size());
                nodes_.emplace_back(fanout_);
            }
            cur = slot;
        }
        nodes_[cur].entry = entry;
    }

    // True iff no inserted word is a proper prefix of another.
    bool prefix_free() const {
        for (const node& n : nodes_)
            if (n.entry >= 0)
                for (int c : n.child)
                    if (c >= 0) return false;
        return true;
    }

    int root() const noexcept { return 0; }
    int step(int node_id, std::uint32_t sym) const { return nodes_[node_id].child[sym]; }
    int entry_at(int node_id) const { return nodes_[node_id].entry; }

private:
    struct node {
        explicit node(int fanout) : child(fanout, -1) {}
        std::vector<int> child;
        int entry = -1;
    };
    int fanout_;
    std::vector<node> nodes_;
};

}  // namespace detail

/*
 * Code given by an explicit table: an injection from source symbol ids to
 * nonempty words over {0, ..., D-1}.
 */
class table_code {
public:
    struct entry {
        std::uint32_t symbol;
        word codeword;
    };

    table_code(int target_alphabet_size, std::vector<entry> entries)
        : target_(target_alphabet_size), entries_(std::move(entries)) {
        validate();
        build_index();
    }

    int target_alphabet_size() const noexcept { return target_.size(); }
    const std::vector<entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    bool has_symbol(std::uint32_t sym) const { return by_symbol_.count(sym) != 0; }

    const word& codeword(std::uint32_t sym) const {
        auto it = by_symbol_.find(sym);
        if (it == by_symbol_.end())
            throw std::out_of_range("table_code: unknown source symbol " + std::to_string(sym));
        return entries_[it->second].codeword;
    }

    std::size_t max_codeword_length() const noexcept { return max_len_; }
    std::size_t min_codeword_length() const noexcept { return min_len_; }

private:
    void validate() const {
        if (entries_.empty()) throw std::invalid_argument("table_code: empty table");
        std::map<std::uint32_t, int> sym_seen;
        std::map<word, int> cw_seen;
        for (const entry& e : entries_) {
            if (e.codeword.empty())
                throw std::invalid_argument("table_code: empty codeword");
            for (std::uint32_t s : e.codeword)
                if (!target_.contains(s))
                    throw std::invalid_argument("table_code: codeword symbol out of alphabet");
            if (!sym_seen.emplace(e.symbol, 1).second)
                throw std::invalid_argument("table_code: duplicate source symbol");
            if (!cw_seen.emplace(e.codeword, 1).second)
                throw std::invalid_argument("table_code: duplicate codeword");
        }
    }

    void build_index() {
        min_len_ = entries_.front().codeword.size();
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            by_symbol_.emplace(entries_[i].symbol, i);
            max_len_ = std::max(max_len_, entries_[i].codeword.size());
            min_len_ = std::min(min_len_, entries_[i].codeword.size());
        }
    }

    alphabet target_;
    std::vector<entry> entries_;
    std::unordered_map<std::uint32_t, std::size_t> by_symbol_;
    std::size_t max_len_ = 0;
    std::size_t min_len_ = 0;
};

// Exact Kraft sum sum_w D^{-|w|} over the table's codewords.
inline kraft_value kraft_sum(const table_code& code) {
    int d = code.target_alphabet_size();
    int lmax = static_cast<int>(code.max_codeword_length());
    // numerator accumulates in units of D^{-lmax}; keep it inside 128 bits
    if (lmax * std::bit_width(static_cast<unsigned>(d)) > 120)
        throw std::invalid_argument("kraft_sum: codewords too long for exact arithmetic");
    kraft_value kv;
    kv.exact = true;
    kv.base = d;
    kv.exponent = lmax;
    for (const auto& e : code.entries()) {
        unsigned __int128 term = 1;
        for (std::size_t i = e.codeword.size(); i < static_cast<std::size_t>(lmax); ++i)
            term *= static_cast<unsigned>(d);
        kv.numerator += term;
    }
    return kv;
}

// Prefix/suffix/fix-freeness by trie insertion; completeness by the exact
// Kraft equality.
inline freeness_flags check_freeness(const table_code& code) {
    detail::word_trie fwd(code.target_alphabet_size());
    detail::word_trie rev(code.target_alphabet_size());
    int idx = 0;
    for (const auto& e : code.entries()) {
        fwd.insert(e.codeword, idx);
        rev.insert(e.codeword.reversed(), idx);
        ++idx;
    }
    freeness_flags f;
    f.prefix_free = fwd.prefix_free();
    f.suffix_free = rev.prefix_free();
    f.fix_free = f.prefix_free && f.suffix_free;
    f.complete = kraft_sum(code).is_one();
    return f;
}

// f*(x_1 ... x_n) = f(x_1) ... f(x_n).
inline word encode_star(const table_code& code, const word& source) {
    word out;
    for (std::uint32_t s : source) out.append(code.codeword(s));
    return out;
}

// Two-sided extension: the origin of the output separates f*(left) from
// f*(right).
inline two_sided_window encode_window(const table_code& code, const two_sided_window& source) {
    word left_rev;
    const word& lrev = source.left_reversed();
    for (std::uint32_t s : lrev) left_rev.append(code.codeword(s).reversed());
    word right;
    for (std::uint32_t s : source.right_word()) right.append(code.codeword(s));
    return two_sided_window::from_parts_reversed(std::move(left_rev), std::move(right));
}

struct prefix_decode_result {
    word source;
    word unparsed;  // proper prefix of some codeword, possibly lambda
};

namespace detail {
inline void require_prefix_free(const table_code& code, const char* who) {
    if (!check_freeness(code).prefix_free)
        throw std::invalid_argument(std::string(who) + ": code is not prefix-free");
}
}  // namespace detail

// Greedy unique parse of a one-sided stream under a prefix-free code.
// encode_star(result.source) + result.unparsed reproduces the input.
inline prefix_decode_result decode_prefix_stream(const table_code& code, const word& y) {
    detail::require_prefix_free(code, "decode_prefix_stream");
    detail::word_trie trie(code.target_alphabet_size());
    int idx = 0;
    for (const auto& e : code.entries()) trie.insert(e.codeword, idx++);

    prefix_decode_result res;
    std::size_t pos = 0;
    while (pos < y.size()) {
        int node = trie.root();
        std::size_t p = pos;
        while (p < y.size()) {
            int next = trie.step(node, y[p]);
            if (next < 0)
                throw decode_error("decode_prefix_stream: no codeword matches", p);
            node = next;
            ++p;
            int entry = trie.entry_at(node);
            if (entry >= 0) {
                res.source.push_back(code.entries()[static_cast<std::size_t>(entry)].symbol);
                pos = p;
                break;
            }
        }
        if (p == y.size() && pos != p) {
            // ran out of symbols inside a codeword: keep as edge remainder
            res.unparsed = y.suffix_from(pos);
            break;
        }
    }
    return res;
}

struct two_sided_decode_result {
    basic_window<std::uint32_t> source;
    word left_remainder;   // undecodable fragment at the far left, natural order
    word right_remainder;  // undecodable fragment at the far right
};

/*
 * Two-sided decoding for a complete fix-free table code: cut codewords as
 * prefixes of the right side and as suffixes of the left side, moving away
 * from the origin.  Completeness guarantees the cutting never stalls on
 * sequences in the code image; on a finite window the leftover edge
 * fragments are returned as remainders, not errors.  One cut alternates per
 * side per round; the cuts are independent, so the order is immaterial.
 */
inline two_sided_decode_result decode_two_sided(const table_code& code,
                                                const two_sided_window& y) {
    freeness_flags f = check_freeness(code);
    if (!f.fix_free || !f.complete)
        throw std::invalid_argument("decode_two_sided: code must be complete fix-free");

    detail::word_trie fwd(code.target_alphabet_size());
    detail::word_trie rev(code.target_alphabet_size());
    int idx = 0;
    for (const auto& e : code.entries()) {
        fwd.insert(e.codeword, idx);
        rev.insert(e.codeword.reversed(), idx);
        ++idx;
    }

    const word& right = y.right_word();
    const word& left_rev = y.left_reversed();

    // Greedy step: parse one codeword of `w` starting at `pos` using `trie`.
    auto cut_one = [&](const detail::word_trie& trie, const word& w,
                       std::size_t pos) -> std::optional<std::pair<std::size_t, std::uint32_t>> {
        int node = trie.root();
        std::size_t p = pos;
        while (p < w.size()) {
            int next = trie.step(node, w[p]);
            if (next < 0) return std::nullopt;
            node = next;
            ++p;
            int entry = trie.entry_at(node);
            if (entry >= 0)
                return std::make_pair(p, code.entries()[static_cast<std::size_t>(entry)].symbol);
        }
        return std::nullopt;
    };

    two_sided_decode_result res;
    std::size_t rpos = 0, lpos = 0;
    bool r_stalled = false, l_stalled = false;
    while (!r_stalled || !l_stalled) {
        if (!r_stalled) {
            if (auto cut = cut_one(fwd, right, rpos)) {
                res.source.append_right(cut->second);
                rpos = cut->first;
            } else {
                r_stalled = true;
            }
        }
        if (!l_stalled) {
            if (auto cut = cut_one(rev, left_rev, lpos)) {
                res.source.append_left(cut->second);
                lpos = cut->first;
            } else {
                l_stalled = true;
            }
        }
    }
    res.right_remainder = right.suffix_from(rpos);
    res.left_remainder = left_rev.suffix_from(lpos).reversed();
    return res;
}

// floor(log2 k) + 1 + A in pure integer arithmetic.
inline int codeword_length_conj(std::uint64_t k, int payload_length) {
    if (k < 1) throw std::invalid_argument("codeword_length_conj: k must be >= 1");
    if (payload_length < 0) throw std::invalid_argument("codeword_length_conj: negative payload");
    return std::bit_width(k) + payload_length;
}

/*
 * Parametric code family over {0, 1, 2} with codewords b(k) p 2, where
 * 1 b(k) is the binary representation of k and p is an A-bit payload.
 * Two payload conventions are supported:
 *   zeros        f(k) = b(k) 0^A 2, source symbols are naturals;
 *   identity_bit f(k, z) = b(k) z 2 (A = 1), source symbols are (k, z) pairs.
 * Both are prefix-free; neither is suffix-free or complete.  Every
 * codeword carries exactly one terminator 2, at its end, which makes the
 * two-sided extension a synchronizable injection.
 */
class conj_code {
public:
    enum class payload_kind : std::uint8_t { zeros, identity_bit };

    explicit conj_code(int payload_length, payload_kind kind = payload_kind::zeros)
        : payload_length_(payload_length), kind_(kind) {
        if (payload_length < 0)
            throw std::invalid_argument("conj_code: negative payload length");
        if (kind == payload_kind::identity_bit && payload_length != 1)
            throw std::invalid_argument("conj_code: identity payload requires A == 1");
    }

    // The f(k, z) = b(k) z 2 code of the power-law construction.
    static conj_code santa_fe() { return conj_code(1, payload_kind::identity_bit); }

    int payload_length() const noexcept { return payload_length_; }
    payload_kind kind() const noexcept { return kind_; }
    int target_alphabet_size() const noexcept { return 3; }
    static constexpr std::uint32_t terminator = 2;

    int codeword_length(std::uint64_t k) const { return codeword_length_conj(k, payload_length_); }

    // b(k): binary representation of k with the leading 1 removed.
    static word bits_b(std::uint64_t k) {
        if (k < 1) throw std::invalid_argument("conj_code: k must be >= 1");
        int n = std::bit_width(k) - 1;
        std::vector<std::uint32_t> bits(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (k >> (n - 1 - i)) & 1u;
        return word(std::move(bits));
    }

    word codeword(pair_symbol s) const {
        if (kind_ != payload_kind::identity_bit)
            throw std::invalid_argument("conj_code: pair symbols need the identity payload");
        word w = bits_b(s.k);
        w.push_back(s.z);
        w.push_back(terminator);
        return w;
    }

    word codeword_index(std::uint64_t k) const {
        if (kind_ != payload_kind::zeros)
            throw std::invalid_argument("conj_code: index symbols need the zeros payload");
        word w = bits_b(k);
        for (int i = 0; i < payload_length_; ++i) w.push_back(0);
        w.push_back(terminator);
        return w;
    }

    word encode_star(const source_word& x) const {
        word out;
        for (const pair_symbol& s : x) out.append(codeword(s));
        return out;
    }

    two_sided_window encode_window(const source_window& x) const {
        word left_rev;
        for (const pair_symbol& s : x.left_reversed()) left_rev.append(codeword(s).reversed());
        word right;
        for (const pair_symbol& s : x.right_word()) right.append(codeword(s));
        return two_sided_window::from_parts_reversed(std::move(left_rev), std::move(right));
    }

    // Membership test for a full codeword (used by the remainder DP).
    bool is_codeword(const word& w) const {
        if (w.empty() || w[w.size() - 1] != terminator) return false;
        std::size_t body = w.size() - 1;
        for (std::size_t i = 0; i < body; ++i)
            if (w[i] > 1) return false;
        if (kind_ == payload_kind::identity_bit) return body >= 1;
        if (body < static_cast<std::size_t>(payload_length_)) return false;
        for (std::size_t i = body - static_cast<std::size_t>(payload_length_); i < body; ++i)
            if (w[i] != 0) return false;
        return true;
    }

    // Decode one codeword body (symbols strictly between terminators).
    pair_symbol parse_body(const word& body, std::size_t fault_pos) const {
        word w = body;
        w.push_back(terminator);
        if (!is_codeword(w))
            throw decode_error("conj_code: segment is not in the code image", fault_pos);
        std::size_t nbits = body.size() - static_cast<std::size_t>(payload_length_);
        if (nbits > 63) throw decode_error("conj_code: index exceeds 64 bits", fault_pos);
        std::uint64_t k = 1;
        for (std::size_t i = 0; i < nbits; ++i) k = (k << 1) | body[i];
        pair_symbol s;
        s.k = k;
        s.z = kind_ == payload_kind::identity_bit ? static_cast<std::uint8_t>(body[nbits]) : 0;
        return s;
    }

    struct stream_decode_result {
        source_word source;
        word unparsed;
    };

    // Greedy prefix-stream decode; every terminator closes one codeword.
    stream_decode_result decode_prefix_stream(const word& y) const {
        stream_decode_result res;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] != terminator) continue;
            res.source.push_back(parse_body(y.sub(pos, i - pos), pos));
            pos = i + 1;
        }
        res.unparsed = y.suffix_from(pos);
        for (std::uint32_t s : res.unparsed)
            if (s > 1) throw decode_error("conj_code: stray symbol in unparsed tail", pos);
        return res;
    }

private:
    int payload_length_;
    payload_kind kind_;
};

/*
 * Kraft sum of the parametric family: the image is infinite, so the sum
 * sum_k D^{-|f(k)|} is reported as a truncation over the first `buckets`
 * bit-length buckets plus the exact geometric bound on everything beyond.
 */
inline kraft_value kraft_sum(const conj_code& code, int buckets = 24) {
    if (buckets < 1) throw std::invalid_argument("kraft_sum: need at least one bucket");
    double mult = code.kind() == conj_code::payload_kind::identity_bit ? 2.0 : 1.0;
    double scale = mult * std::pow(3.0, -code.payload_length());
    kraft_value kv;
    kv.exact = false;
    kv.base = 3;
    double sum = 0.0;
    for (int m = 1; m <= buckets; ++m)
        sum += std::exp2(m - 1) * std::pow(3.0, -m);  // 2^{m-1} codeword indices of bit length m
    kv.value = scale * sum;
    kv.tail = scale * 1.5 * std::pow(2.0 / 3.0, buckets + 1);
    return kv;
}

/*
 * Phase recovery for comma-terminated codes: locate the terminators,
 * decode every maximal segment enclosed by two of them, and report the
 * fragments before the first and after the last terminator as partial.
 * Shifting the input window changes offsets but never the decoded interior.
 */
struct phase_parse_item {
    std::size_t offset;  // index of the codeword's first symbol
    pair_symbol symbol;
};

struct phase_parse {
    std::vector<phase_parse_item> items;
    word head;  // before the first terminator
    word tail;  // after the last terminator
};

inline phase_parse phase_recover(const conj_code& code, const word& y) {
    phase_parse out;
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != conj_code::terminator) continue;
        if (!prev) {
            out.head = y.prefix(i);
        } else {
            std::size_t start = *prev + 1;
            out.items.push_back({start, code.parse_body(y.sub(start, i - start), start)});
        }
        prev = i;
    }
    if (!prev)
        out.head = y;
    else
        out.tail = y.suffix_from(*prev + 1);
    return out;
}

// Comma-code view of a table code: every codeword ends with the same
// terminator symbol and that symbol appears nowhere else.
inline std::uint32_t comma_terminator(const table_code& code) {
    std::uint32_t c = code.entries().front().codeword[code.entries().front().codeword.size() - 1];
    for (const auto& e : code.entries()) {
        const word& w = e.codeword;
        if (w[w.size() - 1] != c)
            throw std::invalid_argument("phase_recover: codewords do not share a terminator");
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] == c)
                throw std::invalid_argument("phase_recover: terminator occurs inside a codeword");
    }
    return c;
}

struct table_phase_parse_item {
    std::size_t offset;
    std::uint32_t symbol;
};

struct table_phase_parse {
    std::vector<table_phase_parse_item> items;
    word head;
    word tail;
};

inline table_phase_parse phase_recover(const table_code& code, const word& y) {
    std::uint32_t c = comma_terminator(code);
    std::map<word, std::uint32_t> by_word;
    for (const auto& e : code.entries()) by_word.emplace(e.codeword, e.symbol);

    table_phase_parse out;
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != c) continue;
        if (!prev) {
            out.head = y.prefix(i);
        } else {
            std::size_t start = *prev + 1;
            word cw = y.sub(start, i - start + 1);
            auto it = by_word.find(cw);
            if (it == by_word.end())
                throw decode_error("phase_recover: segment is not in the code image", start);
            out.items.push_back({start, it->second});
        }
        prev = i;
    }
    if (!prev)
        out.head = y;
    else
        out.tail = y.suffix_from(*prev + 1);
    return out;
}

/*
 * Length census of the completion set of w with respect to the conj_code
 * family: a_l = |{ s : |s| = l, remainder(w) s is a codeword }|.  The
 * identity-payload family is the zero-payload family over shifted indices
 * (b(2k + z) = b(k) z), so its census reduces to the A = 0 census minus
 * the codeword "2".
 */
inline std::vector<unsigned long long> completion_census(const word& w, const conj_code& code,
                                                         int l_max) {
    if (l_max < 0) throw std::invalid_argument("completion_census: negative l_max");

    // remainder of w with respect to the (infinite, prefix-free) code image
    std::size_t n = w.size();
    std::vector<char> reach(n + 1, 0);
    reach[0] = 1;
    std::size_t best = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (!reach[i]) continue;
        best = std::max(best, i);
        for (std::size_t j = i + 1; j <= n; ++j)
            if (code.is_codeword(w.sub(i, j - i))) reach[j] = 1;
    }
    word rem = w.suffix_from(best);

    bool identity = code.kind() == conj_code::payload_kind::identity_bit;
    int a = identity ? 0 : code.payload_length();

    std::vector<unsigned long long> census(static_cast<std::size_t>(l_max) + 1, 0);
    bool rem_bits_only = true;
    for (std::uint32_t s : rem)
        if (s > 1) rem_bits_only = false;
    if (!rem_bits_only) return census;  // empty completion set

    long long r = static_cast<long long>(rem.size());
    for (int l = 0; l <= l_max; ++l) {
        long long m = r + l - (a + 1);  // |b(k)| of a length-l completion
        if (m < 0) continue;
        if (m <= r) {
            // unique candidate: b(k) = rem[0..m), payload and terminator fixed
            word target = rem.prefix(static_cast<std::size_t>(m));
            for (int i = 0; i < a; ++i) target.push_back(0);
            target.push_back(conj_code::terminator);
            // target must extend rem and have the requested completion length
            if (target.size() == rem.size() + static_cast<std::size_t>(l) &&
                target.starts_with(rem))
                census[static_cast<std::size_t>(l)] = 1;
        } else {
            int free_bits = static_cast<int>(m - r);
            if (free_bits >= 63)
                throw std::overflow_error("completion_census: census count overflow");
            census[static_cast<std::size_t>(l)] = 1ull << free_bits;
        }
    }
    if (identity && rem.empty() && l_max >= 1) census[1] -= 1;  // exclude "2" (k = 1 slot)
    return census;
}

// Fixed-length restriction of a table code; prefix-freeness is automatic.
class fixed_length_code {
public:
    fixed_length_code(std::size_t length, table_code table)
        : length_(length), table_(std::move(table)) {
        for (const auto& e : table_.entries())
            if (e.codeword.size() != length)
                throw std::invalid_argument("fixed_length_code: codeword of wrong length");
    }

    std::size_t length() const noexcept { return length_; }
    const table_code& table() const noexcept { return table_; }

private:
    std::size_t length_;
    table_code table_;
};

/*
 * Text format for code tables: first line the target alphabet size D, then
 * one "symbol<TAB>codeword" line per entry with the codeword written as
 * digits in base D.  Serialization is deterministic (table order).
 */
inline table_code load_code_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("load_code_table: missing alphabet line");
    int d = std::stoi(line);
    std::vector<table_code::entry> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::invalid_argument("load_code_table: missing tab separator");
        table_code::entry e;
        e.symbol = static_cast<std::uint32_t>(std::stoul(line.substr(0, tab)));
        e.codeword = word_from_digits(line.substr(tab + 1));
        entries.push_back(std::move(e));
    }
    return table_code(d, std::move(entries));
}

inline void save_code_table(std::ostream& out, const table_code& code) {
    out << code.target_alphabet_size() << '\n';
    for (const auto& e : code.entries())
        out << e.symbol << '\t' << word_to_digits(e.codeword) << '\n';
}

// The nine-word complete fix-free binary set used throughout the tests.
inline table_code fixfree9_code() {
    const char* words[] = {"01", "000", "100", "110", "111", "0010", "0011", "1010", "1011"};
    std::vector<table_code::entry> entries;
    for (std::uint32_t i = 0; i < 9; ++i)
        entries.push_back({i, word_from_digits(words[i])});
    return table_code(2, std::move(entries));
}

// Two-word prefix code 0 -> "0", 1 -> "10" with expansion rate 3/2 under a
// fair coin; the running example for the stationary-mean estimators.
inline table_code t2_code() {
    std::vector<table_code::entry> entries;
    entries.push_back({0, word_from_digits("0")});
    entries.push_back({1, word_from_digits("10")});
    return table_code(2, std::move(entries));
}

}  // namespace vlcode
