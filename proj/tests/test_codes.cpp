#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <vector>

#include "vlcode/codes.hpp"
#include "vlcode/rng.hpp"

using namespace vlcode;

namespace {

word W(const char* digits) { return word_from_digits(digits); }

table_code make_code(int d, std::initializer_list<const char*> words) {
    std::vector<table_code::entry> entries;
    std::uint32_t sym = 0;
    for (const char* w : words) entries.push_back({sym++, word_from_digits(w)});
    return table_code(d, std::move(entries));
}

// O(n^2 L) pairwise comparator used as the freeness oracle.
freeness_flags brute_freeness(const table_code& code) {
    freeness_flags f;
    f.prefix_free = true;
    f.suffix_free = true;
    const auto& es = code.entries();
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (i == j) continue;
            const word& a = es[i].codeword;
            const word& b = es[j].codeword;
            if (b.size() > a.size() && b.starts_with(a)) f.prefix_free = false;
            if (b.size() > a.size() && b.ends_with(a)) f.suffix_free = false;
        }
    f.fix_free = f.prefix_free && f.suffix_free;
    long double sum = 0.0L;
    for (const auto& e : es)
        sum += std::pow(static_cast<long double>(code.target_alphabet_size()),
                        -static_cast<long double>(e.codeword.size()));
    f.complete = std::abs(static_cast<double>(sum) - 1.0) < 1e-12;
    return f;
}

// Binary-expansion oracle for b(k): digits of k after the leading 1.
word b_oracle(std::uint32_t k) {
    std::vector<std::uint32_t> bits;
    while (k > 1) {
        bits.push_back(k & 1u);
        k >>= 1;
    }
    return word(std::move(bits)).reversed();
}

word random_source(counter_rng& rng, const table_code& code, std::size_t len) {
    std::vector<std::uint32_t> syms;
    for (std::size_t i = 0; i < len; ++i)
        syms.push_back(code.entries()[rng.below(code.entries().size())].symbol);
    return word(std::move(syms));
}

}  // namespace

TEST_CASE("kraft sums are exact") {
    auto kv9 = kraft_sum(fixfree9_code());
    CHECK(kv9.is_one());
    auto kv3 = kraft_sum(make_code(2, {"0", "10", "11"}));
    CHECK(kv3.is_one());
    auto kv2 = kraft_sum(make_code(2, {"0", "11"}));
    CHECK(!kv2.is_one());
    CHECK(kv2.as_double() == Catch::Approx(0.75).epsilon(0.0));
    // exact fraction: 3/4 with denominator 2^2
    CHECK(kv2.exponent == 2);
    CHECK(kv2.numerator == 3u);
}

TEST_CASE("freeness flags on the named codes") {
    auto f9 = check_freeness(fixfree9_code());
    CHECK(f9.fix_free);
    CHECK(f9.complete);

    auto fp = check_freeness(make_code(2, {"0", "01"}));
    CHECK(!fp.prefix_free);

    auto ff = check_freeness(make_code(2, {"01", "11"}));
    CHECK(ff.fix_free);
    CHECK(!ff.complete);
}

TEST_CASE("freeness agrees with the pairwise brute force on random codes") {
    counter_rng rng(11, 0);
    for (int t = 0; t < 400; ++t) {
        std::vector<table_code::entry> entries;
        std::vector<word> seen;
        std::uint32_t sym = 0;
        std::size_t want = 1 + rng.below(10);
        for (std::size_t i = 0; i < want; ++i) {
            std::size_t len = 1 + rng.below(5);
            std::vector<std::uint32_t> syms;
            for (std::size_t j = 0; j < len; ++j)
                syms.push_back(static_cast<std::uint32_t>(rng.below(2)));
            word w(std::move(syms));
            bool dup = false;
            for (const word& s : seen)
                if (s == w) { dup = true; break; }
            if (dup) continue;
            seen.push_back(w);
            entries.push_back({sym++, w});
        }
        table_code code(2, std::move(entries));
        auto a = check_freeness(code);
        auto b = brute_freeness(code);
        REQUIRE(a.prefix_free == b.prefix_free);
        REQUIRE(a.suffix_free == b.suffix_free);
        REQUIRE(a.complete == b.complete);
    }
}

TEST_CASE("conj code construction and lengths") {
    conj_code cc = conj_code::santa_fe();
    CHECK(cc.codeword({2, 1}) == W("012"));
    CHECK(cc.codeword({1, 0}) == W("02"));

    source_word x;
    x.push_back({2, 1});
    x.push_back({1, 0});
    CHECK(cc.encode_star(x) == W("01202"));
    CHECK(cc.encode_star(source_word{}) == word{});

    CHECK(codeword_length_conj(1, 1) == 2);
    CHECK(codeword_length_conj(5, 1) == 4);
    CHECK(codeword_length_conj(8, 1) == 5);
    CHECK_THROWS_AS(codeword_length_conj(0, 1), std::invalid_argument);

    // binary-expansion oracle for b(k)
    for (std::uint32_t k = 1; k <= 2000; ++k) {
        REQUIRE(conj_code::bits_b(k) == b_oracle(k));
        REQUIRE(cc.codeword({k, 0}).size() ==
                static_cast<std::size_t>(codeword_length_conj(k, 1)));
    }
}

TEST_CASE("conj code is prefix-free out to k = 10^4") {
    conj_code cc = conj_code::santa_fe();
    std::vector<word> words;
    for (std::uint32_t k = 1; k <= 10000; ++k) {
        words.push_back(cc.codeword({k, 0}));
        words.push_back(cc.codeword({k, 1}));
    }
    // sorted order puts any prefix immediately before an extension of it
    std::sort(words.begin(), words.end());
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
        REQUIRE(!(words[i] == words[i + 1]));
        REQUIRE(!words[i + 1].starts_with(words[i]));
    }
}

TEST_CASE("encode examples") {
    CHECK(encode_star(fixfree9_code(), word{}) == word{});
    table_code fl = make_code(2, {"00", "01"});
    CHECK(encode_star(fl, word{0, 1}) == W("0001"));

    conj_code cc = conj_code::santa_fe();
    source_window sw(source_word{{1, 0}}, source_word{{1, 1}});
    two_sided_window enc = cc.encode_window(sw);
    CHECK(enc.left_word() == W("02"));
    CHECK(enc.right_word() == W("12"));

    CHECK(cc.encode_window(source_window{}).empty());

    source_window single(source_word{}, source_word{{2, 1}});
    two_sided_window enc1 = cc.encode_window(single);
    CHECK(enc1.left_word() == word{});
    CHECK(enc1.right_word() == W("012"));
}

TEST_CASE("prefix stream decode inverts encode") {
    conj_code cc = conj_code::santa_fe();
    auto r = cc.decode_prefix_stream(W("01202"));
    REQUIRE(r.source.size() == 2);
    CHECK(r.source[0] == pair_symbol{2, 1});
    CHECK(r.source[1] == pair_symbol{1, 0});
    CHECK(r.unparsed == word{});

    auto r2 = cc.decode_prefix_stream(W("0120"));
    REQUIRE(r2.source.size() == 1);
    CHECK(r2.source[0] == pair_symbol{2, 1});
    CHECK(r2.unparsed == W("0"));

    auto r3 = decode_prefix_stream(fixfree9_code(), word{});
    CHECK(r3.source == word{});
    CHECK(r3.unparsed == word{});
}

TEST_CASE("prefix stream decode round trip on random inputs") {
    counter_rng rng(13, 0);
    table_code codes[] = {make_code(2, {"0", "10", "11"}), fixfree9_code(),
                          make_code(3, {"0", "1", "20", "21", "22"})};
    for (const table_code& code : codes) {
        for (int t = 0; t < 200; ++t) {
            word x = random_source(rng, code, rng.below(40));
            word y = encode_star(code, x);
            auto r = decode_prefix_stream(code, y);
            REQUIRE(r.source == x);
            REQUIRE(r.unparsed == word{});
        }
    }
}

TEST_CASE("prefix stream decode reports faults with positions") {
    table_code code = make_code(2, {"0", "10"});
    // "11" dead-ends after the first 1: no codeword continues
    try {
        decode_prefix_stream(code, W("011"));
        FAIL("expected decode_error");
    } catch (const decode_error& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("two-sided decode round trips with empty remainders") {
    table_code code = fixfree9_code();
    counter_rng rng(17, 0);
    for (int t = 0; t < 200; ++t) {
        std::size_t nl = rng.below(7), nr = rng.below(7);
        word left = random_source(rng, code, nl);
        word right = random_source(rng, code, nr);
        two_sided_window x(left, right);
        two_sided_window y = encode_window(code, x);
        auto dec = decode_two_sided(code, y);
        REQUIRE(dec.left_remainder == word{});
        REQUIRE(dec.right_remainder == word{});
        REQUIRE(dec.source.left_word() == left);
        REQUIRE(dec.source.right_word() == right);
    }
}

TEST_CASE("two-sided decode on truncated windows keeps the interior") {
    table_code code = fixfree9_code();
    counter_rng rng(19, 0);
    for (int t = 0; t < 200; ++t) {
        word left = random_source(rng, code, 3 + rng.below(4));
        word right = random_source(rng, code, 3 + rng.below(4));
        two_sided_window x(left, right);
        two_sided_window y = encode_window(code, x);

        // chop one target symbol from each edge
        word lw = y.left_word();
        word rw = y.right_word();
        two_sided_window y_trunc(lw.suffix_from(1), rw.prefix(rw.size() - 1));
        auto dec = decode_two_sided(code, y_trunc);

        // the chopped codewords lose their symbol, everything else survives
        std::size_t l_first_len = code.codeword(left[0]).size();
        std::size_t r_last_len = code.codeword(right[right.size() - 1]).size();
        REQUIRE(dec.source.left_word() == left.suffix_from(1));
        REQUIRE(dec.source.right_word() == right.prefix(right.size() - 1));
        REQUIRE(dec.left_remainder.size() == l_first_len - 1);
        REQUIRE(dec.right_remainder.size() == r_last_len - 1);
    }
}

TEST_CASE("two-sided decode rejects codes that are not complete fix-free") {
    table_code prefix_only = make_code(2, {"0", "10", "11"});  // complete but not suffix-free
    CHECK_THROWS_AS(decode_two_sided(prefix_only, two_sided_window{}), std::invalid_argument);
    auto dec = decode_two_sided(fixfree9_code(), two_sided_window{});
    CHECK(dec.source.empty());
    CHECK(dec.left_remainder == word{});
}

TEST_CASE("two-sided decode cut order does not matter") {
    // decode the right side alone and both sides together; right results agree
    table_code code = fixfree9_code();
    counter_rng rng(23, 0);
    for (int t = 0; t < 100; ++t) {
        word left = random_source(rng, code, rng.below(6));
        word right = random_source(rng, code, rng.below(6));
        two_sided_window both = encode_window(code, two_sided_window(left, right));
        two_sided_window right_only(word{}, both.right_word());
        auto a = decode_two_sided(code, both);
        auto b = decode_two_sided(code, right_only);
        REQUIRE(a.source.right_word() == b.source.right_word());
        REQUIRE(a.right_remainder == b.right_remainder);
    }
}

TEST_CASE("phase recovery decodes interiors and survives shifts") {
    conj_code cc = conj_code::santa_fe();
    counter_rng rng(29, 0);
    for (int t = 0; t < 100; ++t) {
        source_word x;
        std::size_t n = 4;
        for (std::size_t i = 0; i < n; ++i)
            x.push_back({static_cast<std::uint32_t>(1 + rng.below(9)),
                         static_cast<std::uint8_t>(rng.below(2))});
        word y;
        y.push_back(conj_code::terminator);
        y.append(cc.encode_star(x));

        phase_parse p = phase_recover(cc, y);
        REQUIRE(p.items.size() == n);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(p.items[i].symbol == x[i]);

        // shift by 3: decoded interior is a suffix of the original's
        word shifted = y.suffix_from(3);
        phase_parse ps = phase_recover(cc, shifted);
        REQUIRE(ps.items.size() <= p.items.size());
        std::size_t skip = p.items.size() - ps.items.size();
        for (std::size_t i = 0; i < ps.items.size(); ++i) {
            REQUIRE(ps.items[i].symbol == p.items[skip + i].symbol);
            REQUIRE(ps.items[i].offset + 3 == p.items[skip + i].offset);
        }
    }
}

TEST_CASE("phase recovery with no terminator reports everything partial") {
    conj_code cc = conj_code::santa_fe();
    phase_parse p = phase_recover(cc, W("0101"));
    CHECK(p.items.empty());
    CHECK(p.head == W("0101"));
    CHECK(p.tail == word{});
}

TEST_CASE("phase recovery rejects segments outside the image") {
    conj_code cc = conj_code::santa_fe();
    CHECK_THROWS_AS(phase_recover(cc, W("22")), decode_error);  // empty body
}

TEST_CASE("phase recovery on comma table codes") {
    table_code comma = table_code(
        3, {table_code::entry{7, word_from_digits("02")}, table_code::entry{8, word_from_digits("12")},
            table_code::entry{9, word_from_digits("112")}});
    word y = W("21121202");  // stray leading terminator, then 112 12 02
    auto p = phase_recover(comma, y);
    REQUIRE(p.items.size() == 3);
    CHECK(p.items[0].symbol == 9u);
    CHECK(p.items[1].symbol == 8u);
    CHECK(p.items[2].symbol == 7u);
    CHECK(p.head == word{});
    CHECK(p.tail == word{});
}

TEST_CASE("completion census of the parametric family") {
    conj_code zeros(1);  // payload 0, A = 1
    // remainder of "1" is "1": completions exist at every length
    auto census = completion_census(W("1"), zeros, 8);
    CHECK(census[2] <= 1);
    CHECK(census[5] == 8);  // 2^{5-2}
    for (int l = 2; l <= 8; ++l)
        if (l > 2) CHECK(census[static_cast<std::size_t>(l)] == (1ull << (l - 2)));

    // a word whose remainder contains the terminator: empty completion set
    auto empty_census = completion_census(W("2"), zeros, 6);
    for (auto a : empty_census) CHECK(a == 0);

    CHECK_THROWS_AS(completion_census(W("1"), zeros, -1), std::invalid_argument);
}

TEST_CASE("completion census counts match direct enumeration") {
    conj_code zeros(1);
    // enumerate all codewords up to length 10 and complete w directly
    auto enumerate_census = [&](const word& w, int lmax) {
        // remainder via the same parse rule, but completions by brute force
        std::vector<unsigned long long> out(static_cast<std::size_t>(lmax) + 1, 0);
        // collect codewords of length <= |w| + lmax
        std::vector<word> lex;
        for (std::uint32_t k = 1; k < (1u << 12); ++k) {
            word cw = zeros.codeword_index(k);
            if (cw.size() <= w.size() + static_cast<std::size_t>(lmax)) lex.push_back(cw);
        }
        // parse points
        std::vector<char> reach(w.size() + 1, 0);
        reach[0] = 1;
        std::size_t best = 0;
        for (std::size_t i = 0; i <= w.size(); ++i) {
            if (!reach[i]) continue;
            best = std::max(best, i);
            for (const word& c : lex)
                if (c.size() <= w.size() - i && w.sub(i, c.size()) == c) reach[i + c.size()] = 1;
        }
        word rem = w.suffix_from(best);
        for (const word& c : lex) {
            if (!c.starts_with(rem)) continue;
            std::size_t l = c.size() - rem.size();
            if (l <= static_cast<std::size_t>(lmax)) ++out[l];
        }
        return out;
    };
    for (const char* s : {"", "1", "0", "10", "02", "0102", "111", "01020"}) {
        word w = word_from_digits(s);
        auto lib = completion_census(w, zeros, 9);
        auto ref = enumerate_census(w, 9);
        for (std::size_t l = 0; l <= 9; ++l) REQUIRE(lib[l] == ref[l]);
    }
}

TEST_CASE("kraft sum of the parametric family brackets the limit") {
    // zeros A=1 sums to 1/3, identity to 2/3: both strictly below 1
    kraft_value kz = kraft_sum(conj_code(1));
    CHECK(!kz.exact);
    CHECK(kz.value <= 1.0 / 3.0);
    CHECK(kz.value + kz.tail >= 1.0 / 3.0);
    CHECK(kz.tail < 1e-3);

    kraft_value ki = kraft_sum(conj_code::santa_fe());
    CHECK(ki.value <= 2.0 / 3.0);
    CHECK(ki.value + ki.tail >= 2.0 / 3.0);

    // bucketed truncation equals the direct per-k sum over the same range
    long double s_zeros = 0.0L;
    conj_code zeros(1);
    for (std::uint32_t k = 1; k < (1u << 16); ++k)
        s_zeros += std::pow(3.0L, -static_cast<long double>(zeros.codeword_length(k)));
    kraft_value kz16 = kraft_sum(zeros, 16);
    CHECK(static_cast<double>(s_zeros) == Catch::Approx(kz16.value).epsilon(1e-12));
}

TEST_CASE("code table text round trip") {
    std::ostringstream os;
    save_code_table(os, fixfree9_code());
    std::istringstream is(os.str());
    table_code back = load_code_table(is);
    REQUIRE(back.entries().size() == 9);
    CHECK(check_freeness(back).fix_free);
    CHECK(kraft_sum(back).is_one());

    std::ostringstream os2;
    save_code_table(os2, back);
    CHECK(os.str() == os2.str());
}

TEST_CASE("fixed length code validation") {
    CHECK_THROWS_AS(fixed_length_code(2, t2_code()), std::invalid_argument);
    fixed_length_code fl(2, table_code(2, {table_code::entry{0, word_from_digits("00")},
                                           table_code::entry{1, word_from_digits("11")}}));
    CHECK(fl.length() == 2);
}

TEST_CASE("table code validation") {
    CHECK_THROWS_AS(table_code(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(table_code(2, {table_code::entry{0, word{}}}), std::invalid_argument);
    CHECK_THROWS_AS(table_code(2, {table_code::entry{0, word_from_digits("0")},
                                   table_code::entry{0, word_from_digits("1")}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(table_code(2, {table_code::entry{0, word_from_digits("0")},
                                   table_code::entry{1, word_from_digits("0")}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(encode_star(t2_code(), word{5}), std::out_of_range);
}
