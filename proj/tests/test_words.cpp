#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "vlcode/rng.hpp"
#include "vlcode/string_calc.hpp"
#include "vlcode/words.hpp"

using namespace vlcode;

namespace {

word W(const char* digits) { return word_from_digits(digits); }

// Independent three-case classifier for the string difference, written
// with bare index loops.
word minus_oracle(const word& w, const word& z) {
    if (w.size() > z.size()) {
        bool eq = true;
        for (std::size_t i = 0; i < z.size(); ++i)
            if (w[i] != z[i]) { eq = false; break; }
        if (eq) {
            std::vector<std::uint32_t> tail;
            for (std::size_t i = z.size(); i < w.size(); ++i) tail.push_back(w[i]);
            return word(std::move(tail));
        }
    }
    if (z.size() >= w.size()) {
        bool eq = true;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (z[i] != w[i]) { eq = false; break; }
        if (eq) return word{};
    }
    return w;
}

word random_word(counter_rng& rng, std::size_t max_len, std::uint32_t alpha_size) {
    std::size_t len = rng.below(max_len + 1);
    std::vector<std::uint32_t> syms;
    for (std::size_t i = 0; i < len; ++i)
        syms.push_back(static_cast<std::uint32_t>(rng.below(alpha_size)));
    return word(std::move(syms));
}

// All concatenations s in L* with |s| <= budget, collected as words.
void enumerate_star(const std::vector<word>& lex, const word& cur, std::size_t budget,
                    std::vector<word>& out) {
    out.push_back(cur);
    for (const word& c : lex)
        if (cur.size() + c.size() <= budget) enumerate_star(lex, concat(cur, c), budget, out);
}

}  // namespace

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(alphabet(1), std::invalid_argument);
    alphabet a(3);
    CHECK(a.contains(2));
    CHECK(!a.contains(3));
}

TEST_CASE("string difference cases") {
    CHECK(string_minus(W("0110"), W("01")) == W("10"));
    CHECK(string_minus(W("01"), W("0110")) == word{});
    CHECK(string_minus(W("01"), W("10")) == W("01"));
    CHECK(string_minus(W("01"), W("01")) == word{});
    CHECK(string_minus(word{}, W("1")) == word{});
    CHECK(string_minus(W("1"), word{}) == W("1"));
}

TEST_CASE("string difference agrees with the three-case oracle") {
    counter_rng rng(2024, 0);
    for (int t = 0; t < 3000; ++t) {
        word w = random_word(rng, 8, 2);
        word z = random_word(rng, 8, 2);
        REQUIRE(string_minus(w, z) == minus_oracle(w, z));
    }
}

TEST_CASE("comparability") {
    CHECK(is_comparable(W("01"), W("0110")));
    CHECK(!is_comparable(W("01"), W("10")));
    CHECK(is_comparable(word{}, W("1")));
    CHECK(is_comparable(W("1"), word{}));
}

TEST_CASE("remainder on the spec examples") {
    std::vector<word> lex = {W("01")};
    CHECK(remainder(W("0101"), lex) == word{});
    CHECK(remainder(W("0100"), lex) == W("00"));
    CHECK(remainder(W("11"), lex) == W("11"));
}

TEST_CASE("remainder rejects non-prefix-free sets") {
    std::vector<word> bad = {W("0"), W("01")};
    CHECK_THROWS_AS(remainder(W("0101"), bad), std::invalid_argument);
}

TEST_CASE("remainder equals the exhaustive minimum over L*") {
    counter_rng rng(77, 1);
    for (int t = 0; t < 300; ++t) {
        // random prefix-free set of at most 8 short words
        std::vector<word> lex;
        for (int i = 0; i < 8; ++i) {
            word c = random_word(rng, 4, 2);
            if (c.empty()) continue;
            bool ok = true;
            for (const word& o : lex)
                if (o.starts_with(c) || c.starts_with(o)) { ok = false; break; }
            if (ok) lex.push_back(c);
        }
        if (lex.empty()) continue;
        word w = random_word(rng, 12, 2);

        std::vector<word> parses;
        enumerate_star(lex, word{}, w.size(), parses);
        word best = w;
        for (const word& s : parses) {
            word diff = string_minus(w, s);
            if (diff.size() < best.size()) best = diff;
        }
        REQUIRE(remainder(w, lex) == best);
    }
}

TEST_CASE("completion sets on the three-word code") {
    std::vector<word> lex = {W("0"), W("10"), W("11")};
    CHECK(completion_set(word{}, lex) == std::vector<word>{W("0"), W("10"), W("11")});
    CHECK(completion_set(W("1"), lex) == std::vector<word>{W("0"), W("1")});
    CHECK(completion_set(W("00"), lex) == std::vector<word>{W("0"), W("10"), W("11")});
}

TEST_CASE("completion sets stay prefix-free") {
    counter_rng rng(99, 2);
    for (int t = 0; t < 300; ++t) {
        std::vector<word> lex;
        for (int i = 0; i < 6; ++i) {
            word c = random_word(rng, 5, 2);
            if (c.empty()) continue;
            bool ok = true;
            for (const word& o : lex)
                if (o.starts_with(c) || c.starts_with(o)) { ok = false; break; }
            if (ok) lex.push_back(c);
        }
        if (lex.empty()) continue;
        word w = random_word(rng, 10, 2);
        std::vector<word> comp = completion_set(w, lex);
        REQUIRE(is_prefix_free(comp));
    }
}

TEST_CASE("two-sided window indexing") {
    two_sided_window w(W("110"), W("0101"));
    CHECK(w.left_size() == 3);
    CHECK(w.right_size() == 4);
    CHECK(w.lo() == -2);
    CHECK(w.hi() == 4);
    CHECK(w.at(0) == 0u);
    CHECK(w.at(-1) == 1u);
    CHECK(w.at(-2) == 1u);
    CHECK(w.at(1) == 0u);
    CHECK(w.at(4) == 1u);
    CHECK_THROWS_AS(w.at(5), std::out_of_range);
    CHECK(w.left_word() == W("110"));
    CHECK(w.joined() == W("1100101"));

    w.append_left(0);
    w.append_right(1);
    CHECK(w.lo() == -3);
    CHECK(w.at(-3) == 0u);
    CHECK(w.at(5) == 1u);
}

TEST_CASE("word digit round trip") {
    CHECK(word_to_digits(word_from_digits("0120")) == "0120");
    CHECK(word_from_digits("") == word{});
    CHECK_THROWS_AS(word_from_digits("1a"), std::invalid_argument);
}
