#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "vlcode/entropy.hpp"
#include "vlcode/measures.hpp"

using namespace vlcode;

namespace {

word W(const char* digits) { return word_from_digits(digits); }

table_code fl2_code() {
    return table_code(2, {table_code::entry{0, W("00")}, table_code::entry{1, W("11")}});
}

table_code identity_code() {
    return table_code(2, {table_code::entry{0, W("0")}, table_code::entry{1, W("1")}});
}

// Deterministic stream of champernowne digits, as an exact model.
struct champernowne_model {
    word digits = champernowne_digits(64);
    block_pmf<std::uint32_t> shifted_block(int i, int m) const {
        block_pmf<std::uint32_t> out;
        out.emplace(digits.sub(static_cast<std::size_t>(i), static_cast<std::size_t>(m)), 1.0);
        return out;
    }
};

}  // namespace

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == Catch::Approx(std::numbers::ln2).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    double expected = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
    CHECK(binary_entropy(0.75) == Catch::Approx(expected).epsilon(1e-15));
    CHECK(binary_entropy(0.75) == Catch::Approx(0.562335).margin(1e-6));
    CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("block entropy of exact models") {
    iid_exact uni10(std::vector<double>(10, 0.1));
    CHECK(block_entropy(uni10.block(2)) ==
          Catch::Approx(2.0 * std::log(10.0)).epsilon(1e-12));

    iid_exact point({1.0, 0.0});
    CHECK(block_entropy(point.block(3)) == 0.0);

    // truncated pair-process blocks are a genuine pmf
    santa_fe_truncated sf(2.0, 4);
    double total = 0.0;
    for (const auto& [w, p] : sf.block(3)) total += p;
    CHECK(total == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("plug-in entropy with bias bookkeeping") {
    cylinder_counts counts(1);
    counts.add_sequence(champernowne_digits(1000000));
    plug_in_entropy pe = block_entropy_plug_in(counts, 1);
    CHECK(pe.support == 10);
    CHECK(pe.bias_estimate == Catch::Approx(9.0 / 2e6).epsilon(1e-12));
    // exact value of the first-million-digit distribution; the asymptotic
    // ln 10 is still 0.0303 away at this horizon
    CHECK(pe.h_nats == Catch::Approx(2.272274).margin(1e-5));
    plug_in_entropy pm = block_entropy_plug_in(counts, 1, true);
    CHECK(pm.h_nats == Catch::Approx(pe.h_nats + pe.bias_estimate).epsilon(1e-12));
    CHECK_THROWS_AS(block_entropy_plug_in(counts, 2), std::invalid_argument);
}

TEST_CASE("entropy table and rate estimates") {
    entropy_table t("exact");
    iid_exact fair = iid_exact::fair_binary();
    for (int n = 1; n <= 5; ++n) t.set(n, block_entropy(fair.block(n)));
    rate_estimate r = entropy_rate(t);
    CHECK(r.increment == Catch::Approx(std::numbers::ln2).epsilon(1e-12));
    CHECK(r.ratio == Catch::Approx(std::numbers::ln2).epsilon(1e-12));

    iid_exact uni3(std::vector<double>(3, 1.0 / 3.0));
    entropy_table t3("exact");
    for (int n = 1; n <= 4; ++n) t3.set(n, block_entropy(uni3.block(n)));
    CHECK(entropy_rate(t3).increment == Catch::Approx(std::log(3.0)).epsilon(1e-12));

    entropy_table bad("exact");
    bad.set(1, 1.0);
    bad.set(2, 0.5);
    bad.set(3, 0.4);
    CHECK_THROWS_AS(entropy_rate(bad), std::runtime_error);

    std::ostringstream os;
    t.to_csv(os);
    CHECK(os.str().substr(0, 32) == "n,H_nats,flavor,bias_estimate\n1,");
}

TEST_CASE("exact truncated pair-process increments decrease toward the rate") {
    santa_fe_truncated sf(2.0, 4);
    entropy_table t("exact");
    for (int n = 1; n <= 5; ++n) t.set(n, block_entropy(sf.block(n)));
    double prev_inc = 1e300;
    for (int n = 2; n <= 5; ++n) {
        double inc = t.h(n) - t.h(n - 1);
        REQUIRE(inc <= prev_inc + 1e-12);
        REQUIRE(inc >= sf.entropy_rate() - 1e-12);
        prev_inc = inc;
    }
}

TEST_CASE("eta of length distributions") {
    iid_model fair = iid_model::fair_binary();
    double e = eta_iid(fair, t2_code());
    double expected = 0.5 * (1.0 / 1.5) * std::log(1.0 / 1.5) +
                      0.5 * (2.0 / 1.5) * std::log(2.0 / 1.5);
    CHECK(e == Catch::Approx(expected).epsilon(1e-14));
    CHECK(e == Catch::Approx(0.056633).margin(1e-6));

    CHECK(eta_iid(fair, fl2_code()) == Catch::Approx(0.0).margin(1e-15));

    // invariant under relabeling symbols with equal lengths
    table_code swapped(2, {table_code::entry{0, W("10")}, table_code::entry{1, W("0")}});
    CHECK(eta_iid(iid_model({0.5, 0.5}), swapped) == Catch::Approx(e).epsilon(1e-14));

    // always nonnegative
    counter_rng rng(7, 0);
    for (int t = 0; t < 200; ++t) {
        double p = 0.05 + 0.9 * rng.next_double();
        std::vector<std::size_t> lens = {1 + rng.below(5), 1 + rng.below(5)};
        REQUIRE(eta_from_lengths({p, 1.0 - p}, lens) >= -1e-15);
    }
}

TEST_CASE("eta of the coded power-law source") {
    // direct summation oracle at alpha = 2 (fast-converging tail)
    double L = conj_length_stats_for(2.0, 1).expected_length;
    double z = zeta(2.0).value;
    long double direct = 0.0L;
    for (std::uint64_t k = 1; k <= 4000000; ++k) {
        long double p = std::pow(static_cast<long double>(k), -2.0L) / z;
        long double r = static_cast<long double>(codeword_length_conj(k, 1)) / L;
        direct += p * r * std::log(r);
    }
    CHECK(eta_conj_santa_fe(2.0, 1) ==
          Catch::Approx(static_cast<double>(direct)).margin(1e-5));
    CHECK(eta_conj_santa_fe(2.0, 1) > 0.0);
}

TEST_CASE("coded block entropy identity") {
    iid_exact fair = iid_exact::fair_binary();
    table_code code = t2_code();
    auto c = check_coded_block_identity(fair.block(3),
                                        [&](std::uint32_t s) { return code.codeword(s); });
    CHECK(c.gap() < 1e-10);
    CHECK(c.rhs == Catch::Approx(3.0 * std::numbers::ln2).epsilon(1e-12));

    table_code ident = identity_code();
    auto ci = check_coded_block_identity(fair.block(4),
                                         [&](std::uint32_t s) { return ident.codeword(s); });
    CHECK(ci.gap() < 1e-12);

    santa_fe_truncated sf(2.0, 3);
    conj_code cc = conj_code::santa_fe();
    auto cs = check_coded_block_identity(sf.block(3),
                                         [&](const pair_symbol& s) { return cc.codeword(s); });
    CHECK(cs.gap() < 1e-10);
}

TEST_CASE("conditional phase entropy identity") {
    auto c = check_conditional_N({0.5, 0.5}, {1, 2});
    CHECK(std::abs(c.lhs - c.rhs) < 1e-12);
    CHECK(c.lhs == Catch::Approx(2.0 / 3.0 * std::numbers::ln2).epsilon(1e-12));

    auto cf = check_conditional_N({0.5, 0.5}, {2, 2});
    CHECK(cf.lhs == Catch::Approx(std::log(2.0)).epsilon(1e-12));

    auto cs = check_conditional_N({1.0, 0.0}, {3, 3});
    CHECK(cs.lhs == Catch::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(std::abs(cs.lhs - cs.rhs) < 1e-12);
}

TEST_CASE("length-biased block inequality biconditional") {
    table_code code = t2_code();
    auto len = [&](std::uint32_t s) { return code.codeword(s).size(); };

    // short codeword on the likely symbol: positive covariance
    iid_exact skew({0.75, 0.25});
    auto pos = check_length_biased_inequality(skew.block(2), 0, len);
    CHECK(pos.cov > 0.0);
    CHECK(pos.inequality_holds);
    CHECK(pos.identity_gap < 1e-10);

    // long codeword on the likely symbol: negative covariance, reversed
    iid_exact anti({0.1, 0.9});
    auto neg = check_length_biased_inequality(anti.block(2), 0, len);
    CHECK(neg.cov < 0.0);
    CHECK(!neg.cov_nonneg);
    CHECK(neg.h_bar < neg.h - neg.eta);
    CHECK(neg.identity_gap < 1e-10);

    // fixed-length code: zero covariance, equality, eta = 0
    auto flat = check_length_biased_inequality(
        iid_exact({0.3, 0.7}).block(2), 1, [](std::uint32_t) { return 2; });
    CHECK(std::abs(flat.cov) < 1e-12);
    CHECK(std::abs(flat.h_bar - flat.h) < 1e-12);
    CHECK(std::abs(flat.eta) < 1e-12);

    // position 1 in the middle of the block
    auto mid = check_length_biased_inequality(skew.block(3), 1, len);
    CHECK(mid.identity_gap < 1e-10);
    CHECK(mid.inequality_holds == mid.cov_nonneg);
}

TEST_CASE("random-length sandwich inequalities") {
    iid_exact fair = iid_exact::fair_binary();
    table_code code = t2_code();
    auto c = check_sandwich(fair.block(4), 3, [&](std::uint32_t s) { return code.codeword(s); });
    CHECK(c.first_holds);
    CHECK(c.second_holds);

    table_code ident = identity_code();
    auto ci = check_sandwich(fair.block(3), 3, [&](std::uint32_t s) { return ident.codeword(s); });
    CHECK(ci.first_holds);
    CHECK(ci.second_holds);
    // identity code: bar-Y^{M_n} determines bar-X_2^n and conversely
    CHECK(ci.h_x_2n == Catch::Approx(ci.h_y_mn - std::numbers::ln2).epsilon(1e-10));

    santa_fe_truncated sf(2.0, 3);
    conj_code cc = conj_code::santa_fe();
    auto cs = check_sandwich(sf.block(4), 2, [&](const pair_symbol& s) { return cc.codeword(s); });
    CHECK(cs.first_holds);
    CHECK(cs.second_holds);
}

TEST_CASE("fixed-length sandwich corollary") {
    fixed_length_code fl(2, fl2_code());
    iid_exact fair = iid_exact::fair_binary();
    for (int n = 1; n <= 3; ++n) {
        auto c = check_fixed_length_bound(fair, fl, n);
        REQUIRE(c.holds);
        REQUIRE(c.bound == Catch::Approx(2.0 * std::numbers::ln2 + std::numbers::ln2)
                               .epsilon(1e-12));
    }

    fixed_length_code ident(1, identity_code());
    auto ci = check_fixed_length_bound(fair, ident, 3);
    CHECK(ci.holds);
    CHECK(ci.lhs == Catch::Approx(0.0).margin(1e-12));

    iid_mixture mix(iid_exact({0.8, 0.2}), iid_exact({0.2, 0.8}), 0.5);
    auto cm = check_fixed_length_bound(mix, fl, 2);
    CHECK(cm.holds);
}

TEST_CASE("jensen bound for cesaro averages") {
    phase_coin_model coin(2);
    auto strict = check_jensen_bound(coin, 1, 2);
    CHECK(strict.holds);
    CHECK(strict.lhs > strict.rhs + 0.1);  // strictly nonstationary

    iid_exact fair = iid_exact::fair_binary();
    auto eq = check_jensen_bound(fair, 2, 3);
    CHECK(eq.holds);
    CHECK(eq.lhs == Catch::Approx(eq.rhs).margin(1e-12));

    champernowne_model champ;
    auto gap = check_jensen_bound(champ, 1, 10);
    CHECK(gap.rhs == 0.0);
    CHECK(gap.lhs > 0.0);
    // digits 1..9 then 1: known average distribution
    double expect = -(0.2 * std::log(0.2) + 8 * 0.1 * std::log(0.1));
    CHECK(gap.lhs == Catch::Approx(expect).epsilon(1e-12));
}

TEST_CASE("entropy rate ratio under coding") {
    iid_exact fair = iid_exact::fair_binary();
    auto c = check_rate_ratio(fair, t2_code(), 10);
    CHECK(c.expected_ratio == Catch::Approx(std::numbers::ln2 / 1.5).epsilon(1e-12));
    CHECK(std::abs(c.h_nu_bar - c.expected_ratio) / c.expected_ratio < 0.05);
    // the increments settle immediately for this renewal-like chain
    CHECK(c.h_nu_bar == Catch::Approx(c.expected_ratio).margin(1e-9));

    auto ci = check_rate_ratio(fair, identity_code(), 8);
    CHECK(ci.h_nu_bar == Catch::Approx(ci.h_mu).margin(1e-10));

    // the 2-blocking phase resolves like 2^{-n/2}: depth 12 sits within 2%
    auto cf = check_rate_ratio(fair, fl2_code(), 12);
    CHECK(std::abs(cf.h_nu_bar - std::numbers::ln2 / 2.0) / (std::numbers::ln2 / 2.0) < 0.05);
}

TEST_CASE("vocabulary lower bound on exact truncated models") {
    santa_fe_truncated sf(2.0, 4);
    auto c = entropy_vocab_lower_bound(sf, 4, 0.6);
    CHECK(c.holds);
    CHECK(c.u_size == 1);

    auto degenerate = entropy_vocab_lower_bound(sf, 4, 0.999);
    CHECK(degenerate.u_size == 0);
    CHECK(degenerate.holds);  // H(X^n) >= n h for stationary blocks

    for (int n = 1; n <= 5; ++n)
        for (double delta : {0.55, 0.7, 0.9})
            REQUIRE(entropy_vocab_lower_bound(santa_fe_truncated(1.5, 3), n, delta).holds);
}

TEST_CASE("truncation constant C_a") {
    // a near zero: the first admissible length
    CHECK(find_c_a(2.0, 1, 1e-6) == 2);
    // fixed-length code: C = L for any a
    fixed_length_code fl(2, fl2_code());
    CHECK(find_c_a(fl, 0.9) == 2);
    CHECK_THROWS_AS(find_c_a(fl, 1.0), std::invalid_argument);

    // the power-law case used by the inclusion experiment
    int ca = find_c_a(1.1, 1, 0.9);
    CHECK(ca == 56);
    double L = conj_length_stats_for(1.1, 1).expected_length;
    CHECK(conj_truncated_mean_length(1.1, 1, ca - 1) < 0.9 * L);
    CHECK(conj_truncated_mean_length(1.1, 1, ca) >= 0.9 * L);
}
