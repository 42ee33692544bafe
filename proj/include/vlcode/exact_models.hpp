#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "vlcode/words.hpp"

namespace vlcode {

/*
 * Exact finite-horizon block distributions for tiny models; the ground
 * truth behind every entropy identity check.  Probabilities are doubles:
 * the quantities derived from them are compared at 1e-10, far above the
 * roundoff of these short products.
 */
template <class Sym>
using block_pmf = std::map<basic_word<Sym>, double>;

namespace detail {
// Enumerate all length-n tuples over {0, ..., base-1}, calling fn(tuple).
template <class Fn>
void for_each_tuple(std::size_t base, int n, Fn&& fn) {
    std::vector<std::uint32_t> x(static_cast<std::size_t>(n), 0);
    if (n == 0) {
        fn(x);
        return;
    }
    for (;;) {
        fn(x);
        std::size_t i = 0;
        while (i < x.size()) {
            if (++x[i] < base) break;
            x[i] = 0;
            ++i;
        }
        if (i == x.size()) break;
    }
}
}  // namespace detail

// Stationary i.i.d. blocks with an explicit pmf over symbols 0..n-1.
class iid_exact {
public:
    explicit iid_exact(std::vector<double> pmf) : pmf_(std::move(pmf)) {
        if (pmf_.size() < 2) throw std::invalid_argument("iid_exact: need >= 2 symbols");
        double s = 0.0;
        for (double p : pmf_) s += p;
        if (std::abs(s - 1.0) > 1e-12)
            throw std::invalid_argument("iid_exact: pmf does not sum to 1");
    }

    static iid_exact fair_binary() { return iid_exact({0.5, 0.5}); }

    std::size_t alphabet_size() const noexcept { return pmf_.size(); }
    const std::vector<double>& pmf() const noexcept { return pmf_; }

    // stationary: shifted blocks coincide with unshifted ones
    block_pmf<std::uint32_t> shifted_block(int, int m) const { return block(m); }

    block_pmf<std::uint32_t> block(int n) const {
        block_pmf<std::uint32_t> out;
        detail::for_each_tuple(pmf_.size(), n, [&](const std::vector<std::uint32_t>& x) {
            double p = 1.0;
            for (std::uint32_t s : x) p *= pmf_[s];
            if (p > 0.0) out.emplace(word(x), p);
        });
        return out;
    }

private:
    std::vector<double> pmf_;
};

/*
 * Power-law pair process restricted to K <= k_small with renormalized
 * weights.  A block has probability prod p'_{k_i} * 2^{-D}, D the number
 * of distinct k values in the block, which is exactly the uniform mixture
 * over all Z assignments; inconsistent blocks (same k, both bits) get 0.
 */
class santa_fe_truncated {
public:
    santa_fe_truncated(double alpha, int k_small) : alpha_(alpha), k_small_(k_small) {
        if (alpha <= 1.0) throw std::invalid_argument("santa_fe_truncated: alpha must exceed 1");
        if (k_small < 1) throw std::invalid_argument("santa_fe_truncated: k_small must be >= 1");
        double s = 0.0;
        for (int k = 1; k <= k_small; ++k) s += std::pow(static_cast<double>(k), -alpha);
        for (int k = 1; k <= k_small; ++k)
            p_.push_back(std::pow(static_cast<double>(k), -alpha) / s);
    }

    double alpha() const noexcept { return alpha_; }
    int k_small() const noexcept { return k_small_; }
    double p(std::uint32_t k) const { return p_.at(k - 1); }

    // Entropy rate: every ergodic component is i.i.d. over (k, Z_k) with
    // the k-marginal below, so the rate is the k-entropy.
    double entropy_rate() const {
        double h = 0.0;
        for (double p : p_)
            if (p > 0.0) h -= p * std::log(p);
        return h;
    }

    block_pmf<pair_symbol> block(int n) const {
        block_pmf<pair_symbol> out;
        std::size_t base = 2 * static_cast<std::size_t>(k_small_);
        detail::for_each_tuple(base, n, [&](const std::vector<std::uint32_t>& t) {
            std::vector<pair_symbol> syms(t.size());
            double p = 1.0;
            std::set<std::uint32_t> distinct;
            std::map<std::uint32_t, std::uint8_t> z_seen;
            bool consistent = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::uint32_t k = t[i] / 2 + 1;
                std::uint8_t z = static_cast<std::uint8_t>(t[i] % 2);
                syms[i] = pair_symbol{k, z};
                p *= p_[k - 1];
                distinct.insert(k);
                auto [it, fresh] = z_seen.emplace(k, z);
                if (!fresh && it->second != z) consistent = false;
            }
            if (!consistent || p <= 0.0) return;
            p *= std::exp2(-static_cast<double>(distinct.size()));
            out.emplace(source_word(std::move(syms)), p);
        });
        return out;
    }

private:
    double alpha_;
    int k_small_;
    std::vector<double> p_;
};

// Blockwise mixture of two i.i.d. components: stationary, nonergodic.
class iid_mixture {
public:
    iid_mixture(iid_exact a, iid_exact b, double weight_a)
        : a_(std::move(a)), b_(std::move(b)), wa_(weight_a) {
        if (!(wa_ > 0.0 && wa_ < 1.0))
            throw std::invalid_argument("iid_mixture: weight must lie in (0,1)");
        if (a_.alphabet_size() != b_.alphabet_size())
            throw std::invalid_argument("iid_mixture: component alphabets differ");
    }

    block_pmf<std::uint32_t> block(int n) const {
        block_pmf<std::uint32_t> out = a_.block(n);
        for (auto& [w, p] : out) p *= wa_;
        for (const auto& [w, p] : b_.block(n)) out[w] += (1.0 - wa_) * p;
        return out;
    }

private:
    iid_exact a_, b_;
    double wa_;
};

/*
 * Deterministic-phase source: a fresh fair coin fires every `period`
 * steps starting at position 1 (X_j is the coin for j = 1 mod period and
 * the constant 0 in between).  Nonstationary: the marginal at a position
 * depends on its phase, which is what the Jensen-gap checks exercise.
 */
class phase_coin_model {
public:
    explicit phase_coin_model(int period = 2) : period_(period) {
        if (period < 1) throw std::invalid_argument("phase_coin_model: period must be >= 1");
    }

    // Distribution of X_{i+1} .. X_{i+m}.
    block_pmf<std::uint32_t> shifted_block(int i, int m) const {
        std::vector<long long> coin_of(static_cast<std::size_t>(m), -1);
        long long first = -1, last = -1;
        for (int j = 1; j <= m; ++j) {
            long long pos = static_cast<long long>(i) + j;
            if ((pos - 1) % period_ != 0) continue;
            coin_of[static_cast<std::size_t>(j - 1)] = (pos - 1) / period_;
            if (first < 0) first = coin_of[static_cast<std::size_t>(j - 1)];
            last = coin_of[static_cast<std::size_t>(j - 1)];
        }
        int coins = first < 0 ? 0 : static_cast<int>(last - first + 1);
        block_pmf<std::uint32_t> out;
        detail::for_each_tuple(2, coins, [&](const std::vector<std::uint32_t>& bits) {
            std::vector<std::uint32_t> w(static_cast<std::size_t>(m), 0);
            for (int j = 0; j < m; ++j)
                if (coin_of[static_cast<std::size_t>(j)] >= 0)
                    w[static_cast<std::size_t>(j)] =
                        bits[static_cast<std::size_t>(coin_of[static_cast<std::size_t>(j)] - first)];
            out[word(std::move(w))] += std::exp2(-coins);
        });
        return out;
    }

    block_pmf<std::uint32_t> block(int m) const { return shifted_block(0, m); }

private:
    int period_;
};

}  // namespace vlcode
