#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "vlcode/codes.hpp"
#include "vlcode/rng.hpp"
#include "vlcode/words.hpp"
#include "vlcode/zeta.hpp"

namespace vlcode {

/*
 * The power-law pair process X_i = (K_i, Z_{K_i}): K_i i.i.d. with
 * P(K = k) = k^-alpha / zeta(alpha), Z_k fair bits drawn once per
 * realization and frozen.
 *
 * K is sampled by inverse CDF over bit-length buckets (the mass of bucket
 * b is sum_{2^{b-1} <= k < 2^b} k^-alpha / zeta) followed by exact
 * rejection inside the bucket, so the law is exact for all k below 2^63.
 * The remaining tail keeps its exact total mass in one cap bucket whose
 * draws get fresh 64-bit indices; only their bit length saturates at 64.
 * truncation_bias() reports that cap mass.  A plain value table cannot do
 * this job: near alpha = 1 the tail above any feasible k_max carries
 * double-digit percentages of the mass, and mapping it to a single symbol
 * visibly corrupts length statistics and cylinder counts.
 */
class santa_fe_model {
public:
    static constexpr int cap_bits = 63;  // exact buckets 1..63, cap at 64

    explicit santa_fe_model(double alpha, std::uint64_t k_max = 1000000)
        : alpha_(alpha), k_max_(k_max), zeta_(zeta(alpha)) {
        if (alpha <= 1.0) throw std::invalid_argument("santa_fe_model: alpha must exceed 1");
        if (k_max < 1) throw std::invalid_argument("santa_fe_model: k_max must be >= 1");
        bucket_cdf_.resize(cap_bits);
        long double acc = 0.0L;
        for (int b = 1; b <= cap_bits; ++b) {
            acc += bitlen_bucket_sum(alpha_, b);
            bucket_cdf_[static_cast<std::size_t>(b - 1)] =
                static_cast<double>(acc) / zeta_.value;
        }
        tail_mass_ = std::max(0.0, 1.0 - bucket_cdf_.back());
    }

    double alpha() const noexcept { return alpha_; }
    std::uint64_t k_max() const noexcept { return k_max_; }
    double zeta_alpha() const noexcept { return zeta_.value; }
    double truncation_bias() const noexcept { return tail_mass_; }

    // P(K = k), exact power law (no truncation).
    double p(std::uint64_t k) const {
        if (k < 1) throw std::invalid_argument("santa_fe_model: k must be >= 1");
        return std::pow(static_cast<double>(k), -alpha_) / zeta_.value;
    }

    std::uint64_t sample_k(counter_rng& rng) const {
        double u = rng.next_double();
        auto it = std::lower_bound(bucket_cdf_.begin(), bucket_cdf_.end(), u);
        if (it == bucket_cdf_.end()) {
            // cap bucket: fresh 64-bit index, bit length saturated
            return (1ull << 63) | rng.below(1ull << 63);
        }
        int b = static_cast<int>(it - bucket_cdf_.begin()) + 1;
        if (b == 1) return 1;
        std::uint64_t lo = 1ull << (b - 1);
        for (;;) {
            std::uint64_t k = lo + rng.below(lo);
            double accept = std::pow(static_cast<double>(lo) / static_cast<double>(k), alpha_);
            if (rng.next_double() < accept) return k;
        }
    }

private:
    double alpha_;
    std::uint64_t k_max_;
    zeta_value zeta_;
    std::vector<double> bucket_cdf_;
    double tail_mass_ = 0.0;
};

/*
 * Per-realization record of the Z_k bits.  Each bit is a pure function of
 * (seed, realization, k) -- a dedicated counter-RNG block -- so the value
 * is identical no matter in which order positions are queried, and two
 * samplers over the same realization can never disagree.
 */
class z_record {
public:
    z_record(std::uint64_t seed, std::uint64_t realization)
        : gen_(seed), stream_(make_stream(stream_domain::z_bits, realization)) {}

    std::uint8_t z(std::uint64_t k) const {
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
        std::uint8_t bit = static_cast<std::uint8_t>(gen_.block(stream_, k)[0] & 1u);
        cache_.emplace(k, bit);
        return bit;
    }

    pair_symbol symbol(std::uint64_t k) const { return pair_symbol{k, z(k)}; }

private:
    philox4x32 gen_;
    std::uint64_t stream_;
    mutable std::unordered_map<std::uint32_t, std::uint8_t> cache_;
};

// Incremental one-realization source stream (position order is the draw
// order of its counter RNG).
class santa_fe_stream {
public:
    santa_fe_stream(const santa_fe_model& model, std::uint64_t seed, std::uint64_t realization)
        : model_(&model),
          k_rng_(seed, make_stream(stream_domain::trial, realization)),
          z_(seed, realization) {}

    pair_symbol next() { return z_.symbol(model_->sample_k(k_rng_)); }
    const z_record& z() const noexcept { return z_; }

private:
    const santa_fe_model* model_;
    counter_rng k_rng_;
    z_record z_;
};

struct process_sample {
    source_window window;  // left holds positions lo..0, right holds 1..hi
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;
};

// Materialize positions lo..hi (lo <= 0 <= hi) of one realization.
inline process_sample sample_santa_fe(const santa_fe_model& model, long long lo, long long hi,
                                      std::uint64_t seed, std::uint64_t realization) {
    if (lo > 0 || hi < 0) throw std::invalid_argument("sample_santa_fe: need lo <= 0 <= hi");
    santa_fe_stream s(model, seed, realization);
    source_word left;  // natural order lo..0
    for (long long i = lo; i <= 0; ++i) left.push_back(s.next());
    source_word right;
    for (long long i = 1; i <= hi; ++i) right.push_back(s.next());
    process_sample ps;
    ps.window = source_window(std::move(left), std::move(right));
    ps.seed = seed;
    ps.realization = realization;
    return ps;
}

// Line format "i<TAB>k<TAB>z" for golden tests.
inline void write_realization(std::ostream& os, const process_sample& ps) {
    const source_window& w = ps.window;
    for (long long i = w.lo(); i <= w.hi(); ++i) {
        const pair_symbol& s = w.at(i);
        os << i << '\t' << s.k << '\t' << static_cast<int>(s.z) << '\n';
    }
}

// I.i.d. source over symbols 0..n-1 with an explicit pmf.
class iid_model {
public:
    explicit iid_model(std::vector<double> pmf) : pmf_(std::move(pmf)) {
        if (pmf_.size() < 2) throw std::invalid_argument("iid_model: need >= 2 symbols");
        double sum = 0.0;
        for (double p : pmf_) {
            if (p < 0.0) throw std::invalid_argument("iid_model: negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("iid_model: pmf does not sum to 1");
        cdf_.resize(pmf_.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < pmf_.size(); ++i) {
            acc += pmf_[i];
            cdf_[i] = acc;
        }
        cdf_.back() = 1.0;
    }

    static iid_model fair_binary() { return iid_model({0.5, 0.5}); }
    static iid_model uniform(int n) {
        return iid_model(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
    }

    std::size_t alphabet_size() const noexcept { return pmf_.size(); }
    double p(std::uint32_t sym) const { return pmf_.at(sym); }
    const std::vector<double>& pmf() const noexcept { return pmf_; }

    std::uint32_t sample(counter_rng& rng) const {
        double u = rng.next_double();
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<std::uint32_t>(it - cdf_.begin());
    }

private:
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

class iid_stream {
public:
    iid_stream(const iid_model& model, std::uint64_t seed, std::uint64_t realization)
        : model_(&model), rng_(seed, make_stream(stream_domain::trial, realization)) {}
    std::uint32_t next() { return model_->sample(rng_); }

private:
    const iid_model* model_;
    counter_rng rng_;
};

// First n digits of the decimal concatenation 1 2 3 4 ...
inline word champernowne_digits(std::size_t n) {
    std::vector<std::uint32_t> out;
    out.reserve(n);
    for (std::uint64_t v = 1; out.size() < n; ++v) {
        char buf[24];
        int len = std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
        for (int i = 0; i < len && out.size() < n; ++i)
            out.push_back(static_cast<std::uint32_t>(buf[i] - '0'));
    }
    return word(std::move(out));
}

/*
 * Predictors.  s_k scans a source window for the pairs (k, 0) / (k, 1);
 * bar_s_k scans a coded window for the substrings 2 b(k) 0 2 / 2 b(k) 1 2.
 * Both return 2 when neither or both patterns occur.
 */
inline int predictor_s(std::uint64_t k, const source_word& v) {
    bool saw0 = false, saw1 = false;
    for (const pair_symbol& s : v) {
        if (s.k != k) continue;
        (s.z ? saw1 : saw0) = true;
    }
    if (saw0 && !saw1) return 0;
    if (saw1 && !saw0) return 1;
    return 2;
}

inline int predictor_s(std::uint64_t k, const source_window& v) {
    source_word joined = v.joined();
    return predictor_s(k, joined);
}

inline bool contains_subword(const word& haystack, const word& needle) {
    if (needle.empty()) return true;
    if (needle.size() > haystack.size()) return false;
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
           haystack.end();
}

inline word bar_s_pattern(std::uint64_t k, std::uint8_t z) {
    word pat;
    pat.push_back(conj_code::terminator);
    pat.append(conj_code::bits_b(k));
    pat.push_back(z);
    pat.push_back(conj_code::terminator);
    return pat;
}

inline int predictor_bar_s(std::uint64_t k, const word& w) {
    bool saw0 = contains_subword(w, bar_s_pattern(k, 0));
    bool saw1 = contains_subword(w, bar_s_pattern(k, 1));
    if (saw0 && !saw1) return 0;
    if (saw1 && !saw0) return 1;
    return 2;
}

/*
 * The predictor s_k succeeds on X^n exactly when k occurs among K_1..K_n
 * (the record structure rules the contrary pair out), so the success
 * probability has the closed form 1 - (1 - p_k)^n.
 */
inline double exact_prediction_prob(const santa_fe_model& model, std::uint64_t k, std::uint64_t n) {
    if (k > model.k_max())
        throw std::invalid_argument("exact_prediction_prob: k exceeds the model's k_max");
    if (n == 0) return 0.0;
    double pk = model.p(k);
    return 1.0 - std::exp(static_cast<double>(n) * std::log1p(-pk));
}

/*
 * Well-predictability set U_delta(n) = { k : P(s_k(X^n) = Z_k) >= delta }.
 * The success probability is decreasing in k, so the set is an initial
 * segment {1, ..., |U|}.  power_law_bound is the closed-form quantity
 * [n / (-zeta(alpha) log(1-delta))]^{1/alpha}; every k <= bound belongs to
 * the set, hence |U| >= floor(bound).
 */
struct u_set_result {
    std::vector<std::uint64_t> members;
    double power_law_bound = 0.0;
    std::size_t size() const noexcept { return members.size(); }
};

inline double u_power_law_bound(double alpha, double zeta_alpha, double delta, std::uint64_t n) {
    return std::pow(static_cast<double>(n) / (-zeta_alpha * std::log1p(-delta)), 1.0 / alpha);
}

inline u_set_result u_size(const santa_fe_model& model, double delta, std::uint64_t n) {
    if (!(delta > 0.5 && delta < 1.0))
        throw std::invalid_argument("u_size: delta must lie in (1/2, 1)");
    u_set_result res;
    res.power_law_bound = u_power_law_bound(model.alpha(), model.zeta_alpha(), delta, n);
    for (std::uint64_t k = 1;; ++k) {
        if (exact_prediction_prob(model, k, n) < delta) break;
        res.members.push_back(k);
        if (k == model.k_max())
            throw std::runtime_error(
                "u_size: set reaches k_max; enlarge the model's k_max and retry");
    }
    return res;
}

}  // namespace vlcode
