#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "vlcode/codes.hpp"
#include "vlcode/parallel.hpp"
#include "vlcode/processes.hpp"
#include "vlcode/rational.hpp"
#include "vlcode/rng.hpp"
#include "vlcode/words.hpp"

namespace vlcode {

struct estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t n = 0;
};

inline estimate mean_and_stderr(const std::vector<double>& xs) {
    estimate e;
    e.n = xs.size();
    if (xs.empty()) return e;
    double s = 0.0;
    for (double x : xs) s += x;
    e.mean = s / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - e.mean) * (x - e.mean);
        e.stderr_ = std::sqrt(ss / (static_cast<double>(xs.size() - 1) *
                                    static_cast<double>(xs.size())));
    }
    return e;
}

/*
 * Empirical cylinder table.  A window contributes one scan position for
 * every index i where the full depth-d block fits, and each position
 * counts all its prefixes of length 1..d.  All lengths therefore share a
 * single position total, freq([u]) = count(u) / total is a consistent
 * empirical measure, and count(u) = sum_s count(us) holds by construction.
 * Merging is plain addition, so shard order cannot matter.
 */
template <class Sym>
class basic_cylinder_counts {
public:
    using word_type = basic_word<Sym>;

    explicit basic_cylinder_counts(std::size_t depth) : depth_(depth) {
        if (depth == 0) throw std::invalid_argument("cylinder_counts: depth must be >= 1");
    }

    std::size_t depth() const noexcept { return depth_; }
    std::uint64_t total() const noexcept { return total_; }
    const std::map<word_type, std::uint64_t>& table() const noexcept { return counts_; }

    void add_sequence(const word_type& w) {
        if (w.size() < depth_) return;
        for (std::size_t i = 0; i + depth_ <= w.size(); ++i) {
            ++total_;
            for (std::size_t l = 1; l <= depth_; ++l) ++counts_[w.sub(i, l)];
        }
    }

    std::uint64_t count(const word_type& u) const {
        auto it = counts_.find(u);
        return it == counts_.end() ? 0 : it->second;
    }

    double freq(const word_type& u) const {
        if (total_ == 0) return 0.0;
        return static_cast<double>(count(u)) / static_cast<double>(total_);
    }

    void merge(const basic_cylinder_counts& o) {
        if (o.depth_ != depth_) throw std::invalid_argument("cylinder_counts: depth mismatch");
        total_ += o.total_;
        for (const auto& [w, c] : o.counts_) counts_[w] += c;
    }

private:
    std::size_t depth_;
    std::map<word_type, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

using cylinder_counts = basic_cylinder_counts<std::uint32_t>;
using source_cylinder_counts = basic_cylinder_counts<pair_symbol>;

inline void write_counts_csv(std::ostream& os, const cylinder_counts& counts) {
    os << "word,count,total,freq\n";
    char buf[40];
    for (const auto& [w, c] : counts.table()) {
        std::snprintf(buf, sizeof buf, "%.12g",
                      static_cast<double>(c) / static_cast<double>(counts.total()));
        os << word_to_digits(w) << ',' << c << ',' << counts.total() << ',' << buf << '\n';
    }
}

/*
 * Cesaro frequency estimate of the stationary-mean cylinder probability:
 * per realization the time average n^-1 sum_{i<n} 1{block at i equals u},
 * averaged across independent realizations.  The cross-realization average
 * is what handles nonergodic sources, where one path only ever sees its
 * own ergodic component.
 */
template <class Sym, class Gen>
estimate cesaro_frequency(Gen&& gen, const basic_word<Sym>& u, std::uint64_t n_positions,
                          std::uint64_t realizations) {
    if (u.empty()) throw std::invalid_argument("cesaro_frequency: empty cylinder word");
    std::vector<double> freqs;
    freqs.reserve(realizations);
    for (std::uint64_t r = 0; r < realizations; ++r) {
        basic_word<Sym> w = gen(r);
        if (w.size() < n_positions + u.size() - 1)
            throw std::invalid_argument("cesaro_frequency: window shorter than requested scan");
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < n_positions; ++i) {
            bool match = true;
            for (std::size_t j = 0; j < u.size(); ++j)
                if (!(w[i + j] == u[j])) { match = false; break; }
            if (match) ++hits;
        }
        freqs.push_back(static_cast<double>(hits) / static_cast<double>(n_positions));
    }
    return mean_and_stderr(freqs);
}

// Per-realization coded-length averages S(x, n)/n and their cross-
// realization mean, the plug-in estimate of L.
struct expansion_result {
    std::vector<double> per_realization;
    estimate l_estimate;
};

template <class Factory, class LenFn>
expansion_result expansion_rate(Factory&& make_stream_for, LenFn&& len, std::uint64_t n,
                                std::uint64_t realizations) {
    expansion_result res;
    res.per_realization.reserve(realizations);
    for (std::uint64_t r = 0; r < realizations; ++r) {
        auto s = make_stream_for(r);
        std::uint64_t sum = 0;
        for (std::uint64_t i = 0; i < n; ++i) sum += static_cast<std::uint64_t>(len(s.next()));
        res.per_realization.push_back(static_cast<double>(sum) / static_cast<double>(n));
    }
    res.l_estimate = mean_and_stderr(res.per_realization);
    return res;
}

/*
 * Length-biased random-phase sampling.  The stationary mean of a coded
 * process is realized by (i) tilting the symbol under the origin by
 * |f(x_1)| / L -- done here by rejection against a cap on the codeword
 * length -- and (ii) shifting by a uniform phase N inside f(x_1).  Lengths
 * above the cap are accepted with probability one, so a cap at the
 * 1 - 1e-6 length quantile leaves a bias below that tail mass.
 */
template <class Stream, class CodeFn>
auto draw_biased_first(Stream& s, CodeFn&& codefn, double l_cap, counter_rng& phase_rng) {
    for (;;) {
        auto sym = s.next();
        word cw = codefn(sym);
        double accept = static_cast<double>(cw.size()) / l_cap;
        if (accept >= 1.0 || phase_rng.next_double() < accept)
            return std::make_pair(sym, std::move(cw));
    }
}

// Coded window bar-y_1 ... bar-y_m of the phase-randomized process.
template <class Stream, class CodeFn>
word rho_window_from(Stream& s, CodeFn&& codefn, double l_cap, counter_rng& phase_rng,
                     std::size_t m) {
    if (m == 0) return word{};
    auto [first, cw] = draw_biased_first(s, codefn, l_cap, phase_rng);
    std::size_t phase = static_cast<std::size_t>(phase_rng.below(cw.size()));
    word y = cw.suffix_from(phase);
    while (y.size() < m) y.append(codefn(s.next()));
    return y.prefix(m);
}

template <class Sym>
struct basic_phase_sample {
    basic_window<Sym> source;  // positions 1-h .. h
    int phase = 0;             // N, uniform on {0, ..., |f(x_1)|-1}
    two_sided_window coded;    // T^N f^Z(source), origin N symbols into f(x_1)
};

template <class Stream, class CodeFn>
auto length_biased_sample(Stream& s, CodeFn&& codefn, double l_cap, counter_rng& phase_rng,
                          std::size_t halfwidth) {
    using sym_t = decltype(s.next());
    if (halfwidth < 1)
        throw std::invalid_argument("length_biased_sample: halfwidth must be >= 1");
    auto [x1, cw1] = draw_biased_first(s, codefn, l_cap, phase_rng);
    int phase = static_cast<int>(phase_rng.below(cw1.size()));

    basic_window<sym_t> src;
    src.append_right(x1);
    for (std::size_t i = 2; i <= halfwidth; ++i) src.append_right(s.next());
    for (std::size_t i = 0; i < halfwidth; ++i) src.append_left(s.next());

    word left_rev;  // coded side left of the shifted origin
    for (std::size_t i = 0; i < static_cast<std::size_t>(phase); ++i)
        left_rev.push_back(cw1[static_cast<std::size_t>(phase) - 1 - i]);
    for (const sym_t& x : src.left_reversed()) left_rev.append(codefn(x).reversed());
    word right = cw1.suffix_from(static_cast<std::size_t>(phase));
    for (long long i = 2; i <= src.hi(); ++i) right.append(codefn(src.at(i)));

    basic_phase_sample<sym_t> ps;
    ps.source = std::move(src);
    ps.phase = phase;
    ps.coded = two_sided_window::from_parts_reversed(std::move(left_rev), std::move(right));
    return ps;
}

/*
 * Two estimators of the stationary-mean cylinder probability rho([u]):
 *   (a) the expectation of G([u], x) / L over plain stationary samples,
 *       G counting the phases k < |f(x_1)| with the coded block at k
 *       equal to u;
 *   (b) the plain frequency of [u] under the phase sampler above.
 * The two must agree within joint confidence; a larger gap indicates an
 * implementation fault, not randomness.
 */
struct rho_estimate {
    estimate g_route;
    estimate phase_route;
    double joint_sigma = 0.0;
    bool consistent = true;
};

template <class Factory, class CodeFn>
rho_estimate estimate_rho(Factory&& make_stream_for, CodeFn&& codefn, double expected_length,
                          double l_cap, const word& u, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("estimate_rho: trials must be >= 1");
    if (u.empty()) throw std::invalid_argument("estimate_rho: empty cylinder word");

    std::vector<double> g_vals;
    g_vals.reserve(trials);
    std::uint64_t phase_hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        // route (a), realization ids 2t
        {
            auto s = make_stream_for(2 * t);
            auto x1 = s.next();
            word y = codefn(x1);
            std::size_t len1 = y.size();
            while (y.size() < len1 - 1 + u.size()) y.append(codefn(s.next()));
            std::uint64_t g = 0;
            for (std::size_t k = 0; k < len1; ++k) {
                bool match = true;
                for (std::size_t j = 0; j < u.size(); ++j)
                    if (y[k + j] != u[j]) { match = false; break; }
                if (match) ++g;
            }
            g_vals.push_back(static_cast<double>(g) / expected_length);
        }
        // route (b), realization ids 2t+1
        {
            auto s = make_stream_for(2 * t + 1);
            counter_rng phase_rng(seed, make_stream(stream_domain::phase, 2 * t + 1));
            word y = rho_window_from(s, codefn, l_cap, phase_rng, u.size());
            if (y == u) ++phase_hits;
        }
    }
    rho_estimate res;
    res.g_route = mean_and_stderr(g_vals);
    double p = static_cast<double>(phase_hits) / static_cast<double>(trials);
    res.phase_route = {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
    res.joint_sigma = std::sqrt(res.g_route.stderr_ * res.g_route.stderr_ +
                                res.phase_route.stderr_ * res.phase_route.stderr_);
    res.consistent =
        std::abs(res.g_route.mean - res.phase_route.mean) <= 5.0 * res.joint_sigma;
    return res;
}

/*
 * Exact rho([u]) for an i.i.d. source with rational pmf and a finite
 * prefix-free code: enumerate all source blocks of the requested depth and
 * all phases inside the first codeword, in exact rational arithmetic.
 * Serves as the independent oracle for the Monte Carlo estimators above.
 */
inline rat exact_rho_iid(const std::vector<rat>& pmf, const table_code& code, const word& u,
                         int depth) {
    if (u.empty()) throw std::invalid_argument("exact_rho_iid: empty cylinder word");
    rat one(1);
    rat total(0);
    for (const rat& p : pmf) total += p;
    if (!(total == one)) throw std::invalid_argument("exact_rho_iid: pmf must sum to 1 exactly");
    std::size_t need = code.max_codeword_length() - 1 + u.size();
    if (static_cast<std::size_t>(depth) < need)
        throw std::invalid_argument("exact_rho_iid: depth insufficient for |u| plus codewords");
    detail::require_prefix_free(code, "exact_rho_iid");

    rat L(0);
    for (std::size_t i = 0; i < pmf.size(); ++i)
        L += pmf[i] * rat(static_cast<long long>(
                 code.codeword(static_cast<std::uint32_t>(i)).size()));

    rat acc(0);
    std::vector<std::uint32_t> x(static_cast<std::size_t>(depth), 0);
    for (;;) {
        rat p = one;
        for (std::uint32_t s : x) p *= pmf[s];
        word y;
        for (std::uint32_t s : x) y.append(code.codeword(s));
        std::size_t len1 = code.codeword(x[0]).size();
        long long g = 0;
        for (std::size_t k = 0; k < len1; ++k) {
            bool match = true;
            for (std::size_t j = 0; j < u.size(); ++j)
                if (y[k + j] != u[j]) { match = false; break; }
            if (match) ++g;
        }
        if (g != 0) acc += p * rat(g);
        // next tuple
        std::size_t i = 0;
        while (i < x.size()) {
            if (++x[i] < pmf.size()) break;
            x[i] = 0;
            ++i;
        }
        if (i == x.size()) break;
    }
    return acc / L;
}

/*
 * Shift-invariance probe: tabulates the empirical distribution of the
 * blocks y_{k+1} .. y_{k+m} for each shift k and returns the largest
 * total-variation distance over shift pairs.  Stationary samplers must
 * come out flat up to Monte Carlo noise; the unrandomized coded process
 * shows its phase through this statistic.
 */
struct stationarity_result {
    double max_tv = 0.0;
    double sigma = 0.0;  // multinomial sigma of the shift-0 distribution
    std::vector<double> tv_from_first;
};

template <class WindowGen>
stationarity_result stationarity_check(WindowGen&& gen, std::size_t m, std::size_t max_shift,
                                       std::uint64_t trials) {
    std::vector<std::map<word, std::uint64_t>> dist(max_shift + 1);
    for (std::uint64_t t = 0; t < trials; ++t) {
        word y = gen(t);
        if (y.size() < m + max_shift)
            throw std::invalid_argument("stationarity_check: window shorter than m + max shift");
        for (std::size_t k = 0; k <= max_shift; ++k) ++dist[k][y.sub(k, m)];
    }
    auto tv = [&](const std::map<word, std::uint64_t>& a, const std::map<word, std::uint64_t>& b) {
        std::map<word, double> diff;
        for (const auto& [w, c] : a) diff[w] += static_cast<double>(c);
        for (const auto& [w, c] : b) diff[w] -= static_cast<double>(c);
        double s = 0.0;
        for (const auto& [w, d] : diff) s += std::abs(d);
        return 0.5 * s / static_cast<double>(trials);
    };
    stationarity_result res;
    for (std::size_t k = 1; k <= max_shift; ++k)
        res.tv_from_first.push_back(tv(dist[0], dist[k]));
    for (std::size_t a = 0; a <= max_shift; ++a)
        for (std::size_t b = a + 1; b <= max_shift; ++b)
            res.max_tv = std::max(res.max_tv, tv(dist[a], dist[b]));
    double s2 = 0.0;
    for (const auto& [w, c] : dist[0]) {
        double p = static_cast<double>(c) / static_cast<double>(trials);
        s2 += p * (1.0 - p);
    }
    res.sigma = std::sqrt(s2 / static_cast<double>(trials));
    return res;
}

/*
 * Monte Carlo size of the coded well-predictability set
 * bar-U_delta(m) = { k : P(bar-s_k(bar-Y^m) = Z_k) >= delta }.  Each trial
 * draws one stationary-mean coded window, decodes the complete codeword
 * occurrences (exactly the substring matches the predictors scan for), and
 * compares every predictor verdict with the realization's Z_k.
 */
struct bar_u_result {
    std::vector<double> p_hat;       // success frequency, index k-1
    std::vector<double> ci_radius;   // z * binomial stderr
    std::vector<std::uint32_t> members;
    std::uint64_t trials = 0;
};

inline bar_u_result bar_u_estimate(const santa_fe_model& model, const conj_code& code,
                                   double delta_bar, std::size_t m, std::uint32_t k_scan,
                                   std::uint64_t trials, std::uint64_t seed,
                                   double z_conf = 4.0, int threads = 1) {
    if (!(delta_bar > 0.5 && delta_bar < 1.0))
        throw std::invalid_argument("bar_u_estimate: delta must lie in (1/2, 1)");
    double min_radius = z_conf * 0.5 / std::sqrt(static_cast<double>(trials));
    if (trials == 0 || min_radius >= 1.0 - delta_bar)
        throw std::invalid_argument("bar_u_estimate: too few trials for the requested confidence");
    double l_cap = static_cast<double>(conj_length_quantile(model.alpha(), code.payload_length(), 1e-6));

    std::vector<std::atomic<std::uint64_t>> success(k_scan);
    for (auto& s : success) s.store(0);
    parallel_for_trials(trials, threads, [&](std::uint64_t t) {
        santa_fe_stream s(model, seed, t);
        counter_rng phase_rng(seed, make_stream(stream_domain::phase, t));
        word y = rho_window_from(
            s, [&](const pair_symbol& x) { return code.codeword(x); }, l_cap, phase_rng, m);
        std::vector<std::uint8_t> saw0(k_scan, 0), saw1(k_scan, 0);
        for (const auto& item : phase_recover(code, y).items) {
            if (item.symbol.k > k_scan || item.symbol.k == 0) continue;
            (item.symbol.z ? saw1 : saw0)[item.symbol.k - 1] = 1;
        }
        for (std::uint32_t k = 1; k <= k_scan; ++k) {
            int verdict = 2;
            if (saw0[k - 1] && !saw1[k - 1]) verdict = 0;
            if (saw1[k - 1] && !saw0[k - 1]) verdict = 1;
            if (verdict == s.z().z(k))
                success[k - 1].fetch_add(1, std::memory_order_relaxed);
        }
    });

    bar_u_result res;
    res.trials = trials;
    for (std::uint32_t k = 1; k <= k_scan; ++k) {
        double p = static_cast<double>(success[k - 1].load()) / static_cast<double>(trials);
        res.p_hat.push_back(p);
        res.ci_radius.push_back(z_conf * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)));
        if (p >= delta_bar) res.members.push_back(k);
    }
    return res;
}

// Cylinder table accumulated from independently generated windows.
template <class Gen>
cylinder_counts counts_from_windows(Gen&& gen, std::uint64_t trials, std::size_t depth) {
    cylinder_counts counts(depth);
    for (std::uint64_t t = 0; t < trials; ++t) counts.add_sequence(gen(t));
    return counts;
}

template <class Gen>
source_cylinder_counts source_counts_from_windows(Gen&& gen, std::uint64_t trials,
                                                  std::size_t depth) {
    source_cylinder_counts counts(depth);
    for (std::uint64_t t = 0; t < trials; ++t) counts.add_sequence(gen(t));
    return counts;
}

}  // namespace vlcode
