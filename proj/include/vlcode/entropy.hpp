#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vlcode/codes.hpp"
#include "vlcode/exact_models.hpp"
#include "vlcode/measures.hpp"
#include "vlcode/processes.hpp"
#include "vlcode/zeta.hpp"

namespace vlcode {

// All entropies in this library are in nats.

inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0,1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

template <class Map>
double entropy_of(const Map& pmf) {
    double h = 0.0;
    for (const auto& [key, p] : pmf)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

template <class Sym>
double block_entropy(const block_pmf<Sym>& pmf) {
    double s = 0.0;
    for (const auto& [w, p] : pmf) s += p;
    if (std::abs(s - 1.0) > 1e-9)
        throw std::invalid_argument("block_entropy: pmf does not sum to 1");
    return entropy_of(pmf);
}

/*
 * Plug-in block entropy from a cylinder table, with the first-order
 * (support-1)/(2 total) bias estimate reported alongside.  The plug-in
 * value underestimates the true entropy; the Miller correction adds the
 * bias estimate back when requested.
 */
struct plug_in_entropy {
    double h_nats = 0.0;
    double bias_estimate = 0.0;
    std::uint64_t support = 0;
    std::uint64_t total = 0;
};

inline plug_in_entropy block_entropy_plug_in(const cylinder_counts& counts, std::size_t n,
                                             bool miller = false) {
    if (n < 1 || n > counts.depth())
        throw std::invalid_argument("block_entropy_plug_in: n exceeds the counted depth");
    plug_in_entropy out;
    out.total = counts.total();
    double h = 0.0;
    for (const auto& [w, c] : counts.table()) {
        if (w.size() != n) continue;
        ++out.support;
        double p = static_cast<double>(c) / static_cast<double>(out.total);
        h -= p * std::log(p);
    }
    out.bias_estimate = out.support > 0
                            ? static_cast<double>(out.support - 1) / (2.0 * static_cast<double>(out.total))
                            : 0.0;
    out.h_nats = miller ? h + out.bias_estimate : h;
    return out;
}

// n -> H(n) table with flavor bookkeeping and CSV export.
class entropy_table {
public:
    explicit entropy_table(std::string flavor) : flavor_(std::move(flavor)) {}

    void set(int n, double h, double bias = 0.0) {
        h_[n] = h;
        bias_[n] = bias;
    }
    bool has(int n) const { return h_.count(n) != 0; }
    double h(int n) const { return h_.at(n); }
    int max_n() const { return h_.empty() ? 0 : h_.rbegin()->first; }
    const std::string& flavor() const noexcept { return flavor_; }
    const std::map<int, double>& values() const noexcept { return h_; }

    void to_csv(std::ostream& os) const {
        os << "n,H_nats,flavor,bias_estimate\n";
        char buf[40];
        for (const auto& [n, h] : h_) {
            std::snprintf(buf, sizeof buf, "%.12g", h);
            os << n << ',' << buf << ',' << flavor_ << ',';
            std::snprintf(buf, sizeof buf, "%.12g", bias_.at(n));
            os << buf << '\n';
        }
    }

private:
    std::string flavor_;
    std::map<int, double> h_;
    std::map<int, double> bias_;
};

/*
 * Entropy-rate estimate from a table of exact block entropies: the last
 * increment H(n) - H(n-1), which converges to the rate from above for
 * stationary inputs (faster than H(n)/n, reported for reference).
 */
struct rate_estimate {
    double increment = 0.0;
    double ratio = 0.0;
    int at_n = 0;
};

inline rate_estimate entropy_rate(const entropy_table& table) {
    int n = table.max_n();
    if (n < 3 || !table.has(n - 1) || !table.has(n - 2))
        throw std::invalid_argument("entropy_rate: need >= 3 consecutive block entropies");
    for (const auto& [m, h] : table.values())
        if (table.has(m - 1) && h < table.h(m - 1) - 1e-9)
            throw std::runtime_error("entropy_rate: exact table is not monotone");
    rate_estimate r;
    r.at_n = n;
    r.increment = table.h(n) - table.h(n - 1);
    r.ratio = table.h(n) / n;
    return r;
}

// eta = E[(|f(X_1)|/L) log(|f(X_1)|/L)] >= 0; zero iff all lengths on the
// support coincide.
inline double eta_from_lengths(const std::vector<double>& pmf,
                               const std::vector<std::size_t>& lengths) {
    if (pmf.size() != lengths.size())
        throw std::invalid_argument("eta_from_lengths: size mismatch");
    double L = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i)
        L += pmf[i] * static_cast<double>(lengths[i]);
    double eta = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        if (pmf[i] <= 0.0) continue;
        double r = static_cast<double>(lengths[i]) / L;
        eta += pmf[i] * r * std::log(r);
    }
    return eta;
}

inline double eta_iid(const iid_model& model, const table_code& code) {
    std::vector<std::size_t> lens;
    for (std::uint32_t s = 0; s < model.alphabet_size(); ++s)
        lens.push_back(code.codeword(s).size());
    return eta_from_lengths(model.pmf(), lens);
}

inline double eta_conj_santa_fe(double alpha, int payload_length) {
    return conj_length_stats_for(alpha, payload_length).eta;
}

/*
 * H(Y^{M_n}) = H(X^n): the coded random-length block is the image of the
 * source block under the injective extension f*, so pushing the block pmf
 * forward must preserve entropy exactly.
 */
struct identity_check {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap() const { return std::abs(lhs - rhs); }
};

template <class Sym, class CodeFn>
identity_check check_coded_block_identity(const block_pmf<Sym>& blocks, CodeFn&& codefn) {
    block_pmf<std::uint32_t> pushed;
    for (const auto& [x, p] : blocks) {
        word y;
        for (const Sym& s : x) y.append(codefn(s));
        pushed[y] += p;
    }
    identity_check c;
    c.lhs = entropy_of(pushed);
    c.rhs = entropy_of(blocks);
    return c;
}

// H(N | bar-X_1) = log L + eta: N is uniform on |f(x_1)| values, and the
// marginal of bar-X_1 carries the length tilt.
inline identity_check check_conditional_N(const std::vector<double>& pmf,
                                          const std::vector<std::size_t>& lengths) {
    double L = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i)
        L += pmf[i] * static_cast<double>(lengths[i]);
    identity_check c;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        if (pmf[i] <= 0.0) continue;
        double q = pmf[i] * static_cast<double>(lengths[i]) / L;  // tilted marginal
        c.lhs += q * std::log(static_cast<double>(lengths[i]));
    }
    c.rhs = std::log(L) + eta_from_lengths(pmf, lengths);
    return c;
}

/*
 * Length-biased block inequality: H(bar-X_k^l) >= H(X_k^l) - eta holds if
 * and only if cov(|f(X_1)|, -log P(X_k^l)) >= 0.  The two sides differ by
 * exactly cov / L, which the check verifies along with the biconditional.
 */
template <class Sym>
struct length_bias_check {
    double h_bar = 0.0;
    double h = 0.0;
    double eta = 0.0;
    double cov = 0.0;
    double expected_length = 0.0;
    bool inequality_holds = false;
    bool cov_nonneg = false;
    double identity_gap = 0.0;  // |(h_bar + eta - h) - cov/L|
};

template <class Sym, class LenFn>
length_bias_check<Sym> check_length_biased_inequality(const block_pmf<Sym>& blocks,
                                                      std::size_t pos1, LenFn&& symbol_length) {
    length_bias_check<Sym> c;
    double L = 0.0;
    for (const auto& [x, p] : blocks)
        L += p * static_cast<double>(symbol_length(x[pos1]));
    c.expected_length = L;
    c.h = entropy_of(blocks);
    double e_l_neglog = 0.0;
    for (const auto& [x, p] : blocks) {
        if (p <= 0.0) continue;
        double l = static_cast<double>(symbol_length(x[pos1]));
        double pb = p * l / L;
        c.h_bar -= pb * std::log(pb);
        c.eta += p * (l / L) * std::log(l / L);
        e_l_neglog += p * l * (-std::log(p));
    }
    c.cov = e_l_neglog - L * c.h;
    c.inequality_holds = c.h_bar >= c.h - c.eta - 1e-12;
    c.cov_nonneg = c.cov >= -1e-12;
    c.identity_gap = std::abs((c.h_bar + c.eta - c.h) - c.cov / L);
    return c;
}

/*
 * Random-length sandwich: with M-bar_n the coded length of bar-X^n,
 *   H(bar-Y^{M-bar_n - M-bar_1}, N) <= H(bar-X^n, N)   and
 *   H(bar-X_2^n, N)               <= H(bar-Y^{M-bar_n}, N).
 * Evaluated exactly on blocks of length n + extension, the extension
 * covering the largest phase (max codeword length - 1 source symbols).
 */
struct sandwich_check {
    double h_y_shrunk = 0.0;  // H(bar-Y^{M-bar_n - M-bar_1}, N)
    double h_x_n = 0.0;       // H(bar-X^n, N)
    double h_x_2n = 0.0;      // H(bar-X_2^n, N)
    double h_y_mn = 0.0;      // H(bar-Y^{M-bar_n}, N)
    bool first_holds = false;
    bool second_holds = false;
};

template <class Sym, class CodeFn>
sandwich_check check_sandwich(const block_pmf<Sym>& extended_blocks, int n, CodeFn&& codefn) {
    using key_x = std::pair<basic_word<Sym>, int>;
    using key_y = std::pair<word, int>;
    std::map<key_x, double> x_n, x_2n;
    std::map<key_y, double> y_shrunk, y_mn;

    double L = 0.0;
    for (const auto& [x, p] : extended_blocks) L += p * static_cast<double>(codefn(x[0]).size());

    for (const auto& [x, p] : extended_blocks) {
        if (static_cast<int>(x.size()) < n)
            throw std::invalid_argument("check_sandwich: blocks shorter than n");
        word coded;
        for (const Sym& s : x) coded.append(codefn(s));
        std::size_t len1 = codefn(x[0]).size();
        std::size_t m_n = 0;
        for (int i = 0; i < n; ++i) m_n += codefn(x[static_cast<std::size_t>(i)]).size();
        if (coded.size() < m_n + len1 - 1)
            throw std::invalid_argument("check_sandwich: extension too short for the phase range");
        for (std::size_t nn = 0; nn < len1; ++nn) {
            double joint = p / L;  // P-bar(x) / |f(x_1)| = P(x) |f(x_1)| / (L |f(x_1)|)
            x_n[{x.prefix(static_cast<std::size_t>(n)), static_cast<int>(nn)}] += joint;
            x_2n[{x.sub(1, static_cast<std::size_t>(n - 1)), static_cast<int>(nn)}] += joint;
            y_shrunk[{coded.sub(nn, m_n - len1), static_cast<int>(nn)}] += joint;
            y_mn[{coded.sub(nn, m_n), static_cast<int>(nn)}] += joint;
        }
    }
    sandwich_check c;
    c.h_x_n = entropy_of(x_n);
    c.h_x_2n = entropy_of(x_2n);
    c.h_y_shrunk = entropy_of(y_shrunk);
    c.h_y_mn = entropy_of(y_mn);
    c.first_holds = c.h_y_shrunk <= c.h_x_n + 1e-10;
    c.second_holds = c.h_x_2n <= c.h_y_mn + 1e-10;
    return c;
}

/*
 * Fixed-length corollary |H_nu-bar(nL) - H_mu-bar(n)| <= H_mu-bar(2) + log L.
 * The stationary mean of the coded process is the uniform phase mixture,
 * computed exactly from blocks of n+1 source symbols.
 */
struct fixed_bound_check {
    double h_nu_bar = 0.0;
    double h_mu_n = 0.0;
    double h_mu_2 = 0.0;
    double lhs = 0.0;
    double bound = 0.0;
    bool holds = false;
};

template <class Model>
fixed_bound_check check_fixed_length_bound(const Model& model, const fixed_length_code& code,
                                           int n) {
    std::size_t L = code.length();
    block_pmf<std::uint32_t> nu_bar;
    for (const auto& [x, p] : model.block(n + 1)) {
        word coded;
        for (std::uint32_t s : x) coded.append(code.table().codeword(s));
        for (std::size_t phi = 0; phi < L; ++phi)
            nu_bar[coded.sub(phi, static_cast<std::size_t>(n) * L)] += p / static_cast<double>(L);
    }
    fixed_bound_check c;
    c.h_nu_bar = entropy_of(nu_bar);
    c.h_mu_n = block_entropy(model.block(n));
    c.h_mu_2 = block_entropy(model.block(2));
    c.lhs = std::abs(c.h_nu_bar - c.h_mu_n);
    c.bound = c.h_mu_2 + std::log(static_cast<double>(L));
    c.holds = c.lhs <= c.bound + 1e-10;
    return c;
}

/*
 * Finite-n Jensen step: the block entropy of the n-step Cesaro average
 * dominates the average of the shifted block entropies.  Strict for
 * genuinely nonstationary sources; equality for stationary ones.
 */
struct jensen_check {
    double lhs = 0.0;  // H of the averaged measure
    double rhs = 0.0;  // average of H(i; m)
    bool holds = false;
};

template <class Model>
jensen_check check_jensen_bound(const Model& model, int m, int n) {
    block_pmf<std::uint32_t> avg;
    double rhs = 0.0;
    for (int i = 0; i < n; ++i) {
        block_pmf<std::uint32_t> bi = model.shifted_block(i, m);
        rhs += entropy_of(bi) / n;
        for (const auto& [w, p] : bi) avg[w] += p / n;
    }
    jensen_check c;
    c.lhs = entropy_of(avg);
    c.rhs = rhs;
    c.holds = c.lhs >= c.rhs - 1e-10;
    return c;
}

/*
 * Exact block pmf of the phase-randomized coded process for an i.i.d.
 * source and a finite prefix-free code: enumerate source blocks long
 * enough to cover every phase, weight P(x)/L per phase.
 */
inline block_pmf<std::uint32_t> rho_block_pmf_iid(const iid_exact& model, const table_code& code,
                                                  int n) {
    std::size_t max_len = code.max_codeword_length();
    int j = n + static_cast<int>(max_len) - 1;
    double L = 0.0;
    for (std::uint32_t s = 0; s < model.alphabet_size(); ++s)
        L += model.pmf()[s] * static_cast<double>(code.codeword(s).size());
    block_pmf<std::uint32_t> out;
    for (const auto& [x, p] : model.block(j)) {
        word coded;
        for (std::uint32_t s : x) coded.append(code.codeword(s));
        std::size_t len1 = code.codeword(x[0]).size();
        for (std::size_t k = 0; k < len1; ++k)
            out[coded.sub(k, static_cast<std::size_t>(n))] += p / L;
    }
    return out;
}

// h_nu-bar vs L^{-1} h_mu, via exact increments of the coded chain.
struct rate_ratio_check {
    double h_nu_bar = 0.0;
    double h_mu = 0.0;
    double expected_length = 0.0;
    double expected_ratio = 0.0;  // h_mu / L
    entropy_table table{"exact"};
};

inline rate_ratio_check check_rate_ratio(const iid_exact& model, const table_code& code,
                                         int depth) {
    rate_ratio_check c;
    for (std::uint32_t s = 0; s < model.alphabet_size(); ++s) {
        double p = model.pmf()[s];
        c.expected_length += p * static_cast<double>(code.codeword(s).size());
        if (p > 0.0) c.h_mu -= p * std::log(p);
    }
    for (int n = 1; n <= depth; ++n) c.table.set(n, entropy_of(rho_block_pmf_iid(model, code, n)));
    c.h_nu_bar = entropy_rate(c.table).increment;
    c.expected_ratio = c.h_mu / c.expected_length;
    return c;
}

/*
 * Vocabulary lower bound H(X^n) >= h n + [log 2 - eta(delta)] |U_delta(n)|
 * on the truncated pair process, all pieces exact.
 */
struct vocab_bound_check {
    double h_xn = 0.0;
    double rate = 0.0;
    std::size_t u_size = 0;
    double eta_delta = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

inline vocab_bound_check entropy_vocab_lower_bound(const santa_fe_truncated& model, int n,
                                                   double delta) {
    if (!(delta > 0.5 && delta < 1.0))
        throw std::invalid_argument("entropy_vocab_lower_bound: delta must lie in (1/2,1)");
    vocab_bound_check c;
    c.h_xn = block_entropy(model.block(n));
    c.rate = model.entropy_rate();
    for (int k = 1; k <= model.k_small(); ++k) {
        double succ = 1.0 - std::pow(1.0 - model.p(static_cast<std::uint32_t>(k)),
                                     static_cast<double>(n));
        if (succ >= delta) ++c.u_size;
    }
    c.eta_delta = binary_entropy(delta);
    c.rhs = c.rate * n + (std::log(2.0) - c.eta_delta) * static_cast<double>(c.u_size);
    c.holds = c.h_xn >= c.rhs - 1e-10;
    return c;
}

// Smallest C with E[M_1 1{M_1 <= C}] >= a L for the parametric family; the
// fixed-length case degenerates to C = L.
inline int find_c_a(double alpha, int payload_length, double a) {
    return find_c_a_conj(alpha, payload_length, a);
}

inline int find_c_a(const fixed_length_code& code, double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("find_c_a: a must lie in (0,1)");
    return static_cast<int>(code.length());
}

}  // namespace vlcode
