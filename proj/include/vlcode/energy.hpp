#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vlcode/measures.hpp"
#include "vlcode/words.hpp"
#include "vlcode/zeta.hpp"

namespace vlcode {

/*
 * Finite-energy scans.  A measure has (K, c)-energy when
 * mu([uv]) <= K c^{|v|} mu([u]) over all cylinder pairs; the coded flavor
 * replaces |v| by the coded length |f*(v)|.  A finite scan can only
 * produce evidence: the empirical K-hat below is the largest observed
 * ratio over sufficiently supported pairs, and acceptance compares its
 * stability across scan depths rather than pretending a finite table can
 * prove an all-cylinder property.
 */
struct energy_scan_result {
    double k_hat = 0.0;
    word witness_u;
    word witness_v;
    std::uint64_t pairs_scanned = 0;
};

inline energy_scan_result empirical_energy_K(const cylinder_counts& counts, double c,
                                             std::uint64_t min_support = 30) {
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("empirical_energy_K: c must lie in (0,1)");
    energy_scan_result res;
    double total = static_cast<double>(counts.total());
    for (const auto& [w, cnt] : counts.table()) {
        if (cnt < min_support) continue;
        double fw = static_cast<double>(cnt) / total;
        // split w = uv at every point; count(u) >= count(w) >= min_support
        for (std::size_t j = 0; j < w.size(); ++j) {
            double fu = j == 0 ? 1.0 : static_cast<double>(counts.count(w.prefix(j))) / total;
            double ratio = fw / (std::pow(c, static_cast<double>(w.size() - j)) * fu);
            ++res.pairs_scanned;
            if (ratio > res.k_hat) {
                res.k_hat = ratio;
                res.witness_u = w.prefix(j);
                res.witness_v = w.suffix_from(j);
            }
        }
    }
    return res;
}

// Same scan with the exponent measured in coded length |f*(v)|.
template <class Sym, class LenFn>
energy_scan_result gfe_energy_K(const basic_cylinder_counts<Sym>& counts, LenFn&& symbol_length,
                                double c, std::uint64_t min_support = 30) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("gfe_energy_K: c must lie in (0,1)");
    energy_scan_result res;
    double total = static_cast<double>(counts.total());
    for (const auto& [w, cnt] : counts.table()) {
        if (cnt < min_support) continue;
        double fw = static_cast<double>(cnt) / total;
        std::size_t coded_len = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            coded_len += static_cast<std::size_t>(symbol_length(w[i]));
        std::size_t suffix_len = coded_len;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (j > 0) suffix_len -= static_cast<std::size_t>(symbol_length(w[j - 1]));
            double fu = j == 0 ? 1.0 : static_cast<double>(counts.count(w.prefix(j))) / total;
            double ratio = fw / (std::pow(c, static_cast<double>(suffix_len)) * fu);
            ++res.pairs_scanned;
            if (ratio > res.k_hat) res.k_hat = ratio;
        }
    }
    return res;
}

/*
 * Energy certificate produced by the scans.  The Kraft floor applies to
 * coded certificates: for a prefix-free code over D target symbols the
 * bound can only hold with c >= 1/D, strictly above for noncomplete codes.
 */
struct energy_certificate {
    enum class flavor_t { plain, coded };
    flavor_t flavor = flavor_t::plain;
    double K = 0.0;
    double c = 0.0;
    word witness_u;
    word witness_v;
    std::uint64_t support_min = 0;
    std::size_t scan_depth = 0;

    std::string to_json() const {
        char num[40];
        std::ostringstream os;
        os << "{\"flavor\":\"" << (flavor == flavor_t::plain ? "plain" : "coded") << "\",";
        std::snprintf(num, sizeof num, "%.12g", K);
        os << "\"K\":" << num << ",";
        std::snprintf(num, sizeof num, "%.12g", c);
        os << "\"c\":" << num << ",";
        os << "\"witness_u\":\"" << word_to_digits(witness_u) << "\",";
        os << "\"witness_v\":\"" << word_to_digits(witness_v) << "\",";
        os << "\"support_min\":" << support_min << ",";
        os << "\"scan_depth\":" << scan_depth << "}";
        return os.str();
    }
};

inline void validate_certificate(const energy_certificate& cert, int target_alphabet_size,
                                 bool code_complete) {
    if (!(cert.c > 0.0 && cert.c < 1.0))
        throw std::invalid_argument("energy certificate: c must lie in (0,1)");
    if (cert.K < 1.0)
        throw std::invalid_argument("energy certificate: K must be >= 1");
    if (cert.flavor == energy_certificate::flavor_t::coded) {
        double floor = 1.0 / target_alphabet_size;
        if (cert.c < floor || (!code_complete && cert.c <= floor))
            throw std::invalid_argument(
                "energy certificate: c violates the Kraft floor 1/|Y| for a prefix-free code");
    }
}

/*
 * Closed forms from the completion-set census of the b(k) payload 2
 * family: a_l <= 1 for l <= A+1 and a_l = 2^{l-(A+1)} beyond, giving
 *   M_f(p)        = (1 - p^{A+2})/(1 - p) + 2 p^{A+2}/(1 - 2p),  p < 1/2,
 *   N_{f,mu}(c2) <= numerator / denominator as below, c2 > 2^{1-alpha}.
 */
inline double analytic_M(int payload_length, double p) {
    if (payload_length < 0) throw std::invalid_argument("analytic_M: negative payload length");
    if (!(p >= 0.0 && p < 0.5))
        throw std::invalid_argument("analytic_M: p must lie in [0, 1/2)");
    int a = payload_length;
    return (1.0 - std::pow(p, a + 2)) / (1.0 - p) + 2.0 * std::pow(p, a + 2) / (1.0 - 2.0 * p);
}

inline double analytic_N(double alpha, int payload_length, double c2) {
    if (alpha <= 1.0) throw std::invalid_argument("analytic_N: alpha must exceed 1");
    double lo = std::exp2(1.0 - alpha);
    if (!(c2 > lo && c2 < 1.0))
        throw std::invalid_argument("analytic_N: c2 outside the convergence range (2^{1-alpha}, 1)");
    int a = payload_length;
    double r = std::exp2(-alpha) / c2;  // ratio of the numerator's head series
    double num = std::exp2(alpha) * ((1.0 - std::pow(r, a + 2)) / (1.0 - r) +
                                     std::exp2(-(a + 1)) * std::pow(2.0 * r, a + 2) /
                                         (1.0 - 2.0 * r));
    double den = std::exp2(-alpha * (a + 1)) / (1.0 - std::exp2(1.0 - alpha));
    return num / den;
}

/*
 * Parameter ranges of the power-law corollary: admissible iff
 * zeta(alpha) > 2^{A+1}; then mu has (1, c, f)-energy for
 * c in [max{2^-alpha, zeta(alpha)^{-1/(A+1)}}, 1/2) and the coded process
 * has (K-tilde, c2)-energy for c2 in (max{c, 2^{1-alpha}}, 1) with
 * K-tilde = N_{f,mu}(c2) M_f(c).
 */
struct corollary_params {
    bool admissible = false;
    double zeta_alpha = 0.0;
    double c_lo = 0.0, c_hi = 0.5;
    double c2_lo = 0.0, c2_hi = 1.0;
    double c_chosen = 0.0;
    double c2_chosen = 0.0;
    double m_value = 0.0;
    double n_value = 0.0;
    double k_tilde = 0.0;
};

inline corollary_params corollary_parameter_check(double alpha, int payload_length) {
    if (alpha <= 1.0)
        throw std::invalid_argument("corollary_parameter_check: alpha must exceed 1");
    if (payload_length < 0)
        throw std::invalid_argument("corollary_parameter_check: negative payload length");
    corollary_params cp;
    cp.zeta_alpha = zeta(alpha).value;
    cp.admissible = cp.zeta_alpha > std::exp2(payload_length + 1);
    cp.c_lo = std::max(std::exp2(-alpha), std::pow(cp.zeta_alpha, -1.0 / (payload_length + 1)));
    cp.c_hi = 0.5;
    if (!cp.admissible) return cp;
    cp.c_chosen = 0.5 * (cp.c_lo + cp.c_hi);
    cp.c2_lo = std::max(cp.c_chosen, std::exp2(1.0 - alpha));
    cp.c2_hi = 1.0;
    cp.c2_chosen = 0.5 * (cp.c2_lo + cp.c2_hi);
    cp.m_value = analytic_M(payload_length, cp.c_chosen);
    cp.n_value = analytic_N(alpha, payload_length, cp.c2_chosen);
    cp.k_tilde = cp.m_value * cp.n_value;  // K = 1 for the product source
    return cp;
}

/*
 * Kernel mixtures preserve (K, c)-energy: if every component satisfies the
 * bound, the average does.  The check scans each component table and the
 * merged table at the shared (K, c).
 */
struct mixture_energy_result {
    std::vector<double> component_k_hat;
    double mixture_k_hat = 0.0;
};

inline mixture_energy_result mixture_energy_check(const std::vector<cylinder_counts>& components,
                                                  double c, std::uint64_t min_support = 30) {
    if (components.empty())
        throw std::invalid_argument("mixture_energy_check: no components");
    mixture_energy_result res;
    cylinder_counts merged(components.front().depth());
    for (const auto& comp : components) {
        res.component_k_hat.push_back(empirical_energy_K(comp, c, min_support).k_hat);
        merged.merge(comp);
    }
    res.mixture_k_hat = empirical_energy_K(merged, c, min_support).k_hat;
    return res;
}

/*
 * Random-phase stationarization preserves (K, c)-energy.  Scans counts
 * from unrandomized coded windows (nu) and from phase-randomized windows
 * (rho) at the same c and reports both maxima for comparison within
 * sampling confidence.
 */
struct stationary_mean_energy_result {
    energy_scan_result nu_scan;
    energy_scan_result rho_scan;
};

template <class NuGen, class RhoGen>
stationary_mean_energy_result stationary_mean_energy_check(NuGen&& nu_gen, RhoGen&& rho_gen,
                                                           std::uint64_t trials, std::size_t depth,
                                                           double c,
                                                           std::uint64_t min_support = 30) {
    stationary_mean_energy_result res;
    res.nu_scan = empirical_energy_K(counts_from_windows(nu_gen, trials, depth), c, min_support);
    res.rho_scan = empirical_energy_K(counts_from_windows(rho_gen, trials, depth), c, min_support);
    return res;
}

}  // namespace vlcode
