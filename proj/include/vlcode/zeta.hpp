#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace vlcode {

/*
 * zeta(alpha) = sum_{k>=1} k^-alpha and the tail sums that drive the
 * power-law length series.  Tails are evaluated with an Euler-Maclaurin
 * expansion around the integral estimate; the plain integral bracket
 *   integral_x^inf t^-alpha dt  <=  sum_{k>=x} k^-alpha  <=  integral + x^-alpha
 * alone cannot reach useful tolerances for alpha near 1, where the series
 * decays like x^{1-alpha}.
 */

struct zeta_value {
    double alpha = 0.0;
    double value = 0.0;
    double error_bound = 0.0;  // rigorous bound on |value - zeta(alpha)|
};

namespace detail {

// sum_{k >= x} k^-alpha for integer x >= 16, by Euler-Maclaurin.
inline double em_tail_from(double alpha, double x) {
    double inv = 1.0 / x;
    double xa = std::pow(x, -alpha);
    double t = x * xa / (alpha - 1.0)          // integral term x^{1-alpha}/(alpha-1)
               + 0.5 * xa                      // boundary correction
               + alpha * xa * inv / 12.0       // Bernoulli B_2 term
               - alpha * (alpha + 1.0) * (alpha + 2.0) * xa * inv * inv * inv / 720.0;
    return t;
}

inline double em_tail_error(double alpha, double x) {
    // magnitude of the next Euler-Maclaurin term bounds the remainder
    double a5 = alpha * (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0) * (alpha + 4.0);
    return a5 * std::pow(x, -alpha - 5.0) / 30240.0;
}

}  // namespace detail

// Tail sum_{k >= x} k^-alpha for integer x >= 1.
inline double hurwitz_tail(double alpha, std::uint64_t x) {
    if (alpha <= 1.0) throw std::invalid_argument("hurwitz_tail: alpha must exceed 1");
    if (x < 1) throw std::invalid_argument("hurwitz_tail: x must be >= 1");
    double head = 0.0;
    std::uint64_t start = x;
    if (start < 64) {
        for (std::uint64_t k = start; k < 64; ++k) head += std::pow(static_cast<double>(k), -alpha);
        start = 64;
    }
    return head + detail::em_tail_from(alpha, static_cast<double>(start));
}

// Tail from x = 2^j evaluated in log space, so large j never overflows.
inline double hurwitz_tail_pow2(double alpha, int j) {
    if (alpha <= 1.0) throw std::invalid_argument("hurwitz_tail_pow2: alpha must exceed 1");
    if (j < 6) return hurwitz_tail(alpha, 1ull << j);
    double xa = std::exp2(-alpha * j);                       // x^-alpha
    double x1a = std::exp2((1.0 - alpha) * j);               // x^{1-alpha}
    return x1a / (alpha - 1.0) + 0.5 * xa + alpha * xa * std::exp2(-j) / 12.0 -
           alpha * (alpha + 1.0) * (alpha + 2.0) * xa * std::exp2(-3.0 * j) / 720.0;
}

inline zeta_value zeta(double alpha, double tol = 1e-12) {
    if (alpha <= 1.0) throw std::invalid_argument("zeta: alpha must exceed 1");
    if (tol <= 0.0) throw std::invalid_argument("zeta: tol must be positive");
    // pick the switch point so the Euler-Maclaurin remainder is below tol
    std::uint64_t x0 = 64;
    while (detail::em_tail_error(alpha, static_cast<double>(x0)) >= tol && x0 < (1ull << 26))
        x0 *= 2;
    long double head = 0.0L;
    for (std::uint64_t k = 1; k < x0; ++k)
        head += std::pow(static_cast<long double>(k), static_cast<long double>(-alpha));
    zeta_value zv;
    zv.alpha = alpha;
    zv.value = static_cast<double>(head) + detail::em_tail_from(alpha, static_cast<double>(x0));
    zv.error_bound = detail::em_tail_error(alpha, static_cast<double>(x0)) +
                     static_cast<double>(x0) * 1e-18;  // summation roundoff
    return zv;
}

// Tail sum_{k >= x} k^-alpha log k, same Euler-Maclaurin scheme.
inline double hurwitz_log_tail(double alpha, std::uint64_t x) {
    if (alpha <= 1.0) throw std::invalid_argument("hurwitz_log_tail: alpha must exceed 1");
    double head = 0.0;
    std::uint64_t start = x < 1 ? 1 : x;
    if (start < 64) {
        for (std::uint64_t k = start; k < 64; ++k)
            head += std::pow(static_cast<double>(k), -alpha) * std::log(static_cast<double>(k));
        start = 64;
    }
    double xd = static_cast<double>(start);
    double lx = std::log(xd);
    double xa = std::pow(xd, -alpha);
    double a1 = alpha - 1.0;
    double integral = xd * xa * (a1 * lx + 1.0) / (a1 * a1);
    double boundary = 0.5 * xa * lx;
    double bernoulli = (alpha * lx - 1.0) * xa / xd / 12.0;
    return head + integral + boundary + bernoulli;
}

// Entropy rate of the power-law pair process: every ergodic component is
// i.i.d. over (k, Z_k), so the rate is the entropy of the k-marginal,
// log zeta + alpha E[log K].
inline double santa_fe_entropy_rate(double alpha) {
    double z = zeta(alpha).value;
    return std::log(z) + alpha * hurwitz_log_tail(alpha, 2) / z;
}

/*
 * Length statistics of the b(k) payload 2 family under P(K = k) =
 * k^-alpha / zeta(alpha): codeword lengths are |f| = bitlen(K) + A, so all
 * series group by the bit length b of K with bucket mass
 * sum_{2^{b-1} <= k < 2^b} k^-alpha.
 */

// Un-normalized bucket mass for bit length b >= 1.
inline double bitlen_bucket_sum(double alpha, int b) {
    if (b < 1) throw std::invalid_argument("bitlen_bucket_sum: b must be >= 1");
    if (b <= 13) {
        double s = 0.0;
        for (std::uint64_t k = 1ull << (b - 1); k < (1ull << b); ++k)
            s += std::pow(static_cast<double>(k), -alpha);
        return s;
    }
    return hurwitz_tail_pow2(alpha, b - 1) - hurwitz_tail_pow2(alpha, b);
}

namespace detail {
// Loop cap: buckets decay like 2^{-(alpha-1) b}, so this always suffices.
inline int bucket_limit(double alpha) {
    int b = static_cast<int>(80.0 / (alpha - 1.0)) + 64;
    return b > 40000 ? 40000 : b;
}
}  // namespace detail

struct conj_length_stats {
    double expected_length = 0.0;  // L = E |f(K)|
    double eta = 0.0;              // E (|f|/L) log(|f|/L), >= 0
    double zeta_alpha = 0.0;
};

inline conj_length_stats conj_length_stats_for(double alpha, int payload_length) {
    if (alpha <= 1.0) throw std::invalid_argument("conj_length_stats: alpha must exceed 1");
    double z = zeta(alpha).value;
    double L = 0.0;
    int bmax = detail::bucket_limit(alpha);
    for (int b = 1; b <= bmax; ++b) {
        double q = bitlen_bucket_sum(alpha, b) / z;
        double len = b + payload_length;
        L += q * len;
        if (q * len < 1e-18 * L && b > 64) break;
    }
    conj_length_stats st;
    st.zeta_alpha = z;
    st.expected_length = L;
    double eta = 0.0;
    for (int b = 1; b <= bmax; ++b) {
        double q = bitlen_bucket_sum(alpha, b) / z;
        double r = (b + payload_length) / L;
        eta += q * r * std::log(r);
        if (q < 1e-20 && b > 64) break;
    }
    st.eta = eta;
    return st;
}

// P(|f(K)| > C) = P(bitlen(K) > C - A) = tail(2^{C-A}) / zeta.
inline double conj_length_tail_mass(double alpha, int payload_length, int c) {
    int b = c - payload_length;  // largest included bit length
    if (b < 1) return 1.0;
    return hurwitz_tail_pow2(alpha, b) / zeta(alpha).value;
}

// Smallest length C with P(|f(K)| > C) <= tail_mass.
inline int conj_length_quantile(double alpha, int payload_length, double tail_mass) {
    for (int c = payload_length + 1; c <= detail::bucket_limit(alpha) + payload_length; ++c)
        if (conj_length_tail_mass(alpha, payload_length, c) <= tail_mass) return c;
    throw std::runtime_error("conj_length_quantile: quantile out of range");
}

// E[ |f(K)| 1{|f(K)| <= C} ].
inline double conj_truncated_mean_length(double alpha, int payload_length, int c) {
    double z = zeta(alpha).value;
    double acc = 0.0;
    for (int b = 1; b + payload_length <= c; ++b)
        acc += (b + payload_length) * bitlen_bucket_sum(alpha, b) / z;
    return acc;
}

// Smallest integer C with E[M_1 1{M_1 <= C}] >= a L, M_1 = |f(K)|.
inline int find_c_a_conj(double alpha, int payload_length, double a) {
    if (a <= 0.0 || a >= 1.0) throw std::invalid_argument("find_c_a_conj: a must be in (0,1)");
    double z = zeta(alpha).value;
    double target = a * conj_length_stats_for(alpha, payload_length).expected_length;
    double acc = 0.0;
    for (int b = 1; b <= detail::bucket_limit(alpha); ++b) {
        acc += (b + payload_length) * bitlen_bucket_sum(alpha, b) / z;
        if (acc >= target) return b + payload_length;
    }
    throw std::runtime_error("find_c_a_conj: accumulation did not reach a L");
}

}  // namespace vlcode
