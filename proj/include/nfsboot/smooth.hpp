/*
   Copyright 2026 The nfsboot Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Smoothness testing and the booting-step complexity calculus.

#ifndef NFSBOOT_SMOOTH_HPP
#define NFSBOOT_SMOOTH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nfsboot/bigint.hpp"
#include "nfsboot/common.hpp"

namespace nfsboot {

enum class SmoothVerdict { Smooth, NotSmooth, Undecided };

inline std::string to_string(SmoothVerdict v) {
    switch (v) {
        case SmoothVerdict::Smooth: return "SMOOTH";
        case SmoothVerdict::NotSmooth: return "NOT_SMOOTH";
        case SmoothVerdict::Undecided: return "UNDECIDED";
    }
    return "?";
}

struct PrimePower {
    Integer prime;
    unsigned long exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    Integer value;
    std::vector<PrimePower> factors;  ///< ascending primes
    Integer cofactor = 1;             ///< unfactored part (1 when complete)
    SmoothVerdict verdict = SmoothVerdict::Undecided;
    std::uint64_t rho_iterations = 0;

    bool complete() const { return cofactor == 1; }

    /// cofactor * prod prime^exponent, signed like value.
    Integer product() const {
        Integer acc = cofactor;
        for (const auto& f : factors) acc *= pow(f.prime, f.exponent);
        return sgn(value) < 0 ? Integer(-acc) : acc;
    }

    Integer largest_prime() const { return factors.empty() ? Integer(1) : factors.back().prime; }
};

struct FactorEffort {
    std::uint64_t rho_iterations = std::uint64_t{1} << 26;
    unsigned long trial_limit = 1000000;
    /// Optional external ECM program: one decimal integer on stdin, one factor
    /// per line on stdout. Taken from NFSBOOT_ECM when not set explicitly.
    std::optional<std::string> ecm_command;
};

inline std::optional<std::string> ecm_command_from_env() {
    if (const char* v = std::getenv("NFSBOOT_ECM"); v && *v) return std::string(v);
    return std::nullopt;
}

namespace detail {

inline const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        constexpr unsigned long limit = 1000000;
        std::vector<bool> composite(limit + 1);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= limit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or nothing
/// when the budget runs out or the cycle closes without splitting.
inline std::optional<Integer> brent_rho(const Integer& n, unsigned long c, std::uint64_t& budget) {
    auto step = [&](Integer& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    Integer y = 2, x, ys, q = 1, g = 1, t;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        do {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                step(y);
                t = abs(x - y);
                q = q * t;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            budget = budget > 2 * lim ? budget - 2 * lim : 0;
            g = gcd(q, n);
            k += m;
        } while (k < r && g == 1 && budget > 0);
        r *= 2;
    } while (g == 1 && budget > 0);
    if (g == n) {
        do {
            step(ys);
            g = gcd(abs(x - ys), n);
            if (budget > 0) --budget;
        } while (g == 1);
    }
    if (g == 1 || g == n) return std::nullopt;
    return g;
}

inline std::vector<Integer> run_external_ecm(const std::string& command, const Integer& n) {
    std::string cmd = "printf '%s\\n' " + to_decimal(n) + " | " + command;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::vector<Integer> out;
    if (!pipe) return out;
    char buf[4096];
    std::string all;
    while (std::fgets(buf, sizeof buf, pipe.get())) all += buf;
    std::istringstream is(all);
    std::string line;
    while (std::getline(is, line)) {
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char ch) { return std::isspace(ch); }),
                   line.end());
        if (line.empty()) continue;
        try {
            out.push_back(parse_integer(line));
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

}  // namespace detail

/// Decides B-smoothness of N: trial division to min(B, trial_limit), then
/// Pollard-Brent rho with restarts under an iteration budget.
inline Factorization factor_with_bound(const Integer& value, const Integer& bound, const FactorEffort& effort = {}) {
    if (value == 0) throw std::domain_error("cannot factor zero");
    if (bound < 2) throw std::domain_error("smoothness bound must be at least 2");

    Factorization out;
    out.value = value;
    std::map<Integer, unsigned long> found;
    Integer m = abs(value);

    const unsigned long trial_to =
        bound < Integer(effort.trial_limit) ? bound.get_ui() : effort.trial_limit;
    for (unsigned long q : detail::small_primes()) {
        if (q > trial_to) break;
        if (m == 1) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
            unsigned long e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
                ++e;
            }
            found[Integer(q)] += e;
        }
    }

    auto finish = [&](SmoothVerdict v, Integer cofactor) {
        out.factors.clear();
        for (auto& [p, e] : found) out.factors.push_back({p, e});
        out.cofactor = std::move(cofactor);
        out.verdict = v;
        return out;
    };

    if (m == 1) return finish(SmoothVerdict::Smooth, 1);
    // Every prime <= B has been divided out already.
    if (Integer(trial_to) >= bound) {
        if (is_probable_prime(m)) {
            found[m] += 1;
            return finish(SmoothVerdict::NotSmooth, 1);
        }
        return finish(SmoothVerdict::NotSmooth, m);
    }

    std::uint64_t budget = effort.rho_iterations;
    std::vector<Integer> work{m};
    std::vector<Integer> stuck;
    const std::optional<std::string> ecm = effort.ecm_command ? effort.ecm_command : ecm_command_from_env();

    while (!work.empty()) {
        Integer n = work.back();
        work.pop_back();
        if (n == 1) continue;
        if (is_probable_prime(n)) {
            found[n] += 1;
            if (n > bound) {
                Integer rest = 1;
                for (const auto& w : work) rest *= w;
                for (const auto& s : stuck) rest *= s;
                out.rho_iterations = effort.rho_iterations - budget;
                // cofactor keeps whatever was left unsplit
                return finish(SmoothVerdict::NotSmooth, rest);
            }
            continue;
        }
        if (Integer sq = floor_sqrt(n); sq * sq == n) {
            work.push_back(sq);
            work.push_back(sq);
            continue;
        }
        std::optional<Integer> d;
        if (ecm) {
            for (const auto& cand : detail::run_external_ecm(*ecm, n)) {
                if (cand > 1 && cand < n && n % cand == 0) {
                    d = cand;
                    break;
                }
            }
        }
        for (unsigned long c = 1; !d && budget > 0; ++c) d = detail::brent_rho(n, c, budget);
        if (!d) {
            stuck.push_back(n);
            continue;
        }
        work.push_back(*d);
        work.push_back(n / *d);
    }
    out.rho_iterations = effort.rho_iterations - budget;
    if (stuck.empty()) return finish(SmoothVerdict::Smooth, 1);
    Integer rest = 1;
    for (const auto& s : stuck) rest *= s;
    return finish(SmoothVerdict::Undecided, rest);
}

// ---------------------------------------------------------------------------
// Complexity calculus

/// log2 of L_Q[alpha, c] = exp(c (ln Q)^alpha (ln ln Q)^(1-alpha)), o(1) = 0.
inline double l_eval_bits(double log2_q, double alpha, double c) {
    if (alpha < 0.0 || alpha > 1.0) throw std::domain_error("alpha must lie in [0, 1]");
    if (c <= 0.0) throw std::domain_error("c must be positive");
    const double lnq = log2_q * std::log(2.0);
    const double nats = c * std::pow(lnq, alpha) * std::pow(std::log(lnq), 1.0 - alpha);
    return nats / std::log(2.0);
}

/// Exact rational cube root when num and den are perfect cubes.
inline std::optional<Rational> rational_cbrt(const Rational& x) {
    Rational r = x;
    r.canonicalize();
    if (sgn(r) < 0) return std::nullopt;
    Integer a = floor_root(r.get_num(), 3), b = floor_root(r.get_den(), 3);
    if (a * a * a != r.get_num() || b * b * b != r.get_den()) return std::nullopt;
    return Rational(a, b);
}

struct ComplexityProfile {
    SelectionMethod method = SelectionMethod::Conj;
    int n = 0;
    NormVariant variant = NormVariant::Plain;
    Rational e;                       ///< norm exponent: norm = O(Q^e)
    double c = 0;                     ///< booting cost L_Q[1/3, c], c = (3e)^(1/3)
    double gamma = 0;                 ///< special-q bound L_Q[2/3, gamma], gamma = (e^2/3)^(1/3)
    Rational alpha_b{2, 3};
    std::optional<Rational> c_exact;  ///< set when (3e)^(1/3) is rational
    std::optional<Rational> gamma_exact;
    std::optional<double> q_bits;     ///< log2 Q when a concrete size is known
};

inline ComplexityProfile booting_constants(const Rational& e_in) {
    Rational e = e_in;
    e.canonicalize();
    if (sgn(e) <= 0) throw std::domain_error("norm exponent must be positive");
    ComplexityProfile prof;
    prof.e = e;
    const Rational c3 = 3 * e;
    const Rational g3 = e * e / 3;
    prof.c = std::cbrt(c3.get_d());
    prof.gamma = std::cbrt(g3.get_d());
    prof.c_exact = rational_cbrt(c3);
    prof.gamma_exact = rational_cbrt(g3);
    return prof;
}

/// Norm exponent e with the best preimage lattice for the method.
inline Rational norm_exponent(SelectionMethod method, int n, NormVariant variant) {
    if (n < 2) throw std::domain_error("extension degree must be at least 2");
    if (variant == NormVariant::Subfield && n % 2 != 0)
        throw std::domain_error("subfield variant requires even n");
    if (variant == NormVariant::Subfield && n < 4)
        throw std::domain_error("subfield variant requires n >= 4");
    Rational r;
    const bool jl = method == SelectionMethod::Jlsv1;
    if (variant == NormVariant::Plain) r = jl ? Rational(3, 2) - Rational(3, 2 * n) : Rational(1) - Rational(1, n);
    else r = jl ? Rational(3, 2) - Rational(5, 2 * n) : Rational(1) - Rational(2, n);
    r.canonicalize();
    return r;
}

/// Exponent with no reduction at all (coefficient-wise lift).
inline Rational baseline_exponent_nothing(SelectionMethod method, int n) {
    Rational r;
    switch (method) {
        case SelectionMethod::Gjl: r = Rational(1) + Rational(1, n); break;
        case SelectionMethod::Conj: r = 2; break;
        case SelectionMethod::Jlsv1: r = Rational(3, 2) - Rational(1, 2 * n); break;
    }
    r.canonicalize();
    return r;
}

/// Exponent of the product of numerator and denominator norms for the
/// fraction (numerator/denominator) lift.
inline Rational baseline_exponent_fraction(SelectionMethod method, int /*n*/) {
    return method == SelectionMethod::Jlsv1 ? Rational(2) : Rational(1);
}

namespace detail {

/// Dickman rho by the method of steps: on each interval [k-1, k] rho is a
/// power series in xi = k - u, and rho'(u) = -rho(u-1)/u gives the
/// coefficients of interval k from those of interval k-1:
///     c_{j+1} = (c'_j + j c_j) / (k (j+1)),
/// with c_0 fixed by continuity at u = k-1. Every series has radius at
/// least 2, so a fixed number of terms keeps full relative accuracy.
inline constexpr int kDickmanTerms = 80;

class DickmanTable {
public:
    double operator()(double u) {
        if (u <= 1.0) return u < 0 ? 0.0 : 1.0;
        if (u <= 2.0) return 1.0 - std::log(u);
        if (u > 400.0) return 0.0;
        std::lock_guard lock(mu_);
        const auto k = static_cast<std::size_t>(std::ceil(u));
        extend(k);
        const auto& c = series_[k];
        const double xi = static_cast<double>(k) - u;
        double acc = 0;
        for (int j = kDickmanTerms - 1; j >= 0; --j) acc = acc * xi + c[static_cast<std::size_t>(j)];
        return acc;
    }

private:
    using Series = std::vector<double>;

    void extend(std::size_t k) {
        if (series_.empty()) {
            // interval [1, 2]: 1 - ln(2 - xi) = 1 - ln 2 + sum (xi/2)^j / j
            series_.resize(3);
            Series c(kDickmanTerms);
            c[0] = 1.0 - std::log(2.0);
            for (int j = 1; j < kDickmanTerms; ++j) c[static_cast<std::size_t>(j)] = std::ldexp(1.0 / j, -j);
            series_[2] = std::move(c);
        }
        while (series_.size() <= k) {
            const std::size_t kk = series_.size();
            const Series& prev = series_[kk - 1];
            Series c(kDickmanTerms);
            const double kd = static_cast<double>(kk);
            double tail = 0;
            for (int j = 0; j + 1 < kDickmanTerms; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                c[uj + 1] = (prev[uj] + j * c[uj]) / (kd * (j + 1));
                tail += c[uj + 1];
            }
            c[0] = prev[0] - tail;  // rho(kk - 1) at xi = 1
            series_.push_back(std::move(c));
        }
    }

    std::mutex mu_;
    std::vector<Series> series_;
};

inline DickmanTable& dickman_table() {
    static DickmanTable t;
    return t;
}

}  // namespace detail

inline double dickman_rho(double u) { return detail::dickman_table()(u); }

struct SmoothnessEstimate {
    double u = 0;         ///< S_bits / B_bits
    double cep = 0;       ///< u^(-u), the L-form estimate with o(1) = 0
    double dickman = 0;   ///< rho(u)
};

inline SmoothnessEstimate smooth_probability(double s_bits, double b_bits) {
    if (!(b_bits > 0)) throw std::domain_error("smoothness bound must be positive");
    SmoothnessEstimate est;
    est.u = s_bits / b_bits;
    est.cep = est.u <= 1.0 ? 1.0 : std::pow(est.u, -est.u);
    est.dickman = dickman_rho(est.u);
    return est;
}

}  // namespace nfsboot

#endif  // NFSBOOT_SMOOTH_HPP
