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

#ifndef NFSBOOT_BIGINT_HPP
#define NFSBOOT_BIGINT_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nfsboot {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses a signed decimal integer; rejects anything else (no hex, no spaces).
inline Integer parse_integer(std::string_view text) {
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw std::invalid_argument("empty integer literal");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

inline std::string to_decimal(const Integer& a) { return a.get_str(10); }

/// Number of bits of |a|; zero has bit length 0.
inline std::size_t bit_length(const Integer& a) {
    return sgn(a) == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

/// Exact count of decimal digits of |a| (zero has one digit).
inline std::size_t decimal_digits(const Integer& a) {
    Integer m = abs(a);
    return m.get_str(10).size();
}

/// log2 |a| as a double, usable for integers far beyond double range.
inline double log2_abs(const Integer& a) {
    if (sgn(a) == 0) return -INFINITY;
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, a.get_mpz_t());
    return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

/// Least non-negative residue.
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer pow_mod(const Integer& base, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer inv_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::domain_error("element not invertible modulo " + to_decimal(m));
    }
    return r;
}

inline Integer floor_sqrt(const Integer& n) {
    if (sgn(n) < 0) throw std::domain_error("square root of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Integer ceil_sqrt(const Integer& n) {
    Integer r = floor_sqrt(n);
    if (r * r < n) ++r;
    return r;
}

/// floor(n^(1/k)) for n >= 0.
inline Integer floor_root(const Integer& n, unsigned long k) {
    Integer r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Probable-prime test. GMP runs Baillie-PSW (which includes a strong Lucas
/// test) followed by additional Miller-Rabin rounds; results below 2^64 are
/// deterministic.
inline bool is_probable_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 64) > 0;
}

inline Integer next_prime(const Integer& n) {
    Integer r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre(const Integer& a, const Integer& p) {
    return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t());
}

/// Square root modulo an odd prime (Tonelli-Shanks). Returns the smaller of
/// the two roots, or nothing when a is a non-residue.
inline std::optional<Integer> sqrt_mod(const Integer& a_in, const Integer& p) {
    Integer a = mod(a_in, p);
    if (a == 0) return Integer(0);
    if (p == 2) return a;
    if (legendre(a, p) != 1) return std::nullopt;

    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    Integer z = 2;
    while (legendre(z, p) != -1) ++z;

    Integer m = s;
    Integer c = pow_mod(z, q, p);
    Integer t = pow_mod(a, q, p);
    Integer r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        unsigned long i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = mod(t2 * t2, p);
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m.get_ui(); ++j) b = mod(b * b, p);
        m = i;
        c = mod(b * b, p);
        t = mod(t * c, p);
        r = mod(r * b, p);
    }
    Integer other = p - r;
    return r < other ? r : other;
}

}  // namespace nfsboot

#endif  // NFSBOOT_BIGINT_HPP
