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

// Dense univariate polynomials over Z and over F_p.
//
// Coefficient vectors are little-endian: coeffs[i] multiplies x^i. Degrees in
// this toolkit stay below 2n+2, so everything is schoolbook.

#ifndef NFSBOOT_ARITH_HPP
#define NFSBOOT_ARITH_HPP

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nfsboot/bigint.hpp"

namespace nfsboot {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { normalize(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    static IntPoly constant(const Integer& v) { return IntPoly(std::vector<Integer>{v}); }
    static IntPoly monomial(const Integer& v, std::size_t deg) {
        std::vector<Integer> c(deg + 1);
        c[deg] = v;
        return IntPoly(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    std::size_t size() const { return c_.size(); }

    /// Coefficient of x^i; zero past the degree.
    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
    const Integer& operator[](std::size_t i) const { return c_.at(i); }
    const std::vector<Integer>& coeffs() const { return c_; }
    const Integer& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Integer inf_norm() const {
        Integer m = 0;
        for (const auto& v : c_) {
            Integer a = abs(v);
            if (a > m) m = a;
        }
        return m;
    }

    Integer content() const {
        Integer g = 0;
        for (const auto& v : c_) g = gcd(g, v);
        return g;
    }

    Integer eval(const Integer& x) const {
        Integer acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    IntPoly derivative() const {
        std::vector<Integer> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
        return IntPoly(std::move(d));
    }

    IntPoly& operator+=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }
    IntPoly& operator-=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }
    IntPoly& operator*=(const Integer& k) {
        for (auto& v : c_) v *= k;
        normalize();
        return *this;
    }

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator-(IntPoly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend IntPoly operator*(IntPoly a, const Integer& k) { return a *= k; }
    friend IntPoly operator*(const Integer& k, IntPoly a) { return a *= k; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(r));
    }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    /// Exact division of every coefficient by k (caller guarantees divisibility).
    IntPoly divexact(const Integer& k) const {
        std::vector<Integer> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(r[i].get_mpz_t(), c_[i].get_mpz_t(), k.get_mpz_t());
        return IntPoly(std::move(r));
    }

    std::string to_string(char var = 'x') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Integer& v = c_[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            Integer a = abs(v);
            if (!first) os << (sgn(v) < 0 ? " - " : " + ");
            else if (sgn(v) < 0) os << "-";
            if (a != 1 || i == 0) os << a.get_str();
            if (i > 0) os << var;
            if (i > 1) os << '^' << i;
            first = false;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Integer> c_;
};

inline std::ostream& operator<<(std::ostream& os, const IntPoly& p) { return os << p.to_string(); }

/// a mod m for a monic m in Z[x]; no fractions appear.
inline IntPoly rem_monic(const IntPoly& a, const IntPoly& m) {
    if (!m.is_monic()) throw std::domain_error("rem_monic requires a monic modulus");
    std::vector<Integer> r = a.coeffs();
    const int dm = m.degree();
    for (int i = static_cast<int>(r.size()) - 1; i >= dm; --i) {
        Integer q = r[static_cast<std::size_t>(i)];
        if (q == 0) continue;
        for (int j = 0; j <= dm; ++j) r[static_cast<std::size_t>(i - dm + j)] -= q * m[static_cast<std::size_t>(j)];
    }
    if (static_cast<int>(r.size()) > dm) r.resize(static_cast<std::size_t>(std::max(dm, 0)));
    return IntPoly(std::move(r));
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q * b + r.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-division by zero polynomial");
    if (a.degree() < b.degree()) return a;
    const int db = b.degree();
    const Integer& lb = b.lead();
    std::vector<Integer> r = a.coeffs();
    int e = a.degree() - db + 1;
    for (int i = a.degree(); i >= db; --i) {
        Integer q = r[static_cast<std::size_t>(i)];
        for (auto& v : r) v *= lb;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= q * b[static_cast<std::size_t>(j)];
        --e;
    }
    if (e > 0) {
        Integer k = pow(lb, static_cast<unsigned long>(e));
        for (auto& v : r) v *= k;
    }
    r.resize(static_cast<std::size_t>(db));
    return IntPoly(std::move(r));
}

/// Res(f, s) by the subresultant PRS; signed.
inline Integer resultant(const IntPoly& f, const IntPoly& s) {
    if (f.is_zero() || s.is_zero()) throw std::domain_error("undefined resultant");
    IntPoly a = f, b = s;
    int sign = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -1;
    }
    if (b.degree() == 0) return sign * pow(b.lead(), static_cast<unsigned long>(a.degree()));

    Integer ca = a.content(), cb = b.content();
    a = a.divexact(ca);
    b = b.divexact(cb);
    Integer t = pow(ca, static_cast<unsigned long>(b.degree())) * pow(cb, static_cast<unsigned long>(a.degree()));
    Integer g = 1, h = 1;
    for (;;) {
        const int delta = a.degree() - b.degree();
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
        IntPoly r = pseudo_rem(a, b);
        a = b;
        b = r.divexact(g * pow(h, static_cast<unsigned long>(delta)));
        g = a.lead();
        // h <- g^delta / h^(delta-1), exact; unchanged when delta == 0
        if (delta > 0) {
            Integer num = pow(g, static_cast<unsigned long>(delta));
            Integer den = pow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (b.is_zero()) return 0;
        if (b.degree() == 0) {
            const unsigned long da = static_cast<unsigned long>(a.degree());
            Integer num = pow(b.lead(), da);
            Integer den = pow(h, da - 1);
            Integer hh;
            mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            return sign * t * hh;
        }
    }
}

/// |Norm_{K_f/Q}(s)| for monic f.
inline Integer norm_abs(const IntPoly& f, const IntPoly& s) { return abs(resultant(f, s)); }

/// kappa(n, m) = C(n+m, n) * C(n+m-1, n); kappa(n, 0) = kappa(0, m) = 1.
inline Integer kalkbrener_kappa(unsigned long n, unsigned long m) {
    if (n == 0 || m == 0) return 1;
    return binomial(n + m, n) * binomial(n + m - 1, n);
}

inline Integer kalkbrener_bound(const IntPoly& f, const IntPoly& s) {
    if (f.is_zero() || s.is_zero()) throw std::domain_error("kalkbrener bound of zero polynomial");
    const auto df = static_cast<unsigned long>(f.degree());
    const auto ds = static_cast<unsigned long>(s.degree());
    return kalkbrener_kappa(df, ds) * pow(f.inf_norm(), ds) * pow(s.inf_norm(), df);
}

struct RationalPair {
    Integer u;  // numerator
    Integer v;  // denominator, v > 0
};

/// u = v*y mod p with |u|, |v| <= ceil(sqrt(p)), from the first extended-Euclid
/// row whose remainder drops below sqrt(p).
inline RationalPair rational_reconstruction(const Integer& y, const Integer& p) {
    if (!(y > 0 && y < p)) throw std::domain_error("rational reconstruction needs 0 < y < p");
    const Integer bound = ceil_sqrt(p);
    Integer r0 = p, r1 = y, t0 = 0, t1 = 1;
    while (r1 != 0) {
        if (r1 * r1 < p) {
            if (abs(t1) > bound || gcd(t1, p) != 1) break;
            RationalPair out{r1, t1};
            if (sgn(out.v) < 0) {
                out.u = -out.u;
                out.v = -out.v;
            }
            return out;
        }
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    throw std::domain_error("reconstruction failed");
}

/// Thrown by modular inversion when the gcd with the modulus is nontrivial.
class NotInvertible : public std::domain_error {
public:
    NotInvertible(const std::string& what, std::vector<Integer> gcd_coeffs)
        : std::domain_error(what), gcd_(std::move(gcd_coeffs)) {}
    const std::vector<Integer>& gcd_coeffs() const { return gcd_; }

private:
    std::vector<Integer> gcd_;
};

/// Polynomial over F_p, coefficients kept in [0, p).
class ModPoly {
public:
    ModPoly() = default;
    explicit ModPoly(Integer p) : p_(std::move(p)) { check_modulus(); }
    ModPoly(std::vector<Integer> coeffs, Integer p) : p_(std::move(p)), c_(std::move(coeffs)) {
        check_modulus();
        for (auto& v : c_) v = mod(v, p_);
        normalize();
    }
    ModPoly(const IntPoly& a, const Integer& p) : ModPoly(a.coeffs(), p) {}

    static ModPoly x(const Integer& p) { return ModPoly({Integer(0), Integer(1)}, p); }
    static ModPoly one(const Integer& p) { return ModPoly({Integer(1)}, p); }

    const Integer& modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
    const std::vector<Integer>& coeffs() const { return c_; }
    const Integer& lead() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    /// Integer lift with coefficients in [0, p).
    IntPoly lift() const { return IntPoly(c_); }

    ModPoly monic() const {
        if (is_zero()) return *this;
        Integer inv = inv_mod(lead(), p_);
        return scaled(inv);
    }
    ModPoly scaled(const Integer& k) const {
        std::vector<Integer> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * k;
        return ModPoly(std::move(r), p_);
    }

    Integer eval(const Integer& x) const {
        Integer acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = mod(acc * x + *it, p_);
        return acc;
    }

    ModPoly derivative() const {
        std::vector<Integer> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
        return ModPoly(std::move(d), p_);
    }

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return ModPoly(std::move(r), a.p_);
    }
    friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return ModPoly(std::move(r), a.p_);
    }
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        if (a.is_zero() || b.is_zero()) return ModPoly(a.p_);
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return ModPoly(std::move(r), a.p_);
    }
    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    /// Euclidean division; the divisor's leading coefficient must be invertible.
    friend std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        if (b.is_zero()) throw std::domain_error("division by zero polynomial");
        const Integer& p = a.p_;
        if (a.degree() < b.degree()) return {ModPoly(p), a};
        Integer inv = inv_mod(b.lead(), p);
        std::vector<Integer> r = a.c_;
        std::vector<Integer> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
        const int db = b.degree();
        for (int i = a.degree(); i >= db; --i) {
            Integer t = mod(r[static_cast<std::size_t>(i)] * inv, p);
            q[static_cast<std::size_t>(i - db)] = t;
            if (t == 0) continue;
            for (int j = 0; j <= db; ++j) {
                auto& dst = r[static_cast<std::size_t>(i - db + j)];
                dst = mod(dst - t * b.c_[static_cast<std::size_t>(j)], p);
            }
        }
        r.resize(static_cast<std::size_t>(db));
        return {ModPoly(std::move(q), p), ModPoly(std::move(r), p)};
    }
    friend ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
    friend ModPoly operator/(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

    std::string to_string(char var = 'x') const { return lift().to_string(var); }

private:
    void check_modulus() const {
        if (p_ <= 1) throw std::domain_error("modulus must exceed 1");
    }
    void same_field(const ModPoly& o) const {
        if (p_ != o.p_) throw std::domain_error("polynomials over different prime fields");
    }
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    Integer p_ = 2;
    std::vector<Integer> c_;
};

inline ModPoly poly_mod(const IntPoly& a, const ModPoly& m) { return ModPoly(a, m.modulus()) % m; }

inline ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) { return (a * b) % m; }

inline ModPoly poly_powmod(const ModPoly& base, const Integer& e, const ModPoly& m) {
    if (sgn(e) < 0) throw std::domain_error("negative exponent");
    ModPoly result = ModPoly::one(m.modulus()) % m;
    ModPoly b = base % m;
    const std::size_t bits = bit_length(e);
    for (std::size_t i = bits; i-- > 0;) {
        result = poly_mulmod(result, result, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_mulmod(result, b, m);
    }
    return result;
}

/// Monic gcd over F_p (zero if both inputs are zero).
inline ModPoly poly_gcd_mod_p(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

struct ModXgcd {
    ModPoly g, s, t;  // g = s*a + t*b, g monic
};

inline ModXgcd poly_xgcd_mod_p(const ModPoly& a, const ModPoly& b) {
    const Integer& p = a.modulus();
    ModPoly r0 = a, r1 = b;
    ModPoly s0 = ModPoly::one(p), s1(p), t0(p), t1 = ModPoly::one(p);
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Integer inv = inv_mod(r0.lead(), p);
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// a^{-1} mod m; throws NotInvertible carrying the gcd when it is not 1.
inline ModPoly poly_invmod(const ModPoly& a, const ModPoly& m) {
    auto x = poly_xgcd_mod_p(a % m, m);
    if (!x.g.is_one()) throw NotInvertible("polynomial not invertible modulo m", x.g.coeffs());
    return x.s % m;
}

namespace detail {
inline std::vector<unsigned long> prime_divisors(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}
}  // namespace detail

/// x^(p^k) mod a.
inline ModPoly frobenius_power_of_x(const ModPoly& a, unsigned long k) {
    ModPoly xp = ModPoly::x(a.modulus()) % a;
    for (unsigned long i = 0; i < k; ++i) xp = poly_powmod(xp, a.modulus(), a);
    return xp;
}

/// Rabin's test: x^(p^d) = x mod a and gcd(x^(p^(d/q)) - x, a) = 1 for every prime q | d.
inline bool is_irreducible_mod_p(const ModPoly& a_in) {
    if (a_in.is_zero()) throw std::domain_error("irreducibility of zero polynomial");
    const int d = a_in.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    ModPoly a = a_in.monic();
    const Integer& p = a.modulus();
    const ModPoly x = ModPoly::x(p);
    const auto ud = static_cast<unsigned long>(d);

    // x^(p^i) for i = 0..d, computed once.
    std::vector<ModPoly> frob{x % a};
    for (unsigned long i = 1; i <= ud; ++i) frob.push_back(poly_powmod(frob.back(), p, a));
    if (!(frob[ud] == x % a)) return false;
    for (unsigned long q : detail::prime_divisors(ud)) {
        ModPoly g = poly_gcd_mod_p(a, frob[ud / q] - x);
        if (!g.is_one()) return false;
    }
    return true;
}

inline bool is_squarefree_mod_p(const ModPoly& a) {
    return poly_gcd_mod_p(a, a.derivative()).is_one();
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// entry k holds the product of all irreducible factors of degree k.
inline std::vector<std::pair<int, ModPoly>> distinct_degree_factorization(const ModPoly& a_in) {
    ModPoly a = a_in.monic();
    const Integer& p = a.modulus();
    const ModPoly x = ModPoly::x(p);
    std::vector<std::pair<int, ModPoly>> out;
    ModPoly h = x % a;
    for (int k = 1; 2 * k <= a.degree(); ++k) {
        h = poly_powmod(h, p, a);
        ModPoly g = poly_gcd_mod_p(a, h - x);
        if (!g.is_one()) {
            out.emplace_back(k, g);
            a = a / g;
            h = h % a;
        }
    }
    if (a.degree() > 0) out.emplace_back(a.degree(), a);
    return out;
}

/// Cantor-Zassenhaus equal-degree splitting (odd p). Input: squarefree monic,
/// product of irreducibles of degree k.
template <class Rng>
std::vector<ModPoly> equal_degree_factorization(const ModPoly& a, int k, Rng& rng) {
    if (a.degree() == k) return {a.monic()};
    const Integer& p = a.modulus();
    if (p == 2) throw std::domain_error("equal-degree splitting needs odd p");
    Integer e = (pow(p, static_cast<unsigned long>(k)) - 1) / 2;
    gmp_randclass gr(gmp_randinit_default);
    gr.seed(static_cast<unsigned long>(rng()));
    for (;;) {
        std::vector<Integer> c(static_cast<std::size_t>(a.degree()));
        for (auto& v : c) v = gr.get_z_range(p);
        ModPoly r(c, p);
        if (r.degree() < 1) continue;
        ModPoly g = poly_gcd_mod_p(a, poly_powmod(r, e, a) - ModPoly::one(p));
        if (g.degree() > 0 && g.degree() < a.degree()) {
            auto left = equal_degree_factorization(g, k, rng);
            auto right = equal_degree_factorization(a / g, k, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

/// Roots of a in F_p (odd p), sorted ascending.
template <class Rng>
std::vector<Integer> roots_mod_p(const ModPoly& a, Rng& rng) {
    std::vector<Integer> out;
    if (a.is_zero()) throw std::domain_error("roots of zero polynomial");
    const Integer& p = a.modulus();
    ModPoly xp = poly_powmod(ModPoly::x(p), p, a.monic());
    ModPoly lin = poly_gcd_mod_p(a, xp - ModPoly::x(p));
    if (lin.degree() <= 0) return out;
    for (const auto& fac : equal_degree_factorization(lin, 1, rng)) out.push_back(mod(-fac.coeff(0), p));
    std::sort(out.begin(), out.end());
    return out;
}

/// Roots of a monic quadratic y^2 + a1*y + a0 over an odd prime field.
inline std::vector<Integer> quadratic_roots_mod_p(const Integer& a1, const Integer& a0, const Integer& p) {
    Integer disc = mod(a1 * a1 - 4 * a0, p);
    auto sq = sqrt_mod(disc, p);
    if (!sq) return {};
    Integer inv2 = inv_mod(Integer(2), p);
    Integer r1 = mod((-a1 + *sq) * inv2, p);
    Integer r2 = mod((-a1 - *sq) * inv2, p);
    if (r1 == r2) return {r1};
    if (r2 < r1) std::swap(r1, r2);
    return {r1, r2};
}

/// Degree-n irreducible factors of a modulo p, sorted by coefficient vector.
template <class Rng>
std::vector<ModPoly> irreducible_factors_of_degree(const ModPoly& a, int n, Rng& rng) {
    if (!is_squarefree_mod_p(a)) throw std::domain_error("polynomial not squarefree modulo p");
    for (const auto& [k, g] : distinct_degree_factorization(a)) {
        if (k != n) continue;
        auto facs = equal_degree_factorization(g, n, rng);
        std::sort(facs.begin(), facs.end(),
                  [](const ModPoly& x, const ModPoly& y) { return x.coeffs() < y.coeffs(); });
        return facs;
    }
    return {};
}

/// How strongly irreducibility over Q has been established.
enum class IrreducibilityWitness { Proven, Probable, Reducible };

/// Evidence that a primitive integer polynomial is irreducible over Q. Proofs:
/// irreducibility modulo a prime not dividing the leading coefficient, or
/// factor-degree patterns modulo several primes that admit no common proper
/// subset sum. Otherwise absence of rational roots (a proof up to degree 3)
/// is the fallback.
inline IrreducibilityWitness irreducible_over_q(const IntPoly& f, std::span<const Integer> extra_primes = {}) {
    if (f.degree() <= 0) return IrreducibilityWitness::Reducible;
    if (f.degree() == 1) return IrreducibilityWitness::Proven;
    if (f.content() != 1) return IrreducibilityWitness::Reducible;
    const auto deg = static_cast<std::size_t>(f.degree());
    // possible[k]: a factor of degree k over Q is compatible with every
    // factorization pattern seen so far
    std::vector<bool> possible(deg + 1, true);
    auto try_prime = [&](const Integer& q) {
        if (mod(f.lead(), q) == 0) return false;
        ModPoly fq(f, q);
        if (is_irreducible_mod_p(fq)) return true;
        if (!is_squarefree_mod_p(fq)) return false;
        std::vector<bool> sums(deg + 1, false);
        sums[0] = true;
        for (const auto& [k, g] : distinct_degree_factorization(fq)) {
            const auto uk = static_cast<std::size_t>(k);
            for (int c = 0; c < g.degree() / k; ++c)
                for (std::size_t s = deg + 1; s-- > uk;)
                    if (sums[s - uk]) sums[s] = true;
        }
        for (std::size_t s = 0; s <= deg; ++s) possible[s] = possible[s] && sums[s];
        for (std::size_t s = 1; s < deg; ++s)
            if (possible[s]) return false;
        return true;
    };
    for (const auto& q : extra_primes)
        if (is_probable_prime(q) && try_prime(q)) return IrreducibilityWitness::Proven;
    Integer q = 2;
    for (int i = 0; i < 60; ++i, q = next_prime(q))
        if (try_prime(q)) return IrreducibilityWitness::Proven;

    // Rational root test: candidates a/b with a | f_0 and b | lc(f).
    const Integer c0 = abs(f.coeff(0));
    const Integer lc = abs(f.lead());
    if (c0 == 0) return IrreducibilityWitness::Reducible;
    auto divisors = [](const Integer& n) {
        std::vector<Integer> ds;
        if (n > Integer(1000000)) return ds;
        for (Integer d = 1; d <= n; ++d)
            if (n % d == 0) ds.push_back(d);
        return ds;
    };
    auto num = divisors(c0), den = divisors(lc);
    if (num.empty() || den.empty()) return IrreducibilityWitness::Probable;
    for (const auto& a : num) {
        for (const auto& b : den) {
            for (int sg : {1, -1}) {
                // b^deg * f(a/b) == 0
                Integer acc = 0, bp = 1;
                std::vector<Integer> bpow(f.size());
                for (std::size_t i = 0; i < f.size(); ++i) {
                    bpow[i] = bp;
                    bp *= b;
                }
                Integer ap = 1;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    acc += f[i] * ap * bpow[f.size() - 1 - i];
                    ap *= sg * a;
                }
                if (acc == 0) return IrreducibilityWitness::Reducible;
            }
        }
    }
    return f.degree() <= 3 ? IrreducibilityWitness::Proven : IrreducibilityWitness::Probable;
}

}  // namespace nfsboot

#endif  // NFSBOOT_ARITH_HPP
