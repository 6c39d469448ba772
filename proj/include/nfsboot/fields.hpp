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

// F_{p^n} = F_p[X]/(psi), quadratic-subfield towers and the cyclotomic
// subgroup order ell.

#ifndef NFSBOOT_FIELDS_HPP
#define NFSBOOT_FIELDS_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nfsboot/arith.hpp"
#include "nfsboot/smooth.hpp"

namespace nfsboot {

enum class TowerVariant { Additive, Twisted };

inline std::string to_string(TowerVariant v) { return v == TowerVariant::Additive ? "additive" : "twisted"; }

/// psi = (P_z - Y)(P_z - Y^p)     (additive)
/// psi = (P_z - YX)(P_z - Y^p X)  (twisted)
/// over F_p[Y]/(Y^2 + y1 Y + y0), with P_z monic of degree n/2.
struct TowerForm {
    TowerVariant variant = TowerVariant::Additive;
    Integer y1, y0;
    ModPoly pz;

    /// Product of the two conjugate factors, written over F_p using
    /// Y + Y^p = -y1 and Y * Y^p = y0.
    ModPoly expand() const {
        const Integer& p = pz.modulus();
        if (variant == TowerVariant::Additive)
            return pz * pz + pz.scaled(y1) + ModPoly({y0}, p);
        const ModPoly x = ModPoly::x(p);
        return pz * pz + (x * pz).scaled(y1) + (x * x).scaled(y0);
    }

    ModPoly py() const { return ModPoly({y0, y1, Integer(1)}, pz.modulus()); }

    friend bool operator==(const TowerForm& a, const TowerForm& b) {
        return a.variant == b.variant && a.y1 == b.y1 && a.y0 == b.y0 && a.pz == b.pz;
    }
};

struct FieldCtx {
    Integer p;
    int n = 0;
    ModPoly psi;
    std::optional<Integer> ell;
    std::optional<TowerForm> tower;

    FieldCtx(ModPoly psi_in, std::optional<Integer> ell_in = std::nullopt, std::optional<TowerForm> tower_in = std::nullopt)
        : p(psi_in.modulus()), n(psi_in.degree()), psi(std::move(psi_in)), ell(std::move(ell_in)),
          tower(std::move(tower_in)) {
        if (!is_probable_prime(p)) throw std::domain_error("field characteristic must be prime");
        if (n < 1 || !psi.is_monic()) throw std::domain_error("psi must be monic of positive degree");
        if (!is_irreducible_mod_p(psi)) throw std::domain_error("psi is not irreducible modulo p");
        if (ell) {
            if (!is_probable_prime(*ell)) throw std::domain_error("ell must be prime");
            if ((pow(p, static_cast<unsigned long>(n)) - 1) % *ell != 0)
                throw std::domain_error("ell does not divide p^n - 1");
        }
        if (tower && !(tower->expand() == psi)) throw std::domain_error("tower form does not expand to psi");
    }

    Integer order() const { return pow(p, static_cast<unsigned long>(n)); }
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

inline FieldCtxPtr make_field(ModPoly psi, std::optional<Integer> ell = std::nullopt,
                              std::optional<TowerForm> tower = std::nullopt) {
    return std::make_shared<const FieldCtx>(std::move(psi), std::move(ell), std::move(tower));
}

inline FieldCtxPtr with_ell(const FieldCtxPtr& ctx, const Integer& ell) {
    return make_field(ctx->psi, ell, ctx->tower);
}

inline FieldCtxPtr with_tower(const FieldCtxPtr& ctx, const TowerForm& t) {
    return make_field(ctx->psi, ctx->ell, t);
}

class FqElement {
public:
    FqElement() = default;
    FqElement(FieldCtxPtr ctx, const ModPoly& v) : ctx_(std::move(ctx)), v_(v % ctx_->psi) {}
    FqElement(FieldCtxPtr ctx, std::vector<Integer> coeffs)
        : FqElement(ctx, ModPoly(std::move(coeffs), ctx->p)) {}

    static FqElement from_int(FieldCtxPtr ctx, const Integer& a) {
        const Integer p = ctx->p;
        return {std::move(ctx), ModPoly({a}, p)};
    }
    static FqElement zero(FieldCtxPtr ctx) { return from_int(std::move(ctx), 0); }
    static FqElement one(FieldCtxPtr ctx) { return from_int(std::move(ctx), 1); }
    static FqElement x(FieldCtxPtr ctx) {
        const Integer p = ctx->p;
        return {std::move(ctx), ModPoly::x(p)};
    }
    static FqElement random(FieldCtxPtr ctx, gmp_randclass& rng) {
        std::vector<Integer> c(static_cast<std::size_t>(ctx->n));
        for (auto& v : c) v = rng.get_z_range(ctx->p);
        return {std::move(ctx), std::move(c)};
    }

    const FieldCtxPtr& ctx() const { return ctx_; }
    const ModPoly& poly() const { return v_; }
    Integer coeff(std::size_t i) const { return v_.coeff(i); }
    /// n coefficients, zero padded.
    std::vector<Integer> coeffs() const {
        std::vector<Integer> c(static_cast<std::size_t>(ctx_->n));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = v_.coeff(i);
        return c;
    }
    int degree() const { return v_.degree(); }
    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_.is_one(); }

    friend FqElement operator+(const FqElement& a, const FqElement& b) { return {a.ctx_, a.v_ + b.v_}; }
    friend FqElement operator-(const FqElement& a, const FqElement& b) { return {a.ctx_, a.v_ - b.v_}; }
    friend FqElement operator*(const FqElement& a, const FqElement& b) {
        a.check(b);
        return {a.ctx_, a.v_ * b.v_};
    }
    friend bool operator==(const FqElement& a, const FqElement& b) { return a.v_ == b.v_; }

    FqElement scaled(const Integer& k) const { return {ctx_, v_.scaled(k)}; }

    FqElement inverse() const {
        if (is_zero()) throw std::domain_error("inversion of zero");
        return {ctx_, poly_invmod(v_, ctx_->psi)};
    }

    FqElement pow(const Integer& e) const {
        if (sgn(e) < 0) return inverse().pow(-e);
        return {ctx_, poly_powmod(v_, e, ctx_->psi)};
    }

    /// s^(p^k)
    FqElement frobenius(unsigned long k = 1) const { return pow(nfsboot::pow(ctx_->p, k)); }

    std::string to_string() const { return v_.to_string(); }

private:
    void check(const FqElement& o) const {
        if (ctx_ != o.ctx_ && !(ctx_->psi == o.ctx_->psi)) throw std::domain_error("elements of different fields");
    }
    FieldCtxPtr ctx_;
    ModPoly v_;
};

// ---------------------------------------------------------------------------
// Linear algebra over F_p

namespace detail {

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref_mod_p(std::vector<std::vector<Integer>>& a, const Integer& p) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && mod(a[piv][c], p) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        Integer inv = inv_mod(mod(a[r][c], p), p);
        for (auto& v : a[r]) v = mod(v * inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Integer f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Unique solution of A x = b over F_p (A square), or nothing when singular.
inline std::optional<std::vector<Integer>> solve_mod_p(const std::vector<std::vector<Integer>>& a,
                                                       const std::vector<Integer>& b, const Integer& p) {
    const std::size_t n = a.size();
    std::vector<std::vector<Integer>> aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("solve_mod_p needs a square system");
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    auto piv = detail::rref_mod_p(aug, p);
    if (piv.size() < n || piv.back() >= n) return std::nullopt;
    std::vector<Integer> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

inline std::size_t rank_mod_p(std::vector<std::vector<Integer>> a, const Integer& p) {
    return detail::rref_mod_p(a, p).size();
}

// ---------------------------------------------------------------------------
// Subfields and ell

namespace detail {
inline int moebius(int n) {
    int mu = 1;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        n /= q;
        if (n % q == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}
}  // namespace detail

/// Phi_n(p) = prod_{d | n} (p^d - 1)^mu(n/d).
inline Integer cyclotomic_value(int n, const Integer& p) {
    if (n < 1) throw std::domain_error("cyclotomic index must be positive");
    Integer num = 1, den = 1;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        const int mu = detail::moebius(n / d);
        if (mu == 0) continue;
        Integer t = pow(p, static_cast<unsigned long>(d)) - 1;
        (mu > 0 ? num : den) *= t;
    }
    if (den == 0) throw std::domain_error("cyclotomic value undefined at p = 1");
    return num / den;
}

/// Largest prime factor of Phi_n(p) of at least min_bits bits that trial
/// division plus rho can isolate.
inline Integer find_ell(const FieldCtx& ctx, unsigned min_bits = 0, const FactorEffort& effort = {}) {
    const Integer phi = cyclotomic_value(ctx.n, ctx.p);
    const Integer threshold = pow(Integer(2), min_bits);
    if (is_probable_prime(phi)) {
        if (phi >= threshold) return phi;
    } else {
        const Factorization fac = factor_with_bound(phi, phi, effort);
        for (auto it = fac.factors.rbegin(); it != fac.factors.rend(); ++it) {
            if (it->prime >= threshold && it->prime > 1) return it->prime;
        }
    }
    throw std::domain_error("no prime factor of Phi_n(p) with at least " + std::to_string(min_bits) +
                            " bits found; supply ell explicitly");
}

inline FieldCtxPtr assign_ell(const FieldCtxPtr& ctx, unsigned min_bits = 0, const FactorEffort& effort = {}) {
    return with_ell(ctx, find_ell(*ctx, min_bits, effort));
}

/// True iff s lies in F_{p^d}, i.e. s^(p^d) = s.
inline bool is_in_proper_subfield(const FqElement& s, int d) {
    const int n = s.ctx()->n;
    if (d < 1 || d >= n || n % d != 0) throw std::domain_error("subfield degree must be a proper divisor of n");
    return s.frobenius(static_cast<unsigned long>(d)) == s;
}

struct MonicTarget {
    FqElement monic;
    Integer lead;  ///< the F_p unit removed: monic * lead == s
};

inline MonicTarget make_monic(const FqElement& s) {
    if (s.is_zero()) throw std::domain_error("cannot make zero monic");
    Integer lead = s.poly().lead();
    return {s.scaled(inv_mod(lead, s.ctx()->p)), lead};
}

/// Finds the quadratic-subfield tower shape of psi, trying the additive form
/// before the twisted one. Needs odd p and even n >= 4.
inline std::optional<TowerForm> detect_tower(const ModPoly& psi_in) {
    const ModPoly psi = psi_in.monic();
    const Integer& p = psi.modulus();
    const int n = psi.degree();
    if (n < 4 || n % 2 != 0 || p == 2) return std::nullopt;
    const int m = n / 2;
    const Integer inv2 = inv_mod(Integer(2), p);
    const ModPoly x = ModPoly::x(p);

    // c[m] = 1; fills c[m-1] .. c[lo] from the coefficients of P_z^2.
    auto top_roots = [&](int lo) {
        std::vector<Integer> c(static_cast<std::size_t>(m + 1));
        c[static_cast<std::size_t>(m)] = 1;
        for (int k = 1; m - k >= lo; ++k) {
            Integer acc = psi.coeff(static_cast<std::size_t>(2 * m - k));
            for (int i = 1; i < k; ++i)
                acc -= c[static_cast<std::size_t>(m - i)] * c[static_cast<std::size_t>(m - k + i)];
            c[static_cast<std::size_t>(m - k)] = mod(acc * inv2, p);
        }
        return c;
    };
    auto valid = [&](const TowerForm& t) {
        return is_irreducible_mod_p(t.py()) && t.expand() == psi;
    };

    {  // additive, normalized so P_z(0) = 0
        std::vector<Integer> c = top_roots(1);
        c[0] = 0;
        ModPoly pz(c, p);
        ModPoly r = psi - pz * pz;
        if (r.degree() <= m) {
            TowerForm t{TowerVariant::Additive, r.coeff(static_cast<std::size_t>(m)), 0, pz};
            ModPoly rest = r - pz.scaled(t.y1);
            if (rest.degree() <= 0) {
                t.y0 = rest.coeff(0);
                if (valid(t)) return t;
            }
        }
    }
    {  // twisted, normalized so the X coefficient of P_z is 0
        auto c0 = sqrt_mod(psi.coeff(0), p);
        if (c0 && *c0 != 0) {
            for (const Integer& root : {*c0, Integer(p - *c0)}) {
                std::vector<Integer> c = top_roots(2);
                c[1] = 0;
                c[0] = root;
                ModPoly pz(c, p);
                ModPoly r = psi - pz * pz;
                Integer y1 = mod(r.coeff(1) * inv_mod(root, p), p);
                ModPoly rest = r - (x * pz).scaled(y1);
                bool only_x2 = true;
                for (int i = 0; i <= rest.degree(); ++i)
                    if (i != 2 && rest.coeff(static_cast<std::size_t>(i)) != 0) only_x2 = false;
                if (!only_x2) continue;
                TowerForm t{TowerVariant::Twisted, y1, rest.coeff(2), pz};
                if (valid(t)) return t;
            }
        }
    }
    return std::nullopt;
}

/// The element Y in F_{p^n}: P_z(X) (additive) or P_z(X)/X (twisted).
inline FqElement tower_generator(const FieldCtxPtr& ctx, const TowerForm& t) {
    FqElement pz(ctx, t.pz);
    if (t.variant == TowerVariant::Additive) return pz;
    return pz * FqElement::x(ctx).inverse();
}

struct SubfieldReduction {
    FqElement r;  ///< monic of degree n-2
    FqElement u;  ///< s = u * r, u in F_{p^2}
    Integer u0, u1;  ///< u = u0 + u1 * Y
};

namespace detail {

/// Writes u in F_{p^2} as a + b*Y; returns nothing when u is outside F_{p^2}.
inline std::optional<std::pair<Integer, Integer>> fp2_coords(const FqElement& u, const FqElement& y) {
    const Integer& p = u.ctx()->p;
    // pick two coordinates where (1, Y) are independent
    const auto yc = y.coeffs(), uc = u.coeffs();
    for (std::size_t j = 1; j < yc.size(); ++j) {
        if (yc[j] == 0) continue;
        Integer b = mod(uc[j] * inv_mod(yc[j], p), p);
        Integer a = mod(uc[0] - b * yc[0], p);
        if (FqElement::from_int(u.ctx(), a) + y.scaled(b) == u) return std::make_pair(a, b);
        return std::nullopt;
    }
    return std::nullopt;
}

inline FqElement make_monic_at(const FqElement& r, int deg) {
    const Integer lead = r.coeff(static_cast<std::size_t>(deg));
    if (lead == 0 || r.degree() != deg) throw std::domain_error("degenerate target, re-randomize");
    return r.scaled(inv_mod(lead, r.ctx()->p));
}

}  // namespace detail

/// Quadratic-subfield simplification: s = u * r with u in F_{p^2} and r monic
/// of degree n-2. Divides by the X^(m-1) coordinate (additive) or the
/// constant coordinate (twisted) of s over F_{p^2}.
inline SubfieldReduction subfield_reduce(const FqElement& s, const TowerForm& tower) {
    const FieldCtxPtr& ctx = s.ctx();
    const int n = ctx->n;
    if (n < 4 || n % 2 != 0) throw std::domain_error("subfield reduction needs even n >= 4");
    if (s.is_zero()) throw std::domain_error("cannot reduce zero");
    const int m = n / 2;
    const Integer& p = ctx->p;
    const FqElement y = tower_generator(ctx, tower);
    const FqElement xe = FqElement::x(ctx);

    // columns: X^i (i < m), then Y X^i (i < m)
    std::vector<FqElement> basis;
    FqElement xi = FqElement::one(ctx);
    for (int i = 0; i < m; ++i, xi = xi * xe) basis.push_back(xi);
    xi = FqElement::one(ctx);
    for (int i = 0; i < m; ++i, xi = xi * xe) basis.push_back(y * xi);
    std::vector<std::vector<Integer>> a(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n)));
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto c = basis[col].coeffs();
        for (std::size_t row = 0; row < c.size(); ++row) a[row][col] = c[row];
    }
    auto coords = solve_mod_p(a, s.coeffs(), p);
    if (!coords) throw std::domain_error("tower basis is singular");

    const std::size_t k = tower.variant == TowerVariant::Additive ? static_cast<std::size_t>(m - 1) : 0;
    Integer a0 = (*coords)[k], a1 = (*coords)[k + static_cast<std::size_t>(m)];
    FqElement ulead = FqElement::from_int(ctx, a0) + y.scaled(a1);
    if (ulead.is_zero()) throw std::domain_error("degenerate target, re-randomize");

    FqElement r = detail::make_monic_at(s * ulead.inverse(), n - 2);
    FqElement u = s * r.inverse();
    auto uc = detail::fp2_coords(u, y);
    if (!uc) throw std::logic_error("subfield cofactor outside F_{p^2}");
    return {r, u, uc->first, uc->second};
}

/// Generic version for any m | n: finds u in F_{p^m} such that u * s has
/// zero coefficients at X^(n-1) .. X^(n-m+1) and a one at X^(n-m).
inline std::pair<FqElement, FqElement> subfield_reduce_general(const FqElement& s, int m) {
    const FieldCtxPtr& ctx = s.ctx();
    const int n = ctx->n;
    if (m < 1 || m >= n || n % m != 0) throw std::domain_error("m must be a proper divisor of n");
    if (s.is_zero()) throw std::domain_error("cannot reduce zero");
    const Integer& p = ctx->p;
    const auto um = static_cast<std::size_t>(m);

    // Relative traces Tr_{p^n/p^m}(X^i) span F_{p^m}; keep m independent ones.
    const Integer q = pow(p, static_cast<unsigned long>(m));
    std::vector<FqElement> span_elems;
    std::vector<std::vector<Integer>> rows;
    FqElement xi = FqElement::one(ctx);
    for (int i = 0; i < n && span_elems.size() < um; ++i, xi = xi * FqElement::x(ctx)) {
        FqElement tr = FqElement::zero(ctx), conj = xi;
        for (int j = 0; j < n / m; ++j, conj = conj.pow(q)) tr = tr + conj;
        auto trial = rows;
        trial.push_back(tr.coeffs());
        if (rank_mod_p(trial, p) == trial.size()) {
            rows = std::move(trial);
            span_elems.push_back(tr);
        }
    }
    if (span_elems.size() != um) throw std::logic_error("trace image has wrong dimension");

    std::vector<std::vector<Integer>> a(um, std::vector<Integer>(um));
    std::vector<Integer> b(um);
    for (std::size_t col = 0; col < um; ++col) {
        const auto c = (span_elems[col] * s).coeffs();
        for (std::size_t row = 0; row < um; ++row) a[row][col] = c[static_cast<std::size_t>(n) - 1 - row];
    }
    b[um - 1] = 1;
    auto sol = solve_mod_p(a, b, p);
    if (!sol) throw std::domain_error("degenerate target, re-randomize");
    FqElement u = FqElement::zero(ctx);
    for (std::size_t i = 0; i < um; ++i) u = u + span_elems[i].scaled((*sol)[i]);
    return {u * s, u};
}

}  // namespace nfsboot

#endif  // NFSBOOT_FIELDS_HPP
