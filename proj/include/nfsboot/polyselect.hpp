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

// Polynomial selection: JLSV1, generalized Joux-Lercier and Conjugation.

#ifndef NFSBOOT_POLYSELECT_HPP
#define NFSBOOT_POLYSELECT_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nfsboot/arith.hpp"
#include "nfsboot/common.hpp"
#include "nfsboot/fields.hpp"
#include "nfsboot/lattice.hpp"

namespace nfsboot {

struct SelectionAux {
    std::optional<Integer> y, u, v;
    std::optional<int> d;
    std::optional<IntPoly> py;      ///< Conjugation: Y^2 + a Y + b
    std::optional<IntPoly> f0, f1;  ///< JLSV1: f0, f1; Conjugation: g0, g1

    friend bool operator==(const SelectionAux&, const SelectionAux&) = default;
};

struct Selection {
    Integer p;
    int n = 0;
    SelectionMethod method = SelectionMethod::Conj;
    IntPoly f, g;
    ModPoly psi;
    SelectionAux aux;
    std::uint64_t seed = 0;
    std::optional<TowerForm> tower;

    FieldCtxPtr field(std::optional<Integer> ell = std::nullopt) const { return make_field(psi, ell, tower); }
};

struct SelectOptions {
    std::uint64_t seed = 0;
    std::size_t budget = 10000;  ///< candidates tried before giving up
};

namespace detail {

/// Coefficients in [-bound, bound]; monic when requested.
inline IntPoly small_poly(std::mt19937_64& rng, int deg, bool monic, int bound = 1) {
    std::uniform_int_distribution<int> coin(-bound, bound);
    std::vector<Integer> c(static_cast<std::size_t>(deg + 1));
    for (auto& v : c) v = coin(rng);
    if (monic) c.back() = 1;
    else if (c.back() == 0) c.back() = coin(rng) >= 0 ? 1 : -1;
    return IntPoly(std::move(c));
}

inline IntPoly mod_to_int(const ModPoly& a) { return a.lift(); }

/// Centered lift into (-p/2, p/2].
inline IntPoly centered(const ModPoly& a) {
    std::vector<Integer> c = a.coeffs();
    const Integer half = a.modulus() / 2;
    for (auto& v : c)
        if (v > half) v -= a.modulus();
    return IntPoly(std::move(c));
}

/// Candidate P_y = Y^2 + aY + b, smallest |a| + |b| first, irreducible over Q.
inline std::vector<std::pair<long, long>> quadratic_family() {
    std::vector<std::pair<long, long>> out;
    for (long w = 1; w <= 8; ++w)
        for (long a = 0; a <= w; ++a)
            for (long sa : {1L, -1L})
                for (long sb : {-1L, 1L}) {
                    if (a == 0 && sa < 0) continue;
                    const long aa = sa * a, bb = sb * (w - a);
                    if (bb == 0) continue;
                    const long disc = aa * aa - 4 * bb;
                    if (disc >= 0) {
                        long r = static_cast<long>(std::sqrt(static_cast<double>(disc)));
                        while (r * r > disc) --r;
                        while ((r + 1) * (r + 1) <= disc) ++r;
                        if (r * r == disc) continue;
                    }
                    out.emplace_back(aa, bb);
                }
    return out;
}

inline bool accept_over_q(const IntPoly& f, const Integer& p) {
    const Integer extra[] = {p};
    return irreducible_over_q(f, extra) != IrreducibilityWitness::Reducible;
}

}  // namespace detail

/// JLSV1. Without (f0, f1) a family with coefficients in {-1, 0, 1} is
/// drawn from the seed.
inline Selection select_jlsv1(const Integer& p, int n, const SelectOptions& opt = {},
                              std::optional<IntPoly> f0_in = std::nullopt, std::optional<IntPoly> f1_in = std::nullopt) {
    if (!is_probable_prime(p)) throw std::domain_error("p must be prime");
    if (n < 2) throw std::domain_error("n must be at least 2");
    const bool fixed = f0_in.has_value();
    if (fixed != f1_in.has_value()) throw std::invalid_argument("give both f0 and f1 or neither");
    if (fixed && (f0_in->degree() != n || !f0_in->is_monic() || f1_in->degree() >= n || f1_in->is_zero()))
        throw std::invalid_argument("need monic deg f0 = n and 0 <= deg f1 < n");

    std::mt19937_64 rng(opt.seed);
    const Integer y_start = ceil_sqrt(p);
    std::size_t tried = 0;
    while (tried < opt.budget) {
        IntPoly f0 = fixed ? *f0_in : detail::small_poly(rng, n, true);
        IntPoly f1 = fixed ? *f1_in : detail::small_poly(rng, static_cast<int>(rng() % static_cast<unsigned>(n)), false);
        const std::size_t per_family = fixed ? opt.budget : 64;
        for (std::size_t k = 0; k < per_family && tried < opt.budget; ++k, ++tried) {
            const Integer y = y_start + static_cast<unsigned long>(k);
            IntPoly f = f0 + f1 * y;
            ModPoly fp(f, p);
            if (!is_irreducible_mod_p(fp)) continue;
            Integer ym = mod(y, p);
            if (ym == 0) continue;
            RationalPair uv;
            try {
                uv = rational_reconstruction(ym, p);
            } catch (const std::domain_error&) {
                continue;
            }
            IntPoly g = f0 * uv.v + f1 * uv.u;
            Selection s;
            s.p = p;
            s.n = n;
            s.method = SelectionMethod::Jlsv1;
            s.f = f;
            s.g = g;
            s.psi = fp.monic();
            s.aux.y = y;
            s.aux.u = uv.u;
            s.aux.v = uv.v;
            s.aux.f0 = f0;
            s.aux.f1 = f1;
            s.seed = opt.seed;
            if (!(poly_gcd_mod_p(fp, ModPoly(g, p)) == s.psi)) continue;
            return s;
        }
    }
    throw std::runtime_error("JLSV1 selection budget exhausted");
}

/// JLSV1 with f0 = P_z^2 + a X P_z - 2 X^2 and f1 = X^2, P_z = X^(n/2) + 1, so
/// psi is reciprocal and has a twisted quadratic-subfield tower.
inline Selection select_jlsv1_with_subfield_tower(const Integer& p, int n, const SelectOptions& opt = {}) {
    if (n < 4 || n % 2 != 0) throw std::domain_error("subfield tower needs even n >= 4");
    const int m = n / 2;
    IntPoly pz = IntPoly::monomial(1, static_cast<std::size_t>(m)) + IntPoly{1};
    const IntPoly x{0, 1};
    std::size_t tried = 0;
    for (long k = 1; tried < opt.budget; ++k) {
        const long a = (k % 2 ? 1 : -1) * ((k + 1) / 2);
        IntPoly f0 = pz * pz + IntPoly::constant(a) * x * pz - IntPoly::constant(2) * x * x;
        SelectOptions o = opt;
        o.budget = std::min<std::size_t>(256, opt.budget - tried);
        tried += o.budget;
        Selection s;
        try {
            s = select_jlsv1(p, n, o, f0, x * x);
        } catch (const std::runtime_error&) {
            continue;
        }
        s.tower = detect_tower(s.psi);
        if (s.tower) return s;
    }
    throw std::runtime_error("JLSV1 tower selection budget exhausted");
}

/// Generalized Joux-Lercier. f is monic of degree d+1 with coefficients in {-1, 0, 1},
/// widened one step every 500 draws since that family is tiny for small d.
inline Selection select_gjl(const Integer& p, int n, int d, const SelectOptions& opt = {},
                            std::optional<IntPoly> f_in = std::nullopt) {
    if (!is_probable_prime(p)) throw std::domain_error("p must be prime");
    if (n < 2) throw std::domain_error("n must be at least 2");
    if (d < n) throw std::domain_error("gJL needs d >= n");
    if (f_in && f_in->degree() != d + 1) throw std::invalid_argument("f must have degree d+1");
    std::mt19937_64 rng(opt.seed);
    for (std::size_t tried = 0; tried < opt.budget; ++tried) {
        const int bound = 1 + static_cast<int>(std::min<std::size_t>(tried / 500, 4));
        IntPoly f = f_in ? *f_in : detail::small_poly(rng, d + 1, true, bound);
        if (f.coeff(0) == 0) continue;
        ModPoly fp(f, p);
        if (!is_squarefree_mod_p(fp)) {
            if (f_in) break;
            continue;
        }
        auto facs = irreducible_factors_of_degree(fp, n, rng);
        if (facs.empty()) {
            if (f_in) break;
            continue;
        }
        if (!f_in && irreducible_over_q(f, {}) != IrreducibilityWitness::Proven) continue;
        for (const ModPoly& psi : facs) {
            const auto dim = static_cast<std::size_t>(d + 1);
            IntMatrix m(dim, dim);
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) m(i, i) = p;
            for (std::size_t j = 0; j + static_cast<std::size_t>(n) < dim; ++j)
                for (int k = 0; k <= n; ++k) m(static_cast<std::size_t>(n) + j, j + static_cast<std::size_t>(k)) = psi.coeff(static_cast<std::size_t>(k));
            LLLResult red = lll_reduce(m);
            for (std::size_t row : red.rows_by_length()) {
                IntPoly g(red.basis.row_vector(row));
                if (g.degree() != d) continue;
                if (g.lead() < 0) g = -g;
                if (!(poly_gcd_mod_p(fp, ModPoly(g, p)) == psi)) continue;
                if (!detail::accept_over_q(g, p)) continue;
                Selection s;
                s.p = p;
                s.n = n;
                s.method = SelectionMethod::Gjl;
                s.f = f;
                s.g = g;
                s.psi = psi;
                s.aux.d = d;
                s.seed = opt.seed;
                return s;
            }
        }
        if (f_in) break;
    }
    throw std::runtime_error("gJL selection budget exhausted");
}

namespace detail {

/// f = Res_Y(Y^2 + aY + b, g0 + Y g1) = g0^2 - a g0 g1 + b g1^2.
inline IntPoly conjugation_resultant(const IntPoly& g0, const IntPoly& g1, const IntPoly& py) {
    return g0 * g0 - py.coeff(1) * (g0 * g1) + py.coeff(0) * (g1 * g1);
}

/// Finishes a Conjugation selection for fixed (g0, g1, P_y, y).
inline std::optional<Selection> conjugation_from(const Integer& p, int n, const IntPoly& g0, const IntPoly& g1,
                                                 const IntPoly& py, const Integer& y, std::uint64_t seed) {
    ModPoly psi = ModPoly(g0, p) + ModPoly(g1, p).scaled(y);
    if (psi.degree() != n || !is_irreducible_mod_p(psi)) return std::nullopt;
    if (y == 0) return std::nullopt;
    RationalPair uv;
    try {
        uv = rational_reconstruction(y, p);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    Selection s;
    s.p = p;
    s.n = n;
    s.method = SelectionMethod::Conj;
    s.f = conjugation_resultant(g0, g1, py);
    s.g = g0 * uv.v + g1 * uv.u;
    s.psi = psi.monic();
    s.aux.y = y;
    s.aux.u = uv.u;
    s.aux.v = uv.v;
    s.aux.py = py;
    s.aux.f0 = g0;
    s.aux.f1 = g1;
    s.seed = seed;
    if (!(poly_gcd_mod_p(ModPoly(s.f, p), ModPoly(s.g, p)) == s.psi)) return std::nullopt;
    if (!accept_over_q(s.f, p)) return std::nullopt;
    return s;
}

}  // namespace detail

/// Conjugation with P_y from a fixed small family and (g0, g1) drawn from the seed.
inline Selection select_conjugation(const Integer& p, int n, const SelectOptions& opt = {}) {
    if (!is_probable_prime(p) || p == 2) throw std::domain_error("p must be an odd prime");
    if (n < 2) throw std::domain_error("n must be at least 2");
    std::mt19937_64 rng(opt.seed);
    const auto family = detail::quadratic_family();
    std::size_t tried = 0;
    while (tried < opt.budget) {
        IntPoly g0 = detail::small_poly(rng, n, true);
        IntPoly g1 = detail::small_poly(rng, static_cast<int>(rng() % static_cast<unsigned>(n)), false);
        for (const auto& [a, b] : family) {
            if (++tried > opt.budget) break;
            for (const Integer& y : quadratic_roots_mod_p(Integer(a), Integer(b), p)) {
                IntPoly py{b, a, 1};
                if (auto s = detail::conjugation_from(p, n, g0, g1, py, y, opt.seed)) return *s;
            }
        }
    }
    throw std::runtime_error("Conjugation selection budget exhausted");
}

/// Conjugation with psi of quadratic-subfield tower shape. Twisted family:
/// g0 = P_z^2 + a X P_z + b X^2, g1 = c X P_z + e X^2 (P_z = X^2 + 1 for n = 4,
/// so psi is reciprocal). Additive family: g0 = P_z^2 + a P_z + b, g1 = c P_z + e.
inline Selection select_conjugation_with_subfield_tower(const Integer& p, int n, const SelectOptions& opt = {},
                                                        TowerVariant variant = TowerVariant::Twisted) {
    if (!is_probable_prime(p) || p == 2) throw std::domain_error("p must be an odd prime");
    if (n < 4 || n % 2 != 0) throw std::domain_error("subfield tower needs even n >= 4");
    const int m = n / 2;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long> small(-2, 2);
    const auto family = detail::quadratic_family();
    const IntPoly x{0, 1};
    for (std::size_t tried = 0; tried < opt.budget;) {
        IntPoly pz = tried < 16 ? IntPoly::monomial(1, static_cast<std::size_t>(m)) + IntPoly{1}
                                : detail::small_poly(rng, m, true);
        const long a = small(rng), b = small(rng), c = small(rng) ? small(rng) : 1, e = small(rng);
        if (c == 0) continue;
        IntPoly g0, g1;
        if (variant == TowerVariant::Twisted) {
            g0 = pz * pz + IntPoly::constant(a) * x * pz + IntPoly::constant(b) * x * x;
            g1 = IntPoly::constant(c) * x * pz + IntPoly::constant(e) * x * x;
        } else {
            g0 = pz * pz + IntPoly::constant(a) * pz + IntPoly::constant(b);
            g1 = IntPoly::constant(c) * pz + IntPoly::constant(e);
        }
        for (const auto& [pa, pb] : family) {
            if (++tried > opt.budget) break;
            for (const Integer& y : quadratic_roots_mod_p(Integer(pa), Integer(pb), p)) {
                IntPoly py{pb, pa, 1};
                auto s = detail::conjugation_from(p, n, g0, g1, py, y, opt.seed);
                if (!s) continue;
                s->tower = detect_tower(s->psi);
                if (s->tower) return *s;
            }
        }
    }
    throw std::runtime_error("Conjugation tower selection budget exhausted");
}

struct SelectionReport {
    bool ok = true;
    std::vector<std::string> failures;
    int deg_f = 0, deg_g = 0;
    std::size_t f_bits = 0, g_bits = 0;
    IrreducibilityWitness f_witness = IrreducibilityWitness::Reducible;
    IrreducibilityWitness g_witness = IrreducibilityWitness::Reducible;
    bool table_conformant = true;

    void fail(std::string why) {
        ok = false;
        failures.push_back(std::move(why));
    }
};

/// Re-checks every Selection invariant and the degree / coefficient-size
/// profile of the method.
inline SelectionReport verify_selection(const Selection& sel) {
    SelectionReport r;
    const Integer& p = sel.p;
    r.deg_f = sel.f.degree();
    r.deg_g = sel.g.degree();
    r.f_bits = bit_length(sel.f.inf_norm());
    r.g_bits = bit_length(sel.g.inf_norm());
    if (!is_probable_prime(p)) {
        r.fail("p is not prime");
        return r;
    }
    if (sel.psi.modulus() != p) r.fail("psi defined modulo a different prime");
    if (sel.psi.degree() != sel.n || !sel.psi.is_monic()) r.fail("psi not monic of degree n");
    else if (!is_irreducible_mod_p(sel.psi)) r.fail("psi reducible modulo p");
    if (sel.f.is_zero() || sel.g.is_zero()) {
        r.fail("zero polynomial");
        return r;
    }
    if (!sel.f.is_monic()) r.fail("f not monic");
    if (!(poly_gcd_mod_p(ModPoly(sel.f, p), ModPoly(sel.g, p)) == sel.psi)) r.fail("gcd(f, g) mod p differs from psi");
    const Integer extra[] = {p};
    r.f_witness = irreducible_over_q(sel.f, extra);
    r.g_witness = irreducible_over_q(sel.g, extra);
    if (r.f_witness == IrreducibilityWitness::Reducible) r.fail("f reducible over Q");
    if (r.g_witness == IrreducibilityWitness::Reducible) r.fail("g reducible over Q");

    const double half_p = static_cast<double>(bit_length(p)) / 2.0;
    auto conform = [&](bool cond, const std::string& what) {
        if (!cond) {
            r.table_conformant = false;
            r.fail(what);
        }
    };
    switch (sel.method) {
        case SelectionMethod::Jlsv1:
            conform(r.deg_f == sel.n && r.deg_g == sel.n, "JLSV1 degrees must both equal n");
            conform(static_cast<double>(r.f_bits) <= half_p + 4, "JLSV1 f coefficients exceed O(sqrt p)");
            conform(static_cast<double>(r.g_bits) <= half_p + 4, "JLSV1 g coefficients exceed O(sqrt p)");
            break;
        case SelectionMethod::Gjl: {
            const int d = sel.aux.d.value_or(r.deg_g);
            conform(r.deg_f == d + 1 && r.deg_g == d && d >= sel.n, "gJL needs deg f = d+1 > deg g = d >= n");
            conform(r.f_bits <= 8, "gJL f coefficients not small");
            const double target = static_cast<double>(sel.n) * static_cast<double>(bit_length(p)) / (d + 1);
            conform(static_cast<double>(r.g_bits) <= target + d + 4, "gJL g coefficients exceed O(Q^(1/(d+1)))");
            break;
        }
        case SelectionMethod::Conj:
            conform(r.deg_f == 2 * sel.n && r.deg_g == sel.n, "Conjugation needs deg f = 2n, deg g = n");
            conform(r.f_bits <= 8, "Conjugation f coefficients not small");
            conform(static_cast<double>(r.g_bits) <= half_p + 4, "Conjugation g coefficients exceed O(sqrt p)");
            if (sel.aux.py && sel.aux.f0 && sel.aux.f1 &&
                !(detail::conjugation_resultant(*sel.aux.f0, *sel.aux.f1, *sel.aux.py) == sel.f))
                r.fail("f differs from Res_Y(P_y, g0 + Y g1)");
            break;
    }
    if (sel.tower && !(sel.tower->expand() == sel.psi)) r.fail("tower form does not expand to psi");
    return r;
}

}  // namespace nfsboot

#endif  // NFSBOOT_POLYSELECT_HPP
