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

#include <random>

#include <gtest/gtest.h>

#include "nfsboot/arith.hpp"

using namespace nfsboot;

namespace {

Integer big(std::mt19937_64& rng, unsigned bits) {
    Integer r = 0;
    for (unsigned b = 0; b < bits; b += 32) r = (r << 32) + static_cast<unsigned long>(rng() & 0xffffffffu);
    r >>= static_cast<unsigned long>((bits + 31) / 32 * 32 - bits);
    return (rng() & 1) ? Integer(-r) : r;
}

IntPoly random_poly(std::mt19937_64& rng, int deg, unsigned bits, bool monic = false) {
    std::vector<Integer> c(static_cast<std::size_t>(deg + 1));
    for (auto& v : c) v = big(rng, bits);
    if (monic) c.back() = 1;
    while (c.back() == 0) c.back() = 1;
    return IntPoly(c);
}

/// Determinant of the Sylvester matrix by Gaussian elimination over Q.
Integer sylvester_resultant(const IntPoly& f, const IntPoly& g) {
    const int m = f.degree(), n = g.degree();
    const int dim = m + n;
    std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[i][i + j] = Rational(f.coeff(static_cast<std::size_t>(m - j)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[n + i][i + j] = Rational(g.coeff(static_cast<std::size_t>(n - j)));
    Rational det = 1;
    for (int c = 0; c < dim; ++c) {
        int piv = -1;
        for (int r = c; r < dim; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < dim; ++r) {
            Rational k = a[r][c] / a[c][c];
            for (int j = c; j < dim; ++j) a[r][j] -= k * a[c][j];
        }
    }
    return det.get_num();
}

std::vector<ModPoly> all_monic(const Integer& p, int deg) {
    std::vector<ModPoly> out;
    const long q = p.get_si();
    long count = 1;
    for (int i = 0; i < deg; ++i) count *= q;
    for (long k = 0; k < count; ++k) {
        std::vector<Integer> c(static_cast<std::size_t>(deg + 1));
        long t = k;
        for (int i = 0; i < deg; ++i) {
            c[static_cast<std::size_t>(i)] = t % q;
            t /= q;
        }
        c.back() = 1;
        out.emplace_back(c, p);
    }
    return out;
}

bool brute_irreducible(const ModPoly& a) {
    for (int d = 1; 2 * d <= a.degree(); ++d)
        for (const auto& g : all_monic(a.modulus(), d))
            if ((a % g).is_zero()) return false;
    return true;
}

}  // namespace

TEST(IntPoly, BasicArithmetic) {
    IntPoly a{1, 2, 3}, b{-1, 0, 0, 4};
    EXPECT_EQ(a.degree(), 2);
    EXPECT_EQ((a + b), (IntPoly{0, 2, 3, 4}));
    EXPECT_EQ((a * b), (IntPoly{-1, -2, -3, 4, 8, 12}));
    EXPECT_EQ((a - a).degree(), -1);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a.eval(Integer(2)), 17);
    EXPECT_EQ(a.derivative(), (IntPoly{2, 6}));
    EXPECT_EQ((IntPoly{6, 4, 2}).content(), 2);
    EXPECT_EQ(b.inf_norm(), 4);
    EXPECT_EQ((IntPoly{2, 0, 1}).to_string(), "x^2 + 2");
}

TEST(Resultant, MatchesSylvesterDeterminant) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const int df = 1 + static_cast<int>(rng() % 6), ds = static_cast<int>(rng() % 6);
        IntPoly f = random_poly(rng, df, 1 + rng() % 40, rng() & 1);
        IntPoly s = random_poly(rng, ds, 1 + rng() % 40);
        if (ds == 0) {
            EXPECT_EQ(resultant(f, s), pow(s.coeff(0), static_cast<unsigned long>(df)));
            continue;
        }
        EXPECT_EQ(resultant(f, s), sylvester_resultant(f, s)) << f << " | " << s;
    }
}

TEST(Resultant, Properties) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        IntPoly f = random_poly(rng, 1 + rng() % 5, 20, true);
        IntPoly g = random_poly(rng, 1 + rng() % 4, 20);
        IntPoly h = random_poly(rng, 1 + rng() % 4, 20);
        EXPECT_EQ(resultant(f, g * h), resultant(f, g) * resultant(f, h));
        // monic linear factor: Res(x - r, s) = s(r)
        Integer r = big(rng, 30);
        IntPoly lin{0, 1};
        lin -= IntPoly::constant(r);
        EXPECT_EQ(resultant(lin, g), g.eval(r));
        // symmetry up to sign
        const int sign = (f.degree() * g.degree()) % 2 ? -1 : 1;
        EXPECT_EQ(resultant(g, f), sign * resultant(f, g));
        EXPECT_LE(abs(resultant(f, g)), kalkbrener_bound(f, g));
    }
}

TEST(Resultant, SharedRootGivesZero) {
    IntPoly common{-3, 1};
    EXPECT_EQ(resultant(common * IntPoly{1, 0, 1}, common * IntPoly{2, 5}), 0);
}

TEST(Kalkbrener, Kappa) {
    // kappa(n, m) = C(n+m, n) C(n+m-1, n)
    EXPECT_EQ(kalkbrener_kappa(2, 1), 3);
    EXPECT_EQ(kalkbrener_kappa(4, 3), 35 * 15);
    EXPECT_EQ(kalkbrener_kappa(3, 0), 1);
    EXPECT_EQ(kalkbrener_kappa(0, 5), 1);
    for (unsigned long n = 1; n < 8; ++n)
        for (unsigned long m = 1; m < 8; ++m) EXPECT_EQ(kalkbrener_kappa(n, m), binomial(n + m, n) * binomial(n + m - 1, n));
}

TEST(Kalkbrener, BoundHoldsOnExtremeInputs) {
    // all coefficients at the bound maximize the resultant for small degrees
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 5; ++m) {
            std::vector<Integer> fc(static_cast<std::size_t>(n + 1), 7), sc(static_cast<std::size_t>(m + 1), -5);
            for (std::size_t i = 0; i < sc.size(); i += 2) sc[i] = 5;
            IntPoly f(fc), s(sc);
            EXPECT_LE(abs(resultant(f, s)), kalkbrener_bound(f, s));
        }
}

TEST(RationalReconstruction, ConstructThenInvert) {
    // below sqrt(p)/2 the pair is unique up to a common factor
    std::mt19937_64 rng(3);
    for (unsigned bits : {20u, 64u, 200u}) {
        const Integer p = next_prime(pow(Integer(2), bits) + Integer(static_cast<unsigned long>(rng() % 1000)));
        const Integer lim = floor_sqrt(p) / 2;
        for (int i = 0; i < 100; ++i) {
            Integer u = mod(big(rng, bits / 2), lim);
            Integer v = 1 + mod(big(rng, bits / 2), lim - 1);
            if (u == 0 || gcd(u, v) != 1) continue;
            if (rng() & 1) u = -u;
            const Integer y = mod(u * inv_mod(v, p), p);
            RationalPair got = rational_reconstruction(y, p);
            EXPECT_EQ(got.u * v, u * got.v);
            EXPECT_EQ(mod(got.u - got.v * y, p), 0);
        }
    }
}

TEST(RationalReconstruction, SizeBoundForArbitraryInput) {
    std::mt19937_64 rng(4);
    const Integer p = next_prime(pow(Integer(2), 120));
    const Integer bound = ceil_sqrt(p);
    for (int i = 0; i < 200; ++i) {
        Integer y = 1 + mod(big(rng, 120), p - 1);
        RationalPair r = rational_reconstruction(y, p);
        EXPECT_LE(abs(r.u), bound);
        EXPECT_LE(r.v, bound);
        EXPECT_GT(r.v, 0);
        EXPECT_EQ(mod(r.u - r.v * y, p), 0);
    }
    EXPECT_THROW(rational_reconstruction(Integer(0), p), std::domain_error);
    EXPECT_THROW(rational_reconstruction(p, p), std::domain_error);
}

TEST(ModPoly, DivisionIdentity) {
    std::mt19937_64 rng(5);
    const Integer p(1000003);
    for (int i = 0; i < 100; ++i) {
        ModPoly a(random_poly(rng, 1 + rng() % 8, 40), p), b(random_poly(rng, 1 + rng() % 5, 40), p);
        if (b.is_zero()) continue;
        auto [q, r] = divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(ModPoly, InverseModIrreducible) {
    const Integer p(101);
    ModPoly m({Integer(1), Integer(1), Integer(0), Integer(1)}, p);  // x^3 + x + 1
    ASSERT_TRUE(brute_irreducible(m));
    for (long a0 = 1; a0 < 20; ++a0) {
        ModPoly a({Integer(a0), Integer(3), Integer(a0 * 7)}, p);
        ModPoly inv = poly_invmod(a, m);
        EXPECT_TRUE(poly_mulmod(a, inv, m).is_one());
    }
    ModPoly reducible({Integer(-1), Integer(0), Integer(1)}, p);  // (x-1)(x+1)
    EXPECT_THROW(poly_invmod(ModPoly({Integer(-1), Integer(1)}, p), reducible), NotInvertible);
}

TEST(ModPoly, IrreducibilityExhaustiveSmallFields) {
    for (long q : {2L, 3L, 5L}) {
        const Integer p(q);
        for (int d = 1; d <= (q == 5 ? 4 : 5); ++d)
            for (const auto& a : all_monic(p, d)) EXPECT_EQ(is_irreducible_mod_p(a), brute_irreducible(a)) << a.lift();
    }
}

TEST(ModPoly, CountOfIrreduciblesMatchesNecklaceFormula) {
    // number of monic irreducibles of degree 4 over F_3: (81 - 9) / 4 = 18
    int count = 0;
    for (const auto& a : all_monic(Integer(3), 4)) count += is_irreducible_mod_p(a);
    EXPECT_EQ(count, 18);
}

TEST(ModPoly, DistinctDegreeFactorizationReassembles) {
    std::mt19937_64 rng(6);
    const Integer p(10007);
    for (int i = 0; i < 30; ++i) {
        ModPoly a = ModPoly(random_poly(rng, 2 + rng() % 10, 30, true), p).monic();
        if (!is_squarefree_mod_p(a)) continue;
        ModPoly prod = ModPoly::one(p);
        for (const auto& [k, g] : distinct_degree_factorization(a)) {
            EXPECT_EQ(g.degree() % k, 0);
            for (const auto& h : equal_degree_factorization(g, k, rng)) {
                EXPECT_EQ(h.degree(), k);
                EXPECT_TRUE(is_irreducible_mod_p(h));
            }
            prod = prod * g;
        }
        EXPECT_EQ(prod, a);
    }
}

TEST(ModPoly, RootsMatchExhaustiveSearch) {
    std::mt19937_64 rng(7);
    const Integer p(211);
    for (int i = 0; i < 40; ++i) {
        ModPoly a(random_poly(rng, 1 + rng() % 6, 12), p);
        if (a.degree() < 1) continue;
        std::vector<Integer> want;
        for (long x = 0; x < 211; ++x)
            if (a.eval(Integer(x)) == 0) want.emplace_back(x);
        EXPECT_EQ(roots_mod_p(a, rng), want) << a.lift();
    }
}

TEST(ModPoly, QuadraticRoots) {
    const Integer p(10007);
    auto r = quadratic_roots_mod_p(Integer(-5), Integer(6), p);  // (y-2)(y-3)
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], 2);
    EXPECT_EQ(r[1], 3);
    EXPECT_TRUE(quadratic_roots_mod_p(Integer(0), Integer(1), Integer(7)).empty());  // y^2 + 1 over F_7
    EXPECT_EQ(quadratic_roots_mod_p(Integer(-2), Integer(1), p).size(), 1u);
}

TEST(IrreducibleOverQ, Witnesses) {
    EXPECT_EQ(irreducible_over_q(IntPoly{-2, 0, 1}), IrreducibilityWitness::Proven);
    EXPECT_EQ(irreducible_over_q(IntPoly{1, -1, 0, 0, 1}), IrreducibilityWitness::Proven);
    EXPECT_EQ(irreducible_over_q(IntPoly{-1, 0, 1}), IrreducibilityWitness::Reducible);
    EXPECT_EQ(irreducible_over_q(IntPoly{1, 1} * IntPoly{2, 0, 1}), IrreducibilityWitness::Reducible);
    EXPECT_EQ(irreducible_over_q(IntPoly{6, 3}), IrreducibilityWitness::Proven);
    // no linear factor and reducible modulo every prime: not provable either way
    EXPECT_EQ(irreducible_over_q(IntPoly{1, 0, 1} * IntPoly{2, 0, 1}), IrreducibilityWitness::Probable);
    // x^4 + 1 splits modulo every prime, so no degree argument proves it
    EXPECT_NE(irreducible_over_q(IntPoly{1, 0, 0, 0, 1}), IrreducibilityWitness::Reducible);
}

TEST(FrobeniusPower, MatchesRepeatedPowering) {
    const Integer p(13);
    ModPoly m({Integer(2), Integer(1), Integer(0), Integer(0), Integer(1)}, p);
    ModPoly x = ModPoly::x(p), acc = x;
    for (unsigned long k = 1; k <= 5; ++k) {
        acc = poly_powmod(acc, p, m);
        EXPECT_EQ(frobenius_power_of_x(m, k), acc);
    }
}
