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

#include "nfsboot/fields.hpp"
#include "nfsboot/reference.hpp"

using namespace nfsboot;

namespace {

ModPoly random_monic(std::mt19937_64& rng, const Integer& p, int deg) {
    std::vector<Integer> c(static_cast<std::size_t>(deg + 1));
    for (auto& v : c) v = mod(Integer(static_cast<unsigned long>(rng())), p);
    c.back() = 1;
    return ModPoly(c, p);
}

ModPoly random_irreducible(std::mt19937_64& rng, const Integer& p, int deg) {
    for (;;) {
        ModPoly a = random_monic(rng, p, deg);
        if (is_irreducible_mod_p(a)) return a;
    }
}

/// psi with the requested tower shape, built from a random irreducible P_y.
std::pair<ModPoly, TowerForm> random_tower(std::mt19937_64& rng, const Integer& p, int n, TowerVariant v) {
    const int m = n / 2;
    for (;;) {
        ModPoly py = random_irreducible(rng, p, 2);
        ModPoly pz = random_monic(rng, p, m);
        TowerForm t{v, py.coeff(1), py.coeff(0), pz};
        ModPoly psi = t.expand();
        if (is_irreducible_mod_p(psi)) return {psi, t};
    }
}

FqElement random_element(const FieldCtxPtr& ctx, std::mt19937_64& rng) {
    std::vector<Integer> c(static_cast<std::size_t>(ctx->n));
    for (auto& v : c) v = mod(Integer(static_cast<unsigned long>(rng())), ctx->p);
    return FqElement(ctx, c);
}

}  // namespace

TEST(Field, ContextValidation) {
    const Integer p(101);
    EXPECT_THROW(make_field(ModPoly({Integer(-1), Integer(0), Integer(1)}, p)), std::domain_error);
    EXPECT_THROW(make_field(ModPoly({Integer(1), Integer(0), Integer(1)}, Integer(100))), std::domain_error);
    // 101 = 1 mod 4 so x^2 + 1 splits; x^2 - 2 is irreducible (2 is a non-residue mod 101)
    ModPoly psi({Integer(-2), Integer(0), Integer(1)}, p);
    EXPECT_NO_THROW(make_field(psi));
    EXPECT_THROW(make_field(psi, Integer(7)), std::domain_error);  // 7 does not divide 101^2 - 1
    EXPECT_NO_THROW(make_field(psi, Integer(17)));                 // 101^2 - 1 = 10200 = 2^3 3 5^2 17
}

TEST(Field, QuadraticMultiplicationMatchesExplicitFormula) {
    // F_p[x]/(x^2 - a): (b0 + b1 x)(c0 + c1 x) = (b0 c0 + a b1 c1) + (b0 c1 + b1 c0) x
    const Integer p = next_prime(pow(Integer(2), 90));
    Integer a = 3;
    while (legendre(a, p) != -1) ++a;
    auto ctx = make_field(ModPoly({Integer(p - a), Integer(0), Integer(1)}, p));
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        FqElement b = random_element(ctx, rng), c = random_element(ctx, rng);
        const Integer b0 = b.coeff(0), b1 = b.coeff(1), c0 = c.coeff(0), c1 = c.coeff(1);
        FqElement prod = b * c;
        EXPECT_EQ(prod.coeff(0), mod(b0 * c0 + a * b1 * c1, p));
        EXPECT_EQ(prod.coeff(1), mod(b0 * c1 + b1 * c0, p));
        // Frobenius on F_{p^2} is conjugation x -> -x
        EXPECT_EQ(b.frobenius(), FqElement(ctx, std::vector<Integer>{b0, mod(-b1, p)}));
    }
}

TEST(Field, GroupLaws) {
    std::mt19937_64 rng(32);
    const Integer p(1000003);
    for (int n : {2, 3, 4, 5, 6}) {
        auto ctx = make_field(random_irreducible(rng, p, n));
        const Integer order_minus_1 = ctx->order() - 1;
        for (int i = 0; i < 10; ++i) {
            FqElement a = random_element(ctx, rng), b = random_element(ctx, rng), c = random_element(ctx, rng);
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ((a * b) * c, a * (b * c));
            if (a.is_zero()) continue;
            EXPECT_TRUE((a * a.inverse()).is_one());
            EXPECT_TRUE(a.pow(order_minus_1).is_one());
            EXPECT_EQ(a.pow(Integer(-3)), a.inverse().pow(Integer(3)));
            EXPECT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
            EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
            EXPECT_EQ(a.frobenius(static_cast<unsigned long>(n)), a);
        }
        EXPECT_THROW(FqElement::zero(ctx).inverse(), std::domain_error);
    }
}

TEST(Field, SubfieldMembership) {
    std::mt19937_64 rng(33);
    const Integer p(10007);
    auto ctx = make_field(random_irreducible(rng, p, 6));
    EXPECT_TRUE(is_in_proper_subfield(FqElement::from_int(ctx, 5), 1));
    EXPECT_FALSE(is_in_proper_subfield(FqElement::x(ctx), 3));
    // norms to F_{p^d}: w^((p^6 - 1)/(p^d - 1))
    FqElement w = random_element(ctx, rng);
    for (int d : {1, 2, 3}) {
        const Integer e = (ctx->order() - 1) / (pow(p, static_cast<unsigned long>(d)) - 1);
        EXPECT_TRUE(is_in_proper_subfield(w.pow(e), d));
    }
    EXPECT_THROW(is_in_proper_subfield(w, 4), std::domain_error);
}

TEST(Cyclotomic, ExplicitPolynomials) {
    const Integer p = next_prime(pow(Integer(10), 20));
    EXPECT_EQ(cyclotomic_value(1, p), p - 1);
    EXPECT_EQ(cyclotomic_value(2, p), p + 1);
    EXPECT_EQ(cyclotomic_value(3, p), p * p + p + 1);
    EXPECT_EQ(cyclotomic_value(4, p), p * p + 1);
    EXPECT_EQ(cyclotomic_value(6, p), p * p - p + 1);
    EXPECT_EQ(cyclotomic_value(12, p), pow(p, 4) - p * p + 1);
    // product over d | n of Phi_d(p) is p^n - 1
    for (int n = 1; n <= 12; ++n) {
        Integer prod = 1;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) prod *= cyclotomic_value(d, p);
        EXPECT_EQ(prod, pow(p, static_cast<unsigned long>(n)) - 1);
    }
}

TEST(Ell, LargestFactorOfCyclotomicValue) {
    std::mt19937_64 rng(34);
    const Integer p = next_prime(pow(Integer(2), 40));
    for (int n : {2, 3, 4}) {
        auto ctx = make_field(random_irreducible(rng, p, n));
        const Integer ell = find_ell(*ctx);
        EXPECT_TRUE(is_probable_prime(ell));
        EXPECT_EQ(cyclotomic_value(n, p) % ell, 0);
        for (int d = 1; d < n; ++d) EXPECT_NE((pow(p, static_cast<unsigned long>(d)) - 1) % ell, 0);
        auto ctx2 = assign_ell(ctx);
        EXPECT_EQ(*ctx2->ell, ell);
    }
}

TEST(Ell, SubfieldElementsVanishInTheEllPart) {
    std::mt19937_64 rng(35);
    const Integer p = next_prime(pow(Integer(2), 30));
    for (int n : {2, 3, 4, 6}) {
        auto ctx = assign_ell(make_field(random_irreducible(rng, p, n)));
        const Integer e = (ctx->order() - 1) / *ctx->ell;
        for (int d = 1; d < n; ++d) {
            if (n % d) continue;
            const Integer to_sub = (ctx->order() - 1) / (pow(p, static_cast<unsigned long>(d)) - 1);
            for (int i = 0; i < 5; ++i) {
                FqElement u = random_element(ctx, rng);
                if (u.is_zero()) continue;
                u = u.pow(to_sub);
                ASSERT_TRUE(is_in_proper_subfield(u, d));
                EXPECT_TRUE(u.pow(e).is_one());
            }
        }
    }
}

TEST(Tower, DetectsConstructedForms) {
    std::mt19937_64 rng(36);
    const Integer p = next_prime(pow(Integer(2), 50));
    for (int n : {4, 6, 8})
        for (auto v : {TowerVariant::Additive, TowerVariant::Twisted})
            for (int i = 0; i < 5; ++i) {
                auto [psi, built] = random_tower(rng, p, n, v);
                auto t = detect_tower(psi);
                ASSERT_TRUE(t.has_value()) << "n=" << n << " " << to_string(v);
                EXPECT_EQ(t->expand(), psi);
                EXPECT_TRUE(is_irreducible_mod_p(t->py()));
                EXPECT_EQ(t->pz.degree(), n / 2);
                // the generator Y is a root of P_y inside F_{p^n}
                auto ctx = make_field(psi, std::nullopt, *t);
                FqElement y = tower_generator(ctx, *t);
                EXPECT_TRUE((y * y + y.scaled(t->y1) + FqElement::from_int(ctx, t->y0)).is_zero());
                EXPECT_TRUE(is_in_proper_subfield(y, 2));
            }
}

TEST(Tower, RejectsGenericAndSmallDegrees) {
    std::mt19937_64 rng(37);
    const Integer p = next_prime(pow(Integer(2), 50));
    int found = 0;
    for (int i = 0; i < 20; ++i) found += detect_tower(random_irreducible(rng, p, 4)).has_value();
    EXPECT_EQ(found, 0);
    EXPECT_FALSE(detect_tower(random_irreducible(rng, p, 2)).has_value());
    EXPECT_FALSE(detect_tower(random_irreducible(rng, p, 3)).has_value());
}

TEST(Tower, ContextRejectsMismatchedForm) {
    std::mt19937_64 rng(38);
    const Integer p = next_prime(pow(Integer(2), 40));
    auto [psi, t] = random_tower(rng, p, 4, TowerVariant::Twisted);
    TowerForm bad = t;
    bad.y0 = mod(bad.y0 + 1, p);
    EXPECT_THROW(make_field(psi, std::nullopt, bad), std::domain_error);
}

TEST(SubfieldReduce, FactorsTargetOverQuadraticSubfield) {
    std::mt19937_64 rng(39);
    const Integer p = next_prime(pow(Integer(2), 60));
    for (int n : {4, 6})
        for (auto v : {TowerVariant::Additive, TowerVariant::Twisted}) {
            auto [psi, t] = random_tower(rng, p, n, v);
            auto ctx = make_field(psi, std::nullopt, t);
            for (int i = 0; i < 10; ++i) {
                FqElement s = random_element(ctx, rng);
                SubfieldReduction sr = subfield_reduce(s, t);
                EXPECT_EQ(sr.r.degree(), n - 2);
                EXPECT_EQ(sr.r.coeff(static_cast<std::size_t>(n - 2)), 1);
                EXPECT_TRUE(is_in_proper_subfield(sr.u, 2));
                EXPECT_EQ(sr.u * sr.r, s);
                FqElement y = tower_generator(ctx, t);
                EXPECT_EQ(FqElement::from_int(ctx, sr.u0) + y.scaled(sr.u1), sr.u);
            }
        }
}

TEST(SubfieldReduce, WorkedExampleRepresentative) {
    const auto& ex = reference::worked_examples()[2];
    Selection sel = ex.selection();
    ASSERT_TRUE(sel.tower.has_value());
    auto ctx = sel.field();
    FqElement s(ctx, reference::WorkedExample::ints(ex.s));
    SubfieldReduction sr = subfield_reduce(make_monic(s).monic, *sel.tower);
    const auto want = reference::WorkedExample::ints(ex.r);
    EXPECT_EQ(sr.r.coeffs()[0], want[0]);
    EXPECT_EQ(sr.r.coeffs()[1], want[1]);
    EXPECT_EQ(sr.r.coeffs()[2], 1);
}

TEST(SubfieldReduce, GeneralDivisors) {
    std::mt19937_64 rng(40);
    const Integer p(1000003);
    for (int n : {4, 6, 8})
        for (int m = 1; m < n; ++m) {
            if (n % m) continue;
            auto ctx = make_field(random_irreducible(rng, p, n));
            FqElement s = random_element(ctx, rng);
            auto [r, u] = subfield_reduce_general(s, m);
            EXPECT_EQ(r, u * s);
            EXPECT_TRUE(is_in_proper_subfield(u, m));
            EXPECT_EQ(r.degree(), n - m);
            EXPECT_EQ(r.coeff(static_cast<std::size_t>(n - m)), 1);
        }
}

TEST(LinearAlgebra, SolveAgainstSubstitution) {
    std::mt19937_64 rng(41);
    const Integer p(7919);
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
        std::vector<Integer> x(n), b(n, 0);
        for (auto& row : a)
            for (auto& v : row) v = static_cast<unsigned long>(rng() % 7919);
        for (auto& v : x) v = static_cast<unsigned long>(rng() % 7919);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) b[r] += a[r][c] * x[c];
            b[r] = mod(b[r], p);
        }
        auto got = solve_mod_p(a, b, p);
        if (rank_mod_p(a, p) < n) {
            EXPECT_FALSE(got.has_value());
            continue;
        }
        ASSERT_TRUE(got.has_value());
        EXPECT_EQ(*got, x);
    }
}

TEST(MakeMonic, RemovesLeadingUnit) {
    auto ctx = make_field(ModPoly({Integer(-2), Integer(0), Integer(1)}, Integer(101)));
    FqElement s(ctx, std::vector<Integer>{Integer(5), Integer(7)});
    MonicTarget mt = make_monic(s);
    EXPECT_EQ(mt.monic.coeff(1), 1);
    EXPECT_EQ(mt.monic.scaled(mt.lead), s);
    EXPECT_THROW(make_monic(FqElement::zero(ctx)), std::domain_error);
}
