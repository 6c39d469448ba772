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

#include <cmath>
#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "nfsboot/smooth.hpp"

using namespace nfsboot;

namespace {

Integer product_of(const std::vector<std::pair<long, unsigned long>>& pf) {
    Integer r = 1;
    for (auto [p, e] : pf) r *= pow(Integer(p), e);
    return r;
}

/// rho on [2, 3]: 1 - ln u + int_2^u ln(t - 1) / t dt, Simpson's rule.
double rho_2_to_3(double u) {
    const int n = 20000;
    const double h = (u - 2.0) / n;
    auto g = [](double t) { return std::log(t - 1.0) / t; };
    double s = g(2.0) + g(u);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(2.0 + i * h);
    return 1.0 - std::log(u) + s * h / 3.0;
}

}  // namespace

TEST(Factor, SmallSmoothNumbers) {
    const Integer n = product_of({{2, 5}, {3, 2}, {101, 1}, {65537, 2}});
    Factorization f = factor_with_bound(n, Integer(70000));
    EXPECT_EQ(f.verdict, SmoothVerdict::Smooth);
    EXPECT_TRUE(f.complete());
    EXPECT_EQ(f.product(), n);
    ASSERT_EQ(f.factors.size(), 4u);
    EXPECT_EQ(f.factors[3], (PrimePower{Integer(65537), 2}));
    EXPECT_EQ(f.largest_prime(), 65537);
}

TEST(Factor, NegativeValuesKeepSign) {
    Factorization f = factor_with_bound(Integer(-360), Integer(10));
    EXPECT_EQ(f.verdict, SmoothVerdict::Smooth);
    EXPECT_EQ(f.product(), -360);
}

TEST(Factor, TrialDivisionDecidesBelowLimit) {
    // every prime <= B removed; the rest is a large prime
    const Integer big = next_prime(pow(Integer(2), 61));
    Factorization f = factor_with_bound(big * 6, Integer(1000));
    EXPECT_EQ(f.verdict, SmoothVerdict::NotSmooth);
    EXPECT_EQ(f.rho_iterations, 0u);
}

TEST(Factor, RhoSplitsMediumPrimes) {
    // two 30-bit primes and a 40-bit prime: beyond trial division
    const Integer a = next_prime(Integer(1) << 29), b = next_prime(Integer(3) << 28), c = next_prime(Integer(1) << 39);
    const Integer n = a * b * c * 7;
    Factorization f = factor_with_bound(n, Integer(1) << 40);
    EXPECT_EQ(f.verdict, SmoothVerdict::Smooth);
    EXPECT_EQ(f.product(), n);
    EXPECT_EQ(f.largest_prime(), c);
    for (const auto& pp : f.factors) EXPECT_TRUE(is_probable_prime(pp.prime));

    Factorization g = factor_with_bound(n, Integer(1) << 35);
    EXPECT_EQ(g.verdict, SmoothVerdict::NotSmooth);
}

TEST(Factor, SquaresOfLargePrimes) {
    const Integer q = next_prime(Integer(1) << 45);
    Factorization f = factor_with_bound(q * q * 11, Integer(1) << 46);
    EXPECT_EQ(f.verdict, SmoothVerdict::Smooth);
    EXPECT_EQ(f.product(), q * q * 11);
}

TEST(Factor, BudgetExhaustionIsUndecided) {
    const Integer a = next_prime(Integer(1) << 59), b = next_prime(Integer(1) << 60);
    FactorEffort tiny;
    tiny.rho_iterations = 1000;
    Factorization f = factor_with_bound(a * b, Integer(1) << 62, tiny);
    EXPECT_EQ(f.verdict, SmoothVerdict::Undecided);
    EXPECT_FALSE(f.complete());
    EXPECT_EQ(f.product(), a * b);
}

TEST(Factor, ExternalEcmHook) {
    // with almost no rho budget only the external program can split this
    const Integer a = next_prime(Integer(1) << 39), b = next_prime(Integer(1) << 40);
    FactorEffort effort;
    effort.rho_iterations = 10;
    effort.ecm_command = std::string(NFSBOOT_FIXTURES) + "/fake_ecm.sh";
    Factorization f = factor_with_bound(a * b, Integer(1) << 42, effort);
    EXPECT_EQ(f.verdict, SmoothVerdict::Smooth);
    EXPECT_EQ(f.product(), a * b);
}

TEST(Factor, RandomAgainstReassembly) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        Integer n = Integer(static_cast<unsigned long>(rng() >> 20)) * Integer(static_cast<unsigned long>(rng() >> 24)) + 1;
        Factorization f = factor_with_bound(n, n);
        ASSERT_EQ(f.verdict, SmoothVerdict::Smooth) << n;
        EXPECT_EQ(f.product(), n);
        for (std::size_t k = 0; k < f.factors.size(); ++k) {
            EXPECT_TRUE(is_probable_prime(f.factors[k].prime));
            if (k) {
            EXPECT_LT(f.factors[k - 1].prime, f.factors[k].prime);
        }
        }
    }
}

TEST(Factor, RejectsBadInput) {
    EXPECT_THROW(factor_with_bound(Integer(0), Integer(10)), std::domain_error);
    EXPECT_THROW(factor_with_bound(Integer(10), Integer(1)), std::domain_error);
    EXPECT_EQ(factor_with_bound(Integer(1), Integer(2)).verdict, SmoothVerdict::Smooth);
}

TEST(Dickman, ExactOnFirstInterval) {
    for (double u = 1.0; u <= 2.0; u += 0.05) EXPECT_NEAR(dickman_rho(u), 1.0 - std::log(u), 1e-7) << u;
    EXPECT_EQ(dickman_rho(0.5), 1.0);
}

TEST(Dickman, SecondIntervalIntegralForm) {
    for (double u = 2.0; u <= 3.0; u += 0.1) EXPECT_NEAR(dickman_rho(u), rho_2_to_3(u), 1e-7) << u;
}

TEST(Dickman, TabulatedValues) {
    // standard reference values of the Dickman function
    EXPECT_NEAR(dickman_rho(3.0), 0.0486083882911, 1e-8);
    EXPECT_NEAR(dickman_rho(4.0) / 0.00491092564776, 1.0, 1e-5);
    EXPECT_NEAR(dickman_rho(5.0) / 3.54724700456e-4, 1.0, 1e-5);
    EXPECT_NEAR(dickman_rho(10.0) / 2.77017183772e-11, 1.0, 1e-4);
}

TEST(Dickman, MonotoneAndPositive) {
    double prev = 1.0;
    for (double u = 1.0; u <= 12.0; u += 0.25) {
        const double r = dickman_rho(u);
        EXPECT_GT(r, 0.0);
        EXPECT_LE(r, prev);
        // rho(u) <= 1 / Gamma(u + 1)
        EXPECT_LE(r, 1.0 / std::tgamma(u + 1.0) + 1e-12);
        prev = r;
    }
}

TEST(Dickman, FunctionalEquation) {
    // u rho(u) = int_{u-1}^u rho(t) dt
    for (double u : {2.5, 3.7, 6.2}) {
        const int n = 4000;
        const double h = 1.0 / n;
        double s = dickman_rho(u - 1.0) + dickman_rho(u);
        for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * dickman_rho(u - 1.0 + i * h);
        EXPECT_NEAR(u * dickman_rho(u), s * h / 3.0, 1e-6 * dickman_rho(u - 1.0));
    }
}

TEST(Complexity, LEvalSpotValues) {
    // L_Q[0, c] = (ln Q)^c and L_Q[1, c] = Q^c
    const double q_bits = 400;
    const double lnq = q_bits * std::log(2.0);
    EXPECT_NEAR(l_eval_bits(q_bits, 0.0, 2.0), 2.0 * std::log2(lnq), 1e-9);
    EXPECT_NEAR(l_eval_bits(q_bits, 1.0, 0.5), 200.0, 1e-9);
    EXPECT_THROW(l_eval_bits(q_bits, 1.5, 1.0), std::domain_error);
    EXPECT_THROW(l_eval_bits(q_bits, 0.5, 0.0), std::domain_error);
}

TEST(Complexity, CubeRootsExactWhenPossible) {
    ComplexityProfile p = booting_constants(Rational(9, 8));
    ASSERT_TRUE(p.c_exact.has_value());
    ASSERT_TRUE(p.gamma_exact.has_value());
    EXPECT_EQ(*p.c_exact, Rational(3, 2));
    EXPECT_EQ(*p.gamma_exact, Rational(3, 4));
    ComplexityProfile q = booting_constants(Rational(1, 2));
    EXPECT_FALSE(q.c_exact.has_value());
    EXPECT_NEAR(q.c, std::cbrt(1.5), 1e-12);
    EXPECT_THROW(booting_constants(Rational(0)), std::domain_error);
}

TEST(Complexity, ConstantsSatisfyDefiningRelations) {
    for (auto m : {SelectionMethod::Jlsv1, SelectionMethod::Gjl, SelectionMethod::Conj})
        for (int n = 2; n <= 8; ++n)
            for (auto v : {NormVariant::Plain, NormVariant::Subfield}) {
                if (v == NormVariant::Subfield && (n < 4 || n % 2)) {
                    EXPECT_THROW(norm_exponent(m, n, v), std::domain_error);
                    continue;
                }
                const Rational e = norm_exponent(m, n, v);
                const ComplexityProfile p = booting_constants(e);
                EXPECT_NEAR(p.c * p.c * p.c, 3 * e.get_d(), 1e-12);
                EXPECT_NEAR(p.gamma * p.gamma * p.gamma, e.get_d() * e.get_d() / 3, 1e-12);
                // balancing: gamma = c^2 / 3^(1/3) / 3^(2/3) * ... reduces to gamma = c^2 / 3
                EXPECT_NEAR(p.gamma, p.c * p.c / 3.0, 1e-12);
                if (m != SelectionMethod::Jlsv1) {
                    EXPECT_LT(e, 1);
                }
                if (v == NormVariant::Subfield) {
                    EXPECT_LT(e, norm_exponent(m, n, NormVariant::Plain));
                }
            }
}

TEST(Complexity, SmoothProbability) {
    SmoothnessEstimate s = smooth_probability(90, 30);
    EXPECT_DOUBLE_EQ(s.u, 3.0);
    EXPECT_NEAR(s.cep, std::pow(3.0, -3.0), 1e-15);
    EXPECT_NEAR(s.dickman, 0.0486083882911, 1e-8);
    EXPECT_EQ(smooth_probability(10, 30).dickman, 1.0);
    EXPECT_THROW(smooth_probability(10, 0), std::domain_error);
}
