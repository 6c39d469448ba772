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

#include "nfsboot/boot.hpp"
#include "nfsboot/polyselect.hpp"

using namespace nfsboot;

namespace {

struct Instance {
    Selection sel;
    FieldCtxPtr ctx;
    FqElement s;
};

Instance small_setup(std::uint64_t seed = 1, int n = 2, bool tower = false) {
    const Integer p = next_prime(pow(Integer(2), 30) + 1001);
    Instance st;
    st.sel = tower ? select_conjugation_with_subfield_tower(p, n, {seed}) : select_conjugation(p, n, {seed});
    st.ctx = assign_ell(st.sel.field());
    std::mt19937_64 rng(seed);
    std::vector<Integer> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = mod(Integer(static_cast<unsigned long>(rng())), p);
    c.back() = 1;
    st.s = FqElement(st.ctx, c);
    return st;
}

BootConfig quick(std::uint64_t seed = 1) {
    BootConfig cfg;
    cfg.seed = seed;
    cfg.max_trials = 5000;
    return cfg;
}

}  // namespace

TEST(Boot, FoundCertificateVerifies) {
    Instance st = small_setup();
    const Integer bound = pow(Integer(2), 12);
    BootCertificate cert = find_boot(st.ctx, st.sel, st.s, bound, quick());
    BootVerification v = verify_boot(cert);
    EXPECT_TRUE(v.ok) << (v.failures.empty() ? "" : v.failures.front());
    // independent restatement of the relation
    FqElement st_t = st.s.pow(cert.t);
    FqElement img = rho(cert.preimage, st.ctx);
    FqElement u = img * st_t.inverse();
    EXPECT_TRUE(is_in_proper_subfield(u, 1));
    Integer prod = 1;
    for (const auto& pp : cert.factorization.factors) {
        EXPECT_LE(pp.prime, bound);
        prod *= pow(pp.prime, pp.exponent);
    }
    EXPECT_EQ(prod, cert.norm);
    EXPECT_EQ(cert.norm, norm_abs(st.sel.f, cert.preimage));
    EXPECT_GE(cert.t, 1);
    EXPECT_LT(cert.t, cert.ell);
}

TEST(Boot, SingleWorkerIsDeterministic) {
    Instance st = small_setup(2);
    const Integer bound = pow(Integer(2), 12);
    BootCertificate a = find_boot(st.ctx, st.sel, st.s, bound, quick(9));
    BootCertificate b = find_boot(st.ctx, st.sel, st.s, bound, quick(9));
    EXPECT_EQ(a.t, b.t);
    EXPECT_EQ(a.preimage, b.preimage);
    EXPECT_EQ(a.trials, b.trials);
}

TEST(Boot, ParallelResultVerifies) {
    Instance st = small_setup(3);
    BootConfig cfg = quick(4);
    cfg.workers = 4;
    BootCertificate cert = find_boot(st.ctx, st.sel, st.s, pow(Integer(2), 11), cfg);
    EXPECT_TRUE(verify_boot(cert).ok);
    EXPECT_LT(cert.worker, 4u);
}

TEST(Boot, SubfieldStrategyVerifies) {
    Instance st = small_setup(4, 4, true);
    BootCertificate cert = find_boot(st.ctx, st.sel, st.s, pow(Integer(2), 16), quick());
    BootVerification v = verify_boot(cert);
    EXPECT_TRUE(v.ok) << (v.failures.empty() ? "" : v.failures.front());
    EXPECT_EQ(cofactor_degree(cert.kind), 2);
}

TEST(Boot, FractionStrategyVerifies) {
    Instance st = small_setup(5);
    BootConfig cfg = quick();
    cfg.strategy = Strategy::Fraction;
    BootCertificate cert = find_boot(st.ctx, st.sel, st.s, pow(Integer(2), 14), cfg);
    EXPECT_EQ(cert.kind, PreimageKind::FractionNumDen);
    ASSERT_TRUE(cert.denominator.has_value());
    EXPECT_TRUE(verify_boot(cert).ok);
    EXPECT_EQ(rho(cert.preimage, st.ctx), rho(*cert.denominator, st.ctx) * st.s.pow(cert.t));
}

TEST(Boot, VacuousBoundStopsAtFirstTrial) {
    Instance st = small_setup(6);
    BootCertificate cert = find_boot(st.ctx, st.sel, st.s, pow(Integer(2), 200), quick());
    EXPECT_EQ(cert.trials, 1u);
    EXPECT_TRUE(verify_boot(cert).ok);
}

TEST(Boot, ExhaustedBudgetThrows) {
    Instance st = small_setup(7);
    BootConfig cfg = quick();
    cfg.max_trials = 3;
    try {
        find_boot(st.ctx, st.sel, st.s, Integer(3), cfg);
        FAIL() << "expected BootNotFound";
    } catch (const BootNotFound& e) {
        EXPECT_EQ(e.trials(), 3u);
        EXPECT_GT(e.candidates(), 0u);
    }
}

TEST(Boot, RejectsBadArguments) {
    Instance st = small_setup(8);
    EXPECT_THROW(find_boot(st.sel.field(), st.sel, st.s, Integer(100)), std::domain_error);
    EXPECT_THROW(find_boot(st.ctx, st.sel, FqElement::zero(st.ctx), Integer(100)), std::domain_error);
    EXPECT_THROW(find_boot(st.ctx, st.sel, st.s, Integer(1)), std::domain_error);
}

TEST(Verify, DetectsTampering) {
    Instance st = small_setup(9);
    const BootCertificate good = find_boot(st.ctx, st.sel, st.s, pow(Integer(2), 12), quick());
    ASSERT_TRUE(verify_boot(good).ok);
    ASSERT_FALSE(good.factorization.factors.empty());
    auto has = [](const BootVerification& v, const std::string& what) {
        for (const auto& f : v.failures)
            if (f.find(what) != std::string::npos) return true;
        return false;
    };

    BootCertificate c = good;
    c.factorization.factors.back().exponent += 1;
    EXPECT_TRUE(has(verify_boot(c), "product mismatch"));

    c = good;
    c.bound = 2;
    EXPECT_TRUE(has(verify_boot(c), "bound exceeded"));

    c = good;
    c.t = c.t + 1 < c.ell ? Integer(c.t + 1) : Integer(c.t - 1);
    EXPECT_TRUE(has(verify_boot(c), "cofactor outside subfield"));

    c = good;
    c.norm += 1;
    EXPECT_TRUE(has(verify_boot(c), "norm mismatch"));

    c = good;
    c.ell = 7;
    EXPECT_FALSE(verify_boot(c).ok);

    c = good;
    c.t = 0;
    EXPECT_TRUE(has(verify_boot(c), "t outside"));
}

TEST(Predict, ReferenceFigures) {
    const double q120 = 120 * std::log2(10.0);
    Prediction jl = predict(SelectionMethod::Jlsv1, 4, q120, NormVariant::Plain);
    EXPECT_EQ(jl.profile.e, Rational(9, 8));
    EXPECT_NEAR(jl.profile.c, 1.5, 1e-12);
    EXPECT_NEAR(jl.profile.gamma, 0.75, 1e-12);
    EXPECT_NEAR(jl.special_q_bits, 82, 1.0);
    Prediction sub = predict(SelectionMethod::Jlsv1, 4, q120, NormVariant::Subfield);
    EXPECT_EQ(sub.profile.e, Rational(7, 8));
    EXPECT_NEAR(sub.work_bits, 41, 1.0);
    EXPECT_NEAR(sub.special_q_bits, 69, 1.0);
    Prediction conj = predict(SelectionMethod::Conj, 2, 180 * std::log2(10.0), NormVariant::Plain);
    EXPECT_NEAR(conj.profile.c, 1.14, 0.005);
    EXPECT_NEAR(conj.norm_bits, 0.5 * 180 * std::log2(10.0), 1e-9);
    // expected trials is 1/rho(norm_bits / b_bits)
    Prediction p80 = predict(SelectionMethod::Conj, 2, 160, NormVariant::Plain, 30.0);
    EXPECT_NEAR(p80.expected_trials, 1.0 / dickman_rho(80.0 / 30.0), 1e-9);
    EXPECT_NEAR(p80.expected_trials, 10.5, 0.1);
}

TEST(Subfields, ContainingSubfields) {
    Instance st = small_setup(10, 4, true);
    EXPECT_EQ(containing_subfields(FqElement::from_int(st.ctx, 3)), (std::vector<int>{1, 2}));
    EXPECT_TRUE(containing_subfields(FqElement::x(st.ctx)).empty());
}
