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

// The booting step: draw t, reduce s^t, look for a B-smooth norm, and emit a
// certificate anyone can re-check.

#ifndef NFSBOOT_BOOT_HPP
#define NFSBOOT_BOOT_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "nfsboot/fields.hpp"
#include "nfsboot/polyselect.hpp"
#include "nfsboot/preimage.hpp"
#include "nfsboot/smooth.hpp"

namespace nfsboot {

struct BootConfig {
    std::uint64_t seed = 1;
    std::size_t max_trials = 10000;
    unsigned workers = 1;
    int radius = 1;
    std::size_t combination_rows = 4;  ///< rows taking part in small combinations
    std::size_t max_candidates = 0;    ///< candidates tested per trial, 0 for all
    Strategy strategy = Strategy::Auto;
    FactorEffort effort;
    LLLParams lll;
};

struct BootCertificate {
    Selection sel;
    Integer ell;
    Strategy strategy = Strategy::Monic;  ///< resolved, never Auto
    PreimageKind kind = PreimageKind::MonicGjlConj;
    std::vector<Integer> target;  ///< s, n coefficients
    Integer t;
    IntPoly preimage;
    Integer norm;
    Factorization factorization;
    Integer bound;
    std::size_t candidate_index = 0;
    std::vector<long> combination;
    /// Fraction lifts only: rho(preimage) = rho(denominator) * s^t.
    std::optional<IntPoly> denominator;
    std::optional<Integer> denominator_norm;
    std::optional<Factorization> denominator_factorization;
    std::uint64_t seed = 0;
    unsigned worker = 0;
    std::size_t trials = 0;  ///< trials started when the certificate was found
    double wall_seconds = 0;
    std::vector<std::string> warnings;
};

/// Thrown when max_trials runs out; carries what the search saw.
class BootNotFound : public std::runtime_error {
public:
    BootNotFound(std::size_t trials, std::size_t candidates, std::size_t best_bits, std::size_t undecided)
        : std::runtime_error("no smooth preimage within " + std::to_string(trials) + " trials (" +
                             std::to_string(candidates) + " candidates, smallest norm " + std::to_string(best_bits) +
                             " bits, " + std::to_string(undecided) + " undecided)"),
          trials_(trials), candidates_(candidates), best_bits_(best_bits), undecided_(undecided) {}
    std::size_t trials() const { return trials_; }
    std::size_t candidates() const { return candidates_; }
    std::size_t best_bits() const { return best_bits_; }
    std::size_t undecided() const { return undecided_; }

private:
    std::size_t trials_, candidates_, best_bits_, undecided_;
};

/// Proper subfields F_{p^d} (d | n, d < n) that contain s.
inline std::vector<int> containing_subfields(const FqElement& s) {
    std::vector<int> out;
    const int n = s.ctx()->n;
    for (int d = 1; d < n; ++d)
        if (n % d == 0 && is_in_proper_subfield(s, d)) out.push_back(d);
    return out;
}

namespace detail {

inline void seed_worker_rng(gmp_randclass& r, std::uint64_t seed, unsigned worker) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), worker};
    std::uint32_t words[4];
    seq.generate(std::begin(words), std::end(words));
    Integer s = 0;
    for (auto w : words) s = (s << 32) + w;
    r.seed(s);
}

}  // namespace detail

/// Searches t in [1, ell-1] until some candidate preimage of s^t has a
/// B-smooth norm. Workers draw from disjoint seeded streams; with one worker
/// the result is a function of the inputs and the seed.
inline BootCertificate find_boot(const FieldCtxPtr& ctx, const Selection& sel, const FqElement& s, const Integer& bound,
                                 const BootConfig& cfg = {}) {
    if (!ctx->ell) throw std::domain_error("ell must be set before booting");
    if (s.is_zero()) throw std::domain_error("target must be nonzero");
    if (bound < 2) throw std::domain_error("smoothness bound must be at least 2");
    if (!(ctx->psi == sel.psi)) throw std::domain_error("field and selection disagree on psi");
    const Integer ell = *ctx->ell;
    const Strategy strategy = resolve_strategy(cfg.strategy, sel);
    const FqElement target(ctx, s.poly());

    std::vector<std::string> warnings;
    for (int d : containing_subfields(target))
        warnings.push_back("target lies in the proper subfield of degree " + std::to_string(d));

    const auto start = std::chrono::steady_clock::now();
    std::atomic<bool> done{false};
    std::atomic<std::size_t> next_trial{0};
    std::mutex mu;
    std::optional<BootCertificate> result;
    std::size_t candidates_seen = 0, undecided = 0, best_bits = static_cast<std::size_t>(-1);
    std::exception_ptr failure;

    auto work = [&](unsigned w) {
        try {
            gmp_randclass rng(gmp_randinit_mt);
            detail::seed_worker_rng(rng, cfg.seed, w);
            std::size_t local_candidates = 0, local_undecided = 0, local_best = static_cast<std::size_t>(-1);
            while (!done.load(std::memory_order_relaxed)) {
                const std::size_t trial = next_trial.fetch_add(1);
                if (trial >= cfg.max_trials) break;
                Integer t = rng.get_z_range(ell - 1) + 1;
                FqElement st = target.pow(t);
                if (st.is_zero()) continue;
                if ((strategy == Strategy::Monic || strategy == Strategy::Combined) && st.degree() != sel.n - 1) continue;
                ReductionReport rep;
                try {
                    rep = reduce_target(st, sel, strategy, cfg.lll);
                } catch (const std::domain_error&) {
                    continue;  // degenerate draw, re-randomize
                }
                if (strategy == Strategy::Fraction) {
                    const Preimage& num = rep.candidates.at(0);
                    const Preimage& den = rep.candidates.at(1);
                    local_candidates += 2;
                    local_best = std::min(local_best, num.norm_bits() + den.norm_bits());
                    Factorization fn = factor_with_bound(num.norm, bound, cfg.effort);
                    if (fn.verdict != SmoothVerdict::Smooth) continue;
                    Factorization fd = factor_with_bound(den.norm, bound, cfg.effort);
                    if (fd.verdict != SmoothVerdict::Smooth) continue;
                    BootCertificate cert;
                    cert.sel = sel;
                    cert.ell = ell;
                    cert.strategy = strategy;
                    cert.kind = PreimageKind::FractionNumDen;
                    cert.target = target.coeffs();
                    cert.t = t;
                    cert.preimage = num.coeffs;
                    cert.norm = num.norm;
                    cert.factorization = std::move(fn);
                    cert.denominator = den.coeffs;
                    cert.denominator_norm = den.norm;
                    cert.denominator_factorization = std::move(fd);
                    cert.bound = bound;
                    cert.seed = cfg.seed;
                    cert.worker = w;
                    cert.trials = trial + 1;
                    std::lock_guard lock(mu);
                    if (!result) {
                        result = std::move(cert);
                        done.store(true);
                    }
                    break;
                }
                if (cfg.radius > 0) rep = small_combinations(rep, cfg.radius, cfg.combination_rows);
                std::size_t limit = rep.candidates.size();
                if (cfg.max_candidates > 0) limit = std::min(limit, cfg.max_candidates);
                for (std::size_t ci = 0; ci < limit; ++ci) {
                    if (done.load(std::memory_order_relaxed)) break;
                    const Preimage& cand = rep.candidates[ci];
                    if (cand.norm == 0) continue;
                    ++local_candidates;
                    local_best = std::min(local_best, cand.norm_bits());
                    Factorization fac = factor_with_bound(cand.norm, bound, cfg.effort);
                    if (fac.verdict == SmoothVerdict::Undecided) ++local_undecided;
                    if (fac.verdict != SmoothVerdict::Smooth) continue;
                    BootCertificate cert;
                    cert.sel = sel;
                    cert.ell = ell;
                    cert.strategy = strategy;
                    cert.kind = cand.kind;
                    cert.target = target.coeffs();
                    cert.t = t;
                    cert.preimage = cand.coeffs;
                    cert.norm = cand.norm;
                    cert.factorization = std::move(fac);
                    cert.bound = bound;
                    cert.candidate_index = ci;
                    cert.combination = cand.combination;
                    cert.seed = cfg.seed;
                    cert.worker = w;
                    cert.trials = trial + 1;
                    std::lock_guard lock(mu);
                    if (!result) {
                        result = std::move(cert);
                        done.store(true);
                    }
                    break;
                }
            }
            std::lock_guard lock(mu);
            candidates_seen += local_candidates;
            undecided += local_undecided;
            best_bits = std::min(best_bits, local_best);
        } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
            done.store(true);
        }
    };

    const unsigned workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    if (failure && !result) std::rethrow_exception(failure);
    if (!result) throw BootNotFound(std::min(next_trial.load(), cfg.max_trials), candidates_seen,
                                    best_bits == static_cast<std::size_t>(-1) ? 0 : best_bits, undecided);
    result->wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result->warnings = std::move(warnings);
    return *result;
}

struct BootVerification {
    bool ok = true;
    std::vector<std::string> failures;
    void fail(std::string why) {
        ok = false;
        failures.push_back(std::move(why));
    }
};

/// Recomputes every relation the certificate claims.
inline BootVerification verify_boot(const BootCertificate& cert) {
    BootVerification v;
    const Selection& sel = cert.sel;
    FieldCtxPtr ctx;
    try {
        ctx = make_field(sel.psi, cert.ell, sel.tower);
    } catch (const std::exception& e) {
        v.fail(std::string("invalid field: ") + e.what());
        return v;
    }
    if (!sel.f.is_monic() || sel.f.degree() < sel.n) v.fail("f not monic of degree at least n");
    else if (!(ModPoly(sel.f, sel.p) % sel.psi).is_zero()) v.fail("psi does not divide f mod p");
    if (cyclotomic_value(sel.n, sel.p) % cert.ell != 0) v.fail("ell does not divide Phi_n(p)");
    if (cert.t < 1 || cert.t >= cert.ell) v.fail("t outside [1, ell-1]");
    if (cert.target.size() > static_cast<std::size_t>(sel.n)) v.fail("target has too many coefficients");

    FqElement s(ctx, cert.target);
    if (s.is_zero()) {
        v.fail("target is zero");
        return v;
    }
    if (cert.preimage.is_zero()) {
        v.fail("preimage is zero");
        return v;
    }
    FqElement st = s.pow(cert.t);
    if (cert.kind == PreimageKind::FractionNumDen) {
        if (!cert.denominator || !cert.denominator_norm || !cert.denominator_factorization) {
            v.fail("fraction certificate lacks its denominator");
            return v;
        }
        FqElement num = rho(cert.preimage, ctx), den = rho(*cert.denominator, ctx);
        if (den.is_zero() || !(num == den * st)) v.fail("numerator differs from denominator times s^t");
    } else if (!subfield_cofactor(cert.preimage, st, cofactor_degree(cert.kind))) {
        v.fail("cofactor outside subfield");
    }

    auto check_factored = [&](const IntPoly& a, const Integer& norm, const Factorization& fac) {
        if (a.is_zero() || a.degree() >= sel.f.degree()) {
            v.fail("preimage degree out of range");
            return;
        }
        if (norm_abs(sel.f, a) != norm) v.fail("norm mismatch");
        if (fac.cofactor != 1) v.fail("factorization incomplete");
        if (fac.value != norm || fac.product() != norm) v.fail("product mismatch");
        for (std::size_t i = 0; i < fac.factors.size(); ++i) {
            const auto& pp = fac.factors[i];
            if (!is_probable_prime(pp.prime)) v.fail("composite factor " + to_decimal(pp.prime));
            if (pp.prime > cert.bound) v.fail("bound exceeded by " + to_decimal(pp.prime));
            if (pp.exponent == 0) v.fail("zero exponent");
            if (i > 0 && !(fac.factors[i - 1].prime < pp.prime)) v.fail("factors not strictly ascending");
        }
    };
    check_factored(cert.preimage, cert.norm, cert.factorization);
    if (cert.kind == PreimageKind::FractionNumDen)
        check_factored(*cert.denominator, *cert.denominator_norm, *cert.denominator_factorization);
    return v;
}

struct Prediction {
    ComplexityProfile profile;
    double q_bits = 0;
    double norm_bits = 0;          ///< e * log2 Q
    double work_bits = 0;          ///< log2 L_Q[1/3, c]
    double special_q_bits = 0;     ///< log2 L_Q[2/3, gamma], the recommended B
    double b_bits = 0;             ///< B used for the trial estimate
    double expected_trials = 0;    ///< 1 / rho(norm_bits / b_bits)
};

inline Prediction predict(SelectionMethod method, int n, double q_bits, NormVariant variant,
                          std::optional<double> b_bits = std::nullopt) {
    Prediction pr;
    pr.profile = booting_constants(norm_exponent(method, n, variant));
    pr.profile.method = method;
    pr.profile.n = n;
    pr.profile.variant = variant;
    pr.profile.q_bits = q_bits;
    pr.q_bits = q_bits;
    pr.norm_bits = pr.profile.e.get_d() * q_bits;
    pr.work_bits = l_eval_bits(q_bits, 1.0 / 3.0, pr.profile.c);
    pr.special_q_bits = l_eval_bits(q_bits, 2.0 / 3.0, pr.profile.gamma);
    pr.b_bits = b_bits.value_or(pr.special_q_bits);
    const double rho_u = dickman_rho(pr.norm_bits / pr.b_bits);
    pr.expected_trials = rho_u > 0 ? 1.0 / rho_u : INFINITY;
    return pr;
}

inline Prediction predict(const Selection& sel, NormVariant variant, std::optional<double> b_bits = std::nullopt) {
    return predict(sel.method, sel.n, static_cast<double>(sel.n) * log2_abs(sel.p), variant, b_bits);
}

}  // namespace nfsboot

#endif  // NFSBOOT_BOOT_HPP
