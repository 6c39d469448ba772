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

// Lattice constructions lifting a finite-field target to a number-field
// element of small norm.
//
// Every lattice is built row by row as polynomials (row i, column j holds the
// coefficient of x^j) and is lower triangular before reduction. A candidate is
// accepted only if rho(candidate) / target lies in the declared subfield,
// where rho reduces modulo (p, psi).

#ifndef NFSBOOT_PREIMAGE_HPP
#define NFSBOOT_PREIMAGE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nfsboot/arith.hpp"
#include "nfsboot/fields.hpp"
#include "nfsboot/lattice.hpp"
#include "nfsboot/polyselect.hpp"
#include "nfsboot/smooth.hpp"

namespace nfsboot {

enum class PreimageKind { Naive, FractionNumDen, MonicJlsv1, MonicGjlConj, SubfieldOnly, SubfieldCombined };

inline std::string to_string(PreimageKind k) {
    switch (k) {
        case PreimageKind::Naive: return "NAIVE";
        case PreimageKind::FractionNumDen: return "FRACTION_NUM_DEN";
        case PreimageKind::MonicJlsv1: return "MONIC_JLSV1";
        case PreimageKind::MonicGjlConj: return "MONIC_GJL_CONJ";
        case PreimageKind::SubfieldOnly: return "SUBFIELD_ONLY";
        case PreimageKind::SubfieldCombined: return "SUBFIELD_COMBINED";
    }
    return "?";
}

inline PreimageKind parse_preimage_kind(const std::string& s) {
    for (auto k : {PreimageKind::Naive, PreimageKind::FractionNumDen, PreimageKind::MonicJlsv1,
                   PreimageKind::MonicGjlConj, PreimageKind::SubfieldOnly, PreimageKind::SubfieldCombined})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown preimage kind: " + s);
}

/// Degree over F_p of the subfield that holds rho(preimage) / target.
inline int cofactor_degree(PreimageKind k) {
    return (k == PreimageKind::SubfieldOnly || k == PreimageKind::SubfieldCombined) ? 2 : 1;
}

struct Preimage {
    IntPoly coeffs;
    PreimageKind kind = PreimageKind::Naive;
    Integer norm;                   ///< |Res(f, coeffs)|
    std::size_t row = 0;            ///< LLL row (first nonzero combination entry)
    std::vector<long> combination;  ///< coefficients over the LLL rows

    std::size_t norm_bits() const { return bit_length(norm); }
};

struct ReductionReport {
    PreimageKind kind = PreimageKind::Naive;
    IntPoly f;
    FqElement target;  ///< rho(candidate) / target is checked against this
    IntMatrix lattice;
    Integer det;
    LLLParams params;
    std::vector<IntPoly> rows;         ///< LLL rows in reduction order
    std::vector<Preimage> candidates;  ///< ascending norm
    Rational exponent;
    double q_bits = 0;
    double predicted_bits = 0;
    std::size_t discarded = 0;
    bool first_row_bounded = true;

    const Preimage& best() const {
        if (candidates.empty()) throw std::logic_error("empty reduction report");
        return candidates.front();
    }
};

// ---------------------------------------------------------------------------

/// rho: Z[x] -> F_{p^n}.
inline FqElement rho(const IntPoly& a, const FieldCtxPtr& ctx) { return FqElement(ctx, ModPoly(a, ctx->p)); }

/// Returns rho(candidate) / target when it is a nonzero element of F_{p^d}.
inline std::optional<FqElement> subfield_cofactor(const IntPoly& candidate, const FqElement& target, int d) {
    FqElement img = rho(candidate, target.ctx());
    if (img.is_zero() || target.is_zero()) return std::nullopt;
    FqElement u = img * target.inverse();
    if (d >= target.ctx()->n) return u;
    if (!is_in_proper_subfield(u, d)) return std::nullopt;
    return u;
}

/// Coefficient-wise lift in [0, p).
inline IntPoly lift(const FqElement& s) { return s.poly().lift(); }

namespace detail {

inline void put_row(IntMatrix& m, std::size_t r, const IntPoly& a) {
    if (a.degree() >= static_cast<int>(m.cols())) throw std::logic_error("row polynomial too long for lattice");
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = a.coeff(j);
}

inline double q_bits(const Selection& sel) { return static_cast<double>(sel.n) * log2_abs(sel.p); }

inline void require_monic_top(const FqElement& s, int deg) {
    if (s.degree() != deg || s.coeff(static_cast<std::size_t>(deg)) != 1)
        throw std::domain_error("target must be monic of degree " + std::to_string(deg) +
                                "; make it monic, or randomize or use the subfield path if that coefficient is zero");
}

inline void sort_candidates(std::vector<Preimage>& c) {
    std::stable_sort(c.begin(), c.end(), [](const Preimage& a, const Preimage& b) {
        if (a.norm_bits() != b.norm_bits()) return a.norm_bits() < b.norm_bits();
        return a.norm < b.norm;
    });
}

/// Reduces the lattice and keeps rows that pass the cofactor check.
inline ReductionReport finish(PreimageKind kind, const Selection& sel, const FqElement& target, IntMatrix lattice,
                              Rational exponent, const LLLParams& params) {
    ReductionReport rep;
    rep.kind = kind;
    rep.f = sel.f;
    rep.target = target;
    rep.det = abs(determinant(lattice));
    rep.params = params;
    LLLResult red = lll_reduce(lattice, params);
    rep.first_row_bounded = inf_norm(red.basis.row(0)) <= first_vector_bound(lattice, params);
    rep.lattice = std::move(lattice);
    rep.exponent = exponent;
    rep.q_bits = q_bits(sel);
    rep.predicted_bits = exponent.get_d() * rep.q_bits;
    const int d = cofactor_degree(kind);
    for (std::size_t i = 0; i < red.basis.rows(); ++i) {
        IntPoly cand(red.basis.row_vector(i));
        rep.rows.push_back(cand);
        if (!subfield_cofactor(cand, target, d)) {
            ++rep.discarded;
            continue;
        }
        Preimage pre;
        pre.coeffs = cand;
        pre.kind = kind;
        pre.norm = norm_abs(sel.f, cand);
        pre.row = i;
        pre.combination.assign(red.basis.rows(), 0);
        pre.combination[i] = 1;
        rep.candidates.push_back(std::move(pre));
    }
    sort_candidates(rep.candidates);
    return rep;
}

inline void require_monic_f(const Selection& sel) {
    if (!sel.f.is_monic()) throw std::domain_error("preimage lattices need a monic f");
}

}  // namespace detail

/// Exponent of the subfield-only lattice: r-hat has coefficients of size
/// p^((n-2)/(n-1)) and degree n-2.
inline Rational subfield_only_exponent(SelectionMethod method, int n, int df) {
    if (method == SelectionMethod::Jlsv1) {
        Rational e = Rational(3, 2) - Rational(2, n) - Rational(1, n * (n - 1));
        e.canonicalize();
        return e;
    }
    Rational e(df * (n - 2), n * (n - 1));
    e.canonicalize();
    return e;
}

inline Rational naive_exponent(SelectionMethod method, int n, int df) {
    Rational e;
    if (method == SelectionMethod::Jlsv1) e = Rational(3, 2) - Rational(1, 2 * n);
    else e = Rational(df, n);
    e.canonicalize();
    return e;
}

inline Preimage naive_lift(const FqElement& s, const Selection& sel) {
    if (s.degree() >= sel.f.degree()) throw std::domain_error("target degree must be below deg f");
    Preimage pre;
    pre.coeffs = lift(s);
    pre.kind = PreimageKind::Naive;
    pre.norm = pre.coeffs.is_zero() ? Integer(0) : norm_abs(sel.f, pre.coeffs);
    return pre;
}

/// n x n lattice: p rows 0..n-2, then s-hat. det = p^(n-1).
inline ReductionReport monic_reduce_jlsv1(const FqElement& s, const Selection& sel, const LLLParams& params = {}) {
    detail::require_monic_f(sel);
    const int n = sel.n;
    if (sel.f.degree() != n) throw std::domain_error("JLSV1 lattice needs deg f = n");
    detail::require_monic_top(s, n - 1);
    const auto un = static_cast<std::size_t>(n);
    IntMatrix m(un, un);
    for (std::size_t i = 0; i + 1 < un; ++i) m(i, i) = sel.p;
    detail::put_row(m, un - 1, lift(s));
    return detail::finish(PreimageKind::MonicJlsv1, sel, s, std::move(m),
                          norm_exponent(SelectionMethod::Jlsv1, n, NormVariant::Plain), params);
}

/// d_f x d_f lattice: p rows 0..n-2, s-hat at n-1, x^j psi rows after. det = p^(n-1).
inline ReductionReport monic_reduce_gjl_conj(const FqElement& s, const Selection& sel, const LLLParams& params = {}) {
    detail::require_monic_f(sel);
    const int n = sel.n, df = sel.f.degree();
    if (df <= n) throw std::domain_error("this lattice needs deg f > n");
    detail::require_monic_top(s, n - 1);
    const auto un = static_cast<std::size_t>(n), udf = static_cast<std::size_t>(df);
    IntMatrix m(udf, udf);
    for (std::size_t i = 0; i + 1 < un; ++i) m(i, i) = sel.p;
    detail::put_row(m, un - 1, lift(s));
    const IntPoly psi = sel.psi.lift();
    for (std::size_t j = 0; un + j < udf; ++j) detail::put_row(m, un + j, IntPoly::monomial(1, j) * psi);
    return detail::finish(PreimageKind::MonicGjlConj, sel, s, std::move(m), norm_exponent(sel.method, n, NormVariant::Plain),
                          params);
}

inline ReductionReport monic_reduce(const FqElement& s, const Selection& sel, const LLLParams& params = {}) {
    return sel.method == SelectionMethod::Jlsv1 ? monic_reduce_jlsv1(s, sel, params) : monic_reduce_gjl_conj(s, sel, params);
}

/// (n-1) x (n-1) lattice: p rows 0..n-3, then r-hat. det = p^(n-2).
/// target is the element r is a subfield multiple of (r itself if omitted).
inline ReductionReport subfield_lattice_reduce(const FqElement& r, const Selection& sel,
                                               std::optional<FqElement> target = std::nullopt,
                                               const LLLParams& params = {}) {
    detail::require_monic_f(sel);
    const int n = sel.n;
    detail::require_monic_top(r, n - 2);
    const auto dim = static_cast<std::size_t>(n - 1);
    IntMatrix m(dim, dim);
    for (std::size_t i = 0; i + 1 < dim; ++i) m(i, i) = sel.p;
    detail::put_row(m, dim - 1, lift(r));
    return detail::finish(PreimageKind::SubfieldOnly, sel, target.value_or(r), std::move(m),
                          subfield_only_exponent(sel.method, n, sel.f.degree()), params);
}

/// p rows 0..n-3, r-hat at n-2, s-hat at n-1, x^j psi rows up to d_f.
/// det = p^(n-2). Falls back to the subfield-only lattice if every row fails
/// the F_{p^2} check.
inline ReductionReport combined_reduce(const FqElement& r, const FqElement& s, const Selection& sel,
                                       const LLLParams& params = {}) {
    detail::require_monic_f(sel);
    const int n = sel.n, df = sel.f.degree();
    if (n < 4 || n % 2 != 0) throw std::domain_error("combined lattice needs even n >= 4");
    detail::require_monic_top(r, n - 2);
    detail::require_monic_top(s, n - 1);
    const auto un = static_cast<std::size_t>(n), udf = static_cast<std::size_t>(df);
    IntMatrix m(udf, udf);
    for (std::size_t i = 0; i + 2 < un; ++i) m(i, i) = sel.p;
    detail::put_row(m, un - 2, lift(r));
    detail::put_row(m, un - 1, lift(s));
    const IntPoly psi = sel.psi.lift();
    for (std::size_t j = 0; un + j < udf; ++j) detail::put_row(m, un + j, IntPoly::monomial(1, j) * psi);
    auto rep = detail::finish(PreimageKind::SubfieldCombined, sel, s, std::move(m),
                              norm_exponent(sel.method, n, NormVariant::Subfield), params);
    if (rep.candidates.empty()) return subfield_lattice_reduce(r, sel, s, params);
    return rep;
}

struct FractionResult {
    Preimage numerator, denominator;
    std::size_t row = 0;
    IntMatrix lattice;
    Integer det;
    Rational exponent;  ///< of Norm(u) * Norm(v)
    double product_bits() const {
        return static_cast<double>(bit_length(numerator.norm)) + static_cast<double>(bit_length(denominator.norm));
    }
};

/// 2 d_f lattice with rows (p e_i), (x^i psi | 0) and (x^i s-hat mod f | e_i);
/// det = p^n. The first row whose halves are both nonzero under rho gives
/// u / v with rho(u) = rho(v) * s.
inline FractionResult fraction_reduce(const FqElement& s, const Selection& sel, const LLLParams& params = {}) {
    detail::require_monic_f(sel);
    if (s.is_zero()) throw std::domain_error("cannot lift zero");
    const int n = sel.n, df = sel.f.degree();
    const auto un = static_cast<std::size_t>(n), udf = static_cast<std::size_t>(df);
    IntMatrix m(2 * udf, 2 * udf);
    for (std::size_t i = 0; i < un; ++i) m(i, i) = sel.p;
    const IntPoly psi = sel.psi.lift();
    for (std::size_t j = 0; un + j < udf; ++j) detail::put_row(m, un + j, IntPoly::monomial(1, j) * psi);
    const IntPoly sh = lift(s);
    for (std::size_t i = 0; i < udf; ++i) {
        IntPoly t = rem_monic(IntPoly::monomial(1, i) * sh, sel.f);
        for (std::size_t j = 0; j < udf; ++j) m(udf + i, j) = t.coeff(j);
        m(udf + i, udf + i) = 1;
    }
    FractionResult out;
    out.det = abs(determinant(m));
    out.exponent = baseline_exponent_fraction(sel.method, n);
    LLLResult red = lll_reduce(m, params);
    out.lattice = std::move(m);
    for (std::size_t row : red.rows_by_length()) {
        std::vector<Integer> a(udf), b(udf);
        for (std::size_t j = 0; j < udf; ++j) {
            a[j] = red.basis(row, j);
            b[j] = red.basis(row, udf + j);
        }
        IntPoly u(a), v(b);
        FqElement ru = rho(u, s.ctx()), rv = rho(v, s.ctx());
        if (ru.is_zero() || rv.is_zero()) continue;
        if (!(ru == rv * s)) throw std::logic_error("fraction lattice row violates u = v s");
        out.row = row;
        out.numerator = {u, PreimageKind::FractionNumDen, norm_abs(sel.f, u), row, {}};
        out.denominator = {v, PreimageKind::FractionNumDen, norm_abs(sel.f, v), row, {}};
        return out;
    }
    throw std::domain_error("all fraction rows degenerate");
}

/// Adds integer combinations of the LLL rows with coefficients in
/// [-radius, radius] (first nonzero coefficient positive), re-checking the
/// cofactor relation. max_rows limits how many of the rows take part.
inline ReductionReport small_combinations(const ReductionReport& rep, int radius,
                                          std::size_t max_rows = static_cast<std::size_t>(-1)) {
    if (radius < 0) throw std::domain_error("radius must be non-negative");
    ReductionReport out = rep;
    if (radius == 0 || rep.rows.empty()) return out;
    const std::size_t k = std::min(max_rows, rep.rows.size());
    const int d = cofactor_degree(rep.kind);
    std::set<std::vector<Integer>> seen;
    for (const auto& c : out.candidates) seen.insert(c.coeffs.coeffs());

    std::vector<long> coef(k, -radius);
    for (;;) {
        // first nonzero positive, at least two nonzero entries
        std::size_t nz = 0, first = k;
        for (std::size_t i = 0; i < k; ++i)
            if (coef[i] != 0) {
                ++nz;
                if (first == k) first = i;
            }
        if (nz >= 2 && coef[first] > 0) {
            IntPoly cand;
            for (std::size_t i = 0; i < k; ++i)
                if (coef[i] != 0) cand += rep.rows[i] * Integer(coef[i]);
            if (!cand.is_zero() && seen.insert(cand.coeffs()).second) {
                if (subfield_cofactor(cand, rep.target, d)) {
                    Preimage pre;
                    pre.coeffs = cand;
                    pre.kind = rep.kind;
                    pre.norm = norm_abs(rep.f, cand);
                    pre.row = first;
                    pre.combination.assign(rep.rows.size(), 0);
                    std::copy(coef.begin(), coef.end(), pre.combination.begin());
                    out.candidates.push_back(std::move(pre));
                } else {
                    ++out.discarded;
                }
            }
        }
        std::size_t i = 0;
        while (i < k && coef[i] == radius) coef[i++] = -radius;
        if (i == k) break;
        ++coef[i];
    }
    detail::sort_candidates(out.candidates);
    return out;
}

enum class Strategy { Naive, Fraction, Monic, Subfield, Combined, Auto };

inline Strategy parse_strategy(const std::string& s) {
    const std::string l = lowercase(s);
    if (l == "naive") return Strategy::Naive;
    if (l == "fraction") return Strategy::Fraction;
    if (l == "monic") return Strategy::Monic;
    if (l == "subfield") return Strategy::Subfield;
    if (l == "combined") return Strategy::Combined;
    if (l == "auto") return Strategy::Auto;
    throw std::invalid_argument("unknown strategy: " + s);
}

inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Naive: return "naive";
        case Strategy::Fraction: return "fraction";
        case Strategy::Monic: return "monic";
        case Strategy::Subfield: return "subfield";
        case Strategy::Combined: return "combined";
        case Strategy::Auto: return "auto";
    }
    return "?";
}

/// Subfield path whenever a tower is known and n is even, else monic.
inline Strategy resolve_strategy(Strategy s, const Selection& sel) {
    if (s != Strategy::Auto) return s;
    return (sel.tower && sel.n >= 4 && sel.n % 2 == 0) ? Strategy::Combined : Strategy::Monic;
}

/// Reduces an arbitrary nonzero target with the given strategy. The report's
/// target is s itself, so every candidate's cofactor is relative to s.
/// Naive and fraction results are wrapped as single-candidate reports.
inline ReductionReport reduce_target(const FqElement& s, const Selection& sel, Strategy strategy,
                                     const LLLParams& params = {}) {
    if (s.is_zero()) throw std::domain_error("cannot reduce zero");
    strategy = resolve_strategy(strategy, sel);
    const int n = sel.n;
    switch (strategy) {
        case Strategy::Naive: {
            ReductionReport rep;
            rep.kind = PreimageKind::Naive;
            rep.f = sel.f;
            rep.target = s;
            rep.exponent = naive_exponent(sel.method, n, sel.f.degree());
            rep.q_bits = detail::q_bits(sel);
            rep.predicted_bits = rep.exponent.get_d() * rep.q_bits;
            rep.candidates.push_back(naive_lift(s, sel));
            rep.rows.push_back(rep.candidates.back().coeffs);
            return rep;
        }
        case Strategy::Fraction: {
            FractionResult fr = fraction_reduce(s, sel, params);
            ReductionReport rep;
            rep.kind = PreimageKind::FractionNumDen;
            rep.f = sel.f;
            rep.target = s;
            rep.lattice = fr.lattice;
            rep.det = fr.det;
            rep.params = params;
            rep.exponent = fr.exponent;
            rep.q_bits = detail::q_bits(sel);
            rep.predicted_bits = rep.exponent.get_d() * rep.q_bits;
            rep.candidates = {fr.numerator, fr.denominator};
            rep.rows = {fr.numerator.coeffs, fr.denominator.coeffs};
            return rep;
        }
        case Strategy::Monic: {
            if (s.degree() != n - 1) throw std::domain_error("target has degree below n-1; randomize it first");
            MonicTarget mt = make_monic(s);
            auto rep = monic_reduce(mt.monic, sel, params);
            rep.target = s;
            return rep;
        }
        case Strategy::Subfield:
        case Strategy::Combined: {
            if (!sel.tower) throw std::domain_error("selection has no quadratic-subfield tower");
            SubfieldReduction sr = subfield_reduce(s, *sel.tower);
            if (strategy == Strategy::Subfield) return subfield_lattice_reduce(sr.r, sel, s, params);
            if (s.degree() != n - 1) throw std::domain_error("target has degree below n-1; randomize it first");
            MonicTarget mt = make_monic(s);
            auto rep = combined_reduce(sr.r, mt.monic, sel, params);
            rep.target = s;
            return rep;
        }
        case Strategy::Auto: break;
    }
    throw std::logic_error("unreachable strategy");
}

}  // namespace nfsboot

#endif  // NFSBOOT_PREIMAGE_HPP
