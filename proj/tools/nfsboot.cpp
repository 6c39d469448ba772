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

// nfsboot: polynomial selection, preimage reduction, booting search and
// certificate verification from the command line.
//
// Exit codes: 0 success / verified, 1 not found / invalid, 2 usage error.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nfsboot/nfsboot.hpp"

using namespace nfsboot;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

/// Bad flag combinations and malformed inputs.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Integer> parse_coeff_list(const std::string& text) {
    std::vector<Integer> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t[]\"");
        const auto e = item.find_last_not_of(" \t[]\"");
        if (b == std::string::npos) continue;
        out.push_back(parse_integer(item.substr(b, e - b + 1)));
    }
    if (out.empty()) throw UsageError("empty coefficient list");
    return out;
}

/// --target accepts "c0,c1,...", a JSON file holding an array, or "x".
FqElement parse_target(const std::string& text, const FieldCtxPtr& ctx) {
    if (text == "x") return FqElement::x(ctx);
    std::vector<Integer> c;
    if (text.size() > 5 && text.substr(text.size() - 5) == ".json") c = io::coeff_vector(read_json_file(text));
    else c = parse_coeff_list(text);
    if (c.size() > static_cast<std::size_t>(ctx->n)) throw UsageError("target has more than n coefficients");
    for (auto& v : c) v = mod(v, ctx->p);
    return FqElement(ctx, c);
}

ParamsDocument load_params(const std::string& path) {
    ParamsDocument doc = params_from_json(read_json_file(path));
    SelectionReport r = verify_selection(doc.sel);
    if (!r.ok) {
        std::string msg = "parameters fail verification:";
        for (const auto& f : r.failures) msg += " " + f + ";";
        throw DocumentError(msg);
    }
    return doc;
}

std::string fixed(double v, int prec) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << v;
    return os.str();
}

std::string witness_name(IrreducibilityWitness w) {
    switch (w) {
        case IrreducibilityWitness::Proven: return "proven";
        case IrreducibilityWitness::Reducible: return "reducible";
        default: return "probable";
    }
}

// ---------------------------------------------------------------------------

struct PolyselectArgs {
    std::string p, method = "conj", out;
    int n = 2;
    int d = 0;
    std::uint64_t seed = 0;
    std::size_t budget = 10000;
    bool no_ell = false;
};

int cmd_polyselect(const PolyselectArgs& a, bool as_json) {
    const Integer p = parse_integer(a.p);
    if (!is_probable_prime(p)) throw UsageError("p must be prime");
    if (a.n < 2) throw UsageError("n must be at least 2");
    SelectOptions opt;
    opt.seed = a.seed;
    opt.budget = a.budget;
    const std::string m = lowercase(a.method);
    Selection sel;
    if (m == "jlsv1") {
        sel = select_jlsv1(p, a.n, opt);
    } else if (m == "jlsv1-subfield") {
        if (a.n < 4 || a.n % 2) throw UsageError("jlsv1-subfield needs even n >= 4");
        sel = select_jlsv1_with_subfield_tower(p, a.n, opt);
    } else if (m == "gjl") {
        const int d = a.d == 0 ? a.n : a.d;
        if (d < a.n) throw UsageError("gjl needs d >= n");
        sel = select_gjl(p, a.n, d, opt);
    } else if (m == "conj") {
        sel = select_conjugation(p, a.n, opt);
    } else if (m == "conj-subfield") {
        if (a.n < 4 || a.n % 2) throw UsageError("conj-subfield needs even n >= 4");
        sel = select_conjugation_with_subfield_tower(p, a.n, opt);
    } else {
        throw UsageError("unknown method: " + a.method);
    }
    if (!sel.tower) sel.tower = detect_tower(sel.psi);

    std::optional<Integer> ell;
    std::string ell_note;
    if (!a.no_ell) {
        try {
            FactorEffort effort;
            effort.rho_iterations = std::uint64_t{1} << 22;
            ell = find_ell(*sel.field(), 0, effort);
        } catch (const std::domain_error& e) {
            ell_note = e.what();
        }
    }
    SelectionReport rep = verify_selection(sel);
    const json doc = params_to_json(sel, ell);
    if (!a.out.empty()) write_json_file(a.out, doc);

    if (as_json) {
        json r{{"params", doc},
               {"report",
                {{"ok", rep.ok},
                 {"table_conformant", rep.table_conformant},
                 {"deg_f", rep.deg_f},
                 {"deg_g", rep.deg_g},
                 {"f_bits", rep.f_bits},
                 {"g_bits", rep.g_bits},
                 {"f_irreducible", witness_name(rep.f_witness)},
                 {"g_irreducible", witness_name(rep.g_witness)},
                 {"failures", rep.failures}}}};
        std::cout << r.dump(2) << '\n';
    } else {
        if (a.out.empty()) std::cout << doc.dump(2) << '\n';
        std::cout << "method " << to_string(sel.method) << "  n " << sel.n << "  p " << bit_length(p) << " bits\n"
                  << "  f: degree " << rep.deg_f << ", |f|inf " << rep.f_bits << " bits, irreducible "
                  << witness_name(rep.f_witness) << '\n'
                  << "  g: degree " << rep.deg_g << ", |g|inf " << rep.g_bits << " bits, irreducible "
                  << witness_name(rep.g_witness) << '\n'
                  << "  tower: " << (sel.tower ? to_string(sel.tower->variant) : std::string("none")) << '\n'
                  << "  ell: " << (ell ? std::to_string(bit_length(*ell)) + " bits" : "not set (" + ell_note + ")")
                  << '\n'
                  << "  profile " << (rep.table_conformant ? "conforms" : "does NOT conform") << '\n';
        for (const auto& f : rep.failures) std::cout << "  failure: " << f << '\n';
    }
    return rep.ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

struct ReduceArgs {
    std::string params, target, strategy = "auto", out;
    int radius = 0;
};

int cmd_reduce(const ReduceArgs& a, bool as_json) {
    ParamsDocument doc = load_params(a.params);
    const Selection& sel = doc.sel;
    FieldCtxPtr ctx = sel.field(doc.ell);
    const FqElement s = parse_target(a.target, ctx);
    const Strategy requested = parse_strategy(lowercase(a.strategy));
    const Strategy st = resolve_strategy(requested, sel);
    if ((st == Strategy::Subfield || st == Strategy::Combined) && !sel.tower)
        throw UsageError("strategy " + to_string(st) + " needs a selection with a quadratic-subfield tower");
    if (a.radius < 0) throw UsageError("radius must be non-negative");
    ReductionReport rep;
    try {
        rep = reduce_target(s, sel, st);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    if (a.radius > 0 && st != Strategy::Naive && st != Strategy::Fraction) rep = small_combinations(rep, a.radius);
    json j = report_to_json(rep);
    j["strategy"] = to_string(st);
    if (!a.out.empty()) write_json_file(a.out, j);
    if (as_json) {
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::cout << "strategy " << to_string(st) << "  kind " << to_string(rep.kind) << "  log2 Q " << fixed(rep.q_bits, 1)
              << '\n'
              << "predicted exponent " << rep.exponent.get_str() << " (" << fixed(rep.exponent.get_d(), 4)
              << ")  predicted norm " << fixed(rep.predicted_bits, 1) << " bits\n";
    std::cout << std::setw(5) << "#" << std::setw(8) << "row" << std::setw(12) << "norm bits" << std::setw(12)
              << "norm dd" << std::setw(12) << "exponent" << '\n';
    for (std::size_t i = 0; i < rep.candidates.size(); ++i) {
        const auto& c = rep.candidates[i];
        const double e = rep.q_bits > 0 ? static_cast<double>(c.norm_bits()) / rep.q_bits : 0.0;
        std::cout << std::setw(5) << i << std::setw(8) << c.row << std::setw(12) << c.norm_bits() << std::setw(12)
                  << decimal_digits(c.norm) << std::setw(12) << fixed(e, 4) << '\n';
    }
    if (rep.discarded) std::cout << rep.discarded << " rows failed the subfield cofactor check\n";
    return rep.candidates.empty() ? kFailed : kOk;
}

// ---------------------------------------------------------------------------

struct BootArgs {
    std::string params, target, strategy = "auto", out;
    double b_bits = 30;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::size_t max_trials = 10000;
    int radius = 1;
    std::size_t max_candidates = 0;
    std::uint64_t rho_budget = std::uint64_t{1} << 26;
};

int cmd_boot(const BootArgs& a, bool as_json) {
    ParamsDocument doc = load_params(a.params);
    const Selection& sel = doc.sel;
    if (!doc.ell) {
        doc.ell = find_ell(*sel.field());
        std::cerr << "note: ell not in parameters, using the largest prime factor of Phi_n(p) found ("
                  << bit_length(*doc.ell) << " bits)\n";
    }
    FieldCtxPtr ctx = sel.field(doc.ell);
    const FqElement s = parse_target(a.target, ctx);
    if (s.is_zero()) throw UsageError("target must be nonzero");
    if (a.b_bits < 1 || a.b_bits > 4096) throw UsageError("--B-bits out of range");
    if (a.radius < 0) throw UsageError("radius must be non-negative");
    BootConfig cfg;
    cfg.seed = a.seed;
    cfg.workers = a.workers;
    cfg.max_trials = a.max_trials;
    cfg.radius = a.radius;
    cfg.max_candidates = a.max_candidates;
    cfg.strategy = parse_strategy(lowercase(a.strategy));
    cfg.effort.rho_iterations = a.rho_budget;
    const Strategy st = resolve_strategy(cfg.strategy, sel);
    if ((st == Strategy::Subfield || st == Strategy::Combined) && !sel.tower)
        throw UsageError("strategy " + to_string(st) + " needs a selection with a quadratic-subfield tower");
    Integer bound;
    if (a.b_bits == std::floor(a.b_bits)) bound = pow(Integer(2), static_cast<unsigned long>(a.b_bits));
    else bound = Integer(std::ldexp(1.0, static_cast<int>(std::floor(a.b_bits))) * std::exp2(a.b_bits - std::floor(a.b_bits)));

    BootCertificate cert;
    try {
        cert = find_boot(ctx, sel, s, bound, cfg);
    } catch (const BootNotFound& e) {
        if (as_json)
            std::cout << json{{"found", false},
                              {"trials", e.trials()},
                              {"candidates", e.candidates()},
                              {"best_norm_bits", e.best_bits()},
                              {"undecided", e.undecided()}}
                             .dump(2)
                      << '\n';
        else std::cout << e.what() << '\n';
        return kFailed;
    }
    const json j = certificate_to_json(cert);
    if (!a.out.empty()) write_json_file(a.out, j);
    if (as_json) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "found t = " << to_decimal(cert.t) << " after " << cert.trials << " trials (" << fixed(cert.wall_seconds, 2)
                  << " s, worker " << cert.worker << ")\n"
                  << "kind " << to_string(cert.kind) << "  norm " << bit_length(cert.norm) << " bits, "
                  << decimal_digits(cert.norm) << " dd\n"
                  << "largest prime " << bit_length(cert.factorization.largest_prime()) << " bits\n";
        for (const auto& w : cert.warnings) std::cout << "warning: " << w << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& path, bool as_json) {
    BootVerification v;
    try {
        BootCertificate cert = certificate_from_json(read_json_file(path));
        v = verify_boot(cert);
    } catch (const DocumentError& e) {
        v.fail(std::string("malformed certificate: ") + e.what());
    } catch (const std::exception& e) {
        v.fail(std::string("invalid certificate: ") + e.what());
    }
    if (as_json) {
        std::cout << json{{"ok", v.ok}, {"failures", v.failures}}.dump(2) << '\n';
    } else {
        std::cout << (v.ok ? "certificate verified" : "certificate INVALID") << '\n';
        for (const auto& f : v.failures) std::cout << "  " << f << '\n';
    }
    return v.ok ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

struct ComplexityArgs {
    std::string method = "conj", variant = "plain";
    int n = 2;
    double q_dd = 180;
    double b_bits = 0;
};

int cmd_complexity(const ComplexityArgs& a, bool as_json) {
    const SelectionMethod method = parse_method(lowercase(a.method));
    const NormVariant variant = parse_variant(lowercase(a.variant));
    if (a.n < 2) throw UsageError("n must be at least 2");
    if (variant == NormVariant::Subfield && (a.n < 4 || a.n % 2)) throw UsageError("subfield variant needs even n >= 4");
    if (a.q_dd <= 0) throw UsageError("--Q-dd must be positive");
    const double q_bits = a.q_dd * std::log2(10.0);
    const Prediction pr =
        predict(method, a.n, q_bits, variant, a.b_bits > 0 ? std::optional<double>(a.b_bits) : std::nullopt);
    const ComplexityProfile& cp = pr.profile;
    if (as_json) {
        json j{{"method", to_string(method)},
               {"n", a.n},
               {"variant", to_string(variant)},
               {"Q_dd", a.q_dd},
               {"Q_bits", q_bits},
               {"e", cp.e.get_str()},
               {"c", cp.c},
               {"gamma", cp.gamma},
               {"norm_bits", pr.norm_bits},
               {"work_bits", pr.work_bits},
               {"special_q_bits", pr.special_q_bits},
               {"B_bits", pr.b_bits},
               {"expected_trials", pr.expected_trials}};
        if (cp.c_exact) j["c_exact"] = cp.c_exact->get_str();
        if (cp.gamma_exact) j["gamma_exact"] = cp.gamma_exact->get_str();
        std::cout << j.dump(2) << '\n';
        return kOk;
    }
    std::cout << "method " << to_string(method) << "  n " << a.n << "  variant " << to_string(variant) << "  Q "
              << a.q_dd << " dd (" << fixed(q_bits, 1) << " bits)\n"
              << "  e       " << cp.e.get_str() << " (" << fixed(cp.e.get_d(), 4) << ")\n"
              << "  c       " << fixed(cp.c, 2) << (cp.c_exact ? "  = " + cp.c_exact->get_str() : "") << '\n'
              << "  gamma   " << fixed(cp.gamma, 3) << (cp.gamma_exact ? "  = " + cp.gamma_exact->get_str() : "") << '\n'
              << "  norm    " << fixed(pr.norm_bits, 1) << " bits\n"
              << "  work    L_Q[1/3, " << fixed(cp.c, 2) << "] = 2^" << fixed(pr.work_bits, 1) << '\n'
              << "  q bound L_Q[2/3, " << fixed(cp.gamma, 3) << "] = " << fixed(pr.special_q_bits, 1) << " bits\n"
              << "  trials  " << std::setprecision(4) << pr.expected_trials << " expected at B = 2^"
              << fixed(pr.b_bits, 1) << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_worked_examples(bool as_json) {
    bool all = true;
    json results = json::array();
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        all = all && ok;
        results.push_back(json{{"check", name}, {"pass", ok}, {"detail", detail}});
        if (!as_json) std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    };
    for (const auto& ex : reference::worked_examples()) {
        const Selection sel = ex.selection();
        const Integer norm = norm_abs(sel.f, ex.vector_poly(0));
        record(ex.name + " resultant", norm == parse_integer(ex.first_norm),
               std::to_string(decimal_digits(norm)) + " dd");

        FieldCtxPtr ctx = sel.field();
        const FqElement s(ctx, reference::WorkedExample::ints(ex.s));
        const Strategy st = resolve_strategy(Strategy::Auto, sel);
        const ReductionReport rep = reduce_target(s, sel, st);
        const std::size_t dd = decimal_digits(rep.best().norm);
        record(ex.name + " reduction", dd <= ex.printed_digits + 1,
               to_string(st) + " best " + std::to_string(dd) + " dd, printed " + std::to_string(ex.printed_digits));

        const int d = cofactor_degree(rep.kind);
        bool member = true;
        for (std::size_t i = 0; i < ex.vectors.size(); ++i)
            member = member && subfield_cofactor(ex.vector_poly(i), s, d).has_value();
        record(ex.name + " cofactor", member, "printed vectors map into F_{p^" + std::to_string(d) + "} * s");

        if (!ex.r.empty() && sel.tower) {
            const SubfieldReduction sr = subfield_reduce(make_monic(s).monic, *sel.tower);
            const auto want = reference::WorkedExample::ints(ex.r);
            record(ex.name + " subfield", sr.r.coeffs()[0] == want[0] && sr.r.coeffs()[1] == want[1] &&
                                              sr.r.coeff(2) == 1 && sr.r.degree() == 2,
                   "degree-2 representative");
        }
    }
    const double q_bits = 120 * std::log2(10.0);
    for (const auto& fig : reference::l_figures_120dd()) {
        const double bits = l_eval_bits(q_bits, fig.alpha, fig.c);
        std::ostringstream name;
        name << "L_Q[" << (fig.alpha < 0.5 ? "1/3" : "2/3") << ", " << fig.c << "] at 120 dd";
        record(name.str(), std::fabs(bits - fig.bits) <= 2, fixed(bits, 1) + " bits, quoted " + fixed(fig.bits, 0));
    }
    if (as_json) std::cout << json{{"ok", all}, {"checks", results}}.dump(2) << '\n';
    return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nfsboot: booting step of the NFS individual logarithm in F_{p^n}"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    PolyselectArgs ps;
    auto* c_ps = app.add_subcommand("polyselect", "select f, g and psi for F_{p^n}");
    c_ps->add_option("--p", ps.p, "prime p (decimal)")->required();
    c_ps->add_option("--n", ps.n, "extension degree")->required();
    c_ps->add_option("--method", ps.method, "jlsv1 | jlsv1-subfield | gjl | conj | conj-subfield")->required();
    c_ps->add_option("--d", ps.d, "gjl: degree of g (default n)");
    c_ps->add_option("--seed", ps.seed, "random seed");
    c_ps->add_option("--budget", ps.budget, "selection attempts");
    c_ps->add_flag("--no-ell", ps.no_ell, "do not search for ell");
    c_ps->add_option("--out", ps.out, "parameter document path");

    ReduceArgs rd;
    auto* c_rd = app.add_subcommand("reduce", "reduce a target to small preimages");
    c_rd->add_option("--params", rd.params, "parameter document")->required();
    c_rd->add_option("--target", rd.target, "c0,c1,... | file.json | x")->required();
    c_rd->add_option("--strategy", rd.strategy, "naive | fraction | monic | subfield | combined | auto");
    c_rd->add_option("--radius", rd.radius, "small-combination radius");
    c_rd->add_option("--out", rd.out, "report path");

    BootArgs bt;
    auto* c_bt = app.add_subcommand("boot", "search t with a B-smooth preimage of s^t");
    c_bt->add_option("--params", bt.params, "parameter document")->required();
    c_bt->add_option("--target", bt.target, "c0,c1,... | file.json | x")->required();
    c_bt->add_option("--B-bits", bt.b_bits, "smoothness bound log2 B");
    c_bt->add_option("--seed", bt.seed, "random seed");
    c_bt->add_option("--workers", bt.workers, "worker threads");
    c_bt->add_option("--max-trials", bt.max_trials, "trial budget");
    c_bt->add_option("--candidates", bt.max_candidates, "candidates tested per trial (0 for all)");
    c_bt->add_option("--strategy", bt.strategy, "naive | fraction | monic | subfield | combined | auto");
    c_bt->add_option("--radius", bt.radius, "small-combination radius");
    c_bt->add_option("--rho-budget", bt.rho_budget, "rho iterations per norm");
    c_bt->add_option("--out", bt.out, "certificate path");

    std::string cert_path;
    auto* c_vf = app.add_subcommand("verify", "re-check a boot certificate");
    c_vf->add_option("--cert", cert_path, "certificate path")->required();

    ComplexityArgs cx;
    auto* c_cx = app.add_subcommand("complexity", "booting constants and concrete bit sizes");
    c_cx->add_option("--method", cx.method, "jlsv1 | gjl | conj")->required();
    c_cx->add_option("--n", cx.n, "extension degree")->required();
    c_cx->add_option("--Q-dd", cx.q_dd, "size of Q in decimal digits")->required();
    c_cx->add_option("--variant", cx.variant, "plain | subfield");
    c_cx->add_option("--B-bits", cx.b_bits, "smoothness bound for the trial estimate");

    auto* c_ex = app.add_subcommand("worked-examples", "re-run the built-in worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*c_ps) return cmd_polyselect(ps, as_json);
        if (*c_rd) return cmd_reduce(rd, as_json);
        if (*c_bt) return cmd_boot(bt, as_json);
        if (*c_vf) return cmd_verify(cert_path, as_json);
        if (*c_cx) return cmd_complexity(cx, as_json);
        if (*c_ex) return cmd_worked_examples(as_json);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DocumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}
