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

// JSON documents. Integers are decimal strings; polynomials are arrays of
// decimal strings with index = degree.

#ifndef NFSBOOT_IO_HPP
#define NFSBOOT_IO_HPP

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nfsboot/boot.hpp"
#include "nfsboot/common.hpp"
#include "nfsboot/polyselect.hpp"
#include "nfsboot/preimage.hpp"

namespace nfsboot {

using json = nlohmann::ordered_json;

/// Raised on malformed documents.
class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace io {

inline json integer(const Integer& a) { return to_decimal(a); }

inline Integer integer(const json& j) {
    if (!j.is_string()) throw DocumentError("expected a decimal string");
    try {
        return parse_integer(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw DocumentError(e.what());
    }
}

inline json coeffs(const std::vector<Integer>& c) {
    json a = json::array();
    for (const auto& v : c) a.push_back(to_decimal(v));
    return a;
}

inline json poly(const IntPoly& f) { return coeffs(f.coeffs()); }
inline json poly(const ModPoly& f) { return coeffs(f.coeffs()); }

inline std::vector<Integer> coeff_vector(const json& j) {
    if (!j.is_array()) throw DocumentError("expected an array of decimal strings");
    std::vector<Integer> out;
    for (const auto& e : j) out.push_back(integer(e));
    return out;
}

inline IntPoly int_poly(const json& j) { return IntPoly(coeff_vector(j)); }

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DocumentError(std::string("missing field: ") + key);
    return j.at(key);
}

}  // namespace io

// ---------------------------------------------------------------------------
// Selection / parameters

inline json tower_to_json(const TowerForm& t) {
    return json{{"variant", to_string(t.variant)},
                {"y1", io::integer(t.y1)},
                {"y0", io::integer(t.y0)},
                {"pz", io::poly(t.pz)}};
}

inline TowerForm tower_from_json(const json& j, const Integer& p) {
    TowerForm t;
    const std::string v = io::field(j, "variant").get<std::string>();
    if (v == "additive") t.variant = TowerVariant::Additive;
    else if (v == "twisted") t.variant = TowerVariant::Twisted;
    else throw DocumentError("unknown tower variant: " + v);
    t.y1 = io::integer(io::field(j, "y1"));
    t.y0 = io::integer(io::field(j, "y0"));
    t.pz = ModPoly(io::coeff_vector(io::field(j, "pz")), p);
    return t;
}

inline json params_to_json(const Selection& sel, const std::optional<Integer>& ell = std::nullopt) {
    json j;
    j["version"] = std::string(kVersion);
    j["p"] = io::integer(sel.p);
    j["n"] = sel.n;
    j["method"] = to_string(sel.method);
    j["f"] = io::poly(sel.f);
    j["g"] = io::poly(sel.g);
    j["psi"] = io::poly(sel.psi);
    if (ell) j["ell"] = io::integer(*ell);
    if (sel.tower) j["tower"] = tower_to_json(*sel.tower);
    json aux = json::object();
    if (sel.aux.y) aux["y"] = io::integer(*sel.aux.y);
    if (sel.aux.u) aux["u"] = io::integer(*sel.aux.u);
    if (sel.aux.v) aux["v"] = io::integer(*sel.aux.v);
    if (sel.aux.d) aux["d"] = *sel.aux.d;
    if (sel.aux.py) aux["py"] = io::poly(*sel.aux.py);
    if (sel.aux.f0) aux["f0"] = io::poly(*sel.aux.f0);
    if (sel.aux.f1) aux["f1"] = io::poly(*sel.aux.f1);
    if (!aux.empty()) j["aux"] = aux;
    j["seed"] = sel.seed;
    return j;
}

struct ParamsDocument {
    Selection sel;
    std::optional<Integer> ell;
};

inline ParamsDocument params_from_json(const json& j) {
    ParamsDocument doc;
    Selection& s = doc.sel;
    try {
        s.p = io::integer(io::field(j, "p"));
        s.n = io::field(j, "n").get<int>();
        s.method = parse_method(io::field(j, "method").get<std::string>());
        s.f = io::int_poly(io::field(j, "f"));
        s.g = io::int_poly(io::field(j, "g"));
        if (s.p < 2) throw DocumentError("p must be at least 2");
        s.psi = ModPoly(io::coeff_vector(io::field(j, "psi")), s.p);
        if (j.contains("ell")) doc.ell = io::integer(j.at("ell"));
        if (j.contains("tower")) s.tower = tower_from_json(j.at("tower"), s.p);
        if (j.contains("aux")) {
            const json& a = j.at("aux");
            if (a.contains("y")) s.aux.y = io::integer(a.at("y"));
            if (a.contains("u")) s.aux.u = io::integer(a.at("u"));
            if (a.contains("v")) s.aux.v = io::integer(a.at("v"));
            if (a.contains("d")) s.aux.d = a.at("d").get<int>();
            if (a.contains("py")) s.aux.py = io::int_poly(a.at("py"));
            if (a.contains("f0")) s.aux.f0 = io::int_poly(a.at("f0"));
            if (a.contains("f1")) s.aux.f1 = io::int_poly(a.at("f1"));
        }
        if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw DocumentError(e.what());
    } catch (const std::invalid_argument& e) {
        throw DocumentError(e.what());
    }
    return doc;
}

inline bool operator==(const Selection& a, const Selection& b) {
    return a.p == b.p && a.n == b.n && a.method == b.method && a.f == b.f && a.g == b.g && a.psi == b.psi &&
           a.aux == b.aux && a.seed == b.seed && a.tower == b.tower;
}

/// Hex SHA-256 of the compact serialization.
inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

inline std::string params_digest(const Selection& sel, const std::optional<Integer>& ell) {
    json j = params_to_json(sel, ell);
    j.erase("version");
    return sha256_hex(j.dump());
}

// ---------------------------------------------------------------------------
// Factorizations, reports, certificates

inline json factorization_to_json(const Factorization& f) {
    json fs = json::array();
    for (const auto& pp : f.factors) fs.push_back(json::array({io::integer(pp.prime), pp.exponent}));
    return json{{"value", io::integer(f.value)},
                {"factors", fs},
                {"cofactor", io::integer(f.cofactor)},
                {"verdict", to_string(f.verdict)}};
}

inline Factorization factorization_from_json(const json& j) {
    Factorization f;
    f.value = io::integer(io::field(j, "value"));
    for (const auto& e : io::field(j, "factors")) {
        if (!e.is_array() || e.size() != 2) throw DocumentError("factor entries are [prime, exponent]");
        f.factors.push_back({io::integer(e[0]), e[1].get<unsigned long>()});
    }
    f.cofactor = io::integer(io::field(j, "cofactor"));
    const std::string v = j.value("verdict", std::string("UNDECIDED"));
    f.verdict = v == "SMOOTH" ? SmoothVerdict::Smooth : v == "NOT_SMOOTH" ? SmoothVerdict::NotSmooth : SmoothVerdict::Undecided;
    return f;
}

inline json report_to_json(const ReductionReport& r) {
    json cands = json::array();
    for (const auto& c : r.candidates) {
        json comb = json::array();
        for (long v : c.combination) comb.push_back(v);
        cands.push_back(json{{"coeffs", io::poly(c.coeffs)},
                             {"norm", io::integer(c.norm)},
                             {"norm_bits", c.norm_bits()},
                             {"norm_digits", decimal_digits(c.norm)},
                             {"row", c.row},
                             {"combination", comb}});
    }
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(io::poly(row));
    return json{{"version", std::string(kVersion)},
                {"kind", to_string(r.kind)},
                {"target", io::coeffs(r.target.coeffs())},
                {"det", io::integer(r.det)},
                {"lll", {{"delta", r.params.delta.get_str()}, {"eta", r.params.eta.get_str()}}},
                {"exponent", r.exponent.get_str()},
                {"q_bits", r.q_bits},
                {"predicted_norm_bits", r.predicted_bits},
                {"first_row_bounded", r.first_row_bounded},
                {"discarded", r.discarded},
                {"rows", rows},
                {"candidates", cands}};
}

inline json certificate_to_json(const BootCertificate& c) {
    json comb = json::array();
    for (long v : c.combination) comb.push_back(v);
    json warn = json::array();
    for (const auto& w : c.warnings) warn.push_back(w);
    json j{{"version", std::string(kVersion)},
           {"params_digest", params_digest(c.sel, c.ell)},
           {"params", params_to_json(c.sel, c.ell)},
           {"strategy", to_string(c.strategy)},
           {"kind", to_string(c.kind)},
           {"target", io::coeffs(c.target)},
           {"t", io::integer(c.t)},
           {"preimage", io::poly(c.preimage)},
           {"norm", io::integer(c.norm)},
           {"factorization", factorization_to_json(c.factorization)},
           {"bound", io::integer(c.bound)},
           {"candidate_index", c.candidate_index},
           {"combination", comb},
           {"seed", c.seed},
           {"worker", c.worker},
           {"trials", c.trials},
           {"wall_seconds", c.wall_seconds},
           {"warnings", warn}};
    if (c.denominator) {
        j["denominator"] = io::poly(*c.denominator);
        j["denominator_norm"] = io::integer(*c.denominator_norm);
        j["denominator_factorization"] = factorization_to_json(*c.denominator_factorization);
    }
    return j;
}

inline BootCertificate certificate_from_json(const json& j) {
    BootCertificate c;
    try {
        ParamsDocument pd = params_from_json(io::field(j, "params"));
        c.sel = pd.sel;
        if (!pd.ell) throw DocumentError("certificate parameters lack ell");
        c.ell = *pd.ell;
        c.strategy = parse_strategy(io::field(j, "strategy").get<std::string>());
        c.kind = parse_preimage_kind(io::field(j, "kind").get<std::string>());
        c.target = io::coeff_vector(io::field(j, "target"));
        c.t = io::integer(io::field(j, "t"));
        c.preimage = io::int_poly(io::field(j, "preimage"));
        c.norm = io::integer(io::field(j, "norm"));
        c.factorization = factorization_from_json(io::field(j, "factorization"));
        c.bound = io::integer(io::field(j, "bound"));
        c.candidate_index = j.value("candidate_index", std::size_t{0});
        if (j.contains("combination")) c.combination = j.at("combination").get<std::vector<long>>();
        c.seed = j.value("seed", std::uint64_t{0});
        c.worker = j.value("worker", 0u);
        c.trials = j.value("trials", std::size_t{0});
        c.wall_seconds = j.value("wall_seconds", 0.0);
        if (j.contains("warnings")) c.warnings = j.at("warnings").get<std::vector<std::string>>();
        if (j.contains("denominator")) {
            c.denominator = io::int_poly(j.at("denominator"));
            c.denominator_norm = io::integer(io::field(j, "denominator_norm"));
            c.denominator_factorization = factorization_from_json(io::field(j, "denominator_factorization"));
        }
        if (j.contains("params_digest") && j.at("params_digest") != params_digest(c.sel, c.ell))
            throw DocumentError("parameter digest mismatch");
    } catch (const json::exception& e) {
        throw DocumentError(e.what());
    } catch (const std::invalid_argument& e) {
        throw DocumentError(e.what());
    }
    return c;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DocumentError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DocumentError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace nfsboot

#endif  // NFSBOOT_IO_HPP
