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

#ifndef NFSBOOT_COMMON_HPP
#define NFSBOOT_COMMON_HPP

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nfsboot {

inline constexpr std::string_view kVersion = "1.0.0";

enum class SelectionMethod { Jlsv1, Gjl, Conj };

/// Plain: monic preimage lattices. Subfield: quadratic-subfield simplification
/// followed by the combined lattice (even n with a tower only).
enum class NormVariant { Plain, Subfield };

inline std::string to_string(SelectionMethod m) {
    switch (m) {
        case SelectionMethod::Jlsv1: return "JLSV1";
        case SelectionMethod::Gjl: return "GJL";
        case SelectionMethod::Conj: return "CONJ";
    }
    return "?";
}

inline std::string to_string(NormVariant v) { return v == NormVariant::Plain ? "plain" : "subfield"; }

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

inline SelectionMethod parse_method(std::string_view s) {
    const std::string l = lowercase(s);
    if (l == "jlsv1") return SelectionMethod::Jlsv1;
    if (l == "gjl") return SelectionMethod::Gjl;
    if (l == "conj" || l == "conjugation") return SelectionMethod::Conj;
    throw std::invalid_argument("unknown selection method: " + std::string(s));
}

inline NormVariant parse_variant(std::string_view s) {
    const std::string l = lowercase(s);
    if (l == "plain") return NormVariant::Plain;
    if (l == "subfield") return NormVariant::Subfield;
    throw std::invalid_argument("unknown variant: " + std::string(s));
}

}  // namespace nfsboot

#endif  // NFSBOOT_COMMON_HPP
