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

// Published worked examples at Q = p^n of 180 decimal digits: one per
// selection method. Coefficients are little-endian decimal strings.

#ifndef NFSBOOT_REFERENCE_HPP
#define NFSBOOT_REFERENCE_HPP

#include <string>
#include <vector>

#include "nfsboot/arith.hpp"
#include "nfsboot/common.hpp"
#include "nfsboot/polyselect.hpp"

namespace nfsboot::reference {

struct WorkedExample {
    std::string name;
    SelectionMethod method;
    int n;
    std::string p;
    std::vector<std::string> f, g, psi, s;
    std::string ell;                               ///< empty when not published
    std::vector<std::string> r;                    ///< subfield-simplified target, when published
    std::vector<std::vector<std::string>> vectors;  ///< printed reduced preimages
    std::string first_norm;                        ///< |Res(f, vectors[0])|
    std::size_t printed_digits;                    ///< digit count quoted next to the norm
    double special_q_bits;                         ///< quoted special-q bound
    double c;                                      ///< quoted L_Q[1/3, c] constant

    Integer prime() const { return parse_integer(p); }

    static std::vector<Integer> ints(const std::vector<std::string>& v) {
        std::vector<Integer> out;
        for (const auto& e : v) out.push_back(parse_integer(e));
        return out;
    }
    IntPoly f_poly() const { return IntPoly(ints(f)); }
    IntPoly vector_poly(std::size_t i) const { return IntPoly(ints(vectors.at(i))); }

    Selection selection() const {
        Selection sel;
        sel.p = prime();
        sel.n = n;
        sel.method = method;
        sel.f = f_poly();
        sel.psi = ModPoly(ints(psi), sel.p);
        if (!g.empty()) {
            sel.g = IntPoly(ints(g));
        } else if (method == SelectionMethod::Conj && n == 2) {
            // unpublished g: psi = g0 + y g1 with g0 = x^2 + 1, g1 = x, y^2 = 2
            const IntPoly g0{1, 0, 1}, g1{0, 1};
            const Integer y = sel.psi.coeff(1);
            RationalPair uv = rational_reconstruction(y, sel.p);
            sel.g = g0 * uv.v + g1 * uv.u;
            sel.aux.y = y;
            sel.aux.u = uv.u;
            sel.aux.v = uv.v;
            sel.aux.py = IntPoly{-2, 0, 1};
            sel.aux.f0 = g0;
            sel.aux.f1 = g1;
        }
        if (method == SelectionMethod::Gjl) sel.aux.d = sel.f.degree() - 1;
        sel.tower = n >= 4 ? detect_tower(sel.psi) : std::nullopt;
        return sel;
    }
};

inline const std::vector<WorkedExample>& worked_examples() {
    static const std::vector<WorkedExample> ex = {
        {
            "n2-conjugation",
            SelectionMethod::Conj,
            2,
            "314159265358979323846264338327950288419716939937510582097494459230781640628620899877709223",
            {"1", "0", "0", "0", "1"},
            {},
            {"1", "107781513095823018666989883102244394809412297643895349097410632508049455376698784691699593", "1"},
            {"95888066250767326321142016575753199022772235411526548684808440973949208471194724618090692",
             "271828182845904523536028747135319858432320810108854154561922281807332337576949857498874314"},
            "",
            {},
            {
                {"856176942703613067714", "5577462470851948956594", "13679035553643009711078", "3603397286457205828471"},
                {"1117888241691130060409", "8957750025494673822198", "-4498175796333854926013", "9219461324482190814893"},
                {"5448432247710482696848", "-17801940403216866332911", "5699666741226225385259", "28268390944624183141702"},
                {"46926508290544662542327", "-5570636518084759125513", "3212585012235692902287", "3352162792941463140060"},
            },
            "21398828029520168611169045280302428434866966657097075761337598070760485340948677800162921",
            90,
            64,
            1.14,
        },
        {
            "n3-gjl",
            SelectionMethod::Gjl,
            3,
            "314159265358979323846264338327950288419716939937510582723487",
            {"1", "-1", "0", "0", "1"},
            {"2029073371791914965976041284208208450267120556", "-10123533234834473316053289623165756437267298403",
             "6099516524325575060821841620140470618863403881", "2877670889871354566080333172463852249908214391"},
            {"86398309157441443539791899517788388184853963071847115552638",
             "126798022201426805402186761110440110121157863791585328913565",
             "227138144243642333129902287795664772043667053260089299478579", "1"},
            {"75319902277223541152654868480858951626493739297259139859875",
             "281807332337576949857498874314095888066250767326321142016575",
             "271828182845904523536028747135319858432320810108854154561922"},
            "",
            {},
            {
                {"-159912786936943488400590389195", "177828199322419553601266354904", "165819631832105094449987774814",
                 "159774930637505900093909307018"},
                {"255238068915917937217884608875", "322722415562853671586868492721", "-521269847225531188433352927453",
                 "136583029354520905232412941048"},
                {"535978811382585906107397024241", "-105084220861844155797015713666", "499013489972894059858543976363",
                 "118289007598934068726663000266"},
                {"-389720783049275894296185820094", "-373289346204280810310169575030", "-240161030577722451131067159670",
                 "411603890054539500131474313773"},
            },
            "997840136509677868374734441582077227769466501519927620849763845265357390584602475858356409809239812991"
            "892769866071779",
            117,
            77,
            1.26,
        },
        {
            "n4-jlsv1",
            SelectionMethod::Jlsv1,
            4,
            "314159265358979323846264338327950288419980011",
            {"1", "1", "70898154036220641093162", "1", "1"},
            {"101916096427067171567872", "101916096427067171567872", "220806328874049898551011",
             "101916096427067171567872", "101916096427067171567872"},
            {"1", "1", "70898154036220641093162", "1", "1"},
            {"41152654868480844097394920847127588391952018", "95888066250767326321142016575753199022772235",
             "108854154561922281807332337576949857498874314", "271828182845904523536028747135319858432320810"},
            "49348022005446793094172454999380755676651143247932834802731698819521755649884772819780061",
            {"104642440649937756368545765334741049207121011", "134969122397263102979743226915282355400161911", "1"},
            {
                {"1092494800287557029045", "-5618779793817086743792", "290736827330861011376", "5842961997149263751946"},
                {"-5734086421794811858814", "-4425488394163838271378", "15552590269131889589575", "1640842643903161175359"},
                {"16261617079167797580912", "10617583944234090880579", "13768771242650957399419", "6450686906504525374853"},
                {"-22787282698718065284157", "12799300411012246114079", "698185571704810258344", "16929135804139878865391"},
            },
            "14521439292172711151668611104133579982787299949310242601944218977645007049527"
            "012365602178307413694530274906757675751698466464799004360546745210214642178285",
            155,
            92,
            1.34,
        },
    };
    return ex;
}

/// L-notation figures quoted for F_{p^4} at 120 decimal digits: (alpha, c, bits).
struct LFigure {
    double alpha, c, bits;
};

inline const std::vector<LFigure>& l_figures_120dd() {
    static const std::vector<LFigure> v = {{1.0 / 3.0, 1.38, 40}, {2.0 / 3.0, 0.634, 69}, {2.0 / 3.0, 0.75, 82}};
    return v;
}

/// Booting constants c printed per (method, n, variant).
struct ConstantCell {
    SelectionMethod method;
    int n;
    NormVariant variant;
    double c;
};

inline const std::vector<ConstantCell>& booting_constant_table() {
    static const std::vector<ConstantCell> v = {
        {SelectionMethod::Gjl, 2, NormVariant::Plain, 1.14},
        {SelectionMethod::Gjl, 3, NormVariant::Plain, 1.26},
        {SelectionMethod::Gjl, 5, NormVariant::Plain, 1.34},
        {SelectionMethod::Gjl, 4, NormVariant::Subfield, 1.14},
        {SelectionMethod::Gjl, 6, NormVariant::Subfield, 1.26},
        {SelectionMethod::Conj, 2, NormVariant::Plain, 1.14},
        {SelectionMethod::Conj, 3, NormVariant::Plain, 1.26},
        {SelectionMethod::Conj, 5, NormVariant::Plain, 1.34},
        {SelectionMethod::Conj, 4, NormVariant::Subfield, 1.14},
        {SelectionMethod::Conj, 6, NormVariant::Subfield, 1.26},
        {SelectionMethod::Jlsv1, 2, NormVariant::Plain, 1.31},
        {SelectionMethod::Jlsv1, 3, NormVariant::Plain, 1.44},
        {SelectionMethod::Jlsv1, 5, NormVariant::Plain, 1.53},
        {SelectionMethod::Jlsv1, 4, NormVariant::Subfield, 1.38},
        {SelectionMethod::Jlsv1, 6, NormVariant::Subfield, 1.48},
    };
    return v;
}

}  // namespace nfsboot::reference

#endif  // NFSBOOT_REFERENCE_HPP
