// Copyright 2026 The toric-bell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bell/bell_expression.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "bell/coefficients.hpp"
#include "bell/dense.hpp"

namespace bell {

namespace {

using cplx = std::complex<double>;

ObservableRef ref(const TorusLattice& lat, int i, int j, int x, int k) {
    return {lat.wrap({i, j}), x, k};
}

/// One far star/plaquette term (coefficient 1).
BellTerm far_vertex_term(const TorusLattice& lat, SiteCoord v) {
    int d = lat.d();
    return {1.0,
            {ref(lat, v.i - 1, v.j, 0, d - 1), ref(lat, v.i, v.j - 1, 0, d - 1),
             ref(lat, v.i, v.j + 1, 0, 1), ref(lat, v.i + 1, v.j, 0, 1)}};
}

BellTerm far_plaquette_term(const TorusLattice& lat, SiteCoord p) {
    int d = lat.d();
    return {1.0,
            {ref(lat, p.i - 1, p.j, 1, 1), ref(lat, p.i, p.j - 1, 1, d - 1),
             ref(lat, p.i, p.j + 1, 1, 1), ref(lat, p.i + 1, p.j, 1, d - 1)}};
}

/// The 4 + (d-2) substituted generators touching the special site s, each
/// expanded into d terms over the substituted sum on s.
std::vector<GeneratorTerms> special_generators(const TorusLattice& lat, SiteCoord s) {
    int d = lat.d();
    int i = s.i;
    int j = s.j;
    double sd = std::sqrt(static_cast<double>(d));
    cplx l1 = lambda(1, d);
    cplx ld1 = lambda(d - 1, d);
    auto w = [&](long long e) { return omega_power(d, e); };

    GeneratorTerms below{"V" + to_string(lat.wrap({i, j - 1})), 1.0, {}};
    GeneratorTerms above{"V" + to_string(lat.wrap({i, j + 1})), 1.0, {}};
    GeneratorTerms left{"P" + to_string(lat.wrap({i - 1, j})), 1.0, {}};
    GeneratorTerms right{"P" + to_string(lat.wrap({i + 1, j})), 1.0, {}};
    std::vector<GeneratorTerms> extras;
    for (int x = 2; x <= d - 1; ++x) {
        extras.push_back({"E" + to_string(lat.wrap({i, j})) + "(x=" + std::to_string(x) + ")", 2.0, {}});
    }

    for (int y = 0; y < d; ++y) {
        // Star below, special site enters as X -> A-bar_{0,1}.
        below.terms.push_back({1.0 / (sd * l1),
                               {ref(lat, i - 1, j - 1, 0, d - 1), ref(lat, i, j - 2, 0, d - 1),
                                ref(lat, i, j, y, 1), ref(lat, i + 1, j - 1, 0, 1)}});
        // Star above, special site enters daggered -> A-bar_{0,d-1}.
        above.terms.push_back({1.0 / (sd * ld1),
                               {ref(lat, i - 1, j + 1, 0, d - 1), ref(lat, i, j, y, d - 1),
                                ref(lat, i, j + 2, 0, 1), ref(lat, i + 1, j + 1, 0, 1)}});
        // Plaquette on the left, special site daggered -> A-bar_{1,d-1}.
        left.terms.push_back(
            {w(-2 * (d - 1)) / (sd * ld1) * w(-static_cast<long long>(d - 1) * y),
             {ref(lat, i - 2, j, 1, 1), ref(lat, i - 1, j - 1, 1, d - 1),
              ref(lat, i - 1, j + 1, 1, 1), ref(lat, i, j, y, d - 1)}});
        // Plaquette on the right -> A-bar_{1,1}.
        right.terms.push_back({w(-2) / (sd * l1) * w(-y),
                               {ref(lat, i, j, y, 1), ref(lat, i + 1, j - 1, 1, d - 1),
                                ref(lat, i + 1, j + 1, 1, 1), ref(lat, i + 2, j, 1, d - 1)}});
        for (int x = 2; x <= d - 1; ++x) {
            extras[x - 2].terms.push_back(
                {w(-static_cast<long long>(x) * (x + 1)) / (sd * l1) *
                     w(-static_cast<long long>(x) * y),
                 {ref(lat, i - 1, j - 1, 0, x - 1), ref(lat, i, j - 2, 0, x - 1),
                  ref(lat, i, j, y, 1), ref(lat, i + 1, j - 1, x, 1),
                  ref(lat, i + 1, j + 1, 1, x), ref(lat, i + 2, j, 1, d - x)}});
        }
    }

    std::vector<GeneratorTerms> out = {std::move(below), std::move(above), std::move(left),
                                       std::move(right)};
    for (auto& e : extras) {
        out.push_back(std::move(e));
    }
    return out;
}

void append_conjugates(int d, std::vector<BellTerm>& terms) {
    size_t n = terms.size();
    for (size_t t = 0; t < n; ++t) {
        BellTerm cc;
        cc.coeff = std::conj(terms[t].coeff);
        cc.factors = terms[t].factors;
        for (ObservableRef& f : cc.factors) {
            f.mode = d - f.mode;
        }
        terms.push_back(std::move(cc));
    }
}

bool term_less(const BellTerm& a, const BellTerm& b) {
    if (a.factors != b.factors) {
        return a.factors < b.factors;
    }
    if (a.coeff.real() != b.coeff.real()) {
        return a.coeff.real() < b.coeff.real();
    }
    return a.coeff.imag() < b.coeff.imag();
}

}  // namespace

std::vector<GeneratorTerms> expression_generators(const TorusLattice& lat,
                                                  const SpecialSiteSet& specials) {
    ValidationReport report = validate_special_sites(lat, specials);
    if (!report.ok) {
        throw std::invalid_argument("invalid special sites: " + report.message);
    }

    std::vector<SiteCoord> special;
    for (SiteCoord s : specials.sites) {
        special.push_back(lat.wrap(s));
    }
    std::set<SiteCoord> near_vertices;
    std::set<SiteCoord> near_plaquettes;
    for (SiteCoord s : special) {
        near_vertices.insert(lat.wrap({s.i, s.j - 1}));
        near_vertices.insert(lat.wrap({s.i, s.j + 1}));
        near_plaquettes.insert(lat.wrap({s.i - 1, s.j}));
        near_plaquettes.insert(lat.wrap({s.i + 1, s.j}));
    }

    std::vector<GeneratorTerms> out;
    for (SiteCoord v : lat.vertices()) {
        if (!near_vertices.count(v)) {
            out.push_back({"V" + to_string(v), 1.0, {far_vertex_term(lat, v)}});
        }
    }
    for (SiteCoord p : lat.plaquettes()) {
        if (!near_plaquettes.count(p)) {
            out.push_back({"P" + to_string(p), 1.0, {far_plaquette_term(lat, p)}});
        }
    }
    for (SiteCoord s : special) {
        for (auto& g : special_generators(lat, s)) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

namespace {

BellExpression assemble_expression(const TorusLattice& lat, std::vector<SiteCoord> special,
                                   const std::vector<GeneratorTerms>& generators) {
    BellExpression expr;
    expr.L = lat.L();
    expr.d = lat.d();
    expr.special = std::move(special);
    for (const GeneratorTerms& gen : generators) {
        for (const BellTerm& term : gen.terms) {
            expr.terms.push_back({gen.weight * term.coeff, term.factors});
        }
    }
    append_conjugates(expr.d, expr.terms);
    canonicalize(expr);
    return expr;
}

}  // namespace

BellExpression build_expression(const TorusLattice& lat, const SpecialSiteSet& specials) {
    std::vector<SiteCoord> special;
    for (SiteCoord s : specials.sites) {
        special.push_back(lat.wrap(s));
    }
    return assemble_expression(lat, special, expression_generators(lat, specials));
}

BellExpression special_tile_expression(const TorusLattice& lat, SiteCoord s) {
    s = lat.wrap(s);
    special_tile_region(lat, s);  // kind + degeneracy checks
    return assemble_expression(lat, {s}, special_generators(lat, s));
}

void canonicalize(BellExpression& expr) {
    for (BellTerm& term : expr.terms) {
        std::sort(term.factors.begin(), term.factors.end());
    }
    std::sort(expr.terms.begin(), expr.terms.end(), term_less);
}

int count_variables(const BellExpression& expr) {
    std::set<std::pair<SiteCoord, int>> vars;
    for (const BellTerm& term : expr.terms) {
        for (const ObservableRef& f : term.factors) {
            vars.insert({f.site, f.input});
        }
    }
    return static_cast<int>(vars.size());
}

double quantum_bound(int N, int d, int R) {
    return 2.0 * N + (4.0 * d - 8.0) * R;
}

LocalBoundFormulas local_bound_formulas(int N, int d, int R, double bstar_max, double bstar_min) {
    double re = std::cos(2.0 * std::numbers::pi * ((d - 1) / 2) / d);
    return {2.0 * (N - 4 * R) + R * bstar_max, 2.0 * (N - 4 * R) * re + R * bstar_min};
}

double tile_bound_d3() {
    return 12.0 * std::cos(std::numbers::pi / 9.0);
}

double ratio_lower_bound(int N, int d, int R, double bstar_max) {
    double denom = 2.0 * (N - 4 * R) + R * bstar_max;
    if (denom <= 0) {
        throw std::invalid_argument("ratio denominator is not positive");
    }
    return quantum_bound(N, d, R) / denom;
}

double ratio_d3(int N, int R) {
    double denom = N + 2.0 * (3.0 * std::cos(std::numbers::pi / 9.0) - 2.0) * R;
    if (denom <= 0) {
        throw std::invalid_argument("ratio denominator is not positive");
    }
    return (N + 2.0 * R) / denom;
}

nlohmann::ordered_json to_json(const BellExpression& expr) {
    nlohmann::ordered_json j;
    j["d"] = expr.d;
    j["L"] = expr.L;
    j["special"] = nlohmann::ordered_json::array();
    for (SiteCoord s : expr.special) {
        j["special"].push_back({s.i, s.j});
    }
    j["terms"] = nlohmann::ordered_json::array();
    for (const BellTerm& term : expr.terms) {
        nlohmann::ordered_json jt;
        jt["re"] = term.coeff.real();
        jt["im"] = term.coeff.imag();
        jt["factors"] = nlohmann::ordered_json::array();
        for (const ObservableRef& f : term.factors) {
            jt["factors"].push_back({{"i", f.site.i}, {"j", f.site.j}, {"x", f.input}, {"k", f.mode}});
        }
        j["terms"].push_back(std::move(jt));
    }
    return j;
}

BellExpression expression_from_json(const nlohmann::ordered_json& j) {
    BellExpression expr;
    expr.d = j.at("d").get<int>();
    expr.L = j.at("L").get<int>();
    for (const auto& s : j.at("special")) {
        expr.special.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
    }
    for (const auto& jt : j.at("terms")) {
        BellTerm term;
        term.coeff = {jt.at("re").get<double>(), jt.at("im").get<double>()};
        for (const auto& jf : jt.at("factors")) {
            term.factors.push_back(
                {{jf.at("i").get<int>(), jf.at("j").get<int>()}, jf.at("x").get<int>(), jf.at("k").get<int>()});
        }
        expr.terms.push_back(std::move(term));
    }
    return expr;
}

}  // namespace bell
