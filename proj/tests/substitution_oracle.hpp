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

// Test-only oracle: builds the Bell expression by applying the substitution
// rules directly to the stabilizer words, independent of the transcription
// used by build_expression. Coefficients must agree term by term.

#ifndef BELL_TESTS_SUBSTITUTION_ORACLE_HPP
#define BELL_TESTS_SUBSTITUTION_ORACLE_HPP

#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>
#include <vector>

#include "bell/bell_expression.hpp"
#include "bell/coefficients.hpp"
#include "bell/dense.hpp"
#include "bell/lattice.hpp"
#include "bell/stabilizers.hpp"
#include "bell/weyl.hpp"

namespace bell::testing {

namespace detail {

inline int mod(long long a, int m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

inline int inverse_mod(int a, int d) {
    int r = 1;
    for (int e = 0; e < d - 2; ++e) {
        r = mod(static_cast<long long>(r) * a, d);
    }
    return r;
}

struct PartialTerm {
    std::complex<double> coeff;
    std::vector<ObservableRef> factors;
};

}  // namespace detail

/// Expands one stabilizer word into raw-variable terms via the per-site
/// substitution rules. The word must touch at most one special site.
inline std::vector<BellTerm> substitute_word(const TorusLattice& lat, const WeylWord& word,
                                             const std::set<SiteCoord>& special,
                                             const std::set<SiteCoord>& neighbor) {
    int d = lat.d();
    double sd = std::sqrt(static_cast<double>(d));
    std::vector<detail::PartialTerm> terms = {{omega_power(d, word.phase), {}}};
    for (int idx = 0; idx < word.num_sites(); ++idx) {
        int a = word.x[idx];
        int b = word.z[idx];
        if (a == 0 && b == 0) {
            continue;
        }
        SiteCoord site = lat.site_at(idx);
        if (special.count(site)) {
            // (X^{1-x} Z^x)^k -> Abar_{x,k}: k = a+b, x = b/k.
            int k = detail::mod(a + b, d);
            if (k == 0) {
                throw std::invalid_argument("special-site factor outside the substitution family");
            }
            int x = detail::mod(static_cast<long long>(b) * detail::inverse_mod(k, d), d);
            std::complex<double> front =
                omega_power(d, -static_cast<long long>(k) * x * (x + 1)) / (sd * lambda(k, d));
            std::vector<detail::PartialTerm> next;
            for (const auto& t : terms) {
                for (int y = 0; y < d; ++y) {
                    detail::PartialTerm nt = t;
                    nt.coeff *= front * omega_power(d, -static_cast<long long>(k) * x * y);
                    nt.factors.push_back({site, y, k});
                    next.push_back(std::move(nt));
                }
            }
            terms = std::move(next);
        } else if (neighbor.count(site)) {
            int x;
            int k;
            if (a == 0) {
                x = 1;  // Z^k -> A_{1,k}
                k = b;
            } else {
                // (X^{1-x} Z^{-x})^k: k = a-b, x = -b/k.
                k = detail::mod(a - b, d);
                if (k == 0) {
                    throw std::invalid_argument("neighbor factor outside the substitution family");
                }
                x = detail::mod(-static_cast<long long>(b) * detail::inverse_mod(k, d), d);
            }
            for (auto& t : terms) {
                t.factors.push_back({site, x, k});
            }
        } else {
            if (a != 0 && b != 0) {
                throw std::invalid_argument("generic site carries a mixed factor");
            }
            for (auto& t : terms) {
                t.factors.push_back(a != 0 ? ObservableRef{site, 0, a} : ObservableRef{site, 1, b});
            }
        }
    }
    std::vector<BellTerm> out;
    for (auto& t : terms) {
        out.push_back({t.coeff, std::move(t.factors)});
    }
    return out;
}

/// Full expression via stabilizer-word substitution: every star, every
/// plaquette, and the extra operators with weight 2, plus conjugates.
inline BellExpression build_by_substitution(const TorusLattice& lat,
                                            const SpecialSiteSet& specials) {
    int d = lat.d();
    std::set<SiteCoord> special;
    std::set<SiteCoord> neighbor;
    for (SiteCoord s : specials.sites) {
        SiteCoord w = lat.wrap(s);
        special.insert(w);
        neighbor.insert(lat.wrap({w.i + 1, w.j - 1}));
    }

    BellExpression expr;
    expr.L = lat.L();
    expr.d = d;
    expr.special.assign(special.begin(), special.end());

    auto add = [&](const WeylWord& word, double weight) {
        for (BellTerm& t : substitute_word(lat, word, special, neighbor)) {
            expr.terms.push_back({weight * t.coeff, std::move(t.factors)});
        }
    };
    for (SiteCoord v : lat.vertices()) {
        add(vertex_operator(lat, v), 1.0);
    }
    for (SiteCoord p : lat.plaquettes()) {
        add(plaquette_operator(lat, p), 1.0);
    }
    for (SiteCoord s : special) {
        for (int x = 2; x <= d - 1; ++x) {
            add(extra_operator(lat, s, x), 2.0);
        }
    }
    size_t n = expr.terms.size();
    for (size_t t = 0; t < n; ++t) {
        BellTerm cc;
        cc.coeff = std::conj(expr.terms[t].coeff);
        cc.factors = expr.terms[t].factors;
        for (ObservableRef& f : cc.factors) {
            f.mode = d - f.mode;
        }
        expr.terms.push_back(std::move(cc));
    }
    canonicalize(expr);
    return expr;
}

}  // namespace bell::testing

#endif
