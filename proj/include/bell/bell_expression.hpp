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

#ifndef BELL_BELL_EXPRESSION_HPP
#define BELL_BELL_EXPRESSION_HPP

#include <complex>
#include <compare>
#include <string>
#include <vector>

#include <json.hpp>

#include "bell/lattice.hpp"

namespace bell {

/// One generalized-observable factor A^{(site)}_{x,k}: measurement input x,
/// Fourier mode k in 1..d-1.
struct ObservableRef {
    SiteCoord site;
    int input = 0;
    int mode = 1;
    auto operator<=>(const ObservableRef&) const = default;
};

/// coeff * prod of factors on distinct sites (at most 6 of them).
struct BellTerm {
    std::complex<double> coeff;
    std::vector<ObservableRef> factors;
};

/// The Bell expression for the Z_d toric code with R special sites, fully
/// expanded into raw A-variables with complex scalar coefficients. With
/// cc_included the term multiset is closed under coeff -> conj(coeff),
/// k -> d-k per factor, so every evaluation is real.
struct BellExpression {
    int L = 0;
    int d = 0;
    std::vector<SiteCoord> special;
    std::vector<BellTerm> terms;
    bool cc_included = true;
};

/// One substituted stabilizing operator: its expansion into raw-variable
/// terms (without the Bell-expression multiplicity) plus the weight it enters
/// the expression with (2 for the extra operators, 1 otherwise).
struct GeneratorTerms {
    std::string label;
    double weight = 1.0;
    std::vector<BellTerm> terms;
};

/// Every substituted generator of the expression, in the order far vertices,
/// far plaquettes, then per special site the two near star terms, the two
/// near plaquette terms and the extra operators.
std::vector<GeneratorTerms> expression_generators(const TorusLattice& lat,
                                                  const SpecialSiteSet& specials);

/// Builds the full expression: one term per far vertex/plaquette, d-term
/// expansions for the four stabilizers adjacent to each special site, and
/// d-term expansions (weight 2) for each extra operator E(x), x in 2..d-1,
/// followed by the complex-conjugate copies. Throws std::invalid_argument if
/// the placement fails validation.
BellExpression build_expression(const TorusLattice& lat, const SpecialSiteSet& specials);

/// Only the jointly-optimized generators of one special site: the two
/// adjacent star terms, the two adjacent plaquette terms and the d-2 extra
/// operators, expanded, with conjugates. References exactly 2d+10 variables.
BellExpression special_tile_expression(const TorusLattice& lat, SiteCoord s);

/// Stable order: factors sorted by (i, j, x, k) inside each term, terms sorted
/// by factor list then coefficient. Serialized output is byte-stable.
void canonicalize(BellExpression& expr);

/// Census of distinct (site, input) pairs referenced by the expression.
int count_variables(const BellExpression& expr);

/// beta_Q^max = 2N + (4d-8)R.
double quantum_bound(int N, int d, int R);

struct LocalBoundFormulas {
    double upper_max;  // 2(N-4R) + R*bstar_max
    double lower_min;  // 2(N-4R)*Re(w^{(d-1)/2}) + R*bstar_min
};
LocalBoundFormulas local_bound_formulas(int N, int d, int R, double bstar_max, double bstar_min);

/// Certified value of the d=3 special tile optimum, 12 cos(pi/9).
double tile_bound_d3();

/// Lower bound on the quantum/classical ratio for general odd prime d.
double ratio_lower_bound(int N, int d, int R, double bstar_max);

/// Exact d=3 ratio (N+2R) / (N + 2(3cos(pi/9)-2)R).
double ratio_d3(int N, int R);

nlohmann::ordered_json to_json(const BellExpression& expr);
BellExpression expression_from_json(const nlohmann::ordered_json& j);

}  // namespace bell

#endif
