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

#ifndef BELL_LOCAL_BOUND_HPP
#define BELL_LOCAL_BOUND_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bell/bell_expression.hpp"
#include "bell/lattice.hpp"

namespace bell {

/// One local deterministic strategy variable <A^{(site)}_{x,1}> = omega^e.
struct VariableKey {
    SiteCoord site;
    int input = 0;
    auto operator<=>(const VariableKey&) const = default;
};

/// Expression flattened onto integer variable ids for fast repeated
/// evaluation. Term values come from per-term lookup tables of
/// coeff * omega^s, so an evaluation is one modular dot product per term.
class CompiledExpression {
  public:
    struct Term {
        std::complex<double> coeff;
        std::vector<std::pair<int, int>> factors;  // (variable id, mode k)
    };

    static CompiledExpression compile(const BellExpression& expr);

    int d() const { return d_; }
    int num_variables() const { return static_cast<int>(variables_.size()); }
    const std::vector<VariableKey>& variables() const { return variables_; }
    const std::vector<Term>& terms() const { return terms_; }
    int variable_index(const VariableKey& key) const;  // -1 if absent
    const std::vector<std::pair<int, int>>& incidence(int var) const { return incidence_[var]; }

    /// Real part of sum_t coeff_t * omega^{sum_f k e}. Throws if the
    /// imaginary part exceeds 1e-12 (the expression must be cc-closed) or if
    /// the assignment is incomplete.
    double evaluate(std::span<const int> exponents) const;

    /// Exact per-term real value table, table(t, s) = Re(coeff_t omega^s).
    double term_value(int term, int phase) const { return table_[term * d_ + phase]; }
    double term_value_imag(int term, int phase) const { return table_im_[term * d_ + phase]; }

  private:
    int d_ = 3;
    std::vector<VariableKey> variables_;
    std::map<VariableKey, int> index_;
    std::vector<Term> terms_;
    std::vector<std::vector<std::pair<int, int>>> incidence_;
    std::vector<double> table_;
    std::vector<double> table_im_;
};

/// Assignment keyed for reports and JSON.
struct AssignedVariable {
    VariableKey variable;
    int exponent = 0;
};

std::vector<AssignedVariable> keyed_assignment(const CompiledExpression& expr,
                                               std::span<const int> exponents);

/// Max/min of a single far star or plaquette term (+c.c.) over LDS:
/// (2, 2 Re(omega^{(d-1)/2})), verified by enumerating all d^4 assignments.
struct SingleTermBounds {
    double max;
    double min;
};
SingleTermBounds single_term_bounds(int d);

struct BruteForceOptions {
    long long budget = 1'000'000'000;
    int threads = 0;
    bool collect_witnesses = true;
    /// Variables that must sit at omega^0 for an optimum to be marked
    /// boundary-compatible.
    std::vector<int> boundary_vars;
    double tol = 1e-9;
};

struct TileBounds {
    double beta_max = 0.0;
    double beta_min = 0.0;
    long long argmax_count = 0;
    long long argmin_count = 0;
    /// Optima with every boundary variable at omega^0 = 1.
    std::vector<std::vector<int>> argmax_compatible;
    std::vector<std::vector<int>> argmin_compatible;
};

/// Exact extrema over all completions of `fixed` on the free variables.
/// Deterministic and independent of the worker count. Throws if d^{#free}
/// exceeds the budget.
TileBounds brute_force(const CompiledExpression& expr, std::span<const int> free_vars,
                       const std::vector<int>& fixed, const BruteForceOptions& options);

/// Convenience: brute force of the full d=3 special-tile expression of s,
/// with the 10 boundary variables flagged for compatibility.
TileBounds special_tile_bounds(const TorusLattice& lat, SiteCoord s,
                               const BruteForceOptions& options);

enum class Direction { Max, Min };

struct AssembledStrategy {
    BellExpression expr;
    CompiledExpression compiled;
    std::vector<int> exponents;
    double value = 0.0;
};

/// The tight d=3 strategies: boundary-compatible tile optima on every special
/// tile; for Max all remaining variables at 1, for Min oracle-derived
/// per-elementary-tile assignments on the decomposed complementary regions.
/// Checks the assembled value against the closed-form bound and throws
/// std::logic_error on mismatch.
AssembledStrategy assemble_extremal_strategy(const TorusLattice& lat,
                                             const SpecialSiteSet& specials, Direction direction);

struct RandomSearchOptions {
    bool greedy = true;
    int threads = 0;
};

struct RandomSearchResult {
    double best_max;
    double best_min;
    std::vector<int> argmax;
    std::vector<int> argmin;
};

/// Seeded random assignments, optionally polished by single-variable
/// steepest-ascent/descent sweeps. Deterministic given the seed.
RandomSearchResult random_search(const CompiledExpression& expr, long long iterations,
                                 std::uint64_t seed, const RandomSearchOptions& options);

}  // namespace bell

#endif
