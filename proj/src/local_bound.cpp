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

#include "bell/local_bound.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "bell/dense.hpp"
#include "bell/polyomino.hpp"
#include "bell/threading.hpp"

namespace bell {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

CompiledExpression CompiledExpression::compile(const BellExpression& expr) {
    CompiledExpression out;
    out.d_ = expr.d;
    for (const BellTerm& term : expr.terms) {
        Term ct;
        ct.coeff = term.coeff;
        for (const ObservableRef& f : term.factors) {
            VariableKey key{f.site, f.input};
            auto [it, inserted] = out.index_.try_emplace(key, out.num_variables());
            if (inserted) {
                out.variables_.push_back(key);
            }
            ct.factors.push_back({it->second, f.mode});
        }
        out.terms_.push_back(std::move(ct));
    }
    out.incidence_.resize(out.variables_.size());
    out.table_.resize(out.terms_.size() * out.d_);
    out.table_im_.resize(out.terms_.size() * out.d_);
    for (size_t t = 0; t < out.terms_.size(); ++t) {
        for (auto [var, k] : out.terms_[t].factors) {
            out.incidence_[var].push_back({static_cast<int>(t), k});
        }
        for (int s = 0; s < out.d_; ++s) {
            std::complex<double> v = out.terms_[t].coeff * omega_power(out.d_, s);
            out.table_[t * out.d_ + s] = v.real();
            out.table_im_[t * out.d_ + s] = v.imag();
        }
    }
    return out;
}

int CompiledExpression::variable_index(const VariableKey& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

double CompiledExpression::evaluate(std::span<const int> exponents) const {
    if (exponents.size() != variables_.size()) {
        throw std::invalid_argument("assignment does not cover every variable");
    }
    double re = 0.0;
    double im = 0.0;
    for (size_t t = 0; t < terms_.size(); ++t) {
        int s = 0;
        for (auto [var, k] : terms_[t].factors) {
            s += k * exponents[var];
        }
        s %= d_;
        re += table_[t * d_ + s];
        im += table_im_[t * d_ + s];
    }
    if (std::abs(im) > 1e-12 * std::max(1.0, std::abs(re))) {
        throw std::logic_error("expression evaluated to a non-real value");
    }
    return re;
}

std::vector<AssignedVariable> keyed_assignment(const CompiledExpression& expr,
                                               std::span<const int> exponents) {
    std::vector<AssignedVariable> out;
    for (int v = 0; v < expr.num_variables(); ++v) {
        out.push_back({expr.variables()[v], exponents[v]});
    }
    return out;
}

SingleTermBounds single_term_bounds(int d) {
    double best = -4.0;
    double worst = 4.0;
    for (int e1 = 0; e1 < d; ++e1) {
        for (int e2 = 0; e2 < d; ++e2) {
            for (int e3 = 0; e3 < d; ++e3) {
                for (int e4 = 0; e4 < d; ++e4) {
                    int s = ((-e1 - e2 + e3 + e4) % d + d) % d;
                    double v = 2.0 * std::cos(2.0 * std::numbers::pi * s / d);
                    best = std::max(best, v);
                    worst = std::min(worst, v);
                }
            }
        }
    }
    return {best, worst};
}

namespace {

struct ShardResult {
    double max = -std::numeric_limits<double>::infinity();
    double min = std::numeric_limits<double>::infinity();
    long long max_count = 0;
    long long min_count = 0;
    std::vector<std::vector<int>> argmax_compatible;
    std::vector<std::vector<int>> argmin_compatible;
};

/// Exact odometer enumeration of one shard. The running total is kept
/// incrementally; any candidate within `guard` of the current record is
/// re-evaluated exactly from the per-term phases before comparisons.
class ShardEnumerator {
  public:
    ShardEnumerator(const CompiledExpression& expr, std::span<const int> free_vars,
                    std::vector<int> exps)
        : expr_(expr), free_(free_vars.begin(), free_vars.end()), exps_(std::move(exps)) {
        d_ = expr.d();
        phases_.resize(expr.terms().size());
        reset_phases();
    }

    void reset_phases() {
        total_ = 0.0;
        for (size_t t = 0; t < expr_.terms().size(); ++t) {
            int s = 0;
            for (auto [var, k] : expr_.terms()[t].factors) {
                s += k * exps_[var];
            }
            phases_[t] = s % d_;
            total_ += expr_.term_value(t, phases_[t]);
        }
    }

    double exact_total() const {
        double v = 0.0;
        for (size_t t = 0; t < phases_.size(); ++t) {
            v += expr_.term_value(t, phases_[t]);
        }
        return v;
    }

    /// Visit every completion; calls on_state(exact_evaluator) once per state.
    /// The running total is resynced from the exact per-term phases every
    /// 2^18 states so float drift stays far below the candidate guard.
    template <typename F>
    void enumerate(F&& on_state) {
        std::vector<int> digits(free_.size(), 0);
        long long states = 1;
        for (size_t i = 0; i < free_.size(); ++i) {
            states *= d_;
        }
        for (long long n = 0;; ++n) {
            on_state(*this);
            if (n + 1 == states) {
                break;
            }
            if ((n & 0x3ffff) == 0x3ffff) {
                total_ = exact_total();
            }
            size_t pos = 0;
            while (true) {
                bump(free_[pos]);
                digits[pos] += 1;
                if (digits[pos] < d_) {
                    break;
                }
                digits[pos] = 0;
                ++pos;
            }
        }
    }

    double running_total() const { return total_; }
    const std::vector<int>& exponents() const { return exps_; }

  private:
    void bump(int var) {
        exps_[var] = exps_[var] + 1 == d_ ? 0 : exps_[var] + 1;
        for (auto [t, k] : expr_.incidence(var)) {
            total_ -= expr_.term_value(t, phases_[t]);
            int s = phases_[t] + k;
            phases_[t] = s >= d_ ? s - d_ : s;
            total_ += expr_.term_value(t, phases_[t]);
        }
    }

    const CompiledExpression& expr_;
    std::vector<int> free_;
    std::vector<int> exps_;
    std::vector<int> phases_;
    int d_;
    double total_ = 0.0;
};

}  // namespace

TileBounds brute_force(const CompiledExpression& expr, std::span<const int> free_vars,
                       const std::vector<int>& fixed, const BruteForceOptions& options) {
    int d = expr.d();
    double states = std::pow(static_cast<double>(d), static_cast<double>(free_vars.size()));
    if (states > static_cast<double>(options.budget)) {
        throw std::invalid_argument("brute-force budget exceeded");
    }
    if (static_cast<int>(fixed.size()) != expr.num_variables()) {
        throw std::invalid_argument("fixed assignment must cover every variable");
    }

    // Shard over the slowest digits so each worker owns a contiguous block.
    int shard_digits = 0;
    int threads = resolve_thread_count(options.threads);
    long long shard_count = 1;
    while (shard_digits < static_cast<int>(free_vars.size()) - 1 && shard_count < 4LL * threads &&
           shard_count * d <= 729) {
        shard_count *= d;
        ++shard_digits;
    }
    size_t split = free_vars.size() - shard_digits;
    std::vector<int> inner(free_vars.begin(), free_vars.begin() + split);
    std::vector<int> outer(free_vars.begin() + split, free_vars.end());

    const double guard = 1e-7;
    const double tol = options.tol;
    std::vector<ShardResult> results(shard_count);

    parallel_chunks(static_cast<int>(shard_count), threads, [&](int shard) {
        std::vector<int> exps = fixed;
        long long code = shard;
        for (int i = 0; i < shard_digits; ++i) {
            exps[outer[i]] = static_cast<int>(code % d);
            code /= d;
        }
        ShardResult& r = results[shard];
        ShardEnumerator enumerator(expr, inner, std::move(exps));
        enumerator.enumerate([&](ShardEnumerator& e) {
            double t = e.running_total();
            if (t > r.max - guard) {
                r.max = std::max(r.max, e.exact_total());
            }
            if (t < r.min + guard) {
                r.min = std::min(r.min, e.exact_total());
            }
        });
    });

    TileBounds bounds;
    bounds.beta_max = -std::numeric_limits<double>::infinity();
    bounds.beta_min = std::numeric_limits<double>::infinity();
    for (const ShardResult& r : results) {
        bounds.beta_max = std::max(bounds.beta_max, r.max);
        bounds.beta_min = std::min(bounds.beta_min, r.min);
    }

    if (!options.collect_witnesses) {
        return bounds;
    }

    // Second pass: count optima and collect the boundary-compatible ones.
    parallel_chunks(static_cast<int>(shard_count), threads, [&](int shard) {
        std::vector<int> exps = fixed;
        long long code = shard;
        for (int i = 0; i < shard_digits; ++i) {
            exps[outer[i]] = static_cast<int>(code % d);
            code /= d;
        }
        ShardResult& r = results[shard];
        ShardEnumerator enumerator(expr, inner, std::move(exps));
        enumerator.enumerate([&](ShardEnumerator& e) {
            double t = e.running_total();
            bool near_max = t > bounds.beta_max - guard;
            bool near_min = t < bounds.beta_min + guard;
            if (!near_max && !near_min) {
                return;
            }
            double exact = e.exact_total();
            auto compatible = [&]() {
                for (int v : options.boundary_vars) {
                    if (e.exponents()[v] != 0) {
                        return false;
                    }
                }
                return true;
            };
            if (std::abs(exact - bounds.beta_max) <= tol) {
                r.max_count += 1;
                if (compatible()) {
                    r.argmax_compatible.push_back(e.exponents());
                }
            }
            if (std::abs(exact - bounds.beta_min) <= tol) {
                r.min_count += 1;
                if (compatible()) {
                    r.argmin_compatible.push_back(e.exponents());
                }
            }
        });
    });
    for (const ShardResult& r : results) {
        bounds.argmax_count += r.max_count;
        bounds.argmin_count += r.min_count;
        bounds.argmax_compatible.insert(bounds.argmax_compatible.end(), r.argmax_compatible.begin(),
                                        r.argmax_compatible.end());
        bounds.argmin_compatible.insert(bounds.argmin_compatible.end(), r.argmin_compatible.begin(),
                                        r.argmin_compatible.end());
    }
    return bounds;
}

TileBounds special_tile_bounds(const TorusLattice& lat, SiteCoord s,
                               const BruteForceOptions& options) {
    BellExpression tile = special_tile_expression(lat, s);
    CompiledExpression compiled = CompiledExpression::compile(tile);

    BruteForceOptions opts = options;
    opts.boundary_vars.clear();
    SiteCoord sp = lat.wrap(s);
    SiteCoord nb = lat.wrap({sp.i + 1, sp.j - 1});
    std::vector<int> free_vars;
    for (int v = 0; v < compiled.num_variables(); ++v) {
        free_vars.push_back(v);
        SiteCoord site = compiled.variables()[v].site;
        if (site != sp && site != nb) {
            opts.boundary_vars.push_back(v);
        }
    }
    std::vector<int> fixed(compiled.num_variables(), 0);
    return brute_force(compiled, free_vars, fixed, opts);
}

namespace {

void apply_tile_variables(const CompiledExpression& expr, const std::vector<TileVariable>& vars,
                          std::vector<int>& exps) {
    for (const TileVariable& tv : vars) {
        int idx = expr.variable_index({tv.site, tv.input});
        if (idx < 0) {
            throw std::logic_error("tile strategy references a variable outside the expression");
        }
        exps[idx] = tv.exponent;
    }
}

}  // namespace

AssembledStrategy assemble_extremal_strategy(const TorusLattice& lat,
                                             const SpecialSiteSet& specials, Direction direction) {
    if (lat.d() != 3) {
        throw std::invalid_argument("extremal strategy assembly is derived for d = 3");
    }
    ValidationReport report = validate_special_sites(lat, specials);
    if (!report.ok) {
        throw std::invalid_argument("invalid special sites: " + report.message);
    }
    if (direction == Direction::Min && lat.L() < 3) {
        throw std::invalid_argument("minimizing assembly needs L >= 3");
    }

    AssembledStrategy out;
    out.expr = build_expression(lat, specials);
    out.compiled = CompiledExpression::compile(out.expr);
    out.exponents.assign(out.compiled.num_variables(), 0);

    auto set_var = [&](SiteCoord site, int input, int e) {
        int idx = out.compiled.variable_index({lat.wrap(site), input});
        if (idx < 0) {
            throw std::logic_error("strategy variable missing from expression");
        }
        out.exponents[idx] = e;
    };

    for (SiteCoord s : out.expr.special) {
        SiteCoord nb = lat.wrap({s.i + 1, s.j - 1});
        if (direction == Direction::Max) {
            // Boundary-compatible tile maximum: <A_{0,1}> = w^2 on the special
            // site, <A_{2,1}> = w on its neighbor, everything else 1.
            set_var(s, 0, 2);
            set_var(nb, 2, 1);
        } else {
            // Boundary-compatible tile minimum: <A_{0,1}> = <A_{1,1}> = w,
            // <A_{2,1}> = w^2 on the special site, everything else 1.
            set_var(s, 0, 1);
            set_var(s, 1, 1);
            set_var(s, 2, 2);
        }
    }

    int R = static_cast<int>(out.expr.special.size());
    if (direction == Direction::Min) {
        // Decompose each complementary region and push every elementary tile
        // to its oracle-derived minimum (-1 per stabilizer cell).
        GridTopology topo{lat.L()};
        for (Sublattice which : {Sublattice::Plaquette, Sublattice::Vertex}) {
            std::set<SiteCoord> near;
            for (SiteCoord s : out.expr.special) {
                if (which == Sublattice::Plaquette) {
                    near.insert(lat.wrap({s.i - 1, s.j}));
                    near.insert(lat.wrap({s.i + 1, s.j}));
                } else {
                    near.insert(lat.wrap({s.i, s.j - 1}));
                    near.insert(lat.wrap({s.i, s.j + 1}));
                }
            }
            std::vector<Cell> cells;
            auto all = which == Sublattice::Plaquette ? lat.plaquettes() : lat.vertices();
            for (SiteCoord c : all) {
                if (!near.count(c)) {
                    cells.push_back(to_cell(c));
                }
            }
            for (const PlacedTile& tile : decompose(cells, topo)) {
                apply_tile_variables(out.compiled, min_tile_strategy(lat, tile, which),
                                     out.exponents);
            }
        }
    }

    out.value = out.compiled.evaluate(out.exponents);
    double bstar = tile_bound_d3();
    LocalBoundFormulas bounds =
        local_bound_formulas(lat.num_sites(), lat.d(), R, bstar, -bstar);
    double expected = direction == Direction::Max ? bounds.upper_max : bounds.lower_min;
    if (std::abs(out.value - expected) > 1e-9) {
        throw std::logic_error("assembled strategy does not reach the closed-form bound");
    }
    return out;
}

RandomSearchResult random_search(const CompiledExpression& expr, long long iterations,
                                 std::uint64_t seed, const RandomSearchOptions& options) {
    int threads = resolve_thread_count(options.threads);
    int chunks = static_cast<int>(std::max<long long>(1, std::min<long long>(threads * 8, iterations)));
    std::vector<RandomSearchResult> partial(
        chunks, {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                 {}, {}});

    int d = expr.d();
    int nv = expr.num_variables();

    auto climb = [&](std::vector<int>& exps, bool maximize) {
        // Steepest single-variable moves until a local optimum.
        bool improved = true;
        double value = expr.evaluate(exps);
        while (improved) {
            improved = false;
            for (int v = 0; v < nv; ++v) {
                int best_e = exps[v];
                double best_v = value;
                int original = exps[v];
                for (int e = 0; e < d; ++e) {
                    if (e == original) {
                        continue;
                    }
                    exps[v] = e;
                    double cand = expr.evaluate(exps);
                    if ((maximize && cand > best_v + 1e-12) ||
                        (!maximize && cand < best_v - 1e-12)) {
                        best_v = cand;
                        best_e = e;
                    }
                }
                exps[v] = best_e;
                if (best_e != original) {
                    value = best_v;
                    improved = true;
                }
            }
        }
        return value;
    };

    parallel_chunks(chunks, threads, [&](int chunk) {
        long long begin = iterations * chunk / chunks;
        long long end = iterations * (chunk + 1) / chunks;
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(chunk))));
        std::uniform_int_distribution<int> pick(0, d - 1);
        RandomSearchResult& r = partial[chunk];
        std::vector<int> exps(nv);
        for (long long it = begin; it < end; ++it) {
            for (int v = 0; v < nv; ++v) {
                exps[v] = pick(rng);
            }
            double value = expr.evaluate(exps);
            if (value > r.best_max) {
                r.best_max = value;
                r.argmax = exps;
            }
            if (value < r.best_min) {
                r.best_min = value;
                r.argmin = exps;
            }
            if (options.greedy) {
                std::vector<int> up = exps;
                double high = climb(up, true);
                if (high > r.best_max) {
                    r.best_max = high;
                    r.argmax = up;
                }
                std::vector<int> down = exps;
                double low = climb(down, false);
                if (low < r.best_min) {
                    r.best_min = low;
                    r.argmin = down;
                }
            }
        }
    });

    RandomSearchResult result = {-std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity(),
                                 {},
                                 {}};
    for (const RandomSearchResult& r : partial) {
        if (r.best_max > result.best_max) {
            result.best_max = r.best_max;
            result.argmax = r.argmax;
        }
        if (r.best_min < result.best_min) {
            result.best_min = r.best_min;
            result.argmin = r.argmin;
        }
    }
    return result;
}

}  // namespace bell
