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

#ifndef BELL_QUANTUM_HPP
#define BELL_QUANTUM_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "bell/bell_expression.hpp"
#include "bell/lattice.hpp"
#include "bell/weyl.hpp"

namespace bell {

/// One toric-code ground state in the stabilizer formalism: the star and
/// plaquette generators (one of each dropped for independence) completed by
/// two non-contractible Z loops whose eigenvalues omega^a, omega^b select the
/// logical sector. N independent generators in total; the echelon form over
/// Z_d is precomputed for exact membership solves.
class StabilizerGroup {
  public:
    StabilizerGroup(const TorusLattice& lat, int sector_a, int sector_b);

    const TorusLattice& lattice() const { return lattice_; }
    int sector_a() const { return a_; }
    int sector_b() const { return b_; }
    const std::vector<WeylWord>& generators() const { return generators_; }

    /// The two logical Z loops without the sector phases (for tests).
    const WeylWord& loop_row() const { return loop_row_; }
    const WeylWord& loop_column() const { return loop_col_; }

    /// Exact stabilizer expectation: omega^c if omega^{-c} w is a group
    /// member, else 0. Gaussian elimination over Z_d with phase tracking.
    std::complex<double> expectation(const WeylWord& w) const;

    bool contains(const WeylWord& w) const;

  private:
    TorusLattice lattice_;
    int a_;
    int b_;
    WeylWord loop_row_;
    WeylWord loop_col_;
    std::vector<WeylWord> generators_;
    std::vector<WeylWord> echelon_;
    std::vector<int> pivots_;
};

StabilizerGroup ground_state_group(const TorusLattice& lat, int sector_a, int sector_b);

std::complex<double> expectation(const StabilizerGroup& group, const WeylWord& w);

enum class SiteRole { Generic, Neighbor, Special };

/// Site-local linear combination of Weyl words realizing one generalized
/// observable of the ideal measurement setup. Unitary with A^d = I and
/// A_{x,k} = (A_{x,1})^k; on the special site the coefficients carry the
/// lambda_k weights.
struct IdealObservable {
    int d = 3;
    std::vector<std::pair<std::complex<double>, WeylWord>> parts;  // words over one site
};

IdealObservable ideal_observable(SiteRole role, int x, int k, int d);
Eigen::MatrixXcd ideal_observable_matrix(SiteRole role, int x, int k, int d);

/// Substitutes the ideal observables into every term of the expression,
/// expands the special-site sums into Pauli strings and evaluates each string
/// exactly on the stabilizer state. Equals 2N + (4d-8)R on every sector.
double bell_expectation(const BellExpression& expr, const StabilizerGroup& group);

struct SosOptions {
    int party_dim = 2;
    int trials = 20;
    std::uint64_t seed = 0;
    int threads = 0;
};

/// Draws random order-d unitaries per party and input, builds the Bell
/// operator B and the sum-of-squares side as matrix-free operators, and
/// returns the largest ||(LHS - RHS)v|| / ||v|| over random vectors, where
/// LHS = (2N + (4d-8)R) I - B. The identity is exact, so the residual is
/// float noise regardless of lattice size.
double verify_sos(const TorusLattice& lat, const SpecialSiteSet& specials,
                  const SosOptions& options);

/// Per-factor expectations <(I - g)^dagger (I - g)> = 2 - 2 Re<g> of every
/// SOS factor on the given ground state, via stabilizer expectations with the
/// ideal observables. All zero on the toric-code manifold.
std::vector<double> sos_factor_expectations(const BellExpression& expr,
                                            const StabilizerGroup& group);

struct ObservableIdentityReport {
    double sum_identity_dev;       // || sum_x Abar^dag Abar - d I ||
    double conjugation_dev;        // || Abar_{x,k}^dag - Abar_{x,d-k} ||
    double anticommutator_dev;     // || {Abar01, Abar11} + Abar22 ||  (d=3)
    double anticommutator_unitarity_dev;
    double cube_dev;               // || Abar^3 - I || for the d=3 pair
};

/// Checks the substituted-observable identities with random order-d unitaries
/// (any dimension) and, for d=3, the anticommutator relation and its
/// unitarity densely with the ideal single-site observables.
ObservableIdentityReport verify_observable_identities(int d, std::uint64_t seed);

/// Dense ground state vector (dimension d^N, capped at 8 qutrits) built by
/// group-averaging a flux-free seed pattern. For tests and the small dense
/// cross-checks.
std::vector<std::complex<double>> ground_state_vector(const StabilizerGroup& group);

/// Applies a Weyl word to a dense d^N state (site 0 least significant).
void apply_word(std::vector<std::complex<double>>& state, const WeylWord& w);

}  // namespace bell

#endif
