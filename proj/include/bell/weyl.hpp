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

#ifndef BELL_WEYL_HPP
#define BELL_WEYL_HPP

#include <string>
#include <vector>

namespace bell {

/// A multi-site generalized Pauli string over Z_d,
///
///     omega^phase * prod_s X_s^{x[s]} Z_s^{z[s]},    omega = exp(2*pi*i/d),
///
/// kept in the canonical form with all X factors left of Z factors per site
/// and every exponent reduced mod d. Because d is odd, products of X and Z
/// only ever generate omega powers, so the phase group is Z_d and the
/// representation is unique: equal words compare equal componentwise.
struct WeylWord {
    int d = 3;
    int phase = 0;
    std::vector<int> x;
    std::vector<int> z;

    static WeylWord identity(int num_sites, int d);
    static WeylWord single(int num_sites, int d, int site, int x_exp, int z_exp, int phase_exp = 0);

    /// Displacement-normalized single-site word tau^{ab} X^a Z^b with
    /// tau = omega^{(d+1)/2}. These compose as W(a,b)^k = W(ka,kb), which is
    /// the power convention the ideal observables are built in.
    static WeylWord displacement(int num_sites, int d, int site, int a, int b);

    int num_sites() const { return static_cast<int>(x.size()); }
    bool is_identity() const;
    bool operator==(const WeylWord&) const = default;

    /// Debug form "w^c . X_s^a Z_s^b ...".
    std::string str() const;
};

/// Product a*b. Phase accumulates sum_s a.z[s]*b.x[s] from moving the X
/// factors of b left past the Z factors of a.
WeylWord multiply(const WeylWord& a, const WeylWord& b);

WeylWord dagger(const WeylWord& w);

/// w^n for any integer n (n may be negative; w^d is the identity word).
WeylWord power(const WeylWord& w, long long n);

/// c with a*b = omega^c b*a; equals sum_s (a.z[s]*b.x[s] - a.x[s]*b.z[s]) mod d.
int commutation_phase(const WeylWord& a, const WeylWord& b);

}  // namespace bell

#endif
