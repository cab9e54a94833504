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

#ifndef BELL_COEFFICIENTS_HPP
#define BELL_COEFFICIENTS_HPP

#include <complex>
#include <vector>

namespace bell {

/// +1 if k is a quadratic residue mod d, -1 otherwise (Euler's criterion).
/// Throws if k = 0 mod d.
int legendre_symbol(long long k, long long d);

/// The integer exponent g(k, d): a four-case cubic, exact in 64-bit for the
/// dimensions this tool operates at (d up to a few thousand).
long long g_exponent(long long k, long long d);

/// The unit-modulus coefficient
///   lambda_k = [eps_d (k|d)]^{-1} * exp(-2*pi*i*g(k,d) / (48 d)),
/// with eps_d = 1 for d = 1 mod 4 and i for d = 3 mod 4. Satisfies
/// conj(lambda_k) = lambda_{d-k} and |lambda_k| = 1.
std::complex<double> lambda(int k, int d);

struct LambdaTable {
    int d = 0;
    std::vector<std::complex<double>> values;  // values[k-1] = lambda_k, k in 1..d-1

    static LambdaTable make(int d);
    std::complex<double> at(int k) const { return values.at(k - 1); }
};

}  // namespace bell

#endif
