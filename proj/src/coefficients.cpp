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

#include "bell/coefficients.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bell {

namespace {

long long pow_mod(long long base, long long exp, long long m) {
    long long result = 1;
    base %= m;
    if (base < 0) {
        base += m;
    }
    while (exp > 0) {
        if (exp & 1) {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

}  // namespace

int legendre_symbol(long long k, long long d) {
    long long r = k % d;
    if (r < 0) {
        r += d;
    }
    if (r == 0) {
        throw std::invalid_argument("legendre_symbol undefined for k = 0 mod d");
    }
    return pow_mod(r, (d - 1) / 2, d) == 1 ? 1 : -1;
}

long long g_exponent(long long k, long long d) {
    if (k % 2 == 0) {
        if (((k + d + 1) / 2) % 2 == 0) {
            return k * (k * k - d * (d + 6) + 3);
        }
        return k * (k * k - d * (d - 6) + 3);
    }
    if (k % 4 == 1) {
        return k * (k * k + 3) + 2 * d * d * (-5 * k + 3);
    }
    return k * (k * k + 3) + 2 * d * d * (k + 3);
}

std::complex<double> lambda(int k, int d) {
    if (k < 1 || k > d - 1) {
        throw std::invalid_argument("lambda requires 1 <= k <= d-1");
    }
    int leg = legendre_symbol(k, d);
    // [eps_d * leg]^{-1} = conj(eps_d) * leg since both factors are unit.
    std::complex<double> front = (d % 4 == 1) ? std::complex<double>(leg, 0.0)
                                              : std::complex<double>(0.0, -leg);
    long long g = g_exponent(k, d);
    double angle = -2.0 * std::numbers::pi * static_cast<double>(g) / (48.0 * d);
    return front * std::polar(1.0, angle);
}

LambdaTable LambdaTable::make(int d) {
    LambdaTable table;
    table.d = d;
    table.values.reserve(d - 1);
    for (int k = 1; k <= d - 1; ++k) {
        table.values.push_back(lambda(k, d));
    }
    return table;
}

}  // namespace bell
