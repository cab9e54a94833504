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

#include "bell/dense.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace bell {

std::complex<double> omega_power(int d, long long exponent) {
    long long e = exponent % d;
    if (e < 0) {
        e += d;
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / d);
}

Eigen::MatrixXcd shift_matrix(int d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        m((k + 1) % d, k) = 1.0;
    }
    return m;
}

Eigen::MatrixXcd clock_matrix(int d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        m(k, k) = omega_power(d, k);
    }
    return m;
}

Eigen::MatrixXcd site_matrix(int d, int x_exp, int z_exp) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    // X^a Z^b maps |k> to w^{bk} |k+a>.
    for (int k = 0; k < d; ++k) {
        m(((k + x_exp) % d + d) % d, k) = omega_power(d, static_cast<long long>(z_exp) * k);
    }
    return m;
}

Eigen::MatrixXcd to_dense(const WeylWord& w, std::span<const int> site_order) {
    double dim = std::pow(static_cast<double>(w.d), static_cast<double>(site_order.size()));
    if (dim > static_cast<double>(kDenseDimCap)) {
        throw std::invalid_argument("dense realization exceeds the 8-qutrit size cap");
    }
    std::vector<bool> covered(w.num_sites(), false);
    for (int s : site_order) {
        covered[s] = true;
    }
    for (int s = 0; s < w.num_sites(); ++s) {
        if (!covered[s] && (w.x[s] != 0 || w.z[s] != 0)) {
            throw std::invalid_argument("site subset misses a site with nontrivial exponents");
        }
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int s : site_order) {
        m = Eigen::kroneckerProduct(m, site_matrix(w.d, w.x[s], w.z[s])).eval();
    }
    return omega_power(w.d, w.phase) * m;
}

Eigen::MatrixXcd to_dense(const WeylWord& w) {
    std::vector<int> order(w.num_sites());
    std::iota(order.begin(), order.end(), 0);
    return to_dense(w, order);
}

}  // namespace bell
