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

#ifndef BELL_DENSE_HPP
#define BELL_DENSE_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "bell/weyl.hpp"

namespace bell {

/// Dense realization refuses products larger than 8 qutrits worth of space.
inline constexpr long kDenseDimCap = 6561;

std::complex<double> omega_power(int d, long long exponent);

/// Shift matrix: X|k> = |k+1 mod d>.
Eigen::MatrixXcd shift_matrix(int d);

/// Clock matrix: Z = diag(1, w, ..., w^{d-1}).
Eigen::MatrixXcd clock_matrix(int d);

/// X^a Z^b on one site.
Eigen::MatrixXcd site_matrix(int d, int x_exp, int z_exp);

/// Kronecker product over the listed sites (first entry most significant),
/// times omega^phase. Sites not listed must carry trivial exponents.
Eigen::MatrixXcd to_dense(const WeylWord& w, std::span<const int> site_order);

/// All sites in ascending order.
Eigen::MatrixXcd to_dense(const WeylWord& w);

}  // namespace bell

#endif
