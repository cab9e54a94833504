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

#include <doctest.h>

#include <random>

#include "bell/dense.hpp"
#include "bell/weyl.hpp"

using namespace bell;

namespace {

WeylWord random_word(int sites, int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> exp(0, d - 1);
    WeylWord w = WeylWord::identity(sites, d);
    for (int s = 0; s < sites; ++s) {
        w.x[s] = exp(rng);
        w.z[s] = exp(rng);
    }
    w.phase = exp(rng);
    return w;
}

}  // namespace

TEST_SUITE_BEGIN("weyl");

TEST_CASE("single-site products against the dense matrices") {
    int d = 3;
    WeylWord X = WeylWord::single(1, d, 0, 1, 0);
    WeylWord Z = WeylWord::single(1, d, 0, 0, 1);

    // ZX = w XZ.
    WeylWord zx = multiply(Z, X);
    CHECK(zx.phase == 1);
    CHECK(zx.x[0] == 1);
    CHECK(zx.z[0] == 1);
    CHECK((to_dense(zx) - to_dense(Z) * to_dense(X)).norm() < 1e-12);

    // X * X^{-1} = I.
    CHECK(multiply(X, dagger(X)).is_identity());

    // (XZ)(XZ) = w X^2 Z^2 for d=3.
    WeylWord xz = multiply(X, Z);
    WeylWord sq = multiply(xz, xz);
    CHECK(sq.phase == 1);
    CHECK(sq.x[0] == 2);
    CHECK(sq.z[0] == 2);
    CHECK((to_dense(sq) - to_dense(xz) * to_dense(xz)).norm() < 1e-12);
}

TEST_CASE("dagger and power basics") {
    int d = 3;
    WeylWord X = WeylWord::single(1, d, 0, 1, 0);
    WeylWord dx = dagger(X);
    CHECK(dx.x[0] == d - 1);
    CHECK(dx.phase == 0);

    WeylWord xz = multiply(X, WeylWord::single(1, d, 0, 0, 1));
    CHECK(power(xz, 3).is_identity());
    CHECK(power(xz, 0).is_identity());
    CHECK(power(xz, -1) == dagger(xz));

    CHECK_THROWS(multiply(X, WeylWord::identity(2, d)));
    CHECK_THROWS(multiply(X, WeylWord::identity(1, 5)));
}

TEST_CASE("fuzz: dense oracle agrees with the symbolic product") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> nsites(1, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = nsites(rng);
        WeylWord a = random_word(n, 3, rng);
        WeylWord b = random_word(n, 3, rng);
        WeylWord ab = multiply(a, b);
        double dev = (to_dense(ab) - to_dense(a) * to_dense(b)).norm();
        REQUIRE(dev < 1e-12);
    }
}

TEST_CASE("fuzz: involution, inverse, order d") {
    std::mt19937_64 rng(43);
    for (int d : {3, 5, 7}) {
        for (int trial = 0; trial < 3400; ++trial) {
            WeylWord w = random_word(3, d, rng);
            CHECK(dagger(dagger(w)) == w);
            CHECK(multiply(w, dagger(w)).is_identity());
            CHECK(power(w, d).is_identity());
        }
    }
}

TEST_CASE("commutation phase matches the product convention") {
    std::mt19937_64 rng(44);
    for (int d : {3, 5}) {
        for (int trial = 0; trial < 300; ++trial) {
            WeylWord a = random_word(2, d, rng);
            WeylWord b = random_word(2, d, rng);
            int c = commutation_phase(a, b);
            // a b = w^c b a.
            WeylWord lhs = multiply(a, b);
            WeylWord rhs = multiply(b, a);
            rhs.phase = (rhs.phase + c) % d;
            CHECK(lhs == rhs);
            CHECK((commutation_phase(a, b) + commutation_phase(b, a)) % d == 0);
        }
    }
    WeylWord x0 = WeylWord::single(2, 3, 0, 1, 0);
    CHECK(commutation_phase(x0, x0) == 0);
    WeylWord z1 = WeylWord::single(2, 3, 1, 0, 1);
    CHECK(commutation_phase(x0, z1) == 0);  // disjoint support
}

TEST_CASE("displacement words compose as W(a,b)^k = W(ka,kb)") {
    for (int d : {3, 5}) {
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                WeylWord w = WeylWord::displacement(1, d, 0, a, b);
                for (int k = 0; k < d; ++k) {
                    CHECK(power(w, k) == WeylWord::displacement(1, d, 0, k * a, k * b));
                }
            }
        }
    }
}

TEST_CASE("dense realization errors") {
    WeylWord w = WeylWord::single(2, 3, 1, 1, 0);
    std::vector<int> only_first = {0};
    CHECK_THROWS(to_dense(w, only_first));  // support outside the subset
    WeylWord big = WeylWord::identity(9, 3);
    CHECK_THROWS(to_dense(big));  // beyond the 8-qutrit cap
}

TEST_SUITE_END();
