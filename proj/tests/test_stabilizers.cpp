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

#include "bell/lattice.hpp"
#include "bell/stabilizers.hpp"
#include "bell/weyl.hpp"

using namespace bell;

TEST_SUITE_BEGIN("stabilizers");

TEST_CASE("vertex operator exponents") {
    TorusLattice lat(3, 3);
    WeylWord v = vertex_operator(lat, {1, 1});
    CHECK(v.phase == 0);
    CHECK(v.x[lat.site_index({0, 1})] == 2);
    CHECK(v.x[lat.site_index({1, 0})] == 2);
    CHECK(v.x[lat.site_index({1, 2})] == 1);
    CHECK(v.x[lat.site_index({2, 1})] == 1);
    int nonzero = 0;
    for (int s = 0; s < v.num_sites(); ++s) {
        nonzero += (v.x[s] != 0) + (v.z[s] != 0);
    }
    CHECK(nonzero == 4);
    CHECK_THROWS(vertex_operator(lat, {0, 0}));
}

TEST_CASE("plaquette operator exponents") {
    TorusLattice lat(3, 3);
    WeylWord p = plaquette_operator(lat, {2, 2});
    CHECK(p.phase == 0);
    CHECK(p.z[lat.site_index({1, 2})] == 1);
    CHECK(p.z[lat.site_index({2, 1})] == 2);
    CHECK(p.z[lat.site_index({2, 3})] == 1);
    CHECK(p.z[lat.site_index({3, 2})] == 2);
    CHECK_THROWS(plaquette_operator(lat, {1, 2}));
}

TEST_CASE("full commutativity of the stabilizer family") {
    for (int L : {2, 3}) {
        TorusLattice lat(L, 3);
        std::vector<WeylWord> ops;
        for (SiteCoord v : lat.vertices()) {
            ops.push_back(vertex_operator(lat, v));
        }
        for (SiteCoord p : lat.plaquettes()) {
            ops.push_back(plaquette_operator(lat, p));
        }
        if (L >= 3) {
            ops.push_back(extra_operator(lat, {1, 2}, 2));
        }
        for (size_t a = 0; a < ops.size(); ++a) {
            for (size_t b = a + 1; b < ops.size(); ++b) {
                CHECK(commutation_phase(ops[a], ops[b]) == 0);
            }
        }
    }
}

TEST_CASE("products over all stars and all plaquettes are the identity") {
    for (int L : {2, 3, 4}) {
        for (int d : {3, 5}) {
            TorusLattice lat(L, d);
            WeylWord prod_v = WeylWord::identity(lat.num_sites(), d);
            for (SiteCoord v : lat.vertices()) {
                prod_v = multiply(prod_v, vertex_operator(lat, v));
            }
            CHECK(prod_v.is_identity());
            WeylWord prod_p = WeylWord::identity(lat.num_sites(), d);
            for (SiteCoord p : lat.plaquettes()) {
                prod_p = multiply(prod_p, plaquette_operator(lat, p));
            }
            CHECK(prod_p.is_identity());
        }
    }
}

TEST_CASE("extra operator matches its closed form") {
    for (int d : {3, 5}) {
        TorusLattice lat(3, d);
        SiteCoord s{1, 2};
        for (int x = 2; x <= d - 1; ++x) {
            WeylWord e = extra_operator(lat, s, x);
            WeylWord expected = WeylWord::identity(lat.num_sites(), d);
            auto set = [&](int di, int dj, int xe, int ze) {
                int idx = lat.site_index(lat.wrap({s.i + di, s.j + dj}));
                expected.x[idx] = ((xe % d) + d) % d;
                expected.z[idx] = ((ze % d) + d) % d;
            };
            set(-1, -1, x - 1, 0);
            set(0, -2, x - 1, 0);
            set(0, 0, 1 - x, x);
            set(1, -1, 1 - x, -x);
            set(1, 1, 0, x);
            set(2, 0, 0, -x);
            CHECK(e == expected);

            int support = 0;
            for (int i = 0; i < e.num_sites(); ++i) {
                support += (e.x[i] != 0 || e.z[i] != 0);
            }
            CHECK(support == 6);
        }
        CHECK_THROWS(extra_operator(lat, s, 1));
        CHECK_THROWS(extra_operator(lat, s, d));
        CHECK_THROWS(extra_operator(lat, {0, 1}, 2));
    }
}

TEST_SUITE_END();
