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

#include <map>
#include <random>
#include <set>

#include "bell/lattice.hpp"
#include "bell/polyomino.hpp"

using namespace bell;

namespace {

std::vector<Cell> random_polyomino(int size, std::mt19937_64& rng) {
    std::set<Cell> cells = {{0, 0}};
    GridTopology plane{0};
    while (static_cast<int>(cells.size()) < size) {
        std::vector<Cell> frontier;
        for (Cell c : cells) {
            for (Cell n : plane.neighbors(c)) {
                if (!cells.count(n)) {
                    frontier.push_back(n);
                }
            }
        }
        std::uniform_int_distribution<size_t> pick(0, frontier.size() - 1);
        cells.insert(frontier[pick(rng)]);
    }
    return {cells.begin(), cells.end()};
}

/// Direct evaluation of one stabilizer cell under an assignment with all
/// unlisted variables at omega^0.
int cell_phase(const TorusLattice& lat, SiteCoord cell, Sublattice which,
               const std::map<SiteCoord, int>& exps) {
    auto terms = which == Sublattice::Plaquette ? plaquette_neighborhood(lat, cell)
                                                : vertex_neighborhood(lat, cell);
    int s = 0;
    for (const NeighborTerm& nb : terms) {
        auto it = exps.find(nb.site);
        if (it != exps.end()) {
            s += (nb.dagger ? -1 : 1) * it->second;
        }
    }
    return ((s % 3) + 3) % 3;
}

}  // namespace

TEST_SUITE_BEGIN("polyomino");

TEST_CASE("small shapes") {
    GridTopology plane{0};
    auto domino = decompose({{0, 0}, {0, 1}}, plane);
    REQUIRE(domino.size() == 1);
    CHECK(domino[0].shape == TileShape::Domino2);

    auto strip = decompose({{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}}, plane);
    CHECK(validate_decomposition({{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}}, strip, plane).ok);

    std::vector<Cell> plus = {{0, 0}, {1, -1}, {1, 0}, {1, 1}, {2, 0}};
    auto plus_tiles = decompose(plus, plane);
    CHECK(validate_decomposition(plus, plus_tiles, plane).ok);
}

TEST_CASE("bad inputs") {
    GridTopology plane{0};
    CHECK_THROWS(decompose({{0, 0}}, plane));
    CHECK_THROWS(decompose({{0, 0}, {2, 0}}, plane));            // disconnected
    CHECK_THROWS(decompose({{0, 0}, {0, 1}, {5, 5}, {5, 6}}, plane));
    CHECK_THROWS(decompose({{0, 0}, {0, 1}}, GridTopology{2}));  // ambiguous torus
}

TEST_CASE("validator catches broken partitions") {
    GridTopology plane{0};
    std::vector<Cell> cells = {{0, 0}, {0, 1}, {0, 2}, {0, 3}};
    // Overlap.
    CHECK_FALSE(validate_decomposition(cells,
                                       {{TileShape::Domino2, {{0, 0}, {0, 1}}},
                                        {TileShape::Straight3, {{0, 1}, {0, 2}, {0, 3}}}},
                                       plane)
                    .ok);
    // Uncovered cell.
    CHECK_FALSE(
        validate_decomposition(cells, {{TileShape::Domino2, {{0, 0}, {0, 1}}}}, plane).ok);
    // Mislabeled shape.
    CHECK_FALSE(validate_decomposition(cells,
                                       {{TileShape::Domino2, {{0, 0}, {0, 1}}},
                                        {TileShape::L3, {{0, 2}, {0, 3}}}},
                                       plane)
                    .ok);
}

TEST_CASE("fuzz: random connected polyominoes decompose into valid partitions") {
    std::mt19937_64 rng(7);
    GridTopology plane{0};
    std::uniform_int_distribution<int> size(2, 40);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Cell> cells = random_polyomino(size(rng), rng);
        auto tiles = decompose(cells, plane);
        auto report = validate_decomposition(cells, tiles, plane);
        REQUIRE_MESSAGE(report.ok, report.message);
    }
}

TEST_CASE("torus decomposition of whole sublattices") {
    for (int L : {3, 4, 5}) {
        GridTopology topo{L};
        std::vector<Cell> cells;
        for (int u = 0; u < L; ++u) {
            for (int v = 0; v < L; ++v) {
                cells.push_back({u, v});
            }
        }
        auto tiles = decompose(cells, topo);
        auto report = validate_decomposition(cells, tiles, topo);
        REQUIRE_MESSAGE(report.ok, report.message);
    }
}

TEST_CASE("minimizing strategies exist for all shapes and orientations") {
    TorusLattice lat(4, 3);
    // All orientations of the five shapes, anchored away from the wrap seam.
    std::vector<std::vector<Cell>> placements = {
        {{1, 1}, {1, 2}},                                // dominoes
        {{1, 1}, {2, 1}},
        {{1, 0}, {1, 1}, {1, 2}},                        // straight
        {{0, 1}, {1, 1}, {2, 1}},
        {{1, 1}, {1, 2}, {2, 1}},                        // L, four corners
        {{1, 1}, {1, 2}, {0, 1}},
        {{1, 1}, {2, 1}, {2, 2}},
        {{1, 1}, {0, 1}, {0, 0}},
        {{1, 1}, {0, 1}, {2, 1}, {1, 2}},                // T, four headings
        {{1, 1}, {0, 1}, {2, 1}, {1, 0}},
        {{1, 1}, {1, 0}, {1, 2}, {0, 1}},
        {{1, 1}, {1, 0}, {1, 2}, {2, 1}},
        {{1, 1}, {0, 1}, {2, 1}, {1, 0}, {1, 2}},        // plus
    };
    for (Sublattice which : {Sublattice::Plaquette, Sublattice::Vertex}) {
        for (const auto& cells : placements) {
            GridTopology topo{4};
            auto tiles = decompose(cells, topo);
            REQUIRE(tiles.size() == 1);
            const PlacedTile& tile = tiles[0];

            auto assignment = min_tile_strategy(lat, tile, which);
            std::map<SiteCoord, int> exps;
            for (const TileVariable& tv : assignment) {
                CHECK(tv.input == (which == Sublattice::Plaquette ? 1 : 0));
                exps[tv.site] = tv.exponent;
            }

            // Each stabilizer cell of the tile must sit at omega^{+-1}, so the
            // tile value is -|t| while every boundary variable stays at 1.
            for (Cell c : tile.cells) {
                int s = cell_phase(lat, to_site(c, which, lat), which, exps);
                CHECK(s != 0);
            }

            // Assigned edges must be interior: shared by two tile cells.
            std::map<SiteCoord, int> incidence;
            for (Cell c : tile.cells) {
                SiteCoord cell_site = to_site(c, which, lat);
                auto nbs = which == Sublattice::Plaquette
                               ? plaquette_neighborhood(lat, cell_site)
                               : vertex_neighborhood(lat, cell_site);
                for (const NeighborTerm& nb : nbs) {
                    incidence[nb.site] += 1;
                }
            }
            for (const TileVariable& tv : assignment) {
                CHECK(incidence[tv.site] == 2);
            }
        }
    }
}

TEST_CASE("max counterpart is the all-ones strategy") {
    TorusLattice lat(4, 3);
    std::vector<Cell> cells = {{1, 1}, {1, 2}, {2, 1}};
    std::map<SiteCoord, int> empty;
    for (Cell c : cells) {
        CHECK(cell_phase(lat, to_site(c, Sublattice::Plaquette, lat), Sublattice::Plaquette,
                         empty) == 0);  // each cell at omega^0 contributes +2
    }
}

TEST_SUITE_END();
