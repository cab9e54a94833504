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

#ifndef BELL_POLYOMINO_HPP
#define BELL_POLYOMINO_HPP

#include <string>
#include <vector>

#include "bell/lattice.hpp"

namespace bell {

/// One unit cell of a polyomino. On the plane coordinates are free integers;
/// on a torus they live mod `modulus` per axis.
struct Cell {
    int u = 0;
    int v = 0;
    auto operator<=>(const Cell&) const = default;
};

/// modulus = 0 means the infinite plane. A torus needs modulus >= 3 so that
/// the step direction between adjacent cells is unambiguous.
struct GridTopology {
    int modulus = 0;

    Cell canon(Cell c) const;
    std::vector<Cell> neighbors(Cell c) const;
    /// Unit step from a to its adjacent cell b, one of (+-1,0), (0,+-1).
    std::pair<int, int> step(Cell a, Cell b) const;
};

enum class TileShape { Domino2, Straight3, L3, T4, Plus5 };

int tile_size(TileShape shape);
std::string to_string(TileShape shape);

struct PlacedTile {
    TileShape shape;
    std::vector<Cell> cells;
};

/// Partitions a connected polyomino of size >= 2 into the five elementary
/// tiles by repeatedly removing a star of cells around the tree-parent of a
/// spanning-tree leaf; every removal leaves components of size >= 2.
/// Deterministic: BFS spanning tree from the smallest cell, leaf choice
/// deepest-then-lexicographic. Throws std::invalid_argument on disconnected
/// or singleton input.
std::vector<PlacedTile> decompose(const std::vector<Cell>& cells, const GridTopology& topo);

struct DecompositionReport {
    bool ok = true;
    std::string message;
};

/// Checks that the tiles exactly partition the cell set and that each placed
/// tile matches its declared shape up to rotation/reflection.
DecompositionReport validate_decomposition(const std::vector<Cell>& cells,
                                           const std::vector<PlacedTile>& tiles,
                                           const GridTopology& topo);

/// Which stabilizer sublattice a tile is embedded on. Plaquette tiles drive
/// the input-1 variables, vertex tiles the input-0 variables.
enum class Sublattice { Plaquette, Vertex };

struct TileVariable {
    SiteCoord site;
    int input = 0;
    int exponent = 0;
};

/// Maps between lattice cells (plaquettes at even/even, vertices at odd/odd)
/// and polyomino cells on the L x L torus grid.
Cell to_cell(SiteCoord c);
SiteCoord to_site(Cell c, Sublattice which, const TorusLattice& lat);

/// Finds, by brute force over the tile's interior edges with all boundary
/// edges fixed to omega^0 = 1, an assignment giving every stabilizer cell of
/// the tile the value 2 Re(w^{+-1}) = -1, i.e. tile total -|t|. Only d = 3.
/// Throws std::logic_error if no such assignment exists, which would
/// contradict the tiling argument the local bound rests on.
std::vector<TileVariable> min_tile_strategy(const TorusLattice& lat, const PlacedTile& tile,
                                            Sublattice which);

}  // namespace bell

#endif
