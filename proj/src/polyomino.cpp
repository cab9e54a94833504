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

#include "bell/polyomino.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace bell {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Cell GridTopology::canon(Cell c) const {
    if (modulus == 0) {
        return c;
    }
    return {mod(c.u, modulus), mod(c.v, modulus)};
}

std::vector<Cell> GridTopology::neighbors(Cell c) const {
    std::vector<Cell> out = {{c.u - 1, c.v}, {c.u + 1, c.v}, {c.u, c.v - 1}, {c.u, c.v + 1}};
    for (Cell& n : out) {
        n = canon(n);
    }
    return out;
}

std::pair<int, int> GridTopology::step(Cell a, Cell b) const {
    int du = b.u - a.u;
    int dv = b.v - a.v;
    if (modulus != 0) {
        du = mod(du, modulus);
        dv = mod(dv, modulus);
        if (du == modulus - 1) {
            du = -1;
        }
        if (dv == modulus - 1) {
            dv = -1;
        }
    }
    if (std::abs(du) + std::abs(dv) != 1) {
        throw std::invalid_argument("cells are not grid-adjacent");
    }
    return {du, dv};
}

int tile_size(TileShape shape) {
    switch (shape) {
        case TileShape::Domino2:
            return 2;
        case TileShape::Straight3:
        case TileShape::L3:
            return 3;
        case TileShape::T4:
            return 4;
        case TileShape::Plus5:
            return 5;
    }
    return 0;
}

std::string to_string(TileShape shape) {
    switch (shape) {
        case TileShape::Domino2:
            return "domino2";
        case TileShape::Straight3:
            return "straight3";
        case TileShape::L3:
            return "l3";
        case TileShape::T4:
            return "t4";
        case TileShape::Plus5:
            return "plus5";
    }
    return "?";
}

namespace {

/// Shape of a star tile: `center` plus 1..4 of its grid neighbors (arms).
/// Every tile the decomposition removes has this form.
TileShape classify_star(const GridTopology& topo, Cell center, const std::vector<Cell>& arms) {
    switch (arms.size()) {
        case 1:
            return TileShape::Domino2;
        case 2: {
            auto s0 = topo.step(center, arms[0]);
            auto s1 = topo.step(center, arms[1]);
            bool opposite = s0.first == -s1.first && s0.second == -s1.second;
            return opposite ? TileShape::Straight3 : TileShape::L3;
        }
        case 3:
            return TileShape::T4;
        case 4:
            return TileShape::Plus5;
        default:
            throw std::logic_error("star tile with invalid arm count");
    }
}

struct SpanningTree {
    std::vector<Cell> order;                 // BFS order, order[0] = root
    std::map<Cell, Cell> parent;             // absent for root
    std::map<Cell, int> depth;
    std::map<Cell, std::vector<Cell>> adj;   // tree adjacency (undirected)
};

SpanningTree build_tree(const std::set<Cell>& cells, const GridTopology& topo) {
    SpanningTree tree;
    Cell root = *cells.begin();
    std::set<Cell> seen = {root};
    std::queue<Cell> frontier;
    frontier.push(root);
    tree.depth[root] = 0;
    while (!frontier.empty()) {
        Cell c = frontier.front();
        frontier.pop();
        tree.order.push_back(c);
        for (Cell n : topo.neighbors(c)) {
            if (cells.count(n) && !seen.count(n)) {
                seen.insert(n);
                tree.parent[n] = c;
                tree.depth[n] = tree.depth[c] + 1;
                tree.adj[c].push_back(n);
                tree.adj[n].push_back(c);
                frontier.push(n);
            }
        }
    }
    if (tree.order.size() != cells.size()) {
        throw std::invalid_argument("polyomino is not connected");
    }
    return tree;
}

/// Removes one elementary tile per the leaf/parent case analysis and returns
/// it; `cells` shrinks by the tile.
PlacedTile remove_tile(std::set<Cell>& cells, const GridTopology& topo) {
    SpanningTree tree = build_tree(cells, topo);

    // Deepest leaf, ties broken lexicographically.
    Cell leaf = tree.order[0];
    bool found = false;
    for (Cell c : tree.order) {
        if (tree.adj[c].size() == 1 || (tree.order.size() == 1 && tree.adj[c].empty())) {
            if (!found || tree.depth[c] > tree.depth[leaf] ||
                (tree.depth[c] == tree.depth[leaf] && c < leaf)) {
                leaf = c;
                found = true;
            }
        }
    }
    Cell parent = tree.parent.at(leaf);

    // Take the leaf, its parent, and every other tree-neighbor of the parent
    // that is itself a leaf. Neighbors with further structure stay behind and
    // anchor remainder components of size >= 2.
    std::vector<Cell> arms = {leaf};
    for (Cell n : tree.adj[parent]) {
        if (n != leaf && tree.adj[n].size() == 1) {
            arms.push_back(n);
        }
    }
    std::sort(arms.begin(), arms.end());

    PlacedTile tile;
    tile.shape = classify_star(topo, parent, arms);
    tile.cells = arms;
    tile.cells.push_back(parent);
    std::sort(tile.cells.begin(), tile.cells.end());
    for (Cell c : tile.cells) {
        cells.erase(c);
    }
    return tile;
}

std::vector<std::set<Cell>> components(const std::set<Cell>& cells, const GridTopology& topo) {
    std::vector<std::set<Cell>> out;
    std::set<Cell> left = cells;
    while (!left.empty()) {
        std::set<Cell> comp;
        std::queue<Cell> frontier;
        frontier.push(*left.begin());
        comp.insert(*left.begin());
        left.erase(left.begin());
        while (!frontier.empty()) {
            Cell c = frontier.front();
            frontier.pop();
            for (Cell n : topo.neighbors(c)) {
                if (left.count(n)) {
                    left.erase(n);
                    comp.insert(n);
                    frontier.push(n);
                }
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace

std::vector<PlacedTile> decompose(const std::vector<Cell>& cells, const GridTopology& topo) {
    if (topo.modulus != 0 && topo.modulus < 3) {
        throw std::invalid_argument("torus decomposition needs modulus >= 3");
    }
    std::set<Cell> cell_set;
    for (Cell c : cells) {
        cell_set.insert(topo.canon(c));
    }
    if (cell_set.size() != cells.size()) {
        throw std::invalid_argument("duplicate cells in polyomino");
    }
    if (cell_set.size() < 2) {
        throw std::invalid_argument("polyomino must have at least 2 cells");
    }
    build_tree(cell_set, topo);  // connectivity check up front

    std::vector<PlacedTile> tiles;
    std::vector<std::set<Cell>> pending = {cell_set};
    while (!pending.empty()) {
        std::set<Cell> region = std::move(pending.back());
        pending.pop_back();
        tiles.push_back(remove_tile(region, topo));
        for (auto& comp : components(region, topo)) {
            if (comp.size() < 2) {
                throw std::logic_error("tile removal left a singleton component");
            }
            pending.push_back(std::move(comp));
        }
    }
    return tiles;
}

DecompositionReport validate_decomposition(const std::vector<Cell>& cells,
                                           const std::vector<PlacedTile>& tiles,
                                           const GridTopology& topo) {
    DecompositionReport report;
    auto fail = [&](const std::string& msg) {
        report.ok = false;
        report.message = msg;
        return report;
    };
    std::set<Cell> target;
    for (Cell c : cells) {
        target.insert(topo.canon(c));
    }
    std::set<Cell> covered;
    for (const PlacedTile& tile : tiles) {
        if (static_cast<int>(tile.cells.size()) != tile_size(tile.shape)) {
            return fail("tile cell count does not match shape " + to_string(tile.shape));
        }
        for (Cell raw : tile.cells) {
            Cell c = topo.canon(raw);
            if (!target.count(c)) {
                return fail("tile covers a cell outside the polyomino");
            }
            if (covered.count(c)) {
                return fail("overlapping tiles at cell (" + std::to_string(c.u) + "," +
                            std::to_string(c.v) + ")");
            }
            covered.insert(c);
        }
        // Shape check: find a center adjacent to all other cells.
        std::vector<Cell> tc;
        for (Cell raw : tile.cells) {
            tc.push_back(topo.canon(raw));
        }
        bool shape_ok = false;
        for (Cell center : tc) {
            std::vector<Cell> arms;
            bool all_adjacent = true;
            for (Cell other : tc) {
                if (other == center) {
                    continue;
                }
                auto nbs = topo.neighbors(center);
                if (std::find(nbs.begin(), nbs.end(), other) == nbs.end()) {
                    all_adjacent = false;
                    break;
                }
                arms.push_back(other);
            }
            if (all_adjacent && !arms.empty() && classify_star(topo, center, arms) == tile.shape) {
                shape_ok = true;
                break;
            }
        }
        if (!shape_ok) {
            return fail("placed cells do not form a " + to_string(tile.shape));
        }
    }
    if (covered != target) {
        return fail("uncovered cell remains");
    }
    return report;
}

Cell to_cell(SiteCoord c) {
    return {c.i / 2, c.j / 2};
}

SiteCoord to_site(Cell c, Sublattice which, const TorusLattice& lat) {
    SiteCoord s = which == Sublattice::Plaquette ? SiteCoord{2 * c.u, 2 * c.v}
                                                 : SiteCoord{2 * c.u + 1, 2 * c.v + 1};
    return lat.wrap(s);
}

std::vector<TileVariable> min_tile_strategy(const TorusLattice& lat, const PlacedTile& tile,
                                            Sublattice which) {
    if (lat.d() != 3) {
        throw std::invalid_argument("minimizing tile strategies are derived for d = 3 only");
    }
    if (lat.L() < 3) {
        throw std::invalid_argument("tile strategies need L >= 3");
    }
    int d = 3;
    int input = which == Sublattice::Plaquette ? 1 : 0;

    // Per-cell edge list with the orientation sign of the stabilizer exponent.
    struct EdgeUse {
        SiteCoord site;
        int sign;
    };
    std::vector<SiteCoord> cell_sites;
    std::vector<std::vector<EdgeUse>> uses;
    for (Cell c : tile.cells) {
        SiteCoord s = to_site(c, which, lat);
        cell_sites.push_back(s);
        std::vector<EdgeUse> u;
        if (which == Sublattice::Plaquette) {
            for (const NeighborTerm& nb : plaquette_neighborhood(lat, s)) {
                u.push_back({nb.site, nb.dagger ? -1 : 1});
            }
        } else {
            for (const NeighborTerm& nb : vertex_neighborhood(lat, s)) {
                u.push_back({nb.site, nb.dagger ? -1 : 1});
            }
        }
        uses.push_back(std::move(u));
    }

    // Interior edges are shared by two cells of the tile; everything else is
    // boundary and pinned to exponent 0.
    std::map<SiteCoord, int> edge_count;
    for (const auto& u : uses) {
        for (const EdgeUse& e : u) {
            edge_count[e.site] += 1;
        }
    }
    std::vector<SiteCoord> interior;
    for (const auto& [site, count] : edge_count) {
        if (count == 2) {
            interior.push_back(site);
        } else if (count > 2) {
            throw std::logic_error("edge shared by more than two tile cells");
        }
    }

    std::map<SiteCoord, int> interior_index;
    for (size_t idx = 0; idx < interior.size(); ++idx) {
        interior_index[interior[idx]] = static_cast<int>(idx);
    }

    long long total = 1;
    for (size_t i = 0; i < interior.size(); ++i) {
        total *= d;
    }
    std::vector<int> exps(interior.size(), 0);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (size_t i = 0; i < interior.size(); ++i) {
            exps[i] = static_cast<int>(c % d);
            c /= d;
        }
        bool good = true;
        for (const auto& u : uses) {
            int s = 0;
            for (const EdgeUse& e : u) {
                auto it = interior_index.find(e.site);
                if (it != interior_index.end()) {
                    s += e.sign * exps[it->second];
                }
            }
            s = ((s % d) + d) % d;
            if (s == 0) {  // cell value 2 instead of -1
                good = false;
                break;
            }
        }
        if (good) {
            std::vector<TileVariable> out;
            for (size_t i = 0; i < interior.size(); ++i) {
                out.push_back({interior[i], input, exps[i]});
            }
            return out;
        }
    }
    throw std::logic_error("no minimizing assignment for tile " + to_string(tile.shape) +
                           "; the tiling argument would be falsified");
}

}  // namespace bell
