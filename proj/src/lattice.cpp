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

#include "bell/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bell {

namespace {

bool is_odd_prime(int d) {
    if (d < 3 || d % 2 == 0) {
        return false;
    }
    for (int f = 3; f * f <= d; f += 2) {
        if (d % f == 0) {
            return false;
        }
    }
    return true;
}

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

SiteKind site_kind(SiteCoord c) {
    bool i_odd = (c.i & 1) != 0;
    bool j_odd = (c.j & 1) != 0;
    if (i_odd && j_odd) {
        return SiteKind::Vertex;
    }
    if (!i_odd && !j_odd) {
        return SiteKind::Plaquette;
    }
    if (i_odd) {
        return SiteKind::VerticalEdge;
    }
    return SiteKind::HorizontalEdge;
}

std::string to_string(SiteCoord c) {
    std::ostringstream out;
    out << "(" << c.i << "," << c.j << ")";
    return out.str();
}

std::string to_string(SiteKind k) {
    switch (k) {
        case SiteKind::VerticalEdge:
            return "vertical edge";
        case SiteKind::HorizontalEdge:
            return "horizontal edge";
        case SiteKind::Vertex:
            return "vertex";
        case SiteKind::Plaquette:
            return "plaquette";
    }
    return "?";
}

TorusLattice::TorusLattice(int L, int d) : L_(L), d_(d) {
    if (L < 2) {
        throw std::invalid_argument("lattice requires L >= 2");
    }
    if (!is_odd_prime(d)) {
        throw std::invalid_argument("local dimension d must be an odd prime >= 3");
    }
}

SiteCoord TorusLattice::wrap(SiteCoord c) const {
    return {mod(c.i, extent()), mod(c.j, extent())};
}

std::vector<SiteCoord> TorusLattice::sites() const {
    std::vector<SiteCoord> out;
    out.reserve(num_sites());
    for (int i = 0; i < extent(); ++i) {
        for (int j = 0; j < extent(); ++j) {
            if ((i + j) % 2 == 1) {
                out.push_back({i, j});
            }
        }
    }
    return out;
}

std::vector<SiteCoord> TorusLattice::vertices() const {
    std::vector<SiteCoord> out;
    out.reserve(num_vertices());
    for (int i = 1; i < extent(); i += 2) {
        for (int j = 1; j < extent(); j += 2) {
            out.push_back({i, j});
        }
    }
    return out;
}

std::vector<SiteCoord> TorusLattice::plaquettes() const {
    std::vector<SiteCoord> out;
    out.reserve(num_plaquettes());
    for (int i = 0; i < extent(); i += 2) {
        for (int j = 0; j < extent(); j += 2) {
            out.push_back({i, j});
        }
    }
    return out;
}

int TorusLattice::site_index(SiteCoord c) const {
    c = wrap(c);
    if ((c.i + c.j) % 2 != 1) {
        throw std::invalid_argument(to_string(c) + " is not an edge site");
    }
    // Each row holds L edges, alternating between j odd and j even rows.
    int col = (c.i % 2 == 0) ? (c.j - 1) / 2 : c.j / 2;
    return c.i * L_ + col;
}

SiteCoord TorusLattice::site_at(int index) const {
    if (index < 0 || index >= num_sites()) {
        throw std::out_of_range("site index out of range");
    }
    int i = index / L_;
    int col = index % L_;
    int j = (i % 2 == 0) ? 2 * col + 1 : 2 * col;
    return {i, j};
}

std::array<NeighborTerm, 4> vertex_neighborhood(const TorusLattice& lat, SiteCoord v) {
    v = lat.wrap(v);
    if (site_kind(v) != SiteKind::Vertex) {
        throw std::invalid_argument(to_string(v) + " is not a vertex");
    }
    return {{
        {lat.wrap({v.i - 1, v.j}), true},
        {lat.wrap({v.i, v.j - 1}), true},
        {lat.wrap({v.i, v.j + 1}), false},
        {lat.wrap({v.i + 1, v.j}), false},
    }};
}

std::array<NeighborTerm, 4> plaquette_neighborhood(const TorusLattice& lat, SiteCoord p) {
    p = lat.wrap(p);
    if (site_kind(p) != SiteKind::Plaquette) {
        throw std::invalid_argument(to_string(p) + " is not a plaquette");
    }
    return {{
        {lat.wrap({p.i - 1, p.j}), false},
        {lat.wrap({p.i, p.j - 1}), true},
        {lat.wrap({p.i, p.j + 1}), false},
        {lat.wrap({p.i + 1, p.j}), true},
    }};
}

std::vector<SiteCoord> TileRegion::all() const {
    std::vector<SiteCoord> out = x_basis;
    out.insert(out.end(), z_basis.begin(), z_basis.end());
    return out;
}

TileRegion special_tile_region(const TorusLattice& lat, SiteCoord s) {
    s = lat.wrap(s);
    if (site_kind(s) != SiteKind::VerticalEdge) {
        throw std::invalid_argument("special site " + to_string(s) + " is not a vertical edge");
    }
    TileRegion region;
    auto push_unique = [&](std::vector<SiteCoord>& list, SiteCoord c) {
        c = lat.wrap(c);
        if (std::find(list.begin(), list.end(), c) == list.end()) {
            list.push_back(c);
        }
    };
    for (auto& nb : vertex_neighborhood(lat, {s.i, s.j - 1})) {
        push_unique(region.x_basis, nb.site);
    }
    for (auto& nb : vertex_neighborhood(lat, {s.i, s.j + 1})) {
        push_unique(region.x_basis, nb.site);
    }
    for (auto& nb : plaquette_neighborhood(lat, {s.i - 1, s.j})) {
        push_unique(region.z_basis, nb.site);
    }
    for (auto& nb : plaquette_neighborhood(lat, {s.i + 1, s.j})) {
        push_unique(region.z_basis, nb.site);
    }
    if (region.x_basis.size() != 7 || region.z_basis.size() != 7) {
        throw std::invalid_argument(
            "special tile at " + to_string(s) + " is degenerate under wrap-around (needs L >= 3)");
    }
    return region;
}

ValidationReport validate_special_sites(const TorusLattice& lat, const SpecialSiteSet& specials) {
    ValidationReport report;
    auto fail = [&](const std::string& msg) {
        report.ok = false;
        report.message = msg;
        return report;
    };

    std::vector<SiteCoord> sites;
    for (SiteCoord s : specials.sites) {
        sites.push_back(lat.wrap(s));
    }
    for (SiteCoord s : sites) {
        if (site_kind(s) != SiteKind::VerticalEdge) {
            return fail("special site " + to_string(s) + " is a " + to_string(site_kind(s)) +
                        ", not a vertical edge");
        }
    }
    if (!sites.empty() && lat.L() < 3) {
        return fail("special sites require L >= 3 (tile sites coincide under mod-4 wrap)");
    }
    for (size_t a = 0; a < sites.size(); ++a) {
        for (size_t b = a + 1; b < sites.size(); ++b) {
            if (sites[a] == sites[b]) {
                return fail("duplicate special site " + to_string(sites[a]));
            }
            int di = std::abs(sites[a].i - sites[b].i);
            int dj = std::abs(sites[a].j - sites[b].j);
            di = std::min(di, lat.extent() - di);
            dj = std::min(dj, lat.extent() - dj);
            if (di == 0 && dj == 2) {
                SiteCoord v = lat.wrap({sites[a].i, std::min(sites[a].j, sites[b].j) + 1});
                if (dj != std::abs(sites[a].j - sites[b].j)) {
                    v = lat.wrap({sites[a].i, std::max(sites[a].j, sites[b].j) + 1});
                }
                return fail("vertex " + to_string(v) + " contains special sites " +
                            to_string(sites[a]) + " and " + to_string(sites[b]));
            }
            if (dj == 0 && di == 2) {
                SiteCoord p = lat.wrap({std::min(sites[a].i, sites[b].i) + 1, sites[a].j});
                if (di != std::abs(sites[a].i - sites[b].i)) {
                    p = lat.wrap({std::max(sites[a].i, sites[b].i) + 1, sites[a].j});
                }
                return fail("plaquette " + to_string(p) + " contains special sites " +
                            to_string(sites[a]) + " and " + to_string(sites[b]));
            }
        }
    }

    // Tiling condition: every vertex/plaquette outside the special tiles must
    // keep a neighbor outside them, else the complement has a singleton cell.
    std::set<SiteCoord> near_vertices;
    std::set<SiteCoord> near_plaquettes;
    for (SiteCoord s : sites) {
        near_vertices.insert(lat.wrap({s.i, s.j - 1}));
        near_vertices.insert(lat.wrap({s.i, s.j + 1}));
        near_plaquettes.insert(lat.wrap({s.i - 1, s.j}));
        near_plaquettes.insert(lat.wrap({s.i + 1, s.j}));
    }
    auto check_complement = [&](const std::vector<SiteCoord>& cells, const std::set<SiteCoord>& near,
                                const char* label) {
        for (SiteCoord c : cells) {
            if (near.count(c)) {
                continue;
            }
            bool has_free_neighbor = false;
            for (SiteCoord n : {SiteCoord{c.i - 2, c.j}, SiteCoord{c.i + 2, c.j},
                                SiteCoord{c.i, c.j - 2}, SiteCoord{c.i, c.j + 2}}) {
                SiteCoord w = lat.wrap(n);
                if (w != c && !near.count(w)) {
                    has_free_neighbor = true;
                    break;
                }
            }
            if (!has_free_neighbor) {
                return std::string(label) + " " + to_string(c) +
                       " is isolated outside the special tiles";
            }
        }
        return std::string();
    };
    std::string msg = check_complement(lat.plaquettes(), near_plaquettes, "plaquette");
    if (msg.empty()) {
        msg = check_complement(lat.vertices(), near_vertices, "vertex");
    }
    if (!msg.empty()) {
        return fail(msg);
    }
    return report;
}

}  // namespace bell
