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

#ifndef BELL_LATTICE_HPP
#define BELL_LATTICE_HPP

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace bell {

/// Cell classification on the 2L x 2L coordinate grid, by parity of (i, j).
/// Edges carry the qudits; vertices and plaquettes index the stabilizers.
enum class SiteKind { VerticalEdge, HorizontalEdge, Vertex, Plaquette };

struct SiteCoord {
    int i = 0;
    int j = 0;
    auto operator<=>(const SiteCoord&) const = default;
};

/// Kind from parity alone: vertex = (odd, odd), plaquette = (even, even),
/// vertical edge = (odd, even), horizontal edge = (even, odd).
SiteKind site_kind(SiteCoord c);

std::string to_string(SiteCoord c);
std::string to_string(SiteKind k);

/// Square torus with L vertices per dimension and odd prime local dimension d.
/// Coordinates live on a 2L x 2L grid, arithmetic mod 2L in both axes.
/// N = 2L^2 edges, L^2 vertices, L^2 plaquettes.
class TorusLattice {
  public:
    TorusLattice(int L, int d);

    int L() const { return L_; }
    int d() const { return d_; }
    int extent() const { return 2 * L_; }
    int num_sites() const { return 2 * L_ * L_; }
    int num_vertices() const { return L_ * L_; }
    int num_plaquettes() const { return L_ * L_; }

    SiteCoord wrap(SiteCoord c) const;
    SiteKind kind(SiteCoord c) const { return site_kind(wrap(c)); }

    std::vector<SiteCoord> sites() const;
    std::vector<SiteCoord> vertices() const;
    std::vector<SiteCoord> plaquettes() const;

    /// Row-major enumeration of the edges, in [0, N).
    int site_index(SiteCoord c) const;
    SiteCoord site_at(int index) const;

  private:
    int L_;
    int d_;
};

struct NeighborTerm {
    SiteCoord site;
    bool dagger;
};

/// The four edges of a star term, in the order (i-1,j), (i,j-1), (i,j+1),
/// (i+1,j). Links oriented toward the vertex (the first two) carry X^dagger.
std::array<NeighborTerm, 4> vertex_neighborhood(const TorusLattice& lat, SiteCoord v);

/// The four edges of a plaquette term, same coordinate order. Anticlockwise
/// oriented edges ((i,j-1) and (i+1,j)) carry Z^dagger.
std::array<NeighborTerm, 4> plaquette_neighborhood(const TorusLattice& lat, SiteCoord p);

/// Ordered list of special sites, each on a vertical edge.
struct SpecialSiteSet {
    std::vector<SiteCoord> sites;
    int count() const { return static_cast<int>(sites.size()); }
};

/// The edges touched by the five operator families of one special site,
/// split by which measurement basis the generated Bell terms probe there.
/// x_basis lists the 7 edges of the two adjacent star terms (plus the extra
/// operators' X legs), z_basis the 7 edges of the two adjacent plaquette
/// terms (plus the extra operators' Z legs). The special site and its
/// neighbor (i*+1, j*-1) appear in both lists, so all() has 14 entries over
/// 9 distinct coordinates.
struct TileRegion {
    std::vector<SiteCoord> x_basis;
    std::vector<SiteCoord> z_basis;
    std::vector<SiteCoord> all() const;
};

/// Throws std::invalid_argument if s is not a vertical edge, or if wrap-around
/// makes region sites coincide (happens exactly when L = 2).
TileRegion special_tile_region(const TorusLattice& lat, SiteCoord s);

struct ValidationReport {
    bool ok = true;
    std::string message;
};

/// Checks that every special site is a distinct vertical edge, that no star or
/// plaquette term contains two special sites, and that every vertex/plaquette
/// outside the special tiles has at least one neighbor also outside them
/// (the tiling condition for the tight d=3 strategy assembly).
ValidationReport validate_special_sites(const TorusLattice& lat, const SpecialSiteSet& specials);

}  // namespace bell

#endif
