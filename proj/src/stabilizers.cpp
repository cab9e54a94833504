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

#include "bell/stabilizers.hpp"

#include <stdexcept>

namespace bell {

WeylWord vertex_operator(const TorusLattice& lat, SiteCoord v) {
    WeylWord w = WeylWord::identity(lat.num_sites(), lat.d());
    for (const NeighborTerm& nb : vertex_neighborhood(lat, v)) {
        w.x[lat.site_index(nb.site)] = nb.dagger ? lat.d() - 1 : 1;
    }
    return w;
}

WeylWord plaquette_operator(const TorusLattice& lat, SiteCoord p) {
    WeylWord w = WeylWord::identity(lat.num_sites(), lat.d());
    for (const NeighborTerm& nb : plaquette_neighborhood(lat, p)) {
        w.z[lat.site_index(nb.site)] = nb.dagger ? lat.d() - 1 : 1;
    }
    return w;
}

WeylWord extra_operator(const TorusLattice& lat, SiteCoord s, int x) {
    s = lat.wrap(s);
    if (lat.kind(s) != SiteKind::VerticalEdge) {
        throw std::invalid_argument("extra operator requires a vertical-edge site, got " +
                                    to_string(s));
    }
    if (x < 2 || x > lat.d() - 1) {
        throw std::invalid_argument("extra operator input x must lie in 2..d-1");
    }
    WeylWord below = vertex_operator(lat, {s.i, s.j - 1});
    WeylWord right = plaquette_operator(lat, {s.i + 1, s.j});
    return multiply(power(below, 1 - x), power(right, x));
}

}  // namespace bell
