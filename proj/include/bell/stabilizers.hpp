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

#ifndef BELL_STABILIZERS_HPP
#define BELL_STABILIZERS_HPP

#include "bell/lattice.hpp"
#include "bell/weyl.hpp"

namespace bell {

/// Star term V: X^dagger on the two links oriented toward the vertex,
/// X on the other two. Phase 0.
WeylWord vertex_operator(const TorusLattice& lat, SiteCoord v);

/// Plaquette term P: Z on (i-1,j) and (i,j+1), Z^dagger on (i,j-1), (i+1,j).
WeylWord plaquette_operator(const TorusLattice& lat, SiteCoord p);

/// Extra stabilizing operator E(x) = V_{(i,j-1)}^{1-x} P_{(i+1,j)}^{x} for a
/// vertical-edge site (i,j) and x in 2..d-1. Built by composition; its closed
/// form touches six sites and carries no phase.
WeylWord extra_operator(const TorusLattice& lat, SiteCoord s, int x);

}  // namespace bell

#endif
