#pragma once

// Small standard triangulations used by fixtures and tests.

#include "bcover/simplicial.hpp"

namespace bcover::complexes {

/// Cycle on vertices 0..n-1.
SimplicialComplex cycle(int n);
SimplicialComplex hexagon();
/// Full simplex on vertices 0..n.
SimplicialComplex simplex(int n);
/// Boundary of the n-simplex: an (n-1)-sphere on n+1 vertices.
SimplicialComplex boundary_of_simplex(int n);
/// Suspension of the 4-cycle 1-2-3-4 with apexes 0 and 5.
SimplicialComplex octahedron();
/// Seven-vertex torus.
SimplicialComplex torus7();
/// Six-vertex projective plane.
SimplicialComplex rp2();
/// Wedge of k triangles sharing vertex 0 (a graph with first Betti number k).
SimplicialComplex bouquet(int k);
/// Subdivided octahedron with the two apexes identified, vertices renumbered
/// contiguously. The identified point is vertex 0.
SimplicialComplex pinched_torus();

}  // namespace bcover::complexes
