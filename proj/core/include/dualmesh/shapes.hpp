#pragma once

#include "dualmesh/mesh.hpp"
#include "dualmesh/rng.hpp"

namespace dualmesh {

// Watertight reference shapes with outward (counter-clockwise) winding.

Mesh make_tetrahedron();                 // regular, circumradius 1
Mesh make_icosahedron();                 // circumradius 1
Mesh make_icosphere(int subdivisions);   // icosahedron subdivided, unit sphere
Mesh make_torus(int major_segments = 24, int minor_segments = 12,
                double major_radius = 1.0, double minor_radius = 0.35);

/// Icosphere with per-vertex radial jitter in [1-amount, 1+amount];
/// stays manifold and non-degenerate for modest amounts (<= 0.3).
Mesh make_jittered_sphere(int subdivisions, double amount, Rng& rng);

}  // namespace dualmesh
