#include "dualmesh/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace dualmesh {

namespace {

// Flux of the position field through the surface is 3x the enclosed volume;
// negative means the winding points inward, so flip.
std::vector<Face> oriented_outward(const std::vector<Vec3>& verts, std::vector<Face> faces) {
    double flux = 0.0;
    for (const Face& f : faces) {
        const Vec3 &a = verts[f[0]], &b = verts[f[1]], &c = verts[f[2]];
        flux += (b - a).cross(c - a).dot(a + b + c);
    }
    if (flux < 0.0)
        for (Face& f : faces) std::swap(f[1], f[2]);
    return faces;
}

}  // namespace

Mesh make_tetrahedron() {
    const double s = 1.0 / std::sqrt(3.0);
    std::vector<Vec3> verts = {
        {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    std::vector<Face> faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return Mesh(verts, oriented_outward(verts, faces));
}

Mesh make_icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double n = std::sqrt(1.0 + phi * phi);  // scale to circumradius 1
    const double a = 1.0 / n, b = phi / n;
    std::vector<Vec3> verts = {
        {-a, b, 0}, {a, b, 0},  {-a, -b, 0}, {a, -b, 0},
        {0, -a, b}, {0, a, b},  {0, -a, -b}, {0, a, -b},
        {b, 0, -a}, {b, 0, a},  {-b, 0, -a}, {-b, 0, a}};
    std::vector<Face> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    return Mesh(verts, oriented_outward(verts, faces));
}

Mesh make_icosphere(int subdivisions) {
    Mesh ico = make_icosahedron();
    std::vector<Vec3> verts = ico.vertices();
    std::vector<Face> faces = ico.faces();

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int u, int v) {
            auto k = std::minmax(u, v);
            auto it = midpoint.find(k);
            if (it != midpoint.end()) return it->second;
            int id = static_cast<int>(verts.size());
            verts.push_back(((verts[u] + verts[v]) * 0.5).normalized());
            midpoint.emplace(k, id);
            return id;
        };
        std::vector<Face> next;
        next.reserve(faces.size() * 4);
        for (const Face& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    return Mesh(std::move(verts), std::move(faces));
}

Mesh make_torus(int major_segments, int minor_segments, double major_radius,
                double minor_radius) {
    const double tau = 2.0 * std::numbers::pi;
    std::vector<Vec3> verts;
    verts.reserve(static_cast<std::size_t>(major_segments) * minor_segments);
    for (int i = 0; i < major_segments; ++i) {
        double theta = tau * i / major_segments;
        for (int j = 0; j < minor_segments; ++j) {
            double phi = tau * j / minor_segments;
            double r = major_radius + minor_radius * std::cos(phi);
            verts.push_back({r * std::cos(theta), r * std::sin(theta),
                             minor_radius * std::sin(phi)});
        }
    }
    auto vid = [&](int i, int j) {
        return (i % major_segments) * minor_segments + (j % minor_segments);
    };
    std::vector<Face> faces;
    faces.reserve(static_cast<std::size_t>(major_segments) * minor_segments * 2);
    for (int i = 0; i < major_segments; ++i)
        for (int j = 0; j < minor_segments; ++j) {
            int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            faces.push_back({a, b, c});
            faces.push_back({a, c, d});
        }
    return Mesh(verts, oriented_outward(verts, faces));
}

Mesh make_jittered_sphere(int subdivisions, double amount, Rng& rng) {
    Mesh sphere = make_icosphere(subdivisions);
    std::vector<Vec3> verts = sphere.vertices();
    for (Vec3& v : verts) v *= rng.uniform(1.0 - amount, 1.0 + amount);
    return Mesh(std::move(verts), sphere.faces());
}

}  // namespace dualmesh
