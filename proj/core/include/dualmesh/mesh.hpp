#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dualmesh/vec3.hpp"

namespace dualmesh {

using Face = std::array<int, 3>;

struct Edge {
    int v0 = -1, v1 = -1;            // v0 < v1
    std::array<int, 2> faces{-1, -1};
    int face_count() const { return (faces[0] >= 0 ? 1 : 0) + (faces[1] >= 0 ? 1 : 0); }
    bool boundary() const { return face_count() == 1; }
};

/// Undirected edge -> incident faces, plus each face's three edges in
/// winding order (edge i connects face[i] and face[(i+1)%3]).
class EdgeFaceIndex {
public:
    EdgeFaceIndex() = default;
    EdgeFaceIndex(int vertex_count, const std::vector<Face>& faces);

    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[id]; }
    const std::array<int, 3>& face_edges(int face) const { return face_edges_[face]; }

    /// Edge id for an unordered vertex pair, or -1.
    int find(int a, int b) const;

    /// The face on the other side of edge (a,b) from `face`, or -1 at a boundary.
    int neighbor_across(int face, int a, int b) const;

private:
    static std::uint64_t key(int a, int b);
    std::vector<Edge> edges_;
    std::vector<std::array<int, 3>> face_edges_;
    std::unordered_map<std::uint64_t, int> lookup_;
};

/// Immutable validated triangular mesh. Construction throws ValidationError /
/// NonManifoldError on malformed input; winding is taken from the input as-is
/// (inconsistent winding between adjacent faces is reported in diagnostics(),
/// not repaired — it corrupts normals, which the caller may care about).
class Mesh {
public:
    Mesh(std::vector<Vec3> vertices, std::vector<Face> faces,
         std::vector<int> labels = {});

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return edges_.edge_count(); }

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Face>& faces() const { return faces_; }
    const Vec3& vertex(int i) const { return vertices_[i]; }
    const Face& face(int i) const { return faces_[i]; }

    /// Per-vertex labels into a reference shape; empty when absent, -1 = unlabeled.
    const std::vector<int>& labels() const { return labels_; }
    bool has_labels() const { return !labels_.empty(); }

    const EdgeFaceIndex& edges() const { return edges_; }
    /// Faces incident to each vertex, in face-index order.
    const std::vector<std::vector<int>>& vertex_faces() const { return vertex_faces_; }
    /// Vertices adjacent to each vertex (edge graph), sorted.
    const std::vector<std::vector<int>>& vertex_adjacency() const { return vertex_adjacency_; }

    /// Non-fatal findings from validation (e.g. inconsistent winding).
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

private:
    void validate_and_index();

    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
    std::vector<int> labels_;
    EdgeFaceIndex edges_;
    std::vector<std::vector<int>> vertex_faces_;
    std::vector<std::vector<int>> vertex_adjacency_;
    std::vector<std::string> diagnostics_;
};

/// True iff every edge is shared by exactly two faces.
bool is_watertight(const Mesh& mesh);

/// Mesh with vertices mapped by v' = scale * (rotation applied to v) + translation.
Mesh transformed(const Mesh& mesh, const std::array<Vec3, 3>& rotation_rows,
                 const Vec3& translation, double scale);

/// Mirror image: negate x and flip winding (normals stay outward).
Mesh mirrored_x(const Mesh& mesh);

}  // namespace dualmesh
