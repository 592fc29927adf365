#include "dualmesh/mesh.hpp"

#include <algorithm>
#include <sstream>

#include "dualmesh/errors.hpp"

namespace dualmesh {

std::uint64_t EdgeFaceIndex::key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

EdgeFaceIndex::EdgeFaceIndex(int vertex_count, const std::vector<Face>& faces) {
    (void)vertex_count;
    face_edges_.resize(faces.size());
    lookup_.reserve(faces.size() * 2);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        for (int i = 0; i < 3; ++i) {
            int a = faces[f][i];
            int b = faces[f][(i + 1) % 3];
            auto k = key(a, b);
            auto it = lookup_.find(k);
            int id;
            if (it == lookup_.end()) {
                id = static_cast<int>(edges_.size());
                Edge e;
                e.v0 = std::min(a, b);
                e.v1 = std::max(a, b);
                e.faces[0] = f;
                edges_.push_back(e);
                lookup_.emplace(k, id);
            } else {
                id = it->second;
                Edge& e = edges_[id];
                if (e.faces[1] >= 0) {
                    std::ostringstream msg;
                    msg << "non-manifold edge (" << e.v0 << "," << e.v1
                        << ") incident to faces " << e.faces[0] << "," << e.faces[1]
                        << "," << f;
                    throw NonManifoldError(msg.str());
                }
                e.faces[1] = f;
            }
            face_edges_[f][i] = id;
        }
    }
}

int EdgeFaceIndex::find(int a, int b) const {
    auto it = lookup_.find(key(a, b));
    return it == lookup_.end() ? -1 : it->second;
}

int EdgeFaceIndex::neighbor_across(int face, int a, int b) const {
    int id = find(a, b);
    if (id < 0) return -1;
    const Edge& e = edges_[id];
    if (e.faces[0] == face) return e.faces[1];
    if (e.faces[1] == face) return e.faces[0];
    return -1;
}

Mesh::Mesh(std::vector<Vec3> vertices, std::vector<Face> faces, std::vector<int> labels)
    : vertices_(std::move(vertices)), faces_(std::move(faces)), labels_(std::move(labels)) {
    validate_and_index();
}

void Mesh::validate_and_index() {
    const int nv = vertex_count();
    for (int f = 0; f < face_count(); ++f) {
        const Face& face = faces_[f];
        for (int i = 0; i < 3; ++i) {
            if (face[i] < 0 || face[i] >= nv) {
                std::ostringstream msg;
                msg << "face " << f << " references vertex " << face[i]
                    << " outside [0," << nv << ")";
                throw ValidationError(msg.str());
            }
        }
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
            std::ostringstream msg;
            msg << "face " << f << " has a repeated vertex (" << face[0] << ","
                << face[1] << "," << face[2] << ")";
            throw ValidationError(msg.str());
        }
    }

    // duplicate faces as unordered vertex sets
    {
        std::vector<std::array<int, 3>> sorted(faces_.size());
        for (std::size_t f = 0; f < faces_.size(); ++f) {
            sorted[f] = faces_[f];
            std::sort(sorted[f].begin(), sorted[f].end());
        }
        std::vector<int> order(faces_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return sorted[a] < sorted[b]; });
        for (std::size_t i = 1; i < order.size(); ++i) {
            if (sorted[order[i - 1]] == sorted[order[i]]) {
                std::ostringstream msg;
                msg << "duplicate faces " << order[i - 1] << " and " << order[i];
                throw ValidationError(msg.str());
            }
        }
    }

    if (!labels_.empty() && static_cast<int>(labels_.size()) != nv)
        throw ValidationError("label count differs from vertex count");

    edges_ = EdgeFaceIndex(nv, faces_);  // throws NonManifoldError on >2 faces/edge

    vertex_faces_.assign(nv, {});
    for (int f = 0; f < face_count(); ++f)
        for (int v : faces_[f]) vertex_faces_[v].push_back(f);

    vertex_adjacency_.assign(nv, {});
    for (const Edge& e : edges_.edges()) {
        vertex_adjacency_[e.v0].push_back(e.v1);
        vertex_adjacency_[e.v1].push_back(e.v0);
    }
    for (auto& adj : vertex_adjacency_) std::sort(adj.begin(), adj.end());

    // Interior edges whose two faces traverse them in the same direction have
    // inconsistent winding; faces on opposite sides must disagree.
    int inconsistent = 0;
    int example_edge = -1;
    for (int id = 0; id < edges_.edge_count(); ++id) {
        const Edge& e = edges_.edge(id);
        if (e.face_count() != 2) continue;
        auto direction = [&](int f) {
            const Face& face = faces_[f];
            for (int i = 0; i < 3; ++i) {
                int a = face[i], b = face[(i + 1) % 3];
                if (a == e.v0 && b == e.v1) return +1;
                if (a == e.v1 && b == e.v0) return -1;
            }
            return 0;
        };
        if (direction(e.faces[0]) == direction(e.faces[1])) {
            ++inconsistent;
            if (example_edge < 0) example_edge = id;
        }
    }
    if (inconsistent > 0) {
        std::ostringstream msg;
        const Edge& e = edges_.edge(example_edge);
        msg << "inconsistent winding across " << inconsistent
            << " edge(s), e.g. (" << e.v0 << "," << e.v1 << "); normals may be corrupted";
        diagnostics_.push_back(msg.str());
    }
}

bool is_watertight(const Mesh& mesh) {
    for (const Edge& e : mesh.edges().edges())
        if (e.face_count() != 2) return false;
    return mesh.face_count() > 0;
}

Mesh transformed(const Mesh& mesh, const std::array<Vec3, 3>& rot, const Vec3& t, double s) {
    std::vector<Vec3> verts(mesh.vertices().size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const Vec3& v = mesh.vertex(static_cast<int>(i));
        Vec3 r{rot[0].dot(v), rot[1].dot(v), rot[2].dot(v)};
        verts[i] = r * s + t;
    }
    return Mesh(std::move(verts), mesh.faces(), mesh.labels());
}

Mesh mirrored_x(const Mesh& mesh) {
    std::vector<Vec3> verts(mesh.vertices().size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        Vec3 v = mesh.vertex(static_cast<int>(i));
        v.x = -v.x;
        verts[i] = v;
    }
    std::vector<Face> faces(mesh.faces().size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Face& src = mesh.face(static_cast<int>(f));
        faces[f] = {src[0], src[2], src[1]};
    }
    return Mesh(std::move(verts), std::move(faces), mesh.labels());
}

}  // namespace dualmesh
