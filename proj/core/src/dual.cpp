#include "dualmesh/dual.hpp"

#include <ostream>
#include <sstream>

#include "dualmesh/errors.hpp"

namespace dualmesh {

namespace {

// Degeneracy test relative to the face's own scale.
bool face_degenerate(const Mesh& mesh, int f) {
    const Face& face = mesh.face(f);
    const Vec3 &a = mesh.vertex(face[0]), &b = mesh.vertex(face[1]), &c = mesh.vertex(face[2]);
    double cross2 = (b - a).cross(c - a).norm2();
    double longest2 = std::max({(b - a).norm2(), (c - b).norm2(), (a - c).norm2()});
    return cross2 <= 1e-24 * longest2 * longest2;
}

}  // namespace

bool DualGraph::three_regular() const {
    for (int n = 0; n < node_count(); ++n)
        if (real_neighbor_count(n) != 3) return false;
    return true;
}

int DualGraph::edge_count() const {
    int slots = 0;
    for (int n = 0; n < node_count(); ++n) slots += real_neighbor_count(n);
    return slots / 2;
}

void DualGraph::dump(std::ostream& out) const {
    for (int n = 0; n < node_count(); ++n) {
        const auto& nb = neighbors_[n];
        out << n << ": " << nb[0] << " " << nb[1] << " " << nb[2] << "\n";
    }
}

std::array<int, 3> order_neighbors(const Mesh& mesh, int face) {
    if (face_degenerate(mesh, face)) {
        std::ostringstream msg;
        msg << "face " << face << " has zero area; neighbor orientation undefined";
        throw DegenerateFaceError(msg.str());
    }
    const Face& f = mesh.face(face);
    std::array<int, 3> slots{DualGraph::kPad, DualGraph::kPad, DualGraph::kPad};
    int filled = 0;
    for (int i = 0; i < 3; ++i) {
        int across = mesh.edges().neighbor_across(face, f[i], f[(i + 1) % 3]);
        if (across >= 0) slots[filled++] = across;
    }
    return slots;
}

DualGraph build_dual(const Mesh& mesh) {
    DualGraph dual;
    dual.neighbors_.resize(mesh.face_count());
    dual.centers_.resize(mesh.face_count());
    for (int f = 0; f < mesh.face_count(); ++f) {
        dual.neighbors_[f] = order_neighbors(mesh, f);
        const Face& face = mesh.face(f);
        dual.centers_[f] =
            (mesh.vertex(face[0]) + mesh.vertex(face[1]) + mesh.vertex(face[2])) / 3.0;
    }
    return dual;
}

}  // namespace dualmesh
