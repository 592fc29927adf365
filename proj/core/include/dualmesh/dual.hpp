#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "dualmesh/mesh.hpp"

namespace dualmesh {

/// Face-dual graph: one node per primal face, exactly 3 neighbor slots each.
/// Slots follow the face winding — slot i holds the face across edge
/// (face[i], face[(i+1)%3]) — giving every node the same rotational sense
/// about its outward normal. At boundaries the real neighbors keep that
/// cyclic order and kPad fills the trailing slots; padded neighbors read as
/// zero feature vectors in all convolutions and receive no gradient.
class DualGraph {
public:
    static constexpr int kPad = -1;

    int node_count() const { return static_cast<int>(neighbors_.size()); }
    const std::array<int, 3>& neighbors(int node) const { return neighbors_[node]; }
    const Vec3& center(int node) const { return centers_[node]; }
    const std::vector<Vec3>& centers() const { return centers_; }

    int real_neighbor_count(int node) const {
        int n = 0;
        for (int s : neighbors_[node]) n += (s != kPad);
        return n;
    }
    bool three_regular() const;
    /// Dual edges == interior primal edges.
    int edge_count() const;

    /// One line per node: "i: n0 n1 n2" with -1 for padded slots.
    void dump(std::ostream& out) const;

    friend DualGraph build_dual(const Mesh& mesh);

private:
    std::vector<std::array<int, 3>> neighbors_;
    std::vector<Vec3> centers_;
};

/// Throws NonManifoldError (via Mesh) or DegenerateFaceError on zero-area
/// faces, whose normal (and hence neighbor orientation) is undefined.
DualGraph build_dual(const Mesh& mesh);

/// The 3 neighbor slots of one face, same convention as build_dual.
std::array<int, 3> order_neighbors(const Mesh& mesh, int face);

}  // namespace dualmesh
