#pragma once

#include <array>
#include <string>
#include <vector>

#include "dualmesh/dual.hpp"
#include "dualmesh/mesh.hpp"
#include "dualmesh/tensor.hpp"

namespace dualmesh {

enum class FeatureKind { Xyz, Normal, Area, DistCm, Dihedral };

/// Ordered channel selection; concatenation follows this order.
using FeatureSelection = std::vector<FeatureKind>;

FeatureSelection parse_feature_selection(const std::string& csv);  // "xyz,normal,..."
std::string to_string(const FeatureSelection& sel);
std::string to_string(FeatureKind kind);

/// Per-node channel count (dihedral is per-slot data and contributes none).
int node_feature_width(const FeatureSelection& sel);
bool has_dihedral(const FeatureSelection& sel);

Vec3 face_centroid(const Mesh& mesh, int face);
Vec3 face_normal(const Mesh& mesh, int face);  // DegenerateFaceError on zero area
double face_area(const Mesh& mesh, int face);
/// Area-weighted mean of face centroids (surface center of mass).
Vec3 mesh_center_of_mass(const Mesh& mesh);
double dist_to_center_of_mass(const Mesh& mesh, int face);
/// Unsigned angle in [0, pi] between outward normals, per ordered neighbor
/// slot; padded slots give 0.
std::array<double, 3> dihedral_angles(const Mesh& mesh, const DualGraph& dual, int face);

/// Assembled input channels. `node` is N_F x width(sel); `slot_extra` is
/// N_F x 3 dihedral values (empty unless Dihedral is selected) — delivered
/// per neighbor slot since the value belongs to the edge, not the node.
struct FeatureSet {
    Tensor node;
    Tensor slot_extra;
    bool has_slot_extra() const { return !slot_extra.empty(); }
};

FeatureSet assemble_features(const Mesh& mesh, const DualGraph& dual,
                             const FeatureSelection& sel, int jobs = 1);

/// Column headers matching assemble_features output (node channels then
/// dihedral slots).
std::vector<std::string> feature_column_names(const FeatureSelection& sel);

/// Per-vertex features for the primal baseline: XYZ and/or Normal only
/// (vertex normal = normalized mean of incident face normals).
Tensor assemble_primal_features(const Mesh& mesh, const FeatureSelection& sel);

}  // namespace dualmesh
