#include "dualmesh/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dualmesh/errors.hpp"
#include "dualmesh/parallel.hpp"

namespace dualmesh {

FeatureSelection parse_feature_selection(const std::string& csv) {
    FeatureSelection sel;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::string t;
        for (char c : tok)
            if (!std::isspace(static_cast<unsigned char>(c)))
                t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (t.empty()) continue;
        if (t == "xyz") sel.push_back(FeatureKind::Xyz);
        else if (t == "normal") sel.push_back(FeatureKind::Normal);
        else if (t == "area") sel.push_back(FeatureKind::Area);
        else if (t == "distcm" || t == "dist_cm") sel.push_back(FeatureKind::DistCm);
        else if (t == "dihedral") sel.push_back(FeatureKind::Dihedral);
        else throw ConfigError("unknown feature '" + t + "'");
    }
    if (sel.empty()) throw EmptySelectionError("empty feature selection");
    for (std::size_t i = 0; i < sel.size(); ++i)
        for (std::size_t j = i + 1; j < sel.size(); ++j)
            if (sel[i] == sel[j]) throw ConfigError("duplicate feature '" + to_string(sel[i]) + "'");
    return sel;
}

std::string to_string(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Xyz: return "xyz";
        case FeatureKind::Normal: return "normal";
        case FeatureKind::Area: return "area";
        case FeatureKind::DistCm: return "distcm";
        case FeatureKind::Dihedral: return "dihedral";
    }
    return "?";
}

std::string to_string(const FeatureSelection& sel) {
    std::string out;
    for (std::size_t i = 0; i < sel.size(); ++i) {
        if (i) out += ",";
        out += to_string(sel[i]);
    }
    return out;
}

int node_feature_width(const FeatureSelection& sel) {
    int w = 0;
    for (FeatureKind k : sel) {
        switch (k) {
            case FeatureKind::Xyz:
            case FeatureKind::Normal: w += 3; break;
            case FeatureKind::Area:
            case FeatureKind::DistCm: w += 1; break;
            case FeatureKind::Dihedral: break;
        }
    }
    return w;
}

bool has_dihedral(const FeatureSelection& sel) {
    return std::find(sel.begin(), sel.end(), FeatureKind::Dihedral) != sel.end();
}

Vec3 face_centroid(const Mesh& mesh, int face) {
    const Face& f = mesh.face(face);
    return (mesh.vertex(f[0]) + mesh.vertex(f[1]) + mesh.vertex(f[2])) / 3.0;
}

Vec3 face_normal(const Mesh& mesh, int face) {
    const Face& f = mesh.face(face);
    const Vec3 &a = mesh.vertex(f[0]), &b = mesh.vertex(f[1]), &c = mesh.vertex(f[2]);
    Vec3 n = (b - a).cross(c - a);
    double len = n.norm();
    double longest = std::sqrt(std::max({(b - a).norm2(), (c - b).norm2(), (a - c).norm2()}));
    if (len <= 1e-12 * longest * longest)
        throw DegenerateFaceError("face " + std::to_string(face) + " has zero area");
    return n / len;
}

double face_area(const Mesh& mesh, int face) {
    const Face& f = mesh.face(face);
    const Vec3 &a = mesh.vertex(f[0]), &b = mesh.vertex(f[1]), &c = mesh.vertex(f[2]);
    return 0.5 * (b - a).cross(c - a).norm();
}

Vec3 mesh_center_of_mass(const Mesh& mesh) {
    if (mesh.face_count() == 0) throw ValidationError("center of mass of an empty mesh");
    Vec3 acc{0, 0, 0};
    double total = 0.0;
    for (int f = 0; f < mesh.face_count(); ++f) {
        double a = face_area(mesh, f);
        acc += face_centroid(mesh, f) * a;
        total += a;
    }
    if (total <= 0.0) throw DegenerateFaceError("mesh has zero total area");
    return acc / total;
}

double dist_to_center_of_mass(const Mesh& mesh, int face) {
    return distance(face_centroid(mesh, face), mesh_center_of_mass(mesh));
}

std::array<double, 3> dihedral_angles(const Mesh& mesh, const DualGraph& dual, int face) {
    Vec3 n0 = face_normal(mesh, face);
    std::array<double, 3> out{0.0, 0.0, 0.0};
    const auto& slots = dual.neighbors(face);
    for (int s = 0; s < 3; ++s) {
        if (slots[s] == DualGraph::kPad) continue;
        Vec3 n1 = face_normal(mesh, slots[s]);
        double d = std::clamp(n0.dot(n1), -1.0, 1.0);
        out[s] = std::acos(d);
    }
    return out;
}

FeatureSet assemble_features(const Mesh& mesh, const DualGraph& dual,
                             const FeatureSelection& sel, int jobs) {
    if (sel.empty()) throw EmptySelectionError("empty feature selection");
    const int nf = mesh.face_count();
    FeatureSet out;
    out.node = Tensor(nf, node_feature_width(sel));
    if (has_dihedral(sel)) out.slot_extra = Tensor(nf, 3);

    // DistCM shares one center-of-mass computation across faces.
    bool want_distcm = std::find(sel.begin(), sel.end(), FeatureKind::DistCm) != sel.end();
    Vec3 center{0, 0, 0};
    if (want_distcm) center = mesh_center_of_mass(mesh);

    parallel_for(nf, jobs, [&](int f) {
        int col = 0;
        double* row = out.node.row(f);
        for (FeatureKind k : sel) {
            switch (k) {
                case FeatureKind::Xyz: {
                    Vec3 c = face_centroid(mesh, f);
                    row[col++] = c.x; row[col++] = c.y; row[col++] = c.z;
                    break;
                }
                case FeatureKind::Normal: {
                    Vec3 n = face_normal(mesh, f);
                    row[col++] = n.x; row[col++] = n.y; row[col++] = n.z;
                    break;
                }
                case FeatureKind::Area:
                    row[col++] = face_area(mesh, f);
                    break;
                case FeatureKind::DistCm:
                    row[col++] = distance(face_centroid(mesh, f), center);
                    break;
                case FeatureKind::Dihedral: {
                    auto d = dihedral_angles(mesh, dual, f);
                    for (int s = 0; s < 3; ++s) out.slot_extra.at(f, s) = d[s];
                    break;
                }
            }
        }
    });
    return out;
}

std::vector<std::string> feature_column_names(const FeatureSelection& sel) {
    std::vector<std::string> names;
    for (FeatureKind k : sel) {
        switch (k) {
            case FeatureKind::Xyz:
                names.insert(names.end(), {"xyz_x", "xyz_y", "xyz_z"});
                break;
            case FeatureKind::Normal:
                names.insert(names.end(), {"normal_x", "normal_y", "normal_z"});
                break;
            case FeatureKind::Area: names.push_back("area"); break;
            case FeatureKind::DistCm: names.push_back("dist_cm"); break;
            case FeatureKind::Dihedral: break;
        }
    }
    if (has_dihedral(sel))
        names.insert(names.end(), {"dihedral_0", "dihedral_1", "dihedral_2"});
    return names;
}

Tensor assemble_primal_features(const Mesh& mesh, const FeatureSelection& sel) {
    if (sel.empty()) throw EmptySelectionError("empty feature selection");
    for (FeatureKind k : sel)
        if (k != FeatureKind::Xyz && k != FeatureKind::Normal)
            throw ConfigError("primal features support xyz/normal only, got '" + to_string(k) + "'");

    const int nv = mesh.vertex_count();
    Tensor out(nv, node_feature_width(sel));
    std::vector<Vec3> vnormals;
    if (std::find(sel.begin(), sel.end(), FeatureKind::Normal) != sel.end()) {
        vnormals.assign(nv, Vec3{0, 0, 0});
        for (int v = 0; v < nv; ++v) {
            for (int f : mesh.vertex_faces()[v]) vnormals[v] += face_normal(mesh, f);
            double len = vnormals[v].norm();
            if (len > 0) vnormals[v] = vnormals[v] / len;
        }
    }
    for (int v = 0; v < nv; ++v) {
        int col = 0;
        double* row = out.row(v);
        for (FeatureKind k : sel) {
            if (k == FeatureKind::Xyz) {
                const Vec3& p = mesh.vertex(v);
                row[col++] = p.x; row[col++] = p.y; row[col++] = p.z;
            } else {
                const Vec3& n = vnormals[v];
                row[col++] = n.x; row[col++] = n.y; row[col++] = n.z;
            }
        }
    }
    return out;
}

}  // namespace dualmesh
