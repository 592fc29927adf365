#pragma once

#include <array>
#include <string>
#include <vector>

#include "dualmesh/mesh.hpp"

namespace dualmesh {

enum class MeshFormat { Off, Obj };

/// 0-255 per channel.
struct Rgb {
    int r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

/// Guess the format from the file extension (.off/.coff -> Off, .obj -> Obj).
MeshFormat format_from_path(const std::string& path);

/// Parse an ASCII OFF/COFF or OBJ file into a validated Mesh. COFF vertex
/// colors are returned through `colors_out` when requested, otherwise dropped.
Mesh load_mesh(const std::string& path, MeshFormat format,
               std::vector<Rgb>* colors_out = nullptr);
Mesh load_mesh(const std::string& path);  // format from extension

/// Write a mesh; with colors (OFF only) emits the COFF variant. Positions are
/// printed with enough digits to round-trip within 1e-9.
void save_mesh(const Mesh& mesh, const std::string& path, MeshFormat format,
               const std::vector<Rgb>* vertex_colors = nullptr);

std::vector<int> load_labels(const std::string& path);  // one int per line, -1 = unlabeled
void save_labels(const std::vector<int>& labels, const std::string& path);

}  // namespace dualmesh
