#include "dualmesh/mesh_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dualmesh/errors.hpp"

namespace dualmesh {

namespace {

std::string lower_ext(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

// Next content line: comments (#...) stripped, blank lines skipped.
bool next_line(std::istream& in, std::string& line, int& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
        if (!blank) return true;
    }
    return false;
}

[[noreturn]] void parse_fail(const std::string& path, int line_no, const std::string& what) {
    std::ostringstream msg;
    msg << path << ":" << line_no << ": " << what;
    throw ParseError(msg.str());
}

Mesh load_off(const std::string& path, std::vector<Rgb>* colors_out) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    int line_no = 0;

    if (!next_line(in, line, line_no)) parse_fail(path, line_no, "empty file");
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    bool colored = (magic == "COFF");
    if (magic != "OFF" && magic != "COFF")
        parse_fail(path, line_no, "expected OFF or COFF header, got '" + magic + "'");

    long nv = -1, nf = -1, ne = -1;
    // counts may share the header line or follow it
    if (!(header >> nv >> nf >> ne)) {
        if (!next_line(in, line, line_no)) parse_fail(path, line_no, "missing counts line");
        std::istringstream counts(line);
        if (!(counts >> nv >> nf >> ne)) parse_fail(path, line_no, "malformed counts line");
    }
    if (nv < 0 || nf < 0) parse_fail(path, line_no, "negative counts");

    std::vector<Vec3> vertices(static_cast<std::size_t>(nv));
    std::vector<Rgb> colors;
    for (long i = 0; i < nv; ++i) {
        if (!next_line(in, line, line_no)) parse_fail(path, line_no, "unexpected EOF in vertex list");
        std::istringstream ls(line);
        Vec3& v = vertices[static_cast<std::size_t>(i)];
        if (!(ls >> v.x >> v.y >> v.z)) parse_fail(path, line_no, "malformed vertex line");
        if (colored) {
            Rgb c;
            int a;
            if (!(ls >> c.r >> c.g >> c.b >> a)) parse_fail(path, line_no, "malformed COFF color");
            colors.push_back(c);
        }
    }

    std::vector<Face> faces(static_cast<std::size_t>(nf));
    for (long i = 0; i < nf; ++i) {
        if (!next_line(in, line, line_no)) parse_fail(path, line_no, "unexpected EOF in face list");
        std::istringstream ls(line);
        int count;
        if (!(ls >> count)) parse_fail(path, line_no, "malformed face line");
        if (count != 3) parse_fail(path, line_no, "non-triangle face (" + std::to_string(count) + " vertices)");
        Face& f = faces[static_cast<std::size_t>(i)];
        if (!(ls >> f[0] >> f[1] >> f[2])) parse_fail(path, line_no, "malformed face indices");
    }

    if (colors_out) *colors_out = std::move(colors);
    try {
        return Mesh(std::move(vertices), std::move(faces));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

Mesh load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    int line_no = 0;
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    while (next_line(in, line, line_no)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) parse_fail(path, line_no, "malformed vertex");
            vertices.push_back(v);
        } else if (tag == "f") {
            std::string tok;
            std::vector<int> idx;
            while (ls >> tok) {
                // accept i, i/..., i//... — only the vertex index is used
                std::size_t pos = 0;
                long v = 0;
                try {
                    v = std::stol(tok, &pos);
                } catch (...) {
                    parse_fail(path, line_no, "malformed face index '" + tok + "'");
                }
                if (pos != tok.size() && tok[pos] != '/')
                    parse_fail(path, line_no, "malformed face index '" + tok + "'");
                if (v < 1) parse_fail(path, line_no, "face indices are 1-based positive");
                idx.push_back(static_cast<int>(v - 1));
            }
            if (idx.size() != 3) parse_fail(path, line_no, "non-triangle face");
            faces.push_back({idx[0], idx[1], idx[2]});
        }
        // other tags (vn, vt, o, g, s, usemtl, ...) are ignored
    }
    try {
        return Mesh(std::move(vertices), std::move(faces));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

}  // namespace

MeshFormat format_from_path(const std::string& path) {
    std::string ext = lower_ext(path);
    if (ext == "obj") return MeshFormat::Obj;
    if (ext == "off" || ext == "coff") return MeshFormat::Off;
    throw IoError("cannot infer mesh format from '" + path + "' (use .off/.coff/.obj)");
}

Mesh load_mesh(const std::string& path, MeshFormat format, std::vector<Rgb>* colors_out) {
    if (format == MeshFormat::Obj) {
        if (colors_out) colors_out->clear();
        return load_obj(path);
    }
    return load_off(path, colors_out);
}

Mesh load_mesh(const std::string& path) { return load_mesh(path, format_from_path(path)); }

void save_mesh(const Mesh& mesh, const std::string& path, MeshFormat format,
               const std::vector<Rgb>* vertex_colors) {
    if (vertex_colors && static_cast<int>(vertex_colors->size()) != mesh.vertex_count())
        throw IoError("vertex color count differs from vertex count");

    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << std::setprecision(17);

    if (format == MeshFormat::Obj) {
        if (vertex_colors) throw IoError("per-vertex colors are not supported for OBJ output");
        for (const Vec3& v : mesh.vertices())
            out << "v " << v.x << " " << v.y << " " << v.z << "\n";
        for (const Face& f : mesh.faces())
            out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    } else {
        out << (vertex_colors ? "COFF" : "OFF") << "\n";
        out << mesh.vertex_count() << " " << mesh.face_count() << " 0\n";
        for (int i = 0; i < mesh.vertex_count(); ++i) {
            const Vec3& v = mesh.vertex(i);
            out << v.x << " " << v.y << " " << v.z;
            if (vertex_colors) {
                const Rgb& c = (*vertex_colors)[i];
                out << " " << c.r << " " << c.g << " " << c.b << " 255";
            }
            out << "\n";
        }
        for (const Face& f : mesh.faces())
            out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
    }
    if (!out) throw IoError("write failed for " + path);
}

std::vector<int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<int> labels;
    std::string line;
    int line_no = 0;
    while (next_line(in, line, line_no)) {
        std::istringstream ls(line);
        int v;
        if (!(ls >> v)) parse_fail(path, line_no, "malformed label line");
        if (v < -1) parse_fail(path, line_no, "labels must be >= -1");
        labels.push_back(v);
    }
    return labels;
}

void save_labels(const std::vector<int>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    for (int v : labels) out << v << "\n";
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace dualmesh
