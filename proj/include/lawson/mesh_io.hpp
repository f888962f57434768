#pragma once

// OFF / OBJ export through stereographic projection, plus the raw 4D
// coordinate sidecar (CSV, header x,y,z,w).

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "mesh.hpp"

namespace lawson {

/// Stereographic projection from a unit pole onto its orthogonal 3-space.
class Stereographic {
public:
    explicit Stereographic(const Vec4& pole = Vec4(0, 0, 0, 1))
    {
        if (std::abs(pole.norm() - 1) > 1e-9) throw precondition_error("stereographic: pole must be a unit vector");
        pole_ = pole;
        // Gram-Schmidt on the standard basis, skipping the axis closest to the pole.
        int skip = 0;
        pole.cwiseAbs().maxCoeff(&skip);
        int c = 0;
        for (int i = 0; i < 4; ++i) {
            if (i == skip) continue;
            Vec4 e = Vec4::Unit(i);
            e -= e.dot(pole_) * pole_;
            for (int j = 0; j < c; ++j) e -= e.dot(basis_[j]) * basis_[j];
            basis_[c++] = e.normalized();
        }
    }

    const Vec4& pole() const { return pole_; }

    Eigen::Vector3d operator()(const Vec4& x) const
    {
        const double d = 1 - x.dot(pole_);
        if (d < 1e-12) throw numerical_error("stereographic: vertex at the projection pole");
        return {x.dot(basis_[0]) / d, x.dot(basis_[1]) / d, x.dot(basis_[2]) / d};
    }

    Vec4 inverse(const Eigen::Vector3d& y) const
    {
        const double s = y.squaredNorm();
        Vec4 x = ((s - 1) / (s + 1)) * pole_;
        for (int i = 0; i < 3; ++i) x += (2 * y[i] / (s + 1)) * basis_[i];
        return x;
    }

private:
    Vec4 pole_;
    std::array<Vec4, 3> basis_;
};

/// Among the 8 axis points and 16 points (+-1,+-1,+-1,+-1)/2, the one farthest
/// from every vertex.
inline Vec4 auto_pole(const TriMesh& mesh)
{
    std::vector<Vec4> cand;
    for (int i = 0; i < 4; ++i) {
        cand.push_back(Vec4::Unit(i));
        cand.push_back(-Vec4::Unit(i));
    }
    for (int s = 0; s < 16; ++s)
        cand.emplace_back(s & 1 ? -0.5 : 0.5, s & 2 ? -0.5 : 0.5, s & 4 ? -0.5 : 0.5, s & 8 ? -0.5 : 0.5);
    Vec4 best = cand.front();
    double best_d = -1;
    for (const auto& c : cand) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& x : mesh.vertices) d = std::min(d, (x - c).norm());
        if (d > best_d + 1e-12) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

namespace detail {

inline std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f) throw io_error("cannot write " + path);
    f.precision(17);
    return f;
}

inline std::ifstream open_in(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw io_error("cannot read " + path);
    return f;
}

// Next line that is neither blank nor a comment.
inline bool next_data_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        const auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') continue;
        return true;
    }
    return false;
}

} // namespace detail

inline void write_off(std::ostream& out, const TriMesh& mesh, const Stereographic& proj = Stereographic())
{
    out << "OFF\n" << mesh.vertices.size() << " " << mesh.faces.size() << " 0\n";
    for (const auto& x : mesh.vertices) {
        const auto y = proj(x);
        out << y[0] << " " << y[1] << " " << y[2] << "\n";
    }
    for (const auto& f : mesh.faces) out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
}

inline void write_obj(std::ostream& out, const TriMesh& mesh, const Stereographic& proj = Stereographic())
{
    for (const auto& x : mesh.vertices) {
        const auto y = proj(x);
        out << "v " << y[0] << " " << y[1] << " " << y[2] << "\n";
    }
    for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

inline void write_coords_csv(std::ostream& out, const TriMesh& mesh)
{
    out << "x,y,z,w\n";
    for (const auto& x : mesh.vertices) out << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << "\n";
}

inline void write_off(const std::string& path, const TriMesh& mesh, const Stereographic& proj = Stereographic())
{
    auto f = detail::open_out(path);
    write_off(f, mesh, proj);
}

inline void write_obj(const std::string& path, const TriMesh& mesh, const Stereographic& proj = Stereographic())
{
    auto f = detail::open_out(path);
    write_obj(f, mesh, proj);
}

inline void write_coords_csv(const std::string& path, const TriMesh& mesh)
{
    auto f = detail::open_out(path);
    write_coords_csv(f, mesh);
}

/// Sidecar path: the mesh path with its extension replaced by .csv.
inline std::string sidecar_path(const std::string& mesh_path)
{
    const auto slash = mesh_path.find_last_of('/');
    const auto dot = mesh_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return mesh_path + ".csv";
    return mesh_path.substr(0, dot) + ".csv";
}

struct Mesh3 {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<Face> faces;
};

inline Mesh3 read_off(std::istream& in)
{
    std::string line;
    if (!detail::next_data_line(in, line) || line.rfind("OFF", 0) != 0) throw io_error("read_off: missing OFF header");
    std::istringstream hs(line.substr(3));
    std::size_t nv = 0, nf = 0, ne = 0;
    if (!(hs >> nv)) {
        if (!detail::next_data_line(in, line)) throw io_error("read_off: missing counts");
        hs = std::istringstream(line);
        hs >> nv;
    }
    if (!(hs >> nf >> ne)) throw io_error("read_off: malformed counts");
    Mesh3 m;
    for (std::size_t i = 0; i < nv; ++i) {
        Eigen::Vector3d v;
        if (!detail::next_data_line(in, line)) throw io_error("read_off: truncated vertex list");
        std::istringstream ls(line);
        if (!(ls >> v[0] >> v[1] >> v[2])) throw io_error("read_off: malformed vertex");
        m.vertices.push_back(v);
    }
    for (std::size_t i = 0; i < nf; ++i) {
        if (!detail::next_data_line(in, line)) throw io_error("read_off: truncated face list");
        std::istringstream ls(line);
        int c = 0;
        Face f;
        if (!(ls >> c >> f[0] >> f[1] >> f[2]) || c != 3) throw io_error("read_off: only triangles are supported");
        for (int a : f)
            if (a < 0 || a >= static_cast<int>(nv)) throw io_error("read_off: face index out of range");
        m.faces.push_back(f);
    }
    return m;
}

inline std::vector<Vec4> read_coords_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw io_error("read_coords_csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,y,z,w") throw io_error("read_coords_csv: expected header x,y,z,w");
    std::vector<Vec4> out;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        Vec4 x;
        if (!(ls >> x[0] >> x[1] >> x[2] >> x[3])) throw io_error("read_coords_csv: malformed row");
        out.push_back(x);
    }
    return out;
}

/// Mesh from an OFF file. Vertices come from the sidecar CSV when it exists,
/// otherwise from inverting the stereographic projection.
inline TriMesh read_mesh(const std::string& off_path, const Stereographic& proj = Stereographic())
{
    auto f = detail::open_in(off_path);
    const Mesh3 m3 = read_off(f);
    TriMesh mesh;
    mesh.faces = m3.faces;
    std::ifstream side(sidecar_path(off_path));
    if (side) {
        mesh.vertices = read_coords_csv(side);
        if (mesh.vertices.size() != m3.vertices.size()) throw io_error("read_mesh: sidecar vertex count mismatch");
        for (auto& x : mesh.vertices) x = project_to_sphere(x);
    } else {
        for (const auto& y : m3.vertices) mesh.vertices.push_back(proj.inverse(y));
    }
    mesh.boundary = compute_boundary_flags(mesh);
    validate(mesh);
    return mesh;
}

/// OFF or OBJ by extension, plus the sidecar CSV.
inline void write_mesh(const std::string& path, const TriMesh& mesh, const Stereographic& proj = Stereographic())
{
    const auto dot = path.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "off") {
        write_off(path, mesh, proj);
    } else if (ext == "obj") {
        write_obj(path, mesh, proj);
    } else {
        throw precondition_error("write_mesh: unsupported extension '" + ext + "' (use .off or .obj)");
    }
    write_coords_csv(sidecar_path(path), mesh);
}

} // namespace lawson
