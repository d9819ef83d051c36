#include "nilbal/export.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nilbal/error.hpp"

namespace nilbal {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

constexpr const char* header_note =
    "vertices are the matrix entries (x, y, z) = (a12, a23, a13) of Nil3";

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

MeshFile build_mesh(const SurfaceSample& surf, const VertexScalar& scalar,
                    const std::string& scalar_name) {
    const int nu = static_cast<int>(surf.u_nodes.size());
    const int nv = static_cast<int>(surf.v_nodes.size());
    if (nu < 2 || nv < 2) throw DomainError("build_mesh: need at least 2x2 parameter nodes");
    if (surf.periodic_v && nv < 3) throw DomainError("build_mesh: periodic sample needs 3 columns");

    MeshFile mesh;
    mesh.scalar_name = scalar_name;
    mesh.vertices.reserve(static_cast<std::size_t>(nu * nv));
    if (scalar) mesh.scalar.emplace();
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double u = surf.u_nodes[static_cast<std::size_t>(i)];
            const double v = surf.v_nodes[static_cast<std::size_t>(j)];
            const GroupElement g = to_matrix(surf.param(u, v));
            mesh.vertices.push_back({g.x, g.y, g.z});
            if (scalar) mesh.scalar->push_back(scalar(u, v));
        }
    }
    const int cells_v = surf.periodic_v ? nv : nv - 1;
    auto id = [nv](int i, int j) { return i * nv + (j % nv); };
    for (int i = 0; i + 1 < nu; ++i) {
        for (int j = 0; j < cells_v; ++j) {
            const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }
    return mesh;
}

bool mesh_is_valid(const MeshFile& mesh, std::string* why) {
    auto fail = [why](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int n = static_cast<int>(mesh.vertices.size());
    if (mesh.scalar && mesh.scalar->size() != mesh.vertices.size())
        return fail("scalar channel size differs from vertex count");
    std::map<std::pair<int, int>, int> directed;
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& t = mesh.faces[f];
        for (int k : t)
            if (k < 0 || k >= n) return fail("face " + std::to_string(f) + " index out of range");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            return fail("face " + std::to_string(f) + " is degenerate");
        for (int e = 0; e < 3; ++e) {
            const auto edge = std::make_pair(t[e], t[(e + 1) % 3]);
            if (++directed[edge] > 1)
                return fail("edge " + std::to_string(edge.first) + "-" +
                            std::to_string(edge.second) + " traversed twice in one direction");
        }
    }
    return true;
}

void write_obj(const MeshFile& mesh, std::ostream& out) {
    out << "# nilbal mesh\n# " << header_note << '\n';
    if (mesh.scalar) out << "# texture u coordinate carries " << mesh.scalar_name << '\n';
    for (const auto& v : mesh.vertices) out << "v " << num(v[0]) << ' ' << num(v[1]) << ' ' << num(v[2]) << '\n';
    if (mesh.scalar)
        for (double s : *mesh.scalar) out << "vt " << num(s) << " 0\n";
    for (const auto& f : mesh.faces) {
        out << 'f';
        for (int k : f) {
            out << ' ' << k + 1;
            if (mesh.scalar) out << '/' << k + 1;
        }
        out << '\n';
    }
}

void write_ply(const MeshFile& mesh, std::ostream& out) {
    out << "ply\nformat ascii 1.0\ncomment nilbal mesh\ncomment " << header_note << '\n'
        << "element vertex " << mesh.vertices.size() << '\n'
        << "property double x\nproperty double y\nproperty double z\n";
    if (mesh.scalar) out << "property double " << mesh.scalar_name << '\n';
    out << "element face " << mesh.faces.size() << '\n'
        << "property list uchar int vertex_indices\nend_header\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const auto& v = mesh.vertices[i];
        out << num(v[0]) << ' ' << num(v[1]) << ' ' << num(v[2]);
        if (mesh.scalar) out << ' ' << num((*mesh.scalar)[i]);
        out << '\n';
    }
    for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void export_mesh(const MeshFile& mesh, const std::filesystem::path& path, MeshFormat format) {
    std::string why;
    if (!mesh_is_valid(mesh, &why)) throw DomainError("export_mesh: invalid mesh: " + why);
    std::ofstream out = open_for_write(path);
    if (format == MeshFormat::obj) write_obj(mesh, out);
    else write_ply(mesh, out);
    if (!out) throw std::runtime_error("error while writing " + path.string());
}

void export_mesh(const SurfaceSample& surf, const std::filesystem::path& path, MeshFormat format) {
    export_mesh(build_mesh(surf), path, format);
}

void write_csv(const CsvTable& table, std::ostream& out) {
    for (std::size_t k = 0; k < table.header.size(); ++k)
        out << (k ? "," : "") << table.header[k];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw DomainError("write_csv: row width differs from header");
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << num(row[k]);
        out << '\n';
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw DomainError("read_csv: empty input");
    {
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) table.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            // from_chars, unlike stod, accepts subnormals and never throws.
            double v = 0.0;
            const char* end = cell.data() + cell.size();
            const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
            if (ec != std::errc{} || ptr != end)
                throw DomainError("read_csv: bad number '" + cell + "'");
            row.push_back(v);
        }
        if (row.size() != table.header.size())
            throw DomainError("read_csv: row width differs from header");
        table.rows.push_back(std::move(row));
    }
    return table;
}

void export_csv(const CsvTable& table, const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    write_csv(table, out);
    if (!out) throw std::runtime_error("error while writing " + path.string());
}

CsvTable profile_table(const RadialProfile& p, const std::string& r_name,
                       const std::string& value_name, const std::string& deriv_name) {
    CsvTable t{{r_name, value_name, deriv_name}, {}};
    for (std::size_t i = 0; i < p.size(); ++i) t.rows.push_back({p.r[i], p.value[i], p.deriv[i]});
    return t;
}

CsvTable radial_slice_table(const AnnulusGrid& grid, const ScalarField& u, int j) {
    if (j < 0 || j >= grid.cols()) throw DomainError("radial_slice_table: column out of range");
    CsvTable t{{"r", "u"}, {}};
    for (int i = 0; i < grid.rows(); ++i) t.rows.push_back({grid.r(i), u(i, j)});
    return t;
}

}  // namespace nilbal
