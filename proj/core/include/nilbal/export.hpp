#pragma once
// ASCII exports: triangulated surface meshes (OBJ, PLY) in matrix
// coordinates and CSV tables with 17 significant digits.
#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nilbal/grid.hpp"
#include "nilbal/radial.hpp"
#include "nilbal/verify.hpp"

namespace nilbal {

struct MeshFile {
    std::vector<std::array<double, 3>> vertices;  // matrix entries (x, y, z)
    std::vector<std::array<int, 3>> faces;        // zero-based, counter-clockwise in (u, v)
    std::optional<std::vector<double>> scalar;    // one value per vertex
    std::string scalar_name = "scalar";
};

using VertexScalar = std::function<double(double u, double v)>;

// Two triangles per parameter cell; periodic samples close the seam by
// reusing the first column of vertices.
MeshFile build_mesh(const SurfaceSample& surf, const VertexScalar& scalar = {},
                    const std::string& scalar_name = "scalar");

// Indices in range, no degenerate faces, every edge used at most twice and
// in opposite directions when shared.
bool mesh_is_valid(const MeshFile& mesh, std::string* why = nullptr);

enum class MeshFormat { obj, ply };

void write_obj(const MeshFile& mesh, std::ostream& out);
void write_ply(const MeshFile& mesh, std::ostream& out);
// Throws std::runtime_error if the file cannot be written.
void export_mesh(const MeshFile& mesh, const std::filesystem::path& path, MeshFormat format);
void export_mesh(const SurfaceSample& surf, const std::filesystem::path& path, MeshFormat format);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// %.17g, comma separated, header first.
void write_csv(const CsvTable& table, std::ostream& out);
CsvTable read_csv(std::istream& in);
void export_csv(const CsvTable& table, const std::filesystem::path& path);

CsvTable profile_table(const RadialProfile& p, const std::string& r_name,
                       const std::string& value_name, const std::string& deriv_name);
// Columns r, u along the angular column j.
CsvTable radial_slice_table(const AnnulusGrid& grid, const ScalarField& u, int j);

}  // namespace nilbal
