#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "decwave/error.hpp"
#include "decwave/format.hpp"
#include "decwave/mesh.hpp"
#include "decwave/off_io.hpp"
#include "decwave/sparse_operator.hpp"

namespace decwave {

/// Contents of a legacy ASCII VTK triangle snapshot with one "pressure" point array.
struct VtkSnapshot {
  std::string title = "decwave pressure snapshot";
  std::vector<Point> points;
  std::vector<Triangle> cells;
  std::vector<double> pressure;
};

inline constexpr int kVtkDigits = 9;
inline constexpr int kVtkTriangle = 5;

inline void write_vtk(const VtkSnapshot& snap, std::ostream& out) {
  auto num = [](double v) { return format_significant(v, kVtkDigits); };
  out << "# vtk DataFile Version 3.0\n" << snap.title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << snap.points.size() << " double\n";
  for (const Point& p : snap.points) out << num(p.x()) << ' ' << num(p.y()) << ' ' << num(p.z()) << '\n';
  out << "CELLS " << snap.cells.size() << ' ' << 4 * snap.cells.size() << '\n';
  for (const Triangle& t : snap.cells) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << snap.cells.size() << '\n';
  for (std::size_t i = 0; i < snap.cells.size(); ++i) out << kVtkTriangle << '\n';
  out << "POINT_DATA " << snap.pressure.size() << '\n';
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (double v : snap.pressure) out << num(v) << '\n';
}

inline void write_vtk(const VtkSnapshot& snap, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_vtk(snap, out);
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

/// Writes `field` on `mesh` as a VTK snapshot.
inline void write_snapshot(const SimplicialMesh& mesh, const Field& field, const std::filesystem::path& path,
                           std::string title = "decwave pressure snapshot") {
  if (static_cast<std::size_t>(field.size()) != mesh.vertex_count())
    throw Error("snapshot field length does not match vertex count");
  VtkSnapshot snap;
  snap.title = std::move(title);
  snap.points = mesh.vertices();
  snap.cells = mesh.triangles();
  snap.pressure.assign(field.data(), field.data() + field.size());
  write_vtk(snap, path);
}

/// Structural reader for files produced by write_vtk. Checks section order,
/// counts, cell types and index ranges.
inline VtkSnapshot read_vtk(std::istream& in) {
  VtkSnapshot snap;
  std::size_t line_no = 0;
  std::string line;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) throw ParseError("unexpected end of VTK file", line_no);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };
  auto tokens = [&]() { return detail::split_ws(next_line()); };
  auto expect = [&](const std::string& want) {
    if (next_line() != want) throw ParseError("expected '" + want + "'", line_no);
  };
  auto count_after = [&](std::string_view keyword, std::size_t min_tokens) {
    const auto t = tokens();
    std::size_t n = 0;
    if (t.size() < min_tokens || t[0] != keyword || !detail::parse_number(t[1], n))
      throw ParseError("expected '" + std::string(keyword) + " <count>'", line_no);
    return std::pair{n, t};
  };
  auto real = [&](std::string_view tok) {
    double v = 0.0;
    if (!detail::parse_number(tok, v)) throw ParseError("invalid number '" + std::string(tok) + "'", line_no);
    return v;
  };

  if (next_line().rfind("# vtk DataFile Version", 0) != 0) throw ParseError("missing VTK signature", line_no);
  snap.title = next_line();
  expect("ASCII");
  expect("DATASET UNSTRUCTURED_GRID");

  const auto [np, ptoks] = count_after("POINTS", 3);
  snap.points.resize(np);
  for (auto& p : snap.points) {
    const auto t = tokens();
    if (t.size() != 3) throw ParseError("point needs 3 coordinates", line_no);
    p = Point(real(t[0]), real(t[1]), real(t[2]));
  }

  const auto [nc, ctoks] = count_after("CELLS", 3);
  std::size_t total = 0;
  if (!detail::parse_number(ctoks[2], total) || total != 4 * nc) throw ParseError("CELLS size mismatch", line_no);
  snap.cells.resize(nc);
  for (auto& c : snap.cells) {
    const auto t = tokens();
    if (t.size() != 4 || t[0] != "3") throw ParseError("only triangle cells are supported", line_no);
    for (int k = 0; k < 3; ++k)
      if (!detail::parse_number(t[k + 1], c[k]) || c[k] >= np) throw ParseError("bad cell index", line_no);
  }

  const auto [nt, ttoks] = count_after("CELL_TYPES", 2);
  if (nt != nc) throw ParseError("CELL_TYPES count differs from CELLS count", line_no);
  for (std::size_t i = 0; i < nt; ++i)
    if (next_line() != std::to_string(kVtkTriangle)) throw ParseError("expected triangle cell type 5", line_no);

  const auto [nd, dtoks] = count_after("POINT_DATA", 2);
  if (nd != np) throw ParseError("POINT_DATA count differs from POINTS count", line_no);
  expect("SCALARS pressure double 1");
  expect("LOOKUP_TABLE default");
  snap.pressure.resize(nd);
  for (auto& v : snap.pressure) {
    const auto t = tokens();
    if (t.size() != 1) throw ParseError("expected one scalar per line", line_no);
    v = real(t[0]);
  }
  return snap;
}

inline VtkSnapshot read_vtk(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_vtk(in);
}

}  // namespace decwave
