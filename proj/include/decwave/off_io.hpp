#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "decwave/error.hpp"
#include "decwave/format.hpp"
#include "decwave/mesh.hpp"

namespace decwave {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

// Reads the next line that is neither blank nor a comment; strips trailing comments.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      if (const auto hash = buffer_.find('#'); hash != std::string::npos) buffer_.erase(hash);
      tokens = split_ws(buffer_);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

}  // namespace detail

/// Parses an ASCII OFF triangle mesh. Errors carry the offending line number.
inline SimplicialMesh load_mesh(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string_view> tok;

  if (!reader.next(tok) || tok.size() != 1 || tok[0] != "OFF")
    throw ParseError("expected 'OFF' header", reader.line());

  if (!reader.next(tok)) throw ParseError("missing 'V F E' counts line", reader.line());
  std::size_t nv = 0;
  std::size_t nf = 0;
  std::size_t ne = 0;
  if (tok.size() < 2 || tok.size() > 3 || !detail::parse_number(tok[0], nv) || !detail::parse_number(tok[1], nf) ||
      (tok.size() == 3 && !detail::parse_number(tok[2], ne)))
    throw ParseError("malformed counts line, expected 'V F E'", reader.line());

  std::vector<Point> vertices(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!reader.next(tok)) throw ParseError("unexpected end of input while reading vertices", reader.line());
    if (tok.size() != 3) throw ParseError("vertex line needs exactly 3 coordinates", reader.line());
    for (int k = 0; k < 3; ++k)
      if (!detail::parse_number(tok[k], vertices[v][k]))
        throw ParseError("invalid coordinate '" + std::string(tok[k]) + "'", reader.line());
  }

  std::vector<Triangle> triangles(nf);
  std::vector<std::size_t> face_lines(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    if (!reader.next(tok)) throw ParseError("unexpected end of input while reading faces", reader.line());
    std::size_t arity = 0;
    if (!detail::parse_number(tok[0], arity)) throw ParseError("invalid face vertex count", reader.line());
    if (arity != 3)
      throw ParseError("face has " + std::to_string(arity) + " vertices; only triangles are supported", reader.line());
    if (tok.size() < 4) throw ParseError("face line lists fewer than 3 vertex indices", reader.line());
    for (int k = 0; k < 3; ++k) {
      long long idx = 0;
      if (!detail::parse_number(tok[k + 1], idx)) throw ParseError("invalid vertex index", reader.line());
      if (idx < 0 || static_cast<std::size_t>(idx) >= nv)
        throw MeshError("vertex index " + std::to_string(idx) + " out of range", reader.line());
      triangles[f][k] = static_cast<std::size_t>(idx);
    }
    face_lines[f] = reader.line();
  }
  return SimplicialMesh(std::move(vertices), std::move(triangles), face_lines);
}

inline SimplicialMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file " + path.string());
  return load_mesh(in);
}

/// Writes the mesh as ASCII OFF with round-trip exact coordinates.
inline void write_off(const SimplicialMesh& mesh, std::ostream& out) {
  out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.triangle_count() << ' ' << mesh.edge_count() << '\n';
  for (const Point& p : mesh.vertices())
    out << format_shortest(p.x()) << ' ' << format_shortest(p.y()) << ' ' << format_shortest(p.z()) << '\n';
  for (const Triangle& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace decwave
