#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "triopt/mesh.hpp"

namespace triopt {

/// Parse failure with the 1-based line number of the offending input line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// Reads the `meshtri 1` text format:
///
///     meshtri 1
///     dim <d> vertices <nv> cells <nc>
///     <nv lines: d coordinates>
///     <nc lines: d+1 vertex indices, 0-based>
///     <nv lines: 0 = free, 1 = fixed>
///
/// Lines are UTF-8; everything after '#' is ignored; blank lines are skipped.
/// The domain is reconstructed from the mesh boundary (coordinate range in
/// 1D, traced outer boundary loop in 2D). Throws ParseError on malformed
/// input, out-of-range indices or wrong counts.
Triangulation read_mesh(std::string_view text);

/// read_mesh over a file's contents; file-open failures also raise ParseError.
Triangulation read_mesh_file(const std::string& path);

/// Writes the format above with full-precision coordinates, so that
/// read_mesh(write_mesh(m)) reproduces vertex coordinates bit-exactly.
std::string write_mesh(const Triangulation& mesh);

void write_mesh_file(const Triangulation& mesh, const std::string& path);

}  // namespace triopt
