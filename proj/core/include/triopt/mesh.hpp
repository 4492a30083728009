#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "triopt/geometry.hpp"

namespace triopt {

/// Flat 1D domain [a, b], a < b.
struct Interval {
    double a = 0.0;
    double b = 1.0;
};

/// Simple planar polygon, boundary listed counterclockwise.
struct Polygon {
    std::vector<Point> pts;
};

using DomainSpec = std::variant<Interval, Polygon>;

/// Length of an interval or area of a polygon (shoelace).
double measure(const DomainSpec& domain);

/// One affine simplicial cell: dim+1 ordered vertex indices.
/// v[2] is unused (-1) for 1D cells.
struct Cell {
    std::array<int, 3> v{-1, -1, -1};
};

/// Fixed-topology simplicial triangulation of a flat 1D or 2D domain.
/// Cells reference vertices by index; free_mask marks vertices whose
/// position may be moved by the optimizer (boundary vertices are fixed).
///
/// Immutable by convention once built: every operation takes it const and
/// mutation happens by constructing a new Triangulation.
struct Triangulation {
    int dim = 1;
    std::vector<Point> vertices;
    std::vector<Cell> cells;
    std::vector<std::uint8_t> free_mask;  // 1 = position optimizable
    DomainSpec domain = Interval{0.0, 1.0};

    int verts_per_cell() const { return dim + 1; }
    std::array<Point, 3> cell_points(int cell) const;
};

/// Thrown when an operation meets a mesh with a nonpositive cell volume,
/// e.g. a probe point during finite differencing that inverts a cell.
struct InfeasibleMeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unsigned volume of one cell plus orientation sign.
SignedVolume cell_volume(const Triangulation& mesh, int cell);

/// Smallest signed cell volume over the mesh (negative if a cell is inverted).
double min_signed_cell_volume(const Triangulation& mesh);

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// One violated triangulation condition. `condition` is 1..4 for the four
/// covering conditions (embedding, covering, border-only intersection,
/// consistent face identification) and 0 for structural defects such as
/// out-of-range indices, nonfinite coordinates or a free boundary vertex.
struct Violation {
    int condition = 0;
    std::string what;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has_condition(int c) const;
};

/// Checks the triangulation conditions in order:
///   (1) every cell positively oriented with strictly positive volume,
///   (2) cell volumes sum to the domain measure within 1e-9 relative,
///   (3) closed cells intersect only in shared sub-faces (interior overlap
///       and collinear partial edge overlap are both flagged),
///   (4) every facet is shared by at most two cells, with opposite induced
///       orientations from the two sides,
/// plus the structural invariants (index bounds, distinct cell vertices,
/// finite coordinates, fixed boundary vertices). Violations are report
/// entries, never exceptions.
ValidationReport validate(const Triangulation& mesh);

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// N-cell uniform mesh of [a, b]; endpoints fixed, interior vertices free.
Triangulation uniform_interval_mesh(double a, double b, int n_cells);

/// Structured triangulation of the unit square: (m+1)^2 grid vertices,
/// 2 m^2 triangles (each grid square split along the low-left to high-right
/// diagonal), boundary vertices fixed.
Triangulation structured_square_mesh(int m);

/// Reconstructs a DomainSpec from vertex/cell data alone: the coordinate
/// range in 1D, the traced outer boundary loop (collinear runs merged,
/// counterclockwise, starting at the lexicographically smallest point) in 2D.
/// Falls back to the bounding box when the boundary does not form a loop.
DomainSpec infer_domain(int dim, const std::vector<Point>& vertices,
                        const std::vector<Cell>& cells);

// ---------------------------------------------------------------------------
// Edges
// ---------------------------------------------------------------------------

/// Undirected edge oriented from the lower to the higher vertex index.
/// incident_cells holds (cell index, sign): +1 when the cell's induced
/// orientation of the edge runs lo -> hi, -1 otherwise.
struct Edge {
    int lo = -1;
    int hi = -1;
    std::vector<std::pair<int, int>> incident_cells;
};

/// Edge list plus the inverse map cell -> (edge index, sign) per local edge.
/// 1D cells have one local edge (the cell itself), triangles three.
struct EdgeTable {
    std::vector<Edge> edges;
    std::vector<std::array<std::pair<int, int>, 3>> cell_edges;
    int edges_per_cell = 1;
};

EdgeTable build_edge_table(const Triangulation& mesh);

/// The edge array alone, ordered lexicographically by (lo, hi).
std::vector<Edge> edges(const Triangulation& mesh);

}  // namespace triopt
