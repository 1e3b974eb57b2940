#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gridknot {

struct PlanarKnotDiagram;

// Grid diagram stored as its Cromwell matrix, one (row_lo, row_hi) pair per
// column.  Row 0 is the top row, column 0 the leftmost column.  Vertical
// segments always cross over horizontal ones.
struct GridDiagram {
    int n = 0;
    std::vector<std::pair<int, int>> cols;  // row_lo < row_hi, indices in [0, n)

    bool operator==(const GridDiagram& o) const { return n == o.n && cols == o.cols; }
    bool row_has_one(int r, int c) const {
        return cols[c].first == r || cols[c].second == r;
    }
    // The two columns whose pairs contain row r, ascending.
    std::pair<int, int> row_support(int r) const;

    std::string to_text() const;                       // "n\nlo,hi lo,hi ..."
    static GridDiagram from_text(const std::string&);  // throws on malformed input
};

struct Verdict {
    bool ok = true;
    std::string reason;
};

// n^2-bit row-major concatenation of the Cromwell matrix, most significant
// bit first.  Total order = value of the binary number.
struct Norm {
    int n = 0;
    std::array<uint64_t, 3> bits{};  // block 0 holds the most significant bits

    auto operator<=>(const Norm& o) const = default;
    std::string to_string() const;  // n^2 digits grouped by rows
};

struct Move {
    enum class Kind {
        FlipH,      // M1: flip in a horizontal axis (reverse rows)
        FlipV,      // M1: flip in a vertical axis (reverse columns)
        FlipDiag,   // M1: transpose
        FlipAntidiag,
        Rot90,      // M2: clockwise quarter turn
        CycleRow,   // M3: first row to the bottom
        CycleCol,   // M3: first column to the rear
        SwapRows,   // M4: exchange rows index, index+1 (non-interleaved only)
        SwapCols,   // M4: exchange columns index, index+1
    };
    Kind kind;
    int index = 0;  // first of the two adjacent rows/columns for M4
};

enum class NormVerdict { Maximal, NotMaximal, Inconclusive };

struct DestabPosition {
    bool vertical;  // true: column `index` pairs rows r, r+1 (mod n); false: row `index` spans columns c, c+1 (mod n)
    int index;      // column (vertical) or row (horizontal) carrying the adjacent pair
    int at;         // first of the two adjacent rows/columns, wrap allowed
};

Verdict validate(const GridDiagram& g);
Norm norm(const GridDiagram& g);

// Throws std::invalid_argument when the move is not permitted (M4 pairs
// interleave or share an index, index out of range).
GridDiagram apply_move(const GridDiagram& g, Move m);

// All grids reachable by M1-M3 alone; contains g. Size <= 8 n^2.
std::vector<GridDiagram> symmetry_orbit(const GridDiagram& g);

// Bounded BFS over M1-M4 move sequences, memoized on visited matrices.
// `budget` caps the number of visited states.
NormVerdict is_norm_maximal(const GridDiagram& g, std::size_t budget);

std::optional<DestabPosition> destabilizable(const GridDiagram& g, bool cyclic = true);

// Throws std::invalid_argument on stale positions or when n == 2.
GridDiagram destabilize(const GridDiagram& g, const DestabPosition& pos);

int component_count(const GridDiagram& g);

// Corner-splice of two knot grids; result size n1 + n2 - 1.
GridDiagram connected_sum(const GridDiagram& g1, const GridDiagram& g2);

// Oriented planar diagram of a knot grid: vertical strands over, traversal
// starts at column 0's lower endpoint heading up.  Rejects links.
PlanarKnotDiagram to_planar(const GridDiagram& g);

GridDiagram grid_unknot();  // the 2x2 all-ones grid

}  // namespace gridknot
