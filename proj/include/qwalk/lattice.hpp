/// Cell structures, half-space projections, compressions, truncations and crossover joins.
#pragma once

#include "qwalk/symmetry.hpp"
#include "qwalk/ti_walks.hpp"
#include "qwalk/types.hpp"

#include <vector>

namespace qwalk {

class CellStructure {
public:
    CellStructure() = default;
    CellStructure(int x_min, std::vector<Index> dims);
    static CellStructure uniform(int n_cells, Index cell_dim, int x_min = 0);

    int x_min() const { return x_min_; }
    int x_max() const { return x_min_ + n_cells() - 1; }
    int n_cells() const { return static_cast<int>(dims_.size()); }
    Index total() const { return offsets_.empty() ? 0 : offsets_.back(); }
    Index dim(int x) const { return dims_.at(static_cast<size_t>(x - x_min_)); }
    Index offset(int x) const { return offsets_.at(static_cast<size_t>(x - x_min_)); }
    int cell_of(Index i) const;
    const std::vector<Index>& dims() const { return dims_; }
    /// Cells [lo, hi) as their own structure, keeping coordinates.
    CellStructure sub(int lo, int hi) const;
    bool operator==(const CellStructure& o) const { return x_min_ == o.x_min_ && dims_ == o.dims_; }

private:
    int x_min_ = 0;
    std::vector<Index> dims_;
    std::vector<Index> offsets_;  // size n_cells + 1
};

struct LatticeOperator {
    CellStructure cells;
    Mat matrix;
    int band = -1;  // declared jump length, -1 if unknown

    Mat block(int x, int y) const;
};

struct LocalSymmetryRep {
    SymClass cls = SymClass::A;
    std::vector<SymmetryRep> per_cell;
    SymmetryRep assembled;
};

/// Every cell rep must be balanced; throws Unbalanced otherwise.
LocalSymmetryRep make_local_rep(const std::vector<SymmetryRep>& per_cell, const RepIndexOptions& opt = {});
LocalSymmetryRep uniform_local_rep(const SymmetryRep& cell, int n_cells);
LocalSymmetryRep restrict_cells(const LocalSymmetryRep& rep, const CellStructure& cells, int lo, int hi);

/// A finite walk together with its local symmetry and the interface cells of a join.
struct LatticeWalk {
    LatticeOperator op;
    LocalSymmetryRep rep;
    std::vector<int> interfaces;
};

Mat half_space_projection(const CellStructure& cells, int a);
Mat segment_projection(const CellStructure& cells, int lo, int hi);

/// P W P restricted to cells [lo, hi).
LatticeOperator compress(const LatticeOperator& w, int lo, int hi);
/// Same for a cell-aligned diagonal projection.
LatticeOperator compress(const LatticeOperator& w, const Mat& p);

std::vector<double> locality_profile(const LatticeOperator& w);
int measured_band(const LatticeOperator& w, double tol_band = Tolerances{}.band);

enum class Topology { Line, Circle };
enum class Boundary { Compress, DecoupledUnitary };

/// Plain banded matrix of a TI walk on n cells (line: restriction, circle: periodic).
LatticeOperator lattice_from_ti(const TIWalk& ti, int n_cells, Topology topo);
LatticeWalk truncate_ti(const TIWalk& ti, int n_cells, Boundary boundary, const Tolerances& tol = {});

/// Split-step walk S_up R(theta2(x)) S_down R(theta1(x)) with coins chosen cell by cell.
LatticeOperator split_step_lattice(const std::vector<std::array<double, 2>>& coins, Topology topo);

LatticeWalk join_crossover(const TIWalk& left, const TIWalk& right, int n_left, int n_right, Topology topo,
                           const Tolerances& tol = {});

}  // namespace qwalk
