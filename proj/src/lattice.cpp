#include "qwalk/lattice.hpp"

#include "qwalk/decoupling.hpp"
#include "qwalk/operators.hpp"

#include <algorithm>
#include <cmath>

namespace qwalk {

CellStructure::CellStructure(int x_min, std::vector<Index> dims) : x_min_(x_min), dims_(std::move(dims)) {
    offsets_.assign(dims_.size() + 1, 0);
    for (size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] <= 0) throw Error(ErrorKind::InvalidInput, "cell dimensions must be positive");
        offsets_[i + 1] = offsets_[i] + dims_[i];
    }
}

CellStructure CellStructure::uniform(int n_cells, Index cell_dim, int x_min) {
    return CellStructure(x_min, std::vector<Index>(static_cast<size_t>(n_cells), cell_dim));
}

int CellStructure::cell_of(Index i) const {
    if (i < 0 || i >= total()) throw Error(ErrorKind::InvalidInput, "index outside the cell structure");
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), i);
    return x_min_ + static_cast<int>(it - offsets_.begin()) - 1;
}

CellStructure CellStructure::sub(int lo, int hi) const {
    if (lo < x_min_ || hi > x_max() + 1 || lo > hi) throw Error(ErrorKind::CutOutOfRange, "cell range outside the structure");
    return CellStructure(lo, std::vector<Index>(dims_.begin() + (lo - x_min_), dims_.begin() + (hi - x_min_)));
}

Mat LatticeOperator::block(int x, int y) const {
    return matrix.block(cells.offset(x), cells.offset(y), cells.dim(x), cells.dim(y));
}

namespace {

SymmetryRep assemble(const std::vector<SymmetryRep>& per_cell) {
    SymmetryRep out;
    out.cls = per_cell.front().cls;
    for (const auto& r : per_cell) out.dim += r.dim;
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
        if (!per_cell.front().op(s)) continue;
        SymOp op{Mat::Zero(out.dim, out.dim), per_cell.front().op(s)->antiunitary};
        Index off = 0;
        for (const auto& r : per_cell) {
            op.matrix.block(off, off, r.dim, r.dim) = r.op(s)->matrix;
            off += r.dim;
        }
        out.op(s) = op;
    }
    return out;
}

}  // namespace

LocalSymmetryRep make_local_rep(const std::vector<SymmetryRep>& per_cell, const RepIndexOptions& opt) {
    if (per_cell.empty()) throw Error(ErrorKind::InvalidInput, "no cells");
    LocalSymmetryRep out;
    out.cls = per_cell.front().cls;
    for (const auto& r : per_cell) {
        if (r.cls != out.cls) throw Error(ErrorKind::IncompatibleCells, "cells of different symmetry classes");
        const RelationReport rel = check_rep_relations(r);
        if (!rel.passes(opt.relation_tol))
            throw Error(ErrorKind::RelationViolation, "cell rep residual " + std::to_string(rel.max()));
        if (!is_balanced(r, opt)) throw Error(ErrorKind::Unbalanced, "cell rep of class " + to_string(r.cls) + " is not balanced");
    }
    out.per_cell = per_cell;
    out.assembled = assemble(per_cell);
    return out;
}

LocalSymmetryRep uniform_local_rep(const SymmetryRep& cell, int n_cells) {
    return make_local_rep(std::vector<SymmetryRep>(static_cast<size_t>(n_cells), cell));
}

LocalSymmetryRep restrict_cells(const LocalSymmetryRep& rep, const CellStructure& cells, int lo, int hi) {
    cells.sub(lo, hi);
    LocalSymmetryRep out;
    out.cls = rep.cls;
    out.per_cell.assign(rep.per_cell.begin() + (lo - cells.x_min()), rep.per_cell.begin() + (hi - cells.x_min()));
    out.assembled = assemble(out.per_cell);
    return out;
}

Mat segment_projection(const CellStructure& cells, int lo, int hi) {
    if (lo < cells.x_min() || hi > cells.x_max() + 1 || lo > hi)
        throw Error(ErrorKind::CutOutOfRange, "segment [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
    Mat p = Mat::Zero(cells.total(), cells.total());
    for (int x = lo; x < hi; ++x)
        for (Index i = 0; i < cells.dim(x); ++i) p(cells.offset(x) + i, cells.offset(x) + i) = 1;
    return p;
}

Mat half_space_projection(const CellStructure& cells, int a) {
    if (a < cells.x_min() || a > cells.x_max() + 1) throw Error(ErrorKind::CutOutOfRange, "cut " + std::to_string(a));
    return segment_projection(cells, a, cells.x_max() + 1);
}

LatticeOperator compress(const LatticeOperator& w, int lo, int hi) {
    LatticeOperator out;
    out.cells = w.cells.sub(lo, hi);
    const Index o = lo == hi ? 0 : w.cells.offset(lo);
    out.matrix = w.matrix.block(o, o, out.cells.total(), out.cells.total());
    out.band = w.band;
    return out;
}

LatticeOperator compress(const LatticeOperator& w, const Mat& p) {
    int lo = w.cells.x_max() + 1, hi = w.cells.x_min();
    for (int x = w.cells.x_min(); x <= w.cells.x_max(); ++x) {
        const double d = p(w.cells.offset(x), w.cells.offset(x)).real();
        if (d > 0.5) {
            lo = std::min(lo, x);
            hi = std::max(hi, x + 1);
        }
    }
    if (lo >= hi) return compress(w, w.cells.x_min(), w.cells.x_min());
    if ((p - segment_projection(w.cells, lo, hi)).norm() > 1e-12)
        throw Error(ErrorKind::InvalidInput, "compress expects the projection onto a contiguous cell range");
    return compress(w, lo, hi);
}

std::vector<double> locality_profile(const LatticeOperator& w) {
    const int n = w.cells.n_cells();
    std::vector<double> prof(static_cast<size_t>(std::max(n, 1)), 0.0);
    for (int x = w.cells.x_min(); x <= w.cells.x_max(); ++x)
        for (int y = w.cells.x_min(); y <= w.cells.x_max(); ++y) {
            auto& p = prof[static_cast<size_t>(std::abs(x - y))];
            p = std::max(p, w.block(x, y).norm());
        }
    return prof;
}

int measured_band(const LatticeOperator& w, double tol_band) {
    const auto prof = locality_profile(w);
    int b = 0;
    for (size_t d = 0; d < prof.size(); ++d)
        if (prof[d] > tol_band) b = static_cast<int>(d);
    return b;
}

LatticeOperator lattice_from_ti(const TIWalk& ti, int n_cells, Topology topo) {
    const int b = ti.band();
    if (topo == Topology::Circle && n_cells < 2 * b + 1)
        throw Error(ErrorKind::TooShort, "circle of " + std::to_string(n_cells) + " cells for band " + std::to_string(b));
    LatticeOperator out;
    out.cells = CellStructure::uniform(n_cells, ti.cell_dim);
    out.band = b;
    const Index d = ti.cell_dim;
    out.matrix = Mat::Zero(n_cells * d, n_cells * d);
    for (int x = 0; x < n_cells; ++x)
        for (const auto& [j, blk] : ti.blocks) {
            int row = x + j;
            if (topo == Topology::Circle) row = ((row % n_cells) + n_cells) % n_cells;
            else if (row < 0 || row >= n_cells) continue;
            out.matrix.block(row * d, x * d, d, d) += blk;
        }
    return out;
}

LatticeWalk truncate_ti(const TIWalk& ti, int n_cells, Boundary boundary, const Tolerances& tol) {
    const int b = ti.band();
    if (n_cells < 2 * b + 2) throw Error(ErrorKind::TooShort, "need at least 2 band + 2 cells");
    if (boundary == Boundary::Compress) {
        LatticeWalk w;
        w.op = lattice_from_ti(ti, n_cells, Topology::Line);
        w.rep = uniform_local_rep(ti.cell_rep, n_cells);
        return w;
    }
    const int pad = 4 * b + 4;
    LatticeWalk ring;
    ring.op = lattice_from_ti(ti, n_cells + pad, Topology::Circle);
    ring.rep = uniform_local_rep(ti.cell_rep, n_cells + pad);
    return decouple_segment(ring, 0, n_cells, tol);
}

namespace {

Mat shift_component(int n, int comp, int step, Topology topo) {
    Mat s = Mat::Zero(2 * n, 2 * n);
    for (int x = 0; x < n; ++x) {
        int to = x + step;
        if (topo == Topology::Circle) to = ((to % n) + n) % n;
        else if (to < 0 || to >= n) continue;
        s(2 * to + comp, 2 * x + comp) = 1;
    }
    for (int x = 0; x < n; ++x) s(2 * x + 1 - comp, 2 * x + 1 - comp) = 1;
    return s;
}

}  // namespace

LatticeOperator split_step_lattice(const std::vector<std::array<double, 2>>& coins, Topology topo) {
    const int n = static_cast<int>(coins.size());
    if (topo == Topology::Circle && n < 3) throw Error(ErrorKind::TooShort, "split-step circle needs 3 cells");
    Mat r1 = Mat::Zero(2 * n, 2 * n), r2 = Mat::Zero(2 * n, 2 * n);
    for (int x = 0; x < n; ++x) {
        r1.block(2 * x, 2 * x, 2, 2) = rotation(coins[static_cast<size_t>(x)][0]);
        r2.block(2 * x, 2 * x, 2, 2) = rotation(coins[static_cast<size_t>(x)][1]);
    }
    LatticeOperator out;
    out.cells = CellStructure::uniform(n, 2);
    out.band = 1;
    out.matrix = shift_component(n, 0, 1, topo) * r2 * shift_component(n, 1, -1, topo) * r1;
    return out;
}

namespace {

bool same_walk(const TIWalk& a, const TIWalk& b) {
    if (a.cell_dim != b.cell_dim || a.blocks.size() != b.blocks.size()) return false;
    for (const auto& [j, m] : a.blocks) {
        auto it = b.blocks.find(j);
        if (it == b.blocks.end() || (it->second - m).norm() > 1e-14) return false;
    }
    return true;
}

std::vector<SymmetryRep> split_step_cell_reps(const std::vector<std::array<double, 2>>& coins) {
    std::vector<SymmetryRep> reps;
    for (const auto& c : coins) reps.push_back(split_step_rep(c[0]));
    return reps;
}

LatticeWalk direct_sum_walks(const LatticeWalk& a, const LatticeWalk& b) {
    LatticeWalk out;
    std::vector<Index> dims = a.op.cells.dims();
    dims.insert(dims.end(), b.op.cells.dims().begin(), b.op.cells.dims().end());
    out.op.cells = CellStructure(0, dims);
    out.op.band = std::max(a.op.band, b.op.band);
    const Index na = a.op.matrix.rows(), nb = b.op.matrix.rows();
    out.op.matrix = Mat::Zero(na + nb, na + nb);
    out.op.matrix.topLeftCorner(na, na) = a.op.matrix;
    out.op.matrix.bottomRightCorner(nb, nb) = b.op.matrix;
    std::vector<SymmetryRep> reps = a.rep.per_cell;
    reps.insert(reps.end(), b.rep.per_cell.begin(), b.rep.per_cell.end());
    out.rep = make_local_rep(reps);
    return out;
}

}  // namespace

LatticeWalk join_crossover(const TIWalk& left, const TIWalk& right, int n_left, int n_right, Topology topo,
                           const Tolerances& tol) {
    if (left.cell_dim != right.cell_dim) throw Error(ErrorKind::IncompatibleCells, "cell dimensions differ");
    if (left.cls() != right.cls()) throw Error(ErrorKind::IncompatibleCells, "symmetry classes differ");
    if (n_left < 0 || n_right < 0 || n_left + n_right < 1) throw Error(ErrorKind::TooShort, "empty join");

    if (left.coin_params && right.coin_params) {
        const int pad = topo == Topology::Line ? 8 : 0;
        std::vector<std::array<double, 2>> coins;
        for (int x = 0; x < n_left; ++x) coins.push_back(*left.coin_params);
        for (int x = 0; x < n_right + pad; ++x) coins.push_back(*right.coin_params);
        for (int x = 0; x < pad; ++x) coins.push_back(*left.coin_params);
        LatticeWalk ring;
        ring.op = split_step_lattice(coins, Topology::Circle);
        ring.rep = make_local_rep(split_step_cell_reps(coins));
        if (topo == Topology::Circle) {
            ring.interfaces = {n_left, 0};
            return ring;
        }
        LatticeWalk line = decouple_segment(ring, 0, n_left + n_right, tol);
        line.interfaces = {n_left};
        return line;
    }

    if (topo == Topology::Circle && same_walk(left, right)) {
        LatticeWalk ring;
        ring.op = lattice_from_ti(left, n_left + n_right, Topology::Circle);
        ring.rep = uniform_local_rep(left.cell_rep, n_left + n_right);
        ring.interfaces = {n_left, 0};
        return ring;
    }

    // Decoupled unitary truncations of both bulks, side by side.
    LatticeWalk joined = direct_sum_walks(truncate_ti(left, n_left, Boundary::DecoupledUnitary, tol),
                                          truncate_ti(right, n_right, Boundary::DecoupledUnitary, tol));
    if (unitarity_defect(joined.op.matrix) > 1e-9)
        throw Error(ErrorKind::UnitarityRepairFailed, "joined walk is not unitary");
    joined.interfaces = topo == Topology::Line ? std::vector<int>{n_left} : std::vector<int>{n_left, 0};
    return joined;
}

}  // namespace qwalk
