#include "qwalk/indices.hpp"

#include "qwalk/ti_walks.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace qwalk {

namespace {

RepIndexOptions derived_opt(const Tolerances& tol) {
    RepIndexOptions o;
    o.relation_tol = tol.rep;
    o.idx_tol = tol.idx;
    return o;
}

IndexValue index_on(const SymmetryRep& rep, const Mat& basis, const Tolerances& tol) {
    if (basis.cols() == 0) return IndexValue::zero(index_group_of(rep.cls));
    return rep_index(restrict_rep(rep, basis), derived_opt(tol));
}

/// Operators of a block diagonal rep on the index range [off, off + len).
SymmetryRep slice_rep(const SymmetryRep& rep, Index off, Index len) {
    SymmetryRep out;
    out.cls = rep.cls;
    out.dim = len;
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma})
        if (rep.op(s)) out.op(s) = SymOp{rep.op(s)->matrix.block(off, off, len, len), rep.op(s)->antiunitary};
    return out;
}

SymmetryRep slice_rep(const SymmetryRep& rep, const CellStructure& cells, int lo, int hi) {
    if (lo >= hi) return slice_rep(rep, 0, 0);
    return slice_rep(rep, cells.offset(lo), cells.offset(hi - 1) + cells.dim(hi - 1) - cells.offset(lo));
}

Vec cell_weight_diagonal(const CellStructure& cells, int lo, int hi) {
    Vec d = Vec::Zero(cells.total());
    for (int x = std::max(lo, cells.x_min()); x < std::min(hi, cells.x_max() + 1); ++x)
        d.segment(cells.offset(x), cells.dim(x)).setOnes();
    return d;
}

struct Localized {
    Mat basis;
    double ambiguity = 0;
};

/// Directions in span(basis) with weight > 1/2 on cells [lo, hi).
Localized localize(const Mat& basis, const CellStructure& cells, int lo, int hi) {
    Localized out;
    out.basis.resize(basis.rows(), 0);
    if (basis.cols() == 0) return out;
    const Vec d = cell_weight_diagonal(cells, lo, hi);
    const Mat g = basis.adjoint() * d.asDiagonal() * basis;
    Eigen::SelfAdjointEigenSolver<Mat> es(real_part(g));
    std::vector<Index> keep;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double w = es.eigenvalues()(i);
        out.ambiguity = std::max(out.ambiguity, std::min(std::abs(w), std::abs(1 - w)));
        if (w > 0.5) keep.push_back(i);
    }
    out.basis.resize(basis.rows(), static_cast<Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j)
        out.basis.col(static_cast<Index>(j)) = basis * es.eigenvectors().col(keep[j]);
    return out;
}

Mat near_kernel_of_imaginary_part(const Mat& w, double window) {
    Eigen::SelfAdjointEigenSolver<Mat> es(imaginary_part(w));
    std::vector<Index> keep;
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i)) <= window) keep.push_back(i);
    Mat b(w.rows(), static_cast<Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) b.col(static_cast<Index>(j)) = es.eigenvectors().col(keep[j]);
    return b;
}

int effective_band(const LatticeOperator& w) { return w.band >= 0 ? w.band : measured_band(w); }

}  // namespace

SiPm si_pm(const Mat& w, const SymmetryRep& rep, double window, const Tolerances& tol) {
    require_unitary(w, 1e-9, "si_pm");
    require_admissible(w, rep, tol.adm, "si_pm");
    const UnitaryEig eig = eig_unitary(w, 1e-9);
    for (Index i = 0; i < eig.values.size(); ++i) {
        const double d = std::min(angle_between(eig.values(i), 1.0), angle_between(eig.values(i), -1.0));
        if (std::abs(d - window) < 10 * tol.eig)
            throw Error(ErrorKind::WindowAmbiguous, "eigenvalue at the edge of the +-1 window");
    }
    const SubspaceBasis em = eigenspace_at(eig, -1.0, window), ep = eigenspace_at(eig, 1.0, window);
    SiPm out;
    out.minus = index_on(rep, em.vectors, tol);
    out.plus = index_on(rep, ep.vectors, tol);
    out.dim_minus = em.dim();
    out.dim_plus = ep.dim();
    const Index n = w.rows();
    if (rep.gamma && (rep.cls == SymClass::AIII || rep.cls == SymClass::BDI || rep.cls == SymClass::CII) && n > 0) {
        const Mat& g = rep.gamma->matrix;
        const double tp = (g * (Mat::Identity(n, n) + w)).trace().real() / 2;
        const double tm = (g * (Mat::Identity(n, n) - w)).trace().real() / 2;
        out.closed_form_residual =
            std::max(std::abs(tp - double(out.plus.value())), std::abs(tm - double(out.minus.value())));
    } else if (rep.cls == SymClass::D && n > 0) {
        const cplx det = w.determinant();
        out.closed_form_residual = std::abs(det - (out.dim_minus % 2 ? -1.0 : 1.0));
    }
    return out;
}

IndexValue si_total(const Mat& w, const SymmetryRep& rep, const Tolerances& tol) {
    require_admissible(w, rep, tol.adm, "si_total");
    return index_on(rep, kernel_basis(imaginary_part(w), tol.ker).vectors, tol);
}

LocalizedIndex si_localized(const LatticeOperator& w, const SymmetryRep& rep, int lo, int hi, const Tolerances& tol) {
    require_admissible(w.matrix, rep, tol.adm, "si_localized");
    const Mat k = near_kernel_of_imaginary_part(w.matrix, std::max(tol.ker, tol.local));
    const Localized loc = localize(k, w.cells, lo, hi);
    LocalizedIndex out;
    out.kernel_dim = k.cols();
    out.local_dim = loc.basis.cols();
    out.ambiguity = loc.ambiguity;
    out.value = index_on(rep, loc.basis, tol);
    return out;
}

LeftRight si_left_right(const LatticeOperator& w, const SymmetryRep& rep, int a, const Tolerances& tol) {
    const CellStructure& c = w.cells;
    if (a <= c.x_min() || a > c.x_max()) throw Error(ErrorKind::CutOutOfRange, "cut " + std::to_string(a));
    const int end = c.x_max() + 1;
    const LatticeOperator left = compress(w, c.x_min(), a), right = compress(w, a, end);
    const LocalizedIndex l = si_localized(left, slice_rep(rep, c, c.x_min(), a), (c.x_min() + a) / 2, a, tol);
    const LocalizedIndex r = si_localized(right, slice_rep(rep, c, a, end), a, (a + end + 1) / 2, tol);
    return LeftRight{l.value, r.value, std::max(l.ambiguity, r.ambiguity)};
}

FredholmReport fredholm_index(const LatticeOperator& w, const Mat& p, int a, const Tolerances& tol) {
    const CellStructure& c = w.cells;
    const int n = c.n_cells(), b = effective_band(w);
    FredholmReport out;
    out.window_lo = a - 2 * b;
    out.window_hi = a + 2 * b;
    std::vector<int> cells;
    for (int t = -2 * b; t < 2 * b; ++t) {
        const int x = c.x_min() + (((a + t - c.x_min()) % n) + n) % n;
        if (std::find(cells.begin(), cells.end(), x) == cells.end()) cells.push_back(x);
    }
    std::vector<Index> idx;
    for (int x : cells)
        for (Index i = 0; i < c.dim(x); ++i) idx.push_back(c.offset(x) + i);
    const Index k = static_cast<Index>(idx.size());
    if (k == 0) return out;
    Mat rows(k, w.matrix.cols());
    Mat pw(k, k);
    for (Index i = 0; i < k; ++i) {
        rows.row(i) = w.matrix.row(idx[static_cast<size_t>(i)]);
        for (Index j = 0; j < k; ++j) pw(i, j) = p(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    }
    const Vec pd = p.diagonal();
    const Mat a_win = pw - rows * pd.asDiagonal() * rows.adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(real_part(a_win));
    for (Index i = 0; i < k; ++i) {
        if (es.eigenvalues()(i) > 1 - tol.split) ++out.dim_h10;
        if (es.eigenvalues()(i) < -1 + tol.split) ++out.dim_h01;
    }
    out.index = static_cast<int>(out.dim_h01 - out.dim_h10);
    out.trace = -a_win.trace().real();
    return out;
}

FredholmReport fredholm_index(const LatticeOperator& w, int a, const Tolerances& tol) {
    require_unitary(w.matrix, 1e-9, "fredholm_index");
    return fredholm_index(w, half_space_projection(w.cells, a), a, tol);
}

SymmetryRep twiddle_rep(const Mat& w, const SymmetryRep& rep, const Tolerances& tol) {
    require_admissible(w, rep, tol.adm, "twiddle_rep");
    SymmetryRep out = rep;
    if (rep.tau) out.tau = SymOp{w * rep.tau->matrix, true};
    if (rep.gamma) out.gamma = SymOp{w * rep.gamma->matrix, false};
    const RelationReport rel = check_rep_relations(out);
    if (!rel.passes(std::max(tol.adm, tol.unit)))
        throw Error(ErrorKind::RelationViolation, "twiddle rep residual " + std::to_string(rel.max()));
    return out;
}

IndexValue relative_index(const Mat& w, const Mat& w_prime, const SymmetryRep& rep, double window,
                          const Tolerances& tol) {
    require_admissible(w_prime, rep, tol.adm, "relative_index");
    const SymmetryRep trep = twiddle_rep(w, rep, tol);
    const Mat v = w_prime * w.adjoint();
    const UnitaryEig eig = eig_unitary(v, 1e-9);
    for (Index i = 0; i < eig.values.size(); ++i)
        if (std::abs(angle_between(eig.values(i), -1.0) - window) < 10 * tol.eig)
            throw Error(ErrorKind::EigenspaceAmbiguous, "eigenvalue of V at the edge of the -1 window");
    return index_on(trep, eigenspace_at(eig, -1.0, window).vectors, tol);
}

LocpertReport verify_locpert(const Mat& w, const Mat& w_prime, const SymmetryRep& rep, double window,
                             const Tolerances& tol) {
    LocpertReport r;
    r.relative = relative_index(w, w_prime, rep, window, tol);
    const SiPm a = si_pm(w, rep, window, tol), b = si_pm(w_prime, rep, window, tol);
    r.minus_difference = b.minus - a.minus;
    r.plus_difference = -(b.plus - a.plus);
    r.passes = r.relative == r.minus_difference && r.relative == r.plus_difference;
    return r;
}

Mat gapped_admissible_unitary(const SymmetryRep& rep, const Mat* grading, const Tolerances& tol) {
    (void)tol;
    const Index n = rep.dim;
    if (n == 0) return Mat::Zero(0, 0);
    std::mt19937_64 rng(0x9a99edULL + static_cast<unsigned long long>(n));
    std::normal_distribution<double> gauss;
    for (int attempt = 0; attempt < 20; ++attempt) {
        Mat h(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) h(i, j) = cplx(gauss(rng), gauss(rng));
        h = symmetrize_hamiltonian(real_part(h), rep);
        if (grading) h = (h - *grading * h * grading->adjoint()) / 2.0;
        try {
            return i_sign(real_part(h), 1e-6);
        } catch (const Error&) {
        }
    }
    throw Error(ErrorKind::Unbalanced, "no gapped admissible unitary exists for this rep");
}

std::vector<Mat> contract_perturbation(const Mat& v, const SymmetryRep& trep, int steps, double window,
                                       const Tolerances& tol) {
    if (steps < 1) throw Error(ErrorKind::InvalidInput, "steps must be positive");
    const Index n = v.rows();
    const UnitaryEig eig = eig_unitary(v, 1e-9);
    std::vector<Index> far;
    for (Index i = 0; i < n; ++i)
        if (angle_between(eig.values(i), -1.0) > window) far.push_back(i);
    const SubspaceBasis hv = eigenspace_at(eig, -1.0, window);

    Mat phi = Mat::Zero(n, n);
    for (Index i : far) phi += std::arg(eig.values(i)) * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    if (hv.dim() > 0) {
        const SymmetryRep sub = restrict_rep(trep, hv.vectors);
        const IndexValue idx = rep_index(sub, derived_opt(tol));
        if (!idx.is_zero()) throw Error(ErrorKind::Obstructed, "relative index " + to_string(idx) + " on the -1 eigenspace");
        const Mat g = gapped_admissible_unitary(sub, nullptr, tol);
        phi += hv.vectors * (kPi * (-kI) * g) * hv.vectors.adjoint();
    }
    phi = real_part(phi);
    Eigen::SelfAdjointEigenSolver<Mat> es(phi);
    std::vector<Mat> path;
    for (int s = 0; s <= steps; ++s) {
        const double f = 1.0 - double(s) / steps;
        const Vec d = (kI * f * es.eigenvalues().cast<cplx>()).array().exp();
        path.push_back(es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint());
    }
    path.front() = v;
    path.back() = Mat::Identity(n, n);
    return path;
}

IndexValue ti_right_index(const TIWalk& ti, const GridOptions& g, const Tolerances& tol) {
    const Group grp = index_group_of(ti.cls());
    switch (ti.cls()) {
        case SymClass::AIII:
        case SymClass::BDI:
        case SymClass::CII: return IndexValue(grp, winding_number(ti, g, tol).value);
        case SymClass::D:
        case SymClass::DIII: return IndexValue(grp, berry_phase(ti, g, tol).value);
        default: return IndexValue::zero(grp);
    }
}

BulkBoundaryReport verify_bulk_boundary(const TIWalk& left, const TIWalk& right, const LatticeWalk& joined,
                                        double window, const Tolerances& tol) {
    try {
        ti_gap_margin(left, {}, tol);
        ti_gap_margin(right, {}, tol);
    } catch (const Error& e) {
        throw Error(ErrorKind::GapViolation, e.what());
    }
    if (joined.interfaces.empty()) throw Error(ErrorKind::InvalidInput, "joined walk has no interface");
    BulkBoundaryReport r;
    r.expected = -ti_right_index(left, {}, tol) + ti_right_index(right, {}, tol);
    const Mat& w = joined.op.matrix;
    const UnitaryEig eig = eig_unitary(w, 1e-9);
    const SubspaceBasis ep = eigenspace_at(eig, 1.0, window), em = eigenspace_at(eig, -1.0, window);
    Mat near(w.rows(), ep.dim() + em.dim());
    near << ep.vectors, em.vectors;
    r.near_dim = near.cols();
    const CellStructure& c = joined.op.cells;
    const int i0 = joined.interfaces.front();
    const int radius = std::max(1, std::min(i0 - c.x_min(), c.x_max() + 1 - i0) / 2);
    const Localized loc = localize(near, c, i0 - radius, i0 + radius);
    r.measured = index_on(joined.rep.assembled, loc.basis, tol);
    r.passes = r.measured == r.expected && r.near_dim >= std::abs(r.expected.value());
    return r;
}

IndexMatrix index_matrix(const LatticeOperator& w, const SymmetryRep& rep, int a, double window,
                         const Tolerances& tol) {
    const CellStructure& c = w.cells;
    if (a <= c.x_min() || a > c.x_max()) throw Error(ErrorKind::CutOutOfRange, "cut " + std::to_string(a));
    const Mat p = half_space_projection(c, a);
    if (opnorm(p * w.matrix - w.matrix * p) > 1e-9) throw Error(ErrorKind::NotDecoupled, "walk does not commute with P");
    const int end = c.x_max() + 1;
    IndexMatrix m;
    auto piece = [&](int lo, int hi, int loc_lo, int loc_hi, IndexValue& plus, IndexValue& minus) {
        const LatticeOperator op = compress(w, lo, hi);
        const SymmetryRep r = slice_rep(rep, c, lo, hi);
        const UnitaryEig eig = eig_unitary(op.matrix, 1e-9);
        plus = index_on(r, localize(eigenspace_at(eig, 1.0, window).vectors, op.cells, loc_lo, loc_hi).basis, tol);
        minus = index_on(r, localize(eigenspace_at(eig, -1.0, window).vectors, op.cells, loc_lo, loc_hi).basis, tol);
    };
    piece(c.x_min(), a, (c.x_min() + a) / 2, a, m.plus_left, m.minus_left);
    piece(a, end, a, (a + end + 1) / 2, m.plus_right, m.minus_right);
    return m;
}

}  // namespace qwalk
