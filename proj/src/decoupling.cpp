#include "qwalk/decoupling.hpp"

#include "qwalk/indices.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace qwalk {

ProjectionPair projection_pair(const Mat& w, const Mat& p) {
    if (w.rows() != p.rows()) throw Error(ErrorKind::DimensionMismatch, "projection_pair");
    return ProjectionPair{p, w * p * w.adjoint()};
}

PairResiduals check_pair(const ProjectionPair& pair) {
    PairResiduals r;
    const Mat a = pair.A(), b = pair.B();
    const Index n = a.rows();
    r.idempotent = std::max(opnorm(pair.P * pair.P - pair.P), opnorm(pair.Q * pair.Q - pair.Q));
    r.anticommutator = opnorm(a * b + b * a);
    r.sum_squares = opnorm(a * a + b * b - Mat::Identity(n, n));
    return r;
}

namespace {

SubspaceBasis pick_columns(const Mat& vecs, const std::vector<Index>& idx, const char* label) {
    SubspaceBasis b;
    b.label = label;
    b.vectors.resize(vecs.rows(), static_cast<Index>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) b.vectors.col(static_cast<Index>(j)) = vecs.col(idx[j]);
    return b;
}

}  // namespace

TwoProjectionSplit split_subspaces(const ProjectionPair& pair, double tol) {
    TwoProjectionSplit s;
    const Index n = pair.P.rows();
    Eigen::SelfAdjointEigenSolver<Mat> ea(real_part(pair.A()));
    std::vector<Index> i10, i01;
    for (Index i = 0; i < n; ++i) {
        if (ea.eigenvalues()(i) > 1 - tol) i10.push_back(i);
        if (ea.eigenvalues()(i) < -1 + tol) i01.push_back(i);
    }
    s.H10 = pick_columns(ea.eigenvectors(), i10, "H10");
    s.H01 = pick_columns(ea.eigenvectors(), i01, "H01");

    Eigen::SelfAdjointEigenSolver<Mat> es(real_part(Mat(pair.P + pair.Q)));
    std::vector<Index> i00, i11;
    for (Index i = 0; i < n; ++i) {
        if (es.eigenvalues()(i) < tol) i00.push_back(i);
        if (es.eigenvalues()(i) > 2 - tol) i11.push_back(i);
    }
    s.H00 = pick_columns(es.eigenvectors(), i00, "H00");
    s.H11 = pick_columns(es.eigenvectors(), i11, "H11");

    Mat known(n, s.H00.dim() + s.H11.dim() + s.H10.dim() + s.H01.dim());
    known << s.H00.vectors, s.H11.vectors, s.H10.vectors, s.H01.vectors;
    const Mat rest = Mat::Identity(n, n) - known * known.adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> er(real_part(rest));
    std::vector<Index> ip;
    for (Index i = 0; i < n; ++i)
        if (er.eigenvalues()(i) > 0.5) ip.push_back(i);
    s.Hperp = pick_columns(er.eigenvectors(), ip, "Hperp");
    return s;
}

Mat kato_X(const ProjectionPair& pair) {
    const Index n = pair.P.rows();
    return Mat::Identity(n, n) - pair.P - pair.Q + 2.0 * pair.P * pair.Q;
}

KatoResiduals check_kato(const ProjectionPair& pair, const Mat& x) {
    KatoResiduals r;
    const Mat pq = pair.P * pair.Q;
    r.intertwining = std::max(opnorm(x * pair.Q - pq), opnorm(pair.P * x - pq));
    r.normality = opnorm(x.adjoint() * x - x * x.adjoint());
    if (x.rows() > 0) {
        Eigen::ComplexEigenSolver<Mat> es(x, false);
        for (Index i = 0; i < es.eigenvalues().size(); ++i)
            r.circle = std::max(r.circle, std::abs(std::abs(es.eigenvalues()(i) - 0.5) - 0.5));
    }
    return r;
}

Mat canonical_V(const ProjectionPair& pair, const TwoProjectionSplit& split, const Tolerances& tol) {
    (void)tol;
    const Index n = pair.P.rows();
    const Mat b = swap_basis(split);
    const Mat x = kato_X(pair) * (Mat::Identity(n, n) - b * b.adjoint());
    return polar_isometry(x, 1e-6);
}

Mat swap_basis(const TwoProjectionSplit& split) {
    Mat b(split.H01.vectors.rows(), split.H01.dim() + split.H10.dim());
    b << split.H01.vectors, split.H10.vectors;
    return b;
}

Mat swap_V01(const TwoProjectionSplit& split, const SymmetryRep& trep, const Tolerances& tol) {
    const Index n01 = split.H01.dim(), n10 = split.H10.dim();
    if (n01 != n10)
        throw Error(ErrorKind::DimensionMismatch,
                    "dim H01 = " + std::to_string(n01) + ", dim H10 = " + std::to_string(n10) + " (nonzero index)");
    if (trep.dim != n01 + n10) throw Error(ErrorKind::DimensionMismatch, "restricted rep has the wrong dimension");
    const Index n = n01 + n10;
    if (n == 0) return Mat::Zero(0, 0);
    if (trep.cls == SymClass::AII && n01 % 2 != 0)
        throw Error(ErrorKind::OddDimensionAII, "class AII needs even dim H01");
    RepIndexOptions opt;
    opt.relation_tol = tol.rep;
    if (!is_balanced(trep, opt)) throw Error(ErrorKind::Unbalanced, "rep on H01 + H10 is not balanced");

    Mat a = Mat::Identity(n, n);
    a.topLeftCorner(n01, n01) *= -1.0;
    if (trep.gamma && class_info(trep.cls).gamma_sq == 1) return a * trep.gamma->matrix;

    std::mt19937_64 rng(0x5eed01);
    std::normal_distribution<double> gauss;
    for (int attempt = 0; attempt < 20; ++attempt) {
        Mat h(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) h(i, j) = cplx(gauss(rng), gauss(rng));
        h = symmetrize_hamiltonian(real_part(h), trep);
        const Mat off = (h - a * h * a) / 2.0;
        try {
            return i_sign(real_part(off), 1e-6);
        } catch (const Error&) {
        }
    }
    throw Error(ErrorKind::Unbalanced, "no invertible admissible swap found on H01 + H10");
}

namespace {

/// Indicator of the cells within 2 band of the cut, wrapping around the ends.
Vec cut_window(const CellStructure& c, int cut, int band) {
    Vec d = Vec::Zero(c.total());
    const int n = c.n_cells();
    for (int t = -2 * band; t < 2 * band; ++t) {
        const int x = c.x_min() + (((cut + t - c.x_min()) % n) + n) % n;
        d.segment(c.offset(x), c.dim(x)).setOnes();
    }
    return d;
}

SubspaceBasis localized_part(const SubspaceBasis& s, const Vec& mask) {
    SubspaceBasis out;
    out.label = s.label;
    out.vectors.resize(s.vectors.rows(), 0);
    if (s.dim() == 0) return out;
    Eigen::SelfAdjointEigenSolver<Mat> es(real_part(Mat(s.vectors.adjoint() * mask.asDiagonal() * s.vectors)));
    std::vector<Index> keep;
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
    out.vectors.resize(s.vectors.rows(), static_cast<Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j)
        out.vectors.col(static_cast<Index>(j)) = s.vectors * es.eigenvectors().col(keep[j]);
    return out;
}

}  // namespace

DecouplingResult gentle_decoupling(const LatticeOperator& w, const SymmetryRep& rep, int a, int steps,
                                   const Tolerances& tol) {
    return gentle_decoupling(w, rep, half_space_projection(w.cells, a), std::vector<int>{a}, steps, tol);
}

DecouplingResult gentle_decoupling(const LatticeOperator& w, const SymmetryRep& rep, const Mat& p,
                                   const std::vector<int>& cuts, int steps, const Tolerances& tol) {
    require_unitary(w.matrix, 1e-8, "gentle_decoupling");
    require_admissible(w.matrix, rep, tol.adm, "gentle_decoupling");
    for (int cut : cuts) {
        const FredholmReport f = fredholm_index(w, p, cut, tol);
        if (f.index != 0)
            throw Error(ErrorKind::DimensionMismatch,
                        "index " + std::to_string(f.index) + " at cut " + std::to_string(cut) + " obstructs decoupling");
    }
    const ProjectionPair pair = projection_pair(w.matrix, p);
    const TwoProjectionSplit split = split_subspaces(pair, tol.split);
    const SymmetryRep trep = twiddle_rep(w.matrix, rep, tol);

    DecouplingResult r;
    r.dim_h01 = split.H01.dim();
    r.dim_h10 = split.H10.dim();
    r.V = canonical_V(pair, split, tol);
    // The swap is built cut by cut so that it stays local.
    std::vector<TwoProjectionSplit> parts;
    if (cuts.size() < 2) parts.push_back(split);
    else {
        const int band = w.band >= 0 ? w.band : measured_band(w);
        Index used01 = 0, used10 = 0;
        for (int cut : cuts) {
            const Vec mask = cut_window(w.cells, cut, std::max(band, 1));
            TwoProjectionSplit part;
            part.H01 = localized_part(split.H01, mask);
            part.H10 = localized_part(split.H10, mask);
            used01 += part.H01.dim();
            used10 += part.H10.dim();
            parts.push_back(part);
        }
        if (used01 != split.H01.dim() || used10 != split.H10.dim())
            throw Error(ErrorKind::DecouplingFailed, "H01 + H10 is not localized at the cuts");
    }
    for (const TwoProjectionSplit& part : parts) {
        const Mat b = swap_basis(part);
        r.V += b * swap_V01(part, restrict_rep(trep, b), tol) * b.adjoint();
    }
    r.W_prime.cells = w.cells;
    r.W_prime.band = w.band >= 0 ? 3 * std::max(w.band, 1) : -1;
    r.W_prime.matrix = r.V * w.matrix;
    r.commutator = opnorm(p * r.W_prime.matrix - r.W_prime.matrix * p);
    const UnitaryEig ev = eig_unitary(r.V, 1e-8);
    r.min_real_eig_V = ev.values.size() ? ev.values.real().minCoeff() : 1.0;
    if (steps > 0) {
        r.path = contract_perturbation(r.V, trep, steps, tol.window, tol);
        for (const Mat& vt : r.path) {
            const Mat wt = vt * w.matrix;
            r.path_unitarity = std::max(r.path_unitarity, unitarity_defect(wt));
            r.path_admissibility = std::max(r.path_admissibility, check_admissible(wt, rep, OpKind::Walk).max());
        }
    }
    return r;
}

LatticeWalk decouple_segment(const LatticeWalk& w, int lo, int hi, const Tolerances& tol) {
    const Mat p = segment_projection(w.op.cells, lo, hi);
    std::vector<int> cuts;
    if (lo > w.op.cells.x_min() || hi <= w.op.cells.x_max()) cuts = {lo, hi};
    const DecouplingResult d = gentle_decoupling(w.op, w.rep.assembled, p, cuts, 0, tol);
    if (d.commutator > 1e-8) throw Error(ErrorKind::DecouplingFailed, "commutator " + std::to_string(d.commutator));
    LatticeWalk out;
    out.op = compress(d.W_prime, lo, hi);
    out.op.band = measured_band(out.op, 1e-10);
    out.rep = restrict_cells(w.rep, w.op.cells, lo, hi);
    for (int x : w.interfaces)
        if (x > lo && x < hi) out.interfaces.push_back(x);
    return out;
}

}  // namespace qwalk
