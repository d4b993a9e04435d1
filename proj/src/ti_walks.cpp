#include "qwalk/ti_walks.hpp"

#include "qwalk/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qwalk {

int TIWalk::band() const {
    int b = 0;
    for (const auto& [j, m] : blocks)
        if (m.norm() > 0) b = std::max(b, std::abs(j));
    return b;
}

Mat bloch_matrix(const TIWalk& ti, double k) {
    Mat w = Mat::Zero(ti.cell_dim, ti.cell_dim);
    for (const auto& [j, b] : ti.blocks) w += b * std::exp(kI * (double(j) * k));
    return w;
}

TIWalk adjoint_walk(const TIWalk& ti) {
    TIWalk out = ti;
    out.blocks.clear();
    for (const auto& [j, b] : ti.blocks) out.blocks[-j] = b.adjoint();
    out.coin_params.reset();
    out.name = ti.name + "*";
    return out;
}

TIWalk direct_sum(const TIWalk& a, const TIWalk& b, const SymmetryRep& rep) {
    TIWalk out;
    out.cell_dim = a.cell_dim + b.cell_dim;
    if (rep.dim != out.cell_dim) throw Error(ErrorKind::DimensionMismatch, "direct_sum: rep dimension");
    out.cell_rep = rep;
    auto put = [&](int j) -> Mat& {
        auto it = out.blocks.find(j);
        if (it == out.blocks.end()) it = out.blocks.emplace(j, Mat::Zero(out.cell_dim, out.cell_dim)).first;
        return it->second;
    };
    for (const auto& [j, m] : a.blocks) put(j).topLeftCorner(a.cell_dim, a.cell_dim) = m;
    for (const auto& [j, m] : b.blocks) put(j).bottomRightCorner(b.cell_dim, b.cell_dim) = m;
    out.name = a.name + "+" + b.name;
    return out;
}

TIWalk forget_walk(const TIWalk& ti, SymClass to) {
    TIWalk out = ti;
    out.cell_rep = forget_rep(ti.cell_rep, to);
    return out;
}

TIValidation validate_ti(const TIWalk& ti) {
    TIValidation v;
    v.relations = check_rep_relations(ti.cell_rep).max();
    const SymmetryRep& r = ti.cell_rep;
    for (int s = 0; s < 7; ++s) {
        const double k = -kPi + 2 * kPi * (s + 0.37) / 7.0;
        const Mat w = bloch_matrix(ti, k);
        const Mat wm = bloch_matrix(ti, -k);
        v.unitarity = std::max(v.unitarity, unitarity_defect(w));
        auto anti = [&](const SymOp& o) { return Mat(o.matrix * wm.conjugate() * o.matrix.adjoint()); };
        if (r.eta) v.admissibility = std::max(v.admissibility, opnorm(anti(*r.eta) - w));
        if (r.tau) v.admissibility = std::max(v.admissibility, opnorm(anti(*r.tau) - w.adjoint()));
        if (r.gamma)
            v.admissibility =
                std::max(v.admissibility, opnorm(r.gamma->matrix * w * r.gamma->matrix.adjoint() - w.adjoint()));
    }
    return v;
}

namespace {

double grid_k(int j, int n) { return -kPi + 2.0 * kPi * j / n; }

double margin_on_grid(const TIWalk& ti, int n) {
    double m = 2.0;
    for (int j = 0; j < n; ++j) {
        Eigen::ComplexEigenSolver<Mat> es(bloch_matrix(ti, grid_k(j, n)), false);
        for (Index i = 0; i < es.eigenvalues().size(); ++i) {
            const cplx l = es.eigenvalues()(i);
            m = std::min({m, std::abs(l - 1.0), std::abs(l + 1.0)});
        }
    }
    return m;
}

}  // namespace

double ti_gap_margin(const TIWalk& ti, const GridOptions& g, const Tolerances& tol) {
    int n = std::max(g.n_k, 64);
    double m = margin_on_grid(ti, n);
    while (n < g.n_k_max) {
        n *= 2;
        const double m2 = margin_on_grid(ti, n);
        const double change = std::abs(m2 - m) / std::max(m, 1e-300);
        m = m2;
        if (change < 0.01) break;
    }
    if (m < tol.gap) throw Error(ErrorKind::Gapless, "Bloch gap margin " + std::to_string(m));
    return m;
}

namespace {

struct ChiralBasis {
    Mat plus, minus;
};

ChiralBasis chiral_basis(const TIWalk& ti) {
    const SymClass c = ti.cls();
    if (c != SymClass::AIII && c != SymClass::BDI && c != SymClass::CII)
        throw Error(ErrorKind::NotChiral, "winding needs class AIII, BDI or CII, got " + to_string(c));
    Eigen::SelfAdjointEigenSolver<Mat> es(real_part(ti.cell_rep.gamma->matrix));
    ChiralBasis b;
    const Index n = ti.cell_dim;
    Index n_minus = 0;
    while (n_minus < n && es.eigenvalues()(n_minus) < 0) ++n_minus;
    if (2 * n_minus != n) throw Error(ErrorKind::NotChiral, "unbalanced chiral operator on the cell");
    b.minus = es.eigenvectors().leftCols(n_minus);
    b.plus = es.eigenvectors().rightCols(n - n_minus);
    return b;
}

}  // namespace

Mat chiral_block(const TIWalk& ti, double k) {
    const ChiralBasis b = chiral_basis(ti);
    return b.plus.adjoint() * bloch_matrix(ti, k) * b.minus;
}

InvariantResult winding_number(const TIWalk& ti, const GridOptions& g, const Tolerances& tol) {
    const ChiralBasis b = chiral_basis(ti);
    int n = std::max(g.n_k, 8);
    InvariantResult r;
    while (true) {
        std::vector<cplx> dets(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const cplx d = (b.plus.adjoint() * bloch_matrix(ti, grid_k(j, n)) * b.minus).determinant();
            if (std::abs(d) < tol.det)
                throw Error(ErrorKind::SingularBlock, "det of chiral block vanishes at k = " + std::to_string(grid_k(j, n)));
            dets[static_cast<size_t>(j)] = d;
        }
        double total = 0, worst = 0;
        for (int j = 0; j < n; ++j) {
            const double step = std::arg(dets[static_cast<size_t>((j + 1) % n)] / dets[static_cast<size_t>(j)]);
            worst = std::max(worst, std::abs(step));
            total += step;
        }
        r.raw = total / (2 * kPi);
        r.n_k = n;
        if (worst < kPi / 2 || n >= g.n_k_max) break;
        n *= 2;
    }
    r.value = std::lround(r.raw);
    r.residual = std::abs(r.raw - double(r.value));
    if (r.residual > 0.01) throw Error(ErrorKind::NonIntegerTrace, "winding residual " + std::to_string(r.residual));
    r.index = IndexValue(index_group_of(ti.cls()), r.value);
    return r;
}

BandData band_data(const TIWalk& ti, const std::vector<double>& ks, const Tolerances& tol) {
    BandData bd;
    bd.k_grid = ks;
    Index rank = -1;
    for (double k : ks) {
        const UnitaryEig e = eig_unitary(bloch_matrix(ti, k), 1e-8);
        std::vector<Index> up;
        for (Index i = 0; i < e.values.size(); ++i) {
            const cplx l = e.values(i);
            if (std::abs(l.imag()) < tol.gap) throw Error(ErrorKind::Gapless, "eigenvalue at +-1 for k = " + std::to_string(k));
            if (l.imag() > 0) up.push_back(i);
        }
        if (rank >= 0 && static_cast<Index>(up.size()) != rank) throw Error(ErrorKind::RankJump, "upper band rank changes");
        rank = static_cast<Index>(up.size());
        Mat f(ti.cell_dim, rank);
        for (Index c = 0; c < rank; ++c) f.col(c) = e.vectors.col(up[static_cast<size_t>(c)]);
        bd.eigenvalues.push_back(e.values);
        bd.upper_basis.push_back(f);
    }
    return bd;
}

namespace {

/// Basis (v1, tau v1, v2, tau v2, ...) of a tau-invariant subspace with tau^2 = -1.
Mat kramers_frame(const Mat& basis, const SymOp& tau) {
    const Index n = basis.rows(), r = basis.cols();
    Mat frame(n, 0);
    for (Index c = 0; c < r && frame.cols() < r; ++c) {
        Vec v = basis.col(c);
        if (frame.cols() > 0) v -= frame * (frame.adjoint() * v);
        if (v.norm() < 0.5) continue;
        v.normalize();
        Vec w = tau.apply(v);
        if (frame.cols() > 0) w -= frame * (frame.adjoint() * w);
        w -= v * v.dot(w);
        w.normalize();
        frame.conservativeResize(n, frame.cols() + 2);
        frame.col(frame.cols() - 2) = v;
        frame.col(frame.cols() - 1) = w;
    }
    if (frame.cols() != r) throw Error(ErrorKind::RankJump, "upper band is not a sum of Kramers pairs");
    return frame;
}

cplx overlap_product(const std::vector<Mat>& frames) {
    cplx prod = 1.0;
    for (size_t j = 0; j + 1 < frames.size(); ++j) {
        const cplx d = (frames[j].adjoint() * frames[j + 1]).determinant();
        if (std::abs(d) < 1e-3) throw Error(ErrorKind::RankJump, "band frames nearly orthogonal between samples");
        prod *= d / std::abs(d);
    }
    return prod;
}

}  // namespace

InvariantResult berry_phase(const TIWalk& ti, const GridOptions& g, const Tolerances& tol) {
    const SymClass c = ti.cls();
    if (c != SymClass::D && c != SymClass::DIII)
        throw Error(ErrorKind::InvalidInput, "Berry phase index needs class D or DIII, got " + to_string(c));
    int n = std::max(g.n_k, 8);
    InvariantResult r;
    while (true) {
        std::vector<double> ks;
        if (c == SymClass::D) {
            for (int j = 0; j <= n; ++j) ks.push_back(grid_k(j, n));
        } else {
            for (int j = 0; j <= n; ++j) ks.push_back(kPi * j / n);
        }
        BandData bd = band_data(ti, ks, tol);
        std::vector<Mat>& frames = bd.upper_basis;
        double scale;
        if (c == SymClass::D) {
            frames.back() = frames.front();
            scale = 1.0 / kPi;
        } else {
            frames.front() = kramers_frame(frames.front(), *ti.cell_rep.tau);
            frames.back() = kramers_frame(frames.back(), *ti.cell_rep.tau);
            scale = 2.0 / kPi;
        }
        r.raw = std::arg(overlap_product(frames)) * scale;
        r.n_k = n;
        r.value = std::lround(r.raw);
        r.residual = std::abs(r.raw - double(r.value));
        if (r.residual <= 0.01 || n >= g.n_k_max) break;
        n *= 2;
    }
    if (r.residual > 0.01) throw Error(ErrorKind::NonIntegerTrace, "Berry residual " + std::to_string(r.residual));
    r.index = IndexValue(index_group_of(c), r.value);
    r.value = r.index.value();
    return r;
}

Mat rotation(double theta) {
    Mat r(2, 2);
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return r;
}

TIWalk make_generating_example() {
    TIWalk t;
    t.cell_dim = 2;
    Mat up = Mat::Zero(2, 2), down = Mat::Zero(2, 2);
    up(0, 1) = kI;    // |x,-1> -> i|x+1,+1>
    down(1, 0) = kI;  // |x,+1> -> i|x-1,-1>
    t.blocks[1] = up;
    t.blocks[-1] = down;
    t.cell_rep = standard_cell_rep(SymClass::BDI);
    t.name = "generating";
    return t;
}

TIWalk make_doubled(Doubling variant) {
    const TIWalk w = make_generating_example();
    if (variant == Doubling::CII) {
        TIWalk d = direct_sum(w, w, standard_cell_rep(SymClass::CII));
        d.name = "generating-CII";
        return d;
    }
    TIWalk d = direct_sum(w, adjoint_walk(w), standard_cell_rep(SymClass::DIII));
    d.name = "generating-DIII";
    return d;
}

Mat split_step_gamma(double theta1) {
    Mat sx(2, 2);
    sx << 0, 1, 1, 0;
    return sx * rotation(theta1);
}

SymmetryRep split_step_rep(double theta1) {
    SymmetryRep r;
    r.cls = SymClass::BDI;
    r.dim = 2;
    r.eta = SymOp{Mat::Identity(2, 2), true};
    r.gamma = SymOp{split_step_gamma(theta1), false};
    r.tau = r.eta->inverse() * *r.gamma;
    return r;
}

TIWalk make_split_step(double theta1, double theta2) {
    TIWalk t;
    t.cell_dim = 2;
    Mat euu = Mat::Zero(2, 2), edd = Mat::Zero(2, 2);
    euu(0, 0) = 1;
    edd(1, 1) = 1;
    const Mat r1 = rotation(theta1), r2 = rotation(theta2);
    t.blocks[1] = euu * r2 * euu * r1;
    t.blocks[0] = (euu * r2 * edd + edd * r2 * euu) * r1;
    t.blocks[-1] = edd * r2 * edd * r1;
    t.cell_rep = split_step_rep(theta1);
    t.coin_params = std::array<double, 2>{theta1, theta2};
    t.name = "split-step";
    return t;
}

TIWalk make_shift(int step) {
    TIWalk t;
    t.cell_dim = 1;
    t.blocks[-step] = Mat::Identity(1, 1);
    t.cell_rep = standard_cell_rep(SymClass::A);
    t.name = "shift";
    return t;
}

TIWalk make_trivial(SymClass c) {
    TIWalk t;
    t.cell_rep = standard_cell_rep(c);
    t.cell_dim = t.cell_rep.dim;
    Mat sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, -kI, kI, 0;
    sz << 1, 0, 0, -1;
    Mat w;
    switch (c) {
        case SymClass::A:
        case SymClass::AI: w = kI * Mat::Identity(1, 1); break;
        case SymClass::AII: w = kI * Mat::Identity(2, 2); break;
        case SymClass::D: w = kI * sy; break;
        case SymClass::C:
        case SymClass::CI: w = kI * sz; break;
        case SymClass::AIII:
        case SymClass::BDI: w = kI * sx; break;
        case SymClass::CII:
            w = Mat::Zero(4, 4);
            w.topLeftCorner(2, 2) = kI * sx;
            w.bottomRightCorner(2, 2) = kI * sx;
            break;
        case SymClass::DIII:
            w = Mat::Zero(4, 4);
            w.topLeftCorner(2, 2) = kI * sx;
            w.bottomRightCorner(2, 2) = -kI * sx;
            break;
    }
    t.blocks[0] = w;
    t.name = "trivial-" + to_string(c);
    return t;
}

}  // namespace qwalk
