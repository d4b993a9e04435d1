#include "qwalk/random_walks.hpp"

#include "qwalk/operators.hpp"

#include <Eigen/QR>

namespace qwalk {

Mat random_gaussian(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> g;
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

Mat random_hermitian(Index n, Rng& rng) { return real_part(random_gaussian(n, n, rng)); }

Mat random_unitary(Index n, Rng& rng) {
    if (n == 0) return Mat::Zero(0, 0);
    Eigen::HouseholderQR<Mat> qr(random_gaussian(n, n, rng));
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (Index i = 0; i < n; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
    return q;
}

namespace {

SymmetryRep atom(SymClass c, int sign) {
    SymmetryRep r;
    r.cls = c;
    const double s = sign;
    switch (c) {
        case SymClass::A: r.dim = 1; break;
        case SymClass::D:
            r.dim = 1;
            r.eta = SymOp{Mat::Identity(1, 1), true};
            break;
        case SymClass::AIII:
            r.dim = 1;
            r.gamma = SymOp{s * Mat::Identity(1, 1), false};
            break;
        case SymClass::BDI:
            r.dim = 1;
            r.tau = SymOp{Mat::Identity(1, 1), true};
            r.gamma = SymOp{s * Mat::Identity(1, 1), false};
            r.eta = *r.tau * *r.gamma;
            break;
        case SymClass::CII: {
            r.dim = 2;
            Mat j(2, 2);
            j << 0, -1, 1, 0;
            r.eta = SymOp{j, true};
            r.gamma = SymOp{s * Mat::Identity(2, 2), false};
            r.tau = r.eta->inverse() * *r.gamma;
            break;
        }
        default: throw Error(ErrorKind::InvalidInput, "random_rep does not support class " + to_string(c));
    }
    return r;
}

SymmetryRep slice(const SymmetryRep& rep, Index off, Index len) {
    SymmetryRep out;
    out.cls = rep.cls;
    out.dim = len;
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma})
        if (rep.op(s)) out.op(s) = SymOp{rep.op(s)->matrix.block(off, off, len, len), rep.op(s)->antiunitary};
    return out;
}

}  // namespace

SymmetryRep random_rep(SymClass c, int units, Rng& rng) {
    std::bernoulli_distribution coin;
    SymmetryRep r = atom(c, coin(rng) ? 1 : -1);
    for (int u = 1; u < units; ++u) r = direct_sum(r, atom(c, coin(rng) ? 1 : -1));
    return conjugate_rep(r, random_unitary(r.dim, rng));
}

Mat random_admissible_hamiltonian(const SymmetryRep& rep, Rng& rng) {
    return real_part(symmetrize_hamiltonian(random_hermitian(rep.dim, rng), rep));
}

Mat random_admissible_walk(const SymmetryRep& rep, Rng& rng) {
    return expi_hermitian(random_admissible_hamiltonian(rep, rng));
}

Mat random_local_hamiltonian(const LocalSymmetryRep& rep, const CellStructure& cells, int lo, int hi, double strength,
                             Rng& rng) {
    const Index n = cells.total();
    Mat k = Mat::Zero(n, n);
    lo = std::max(lo, cells.x_min());
    hi = std::min(hi, cells.x_max() + 1);
    if (lo >= hi) return k;
    const Index off = cells.offset(lo), len = cells.offset(hi - 1) + cells.dim(hi - 1) - off;
    k.block(off, off, len, len) = strength * random_admissible_hamiltonian(slice(rep.assembled, off, len), rng);
    return k;
}

LatticeWalk random_banded_walk(const LocalSymmetryRep& rep, const CellStructure& cells, double strength, Rng& rng) {
    const Index n = cells.total();
    Mat k1 = Mat::Zero(n, n), k2 = Mat::Zero(n, n);
    for (int x = cells.x_min(); x <= cells.x_max(); ++x) {
        Mat& k = (x - cells.x_min()) % 2 == 0 ? k1 : k2;
        k += random_local_hamiltonian(rep, cells, x, x + 2, strength, rng);
    }
    const Mat e1 = expi_hermitian(k1);
    LatticeWalk w;
    w.op.cells = cells;
    w.op.matrix = e1 * expi_hermitian(k2) * e1;
    w.op.band = 3;
    w.rep = rep;
    return w;
}

LatticeWalk dress_walk(const LatticeWalk& w, int lo, int hi, double strength, Rng& rng) {
    const Mat e = expi_hermitian(random_local_hamiltonian(w.rep, w.op.cells, lo, hi, strength, rng));
    LatticeWalk out = w;
    out.op.matrix = e * w.op.matrix * e;
    out.op.band = measured_band(out.op, 1e-10);
    return out;
}

Mat random_invariant_subspace(const SymmetryRep& rep, bool graded, Rng& rng, Index support_lo, Index support_hi) {
    const Index n = rep.dim;
    if (support_hi < 0) support_hi = n;
    std::bernoulli_distribution coin;
    Vec v = Vec::Zero(n);
    for (int attempt = 0; attempt < 8; ++attempt) {
        v.setZero();
        v.segment(support_lo, support_hi - support_lo) = random_gaussian(support_hi - support_lo, 1, rng);
        if (graded && rep.gamma && class_info(rep.cls).gamma_sq == 1) {
            const double s = coin(rng) ? 1.0 : -1.0;
            v = (v + s * rep.gamma->apply(v)) / 2.0;
        }
        if (rep.eta && class_info(rep.cls).eta_sq == 1 && coin(rng)) v = v + rep.eta->apply(v);
        if (v.norm() > 1e-6) break;
    }
    Mat orbit(n, 1);
    orbit.col(0) = v;
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
        if (!rep.op(s)) continue;
        orbit.conservativeResize(n, orbit.cols() + 1);
        orbit.col(orbit.cols() - 1) = rep.op(s)->apply(v);
    }
    return orthonormalize(orbit, 1e-8).vectors;
}

Mat reflection(const Mat& basis) {
    return Mat::Identity(basis.rows(), basis.rows()) - 2.0 * basis * basis.adjoint();
}

}  // namespace qwalk
