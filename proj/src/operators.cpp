#include "qwalk/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace qwalk {

double unitarity_defect(const Mat& w) {
    if (w.size() == 0) return 0.0;
    return opnorm(w.adjoint() * w - Mat::Identity(w.cols(), w.cols()));
}

void require_unitary(const Mat& w, double tol, const char* where) {
    if (w.rows() != w.cols()) throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": matrix not square");
    const double d = unitarity_defect(w);
    if (d > tol) throw Error(ErrorKind::NotUnitary, std::string(where) + ": defect " + std::to_string(d));
}

namespace {

double principal_angle(cplx z) {
    double a = std::arg(z);
    if (a <= -kPi) a = kPi;
    return a;
}

}  // namespace

UnitaryEig eig_unitary(const Mat& w, double tol_unit) {
    require_unitary(w, tol_unit, "eig_unitary");
    UnitaryEig out;
    const Index n = w.rows();
    if (n == 0) return out;
    // W is normal, so the Schur form is diagonal up to rounding and Z is an orthonormal eigenbasis.
    Eigen::ComplexSchur<Mat> schur(w);
    const Mat& t = schur.matrixT();
    const Mat& z = schur.matrixU();
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> ang(n);
    for (Index i = 0; i < n; ++i) ang[i] = principal_angle(t(i, i));
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return ang[a] < ang[b]; });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        out.values(i) = t(order[i], order[i]);
        out.vectors.col(i) = z.col(order[i]);
    }
    out.residual = opnorm(w - out.vectors * out.values.asDiagonal() * out.vectors.adjoint());
    return out;
}

double angle_between(cplx a, cplx b) { return std::abs(std::arg(a * std::conj(b))); }

SubspaceBasis eigenspace_at(const UnitaryEig& eig, cplx theta, double window) {
    std::vector<Index> pick;
    for (Index i = 0; i < eig.values.size(); ++i)
        if (angle_between(eig.values(i), theta) <= window) pick.push_back(i);
    SubspaceBasis b;
    b.vectors.resize(eig.vectors.rows(), static_cast<Index>(pick.size()));
    for (size_t j = 0; j < pick.size(); ++j) {
        b.vectors.col(static_cast<Index>(j)) = eig.vectors.col(pick[j]);
        b.residual = std::max(b.residual, std::abs(eig.values(pick[j]) - theta));
    }
    b.label = "eigenspace";
    return b;
}

SubspaceBasis eigenspace_at(const Mat& w, cplx theta, double window, double tol_unit) {
    return eigenspace_at(eig_unitary(w, tol_unit), theta, window);
}

SubspaceBasis kernel_basis(const Mat& m, double tol) {
    SubspaceBasis b;
    b.label = "kernel";
    const Index n = m.cols();
    if (n == 0) {
        b.vectors.resize(m.rows(), 0);
        return b;
    }
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    std::vector<Index> pick;
    for (Index i = 0; i < n; ++i) {
        const double si = i < s.size() ? s(i) : 0.0;
        if (si <= tol) pick.push_back(i);
    }
    b.vectors.resize(n, static_cast<Index>(pick.size()));
    for (size_t j = 0; j < pick.size(); ++j) {
        b.vectors.col(static_cast<Index>(j)) = svd.matrixV().col(pick[j]);
        const double si = pick[j] < s.size() ? s(pick[j]) : 0.0;
        b.residual = std::max(b.residual, si);
    }
    return b;
}

SubspaceBasis orthonormalize(const Mat& cols, double tol) {
    SubspaceBasis b;
    b.label = "span";
    if (cols.cols() == 0) {
        b.vectors.resize(cols.rows(), 0);
        return b;
    }
    Eigen::BDCSVD<Mat> svd(cols, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > tol * std::max(1.0, s(0))) ++r;
    b.vectors = svd.matrixU().leftCols(r);
    return b;
}

Mat polar_isometry(const Mat& x, double tol) {
    const Index n = x.rows();
    if (n == 0) return x;
    Eigen::BDCSVD<Mat> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Mat v = Mat::Zero(x.rows(), x.cols());
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) v += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    return v;
}

AdmissibilityReport check_admissible(const Mat& m, const SymmetryRep& rep, OpKind kind) {
    if (m.rows() != rep.dim || m.cols() != rep.dim)
        throw Error(ErrorKind::DimensionMismatch,
                    "operator dim " + std::to_string(m.rows()) + " vs rep dim " + std::to_string(rep.dim));
    AdmissibilityReport r;
    const bool walk = kind == OpKind::Walk;
    if (rep.eta) r.eta = opnorm(rep.eta->conjugate(m) - (walk ? m : Mat(-m)));
    if (rep.tau) r.tau = opnorm(rep.tau->conjugate(m) - (walk ? Mat(m.adjoint()) : m));
    if (rep.gamma) r.gamma = opnorm(rep.gamma->conjugate(m) - (walk ? Mat(m.adjoint()) : Mat(-m)));
    return r;
}

void require_admissible(const Mat& w, const SymmetryRep& rep, double tol, const char* where) {
    const auto r = check_admissible(w, rep, OpKind::Walk);
    if (!r.passes(tol)) throw Error(ErrorKind::NotAdmissible, std::string(where) + ": residual " + std::to_string(r.max()));
}

GapInfo gap_margin(const UnitaryEig& eig, int sign, double tol_exact) {
    GapInfo g;
    const cplx target(sign > 0 ? 1.0 : -1.0, 0.0);
    for (Index i = 0; i < eig.values.size(); ++i) {
        const double d = std::abs(eig.values(i) - target);
        if (d <= tol_exact)
            ++g.exact_count;
        else
            g.margin = std::min(g.margin, d);
    }
    return g;
}

GapInfo gap_margin(const Mat& w, int sign, double tol_exact, double tol_unit) {
    return gap_margin(eig_unitary(w, tol_unit), sign, tol_exact);
}

Mat spectral_flatten(const Mat& w, double eps, const Tolerances& tol) {
    const UnitaryEig e = eig_unitary(w, tol.unit);
    Vec d(e.values.size());
    for (Index i = 0; i < d.size(); ++i) {
        const cplx l = e.values(i);
        if (std::abs(l - 1.0) <= tol.exact)
            d(i) = 1.0;
        else if (std::abs(l + 1.0) <= tol.exact)
            d(i) = -1.0;
        else if (l.imag() > eps)
            d(i) = kI;
        else if (l.imag() < -eps)
            d(i) = -kI;
        else
            throw Error(ErrorKind::GapViolation, "eigenvalue in the band |Im| <= eps: " + std::to_string(l.real()) +
                                                     "+" + std::to_string(l.imag()) + "i");
    }
    return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

Mat symmetrize(const Mat& h, const SymmetryRep& rep, int s_eta, int s_tau) {
    const int s_gamma = s_eta * s_tau;
    if (rep.eta && rep.tau && rep.gamma) {
        return (h + double(s_eta) * rep.eta->conjugate(h) + double(s_tau) * rep.tau->conjugate(h) +
                double(s_gamma) * rep.gamma->conjugate(h)) /
               4.0;
    }
    Mat out = h;
    if (rep.eta) out = (out + double(s_eta) * rep.eta->conjugate(out)) / 2.0;
    if (rep.tau) out = (out + double(s_tau) * rep.tau->conjugate(out)) / 2.0;
    if (rep.gamma) out = (out + double(s_gamma) * rep.gamma->conjugate(out)) / 2.0;
    return out;
}

Mat expi_hermitian(const Mat& h) {
    if (h.size() == 0) return h;
    Eigen::SelfAdjointEigenSolver<Mat> es(real_part(h));
    Vec d = (kI * es.eigenvalues().cast<cplx>()).array().exp();
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Mat i_sign(const Mat& h, double tol) {
    if (h.size() == 0) return h;
    Eigen::SelfAdjointEigenSolver<Mat> es(real_part(h));
    Vec d(h.rows());
    for (Index i = 0; i < d.size(); ++i) {
        const double l = es.eigenvalues()(i);
        if (std::abs(l) <= tol) throw Error(ErrorKind::GapViolation, "Hamiltonian not invertible");
        d(i) = l > 0 ? kI : -kI;
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qwalk
