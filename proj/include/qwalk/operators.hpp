/// Dense kernels: unitary eigensystems, kernels, polar isometries, admissibility.
#pragma once

#include "qwalk/symmetry.hpp"
#include "qwalk/types.hpp"

#include <string>

namespace qwalk {

struct SubspaceBasis {
    Mat vectors;          // orthonormal columns
    double residual = 0;  // max defect norm of the columns
    std::string label;

    Index dim() const { return vectors.cols(); }
};

struct UnitaryEig {
    Vec values;  // sorted by angle in (-pi, pi]
    Mat vectors;
    double residual = 0;  // || W - V L V^* ||
};

double unitarity_defect(const Mat& w);
void require_unitary(const Mat& w, double tol, const char* where);

UnitaryEig eig_unitary(const Mat& w, double tol_unit = Tolerances{}.unit);

/// Angular distance of the unit complex numbers a, b in [0, pi].
double angle_between(cplx a, cplx b);

SubspaceBasis eigenspace_at(const Mat& w, cplx theta, double window, double tol_unit = Tolerances{}.unit);
SubspaceBasis eigenspace_at(const UnitaryEig& eig, cplx theta, double window);

SubspaceBasis kernel_basis(const Mat& m, double tol);
SubspaceBasis orthonormalize(const Mat& cols, double tol = 1e-12);

/// X (X^*X)^{-1/2} on the complement of the numerical kernel of X.
Mat polar_isometry(const Mat& x, double tol);

template <class Derived>
auto imaginary_part(const Eigen::MatrixBase<Derived>& w) {
    using Plain = typename Derived::PlainObject;
    using Scalar = typename Derived::Scalar;
    Plain h = (w - w.adjoint()) / Scalar(0, 2);
    return Plain((h + h.adjoint()) / typename Eigen::NumTraits<Scalar>::Real(2));
}

template <class Derived>
auto real_part(const Eigen::MatrixBase<Derived>& w) {
    using Plain = typename Derived::PlainObject;
    return Plain((w + w.adjoint()) / typename Eigen::NumTraits<typename Derived::Scalar>::Real(2));
}

enum class OpKind { Walk, Hamiltonian };

struct AdmissibilityReport {
    double eta = 0;
    double tau = 0;
    double gamma = 0;
    double max() const { return std::max({eta, tau, gamma}); }
    bool passes(double tol) const { return max() <= tol; }
};

AdmissibilityReport check_admissible(const Mat& m, const SymmetryRep& rep, OpKind kind);
void require_admissible(const Mat& w, const SymmetryRep& rep, double tol, const char* where);

struct GapInfo {
    double margin = 2.0;
    int exact_count = 0;
};

/// Distance from +1 (sign > 0) or -1 to the spectrum, ignoring anchored eigenvalues.
GapInfo gap_margin(const Mat& w, int sign, double tol_exact = Tolerances{}.exact,
                   double tol_unit = Tolerances{}.unit);
GapInfo gap_margin(const UnitaryEig& eig, int sign, double tol_exact = Tolerances{}.exact);

Mat spectral_flatten(const Mat& w, double eps, const Tolerances& tol = {});

/// Projection of h onto operators obeying sigma h sigma^* = s_sigma h for the present symmetries.
Mat symmetrize(const Mat& h, const SymmetryRep& rep, int s_eta, int s_tau);
inline Mat symmetrize_hamiltonian(const Mat& h, const SymmetryRep& rep) { return symmetrize(h, rep, -1, 1); }
/// Generators K for which exp(iK) commutes with every symmetry.
inline Mat symmetrize_commutant(const Mat& h, const SymmetryRep& rep) { return symmetrize(h, rep, -1, -1); }

Mat expi_hermitian(const Mat& h);

/// i sign(h) for an invertible Hermitian h; throws GapViolation if h has eigenvalues below tol.
Mat i_sign(const Mat& h, double tol);

}  // namespace qwalk
