/// Shared aliases, tolerances and the error type used across qwalk.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qwalk {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

struct Tolerances {
    double unit = 1e-10;   // unitarity / rep relations
    double idx = 1e-6;     // rounding of traces to integers
    double eig = 1e-9;     // eigen reconstruction
    double orth = 1e-9;    // Gram deviation of bases
    double adm = 1e-8;     // admissibility residuals
    double exact = 1e-7;   // anchoring eigenvalues at +-1
    double band = 1e-12;   // zero blocks outside the band
    double split = 1e-8;   // +-1 eigenvalues of P - Q
    double window = 1e-7;  // eigenvalue window for si_pm, radians
    double gap = 1e-6;     // smallest acceptable Bloch gap
    double det = 1e-10;    // singular chiral block
    double ker = 1e-7;     // kernel of Im W
    double rep = 1e-6;     // relations of restricted (derived) reps
    double local = 5e-2;   // near-kernel of Im W for localized half-space counting
};

enum class ErrorKind {
    RelationViolation,
    NonIntegerTrace,
    IllegalForget,
    NotUnitary,
    DimensionMismatch,
    GapViolation,
    CutOutOfRange,
    TooShort,
    DecouplingFailed,
    IncompatibleCells,
    UnitarityRepairFailed,
    NotAdmissible,
    WindowAmbiguous,
    EigenspaceAmbiguous,
    Obstructed,
    NotDecoupled,
    Gapless,
    NotChiral,
    SingularBlock,
    RankJump,
    OddDimensionAII,
    Unbalanced,
    NotNormal,
    NotEnoughModes,
    InvalidInput,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Largest singular value.
template <class Derived>
double opnorm(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    using Plain = typename Derived::PlainObject;
    const Plain mm = m.rows() >= m.cols() ? Plain(m.adjoint() * m) : Plain(m * m.adjoint());
    Eigen::SelfAdjointEigenSolver<Plain> es(mm, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

template <class Derived>
auto adjoint_of(const Eigen::MatrixBase<Derived>& m) {
    return m.adjoint();
}

}  // namespace qwalk
