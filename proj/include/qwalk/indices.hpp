/// Walk indices: si+-, si, half-space indices, Fredholm and relative indices, contractions.
#pragma once

#include "qwalk/lattice.hpp"
#include "qwalk/operators.hpp"
#include "qwalk/symmetry.hpp"

#include <vector>

namespace qwalk {

struct SiPm {
    IndexValue minus;
    IndexValue plus;
    Index dim_minus = 0;
    Index dim_plus = 0;
    /// Deviation from the closed forms (det parity for D, tr gamma(1 +- W)/2 for chiral classes).
    double closed_form_residual = 0;
};

SiPm si_pm(const Mat& w, const SymmetryRep& rep, double window = Tolerances{}.window, const Tolerances& tol = {});

/// Index of the rep on ker Im W.
IndexValue si_total(const Mat& w, const SymmetryRep& rep, const Tolerances& tol = {});

/// Same, keeping only kernel directions with weight > 1/2 on cells [lo, hi).
struct LocalizedIndex {
    IndexValue value;
    Index kernel_dim = 0;
    Index local_dim = 0;
    /// Largest distance of a kernel weight from {0, 1}; near 1/2 means delocalized modes.
    double ambiguity = 0;
};
LocalizedIndex si_localized(const LatticeOperator& w, const SymmetryRep& rep, int lo, int hi, const Tolerances& tol = {});

struct LeftRight {
    IndexValue left;
    IndexValue right;
    double ambiguity = 0;
};

/// Half-space indices at the cut a.  On a finite chain each piece has a second boundary,
/// so only kernel directions living on the half of the piece next to the cut are counted.
LeftRight si_left_right(const LatticeOperator& w, const SymmetryRep& rep, int a, const Tolerances& tol = {});

struct FredholmReport {
    int index = 0;          // dim H01 - dim H10
    double trace = 0;       // tr(W P W^* - P) on the window around the cut
    Index dim_h01 = 0;
    Index dim_h10 = 0;
    int window_lo = 0;
    int window_hi = 0;
};

FredholmReport fredholm_index(const LatticeOperator& w, int a, const Tolerances& tol = {});
/// Local index of a cell-aligned projection p at the cut a; the window wraps around the ends.
FredholmReport fredholm_index(const LatticeOperator& w, const Mat& p, int a, const Tolerances& tol = {});

SymmetryRep twiddle_rep(const Mat& w, const SymmetryRep& rep, const Tolerances& tol = {});

IndexValue relative_index(const Mat& w, const Mat& w_prime, const SymmetryRep& rep,
                          double window = Tolerances{}.window, const Tolerances& tol = {});

struct LocpertReport {
    IndexValue relative;
    IndexValue minus_difference;  // si_-(W') - si_-(W)
    IndexValue plus_difference;   // -(si_+(W') - si_+(W))
    bool passes = false;
};

LocpertReport verify_locpert(const Mat& w, const Mat& w_prime, const SymmetryRep& rep,
                             double window = Tolerances{}.window, const Tolerances& tol = {});

/// Admissible unitary with spectrum {+-i} for a balanced rep; optionally anticommuting with `grading`.
Mat gapped_admissible_unitary(const SymmetryRep& rep, const Mat* grading = nullptr, const Tolerances& tol = {});

std::vector<Mat> contract_perturbation(const Mat& v, const SymmetryRep& trep, int steps,
                                       double window = Tolerances{}.window, const Tolerances& tol = {});

/// si-right of a gapped TI walk from its momentum space invariant.
IndexValue ti_right_index(const TIWalk& ti, const GridOptions& g = {}, const Tolerances& tol = {});

struct BulkBoundaryReport {
    IndexValue expected;   // -siR(left) + siR(right)
    IndexValue measured;   // index on the near +-1 eigenvectors around the first interface
    Index near_dim = 0;
    bool passes = false;
};

BulkBoundaryReport verify_bulk_boundary(const TIWalk& left, const TIWalk& right, const LatticeWalk& joined,
                                        double window, const Tolerances& tol = {});

struct IndexMatrix {
    IndexValue plus_left, plus_right, minus_left, minus_right;
    IndexValue left() const { return plus_left + minus_left; }
    IndexValue right() const { return plus_right + minus_right; }
    IndexValue plus() const { return plus_left + plus_right; }
    IndexValue minus() const { return minus_left + minus_right; }
    IndexValue total() const { return left() + right(); }
};

IndexMatrix index_matrix(const LatticeOperator& w, const SymmetryRep& rep, int a,
                         double window = Tolerances{}.window, const Tolerances& tol = {});

}  // namespace qwalk
