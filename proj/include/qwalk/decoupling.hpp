/// Two-projection algebra, Kato's X and the gentle decoupling of a walk at a cut.
#pragma once

#include "qwalk/lattice.hpp"
#include "qwalk/operators.hpp"

#include <vector>

namespace qwalk {

struct ProjectionPair {
    Mat P;
    Mat Q;

    Mat A() const { return P - Q; }
    Mat B() const { return Mat::Identity(P.rows(), P.cols()) - P - Q; }
};

ProjectionPair projection_pair(const Mat& w, const Mat& p);

struct PairResiduals {
    double idempotent = 0;     // max(||P^2 - P||, ||Q^2 - Q||)
    double anticommutator = 0; // ||AB + BA||
    double sum_squares = 0;    // ||A^2 + B^2 - 1||
};
PairResiduals check_pair(const ProjectionPair& pair);

struct TwoProjectionSplit {
    SubspaceBasis H00, H11, H10, H01, Hperp;
};

TwoProjectionSplit split_subspaces(const ProjectionPair& pair, double tol = Tolerances{}.split);

Mat kato_X(const ProjectionPair& pair);

struct KatoResiduals {
    double intertwining = 0;  // max(||XQ - PQ||, ||PX - PQ||)
    double normality = 0;     // ||X^*X - XX^*||
    double circle = 0;        // max | |lambda - 1/2| - 1/2 |
};
KatoResiduals check_kato(const ProjectionPair& pair, const Mat& x);

/// Polar isometry of X on the complement of H01 + H10.
Mat canonical_V(const ProjectionPair& pair, const TwoProjectionSplit& split, const Tolerances& tol = {});

/// Columns [H01 | H10].
Mat swap_basis(const TwoProjectionSplit& split);

/// Unitary on H01 + H10 (in the swap_basis coordinates) with square -1 exchanging the two spaces.
/// `trep` is the twiddle rep restricted to swap_basis(split).
Mat swap_V01(const TwoProjectionSplit& split, const SymmetryRep& trep, const Tolerances& tol = {});

struct DecouplingResult {
    Mat V;
    LatticeOperator W_prime;
    std::vector<Mat> path;  // V_t, t = 0..steps, V_0 = V, V_steps = 1
    double commutator = 0;  // ||[P, W']||
    double min_real_eig_V = 0;
    double path_unitarity = 0;
    double path_admissibility = 0;
    Index dim_h01 = 0;
    Index dim_h10 = 0;
};

/// W' = V W commuting with P_{>=a}.  Throws DimensionMismatch when the index at the cut is nonzero.
DecouplingResult gentle_decoupling(const LatticeOperator& w, const SymmetryRep& rep, int a, int steps = 32,
                                   const Tolerances& tol = {});

/// Same for an arbitrary cell-aligned projection; `cuts` are the boundary cells checked for index zero.
DecouplingResult gentle_decoupling(const LatticeOperator& w, const SymmetryRep& rep, const Mat& p,
                                   const std::vector<int>& cuts, int steps, const Tolerances& tol = {});

/// Decouple cells [lo, hi) from the rest and return the exactly unitary piece.
LatticeWalk decouple_segment(const LatticeWalk& w, int lo, int hi, const Tolerances& tol = {});

}  // namespace qwalk
