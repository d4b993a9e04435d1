/// Seeded generators of admissible Hamiltonians, walks, reps and invariant subspaces.
#pragma once

#include "qwalk/lattice.hpp"
#include "qwalk/symmetry.hpp"

#include <random>

namespace qwalk {

using Rng = std::mt19937_64;

Mat random_gaussian(Index rows, Index cols, Rng& rng);
Mat random_hermitian(Index n, Rng& rng);
/// Haar-like unitary from the QR factor of a Gaussian matrix.
Mat random_unitary(Index n, Rng& rng);

/// Rep of class c made of `units` one-dimensional (two for CII) pieces with random chirality,
/// conjugated by a random unitary.  Supported classes: A, D, AIII, BDI, CII.
SymmetryRep random_rep(SymClass c, int units, Rng& rng);

Mat random_admissible_hamiltonian(const SymmetryRep& rep, Rng& rng);
/// exp(i h) for a random admissible Hamiltonian h; unbalanced reps force +1 eigenvectors.
Mat random_admissible_walk(const SymmetryRep& rep, Rng& rng);

/// Admissible Hamiltonian supported on cells [lo, hi).
Mat random_local_hamiltonian(const LocalSymmetryRep& rep, const CellStructure& cells, int lo, int hi, double strength,
                             Rng& rng);
/// Palindromic brickwork e^{iK1} e^{iK2} e^{iK1} with K1, K2 acting on neighbouring cell pairs.
LatticeWalk random_banded_walk(const LocalSymmetryRep& rep, const CellStructure& cells, double strength, Rng& rng);
/// e^{iK} W e^{iK} with K admissible and supported on cells [lo, hi); keeps W admissible.
LatticeWalk dress_walk(const LatticeWalk& w, int lo, int hi, double strength, Rng& rng);

/// Orthonormal basis of a subspace invariant under every operator of `rep`.
/// With `graded`, the seed vector lies in a gamma eigenspace (when gamma^2 = 1), so the
/// subspace can carry a nonzero index.  `support` restricts the seed to an index range.
Mat random_invariant_subspace(const SymmetryRep& rep, bool graded, Rng& rng, Index support_lo = 0,
                              Index support_hi = -1);
/// 1 - 2 B B^*.
Mat reflection(const Mat& basis);

}  // namespace qwalk
