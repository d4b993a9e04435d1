/// Walk generators with known indices, shared by the unit tests and the acceptance binary.
#pragma once

#include "qwalk/indices.hpp"
#include "qwalk/random_walks.hpp"
#include "qwalk/ti_walks.hpp"

#include <vector>

namespace qwalk::fixtures {

inline const TIWalk& split_a() {
    static const TIWalk w = make_split_step(9 * kPi / 32, 7 * kPi / 32);
    return w;
}

inline const TIWalk& split_b() {
    static const TIWalk w = make_split_step(-5 * kPi / 16, 2 * kPi / 16);
    return w;
}

/// rho + inverse(rho): balanced, so every admissible Hamiltonian on it can be gapped.
inline SymmetryRep balanced_rep(SymClass c, int units, Rng& rng) {
    const SymmetryRep r = random_rep(c, units, rng);
    return direct_sum(r, inverse_rep(r));
}

/// W = U (e^{i h1} + (-e^{i h2})) U^* on rho1 + rho2.  Generic admissible h have kernels carrying
/// exactly the index of their rep, so si_+ = si(rho1) and si_- = si(rho2).
struct SignedWalk {
    Mat w;
    SymmetryRep rep;
    IndexValue plus, minus;
};

inline SignedWalk signed_walk(SymClass c, int units_plus, int units_minus, Rng& rng) {
    const SymmetryRep r1 = random_rep(c, units_plus, rng), r2 = random_rep(c, units_minus, rng);
    const Mat w1 = random_admissible_walk(r1, rng), w2 = -random_admissible_walk(r2, rng);
    Mat w = Mat::Zero(r1.dim + r2.dim, r1.dim + r2.dim);
    w.topLeftCorner(r1.dim, r1.dim) = w1;
    w.bottomRightCorner(r2.dim, r2.dim) = w2;
    const Mat u = random_unitary(w.rows(), rng);
    return SignedWalk{u * w * u.adjoint(), conjugate_rep(direct_sum(r1, r2), u), rep_index(r1), rep_index(r2)};
}

/// Two brickwork layers of two-cell sandwiches e^{iK} W e^{iK} over cells [lo, hi); stays admissible and banded.
inline LatticeWalk brickwork_dress(LatticeWalk w, int lo, int hi, double strength, Rng& rng) {
    for (int parity : {0, 1})
        for (int x = lo + parity; x + 1 < hi; x += 2) w = dress_walk(w, x, x + 2, strength, rng);
    return w;
}

/// Gapped translation invariant walks of several classes.
inline std::vector<TIWalk> gapped_walks() {
    return {make_generating_example(), split_a(), split_b(), make_doubled(Doubling::CII),
            make_doubled(Doubling::DIII), make_trivial(SymClass::BDI), make_trivial(SymClass::D)};
}

/// Exactly unitary truncations of the gapped walks.
inline std::vector<LatticeWalk> gapped_truncations(int n_cells) {
    std::vector<LatticeWalk> out;
    for (const TIWalk& ti : gapped_walks()) out.push_back(truncate_ti(ti, n_cells, Boundary::DecoupledUnitary));
    return out;
}

}  // namespace qwalk::fixtures
