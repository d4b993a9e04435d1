/// Translation invariant walks: Bloch matrices, gaps, winding numbers, Berry phases and example walks.
#pragma once

#include "qwalk/symmetry.hpp"
#include "qwalk/types.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qwalk {

/// Block j sits at (row cell x + j, column cell x), so W^(k) = sum_j blocks[j] e^{ijk}.
struct TIWalk {
    Index cell_dim = 0;
    std::map<int, Mat> blocks;
    SymmetryRep cell_rep;
    /// Set for split-step walks (theta1, theta2) so joins can be made coin by coin.
    std::optional<std::array<double, 2>> coin_params;
    std::string name;

    SymClass cls() const { return cell_rep.cls; }
    int band() const;
};

struct BandData {
    std::vector<double> k_grid;
    std::vector<Vec> eigenvalues;
    std::vector<Mat> upper_basis;  // orthonormal basis of the Im > 0 eigenspace
};

Mat bloch_matrix(const TIWalk& ti, double k);
/// The walk W^* as a TI walk: blocks_j -> blocks_{-j}^*.
TIWalk adjoint_walk(const TIWalk& ti);
TIWalk direct_sum(const TIWalk& a, const TIWalk& b, const SymmetryRep& rep);
/// Read the walk as one of a forgetful target class.
TIWalk forget_walk(const TIWalk& ti, SymClass to);

/// Unitarity and admissibility residuals on a short periodic ring.
struct TIValidation {
    double unitarity = 0;
    double admissibility = 0;
    double relations = 0;
};
TIValidation validate_ti(const TIWalk& ti);

struct GridOptions {
    int n_k = 256;
    int n_k_max = 8192;
};

double ti_gap_margin(const TIWalk& ti, const GridOptions& g = {}, const Tolerances& tol = {});

struct InvariantResult {
    long value = 0;
    double raw = 0;       // value before rounding
    double residual = 0;  // |raw - value|
    int n_k = 0;          // final grid size
    IndexValue index;     // group tagged value
};

/// Upper right block of W^(k) in the gamma eigenbasis: rows gamma = +1, columns gamma = -1.
Mat chiral_block(const TIWalk& ti, double k);
InvariantResult winding_number(const TIWalk& ti, const GridOptions& g = {}, const Tolerances& tol = {});

BandData band_data(const TIWalk& ti, const std::vector<double>& ks, const Tolerances& tol = {});
/// Class D: full Brillouin loop, mod 2.  Class DIII: half interval between Kramers frames, doubled, mod 4.
InvariantResult berry_phase(const TIWalk& ti, const GridOptions& g = {}, const Tolerances& tol = {});

TIWalk make_generating_example();
enum class Doubling { CII, DIII };
TIWalk make_doubled(Doubling variant);
TIWalk make_split_step(double theta1, double theta2);
/// Chiral operator sigma_x R(theta1) that makes the split-step walk admissible.
Mat split_step_gamma(double theta1);
SymmetryRep split_step_rep(double theta1);
/// Translation psi(x) -> psi(x + step), i.e. |x> -> |x - step>.
TIWalk make_shift(int step = 1);
/// Constant gapped walk with spectrum {+i, -i} for the given class.
TIWalk make_trivial(SymClass c);

Mat rotation(double theta);

}  // namespace qwalk
