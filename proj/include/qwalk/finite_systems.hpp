/// Temple-Kato certificates and finite crossover experiments.
#pragma once

#include "qwalk/lattice.hpp"
#include "qwalk/operators.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qwalk {

struct TempleKatoCertificate {
    int K = 0;
    cplx theta{1.0, 0.0};
    double eps1 = 0;
    double eps2 = 0;
    double r_min = 0;
    bool valid = false;
};

TempleKatoCertificate temple_kato(const Mat& u, cplx theta, const Mat& vectors, double tol_unit = Tolerances{}.unit);

/// Eigenvectors of `big` at theta, cut down to cells [lo, hi), tested against the decoupled window walk.
TempleKatoCertificate certify_boundary_modes(const LatticeWalk& big, int lo, int hi, cplx theta, int k_expected,
                                             double mode_tol = Tolerances{}.exact, const Tolerances& tol = {});

std::vector<double> localization_profile(const Vec& v, const CellStructure& cells);

struct SweepRecord {
    int n_A = 0;
    int n_B = 0;
    double delta = 0;  // log(1 - max |Re lambda|)
    int count_near_plus = 0;
    int count_near_minus = 0;
    int max_localization_radius = 0;
    std::vector<cplx> near_eigenvalues;
    std::vector<std::vector<double>> localization;  // per near mode, per cell
};

struct SweepOptions {
    double near_threshold = 1e-3;  // 1 - |Re lambda| below this counts as a protected mode
    double localization_mass = 0.9;
};

/// log(1 - max |Re lambda|), evaluated through the eigenvalue angles to keep precision.
double boundary_delta(const Vec& eigenvalues);

SweepRecord sweep_record(const LatticeWalk& joined, int n_A, int n_B, const SweepOptions& opt = {},
                         const Tolerances& tol = {});
std::vector<SweepRecord> crossover_sweep(const TIWalk& left, const TIWalk& right,
                                         const std::vector<std::pair<int, int>>& sizes, Topology topo,
                                         const SweepOptions& opt = {}, const Tolerances& tol = {});

std::string sweep_csv(const std::vector<SweepRecord>& records);

}  // namespace qwalk
