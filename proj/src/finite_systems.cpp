#include "qwalk/finite_systems.hpp"

#include "qwalk/decoupling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qwalk {

TempleKatoCertificate temple_kato(const Mat& u, cplx theta, const Mat& vectors, double tol_unit) {
    if (u.rows() != vectors.rows()) throw Error(ErrorKind::DimensionMismatch, "vectors do not match the operator");
    if (opnorm(u.adjoint() * u - u * u.adjoint()) > tol_unit) throw Error(ErrorKind::NotNormal, "operator is not normal");
    TempleKatoCertificate c;
    c.K = static_cast<int>(vectors.cols());
    c.theta = theta;
    if (c.K == 0) return c;
    const Mat gram = vectors.adjoint() * vectors - Mat::Identity(c.K, c.K);
    c.eps1 = gram.cwiseAbs().maxCoeff();
    const Mat defect = u * vectors - theta * vectors;
    c.eps2 = defect.colwise().norm().maxCoeff();
    c.valid = c.eps1 < 1.0 / c.K;
    if (!c.valid) {
        c.r_min = std::numeric_limits<double>::infinity();
        return c;
    }
    c.r_min = c.K * c.eps2 / std::sqrt(1.0 - c.K * c.eps1);
    if (c.r_min <= 1e-12) c.r_min = 0;
    return c;
}

TempleKatoCertificate certify_boundary_modes(const LatticeWalk& big, int lo, int hi, cplx theta, int k_expected,
                                             double mode_tol, const Tolerances& tol) {
    const UnitaryEig eig = eig_unitary(big.op.matrix, 1e-9);
    std::vector<std::pair<double, Index>> near;
    for (Index i = 0; i < eig.values.size(); ++i) {
        const double d = std::abs(eig.values(i) - theta);
        if (d <= mode_tol) near.emplace_back(d, i);
    }
    if (static_cast<int>(near.size()) < k_expected)
        throw Error(ErrorKind::NotEnoughModes, std::to_string(near.size()) + " eigenvalues near theta, expected " +
                                                   std::to_string(k_expected));
    std::sort(near.begin(), near.end());
    const LatticeWalk window = decouple_segment(big, lo, hi, tol);
    const CellStructure& c = big.op.cells;
    const Index off = c.offset(lo), len = window.op.matrix.rows();
    Mat vecs(len, k_expected);
    for (int j = 0; j < k_expected; ++j) {
        Vec v = eig.vectors.col(near[static_cast<size_t>(j)].second).segment(off, len);
        const double nv = v.norm();
        vecs.col(j) = nv > 0 ? Vec(v / nv) : v;
    }
    return temple_kato(window.op.matrix, theta, vecs, 1e-8);
}

std::vector<double> localization_profile(const Vec& v, const CellStructure& cells) {
    if (v.size() != cells.total()) throw Error(ErrorKind::DimensionMismatch, "vector does not match the cells");
    const double total = v.squaredNorm();
    std::vector<double> w;
    for (int x = cells.x_min(); x <= cells.x_max(); ++x)
        w.push_back(total > 0 ? v.segment(cells.offset(x), cells.dim(x)).squaredNorm() / total : 0.0);
    return w;
}

namespace {

/// 1 - |Re lambda| through the angle to the nearer of +-1.
double distance_to_real_axis_ends(cplx l) {
    const double a = std::abs(std::arg(l));
    const double phi = std::min(a, kPi - a);
    const double s = std::sin(phi / 2);
    return 2 * s * s;
}

}  // namespace

double boundary_delta(const Vec& eigenvalues) {
    double m = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < eigenvalues.size(); ++i) m = std::min(m, distance_to_real_axis_ends(eigenvalues(i)));
    return std::log(m);
}

SweepRecord sweep_record(const LatticeWalk& joined, int n_A, int n_B, const SweepOptions& opt, const Tolerances& tol) {
    (void)tol;
    SweepRecord r;
    r.n_A = n_A;
    r.n_B = n_B;
    const UnitaryEig eig = eig_unitary(joined.op.matrix, 1e-9);
    r.delta = boundary_delta(eig.values);
    const CellStructure& c = joined.op.cells;
    const bool circular = std::find(joined.interfaces.begin(), joined.interfaces.end(), c.x_min()) != joined.interfaces.end();
    const int n = c.n_cells();
    auto dist = [&](int x, int i) {
        const int d = std::abs(x - i);
        return circular ? std::min(d, n - d) : d;
    };
    for (Index i = 0; i < eig.values.size(); ++i) {
        const cplx l = eig.values(i);
        if (distance_to_real_axis_ends(l) > opt.near_threshold) continue;
        (l.real() > 0 ? r.count_near_plus : r.count_near_minus) += 1;
        r.near_eigenvalues.push_back(l);
        const std::vector<double> prof = localization_profile(eig.vectors.col(i), c);
        r.localization.push_back(prof);
        if (joined.interfaces.empty()) continue;
        for (int rad = 0; rad <= n; ++rad) {
            double mass = 0;
            for (int x = c.x_min(); x <= c.x_max(); ++x) {
                bool close = false;
                for (int iface : joined.interfaces) close = close || dist(x, iface) <= rad;
                if (close) mass += prof[static_cast<size_t>(x - c.x_min())];
            }
            if (mass >= opt.localization_mass) {
                r.max_localization_radius = std::max(r.max_localization_radius, rad);
                break;
            }
        }
    }
    return r;
}

std::vector<SweepRecord> crossover_sweep(const TIWalk& left, const TIWalk& right,
                                         const std::vector<std::pair<int, int>>& sizes, Topology topo,
                                         const SweepOptions& opt, const Tolerances& tol) {
    ti_gap_margin(left, {}, tol);
    ti_gap_margin(right, {}, tol);
    std::vector<SweepRecord> out;
    for (const auto& [na, nb] : sizes) out.push_back(sweep_record(join_crossover(left, right, na, nb, topo, tol), na, nb, opt, tol));
    return out;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << "n_A,n_B,delta,count_near_plus,count_near_minus,max_localization_radius\n";
    char buf[64];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%.12g", r.delta);
        os << r.n_A << ',' << r.n_B << ',' << buf << ',' << r.count_near_plus << ',' << r.count_near_minus << ','
           << r.max_localization_radius << '\n';
    }
    return os.str();
}

}  // namespace qwalk
