/// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
/// Usage: acceptance [path-to-qwalk-cli]

#include "fixtures.hpp"
#include "qwalk/decoupling.hpp"
#include "qwalk/finite_systems.hpp"
#include "qwalk/indices.hpp"
#include "qwalk/io.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/random_walks.hpp"
#include "qwalk/ti_walks.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace qwalk;
using namespace qwalk::fixtures;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) detail = what;
        pass = false;
    }
};

std::string cli_path;

/// The +-1 window is a free parameter; eigenvalue pairs near +-1 carry no index.  Use the first
/// window of the ladder that no eigenvalue straddles.
template <class F>
auto with_window(F&& f) {
    for (double window : {1e-7, 1e-5, 1e-3}) {
        try {
            return f(window);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::WindowAmbiguous && e.kind() != ErrorKind::EigenspaceAmbiguous) throw;
        }
    }
    throw Error(ErrorKind::WindowAmbiguous, "every window of the ladder is ambiguous");
}

LocpertReport locpert(const Mat& w, const Mat& w1, const SymmetryRep& rep) {
    return with_window([&](double window) { return verify_locpert(w, w1, rep, window); });
}

IndexValue relative(const Mat& w, const Mat& w1, const SymmetryRep& rep) {
    return with_window([&](double window) { return relative_index(w, w1, rep, window); });
}

/// Runs the command line tool and parses its stdout as JSON.
json run_cli(const std::string& args) {
    const std::string cmd = cli_path + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("cannot run " + cmd);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    pclose(p);
    return json::parse(out);
}

bool same_index(const json& j, long value, const char* group) {
    return j.at("value").get<long>() == value && j.at("group").get<std::string>() == group;
}

// 1. Generating example: index and winding.
Outcome generating_example() {
    Outcome o;
    const json idx = run_cli("index --builtin generating --n-cells 20");
    o.require(same_index(idx.at("si_right"), 1, "Z"), "si_right " + idx.at("si_right").dump());
    o.require(idx.at("class") == "BDI", "class " + idx.at("class").dump());
    const json w = run_cli("winding --builtin generating");
    o.require(w.at("value").get<long>() == 1, "winding " + w.at("value").dump());
    o.require(w.at("residual").get<double>() < 1e-6, "winding residual " + w.at("residual").dump());
    o.detail = o.pass ? "si_right = 1 (Z), winding = 1, residual " + w.at("residual").dump() : o.detail;
    return o;
}

// 2. Doubled variants and the forget map to AIII.
Outcome doubled_variants() {
    Outcome o;
    const TIWalk cii = make_doubled(Doubling::CII), diii = make_doubled(Doubling::DIII);
    const InvariantResult wc = winding_number(cii);
    const InvariantResult bd = berry_phase(diii);
    o.require(wc.index == IndexValue(Group::TwoZ, 2), "CII winding " + to_string(wc.index));
    o.require(bd.index == IndexValue(Group::TwoZ2, 2), "DIII Berry " + to_string(bd.index));
    o.require(forget(wc.index, SymClass::CII, SymClass::AIII) == IndexValue(Group::Z, 2), "forget CII -> AIII");
    o.require(forget(bd.index, SymClass::DIII, SymClass::AIII) == IndexValue(Group::Z, 0), "forget DIII -> AIII");
    // The same values computed on the forgotten walks themselves.
    o.require(winding_number(forget_walk(cii, SymClass::AIII)).value == 2, "AIII view of CII");
    o.require(winding_number(forget_walk(diii, SymClass::AIII)).value == 0, "AIII view of DIII");
    if (o.pass) o.detail = "CII winding 2, DIII Berry 2 mod 4, AIII images 2 and 0";
    return o;
}

// 3. Split-step calibration.
Outcome split_step_calibration() {
    Outcome o;
    const long a = winding_number(split_a()).value, b = winding_number(split_b()).value;
    o.require(a == 1, "(9pi/32, 7pi/32) winding " + std::to_string(a));
    o.require(b == -1, "(-5pi/16, 2pi/16) winding " + std::to_string(b));
    if (o.pass) o.detail = "windings +1 and -1";
    return o;
}

// 4. Finite size bulk-boundary trend on the A|B circle.
Outcome bulk_boundary_trend() {
    Outcome o;
    const std::vector<SweepRecord> rs =
        crossover_sweep(split_a(), split_b(), {{10, 10}, {20, 20}, {40, 40}}, Topology::Circle);
    std::ostringstream d;
    for (size_t i = 0; i < rs.size(); ++i) {
        const int near = rs[i].count_near_plus + rs[i].count_near_minus;
        o.require(near >= 2, "n = " + std::to_string(rs[i].n_A) + ": " + std::to_string(near) + " near modes");
        if (i > 0) o.require(rs[i].delta < rs[i - 1].delta, "delta not strictly decreasing");
        d << (i ? ", " : "delta = ") << rs[i].delta;
    }
    // At n = 40 every near mode carries 90% of its weight within 10 cells of an interface.
    o.require(rs.back().max_localization_radius <= 10,
              "localization radius " + std::to_string(rs.back().max_localization_radius));
    d << "; radius " << rs.back().max_localization_radius;
    if (o.pass) o.detail = d.str();
    return o;
}

/// A gapped truncation of at most 40 dims of the given class, dressed in the middle.
LatticeWalk banded_walk_of_class(SymClass c, Rng& rng) {
    TIWalk ti;
    int n = 20;
    switch (c) {
        case SymClass::D: ti = forget_walk(make_generating_example(), SymClass::D); break;
        case SymClass::AIII: ti = forget_walk(split_a(), SymClass::AIII); break;
        case SymClass::BDI: ti = std::uniform_int_distribution<int>(0, 1)(rng) ? split_a() : split_b(); break;
        default: ti = make_doubled(Doubling::CII), n = 10;
    }
    const LatticeWalk base = truncate_ti(ti, n, Boundary::DecoupledUnitary);
    return brickwork_dress(base, n / 2 - 1, n / 2 + 1, 0.2, rng);
}

// 5. Relative index theorem, chain rule and additivity of distant perturbations.
Outcome relative_index_theorem() {
    Outcome o;
    Rng rng(5005);
    const SymClass classes[] = {SymClass::D, SymClass::AIII, SymClass::BDI, SymClass::CII};
    int checked = 0;
    for (int t = 0; t < 200 && o.pass; ++t) {
        const SymClass c = classes[t % 4];
        const std::string tag = "trial " + std::to_string(t) + " " + to_string(c);
        try {
            if ((t / 4) % 2 == 0) {
                // Dense walk with known +-1 eigenspaces; chain rule through two perturbations.
                const SignedWalk s = signed_walk(c, 1 + t % 3, 1 + (t / 3) % 3, rng);
                const SymmetryRep t0 = twiddle_rep(s.w, s.rep);
                const Mat b1 = random_invariant_subspace(t0, true, rng);
                const Mat w1 = reflection(b1) * s.w;
                const LocpertReport r1 = locpert(s.w, w1, s.rep);
                o.require(r1.passes, tag + ": relative index formula");
                o.require(r1.relative == rep_index(restrict_rep(t0, b1)), tag + ": relative index oracle");
                const Mat w2 = reflection(random_invariant_subspace(twiddle_rep(w1, s.rep), t % 2 == 0, rng)) * w1;
                o.require(locpert(w1, w2, s.rep).passes, tag + ": second step");
                o.require(relative(s.w, w2, s.rep) ==
                              relative(s.w, w1, s.rep) + relative(w1, w2, s.rep),
                          tag + ": chain rule");
            } else {
                // Banded walk; two perturbations supported far apart add up.
                const LatticeWalk w = banded_walk_of_class(c, rng);
                const SymmetryRep& rep = w.rep.assembled;
                const SymmetryRep tr = twiddle_rep(w.op.matrix, rep);
                const CellStructure& cells = w.op.cells;
                const int n = cells.n_cells();
                const Mat b1 = random_invariant_subspace(tr, true, rng, cells.offset(0), cells.offset(1));
                const Mat b2 = random_invariant_subspace(tr, true, rng, cells.offset(n - 1), cells.total());
                const Mat v1 = reflection(b1), v2 = reflection(b2);
                o.require((b1.adjoint() * b2).norm() < 1e-10, tag + ": supports overlap");
                const LocpertReport r1 = locpert(w.op.matrix, Mat(v1 * w.op.matrix), rep);
                const LocpertReport r2 = locpert(w.op.matrix, Mat(v2 * w.op.matrix), rep);
                const LocpertReport r12 = locpert(w.op.matrix, Mat(v1 * v2 * w.op.matrix), rep);
                o.require(r1.passes && r2.passes && r12.passes, tag + ": relative index formula");
                o.require(r12.relative == r1.relative + r2.relative, tag + ": additivity");
            }
            ++checked;
        } catch (const Error& e) {
            o.require(false, tag + ": " + e.what());
        }
    }
    if (o.pass) o.detail = std::to_string(checked) + " trials";
    return o;
}

// 6. Gentle decoupling on randomized banded walks of index zero.
Outcome decoupling_suite() {
    Outcome o;
    Rng rng(6006);
    std::uniform_real_distribution<double> strength(0.01, 0.06);
    // 60 dims: 30 cells of dimension 2 or 15 of dimension 4, long enough for unambiguous localized counts.
    std::vector<LatticeWalk> pool;
    for (const TIWalk& ti : gapped_walks())
        pool.push_back(truncate_ti(ti, static_cast<int>(60 / ti.cell_dim), Boundary::DecoupledUnitary));
    double worst_comm = 0, worst_path = 0;
    for (int t = 0; t < 50 && o.pass; ++t) {
        const LatticeWalk& base = pool[static_cast<size_t>(t) % pool.size()];
        const int n = base.op.cells.n_cells(), a = n / 2;
        const int lo = std::uniform_int_distribution<int>(0, a - 1)(rng);
        const int hi = std::uniform_int_distribution<int>(a + 1, n)(rng);
        const LatticeWalk w = brickwork_dress(base, lo, hi, strength(rng), rng);
        const std::string tag = "trial " + std::to_string(t) + " " + to_string(w.rep.assembled.cls);
        try {
            const DecouplingResult d = gentle_decoupling(w.op, w.rep.assembled, a, 32);
            o.require(d.commutator <= 1e-9, tag + ": commutator " + std::to_string(d.commutator));
            o.require(d.min_real_eig_V >= -1e-9, tag + ": min Re eig V " + std::to_string(d.min_real_eig_V));
            o.require(d.path_unitarity <= 1e-8, tag + ": path unitarity");
            o.require(d.path_admissibility <= 1e-8, tag + ": path admissibility");
            const LeftRight before = si_left_right(w.op, w.rep.assembled, a);
            const LeftRight after = si_left_right(d.W_prime, w.rep.assembled, a);
            o.require(before.left == after.left && before.right == after.right, tag + ": half-space indices changed");
            worst_comm = std::max(worst_comm, d.commutator);
            worst_path = std::max({worst_path, d.path_unitarity, d.path_admissibility});
        } catch (const Error& e) {
            o.require(false, tag + ": " + e.what());
        }
    }
    // The shift has index 1 at every cut.
    const LatticeOperator s = lattice_from_ti(make_shift(1), 12, Topology::Circle);
    bool obstructed = false;
    try {
        gentle_decoupling(s, uniform_local_rep(make_shift(1).cell_rep, 12).assembled, 6);
    } catch (const Error& e) {
        obstructed = e.kind() == ErrorKind::DimensionMismatch;
    }
    o.require(obstructed, "shift was not obstructed");
    if (o.pass) {
        std::ostringstream d;
        d << "50 trials, max commutator " << worst_comm << ", max path residual " << worst_path << ", shift obstructed";
        o.detail = d.str();
    }
    return o;
}

/// Random gapped split-step walk (margin > 0.3).
TIWalk random_gapped_split_step(Rng& rng) {
    std::uniform_real_distribution<double> angle(-kPi / 2, kPi / 2);
    for (;;) {
        const TIWalk ti = make_split_step(angle(rng), angle(rng));
        try {
            if (ti_gap_margin(ti) > 0.3) return ti;
        } catch (const Error&) {
        }
    }
}

// 7. Cut independence, si = siL + siR, stability away from the cut.
Outcome index_laws() {
    Outcome o;
    Rng rng(7007);
    const int n = 24;
    for (int t = 0; t < 100 && o.pass; ++t) {
        const TIWalk left = random_gapped_split_step(rng), right = random_gapped_split_step(rng);
        const std::string tag = "trial " + std::to_string(t);
        try {
            const LatticeWalk w = join_crossover(left, right, n, n, Topology::Line);
            const SymmetryRep& rep = w.rep.assembled;
            const int i0 = w.interfaces.front();
            const IndexValue sr = ti_right_index(right), sl = -ti_right_index(left);
            // Cut independence inside the right bulk.
            for (int a : {i0 + 10, i0 + 12})
                o.require(si_left_right(w.op, rep, a).right == sr, tag + ": right index at cut " + std::to_string(a));
            // si on the modes near the interface equals siL + siR at the interface.
            const LeftRight lr = si_left_right(w.op, rep, i0);
            const BulkBoundaryReport bb = verify_bulk_boundary(left, right, w, 0.05);
            o.require(lr.left == sl && lr.right == sr, tag + ": half-space indices at the interface");
            o.require(bb.measured == lr.left + lr.right, tag + ": si != siL + siR");
            // A finite-rank admissible perturbation away from the cut changes nothing.
            const LatticeWalk p = brickwork_dress(w, i0 - 8, i0 - 4, 0.1, rng);
            const LeftRight lp = si_left_right(p.op, rep, i0);
            o.require(lp.left == sl && lp.right == sr, tag + ": perturbation changed the indices");
        } catch (const Error& e) {
            o.require(false, tag + ": " + e.what());
        }
    }
    if (o.pass) o.detail = "100 trials";
    return o;
}

// 8. Temple-Kato soundness.
Outcome temple_kato_soundness() {
    Outcome o;
    Rng rng(8008);
    std::uniform_int_distribution<int> dim(2, 100);
    std::normal_distribution<double> g;
    int valid = 0;
    for (int t = 0; t < 100 && o.pass; ++t) {
        const Index n = dim(rng);
        const Mat u = random_unitary(n, rng);
        const UnitaryEig e = eig_unitary(u);
        const int k = 1 + t % static_cast<int>(std::min<Index>(4, n));
        const cplx theta = e.values(t % n) * std::polar(1.0, 0.05 * g(rng));
        Mat vecs = e.vectors.leftCols(k) + std::pow(10.0, -1 - t % 5) * random_gaussian(n, k, rng);
        for (int j = 0; j < k; ++j) vecs.col(j).normalize();
        const TempleKatoCertificate c = temple_kato(u, theta, vecs);
        if (!c.valid) continue;
        ++valid;
        Eigen::ComplexEigenSolver<Mat> es(u, false);
        int inside = 0;
        for (Index i = 0; i < n; ++i) inside += std::abs(es.eigenvalues()(i) - theta) <= c.r_min * (1 + 1e-9) + 1e-12;
        o.require(inside >= c.K, "trial " + std::to_string(t) + ": " + std::to_string(inside) + " < K");
    }
    const Mat u = random_unitary(30, rng);
    const UnitaryEig e = eig_unitary(u);
    const TempleKatoCertificate exact = temple_kato(u, e.values(0), e.vectors.col(0));
    o.require(exact.valid && exact.r_min == 0.0, "exact eigenvector r_min " + std::to_string(exact.r_min));
    if (o.pass) o.detail = std::to_string(valid) + " valid certificates, exact case r_min = 0";
    return o;
}

// 9. Two-projection algebra on every constructed pair.
Outcome two_projection_algebra() {
    Outcome o;
    Rng rng(9009);
    std::vector<ProjectionPair> pairs;
    for (int t = 0; t < 30; ++t) {
        const Index n = 2 + t * 3;
        const Mat u = random_unitary(n, rng);
        Eigen::HouseholderQR<Mat> qr(random_gaussian(n, 1 + n / 3, rng));
        const Mat b = qr.householderQ() * Mat::Identity(n, 1 + n / 3);
        pairs.push_back(projection_pair(u, b * b.adjoint()));
    }
    for (const LatticeWalk& w : gapped_truncations(16)) {
        pairs.push_back(projection_pair(w.op.matrix, half_space_projection(w.op.cells, 8)));
        const LatticeWalk d = dress_walk(w, 6, 10, 0.3, rng);
        pairs.push_back(projection_pair(d.op.matrix, half_space_projection(d.op.cells, 8)));
    }
    const LatticeOperator s = lattice_from_ti(make_shift(1), 12, Topology::Circle);
    pairs.push_back(projection_pair(s.matrix, half_space_projection(s.cells, 6)));
    double worst = 0;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const PairResiduals r = check_pair(pairs[i]);
        const KatoResiduals k = check_kato(pairs[i], kato_X(pairs[i]));
        const double m = std::max({r.anticommutator, r.sum_squares, k.circle, k.intertwining});
        worst = std::max(worst, m);
        o.require(m <= 1e-8, "pair " + std::to_string(i) + " residual " + std::to_string(m));
    }
    if (o.pass) {
        std::ostringstream d;
        d << pairs.size() << " pairs, max residual " << worst;
        o.detail = d.str();
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    cli_path = argc > 1 ? argv[1] : "./qwalk";
    struct Criterion {
        const char* name;
        double limit_s;  // 0: no time limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"generating example index and winding", 1, generating_example},
        {"doubled variants and forget maps", 1, doubled_variants},
        {"split-step calibration", 1, split_step_calibration},
        {"finite size bulk-boundary trend", 10, bulk_boundary_trend},
        {"relative index theorem", 30, relative_index_theorem},
        {"gentle decoupling suite", 60, decoupling_suite},
        {"index consistency laws", 0, index_laws},
        {"Temple-Kato soundness", 0, temple_kato_soundness},
        {"two-projection algebra", 0, two_projection_algebra},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].limit_s > 0 && secs >= criteria[i].limit_s) {
            o.detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(criteria[i].limit_s) + " s; " + o.detail;
            o.pass = false;
        }
        failed += !o.pass;
        std::printf("%s %zu %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs, o.detail.c_str());
    }
    return failed ? 1 : 0;
}
