#include "catch_amalgamated.hpp"

#include "qwalk/random_walks.hpp"
#include "qwalk/symmetry.hpp"

using namespace qwalk;
using Catch::Approx;

namespace {

SymOp anti(const Mat& m) { return SymOp{m, true}; }
SymOp unit(const Mat& m) { return SymOp{m, false}; }

Mat diag(std::initializer_list<double> d) {
    Vec v(static_cast<Index>(d.size()));
    Index i = 0;
    for (double x : d) v(i++) = x;
    return v.asDiagonal();
}

Mat jmat() {
    Mat j(2, 2);
    j << 0, -1, 1, 0;
    return j;
}

SymmetryRep bdi_rep(const Mat& gamma) {
    SymmetryRep r;
    r.cls = SymClass::BDI;
    r.dim = gamma.rows();
    r.tau = anti(Mat::Identity(r.dim, r.dim));
    r.gamma = unit(gamma);
    r.eta = *r.tau * *r.gamma;
    return r;
}

SymmetryRep aiii_rep(const Mat& gamma) {
    SymmetryRep r;
    r.cls = SymClass::AIII;
    r.dim = gamma.rows();
    r.gamma = unit(gamma);
    return r;
}

SymmetryRep d_rep(Index n) {
    SymmetryRep r;
    r.cls = SymClass::D;
    r.dim = n;
    r.eta = anti(Mat::Identity(n, n));
    return r;
}

/// eta = conj, tau = J conj, gamma = J: the two dimensional DIII irrep.
SymmetryRep diii_irrep() {
    SymmetryRep r;
    r.cls = SymClass::DIII;
    r.dim = 2;
    r.eta = anti(Mat::Identity(2, 2));
    r.tau = anti(jmat());
    r.gamma = unit(jmat());
    return r;
}

}  // namespace

TEST_CASE("index_group_table") {
    CHECK(index_group_of(SymClass::A) == Group::Trivial);
    CHECK(index_group_of(SymClass::AI) == Group::Trivial);
    CHECK(index_group_of(SymClass::AII) == Group::Trivial);
    CHECK(index_group_of(SymClass::C) == Group::Trivial);
    CHECK(index_group_of(SymClass::CI) == Group::Trivial);
    CHECK(index_group_of(SymClass::D) == Group::Z2);
    CHECK(index_group_of(SymClass::DIII) == Group::TwoZ2);
    CHECK(index_group_of(SymClass::AIII) == Group::Z);
    CHECK(index_group_of(SymClass::BDI) == Group::Z);
    CHECK(index_group_of(SymClass::CII) == Group::TwoZ);
}

TEST_CASE("class_squares_table") {
    struct Row {
        SymClass c;
        int eta, tau, gamma;
    };
    // gamma = eta tau with commuting factors, so gamma^2 = eta^2 tau^2.
    const Row rows[] = {{SymClass::A, 0, 0, 0},     {SymClass::AIII, 0, 0, 1}, {SymClass::AI, 0, 1, 0},
                        {SymClass::BDI, 1, 1, 1},   {SymClass::D, 1, 0, 0},    {SymClass::DIII, 1, -1, -1},
                        {SymClass::AII, 0, -1, 0},  {SymClass::CII, -1, -1, 1}, {SymClass::C, -1, 0, 0},
                        {SymClass::CI, -1, 1, -1}};
    for (const Row& r : rows) {
        const ClassInfo ci = class_info(r.c);
        INFO(to_string(r.c));
        CHECK(ci.eta_sq == r.eta);
        CHECK(ci.tau_sq == r.tau);
        CHECK(ci.gamma_sq == r.gamma);
    }
    for (SymClass c : {SymClass::A, SymClass::D, SymClass::C, SymClass::AI, SymClass::AII, SymClass::AIII,
                       SymClass::BDI, SymClass::CI, SymClass::CII, SymClass::DIII})
        CHECK(class_from_string(to_string(c)) == c);
}

TEST_CASE("index_value_canonical_form") {
    CHECK(IndexValue(Group::Z2, 3).value() == 1);
    CHECK(IndexValue(Group::TwoZ2, 6).value() == 2);
    CHECK(IndexValue(Group::TwoZ2, -2).value() == 2);
    CHECK(IndexValue(Group::Trivial, 0).value() == 0);
    CHECK((IndexValue(Group::Z2, 1) + IndexValue(Group::Z2, 1)).is_zero());
    CHECK((IndexValue(Group::TwoZ2, 2) + IndexValue(Group::TwoZ2, 2)).is_zero());
    CHECK(-IndexValue(Group::TwoZ2, 2) == IndexValue(Group::TwoZ2, 2));
    CHECK(-IndexValue(Group::Z, 3) == IndexValue(Group::Z, -3));
    CHECK(-IndexValue(Group::TwoZ, 4) == IndexValue(Group::TwoZ, -4));
}

TEST_CASE("rep_index_examples") {
    CHECK(rep_index(bdi_rep(diag({1, 1}))) == IndexValue(Group::Z, 2));
    CHECK(rep_index(bdi_rep(diag({1, 1, -1}))) == IndexValue(Group::Z, 1));
    CHECK(rep_index(d_rep(3)) == IndexValue(Group::Z2, 1));
    CHECK(rep_index(diii_irrep()) == IndexValue(Group::TwoZ2, 2));
    CHECK(rep_index_report(aiii_rep(diag({1, 1, 1, -1}))).residual < 1e-12);
}

TEST_CASE("is_balanced_examples") {
    CHECK(is_balanced(aiii_rep(diag({1, -1}))));
    CHECK_FALSE(is_balanced(d_rep(1)));
    SymmetryRep a;
    a.cls = SymClass::A;
    a.dim = 3;
    CHECK(is_balanced(a));
    CHECK(is_balanced(direct_sum(diii_irrep(), diii_irrep())));
}

TEST_CASE("rep_index_rejects_bad_reps") {
    SymmetryRep r = bdi_rep(diag({1, -1}));
    r.gamma->matrix *= 1.01;
    CHECK_THROWS_AS(rep_index(r), Error);
    try {
        rep_index(r);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RelationViolation);
    }
}

TEST_CASE("forget_examples") {
    CHECK(forget(IndexValue(Group::Z, 3), SymClass::BDI, SymClass::D) == IndexValue(Group::Z2, 1));
    CHECK(forget(IndexValue(Group::TwoZ2, 2), SymClass::DIII, SymClass::AIII) == IndexValue(Group::Z, 0));
    CHECK(forget(IndexValue(Group::Z, 5), SymClass::BDI, SymClass::AIII) == IndexValue(Group::Z, 5));
    CHECK(forget(IndexValue(Group::TwoZ, 4), SymClass::CII, SymClass::AIII) == IndexValue(Group::Z, 4));
    CHECK(forget(IndexValue(Group::TwoZ2, 2), SymClass::DIII, SymClass::D) == IndexValue(Group::Z2, 0));
    CHECK(forget(IndexValue(Group::Z, 7), SymClass::BDI, SymClass::A).is_zero());
    CHECK_THROWS_AS(forget(IndexValue(Group::Z2, 1), SymClass::D, SymClass::BDI), Error);
}

TEST_CASE("forget_is_a_homomorphism") {
    struct Pair {
        SymClass from, to;
        Group g;
        long step;
    };
    const Pair pairs[] = {{SymClass::BDI, SymClass::AIII, Group::Z, 1}, {SymClass::BDI, SymClass::D, Group::Z, 1},
                          {SymClass::CII, SymClass::AIII, Group::TwoZ, 2}, {SymClass::DIII, SymClass::AIII, Group::TwoZ2, 2},
                          {SymClass::DIII, SymClass::D, Group::TwoZ2, 2}, {SymClass::CII, SymClass::A, Group::TwoZ, 2}};
    for (const Pair& p : pairs)
        for (long a = -4; a <= 4; ++a)
            for (long b = -4; b <= 4; ++b) {
                const IndexValue va(p.g, a * p.step), vb(p.g, b * p.step);
                CHECK(forget(va + vb, p.from, p.to) == forget(va, p.from, p.to) + forget(vb, p.from, p.to));
            }
}

TEST_CASE("inverse_rep_examples") {
    const SymmetryRep a = aiii_rep(diag({1}));
    const SymmetryRep ai = inverse_rep(a);
    CHECK(ai.gamma->matrix(0, 0) == cplx(-1.0));
    CHECK(rep_index(a).value() == 1);
    CHECK(rep_index(ai).value() == -1);

    const SymmetryRep d = inverse_rep(d_rep(1));
    CHECK(d.eta->matrix.isApprox(Mat::Identity(1, 1)));
    CHECK(rep_index(d) == IndexValue(Group::Z2, 1));

    CHECK(rep_index(inverse_rep(bdi_rep(diag({1, 1})))) == IndexValue(Group::Z, -2));
}

TEST_CASE("check_rep_relations_examples") {
    CHECK(check_rep_relations(bdi_rep(diag({1, -1, 1}))).max() == 0.0);

    SymmetryRep scaled = bdi_rep(diag({1, -1}));
    scaled.gamma->matrix *= 1.01;
    CHECK(check_rep_relations(scaled).unitarity == Approx(0.0201).epsilon(1e-9));

    SymmetryRep flipped = bdi_rep(diag({1, -1}));
    flipped.gamma = -*flipped.gamma;
    CHECK(check_rep_relations(flipped).phase == Approx(2.0));
    CHECK(check_rep_relations(diii_irrep()).max() < 1e-14);
}

TEST_CASE("rep_index_additive_conjugation_invariant_and_inverse") {
    Rng rng(11);
    for (SymClass c : {SymClass::A, SymClass::D, SymClass::AIII, SymClass::BDI, SymClass::CII}) {
        for (int trial = 0; trial < 20; ++trial) {
            const SymmetryRep r1 = random_rep(c, 1 + trial % 4, rng);
            const SymmetryRep r2 = random_rep(c, 1 + (trial * 7) % 5, rng);
            INFO(to_string(c) << " trial " << trial);
            CHECK(rep_index(direct_sum(r1, r2)) == rep_index(r1) + rep_index(r2));
            CHECK(rep_index(conjugate_rep(r1, random_unitary(r1.dim, rng))) == rep_index(r1));
            CHECK((rep_index(r1) + rep_index(inverse_rep(r1))).is_zero());
        }
    }
    const SymmetryRep d3 = direct_sum(diii_irrep(), direct_sum(diii_irrep(), diii_irrep()));
    CHECK(rep_index(d3) == IndexValue(Group::TwoZ2, 2));
    CHECK(rep_index(conjugate_rep(d3, random_unitary(6, rng))) == IndexValue(Group::TwoZ2, 2));
}

TEST_CASE("random_rep_index_matches_trace_oracle") {
    Rng rng(5);
    for (SymClass c : {SymClass::AIII, SymClass::BDI, SymClass::CII})
        for (int trial = 0; trial < 10; ++trial) {
            const SymmetryRep r = random_rep(c, 3, rng);
            const long tr = std::lround(r.gamma->matrix.trace().real());
            CHECK(rep_index(r).value() == tr);
        }
}

TEST_CASE("standard_cell_reps_are_balanced_and_valid") {
    for (SymClass c : {SymClass::A, SymClass::D, SymClass::C, SymClass::AI, SymClass::AII, SymClass::AIII,
                       SymClass::BDI, SymClass::CI, SymClass::CII, SymClass::DIII}) {
        const SymmetryRep r = standard_cell_rep(c);
        INFO(to_string(c));
        CHECK(check_rep_relations(r).max() < 1e-12);
        CHECK(is_balanced(r));
    }
}

TEST_CASE("forget_rep_reads_the_target_class") {
    const SymmetryRep r = forget_rep(bdi_rep(diag({1, 1, -1})), SymClass::AIII);
    CHECK(r.cls == SymClass::AIII);
    CHECK_FALSE(r.eta.has_value());
    CHECK(rep_index(r) == IndexValue(Group::Z, 1));
    CHECK(rep_index(forget_rep(bdi_rep(diag({1, 1, -1})), SymClass::D)) == IndexValue(Group::Z2, 1));
}

TEST_CASE("forget_rep_rephases_gamma") {
    // The DIII chiral operator squares to -1; its AIII image is i gamma.
    const SymmetryRep r = forget_rep(diii_irrep(), SymClass::AIII);
    CHECK(r.cls == SymClass::AIII);
    CHECK(check_rep_relations(r).max() < 1e-12);
    CHECK((r.gamma->matrix - kI * jmat()).norm() < 1e-15);
    CHECK(rep_index(r) == forget(rep_index(diii_irrep()), SymClass::DIII, SymClass::AIII));
    CHECK_THROWS_AS(forget_rep(diii_irrep(), SymClass::BDI), Error);
}
