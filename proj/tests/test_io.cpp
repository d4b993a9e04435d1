#include "catch_amalgamated.hpp"

#include "qwalk/io.hpp"
#include "qwalk/operators.hpp"
#include "qwalk/random_walks.hpp"

using namespace qwalk;
using Catch::Approx;

namespace {

bool is_error(ErrorKind kind, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

}  // namespace

TEST_CASE("matrix_json_round_trip") {
    Rng rng(41);
    const Mat m = random_gaussian(3, 4, rng);
    const json j = matrix_to_json(m);
    REQUIRE(j.size() == 3);
    CHECK(j[0].size() == 4);
    CHECK(j[1][2][0].get<double>() == m(1, 2).real());
    CHECK(j[1][2][1].get<double>() == m(1, 2).imag());
    CHECK((matrix_from_json(j) - m).norm() == 0.0);
    CHECK(matrix_from_json(json::parse(j.dump())).isApprox(m, 1e-15));
    CHECK_THROWS_AS(matrix_from_json(json::parse("[[[1,0]],[[1,0],[2,0]]]")), Error);
}

TEST_CASE("rep_json_round_trip") {
    Rng rng(42);
    for (SymClass c : {SymClass::D, SymClass::AIII, SymClass::BDI, SymClass::CII}) {
        const SymmetryRep r = random_rep(c, 2, rng);
        const SymmetryRep back = rep_from_json(json::parse(rep_to_json(r).dump()));
        CHECK(back.cls == r.cls);
        CHECK(back.dim == r.dim);
        for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
            REQUIRE(bool(back.op(s)) == bool(r.op(s)));
            if (!r.op(s)) continue;
            CHECK(back.op(s)->antiunitary == r.op(s)->antiunitary);
            CHECK((back.op(s)->matrix - r.op(s)->matrix).norm() < 1e-15);
        }
        CHECK(rep_index(back) == rep_index(r));
    }
}

TEST_CASE("ti_json_round_trip") {
    for (const TIWalk& ti : {make_generating_example(), make_split_step(0.3, -0.8), make_doubled(Doubling::DIII)}) {
        const TIWalk back = ti_from_json(json::parse(ti_to_json(ti).dump()));
        CHECK(back.cell_dim == ti.cell_dim);
        CHECK(back.cls() == ti.cls());
        for (double k : {-1.0, 0.4, 2.5}) CHECK((bloch_matrix(back, k) - bloch_matrix(ti, k)).norm() < 1e-14);
    }
}

TEST_CASE("index_and_lattice_json") {
    const json j = index_to_json(IndexValue(Group::TwoZ2, 2));
    CHECK(j["value"] == 2);
    CHECK(j["group"] == to_string(Group::TwoZ2));
    const LatticeOperator op = lattice_from_ti(make_generating_example(), 4, Topology::Circle);
    const json l = lattice_to_json(op);
    CHECK(l["cell_dims"].size() == 4);
    CHECK((matrix_from_json(l["matrix"]) - op.matrix).norm() == 0.0);
}

TEST_CASE("canonical_dump_is_deterministic") {
    const json a = json::parse(R"({"b": 0.1234567890123456, "a": [1, 2.0000000000001], "c": {"z": 1, "y": 2}})");
    const json b = json::parse(R"({"c": {"y": 2, "z": 1}, "a": [1, 2.0000000000001], "b": 0.1234567890123456})");
    CHECK(dump_canonical(a) == dump_canonical(b));
    CHECK(dump_canonical(a).find("0.123456789012") != std::string::npos);
    CHECK(dump_canonical(a).find("0.1234567890123") == std::string::npos);
    CHECK(dump_canonical(a).find("\"a\"") < dump_canonical(a).find("\"b\""));
    CHECK(round_numbers(json(1.0 / 3)).get<double>() == 0.333333333333);
}

TEST_CASE("angle_strings_in_specs") {
    const WalkSpec s = parse_walk_spec(json::parse(R"({"builtin": "split_step", "coin_params": ["9pi/32", "-pi/4"]})"));
    REQUIRE(s.ti);
    REQUIRE(s.ti->coin_params);
    CHECK((*s.ti->coin_params)[0] == Approx(9 * kPi / 32));
    CHECK((*s.ti->coin_params)[1] == Approx(-kPi / 4));
    const WalkSpec t = parse_walk_spec(json::parse(R"({"builtin": "split_step", "coin_params": [0.3, "2*pi/16"]})"));
    CHECK((*t.ti->coin_params)[0] == Approx(0.3));
    CHECK((*t.ti->coin_params)[1] == Approx(kPi / 8));
    CHECK(is_error(ErrorKind::InvalidInput, [] {
        parse_walk_spec(json::parse(R"({"builtin": "split_step", "coin_params": ["nine", 1]})"));
    }));
    CHECK(is_error(ErrorKind::InvalidInput,
                   [] { parse_walk_spec(json::parse(R"({"builtin": "split_step", "coin_params": [1]})")); }));
}

TEST_CASE("ti_specs") {
    const WalkSpec g = parse_walk_spec(json::parse(R"({"type": "ti", "builtin": "generating", "n_cells": 10,
                                                       "boundary": "decoupled_unitary"})"));
    CHECK(g.type == "ti");
    REQUIRE(g.lattice);
    CHECK(g.lattice->op.cells.n_cells() == 10);
    CHECK(unitarity_defect(g.lattice->op.matrix) < 1e-9);

    const WalkSpec c = parse_walk_spec(json::parse(R"({"builtin": "cii_doubled", "n_cells": 6, "topology": "circle"})"));
    CHECK(c.type == "ti");
    CHECK(c.topology == Topology::Circle);
    CHECK(c.lattice->op.matrix.rows() == 24);

    const WalkSpec f = parse_walk_spec(json::parse(R"({"kind": "ti", "builtin": "generating", "as_class": "D"})"));
    CHECK(f.ti->cls() == SymClass::D);
    CHECK_FALSE(f.lattice);

    const WalkSpec o = parse_walk_spec(json::parse(R"({"builtin": "generating", "n_cells": 10})"), 6,
                                       Boundary::DecoupledUnitary);
    CHECK(o.n_cells == 6);
    CHECK(o.boundary == Boundary::DecoupledUnitary);

    const WalkSpec b = parse_walk_spec(json::parse(R"({"cell_dim": 1, "blocks": {"1": [[[1, 0]]]},
                                                       "rep": {"class": "A", "dim": 1}})"));
    CHECK(b.type == "ti");
    CHECK(std::abs(bloch_matrix(*b.ti, 0.5)(0, 0) - std::exp(cplx(0, 0.5))) < 1e-14);
}

TEST_CASE("join_and_explicit_specs") {
    const WalkSpec j = parse_walk_spec(json::parse(R"({"type": "join", "topology": "circle", "n_left": 10, "n_right": 12,
        "left": {"builtin": "split_step", "coin_params": ["9pi/32", "7pi/32"]},
        "right": {"builtin": "split_step", "coin_params": ["-5pi/16", "2pi/16"]}})"));
    REQUIRE(j.lattice);
    CHECK(j.n_cells == 22);
    CHECK(j.lattice->interfaces.size() == 2);

    const LatticeOperator op = lattice_from_ti(make_generating_example(), 3, Topology::Circle);
    json e = {{"type", "explicit"}, {"cell_dim", 2}, {"matrix", matrix_to_json(op.matrix)},
              {"cell_rep", rep_to_json(make_generating_example().cell_rep)}};
    const WalkSpec x = parse_walk_spec(e);
    CHECK(x.n_cells == 3);
    CHECK((x.lattice->op.matrix - op.matrix).norm() == 0.0);
    CHECK(check_admissible(x.lattice->op.matrix, x.lattice->rep.assembled, OpKind::Walk).max() < 1e-12);

    e["cell_dim"] = 4;
    CHECK(is_error(ErrorKind::InvalidInput, [&] { parse_walk_spec(e); }));
}

TEST_CASE("schema_version_and_bad_specs") {
    CHECK_NOTHROW(parse_walk_spec(json::parse(R"({"schema_version": 1, "builtin": "generating"})")));
    CHECK(is_error(ErrorKind::InvalidInput,
                   [] { parse_walk_spec(json::parse(R"({"schema_version": 2, "builtin": "generating"})")); }));
    CHECK(is_error(ErrorKind::InvalidInput, [] { parse_walk_spec(json::parse(R"({"builtin": "nope"})")); }));
    CHECK(is_error(ErrorKind::InvalidInput, [] { parse_walk_spec(json::parse(R"({"type": "mystery"})")); }));
    CHECK(is_error(ErrorKind::InvalidInput, [] { topology_from_string("torus"); }));
    CHECK(is_error(ErrorKind::InvalidInput, [] { boundary_from_string("open"); }));
    CHECK(topology_from_string("line") == Topology::Line);
    CHECK(boundary_from_string("decoupled") == Boundary::DecoupledUnitary);
}
