#include "qwalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <regex>

namespace qwalk {

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "matrix must be an array of rows");
    const Index r = static_cast<Index>(j.size());
    const Index c = r ? static_cast<Index>(j[0].size()) : 0;
    Mat m(r, c);
    for (Index i = 0; i < r; ++i) {
        if (static_cast<Index>(j[i].size()) != c) throw Error(ErrorKind::InvalidInput, "ragged matrix");
        for (Index k = 0; k < c; ++k) {
            const json& e = j[i][k];
            if (e.is_number()) m(i, k) = e.get<double>();
            else if (e.is_array() && e.size() == 2) m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
            else throw Error(ErrorKind::InvalidInput, "matrix entries are numbers or [re, im]");
        }
    }
    return m;
}

namespace {

const char* sym_key(Sym s) {
    switch (s) {
        case Sym::Eta: return "eta";
        case Sym::Tau: return "tau";
        case Sym::Gamma: return "gamma";
    }
    return "";
}

/// Numbers, or strings such as "9pi/32", "-pi/4", "0.3".
double parse_angle(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw Error(ErrorKind::InvalidInput, "angle must be a number or a string like 9pi/32");
    static const std::regex re(R"(\s*([+-]?)\s*([0-9]*\.?[0-9]*)\s*(\*?\s*pi)?\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*)");
    std::smatch m;
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, m, re) || (m[2].length() == 0 && m[3].length() == 0))
        throw Error(ErrorKind::InvalidInput, "cannot parse angle '" + s + "'");
    double v = m[2].length() ? std::strtod(m[2].str().c_str(), nullptr) : 1.0;
    if (m[3].length()) v *= kPi;
    if (m[4].length()) v /= std::strtod(m[4].str().c_str(), nullptr);
    return m[1] == "-" ? -v : v;
}

}  // namespace

json rep_to_json(const SymmetryRep& rep) {
    json ops = json::object();
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma})
        if (rep.op(s)) ops[sym_key(s)] = {{"matrix", matrix_to_json(rep.op(s)->matrix)}, {"antiunitary", rep.op(s)->antiunitary}};
    return {{"class", to_string(rep.cls)}, {"dim", rep.dim}, {"operators", ops}};
}

SymmetryRep rep_from_json(const json& j) {
    SymmetryRep r;
    r.cls = class_from_string(j.at("class").get<std::string>());
    if (j.contains("operators"))
        for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
            if (!j["operators"].contains(sym_key(s))) continue;
            const json& o = j["operators"][sym_key(s)];
            r.op(s) = SymOp{matrix_from_json(o.at("matrix")), o.value("antiunitary", s != Sym::Gamma)};
        }
    if (j.contains("dim")) r.dim = j["dim"].get<Index>();
    else {
        for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma})
            if (r.op(s)) r.dim = r.op(s)->dim();
    }
    const RelationReport rel = check_rep_relations(r);
    if (!rel.passes(Tolerances{}.unit))
        throw Error(ErrorKind::RelationViolation, "rep relations fail, residual " + std::to_string(rel.max()));
    return r;
}

json index_to_json(const IndexValue& v) { return {{"value", v.value()}, {"group", to_string(v.group())}}; }

json ti_to_json(const TIWalk& ti) {
    json blocks = json::object();
    for (const auto& [k, b] : ti.blocks) blocks[std::to_string(k)] = matrix_to_json(b);
    json j = {{"type", "ti"}, {"name", ti.name}, {"cell_dim", ti.cell_dim}, {"blocks", blocks}, {"rep", rep_to_json(ti.cell_rep)}};
    if (ti.coin_params) j["coin_params"] = {(*ti.coin_params)[0], (*ti.coin_params)[1]};
    return j;
}

json lattice_to_json(const LatticeOperator& op) {
    return {{"x_min", op.cells.x_min()}, {"cell_dims", op.cells.dims()}, {"band", op.band}, {"matrix", matrix_to_json(op.matrix)}};
}

json round_numbers(const json& j) {
    if (j.is_number_float()) {
        const double d = j.get<double>();
        if (!std::isfinite(d)) return d;
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", d);
        double r = std::strtod(buf, nullptr);
        if (r == 0.0) r = 0.0;  // drop negative zero
        return r;
    }
    if (j.is_array()) {
        json out = json::array();
        for (const auto& e : j) out.push_back(round_numbers(e));
        return out;
    }
    if (j.is_object()) {
        json out = json::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_numbers(it.value());
        return out;
    }
    return j;
}

std::string dump_canonical(const json& j) { return round_numbers(j).dump(2); }

Topology topology_from_string(const std::string& s) {
    if (s == "line") return Topology::Line;
    if (s == "circle") return Topology::Circle;
    throw Error(ErrorKind::InvalidInput, "topology must be line or circle, got '" + s + "'");
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "compress") return Boundary::Compress;
    if (s == "decoupled_unitary" || s == "decoupled") return Boundary::DecoupledUnitary;
    throw Error(ErrorKind::InvalidInput, "boundary must be compress or decoupled_unitary, got '" + s + "'");
}

TIWalk ti_from_json(const json& j) {
    TIWalk ti;
    if (j.contains("builtin")) {
        const std::string b = j["builtin"].get<std::string>();
        if (b == "generating") ti = make_generating_example();
        else if (b == "split_step") {
            const json& c = j.at("coin_params");
            if (!c.is_array() || c.size() != 2) throw Error(ErrorKind::InvalidInput, "coin_params needs two angles");
            ti = make_split_step(parse_angle(c[0]), parse_angle(c[1]));
        } else if (b == "cii_doubled") ti = make_doubled(Doubling::CII);
        else if (b == "diii_doubled") ti = make_doubled(Doubling::DIII);
        else if (b == "trivial") ti = make_trivial(class_from_string(j.at("class").get<std::string>()));
        else if (b == "shift") ti = make_shift(j.value("step", 1));
        else throw Error(ErrorKind::InvalidInput, "unknown builtin walk '" + b + "'");
    } else {
        ti.cell_dim = j.at("cell_dim").get<Index>();
        for (auto it = j.at("blocks").begin(); it != j.at("blocks").end(); ++it) {
            Mat m = matrix_from_json(it.value());
            if (m.rows() != ti.cell_dim || m.cols() != ti.cell_dim)
                throw Error(ErrorKind::InvalidInput, "block " + it.key() + " has the wrong size");
            ti.blocks[std::stoi(it.key())] = m;
        }
        ti.cell_rep = rep_from_json(j.at("rep"));
        if (ti.cell_rep.dim != ti.cell_dim) throw Error(ErrorKind::InvalidInput, "rep and cell dimension differ");
        if (j.contains("coin_params"))
            ti.coin_params = std::array<double, 2>{parse_angle(j["coin_params"][0]), parse_angle(j["coin_params"][1])};
        ti.name = j.value("name", std::string("custom"));
    }
    if (j.contains("as_class")) ti = forget_walk(ti, class_from_string(j["as_class"].get<std::string>()));
    return ti;
}

WalkSpec parse_walk_spec(const json& j, const Tolerances& tol) { return parse_walk_spec(j, std::nullopt, std::nullopt, tol); }

WalkSpec parse_walk_spec(const json& j, std::optional<int> n_cells, std::optional<Boundary> boundary,
                         const Tolerances& tol) {
    WalkSpec s;
    if (j.value("schema_version", kWalkSpecSchemaVersion) != kWalkSpecSchemaVersion)
        throw Error(ErrorKind::InvalidInput, "unsupported schema_version");
    s.type = j.value("kind", j.value("type", std::string(j.contains("builtin") || j.contains("blocks") ? "ti" : "")));
    if (j.contains("topology")) s.topology = topology_from_string(j["topology"].get<std::string>());
    s.boundary = boundary ? *boundary
                          : (j.contains("boundary") ? boundary_from_string(j["boundary"].get<std::string>())
                                                    : Boundary::Compress);
    s.n_cells = n_cells ? *n_cells : j.value("n_cells", 0);
    if (s.type == "ti") {
        s.ti = ti_from_json(j);
        if (s.n_cells > 0) {
            if (s.topology == Topology::Circle) {
                LatticeWalk w;
                w.op = lattice_from_ti(*s.ti, s.n_cells, Topology::Circle);
                w.rep = uniform_local_rep(s.ti->cell_rep, s.n_cells);
                s.lattice = w;
            } else {
                s.lattice = truncate_ti(*s.ti, s.n_cells, s.boundary, tol);
            }
        }
    } else if (s.type == "join") {
        s.left = ti_from_json(j.at("left"));
        s.right = ti_from_json(j.at("right"));
        s.lattice = join_crossover(*s.left, *s.right, j.at("n_left").get<int>(), j.at("n_right").get<int>(), s.topology, tol);
        s.n_cells = s.lattice->op.cells.n_cells();
    } else if (s.type == "explicit") {
        LatticeWalk w;
        w.op.matrix = matrix_from_json(j.at("matrix"));
        std::vector<Index> dims;
        if (j.contains("cell_dims")) dims = j["cell_dims"].get<std::vector<Index>>();
        else {
            const Index d = j.value("cell_dim", Index(1));
            if (w.op.matrix.rows() % d != 0) throw Error(ErrorKind::InvalidInput, "matrix size is not a multiple of cell_dim");
            dims.assign(static_cast<size_t>(w.op.matrix.rows() / d), d);
        }
        w.op.cells = CellStructure(j.value("x_min", 0), dims);
        if (w.op.cells.total() != w.op.matrix.rows() || w.op.matrix.rows() != w.op.matrix.cols())
            throw Error(ErrorKind::InvalidInput, "matrix does not match the cell structure");
        w.op.band = j.value("band", -1);
        std::vector<SymmetryRep> reps;
        if (j.contains("cell_reps"))
            for (const auto& r : j["cell_reps"]) reps.push_back(rep_from_json(r));
        else reps.assign(dims.size(), rep_from_json(j.at("cell_rep")));
        if (reps.size() != dims.size()) throw Error(ErrorKind::InvalidInput, "one rep per cell expected");
        w.rep = make_local_rep(reps);
        if (w.rep.assembled.dim != w.op.matrix.rows()) throw Error(ErrorKind::InvalidInput, "reps do not match cells");
        if (j.contains("interfaces")) w.interfaces = j["interfaces"].get<std::vector<int>>();
        s.n_cells = w.op.cells.n_cells();
        s.lattice = w;
    } else {
        throw Error(ErrorKind::InvalidInput, "walk spec type must be ti, explicit or join");
    }
    return s;
}

}  // namespace qwalk
