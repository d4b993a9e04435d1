/// qwalk: command line front end for indices, decoupling, crossover sweeps and certificates.
#include "qwalk/decoupling.hpp"
#include "qwalk/finite_systems.hpp"
#include "qwalk/indices.hpp"
#include "qwalk/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace qwalk;

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotAdmissible:
        case ErrorKind::NotUnitary:
        case ErrorKind::RelationViolation: return 2;
        case ErrorKind::Gapless:
        case ErrorKind::GapViolation:
        case ErrorKind::SingularBlock:
        case ErrorKind::RankJump:
        case ErrorKind::WindowAmbiguous:
        case ErrorKind::NotEnoughModes: return 3;
        case ErrorKind::NonIntegerTrace: return 4;
        case ErrorKind::DimensionMismatch:
        case ErrorKind::Obstructed:
        case ErrorKind::Unbalanced:
        case ErrorKind::OddDimensionAII: return 5;
        default: return 1;
    }
}

struct WalkSource {
    std::string spec;
    std::string builtin;
    std::vector<std::string> coins;

    void add(CLI::App* app, const std::string& prefix = "") {
        const std::string p = prefix.empty() ? "" : prefix + "-";
        app->add_option("--" + p + "spec", spec, "Walk spec: JSON file, '-' for stdin, or inline JSON");
        app->add_option("--" + p + "builtin", builtin, "Built-in walk: generating, cii_doubled, diii_doubled, shift");
        app->add_option("--" + p + "coins", coins, "Split-step coin angles, e.g. 9pi/32 pi/4")->expected(2)->delimiter(',');
    }

    json load() const {
        if (!spec.empty()) {
            std::string text;
            if (spec == "-") text.assign(std::istreambuf_iterator<char>(std::cin), {});
            else if (spec.find_first_not_of(" \t\n") != std::string::npos && spec[spec.find_first_not_of(" \t\n")] == '{')
                text = spec;
            else {
                std::ifstream in(spec);
                if (!in) throw Error(ErrorKind::InvalidInput, "cannot open spec file '" + spec + "'");
                text.assign(std::istreambuf_iterator<char>(in), {});
            }
            try {
                return json::parse(text);
            } catch (const json::exception& e) {
                throw Error(ErrorKind::InvalidInput, std::string("spec is not valid JSON: ") + e.what());
            }
        }
        if (!coins.empty()) return {{"builtin", "split_step"}, {"coin_params", coins}};
        if (!builtin.empty()) return {{"builtin", builtin}};
        throw Error(ErrorKind::InvalidInput, "no walk given: use --spec, --builtin or --coins");
    }
};

json tol_json(const Tolerances& t) {
    return {{"unit", t.unit}, {"idx", t.idx},         {"eig", t.eig},       {"orth", t.orth},     {"adm", t.adm},
            {"exact", t.exact}, {"band", t.band},     {"split", t.split},   {"window", t.window}, {"gap", t.gap},
            {"det", t.det},   {"ker", t.ker},         {"rep", t.rep},       {"local", t.local}};
}

json cplx_json(cplx z) { return {z.real(), z.imag()}; }

cplx parse_theta(const std::string& s) {
    if (s == "1" || s == "+1") return 1.0;
    if (s == "-1") return -1.0;
    throw Error(ErrorKind::InvalidInput, "theta must be 1 or -1");
}

std::vector<std::pair<int, int>> parse_sizes(const std::vector<std::string>& items) {
    std::vector<std::pair<int, int>> out;
    for (const std::string& s : items) {
        const auto c = s.find(':');
        if (c == std::string::npos) throw Error(ErrorKind::InvalidInput, "sizes are n_A:n_B, got '" + s + "'");
        out.emplace_back(std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1)));
    }
    return out;
}

void require_valid_ti(const TIWalk& ti, const Tolerances& tol) {
    const TIValidation v = validate_ti(ti);
    if (v.relations > tol.unit) throw Error(ErrorKind::RelationViolation, "cell rep residual " + std::to_string(v.relations));
    if (v.unitarity > tol.unit) throw Error(ErrorKind::NotUnitary, "Bloch matrix unitarity " + std::to_string(v.unitarity));
    if (v.admissibility > tol.adm)
        throw Error(ErrorKind::NotAdmissible, "momentum space admissibility " + std::to_string(v.admissibility));
}

void require_valid_lattice(const LatticeWalk& w, const Tolerances& tol) {
    const double a = check_admissible(w.op.matrix, w.rep.assembled, OpKind::Walk).max();
    if (a > tol.adm) throw Error(ErrorKind::NotAdmissible, "admissibility residual " + std::to_string(a));
}

/// The size flag applies unless the spec fixes n_cells itself.
std::optional<int> ws_n_cells(const json& spec, int fallback) {
    if (spec.contains("n_cells")) return std::nullopt;
    return fallback;
}

int default_cut(const LatticeWalk& w) {
    if (!w.interfaces.empty()) return w.interfaces.front();
    return w.op.cells.x_min() + w.op.cells.n_cells() / 2;
}

struct IndexCmd {
    WalkSource src;
    int n_cells = 20;
    std::string boundary = "decoupled_unitary";
    std::string topology;
    std::optional<int> cut;
    double window = Tolerances{}.window;
};

json run_index(const IndexCmd& c, const Tolerances& tol) {
    json spec = c.src.load();
    if (!c.topology.empty()) spec["topology"] = c.topology;
    const WalkSpec ws = parse_walk_spec(spec, ws_n_cells(spec, c.n_cells), boundary_from_string(c.boundary), tol);
    json out;
    if (ws.ti) {
        require_valid_ti(*ws.ti, tol);
        out["bulk_gap_margin"] = ti_gap_margin(*ws.ti, {}, tol);
        out["si_right_bulk"] = index_to_json(ti_right_index(*ws.ti, {}, tol));
    }
    const LatticeWalk& w = *ws.lattice;
    require_valid_lattice(w, tol);
    const int cut = c.cut ? *c.cut : default_cut(w);
    const LeftRight lr = si_left_right(w.op, w.rep.assembled, cut, tol);
    const double unit = unitarity_defect(w.op.matrix);
    json residuals = {{"unitarity", unit},
                      {"admissibility", check_admissible(w.op.matrix, w.rep.assembled, OpKind::Walk).max()},
                      {"localization_ambiguity", lr.ambiguity}};
    out["class"] = to_string(w.rep.cls);
    out["n_cells"] = w.op.cells.n_cells();
    out["cut"] = cut;
    out["boundary"] = c.boundary;
    out["si_left"] = index_to_json(lr.left);
    out["si_right"] = index_to_json(lr.right);
    if (unit <= 1e-8) {
        const SiPm pm = si_pm(w.op.matrix, w.rep.assembled, c.window, tol);
        out["si_minus"] = index_to_json(pm.minus);
        out["si_plus"] = index_to_json(pm.plus);
        residuals["closed_form"] = pm.closed_form_residual;
    } else {
        std::cerr << "qwalk: walk is not unitary (defect " << unit << "), si_minus and si_plus omitted\n";
        out["si_minus"] = nullptr;
        out["si_plus"] = nullptr;
    }
    out["residuals"] = residuals;
    out["window"] = c.window;
    out["tolerances"] = tol_json(tol);
    return out;
}

struct InvariantCmd {
    WalkSource src;
    int n_k = 256;
    std::string as_class;
};

json run_invariant(const InvariantCmd& c, bool berry, const Tolerances& tol) {
    TIWalk ti = ti_from_json(c.src.load());
    require_valid_ti(ti, tol);
    if (!c.as_class.empty()) ti = forget_walk(ti, class_from_string(c.as_class));
    else if (berry && ti.cls() == SymClass::BDI) ti = forget_walk(ti, SymClass::D);
    GridOptions g;
    g.n_k = c.n_k;
    ti_gap_margin(ti, g, tol);
    const InvariantResult r = berry ? berry_phase(ti, g, tol) : winding_number(ti, g, tol);
    return {{"invariant", berry ? "berry" : "winding"},
            {"class", to_string(ti.cls())},
            {"value", r.value},
            {"raw", r.raw},
            {"residual", r.residual},
            {"n_k", r.n_k},
            {"index", index_to_json(r.index)},
            {"tolerances", tol_json(tol)}};
}

struct DecoupleCmd {
    WalkSource src;
    int n_cells = 12;
    std::string boundary = "decoupled_unitary";
    std::string topology;
    std::optional<int> cut;
    int steps = 32;
    std::string out_dir = ".";
};

void write_json(const std::filesystem::path& p, const json& j) {
    std::ofstream f(p);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + p.string());
    f << dump_canonical(j) << "\n";
}

json run_decouple(const DecoupleCmd& c, const Tolerances& tol) {
    json spec = c.src.load();
    if (!c.topology.empty()) spec["topology"] = c.topology;
    const WalkSpec ws = parse_walk_spec(spec, ws_n_cells(spec, c.n_cells), boundary_from_string(c.boundary), tol);
    if (ws.ti) require_valid_ti(*ws.ti, tol);
    const LatticeWalk& w = *ws.lattice;
    require_valid_lattice(w, tol);
    const int cut = c.cut ? *c.cut : default_cut(w);
    const Mat p = half_space_projection(w.op.cells, cut);
    std::vector<int> cuts{cut};
    if (ws.topology == Topology::Circle && cut != w.op.cells.x_min()) cuts.push_back(w.op.cells.x_min());
    const DecouplingResult r = gentle_decoupling(w.op, w.rep.assembled, p, cuts, c.steps, tol);

    json samples = json::array();
    for (size_t s = 0; s < r.path.size(); ++s) {
        const Mat wt = r.path[s] * w.op.matrix;
        samples.push_back({{"sample", s},
                           {"t", c.steps > 0 ? double(s) / c.steps : 0.0},
                           {"unitarity", unitarity_defect(wt)},
                           {"admissibility", check_admissible(wt, w.rep.assembled, OpKind::Walk).max()}});
    }
    json report = {{"cut", cut},
                   {"steps", c.steps},
                   {"commutator", r.commutator},
                   {"min_real_eig_V", r.min_real_eig_V},
                   {"dim_h01", r.dim_h01},
                   {"dim_h10", r.dim_h10},
                   {"V_unitarity", unitarity_defect(r.V)},
                   {"V_distance_to_identity", opnorm(r.V - Mat::Identity(r.V.rows(), r.V.cols()))},
                   {"path_unitarity", r.path_unitarity},
                   {"path_admissibility", r.path_admissibility},
                   {"samples", samples},
                   {"tolerances", tol_json(tol)}};

    const std::filesystem::path dir(c.out_dir);
    std::filesystem::create_directories(dir);
    write_json(dir / "V.json", {{"cell_dims", w.op.cells.dims()}, {"x_min", w.op.cells.x_min()}, {"matrix", matrix_to_json(r.V)}});
    write_json(dir / "Wprime.json", lattice_to_json(r.W_prime));
    write_json(dir / "path_report.json", report);

    report.erase("samples");
    report["files"] = {(dir / "V.json").string(), (dir / "Wprime.json").string(), (dir / "path_report.json").string()};
    return report;
}

struct JoinCmd {
    WalkSource left, right;
    int n_left = 20, n_right = 20;
    std::string topology = "line";
    double window = 0.05;
    std::string out;
};

json run_join(const JoinCmd& c, const Tolerances& tol) {
    const TIWalk a = ti_from_json(c.left.load()), b = ti_from_json(c.right.load());
    require_valid_ti(a, tol);
    require_valid_ti(b, tol);
    const LatticeWalk w = join_crossover(a, b, c.n_left, c.n_right, topology_from_string(c.topology), tol);
    const BulkBoundaryReport bb = verify_bulk_boundary(a, b, w, c.window, tol);
    const UnitaryEig ev = eig_unitary(w.op.matrix, 1e-8);
    json near = json::array();
    for (Index i = 0; i < ev.values.size(); ++i)
        if (std::min(angle_between(ev.values(i), 1.0), angle_between(ev.values(i), -1.0)) <= c.window)
            near.push_back(cplx_json(ev.values(i)));
    if (!c.out.empty()) write_json(c.out, lattice_to_json(w.op));
    return {{"class", to_string(w.rep.cls)},
            {"n_cells", w.op.cells.n_cells()},
            {"interfaces", w.interfaces},
            {"topology", c.topology},
            {"unitarity", unitarity_defect(w.op.matrix)},
            {"admissibility", check_admissible(w.op.matrix, w.rep.assembled, OpKind::Walk).max()},
            {"si_right_left_bulk", index_to_json(ti_right_index(a, {}, tol))},
            {"si_right_right_bulk", index_to_json(ti_right_index(b, {}, tol))},
            {"bulk_boundary",
             {{"expected", index_to_json(bb.expected)},
              {"measured", index_to_json(bb.measured)},
              {"near_dim", bb.near_dim},
              {"passes", bb.passes}}},
            {"near_eigenvalues", near},
            {"window", c.window},
            {"tolerances", tol_json(tol)}};
}

struct SweepCmd {
    WalkSource left, right;
    std::vector<std::string> sizes;
    std::string grow;
    double factor = 2;
    int count = 3;
    std::string topology = "circle";
    double near_threshold = SweepOptions{}.near_threshold;
};

std::vector<SweepRecord> run_sweep(const SweepCmd& c, const Tolerances& tol) {
    const TIWalk a = ti_from_json(c.left.load()), b = ti_from_json(c.right.load());
    require_valid_ti(a, tol);
    require_valid_ti(b, tol);
    std::vector<std::pair<int, int>> sizes = parse_sizes(c.sizes);
    if (!c.grow.empty()) {
        auto [na, nb] = parse_sizes({c.grow}).front();
        double fa = na, fb = nb;
        for (int i = 0; i < c.count; ++i, fa *= c.factor, fb *= c.factor)
            sizes.emplace_back(static_cast<int>(std::lround(fa)), static_cast<int>(std::lround(fb)));
    }
    if (sizes.empty()) throw Error(ErrorKind::InvalidInput, "no sizes: use --sizes or --grow");
    SweepOptions opt;
    opt.near_threshold = c.near_threshold;
    return crossover_sweep(a, b, sizes, topology_from_string(c.topology), opt, tol);
}

json sweep_json(const std::vector<SweepRecord>& recs, const Tolerances& tol) {
    json rows = json::array();
    for (const SweepRecord& r : recs) {
        json near = json::array();
        for (cplx z : r.near_eigenvalues) near.push_back(cplx_json(z));
        rows.push_back({{"n_A", r.n_A},
                        {"n_B", r.n_B},
                        {"delta", r.delta},
                        {"count_near_plus", r.count_near_plus},
                        {"count_near_minus", r.count_near_minus},
                        {"max_localization_radius", r.max_localization_radius},
                        {"near_eigenvalues", near}});
    }
    return {{"records", rows}, {"tolerances", tol_json(tol)}};
}

struct TempleKatoCmd {
    WalkSource src;
    int n_cells = 40;
    std::string boundary = "decoupled_unitary";
    std::optional<int> lo, hi;
    std::string theta = "1";
    int k = 1;
    double mode_tol = Tolerances{}.exact;
};

json run_temple_kato(const TempleKatoCmd& c, const Tolerances& tol) {
    const json spec = c.src.load();
    const WalkSpec ws = parse_walk_spec(spec, ws_n_cells(spec, c.n_cells), boundary_from_string(c.boundary), tol);
    const LatticeWalk& w = *ws.lattice;
    require_valid_lattice(w, tol);
    const int x0 = w.op.cells.x_min(), x1 = w.op.cells.x_max() + 1;
    const int mid = default_cut(w);
    const int lo = c.lo ? *c.lo : x0 + (mid - x0) / 2;
    const int hi = c.hi ? *c.hi : mid + (x1 - mid + 1) / 2;
    const TempleKatoCertificate t = certify_boundary_modes(w, lo, hi, parse_theta(c.theta), c.k, c.mode_tol, tol);
    return {{"K", t.K},
            {"theta", cplx_json(t.theta)},
            {"lo", lo},
            {"hi", hi},
            {"eps1", t.eps1},
            {"eps2", t.eps2},
            {"r_min", t.r_min},
            {"valid", t.valid},
            {"tolerances", tol_json(tol)}};
}

struct ValidateCmd {
    WalkSource src;
};

json run_validate(const ValidateCmd& c, const Tolerances& tol) {
    const json spec = c.src.load();
    const WalkSpec ws = parse_walk_spec(spec, std::nullopt, std::nullopt, tol);
    json out = {{"type", ws.type}};
    bool ok = true;
    if (ws.ti) {
        const TIValidation v = validate_ti(*ws.ti);
        out["class"] = to_string(ws.ti->cls());
        out["cell_dim"] = ws.ti->cell_dim;
        out["band"] = ws.ti->band();
        out["relations"] = v.relations;
        out["unitarity"] = v.unitarity;
        out["admissibility"] = v.admissibility;
        ok = v.relations <= tol.unit && v.unitarity <= tol.unit && v.admissibility <= tol.adm;
        try {
            out["gap_margin"] = ti_gap_margin(*ws.ti, {}, tol);
            out["gapped"] = true;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Gapless) throw;
            out["gapped"] = false;
        }
    }
    if (ws.lattice) {
        const LatticeWalk& w = *ws.lattice;
        const AdmissibilityReport a = check_admissible(w.op.matrix, w.rep.assembled, OpKind::Walk);
        json lat = {{"class", to_string(w.rep.cls)},
                    {"n_cells", w.op.cells.n_cells()},
                    {"unitarity", unitarity_defect(w.op.matrix)},
                    {"admissibility", {{"eta", a.eta}, {"tau", a.tau}, {"gamma", a.gamma}, {"max", a.max()}}},
                    {"measured_band", measured_band(w.op, tol.band)},
                    {"interfaces", w.interfaces}};
        ok = ok && a.max() <= tol.adm;
        out["lattice"] = lat;
    }
    out["valid"] = ok;
    out["tolerances"] = tol_json(tol);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qwalk: symmetry indices, decoupling and boundary certificates for 1D quantum walks"};
    app.set_config("--config", "", "Read options from an INI or TOML file");
    app.require_subcommand(1);
    app.fallthrough();

    Tolerances tol;
    bool csv = false;
    const std::vector<std::pair<const char*, double*>> tol_flags{
        {"unit", &tol.unit},   {"idx", &tol.idx},       {"eig", &tol.eig},       {"orth", &tol.orth},
        {"adm", &tol.adm},     {"exact", &tol.exact},   {"band", &tol.band},     {"split", &tol.split},
        {"window", &tol.window}, {"gap", &tol.gap},     {"det", &tol.det},       {"ker", &tol.ker},
        {"rep", &tol.rep},     {"local", &tol.local}};
    for (const auto& [name, ptr] : tol_flags)
        app.add_option(std::string("--tol-") + name, *ptr, std::string("Tolerance '") + name + "'")->capture_default_str();
    app.add_flag("--csv", csv, "Tabular output as CSV where available");

    IndexCmd ic;
    auto* index = app.add_subcommand("index", "si-, si+, left and right indices of a walk");
    ic.src.add(index);
    index->add_option("--n-cells", ic.n_cells, "Cells of the finite truncation")->capture_default_str();
    index->add_option("--boundary", ic.boundary, "compress or decoupled_unitary")->capture_default_str();
    index->add_option("--topology", ic.topology, "line or circle");
    index->add_option("--cut", ic.cut, "Cut cell a; default the first interface or the middle");
    index->add_option("--window", ic.window, "Eigenvalue window around +-1 for si-, si+, radians")->capture_default_str();

    InvariantCmd wc, bc;
    auto* winding = app.add_subcommand("winding", "Winding number of a chiral translation invariant walk");
    wc.src.add(winding);
    winding->add_option("--n-k", wc.n_k, "Initial momentum grid")->capture_default_str();
    winding->add_option("--as-class", wc.as_class, "Forget to this class first");
    auto* berry = app.add_subcommand("berry", "Berry phase index of a class D or DIII translation invariant walk");
    bc.src.add(berry);
    berry->add_option("--n-k", bc.n_k, "Initial momentum grid")->capture_default_str();
    berry->add_option("--as-class", bc.as_class, "Forget to this class first; BDI walks default to D");

    DecoupleCmd dc;
    auto* decouple = app.add_subcommand("decouple", "Gentle decoupling at a cut; writes V.json, Wprime.json, path_report.json");
    dc.src.add(decouple);
    decouple->add_option("--n-cells", dc.n_cells, "Cells of the finite system")->capture_default_str();
    decouple->add_option("--boundary", dc.boundary, "compress or decoupled_unitary")->capture_default_str();
    decouple->add_option("--topology", dc.topology, "line or circle");
    decouple->add_option("--cut", dc.cut, "Cut cell a; default the middle");
    decouple->add_option("--steps", dc.steps, "Samples of the contraction path")->capture_default_str();
    decouple->add_option("--out-dir", dc.out_dir, "Directory for the output files")->capture_default_str();

    JoinCmd jc;
    auto* join = app.add_subcommand("join", "Crossover of two walks and its bulk-boundary check");
    jc.left.add(join, "left");
    jc.right.add(join, "right");
    join->add_option("--n-left", jc.n_left, "Cells of the left walk")->capture_default_str();
    join->add_option("--n-right", jc.n_right, "Cells of the right walk")->capture_default_str();
    join->add_option("--topology", jc.topology, "line or circle")->capture_default_str();
    join->add_option("--window", jc.window, "Window around +-1 for boundary modes, radians")->capture_default_str();
    join->add_option("--out", jc.out, "Write the joined lattice walk to this file");

    SweepCmd sc;
    auto* sweep = app.add_subcommand("sweep", "Finite crossover sweep over system sizes");
    sc.left.add(sweep, "left");
    sc.right.add(sweep, "right");
    sweep->add_option("--sizes", sc.sizes, "Sizes n_A:n_B, comma separated")->delimiter(',');
    sweep->add_option("--grow", sc.grow, "Start size n_A:n_B grown geometrically");
    sweep->add_option("--factor", sc.factor, "Growth factor for --grow")->capture_default_str();
    sweep->add_option("--count", sc.count, "Rows for --grow")->capture_default_str();
    sweep->add_option("--topology", sc.topology, "line or circle")->capture_default_str();
    sweep->add_option("--near-threshold", sc.near_threshold, "1 - |Re lambda| below this is a protected mode")
        ->capture_default_str();

    TempleKatoCmd tc;
    auto* tk = app.add_subcommand("temple-kato", "Certify boundary eigenvalues at +-1 on a finite window");
    tc.src.add(tk);
    tk->add_option("--n-cells", tc.n_cells, "Cells of a truncated translation invariant walk")->capture_default_str();
    tk->add_option("--boundary", tc.boundary, "compress or decoupled_unitary")->capture_default_str();
    tk->add_option("--lo", tc.lo, "First cell of the window");
    tk->add_option("--hi", tc.hi, "One past the last cell of the window");
    tk->add_option("--theta", tc.theta, "Eigenvalue 1 or -1")->capture_default_str();
    tk->add_option("--k", tc.k, "Expected number of modes")->capture_default_str();
    tk->add_option("--mode-tol", tc.mode_tol, "Radius for picking the modes of the big walk")->capture_default_str();

    ValidateCmd vc;
    auto* validate = app.add_subcommand("validate", "Check a walk spec: relations, unitarity, admissibility, gap");
    vc.src.add(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        json out;
        if (*index) out = run_index(ic, tol);
        else if (*winding) out = run_invariant(wc, false, tol);
        else if (*berry) out = run_invariant(bc, true, tol);
        else if (*decouple) out = run_decouple(dc, tol);
        else if (*join) out = run_join(jc, tol);
        else if (*sweep) {
            const std::vector<SweepRecord> recs = run_sweep(sc, tol);
            if (csv) {
                std::cout << sweep_csv(recs);
                return 0;
            }
            out = sweep_json(recs, tol);
        } else if (*tk) out = run_temple_kato(tc, tol);
        else if (*validate) {
            out = run_validate(vc, tol);
            std::cout << dump_canonical(out) << "\n";
            return out["valid"].get<bool>() ? 0 : 2;
        }
        std::cout << dump_canonical(out) << "\n";
        return 0;
    } catch (const Error& e) {
        const int rc = exit_code(e.kind());
        std::cerr << "qwalk: " << e.what() << "\n";
        std::cout << dump_canonical({{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}, {"exit_code", rc}}}})
                  << "\n";
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "qwalk: " << e.what() << "\n";
        std::cout << dump_canonical({{"error", {{"kind", "InvalidInput"}, {"message", e.what()}, {"exit_code", 1}}}}) << "\n";
        return 1;
    }
}
