#include "qwalk/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::RelationViolation: return "RelationViolation";
        case ErrorKind::NonIntegerTrace: return "NonIntegerTrace";
        case ErrorKind::IllegalForget: return "IllegalForget";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::GapViolation: return "GapViolation";
        case ErrorKind::CutOutOfRange: return "CutOutOfRange";
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::DecouplingFailed: return "DecouplingFailed";
        case ErrorKind::IncompatibleCells: return "IncompatibleCells";
        case ErrorKind::UnitarityRepairFailed: return "UnitarityRepairFailed";
        case ErrorKind::NotAdmissible: return "NotAdmissible";
        case ErrorKind::WindowAmbiguous: return "WindowAmbiguous";
        case ErrorKind::EigenspaceAmbiguous: return "EigenspaceAmbiguous";
        case ErrorKind::Obstructed: return "Obstructed";
        case ErrorKind::NotDecoupled: return "NotDecoupled";
        case ErrorKind::Gapless: return "Gapless";
        case ErrorKind::NotChiral: return "NotChiral";
        case ErrorKind::SingularBlock: return "SingularBlock";
        case ErrorKind::RankJump: return "RankJump";
        case ErrorKind::OddDimensionAII: return "OddDimensionAII";
        case ErrorKind::Unbalanced: return "Unbalanced";
        case ErrorKind::NotNormal: return "NotNormal";
        case ErrorKind::NotEnoughModes: return "NotEnoughModes";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

std::string to_string(SymClass c) {
    switch (c) {
        case SymClass::A: return "A";
        case SymClass::D: return "D";
        case SymClass::C: return "C";
        case SymClass::AI: return "AI";
        case SymClass::AII: return "AII";
        case SymClass::AIII: return "AIII";
        case SymClass::BDI: return "BDI";
        case SymClass::CI: return "CI";
        case SymClass::CII: return "CII";
        case SymClass::DIII: return "DIII";
    }
    return "?";
}

SymClass class_from_string(const std::string& s) {
    for (auto c : kAllClasses)
        if (to_string(c) == s) return c;
    throw Error(ErrorKind::InvalidInput, "unknown symmetry class '" + s + "'");
}

std::string to_string(Group g) {
    switch (g) {
        case Group::Trivial: return "0";
        case Group::Z: return "Z";
        case Group::Z2: return "Z2";
        case Group::TwoZ: return "2Z";
        case Group::TwoZ2: return "2Z2";
    }
    return "?";
}

bool ClassInfo::has(Sym s) const { return square(s) != 0; }

int ClassInfo::square(Sym s) const {
    switch (s) {
        case Sym::Eta: return eta_sq;
        case Sym::Tau: return tau_sq;
        case Sym::Gamma: return gamma_sq;
    }
    return 0;
}

ClassInfo class_info(SymClass c) {
    switch (c) {
        case SymClass::A: return {0, 0, 0};
        case SymClass::D: return {1, 0, 0};
        case SymClass::C: return {-1, 0, 0};
        case SymClass::AI: return {0, 1, 0};
        case SymClass::AII: return {0, -1, 0};
        case SymClass::AIII: return {0, 0, 1};
        case SymClass::BDI: return {1, 1, 1};
        case SymClass::CI: return {-1, 1, -1};
        case SymClass::CII: return {-1, -1, 1};
        case SymClass::DIII: return {1, -1, -1};
    }
    return {};
}

Group index_group_of(SymClass c) {
    switch (c) {
        case SymClass::D: return Group::Z2;
        case SymClass::AIII:
        case SymClass::BDI: return Group::Z;
        case SymClass::CII: return Group::TwoZ;
        case SymClass::DIII: return Group::TwoZ2;
        default: return Group::Trivial;
    }
}

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

long canonical(Group g, long v) {
    switch (g) {
        case Group::Trivial: return 0;
        case Group::Z: return v;
        case Group::Z2: return mod(v, 2);
        case Group::TwoZ:
            if (v % 2 != 0) throw Error(ErrorKind::NonIntegerTrace, "odd value in 2Z");
            return v;
        case Group::TwoZ2:
            if (v % 2 != 0) throw Error(ErrorKind::NonIntegerTrace, "odd value in 2Z2");
            return mod(v, 4);
    }
    return v;
}

}  // namespace

IndexValue::IndexValue(Group g, long v) : group_(g), value_(canonical(g, v)) {}

IndexValue IndexValue::operator+(const IndexValue& o) const {
    if (group_ != o.group_) throw Error(ErrorKind::InvalidInput, "adding indices of different groups");
    return IndexValue(group_, value_ + o.value_);
}

IndexValue IndexValue::operator-() const { return IndexValue(group_, -value_); }

std::string to_string(const IndexValue& v) {
    return std::to_string(v.value()) + " in " + to_string(v.group());
}

Vec SymOp::apply(const Vec& v) const { return antiunitary ? Vec(matrix * v.conjugate()) : Vec(matrix * v); }

Mat SymOp::apply(const Mat& cols) const {
    return antiunitary ? Mat(matrix * cols.conjugate()) : Mat(matrix * cols);
}

Mat SymOp::conjugate(const Mat& x) const {
    if (antiunitary) return matrix * x.conjugate() * matrix.adjoint();
    return matrix * x * matrix.adjoint();
}

SymOp SymOp::inverse() const {
    // (M K)^{-1} = K M^* = conj(M^*) K
    if (antiunitary) return {Mat(matrix.adjoint().conjugate()), true};
    return {Mat(matrix.adjoint()), false};
}

SymOp SymOp::compose(const SymOp& a, const SymOp& b) {
    Mat m = a.antiunitary ? Mat(a.matrix * b.matrix.conjugate()) : Mat(a.matrix * b.matrix);
    return {m, a.antiunitary != b.antiunitary};
}

SymOp operator*(const SymOp& a, const SymOp& b) { return SymOp::compose(a, b); }
SymOp operator-(const SymOp& a) { return {Mat(-a.matrix), a.antiunitary}; }

const std::optional<SymOp>& SymmetryRep::op(Sym s) const {
    switch (s) {
        case Sym::Eta: return eta;
        case Sym::Tau: return tau;
        default: return gamma;
    }
}

std::optional<SymOp>& SymmetryRep::op(Sym s) {
    switch (s) {
        case Sym::Eta: return eta;
        case Sym::Tau: return tau;
        default: return gamma;
    }
}

double RelationReport::max() const {
    return std::max({unitarity, squares, commutation, phase, presence});
}

namespace {

double op_diff(const SymOp& a, const SymOp& b) {
    if (a.antiunitary != b.antiunitary) return 2.0;
    return opnorm(a.matrix - b.matrix);
}

}  // namespace

RelationReport check_rep_relations(const SymmetryRep& rep) {
    RelationReport r;
    const ClassInfo info = class_info(rep.cls);
    const Index n = rep.dim;
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
        const auto& o = rep.op(s);
        if (info.has(s) != o.has_value()) {
            r.presence = 1.0;
            continue;
        }
        if (!o) continue;
        if (o->matrix.rows() != n || o->matrix.cols() != n) {
            r.presence = 1.0;
            continue;
        }
        const bool want_anti = s != Sym::Gamma;
        if (o->antiunitary != want_anti) r.presence = 1.0;
        if (n == 0) continue;
        r.unitarity = std::max(r.unitarity, opnorm(o->matrix.adjoint() * o->matrix - Mat::Identity(n, n)));
        const Mat sq = o->square().matrix;
        r.squares = std::max(r.squares, opnorm(sq - double(info.square(s)) * Mat::Identity(n, n)));
    }
    if (r.presence > 0 || n == 0) return r;
    if (rep.eta && rep.tau && rep.gamma) {
        const SymOp et = *rep.eta * *rep.tau;
        const SymOp te = *rep.tau * *rep.eta;
        r.phase = op_diff(et, *rep.gamma);
        r.commutation = std::max({op_diff(et, te), op_diff(*rep.eta * *rep.gamma, *rep.gamma * *rep.eta),
                                  op_diff(*rep.tau * *rep.gamma, *rep.gamma * *rep.tau)});
    }
    return r;
}

RepIndexResult rep_index_report(const SymmetryRep& rep, const RepIndexOptions& opt) {
    const RelationReport rel = check_rep_relations(rep);
    if (!rel.passes(opt.relation_tol))
        throw Error(ErrorKind::RelationViolation, "representation residual " + std::to_string(rel.max()));
    const Group g = index_group_of(rep.cls);
    RepIndexResult out;
    switch (rep.cls) {
        case SymClass::D: out.value = IndexValue(g, static_cast<long>(rep.dim % 2)); break;
        case SymClass::DIII:
            if (rep.dim % 2 != 0) throw Error(ErrorKind::RelationViolation, "odd dimensional DIII rep");
            out.value = IndexValue(g, static_cast<long>(rep.dim % 4));
            break;
        case SymClass::AIII:
        case SymClass::BDI:
        case SymClass::CII: {
            const double tr = rep.dim == 0 ? 0.0 : rep.gamma->matrix.trace().real();
            const double rounded = std::round(tr);
            out.residual = std::abs(tr - rounded);
            if (out.residual > opt.idx_tol)
                throw Error(ErrorKind::NonIntegerTrace, "tr gamma = " + std::to_string(tr));
            const long v = static_cast<long>(rounded);
            if (g == Group::TwoZ && v % 2 != 0)
                throw Error(ErrorKind::RelationViolation, "odd chiral trace in CII");
            out.value = IndexValue(g, v);
            break;
        }
        default: out.value = IndexValue::zero(g);
    }
    return out;
}

IndexValue rep_index(const SymmetryRep& rep, const RepIndexOptions& opt) {
    return rep_index_report(rep, opt).value;
}

bool is_balanced(const SymmetryRep& rep, const RepIndexOptions& opt) { return rep_index(rep, opt).is_zero(); }

IndexValue forget(const IndexValue& v, SymClass from, SymClass to) {
    if (v.group() != index_group_of(from)) throw Error(ErrorKind::InvalidInput, "value not in the group of " + to_string(from));
    if (from == to) return v;
    const Group tg = index_group_of(to);
    if (tg == Group::Trivial) return IndexValue::zero(tg);
    if (to == SymClass::AIII) {
        if (from == SymClass::BDI || from == SymClass::CII) return IndexValue(tg, v.value());
        if (from == SymClass::DIII) return IndexValue::zero(tg);
    }
    if (to == SymClass::D) {
        if (from == SymClass::BDI) return IndexValue(tg, v.value());
        if (from == SymClass::DIII) return IndexValue::zero(tg);
    }
    throw Error(ErrorKind::IllegalForget, to_string(from) + " -> " + to_string(to));
}

SymmetryRep inverse_rep(const SymmetryRep& rep) {
    SymmetryRep out = rep;
    if (out.tau) out.tau = -*out.tau;
    if (out.gamma) out.gamma = -*out.gamma;
    return out;
}

Mat nearest_unitary(const Mat& m) {
    if (m.size() == 0) return m;
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

SymmetryRep restrict_rep(const SymmetryRep& rep, const Mat& basis) {
    SymmetryRep out;
    out.cls = rep.cls;
    out.dim = basis.cols();
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
        const auto& o = rep.op(s);
        if (!o) continue;
        Mat m = o->antiunitary ? Mat(basis.adjoint() * o->matrix * basis.conjugate())
                               : Mat(basis.adjoint() * o->matrix * basis);
        out.op(s) = SymOp{nearest_unitary(m), o->antiunitary};
    }
    return out;
}

SymmetryRep direct_sum(const SymmetryRep& a, const SymmetryRep& b) {
    if (a.cls != b.cls) throw Error(ErrorKind::InvalidInput, "direct sum of different classes");
    SymmetryRep out;
    out.cls = a.cls;
    out.dim = a.dim + b.dim;
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
        if (!a.op(s)) continue;
        Mat m = Mat::Zero(out.dim, out.dim);
        m.topLeftCorner(a.dim, a.dim) = a.op(s)->matrix;
        m.bottomRightCorner(b.dim, b.dim) = b.op(s)->matrix;
        out.op(s) = SymOp{m, a.op(s)->antiunitary};
    }
    return out;
}

SymmetryRep conjugate_rep(const SymmetryRep& rep, const Mat& u) {
    // sigma' = U sigma U^*; for antiunitary M K -> U M conj(U)^* K
    SymmetryRep out = rep;
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
        auto& o = out.op(s);
        if (!o) continue;
        o->matrix = o->antiunitary ? Mat(u * o->matrix * u.transpose()) : Mat(u * o->matrix * u.adjoint());
    }
    return out;
}

SymmetryRep forget_rep(const SymmetryRep& rep, SymClass to) {
    const ClassInfo from_info = class_info(rep.cls);
    const ClassInfo to_info = class_info(to);
    SymmetryRep out;
    out.cls = to;
    out.dim = rep.dim;
    for (Sym s : {Sym::Eta, Sym::Tau, Sym::Gamma}) {
        if (!to_info.has(s)) continue;
        out.op(s) = rep.op(s);
        if (from_info.square(s) == to_info.square(s)) continue;
        // A unitary chiral operator is fixed only up to a phase: i gamma squares to -gamma^2.
        if (s == Sym::Gamma) out.op(s)->matrix *= kI;
        else throw Error(ErrorKind::IllegalForget, to_string(rep.cls) + " -> " + to_string(to));
    }
    return out;
}

SymmetryRep standard_cell_rep(SymClass c) {
    const Mat one2 = Mat::Identity(2, 2);
    Mat sz = Mat::Zero(2, 2);
    sz << 1, 0, 0, -1;
    Mat j = Mat::Zero(2, 2);
    j << 0, -1, 1, 0;
    SymmetryRep r;
    r.cls = c;
    switch (c) {
        case SymClass::A: r.dim = 1; break;
        case SymClass::AI:
            r.dim = 1;
            r.tau = SymOp{Mat::Identity(1, 1), true};
            break;
        case SymClass::AII:
            r.dim = 2;
            r.tau = SymOp{j, true};
            break;
        case SymClass::D:
            r.dim = 2;
            r.eta = SymOp{one2, true};
            break;
        case SymClass::C:
            r.dim = 2;
            r.eta = SymOp{j, true};
            break;
        case SymClass::AIII:
            r.dim = 2;
            r.gamma = SymOp{sz, false};
            break;
        case SymClass::BDI:
            r.dim = 2;
            r.tau = SymOp{one2, true};
            r.gamma = SymOp{sz, false};
            r.eta = *r.tau * *r.gamma;
            break;
        case SymClass::CI:
            r.dim = 2;
            r.tau = SymOp{one2, true};
            r.eta = SymOp{j, true};
            r.gamma = *r.eta * *r.tau;
            break;
        case SymClass::CII: {
            // doubled chiral rep: gamma + gamma, eta = [[0, -e], [e, 0]]
            r.dim = 4;
            const SymmetryRep b = standard_cell_rep(SymClass::BDI);
            Mat g = Mat::Zero(4, 4), e = Mat::Zero(4, 4);
            g.topLeftCorner(2, 2) = b.gamma->matrix;
            g.bottomRightCorner(2, 2) = b.gamma->matrix;
            e.topRightCorner(2, 2) = -b.eta->matrix;
            e.bottomLeftCorner(2, 2) = b.eta->matrix;
            r.gamma = SymOp{g, false};
            r.eta = SymOp{e, true};
            r.tau = r.eta->inverse() * *r.gamma;
            break;
        }
        case SymClass::DIII: {
            r.dim = 4;
            const SymmetryRep b = standard_cell_rep(SymClass::BDI);
            Mat g = Mat::Zero(4, 4), e = Mat::Zero(4, 4);
            e.topLeftCorner(2, 2) = b.eta->matrix;
            e.bottomRightCorner(2, 2) = b.eta->matrix;
            g.topRightCorner(2, 2) = -one2;
            g.bottomLeftCorner(2, 2) = one2;
            r.gamma = SymOp{g, false};
            r.eta = SymOp{e, true};
            r.tau = r.eta->inverse() * *r.gamma;
            break;
        }
    }
    return r;
}

}  // namespace qwalk
