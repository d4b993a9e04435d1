/// Symmetry types, finite dimensional representations and their index.
#pragma once

#include "qwalk/types.hpp"

#include <array>
#include <optional>
#include <string>

namespace qwalk {

enum class SymClass { A, D, C, AI, AII, AIII, BDI, CI, CII, DIII };
enum class Sym { Eta, Tau, Gamma };
enum class Group { Trivial, Z, Z2, TwoZ, TwoZ2 };

inline constexpr std::array<SymClass, 10> kAllClasses{
    SymClass::A,    SymClass::D,   SymClass::C,  SymClass::AI,  SymClass::AII,
    SymClass::AIII, SymClass::BDI, SymClass::CI, SymClass::CII, SymClass::DIII};

std::string to_string(SymClass c);
SymClass class_from_string(const std::string& s);
std::string to_string(Group g);

/// Squares of the present symmetries; 0 marks an absent one.
struct ClassInfo {
    int eta_sq = 0;
    int tau_sq = 0;
    int gamma_sq = 0;
    bool has(Sym s) const;
    int square(Sym s) const;
};

ClassInfo class_info(SymClass c);
Group index_group_of(SymClass c);

class IndexValue {
public:
    IndexValue() = default;
    IndexValue(Group g, long v);
    static IndexValue zero(Group g) { return IndexValue(g, 0); }

    Group group() const { return group_; }
    long value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    IndexValue operator+(const IndexValue& o) const;
    IndexValue operator-() const;
    IndexValue operator-(const IndexValue& o) const { return *this + (-o); }
    bool operator==(const IndexValue& o) const = default;

private:
    Group group_ = Group::Trivial;
    long value_ = 0;
};

std::string to_string(const IndexValue& v);

/// psi -> M psi, or psi -> M conj(psi) when antiunitary.
struct SymOp {
    Mat matrix;
    bool antiunitary = false;

    Index dim() const { return matrix.rows(); }
    Vec apply(const Vec& v) const;
    Mat apply(const Mat& cols) const;
    /// sigma X sigma^*
    Mat conjugate(const Mat& x) const;
    SymOp square() const { return compose(*this, *this); }
    SymOp inverse() const;
    static SymOp compose(const SymOp& a, const SymOp& b);
};

SymOp operator*(const SymOp& a, const SymOp& b);
SymOp operator-(const SymOp& a);

struct SymmetryRep {
    SymClass cls = SymClass::A;
    Index dim = 0;
    std::optional<SymOp> eta, tau, gamma;

    const std::optional<SymOp>& op(Sym s) const;
    std::optional<SymOp>& op(Sym s);
};

struct RelationReport {
    double unitarity = 0;
    double squares = 0;
    double commutation = 0;
    double phase = 0;  // || eta tau - gamma ||
    double presence = 0;  // 1 when the operator set does not match the class
    double max() const;
    bool passes(double tol) const { return max() <= tol; }
};

RelationReport check_rep_relations(const SymmetryRep& rep);

struct RepIndexOptions {
    double relation_tol = Tolerances{}.unit;
    double idx_tol = Tolerances{}.idx;
};

struct RepIndexResult {
    IndexValue value;
    double residual = 0;
};

RepIndexResult rep_index_report(const SymmetryRep& rep, const RepIndexOptions& opt = {});
IndexValue rep_index(const SymmetryRep& rep, const RepIndexOptions& opt = {});
bool is_balanced(const SymmetryRep& rep, const RepIndexOptions& opt = {});
IndexValue forget(const IndexValue& v, SymClass from, SymClass to);
SymmetryRep inverse_rep(const SymmetryRep& rep);

/// Operators restricted to span(basis) via B^* sigma B, re-orthonormalized.
SymmetryRep restrict_rep(const SymmetryRep& rep, const Mat& basis);
SymmetryRep direct_sum(const SymmetryRep& a, const SymmetryRep& b);
SymmetryRep conjugate_rep(const SymmetryRep& rep, const Mat& u);
/// Drop symmetries so the rep is read as one of a forgetful target class.
SymmetryRep forget_rep(const SymmetryRep& rep, SymClass to);

/// Smallest balanced cell rep of each class, used by builders and tests.
SymmetryRep standard_cell_rep(SymClass c);

/// Nearest unitary in operator norm.
Mat nearest_unitary(const Mat& m);

}  // namespace qwalk
