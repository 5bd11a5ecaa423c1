#pragma once

#include "rescat/ci_lattice.hpp"

#include <iosfwd>

namespace rescat {

// Exact rational extended by +-infinity.  The implemented formulas never
// produce infinities, but the algebra supports them.
struct ExtRat {
    enum Kind { Finite, PlusInf, MinusInf } kind = Finite;
    Rat value;

    ExtRat() = default;
    ExtRat(Rat v) : kind(Finite), value(std::move(v)) {}
    ExtRat(long long v) : kind(Finite), value(v) {}
    static ExtRat plus_inf() {
        ExtRat r;
        r.kind = PlusInf;
        return r;
    }
    static ExtRat minus_inf() {
        ExtRat r;
        r.kind = MinusInf;
        return r;
    }

    bool finite() const { return kind == Finite; }
    bool operator==(const ExtRat& o) const {
        return kind == o.kind && (kind != Finite || value == o.value);
    }
    ExtRat operator+(const Rat& r) const;
    ExtRat scaled(const Rat& r) const; // r > 0
    ExtRat negated() const;
    bool operator<=(const ExtRat& o) const;
    std::string str() const;
};

// Upper and lower F-dimension of an endofunctor; lower <= upper.
struct FDim {
    ExtRat upper, lower;
    bool operator==(const FDim& o) const { return upper == o.upper && lower == o.lower; }
};

enum class FDimOp { Shift, Power, Invert };

// Shift adds to both dimensions, powers scale them, inversion swaps and
// negates them.
FDim fdim_algebra(const FDim& dim, FDimOp op, long long arg = 0);

// usdim = dim X - 2 ind X / d_max, lsdim = dim X - 2 ind X / d_min.
// Requires straight P^n and all degrees >= 2 after normalization.
std::pair<Rat, Rat> serre_dims(const CompleteIntersection& X);

// Top nonvanishing Hochschild degree: dim X - 2 ceil(ind X / d_max),
// except 0 for odd-dimensional quadrics.
long long hochschild_level(const CompleteIntersection& X);

struct Geometricity {
    bool possible = false;
    long long common_degree = 0; // only meaningful when possible
    long long required_dim = 0;
};
// R_X can only be a derived category of a variety Z when all degrees equal
// some d dividing 2(n+1); then dim Z = n + k - 2(n+1)/d.
Geometricity geometricity_test(const CompleteIntersection& X);

// A Serre-invariant pre-stability condition can exist only if
// usdim = lsdim; returns true when that is obstructed.
bool serre_invariance_obstruction(const Rat& usdim, const Rat& lsdim);
bool serre_invariance_obstruction(const CompleteIntersection& X);

// Twist dimensions of the induction step: the source twist on R_M has
// dims (-2 d_k/d_1, -2 d_k/d_{k-1}), the target twist on R_X has
// (-2 d_k/d_1 + 2, 0).  Source is absent for hypersurfaces (R_M = 0).
struct TwistDimLedger {
    std::optional<FDim> source;
    FDim target;
};
TwistDimLedger twist_dim_ledger(const CompleteIntersection& X);

// The twist of a d-spherical object with nonzero orthogonal has dims (0, 1-d).
FDim spherical_twist_dims(long long d);

// Serre dimensions of the refined component A_X of a (2, n-2) intersection:
// (2n-7, ((n-2)^2-2)/(n-2)) for n >= 5 odd.
std::pair<Rat, Rat> refined_AX_dims(int n);

// Symbolic descriptor of the double-cover identity
//   S_{R_X}^{d_k/c} = T^{ind(X)/c} o tau^{ind(X)/c} o [(d_k dim X - ind X)/c]
// (tau is not modeled at lattice level; formula-level only).
struct DoubleCoverIdentity {
    long long m = 0, d = 0, c = 0;
    long long dim_X = 0, ind_X = 0;
    long long serre_power = 0;       // d/c
    long long twist_power = 0;       // ind(X)/c
    long long tau_power = 0;         // ind(X)/c
    long long shift = 0;             // (d dim X - ind X)/c
    bool shift_even = false;
    long long source_serre_power = 0; // d/c on R_M
    long long source_twist_power = 0; // ind(M)/c = m/c
    long long source_shift = 0;       // (d dim M - m)/c
    bool twist_trivial = false;       // R_M = 0 (all parent degrees 1)
};
DoubleCoverIdentity double_cover_report(const CompleteIntersection& M, long long d_k);

// Full per-entry dimension report consumed by the CLI.
struct DimensionReport {
    CompleteIntersection X;
    Rat usdim, lsdim;
    std::optional<Rat> frac_cy; // present iff all degrees equal
    long long hl = 0;
    Geometricity geometric;
    bool serre_invariant_possible = true;
    TwistDimLedger twist_dims;
    bool smooth_attainability_assumed = true;
    std::vector<std::string> notes;
};
DimensionReport dimension_report(const CompleteIntersection& X);

std::string rat_str(const Rat& r);

} // namespace rescat
