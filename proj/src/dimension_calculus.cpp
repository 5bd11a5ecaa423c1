#include "rescat/dimension_calculus.hpp"

#include <numeric>
#include <sstream>

namespace rescat {

ExtRat ExtRat::operator+(const Rat& r) const {
    if (kind != Finite) return *this;
    return ExtRat(value + r);
}

ExtRat ExtRat::scaled(const Rat& r) const {
    if (r <= 0) throw std::invalid_argument("ExtRat::scaled: factor must be positive");
    if (kind != Finite) return *this;
    return ExtRat(value * r);
}

ExtRat ExtRat::negated() const {
    if (kind == PlusInf) return minus_inf();
    if (kind == MinusInf) return plus_inf();
    return ExtRat(-value);
}

bool ExtRat::operator<=(const ExtRat& o) const {
    if (kind == MinusInf || o.kind == PlusInf) return true;
    if (kind == PlusInf) return o.kind == PlusInf;
    if (o.kind == MinusInf) return false;
    return value <= o.value;
}

std::string ExtRat::str() const {
    if (kind == PlusInf) return "+inf";
    if (kind == MinusInf) return "-inf";
    return rat_str(value);
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

FDim fdim_algebra(const FDim& dim, FDimOp op, long long arg) {
    switch (op) {
    case FDimOp::Shift:
        return {dim.upper + Rat(arg), dim.lower + Rat(arg)};
    case FDimOp::Power:
        if (arg < 1) throw std::invalid_argument("fdim_algebra: power must be >= 1");
        return {dim.upper.scaled(Rat(arg)), dim.lower.scaled(Rat(arg))};
    case FDimOp::Invert:
        return {dim.lower.negated(), dim.upper.negated()};
    }
    throw std::logic_error("unreachable");
}

namespace {

void require_straight_normalized(const CompleteIntersection& X) {
    if (!X.space.straight())
        throw std::invalid_argument("serre dimension formulas need straight P^n");
    for (long long d : X.degrees)
        if (d < 2) throw std::logic_error("degree-1 entries should have been normalized away");
    if (X.index() < 0) throw NotFano("index < 0");
}

} // namespace

std::pair<Rat, Rat> serre_dims(const CompleteIntersection& X) {
    require_straight_normalized(X);
    if (X.degrees.empty()) {
        // projective space itself: R_X = 0 by convention; report dim X
        return {Rat(X.dim()), Rat(X.dim())};
    }
    Rat u = Rat(X.dim()) - Rat(2 * X.index(), X.dmax());
    Rat l = Rat(X.dim()) - Rat(2 * X.index(), X.dmin());
    return {u, l};
}

long long hochschild_level(const CompleteIntersection& X) {
    require_straight_normalized(X);
    if (X.degrees.empty()) return X.dim();
    if (X.degrees.size() == 1 && X.degrees[0] == 2 && X.dim() % 2 == 1) return 0; // odd quadric
    long long q = (X.index() + X.dmax() - 1) / X.dmax(); // ceil
    return X.dim() - 2 * q;
}

Geometricity geometricity_test(const CompleteIntersection& X) {
    require_straight_normalized(X);
    Geometricity g;
    if (X.degrees.empty()) return g;
    long long d = X.degrees.front();
    for (long long di : X.degrees)
        if (di != d) return g;
    long long n = X.space.n(), k = long(X.degrees.size());
    if ((2 * (n + 1)) % d != 0) return g;
    g.possible = true;
    g.common_degree = d;
    g.required_dim = n + k - 2 * (n + 1) / d;
    return g;
}

bool serre_invariance_obstruction(const Rat& usdim, const Rat& lsdim) { return usdim != lsdim; }

bool serre_invariance_obstruction(const CompleteIntersection& X) {
    auto [u, l] = serre_dims(X);
    return serre_invariance_obstruction(u, l);
}

TwistDimLedger twist_dim_ledger(const CompleteIntersection& X) {
    require_straight_normalized(X);
    if (X.degrees.empty()) throw SplitRequired("twist_dim_ledger: no degrees to split");
    if (X.split_pos() != X.degrees.size() - 1)
        throw std::invalid_argument("twist_dim_ledger: d_k must be the smallest degree");
    TwistDimLedger led;
    const long long dk = X.degrees.back();
    const long long d1 = X.degrees.front();
    if (X.degrees.size() >= 2) {
        const long long dk1 = X.degrees[X.degrees.size() - 2]; // smallest degree of M
        led.source = FDim{Rat(-2 * dk, d1), Rat(-2 * dk, dk1)};
    }
    led.target = FDim{Rat(-2 * dk, d1) + Rat(2), Rat(0)};
    return led;
}

FDim spherical_twist_dims(long long d) {
    if (d < 1) throw std::invalid_argument("spherical_twist_dims: need d >= 1");
    return {Rat(0), Rat(1 - d)};
}

std::pair<Rat, Rat> refined_AX_dims(int n) {
    if (n < 5 || n % 2 == 0) throw BadParity("refined_AX_dims: need n >= 5 odd");
    Rat u = Rat(2 * n - 7);
    Rat l = Rat((long long)(n - 2) * (n - 2) - 2, n - 2);
    return {u, l};
}

DoubleCoverIdentity double_cover_report(const CompleteIntersection& M, long long d_k) {
    if (d_k < 1) throw std::invalid_argument("double_cover_report: need d_k >= 1");
    long long total = std::accumulate(M.degrees.begin(), M.degrees.end(), 0LL) + d_k;
    if (total > M.space.total_weight()) throw NotFano("double cover breaks the Fano bound");
    DoubleCoverIdentity r;
    r.m = M.index();
    r.d = d_k;
    r.c = std::gcd(r.m, r.d);
    r.dim_X = M.dim();            // double cover has the same dimension as M
    r.ind_X = r.m - d_k;
    r.serre_power = r.d / r.c;
    r.twist_power = r.ind_X / r.c;
    r.tau_power = r.ind_X / r.c;
    r.shift = (r.d * r.dim_X - r.ind_X) / r.c;
    r.shift_even = (r.shift % 2 == 0);
    r.source_serre_power = r.d / r.c;
    r.source_twist_power = r.m / r.c;
    r.source_shift = (r.d * M.dim() - r.m) / r.c;
    r.twist_trivial = M.degrees.empty();
    return r;
}

DimensionReport dimension_report(const CompleteIntersection& X) {
    DimensionReport rep{X, 0, 0, std::nullopt, 0, {}, true, {}, true, {}};
    auto [u, l] = serre_dims(X);
    rep.usdim = u;
    rep.lsdim = l;
    if (!(rep.lsdim <= rep.usdim)) throw std::logic_error("lsdim > usdim");
    if (!X.degrees.empty() && u == l) rep.frac_cy = u;
    rep.hl = hochschild_level(X);
    if (!(Rat(rep.hl) <= rep.usdim)) throw std::logic_error("hl > usdim");
    rep.geometric = geometricity_test(X);
    rep.serre_invariant_possible = !serre_invariance_obstruction(u, l);
    if (!X.degrees.empty()) {
        CompleteIntersection sorted = X;
        sorted.split_index.reset(); // ledger formulas split off the smallest degree
        rep.twist_dims = twist_dim_ledger(sorted);
    }
    rep.smooth_attainability_assumed = true;
    rep.notes.push_back("smooth attainability assumed (automatic in characteristic 0)");
    rep.notes.push_back(
        "lattice verifications cover the span of twisting-sheaf restrictions only; "
        "they are necessary-condition checks, not a computation of the full K_0");
    return rep;
}

} // namespace rescat
