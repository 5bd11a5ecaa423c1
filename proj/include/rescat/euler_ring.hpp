#pragma once

#include "rescat/intmat.hpp"

#include <map>

namespace rescat {

// Ambient (weighted) projective space P(w).  Straight P^n is all weights 1.
struct AmbientSpace {
    std::vector<long long> weights; // nonempty, each >= 1

    static AmbientSpace pn(int n);
    static AmbientSpace weighted(std::vector<long long> w);

    int n() const { return int(weights.size()) - 1; }
    long long total_weight() const;
    bool straight() const;

    // Coefficients of prod_i (1 - t^{w_i}); degree |w|, constant term 1.
    // This is the Koszul relation among the twisting classes.
    IntVec relation_poly() const;

    bool operator==(const AmbientSpace& o) const { return weights == o.weights; }
};

// chi(O(m)) on the ambient space, exact for every integer m.  Straight P^n
// uses the polynomial binomial C(n+m, n); weighted spaces count monomials of
// weighted degree m for m >= 0 and reflect through Serre duality below.
Int euler_char(const AmbientSpace& space, long long m);

// Element of the numerical K-theory of the ambient space over the
// twisting-sheaf basis [O(i)]; finitely supported integer coefficients.
struct KClass {
    AmbientSpace space;
    std::map<long long, Int> coeffs;

    static KClass structure_sheaf(const AmbientSpace& s) { return line(s, 0); }
    static KClass line(const AmbientSpace& s, long long i);

    KClass& add(long long i, const Int& c);
    bool operator==(const KClass& o) const;
};

// Canonical representative supported in the window 0 <= i <= |w| - 1,
// obtained by rewriting extremal terms through the Koszul relation.
KClass reduce(const KClass& c);

// Shift every index by j, then reduce.
KClass twist(const KClass& c, long long j);

// Reduced product prod_i (1 - [O(-d_i)]), the class of the structure sheaf
// of a complete intersection of the given degrees.
KClass koszul_class(const AmbientSpace& space, const std::vector<long long>& degrees);

// chi of a class = pairing against [O].
Int kclass_euler(const KClass& c);

// Ambient Euler pairing chi(u, v) = sum a_i b_j chi(O(j - i)).
Int kclass_pair(const KClass& u, const KClass& v);

// chi_X(O_X(a), O_X(b)) for the complete intersection of `degrees`,
// computed as chi_P(O(b-a) * koszul_class).  Depends only on b - a.
Int euler_pair(const AmbientSpace& space, const std::vector<long long>& degrees,
               long long a, long long b);

} // namespace rescat
