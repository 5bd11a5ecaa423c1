#pragma once

#include "rescat/ci_lattice.hpp"

namespace rescat {

struct InconsistentSystem : std::domain_error {
    using std::domain_error::domain_error;
};
struct ExponentNotIntegral : std::domain_error {
    using std::domain_error::domain_error;
};

// Spinor-extended numerical lattice of a smooth quadric Q in P^n.
// The presentation keeps the twisting classes of the base lattice plus one
// (n even) or two (n odd) spinor classes; the spinor pairing rows are solved
// from semiorthogonality, the alpha-recursion of the spinor sequences, and
// Serre duality rather than hardcoded.
struct QuadricLattice {
    int n = 0;                  // Q in P^n, dim Q = n - 1
    int spinor_count = 0;       // 1 for n even, 2 for n odd
    long long spinor_rank = 0;  // r = 2^(ceil((n-1)/2) - 1)
    long long N = 0;            // 2r, the rank in the spinor sequences
    NumLattice base;            // twisting classes of Q

    Mat ext_gram;   // presentation Gram on (base, spinors)
    Mat ext_alpha;  // presentation twist
    NumLattice quotient; // radical quotient with labels O(i), S+, S- (or S)

    std::vector<std::string> spinor_names() const;
};

QuadricLattice extend_quadric_lattice(int n);

// Spinor-extended lattice of a degree-d divisor X = Q cap (deg d), pairing
// chi_X(i^*u, i^*v) = chi_Q(u, v (1 - [O(-d)])), radical-quotiented.
// Labels: O(i), S+|X, S-|X (or S|X).
NumLattice restrict_to_divisor(const QuadricLattice& QL, long long d);

// Main identity for divisors in quadrics: on the residual of X,
//   S_R^{d/c} = +- T_{spinors}^{(n-1-d)/c}, c = gcd(d, n-1),
// plus the sigma_0^d-spherical pair test at parities n-3, run under both
// spinor labelings.
VerificationReport verify_quadric_divisor_identity(int n, long long d);

// Refined residual category A_X of the (2, n-2) intersection, n >= 5 odd:
// A = {v : chi([O_X], v) = 0 = chi([S+|X], v)}, the class K = [S+|X] - [S-|X]
// with chi(K, K) = 0, the Serre operator of A via block mutation, and T_K.
struct RefinedAX {
    int n = 0;
    NumLattice LX;
    Mat a_basis;            // LX.rank x rank(A)
    Mat a_gram;
    IntVec k_class;         // [K] in LX coordinates
    IntVec k_in_A;          // [K] in A-basis coordinates
    LatticeOperator serre_A;
    LatticeOperator twist_K;     // v -> v - chi(K, v) K on the A-lattice
    LatticeOperator twist_K_inv; // v -> v + chi(K, v) K
    std::string plus_label;      // which spinor played S+
};
RefinedAX build_refined_AX(int n, bool swap_labeling = false);

// Refined identity: S_A^{n-2} = +- T_K^{(3-n)/2} on the A-lattice.
VerificationReport verify_refined_identity(int n);

} // namespace rescat
