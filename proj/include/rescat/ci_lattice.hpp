#pragma once

#include "rescat/euler_ring.hpp"

#include <map>
#include <optional>
#include <string>

namespace rescat {

struct NotFano : std::domain_error {
    using std::domain_error::domain_error;
};
struct RadicalMismatch : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotExceptional : std::domain_error {
    using std::domain_error::domain_error;
};
struct BlockNotUnitriangular : std::domain_error {
    using std::domain_error::domain_error;
};
struct SplitRequired : std::domain_error {
    using std::domain_error::domain_error;
};
struct BadParity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fano complete intersection of type (d_1 >= ... >= d_k) in P(w), with an
// optional choice of which degree is split off last (defaults to the
// smallest).  Degree-1 entries on straight P^n are normalized away by
// cutting the ambient space down.
struct CompleteIntersection {
    AmbientSpace space;
    std::vector<long long> degrees;          // sorted descending
    std::optional<size_t> split_index;       // position of d_k in `degrees`

    static CompleteIntersection make(AmbientSpace space, std::vector<long long> degrees,
                                     std::optional<size_t> split = std::nullopt);

    int dim() const { return space.n() - int(degrees.size()); }
    long long index() const;
    Int degree() const; // prod d_i
    long long dmax() const;
    long long dmin() const;

    bool has_split() const { return !degrees.empty(); }
    size_t split_pos() const; // resolved split index (defaults to last)
    long long split_degree() const;
    CompleteIntersection parent() const; // M = degrees with the split one removed

    std::string str() const;
};

// Integer matrix acting on a lattice, together with the sign (-1)^{shift}
// of the homological shift it carries.  The full action on classes is
// shift_sign * matrix; they are kept apart so sign mismatches in identity
// checks can be reported separately.
struct LatticeOperator {
    std::string name;
    Mat matrix;
    int shift_sign = 1; // +1 or -1

    Mat total() const { return shift_sign == 1 ? matrix : -matrix; }
    LatticeOperator compose(const LatticeOperator& o) const;
    LatticeOperator pow(long long e) const;
    LatticeOperator inverse() const;
    bool operator==(const LatticeOperator& o) const {
        return matrix == o.matrix && shift_sign == o.shift_sign;
    }
};

// Numerical K-theory lattice: free Z-module with the Euler pairing, the
// twist-by-O(1) automorphism, labelled classes, and the pre-quotient
// provenance (window form and projection).
struct NumLattice {
    int rank = 0;
    Mat gram;      // G[i][j] = chi(e_i, e_j)
    Mat alpha;     // twist by O(1)
    Mat alpha_inv;
    std::map<std::string, IntVec> labels;

    int dim = 0;         // dim of the underlying variety
    long long index = 0; // Fano index

    // provenance
    int window = 0;
    Mat window_gram, window_alpha;
    Mat proj;    // rank x window
    Mat section; // window x rank

    Int pair(const IntVec& u, const IntVec& v) const;
    const IntVec& label(const std::string& name) const;
    IntVec line_class(long long i) const; // class of O(i), any integer i
};

// Builds the lattice of X: free module on the window classes [O_X(i)],
// 0 <= i < |w|, modulo the two-sided radical of the Euler form.
NumLattice build_lattice(const CompleteIntersection& X);

// S = (-1)^{dim} alpha^{-index}; satisfies G = (G S_total)^T.
LatticeOperator serre_operator(const NumLattice& L);

// Numerical mutations through a numerically exceptional class e.
IntVec left_mutation(const NumLattice& L, const IntVec& e, const IntVec& v);
IntVec right_mutation(const NumLattice& L, const IntVec& e, const IntVec& v);

enum class Side { Left, Right };

// Projection to the orthogonal of a unitriangular block; solves the
// unitriangular system, so the result is integral.
IntVec mutate_through_block(const NumLattice& L, const std::vector<IntVec>& block,
                            const IntVec& v, Side side);
Mat block_mutation_matrix(const NumLattice& L, const std::vector<IntVec>& block, Side side);

// v -> L_{[O_X]}(alpha v); restricts to an automorphism of the residual.
LatticeOperator rotation_operator(const NumLattice& L);

// Residual sublattice: { v : chi([O(i)], v) = 0 for 0 <= i < index },
// returned as a saturated column basis with its Gram form.
struct Residual {
    Mat basis; // rank x r
    Mat gram;  // r x r
    int rank() const { return basis.cols(); }
};
Residual residual_sublattice(const NumLattice& L);

// The operator suite on the residual lattices of X (and of its parent M,
// for the source twist), each of determinant +-1.
struct ResidualSuite {
    CompleteIntersection X, M;
    NumLattice LX, LM;
    Residual RX, RM;
    long long m = 0, d = 0, c = 0; // m = ind(M), d = split degree, c = gcd
    LatticeOperator S_R_mutation;  // Serre of R_X via the mutation route
    LatticeOperator S_R_rotation;  // Serre of R_X via the rotation route
    LatticeOperator s_R, t_R;      // (S_X alpha^{m-d})|_R and (T alpha^d)|_R
    LatticeOperator T_source;      // T_{Psi_R^!, Psi_R} on R_M (adjoint triangle)
    LatticeOperator T_target;      // T_{Psi_R, Psi_R^!} on R_X (adjoint triangle)

    // extra operators used by verifiers and models
    LatticeOperator rot_M, rot_X;          // rotations restricted to residuals
    Mat psi, istar;                        // restriction / pushforward on the full lattices
    Mat psi_R, psiR_shriek;                // residual restrictions (bases of RM, RX)
    LatticeOperator S_RM_mutation, S_RM_rotation; // Serre of R_M, two routes
};
ResidualSuite residual_operator_suite(const CompleteIntersection& X);

// Numerical right-adjoint projection xi^! : L -> R of the residual
// inclusion, as an endomorphism of L (right mutation through
// <alpha^{-m}B, ..., alpha^{-1}B>).
Mat residual_projection(const NumLattice& L, long long blocks);

// Operators attached to a spherical pair psi = i^* : LM -> LX of lattices
// over the same pre-quotient window, for a divisor of degree d.  Shared by
// the complete-intersection suite and the spinor-extended quadric models.
struct PairOperators {
    long long m = 0, d = 0, c = 0;
    Residual RM, RX;
    Mat psi, istar;              // full-lattice restriction / pushforward
    Mat psi_R, psiR_shriek;      // restricted to the residual bases
    LatticeOperator T_source;    // Id - Psi_R^! Psi_R on R_M
    LatticeOperator T_target;    // Id - Psi_R Psi_R^! on R_X
    LatticeOperator rot_M, rot_X;
    LatticeOperator S_RX_mutation, S_RX_rotation;
    LatticeOperator S_RM_mutation, S_RM_rotation;
};
PairOperators pair_operators(const NumLattice& LM, const NumLattice& LX, long long d);

// Serre operator of the residual category via the mutation route
// (inverse of L_{<O,...,O(ind-1)>} o S^{-1} restricted to the residual).
LatticeOperator residual_serre_mutation(const NumLattice& L, const Residual& R);
// ... and via the rotation route s_R o (O_B|_R)^{-ind}.
LatticeOperator residual_serre_rotation(const NumLattice& L, const Residual& R);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail; // witness on failure
};
struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    void add(std::string name, bool pass, std::string detail = "");
};

// Exact matrix-with-sign verification of the Serre-functor factorization
// on the residual lattice, the two-route Serre computation, the hypersurface
// fractional Calabi-Yau identity, and commutativity of all factors.
VerificationReport verify_identities(const CompleteIntersection& X);

// chi(O_{X_p}, O_{X_q}) for linear-section classes, 0 <= p, q <= dim X.
Mat gram_filtration(const CompleteIntersection& X);

// Euler-level test of the sigma-spherical collection conditions:
// chi(P_i, P_j) = delta_ij + (-1)^{n_j} delta_{i, sigma(j)} and
// S(P_i) = (-1)^{n_{sigma^{-1}(i)}} P_{sigma^{-1}(i)}.
bool check_spherical_collection(const Mat& gram, const LatticeOperator& serre,
                                const std::vector<IntVec>& classes,
                                const std::vector<size_t>& sigma,
                                const std::vector<long long>& parities,
                                std::string* why = nullptr);
bool check_spherical_collection(const NumLattice& L, const std::vector<IntVec>& classes,
                                const std::vector<size_t>& sigma,
                                const std::vector<long long>& parities,
                                std::string* why = nullptr);

// All Fano complete intersections in straight P^n with n <= max_n,
// 1 <= k <= max_k, all degrees >= 2, sum d_i <= n + 1 (index >= 0).
std::vector<CompleteIntersection> fano_family(int max_n, int max_k, bool allow_index_zero = true);

} // namespace rescat
