#pragma once

#include "rescat/ci_lattice.hpp"
#include "rescat/quadric_spinor.hpp"

namespace rescat {

struct WordSyntaxError : std::runtime_error {
    size_t position;
    WordSyntaxError(std::string msg, size_t pos)
        : std::runtime_error(std::move(msg) + " at position " + std::to_string(pos)),
          position(pos) {}
};
struct WordTypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownGenerator : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoInterpretation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContextRequired : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Category tags of the fixed setup: the source C, the target D of the
// spherical functor, and their residual categories.
enum class Cat : int { C = 0, D = 1, RC = 2, RD = 3 };
std::string cat_name(Cat c);

enum class Gen : int {
    S_C, S_D, a_C, a_D, Psi, PsiL, PsiR,
    T_C, T_Cinv, T_D, T_Dinv, L_B, R_B,
    O_B, O_Bprime, Psi_R, T_RC, T_RD,
    s_R, t_R, s_RD, t_RD, S_R, S_RD,
    T_B, T_Rpart,
    COUNT
};
const std::string& gen_name(Gen g);

struct Atom {
    Gen g;
    long long e;
    Cat src, tgt; // resolved typing
    bool operator==(const Atom& o) const {
        return g == o.g && e == o.e && src == o.src && tgt == o.tgt;
    }
};

// Typed composition a_1 o a_2 o ... o a_k (a_k applied first) with the
// homological shift accumulated separately (shifts commute with everything
// and act as the sign (-1)^shift on classes).
struct FunctorWord {
    std::vector<Atom> atoms;
    long long shift = 0;

    bool pure_shift() const { return atoms.empty(); }
    Cat source() const;
    Cat target() const;
    bool operator==(const FunctorWord& o) const { return atoms == o.atoms && shift == o.shift; }
};

FunctorWord parse_word(const std::string& text);
std::string print_word(const FunctorWord& w);

// Rewrite context: the Lefschetz length m and twist degree d of the setup.
// Rules R7/R8/R10 carry these as exponents and fire only when known.
struct RewriteContext {
    std::optional<long long> m, d;
    bool expand_twist_factorization = false; // R10, applied only on request
    long long budget = 10000;
};

struct NormalizeResult {
    FunctorWord word;
    bool complete = true; // false when the step budget ran out
};
NormalizeResult normalize(const FunctorWord& w, const RewriteContext& ctx = {});

// Interpretation of the generators in a concrete lattice model.
struct WordModel {
    std::string name;
    long long m = 0, d = 0;
    NumLattice LM, LX;
    Residual RM, RX;
    std::map<std::pair<int, int>, LatticeOperator> interp; // (Gen, Cat) -> operator
    int cat_rank(Cat c) const;
    const LatticeOperator& lookup(Gen g, Cat c) const;
};

// Model of a Fano complete intersection with its split presentation.
WordModel ci_word_model(const CompleteIntersection& X);
// Spinor-extended model of a degree-d divisor in a smooth quadric in P^n.
WordModel quadric_word_model(int n, long long d);

LatticeOperator evaluate(const FunctorWord& w, const WordModel& model,
                         std::optional<Cat> pure_shift_hint = std::nullopt);

enum class EqualVerdict { Equal, EqualInAllModels, DistinguishedBy };
struct EqualResult {
    EqualVerdict verdict;
    std::string model;   // distinguishing model
    IntVec witness;      // basis vector where the evaluations differ
    IntVec lhs_image, rhs_image;
    std::string str() const;
};
EqualResult equal_words(const FunctorWord& w1, const FunctorWord& w2,
                        const std::vector<const WordModel*>& models);

// Standard model battery used by the soundness tests and the CLI.
std::vector<WordModel> standard_models();

} // namespace rescat
