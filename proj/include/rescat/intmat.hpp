#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rescat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;

// Dense exact integer matrix, row-major. Lattice ranks here stay small
// (< 20), so no attempt at sparsity; every operation is exact.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static Mat identity(int n);
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }
    static Mat from_rows(const std::vector<IntVec>& rows);
    static Mat column(const IntVec& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Mat transpose() const;
    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Int& c) const;
    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_identity() const;

    IntVec apply(const IntVec& v) const;      // this * v
    IntVec apply_left(const IntVec& v) const; // v^T * this

    IntVec col(int j) const;
    IntVec row(int i) const;
    void set_col(int j, const IntVec& v);
    Mat cols_slice(int from, int to) const;   // columns [from, to)
    Mat rows_slice(int from, int to) const;

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

Int dot(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a, const IntVec& b);
IntVec operator+(const IntVec& a, const IntVec& b);
IntVec scaled(const IntVec& a, const Int& c);
bool is_zero(const IntVec& v);
std::string str(const IntVec& v);

// Fraction-free determinant (Bareiss).
Int det(const Mat& m);

// Smith normal form  U * A * V = S  with U, V unimodular and S diagonal,
// diag entries positive with s_i | s_{i+1}.  Inverse transforms tracked.
struct Smith {
    Mat U, Uinv, V, Vinv;
    std::vector<Int> diag; // nonzero diagonal entries, length = rank
    int rank = 0;
};
Smith smith_normal_form(const Mat& A);

// Saturated basis of { v : A v = 0 }, returned as matrix columns.
Mat right_kernel_saturated(const Mat& A);

// Quotient of Z^N by a saturated sublattice K (columns).  proj * section = I,
// proj * K = 0, and [section | K-completion] is unimodular.
struct Quotient {
    Mat proj;    // (N - r) x N
    Mat section; // N x (N - r)
};
Quotient quotient_by_sublattice(const Mat& K, int ambient_dim);

// Unique integer solution of A x = b for A of full column rank; nullopt when
// none exists over Z.
std::optional<IntVec> solve_integral(const Smith& sA, int arows, int acols, const IntVec& b);
std::optional<IntVec> solve_integral(const Mat& A, const IntVec& b);

// A^{-1} for unimodular A (throws std::domain_error otherwise).
Mat inverse_unimodular(const Mat& A);

// Matrix of T on the sublattice spanned by the columns of B; requires
// T * B to factor through B over Z.
Mat restrict_operator(const Mat& T, const Mat& B);

// T^e with e < 0 via unimodular inverse.
Mat mat_pow(const Mat& T, long long e);

} // namespace rescat
