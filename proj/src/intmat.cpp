#include "rescat/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace rescat {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<IntVec>& rows) {
    if (rows.empty()) return Mat(0, 0);
    Mat m(int(rows.size()), int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (rows[i].size() != rows[0].size()) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::column(const IntVec& v) {
    Mat m(int(v.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m.at(i, 0) = v[i];
    return m;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat*: shape mismatch");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat+: shape mismatch");
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat-: shape mismatch");
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::operator-() const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

Mat Mat::scaled(const Int& c) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntVec Mat::apply(const IntVec& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("Mat::apply: size mismatch");
    IntVec r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

IntVec Mat::apply_left(const IntVec& v) const {
    if (int(v.size()) != rows_) throw std::invalid_argument("Mat::apply_left: size mismatch");
    IntVec r(cols_);
    for (int i = 0; i < rows_; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < cols_; ++j) r[j] += v[i] * at(i, j);
    }
    return r;
}

IntVec Mat::col(int j) const {
    IntVec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

IntVec Mat::row(int i) const {
    IntVec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void Mat::set_col(int j, const IntVec& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Mat Mat::cols_slice(int from, int to) const {
    Mat r(rows_, to - from);
    for (int i = 0; i < rows_; ++i)
        for (int j = from; j < to; ++j) r.at(i, j - from) = at(i, j);
    return r;
}

Mat Mat::rows_slice(int from, int to) const {
    Mat r(to - from, cols_);
    for (int i = from; i < to; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i - from, j) = at(i, j);
    return r;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec operator-(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec operator+(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec scaled(const IntVec& a, const Int& c) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

bool is_zero(const IntVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::string str(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

Int det(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    int n = m.rows();
    if (n == 0) return 1;
    Mat a = m;
    Int prev = 1, sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num / prev; // exact by Bareiss
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

namespace {

// ax + by = g via extended Euclid.
Int egcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return abs(a);
    }
    Int x1, y1;
    Int g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Elementary transforms with tracked inverses.  Clearing uses Bezout 2x2
// combines, which keeps entry growth tame (the naive divide-and-swap loop
// blows up doubly exponentially already on 6x6 Euler forms).
struct SmithWork {
    Mat A, U, Uinv, V, Vinv;

    void row_add(int i, int j, const Int& c) { // row i += c * row j
        for (int k = 0; k < A.cols(); ++k) A.at(i, k) += c * A.at(j, k);
        for (int k = 0; k < U.cols(); ++k) U.at(i, k) += c * U.at(j, k);
        for (int k = 0; k < Uinv.rows(); ++k) Uinv.at(k, j) -= c * Uinv.at(k, i);
    }
    void col_add(int j, int i, const Int& c) { // col j += c * col i
        for (int k = 0; k < A.rows(); ++k) A.at(k, j) += c * A.at(k, i);
        for (int k = 0; k < V.rows(); ++k) V.at(k, j) += c * V.at(k, i);
        for (int k = 0; k < Vinv.cols(); ++k) Vinv.at(i, k) -= c * Vinv.at(j, k);
    }
    void row_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < A.cols(); ++k) std::swap(A.at(i, k), A.at(j, k));
        for (int k = 0; k < U.cols(); ++k) std::swap(U.at(i, k), U.at(j, k));
        for (int k = 0; k < Uinv.rows(); ++k) std::swap(Uinv.at(k, i), Uinv.at(k, j));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < A.rows(); ++k) std::swap(A.at(k, i), A.at(k, j));
        for (int k = 0; k < V.rows(); ++k) std::swap(V.at(k, i), V.at(k, j));
        for (int k = 0; k < Vinv.cols(); ++k) std::swap(Vinv.at(i, k), Vinv.at(j, k));
    }
    void row_negate(int i) {
        for (int k = 0; k < A.cols(); ++k) A.at(i, k) = -A.at(i, k);
        for (int k = 0; k < U.cols(); ++k) U.at(i, k) = -U.at(i, k);
        for (int k = 0; k < Uinv.rows(); ++k) Uinv.at(k, i) = -Uinv.at(k, i);
    }

    // rows (t, i) <- (p*row_t + q*row_i, -bg*row_t + ag*row_i), det = 1
    void row_combine(int t, int i, const Int& p, const Int& q, const Int& ag, const Int& bg) {
        auto upd2 = [&](Mat& M) {
            for (int k = 0; k < M.cols(); ++k) {
                Int a = M.at(t, k), b = M.at(i, k);
                M.at(t, k) = p * a + q * b;
                M.at(i, k) = -bg * a + ag * b;
            }
        };
        upd2(A);
        upd2(U);
        for (int k = 0; k < Uinv.rows(); ++k) { // Uinv *= E^{-1} = [[ag, -q], [bg, p]]
            Int a = Uinv.at(k, t), b = Uinv.at(k, i);
            Uinv.at(k, t) = a * ag + b * bg;
            Uinv.at(k, i) = -a * q + b * p;
        }
    }

    // cols (t, j) <- (p*col_t + q*col_j, -bg*col_t + ag*col_j), det = 1
    void col_combine(int t, int j, const Int& p, const Int& q, const Int& ag, const Int& bg) {
        auto upd2 = [&](Mat& M) {
            for (int k = 0; k < M.rows(); ++k) {
                Int a = M.at(k, t), b = M.at(k, j);
                M.at(k, t) = p * a + q * b;
                M.at(k, j) = -bg * a + ag * b;
            }
        };
        upd2(A);
        upd2(V);
        for (int k = 0; k < Vinv.cols(); ++k) { // Vinv = E^{-1} * Vinv
            Int a = Vinv.at(t, k), b = Vinv.at(j, k);
            Vinv.at(t, k) = ag * a + bg * b;
            Vinv.at(j, k) = -q * a + p * b;
        }
    }
};

} // namespace

// Diagonal form under unimodular transforms.  The diagonal entries are
// positive but not rearranged into the divisibility chain; every use in
// this project (kernels, saturation and unimodularity tests, integral
// solving) only needs a diagonal form.
Smith smith_normal_form(const Mat& A0) {
    int m = A0.rows(), n = A0.cols();
    SmithWork w{A0, Mat::identity(m), Mat::identity(m), Mat::identity(n), Mat::identity(n)};
    int t = 0;
    int bound = std::min(m, n);
    while (t < bound) {
        // pivot: smallest |entry| in the trailing submatrix
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (w.A.at(i, j) != 0) {
                    Int v = abs(w.A.at(i, j));
                    if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
                }
        if (pi < 0) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < m; ++i) {
                const Int a = w.A.at(t, t), b = w.A.at(i, t);
                if (b == 0) continue;
                if (b % a == 0) {
                    w.row_add(i, t, -(b / a));
                } else {
                    Int p, q;
                    Int g = egcd(a, b, p, q);
                    w.row_combine(t, i, p, q, a / g, b / g);
                }
            }
            for (int j = t + 1; j < n; ++j) {
                const Int a = w.A.at(t, t), b = w.A.at(t, j);
                if (b == 0) continue;
                clean = false; // column ops can re-dirty the cleared column
                if (b % a == 0) {
                    w.col_add(j, t, -(b / a));
                } else {
                    Int p, q;
                    Int g = egcd(a, b, p, q);
                    w.col_combine(t, j, p, q, a / g, b / g);
                }
            }
        }
        if (w.A.at(t, t) < 0) w.row_negate(t);
        ++t;
    }
    Smith s;
    s.U = w.U;
    s.Uinv = w.Uinv;
    s.V = w.V;
    s.Vinv = w.Vinv;
    s.rank = t;
    for (int i = 0; i < t; ++i) s.diag.push_back(w.A.at(i, i));
    return s;
}

Mat right_kernel_saturated(const Mat& A) {
    if (A.rows() == 0) return Mat::identity(A.cols());
    Smith s = smith_normal_form(A);
    // columns r..n-1 of Vinv... kernel = { v : A v = 0 }; A = Uinv S Vinv
    // (U A V = S), so A v = 0 iff S (Vinv... careful: A = U^{-1} S V^{-1},
    // A v = 0 iff S (V^{-1} v) = 0 iff first r coords of V^{-1} v vanish,
    // iff v in span of last n-r columns of V.
    return s.V.cols_slice(s.rank, A.cols());
}

Quotient quotient_by_sublattice(const Mat& K, int ambient_dim) {
    int N = ambient_dim;
    if (K.cols() == 0) {
        return {Mat::identity(N), Mat::identity(N)};
    }
    Smith s = smith_normal_form(K);
    for (const auto& d : s.diag)
        if (d != 1) throw std::domain_error("quotient_by_sublattice: sublattice not saturated");
    int r = s.rank;
    // K = U^{-1} S V^{-1}: columns of U^{-1} ... we need W with W^{-1} K = [I_r; 0]:
    // U K = S V = [V; 0], so rows r.. of U kill K; take W^{-1} = U.
    Quotient q;
    q.proj = s.U.rows_slice(r, N);
    q.section = s.Uinv.cols_slice(r, N);
    return q;
}

std::optional<IntVec> solve_integral(const Smith& sA, int arows, int acols, const IntVec& b) {
    // A = U^{-1} S V^{-1}; A x = b  <=>  S (V^{-1} x) = U b.
    IntVec c = sA.U.apply(b);
    IntVec y(acols, 0);
    for (int i = 0; i < arows; ++i) {
        if (i < sA.rank) {
            if (c[i] % sA.diag[i] != 0) return std::nullopt;
            y[i] = c[i] / sA.diag[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    for (int i = sA.rank; i < acols; ++i) y[i] = 0; // minimal solution; unique when full column rank
    return sA.V.apply(y);
}

std::optional<IntVec> solve_integral(const Mat& A, const IntVec& b) {
    Smith s = smith_normal_form(A);
    return solve_integral(s, A.rows(), A.cols(), b);
}

Mat inverse_unimodular(const Mat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse_unimodular: not square");
    if (A.rows() == 0) return A;
    Smith s = smith_normal_form(A);
    if (s.rank != A.rows()) throw std::domain_error("inverse_unimodular: singular");
    for (const auto& d : s.diag)
        if (d != 1) throw std::domain_error("inverse_unimodular: determinant not +-1");
    // A = U^{-1} V^{-1}  =>  A^{-1} = V U.
    return s.V * s.U;
}

Mat restrict_operator(const Mat& T, const Mat& B) {
    if (B.cols() == 0) return Mat(0, 0);
    Mat TB = T * B;
    Smith s = smith_normal_form(B);
    Mat R(B.cols(), B.cols());
    for (int j = 0; j < B.cols(); ++j) {
        auto x = solve_integral(s, B.rows(), B.cols(), TB.col(j));
        if (!x) throw std::domain_error("restrict_operator: operator does not preserve sublattice");
        R.set_col(j, *x);
    }
    return R;
}

Mat mat_pow(const Mat& T, long long e) {
    if (T.rows() != T.cols()) throw std::invalid_argument("mat_pow: not square");
    Mat base = e >= 0 ? T : inverse_unimodular(T);
    unsigned long long k = e >= 0 ? (unsigned long long)e : (unsigned long long)(-e);
    Mat r = Mat::identity(T.rows());
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

} // namespace rescat
