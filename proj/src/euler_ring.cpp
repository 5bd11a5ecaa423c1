#include "rescat/euler_ring.hpp"

#include <algorithm>

namespace rescat {

AmbientSpace AmbientSpace::pn(int n) {
    if (n < 0) throw std::invalid_argument("pn: n must be >= 0");
    AmbientSpace s;
    s.weights.assign(size_t(n) + 1, 1);
    return s;
}

AmbientSpace AmbientSpace::weighted(std::vector<long long> w) {
    if (w.empty()) throw std::invalid_argument("weighted: weights must be nonempty");
    for (long long x : w)
        if (x < 1) throw std::invalid_argument("weighted: weights must be >= 1");
    AmbientSpace s;
    s.weights = std::move(w);
    return s;
}

long long AmbientSpace::total_weight() const {
    long long t = 0;
    for (long long w : weights) t += w;
    return t;
}

bool AmbientSpace::straight() const {
    return std::all_of(weights.begin(), weights.end(), [](long long w) { return w == 1; });
}

IntVec AmbientSpace::relation_poly() const {
    IntVec p{1};
    for (long long w : weights) {
        IntVec q(p.size() + size_t(w), 0);
        for (size_t i = 0; i < p.size(); ++i) {
            q[i] += p[i];
            q[i + size_t(w)] -= p[i];
        }
        p = std::move(q);
    }
    return p; // degree |w|
}

namespace {

// Falling-product binomial C(n+m, n) as a polynomial in m: exact for all m.
Int poly_binomial(int n, long long m) {
    Int num = 1;
    for (int j = 1; j <= n; ++j) num *= Int(m) + j;
    Int den = 1;
    for (int j = 2; j <= n; ++j) den *= j;
    return num / den; // n consecutive integers: exact
}

// Number of monomials of weighted degree m.
Int weighted_count(const AmbientSpace& s, long long m) {
    if (m < 0) return 0;
    IntVec dp(size_t(m) + 1, 0);
    dp[0] = 1;
    for (long long w : s.weights)
        for (long long j = w; j <= m; ++j) dp[size_t(j)] += dp[size_t(j - w)];
    return dp[size_t(m)];
}

} // namespace

Int euler_char(const AmbientSpace& space, long long m) {
    if (space.straight()) return poly_binomial(space.n(), m);
    if (m >= 0) return weighted_count(space, m);
    long long refl = -m - space.total_weight();
    if (refl < 0) return 0; // both sides of the reflection lie in the gap; chi vanishes
    Int v = weighted_count(space, refl);
    return (space.n() % 2 == 0) ? v : -v;
}

KClass KClass::line(const AmbientSpace& s, long long i) {
    KClass c;
    c.space = s;
    c.coeffs[i] = 1;
    return c;
}

KClass& KClass::add(long long i, const Int& c) {
    if (c == 0) return *this;
    auto it = coeffs.find(i);
    if (it == coeffs.end()) {
        coeffs[i] = c;
    } else {
        it->second += c;
        if (it->second == 0) coeffs.erase(it);
    }
    return *this;
}

bool KClass::operator==(const KClass& o) const {
    return space == o.space && coeffs == o.coeffs;
}

KClass reduce(const KClass& c) {
    const long long W = c.space.total_weight();
    IntVec rel = c.space.relation_poly(); // rel[0] = 1, rel[W] = (-1)^{n+1}
    KClass r = c;
    for (;;) {
        auto top = r.coeffs.rbegin();
        if (top == r.coeffs.rend()) break;
        long long i = top->first;
        if (i <= W - 1) break;
        Int coeff = top->second;
        r.coeffs.erase(std::prev(r.coeffs.end()));
        // [O(i)] = -sum_{j>=1} rel[j] [O(i-j)]
        for (long long j = 1; j <= W; ++j)
            if (rel[size_t(j)] != 0) r.add(i - j, -coeff * rel[size_t(j)]);
    }
    for (;;) {
        auto bot = r.coeffs.begin();
        if (bot == r.coeffs.end()) break;
        long long i = bot->first;
        if (i >= 0) break;
        Int coeff = bot->second;
        r.coeffs.erase(bot);
        // rel[W] [O(i)] = -sum_{j<W} rel[j] [O(i+W-j)], rel[W] = +-1
        Int lead = rel[size_t(W)];
        for (long long j = 0; j < W; ++j)
            if (rel[size_t(j)] != 0) r.add(i + W - j, -coeff * rel[size_t(j)] * lead);
    }
    return r;
}

KClass twist(const KClass& c, long long j) {
    KClass t;
    t.space = c.space;
    for (const auto& [i, a] : c.coeffs) t.coeffs[i + j] = a;
    return reduce(t);
}

KClass koszul_class(const AmbientSpace& space, const std::vector<long long>& degrees) {
    for (long long d : degrees)
        if (d < 1) throw std::invalid_argument("koszul_class: degrees must be >= 1");
    KClass c = KClass::structure_sheaf(space);
    for (long long d : degrees) {
        KClass next;
        next.space = space;
        for (const auto& [i, a] : c.coeffs) {
            next.add(i, a);
            next.add(i - d, -a);
        }
        c = std::move(next);
    }
    return reduce(c);
}

Int kclass_euler(const KClass& c) {
    Int s = 0;
    for (const auto& [i, a] : c.coeffs) s += a * euler_char(c.space, i);
    return s;
}

Int kclass_pair(const KClass& u, const KClass& v) {
    if (!(u.space == v.space)) throw std::invalid_argument("kclass_pair: different spaces");
    Int s = 0;
    for (const auto& [i, a] : u.coeffs)
        for (const auto& [j, b] : v.coeffs) s += a * b * euler_char(u.space, j - i);
    return s;
}

Int euler_pair(const AmbientSpace& space, const std::vector<long long>& degrees,
               long long a, long long b) {
    KClass k = koszul_class(space, degrees);
    Int s = 0;
    const long long m = b - a;
    for (const auto& [i, c] : k.coeffs) s += c * euler_char(space, i + m);
    return s;
}

} // namespace rescat
