#pragma once

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "foamkit/exact_value.hpp"
#include "foamkit/half_int.hpp"
#include "foamkit/wigner.hpp"

namespace foamkit {

namespace detail {

// FNV-1a over a fixed-size array of ints, for memo keys.
template <size_t N>
struct ArrayHash {
    size_t operator()(const std::array<int, N>& a) const noexcept {
        size_t h = 1469598103934665603ull;
        for (int x : a) {
            h ^= (size_t)(uint32_t)x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace detail

// Clebsch-Gordan coefficient C^{jm}_{j1 m1 j2 m2}, Condon-Shortley convention,
// as an exact surd. Zero when m != m1+m2 or the triangle rule fails.
inline ExactValue clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                                 HalfInt j, HalfInt m) {
    if (!same_parity(j1, m1) || !same_parity(j2, m2) || !same_parity(j, m))
        throw std::invalid_argument("clebsch_gordan: spin/magnetic parity mismatch");
    if (!HalfInt::magnetic_ok(j1, m1) || !HalfInt::magnetic_ok(j2, m2) ||
        !HalfInt::magnetic_ok(j, m))
        throw std::invalid_argument("clebsch_gordan: |m| exceeds j");
    if (m != m1 + m2) return ExactValue::zero();
    if (!triangle_ok(j1, j2, j)) return ExactValue::zero();

    // Integer factorial arguments (all HalfInt sums below are whole).
    int jm = (j + m).to_int(), jmm = (j - m).to_int();
    int t1 = (j1 + j2 - j).to_int(), t2 = (j - j1 + j2).to_int(), t3 = (j + j1 - j2).to_int();
    int jtot1 = (j + j1 + j2).to_int() + 1;
    int j1m1 = (j1 + m1).to_int(), j1mm1 = (j1 - m1).to_int();
    int j2m2 = (j2 + m2).to_int(), j2mm2 = (j2 - m2).to_int();

    BigRational radicand(j.dim());  // 2j+1
    radicand *= BigRational(big_factorial(jm) * big_factorial(jmm) * big_factorial(t1) *
                                big_factorial(t2) * big_factorial(t3),
                            big_factorial(jtot1) * big_factorial(j1m1) * big_factorial(j1mm1) *
                                big_factorial(j2m2) * big_factorial(j2mm2));

    // k-sum with all factorial arguments non-negative:
    //   (j+j2+m1-k)! (j1-m1+k)! / [(j-j1+j2-k)! (j+m-k)! k! (k+j1-j2-m)!]
    int klo = std::max(0, -(j1 - j2 - m).to_int());
    int khi = std::min(t2, jm);
    int base_sign = parity_sign(j2 + m2);
    BigRational sum = 0;
    for (int k = klo; k <= khi; ++k) {
        BigRational term(big_factorial((j + j2 + m1).to_int() - k) * big_factorial(j1mm1 + k),
                         big_factorial(t2 - k) * big_factorial(jm - k) * big_factorial(k) *
                             big_factorial(k + (j1 - j2 - m).to_int()));
        sum += (k % 2 == 0 ? term : -term);
    }
    sum *= base_sign;
    return ExactValue(sum, radicand);
}

// Wigner 3jm symbol, exact: (-1)^{j1-j2-m3} / sqrt(2 j3 + 1) * C^{j3,-m3}_{j1 m1 j2 m2}.
inline ExactValue three_jm(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                           HalfInt j3, HalfInt m3) {
    ExactValue c = clebsch_gordan(j1, m1, j2, m2, j3, -m3);
    if (c.is_zero()) return c;
    int sgn = parity_sign(j1 - j2 - m3);
    ExactValue v = c.div_sqrt(BigRational(j3.dim()));
    return sgn > 0 ? v : -v;
}

// Floating 3jm with a memo cache (magnetic sums in the contraction kernel and
// brute-force oracles hit the same symbols repeatedly).
inline double three_jm_d(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                         HalfInt j3, HalfInt m3) {
    if (!HalfInt::magnetic_ok(j1, m1) || !HalfInt::magnetic_ok(j2, m2) ||
        !HalfInt::magnetic_ok(j3, m3))
        return 0.0;
    if ((m1 + m2 + m3).twice() != 0 || !triangle_ok(j1, j2, j3)) return 0.0;
    using Key = std::array<int, 6>;
    static std::unordered_map<Key, double, detail::ArrayHash<6>> cache;
    static std::mutex mu;
    Key key{j1.twice(), m1.twice(), j2.twice(), m2.twice(), j3.twice(), m3.twice()};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double v = three_jm(j1, m1, j2, m2, j3, m3).to_double();
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

// Range of the intermediate spin coupling (j1,j2) and (j3,j4); empty when the
// parities of j1+j2 and j3+j4 differ.
inline bool four_jm_range(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4,
                          HalfInt& lo, HalfInt& hi) {
    if (!same_parity(j1 + j2, j3 + j4)) return false;
    lo = max(abs(j1 - j2), abs(j3 - j4));
    hi = min(j1 + j2, j3 + j4);
    return lo <= hi;
}

// 4jm symbol for the orthonormal 4-valent intertwiner basis:
//   sum_m (-1)^{j12 - m} (j1 j2 j12; m1 m2 m) (j12 j3 j4; -m m3 m4),
// a single term since m = -(m1+m2) is forced. Returns 0 (selection rule) when
// j12 lies outside the admissible range.
inline double four_jm(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4,
                      HalfInt m1, HalfInt m2, HalfInt m3, HalfInt m4, HalfInt j12) {
    HalfInt lo, hi;
    if (!four_jm_range(j1, j2, j3, j4, lo, hi) || j12 < lo || j12 > hi) return 0.0;
    HalfInt m = -(m1 + m2);
    if (!HalfInt::magnetic_ok(j12, m)) return 0.0;
    double a = three_jm_d(j1, m1, j2, m2, j12, m);
    if (a == 0.0) return 0.0;
    double b = three_jm_d(j12, -m, j3, m3, j4, m4);
    if (b == 0.0) return 0.0;
    return parity_sign(j12 - m) * a * b;
}

namespace detail {

// Triangle coefficient Delta(a,b,c) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!.
inline BigRational triangle_coeff(HalfInt a, HalfInt b, HalfInt c) {
    return BigRational(big_factorial((a + b - c).to_int()) * big_factorial((a - b + c).to_int()) *
                           big_factorial((-a + b + c).to_int()),
                       big_factorial((a + b + c).to_int() + 1));
}

// Canonical memo key for the 6j symbol: lexicographic minimum over its 24
// classical symmetries (column permutations and pairwise upper/lower swaps).
inline std::array<int, 6> six_j_canonical(const std::array<int, 6>& in) {
    // Layout: {j1 j2 j3; j4 j5 j6} stored as columns (j1,j4),(j2,j5),(j3,j6).
    std::array<int, 6> best = in;
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    // Flip masks: swap upper/lower in exactly two columns (or none).
    static const int flips[4] = {0b000, 0b011, 0b101, 0b110};
    for (const auto& p : perms) {
        for (int f : flips) {
            std::array<int, 6> cand;
            for (int c = 0; c < 3; ++c) {
                int up = in[p[c]], lo = in[p[c] + 3];
                if (f & (1 << c)) std::swap(up, lo);
                cand[c] = up;
                cand[c + 3] = lo;
            }
            if (cand < best) best = cand;
        }
    }
    return best;
}

}  // namespace detail

// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} via the single-sum (Racah) form with
// exact rational term accumulation; equal to the quadruple-3jm magnetic
// contraction (checked against it in the test suite). Memoized under the
// symmetry-canonical key.
inline double six_j(HalfInt j1, HalfInt j2, HalfInt j3,
                    HalfInt j4, HalfInt j5, HalfInt j6) {
    if (!triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) ||
        !triangle_ok(j4, j2, j6) || !triangle_ok(j4, j5, j3))
        return 0.0;

    using Key = std::array<int, 6>;
    static std::unordered_map<Key, double, detail::ArrayHash<6>> cache;
    static std::mutex mu;
    Key key = detail::six_j_canonical(
        {j1.twice(), j2.twice(), j3.twice(), j4.twice(), j5.twice(), j6.twice()});
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    int a1 = (j1 + j2 + j3).to_int(), a2 = (j1 + j5 + j6).to_int();
    int a3 = (j4 + j2 + j6).to_int(), a4 = (j4 + j5 + j3).to_int();
    int b1 = (j1 + j2 + j4 + j5).to_int(), b2 = (j2 + j3 + j5 + j6).to_int();
    int b3 = (j3 + j1 + j6 + j4).to_int();
    int tlo = std::max(std::max(a1, a2), std::max(a3, a4));
    int thi = std::min(b1, std::min(b2, b3));

    BigRational sum = 0;
    for (int t = tlo; t <= thi; ++t) {
        BigRational term(big_factorial(t + 1),
                         big_factorial(t - a1) * big_factorial(t - a2) * big_factorial(t - a3) *
                             big_factorial(t - a4) * big_factorial(b1 - t) *
                             big_factorial(b2 - t) * big_factorial(b3 - t));
        sum += (t % 2 == 0 ? term : -term);
    }
    BigRational radicand = detail::triangle_coeff(j1, j2, j3) * detail::triangle_coeff(j1, j5, j6) *
                           detail::triangle_coeff(j4, j2, j6) * detail::triangle_coeff(j4, j5, j3);
    double v = ExactValue(sum, radicand).to_double();
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

// Wigner 9j symbol via the single sum over products of three 6j symbols;
// equals the six-3jm magnetic contraction (oracle in the test suite).
inline double nine_j(HalfInt a, HalfInt b, HalfInt c,
                     HalfInt d, HalfInt e, HalfInt f,
                     HalfInt g, HalfInt h, HalfInt i) {
    if (!triangle_ok(a, b, c) || !triangle_ok(d, e, f) || !triangle_ok(g, h, i) ||
        !triangle_ok(a, d, g) || !triangle_ok(b, e, h) || !triangle_ok(c, f, i))
        return 0.0;
    using Key = std::array<int, 9>;
    static std::unordered_map<Key, double, detail::ArrayHash<9>> cache;
    static std::mutex mu;
    Key key{a.twice(), b.twice(), c.twice(), d.twice(), e.twice(),
            f.twice(), g.twice(), h.twice(), i.twice()};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    HalfInt xlo = max(max(abs(a - i), abs(b - f)), abs(d - h));
    HalfInt xhi = min(min(a + i, b + f), d + h);
    double sum = 0, comp = 0;
    for (HalfInt x = xlo; x <= xhi; x += HalfInt(1)) {
        double term = parity_sign(x + x) * x.dim() * six_j(a, b, c, f, i, x) *
                      six_j(d, e, f, b, x, h) * six_j(g, h, i, x, a, d);
        double y = term - comp, t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, sum);
    return sum;
}

// Dimension of the invariant subspace of a product of 2, 3 or 4 irreps.
inline int invariant_dimension(const std::vector<HalfInt>& js) {
    switch (js.size()) {
        case 2:
            return js[0] == js[1] ? 1 : 0;
        case 3:
            return triangle_ok(js[0], js[1], js[2]) ? 1 : 0;
        case 4: {
            HalfInt lo, hi;
            if (!four_jm_range(js[0], js[1], js[2], js[3], lo, hi)) return 0;
            return (hi - lo).to_int() + 1;
        }
        default:
            throw std::invalid_argument("invariant_dimension: supported for 2, 3 or 4 spins");
    }
}

// Orthogonal projector onto Inv(j1 x j2 x j3 x j4) in the product magnetic
// basis (row/column index ordering follows mag_index on each factor):
//   P = sum_j12 (2 j12 + 1) |W^(j12)><W^(j12)|.
inline CMat invariant_projector(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4) {
    std::array<HalfInt, 4> js{j1, j2, j3, j4};
    int dim = 1;
    for (auto j : js) dim *= j.dim();
    CMat p(dim, dim);
    HalfInt lo, hi;
    if (!four_jm_range(j1, j2, j3, j4, lo, hi)) return p;

    std::vector<double> w((size_t)dim);
    for (HalfInt j12 = lo; j12 <= hi; j12 += HalfInt(1)) {
        for (int idx = 0; idx < dim; ++idx) {
            int rest = idx;
            std::array<HalfInt, 4> ms;
            for (int q = 3; q >= 0; --q) {
                ms[q] = mag_of_index(js[q], rest % js[q].dim());
                rest /= js[q].dim();
            }
            w[(size_t)idx] = four_jm(j1, j2, j3, j4, ms[0], ms[1], ms[2], ms[3], j12);
        }
        for (int r = 0; r < dim; ++r) {
            if (w[(size_t)r] == 0.0) continue;
            for (int c = 0; c < dim; ++c)
                p.at(r, c) += (double)j12.dim() * w[(size_t)r] * w[(size_t)c];
        }
    }
    return p;
}

// Semiclassical 6j estimate: (12 pi V)^{-1/2} cos(S + pi/4) with edge lengths
// l_i = j_i + 1/2, V the Euclidean tetrahedron volume, and S = sum_i l_i
// theta_i over exterior dihedral angles. Edge order matches the 6j triads:
// (1,2,3), (1,5,6), (4,2,6), (3,4,5) are the four faces.
inline double ponzano_regge_estimate(HalfInt j1, HalfInt j2, HalfInt j3,
                                     HalfInt j4, HalfInt j5, HalfInt j6) {
    const double l[6] = {j1.to_double() + 0.5, j2.to_double() + 0.5, j3.to_double() + 0.5,
                         j4.to_double() + 0.5, j5.to_double() + 0.5, j6.to_double() + 0.5};
    // Every face must satisfy the strict triangle inequality.
    static const int faces[4][3] = {{0, 1, 2}, {0, 4, 5}, {3, 1, 5}, {2, 3, 4}};
    for (const auto& fc : faces) {
        double a = l[fc[0]], b = l[fc[1]], c = l[fc[2]];
        if (a + b <= c || b + c <= a || c + a <= b)
            throw std::domain_error("ponzano_regge_estimate: face violates triangle inequality");
    }
    // Vertices A,B,C,D with AB=l1, BC=l2, CA=l3, CD=l4, AD=l5, BD=l6.
    // Cayley-Menger determinant (288 V^2) as the degeneracy gate.
    double d2[5][5];
    const double ab = l[0] * l[0], bc = l[1] * l[1], ca = l[2] * l[2];
    const double cd = l[3] * l[3], ad = l[4] * l[4], bd = l[5] * l[5];
    double cm[5][5] = {{0, 1, 1, 1, 1},
                       {1, 0, ab, ca, ad},
                       {1, ab, 0, bc, bd},
                       {1, ca, bc, 0, cd},
                       {1, ad, bd, cd, 0}};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) d2[r][c] = cm[r][c];
    // Gaussian elimination with partial pivoting.
    double det = 1.0;
    for (int col = 0; col < 5; ++col) {
        int piv = col;
        for (int r = col + 1; r < 5; ++r)
            if (std::abs(d2[r][col]) > std::abs(d2[piv][col])) piv = r;
        if (piv != col) {
            for (int c = 0; c < 5; ++c) std::swap(d2[piv][c], d2[col][c]);
            det = -det;
        }
        if (d2[col][col] == 0.0) {
            det = 0.0;
            break;
        }
        det *= d2[col][col];
        for (int r = col + 1; r < 5; ++r) {
            double fac = d2[r][col] / d2[col][col];
            for (int c = col; c < 5; ++c) d2[r][c] -= fac * d2[col][c];
        }
    }
    double v2 = det / 288.0;
    if (!(v2 > 1e-12)) throw std::domain_error("ponzano_regge_estimate: degenerate tetrahedron");
    double vol = std::sqrt(v2);

    // Explicit embedding to read off dihedral angles.
    using V3 = std::array<double, 3>;
    V3 A{0, 0, 0}, B{l[0], 0, 0};
    double cx = (ab + ca - bc) / (2 * l[0]);
    V3 C{cx, std::sqrt(std::max(0.0, ca - cx * cx)), 0};
    double dx = (ab + ad - bd) / (2 * l[0]);
    double dy = (ad - cd + cx * cx + C[1] * C[1] - 2 * dx * cx) / (2 * C[1]);
    V3 D{dx, dy, std::sqrt(std::max(0.0, ad - dx * dx - dy * dy))};

    auto sub = [](const V3& x, const V3& y) { return V3{x[0] - y[0], x[1] - y[1], x[2] - y[2]}; };
    auto dot = [](const V3& x, const V3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };
    // Interior dihedral along edge PQ between faces PQR and PQS.
    auto interior = [&](const V3& p, const V3& q, const V3& r, const V3& s) {
        V3 u = sub(q, p);
        double un = dot(u, u);
        V3 vr = sub(r, p), vs = sub(s, p);
        double cr = dot(vr, u) / un, cs = dot(vs, u) / un;
        V3 wr{vr[0] - cr * u[0], vr[1] - cr * u[1], vr[2] - cr * u[2]};
        V3 ws{vs[0] - cs * u[0], vs[1] - cs * u[1], vs[2] - cs * u[2]};
        double cosang = dot(wr, ws) / std::sqrt(dot(wr, wr) * dot(ws, ws));
        return std::acos(std::clamp(cosang, -1.0, 1.0));
    };
    double theta[6] = {
        kPi - interior(A, B, C, D),  // edge AB
        kPi - interior(B, C, A, D),  // BC
        kPi - interior(C, A, B, D),  // CA
        kPi - interior(C, D, A, B),  // CD
        kPi - interior(A, D, B, C),  // AD
        kPi - interior(B, D, A, C),  // BD
    };
    double action = 0;
    for (int i = 0; i < 6; ++i) action += l[i] * theta[i];
    return std::cos(action + kPi / 4) / std::sqrt(12 * kPi * vol);
}

}  // namespace foamkit
