#pragma once

// Focal values of a planar polynomial field with a linear center at the
// origin, by the undetermined-coefficients Lyapunov function construction.
// K is any exact field type with K(Q), + - * /, and is_zero(K).

#include "crnbif/matrix.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crn {

template <class K>
struct BPoly {
    std::map<std::pair<int, int>, K> c;  // (i, j) -> coefficient of w1^i w2^j

    void add(int i, int j, const K& v) {
        auto it = c.find({i, j});
        if (it == c.end()) {
            if (!is_zero(v)) c.emplace(std::make_pair(i, j), v);
            return;
        }
        it->second = it->second + v;
        if (is_zero(it->second)) c.erase(it);
    }
    K at(int i, int j) const {
        auto it = c.find({i, j});
        return it == c.end() ? K(Q(0)) : it->second;
    }
    bool zero() const { return c.empty(); }
    int degree() const {
        int d = -1;
        for (const auto& [e, v] : c) d = std::max(d, e.first + e.second);
        return d;
    }

    BPoly operator+(const BPoly& o) const {
        BPoly r = *this;
        for (const auto& [e, v] : o.c) r.add(e.first, e.second, v);
        return r;
    }
    BPoly operator-(const BPoly& o) const {
        BPoly r = *this;
        for (const auto& [e, v] : o.c) r.add(e.first, e.second, K(Q(0)) - v);
        return r;
    }
    BPoly operator*(const BPoly& o) const {
        BPoly r;
        for (const auto& [e, v] : c)
            for (const auto& [f, w] : o.c) r.add(e.first + f.first, e.second + f.second, v * w);
        return r;
    }
    BPoly scaled(const K& s) const {
        BPoly r;
        for (const auto& [e, v] : c) r.add(e.first, e.second, v * s);
        return r;
    }
    BPoly d1() const {
        BPoly r;
        for (const auto& [e, v] : c)
            if (e.first) r.add(e.first - 1, e.second, v * K(Q(e.first)));
        return r;
    }
    BPoly d2() const {
        BPoly r;
        for (const auto& [e, v] : c)
            if (e.second) r.add(e.first, e.second - 1, v * K(Q(e.second)));
        return r;
    }
    BPoly homogeneous(int d) const {
        BPoly r;
        for (const auto& [e, v] : c)
            if (e.first + e.second == d) r.c.emplace(e, v);
        return r;
    }
    static BPoly constant(const K& v) {
        BPoly r;
        r.add(0, 0, v);
        return r;
    }
    static BPoly w1() {
        BPoly r;
        r.add(1, 0, K(Q(1)));
        return r;
    }
    static BPoly w2() {
        BPoly r;
        r.add(0, 1, K(Q(1)));
        return r;
    }
};

template <class K>
BPoly<K> bpow(const BPoly<K>& p, int e) {
    BPoly<K> r = BPoly<K>::constant(K(Q(1)));
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

// Solves the square system A z = b over K; throws if singular.
template <class K>
std::vector<K> solve_linear(std::vector<std::vector<K>> A, std::vector<K> b) {
    size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t r = col; r < n; ++r)
            if (!is_zero(A[r][col])) {
                piv = r;
                break;
            }
        if (piv == n) throw std::domain_error("focal: singular coefficient system");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        K inv = K(Q(1)) / A[col][col];
        for (size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(A[r][col])) continue;
            K f = A[r][col] * inv;
            for (size_t k = col; k < n; ++k) A[r][k] = A[r][k] - f * A[col][k];
            b[r] = b[r] - f * b[col];
        }
    }
    std::vector<K> z(n);
    for (size_t i = 0; i < n; ++i) z[i] = b[i] / A[i][i];
    return z;
}

// Returns eta_4, eta_6, ... (order entries): V' = eta_{2k+2} H^{k+1} + ...
// where H is the positive definite quadratic form attached to the linear
// part. Requires f(0) = 0 and a linear part (a b; c -a) with -a^2 - b c > 0;
// sign(eta_{2k+2}) = sign(L_k).
template <class K>
std::vector<K> focal_etas(const std::array<BPoly<K>, 2>& f, int order) {
    const K zero(Q(0));
    if (!is_zero(f[0].at(0, 0)) || !is_zero(f[1].at(0, 0))) throw std::invalid_argument("focal: origin is not an equilibrium");
    K a = f[0].at(1, 0), b = f[0].at(0, 1), c = f[1].at(1, 0);
    if (!is_zero(f[1].at(0, 1) + a)) throw std::invalid_argument("focal: linear part has nonzero trace");
    using BP = BPoly<K>;
    BP lin0 = BP::w1().scaled(a) + BP::w2().scaled(b);
    BP lin1 = BP::w1().scaled(c) - BP::w2().scaled(a);
    BP N0 = f[0] - lin0, N1 = f[1] - lin1;
    BP H;
    H.add(2, 0, c * c);
    H.add(1, 1, zero - K(Q(2)) * a * c);
    H.add(0, 2, zero - b * c);
    BP V = H;  // accumulated Lyapunov function
    std::vector<K> etas;
    int dmax = 2 * order + 2;
    for (int d = 3; d <= dmax; ++d) {
        BP rhs = (V.d1() * N0 + V.d2() * N1).homogeneous(d);
        // unknowns: coefficients c_i of w1^(d-i) w2^i, i = 0..d
        // L(w1^p w2^q) = p w1^(p-1) w2^q lin0 + q w1^p w2^(q-1) lin1
        std::vector<std::vector<K>> A(d + 1, std::vector<K>(d + 1, zero));
        for (int i = 0; i <= d; ++i) {
            int p = d - i, q = i;
            BP mon;
            mon.add(p, q, K(Q(1)));
            BP img = mon.d1() * lin0 + mon.d2() * lin1;
            for (const auto& [e, v] : img.c) A[e.second][i] = A[e.second][i] + v;
        }
        std::vector<K> bvec(d + 1, zero);
        for (const auto& [e, v] : rhs.c) bvec[e.second] = bvec[e.second] - v;
        BP Vd;
        if (d % 2 == 1) {
            auto z = solve_linear(A, bvec);
            for (int i = 0; i <= d; ++i) Vd.add(d - i, i, z[i]);
        } else {
            // c_0 = 0, extra unknown eta with column -H^(d/2)
            BP Hk = bpow(H, d / 2);
            std::vector<std::vector<K>> B(d + 1, std::vector<K>(d + 1, zero));
            for (int r = 0; r <= d; ++r) {
                for (int i = 1; i <= d; ++i) B[r][i - 1] = A[r][i];
                B[r][d] = zero - Hk.at(d - r, r);
            }
            auto z = solve_linear(B, bvec);
            for (int i = 1; i <= d; ++i) Vd.add(d - i, i, z[i - 1]);
            etas.push_back(z[d]);
        }
        V = V + Vd;
    }
    return etas;
}

}  // namespace crn
