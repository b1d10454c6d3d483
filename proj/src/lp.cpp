#include "crnbif/lp.hpp"

#include <stdexcept>

namespace crn {

namespace {

Q lower_of(Bound b) { return (b == Bound::Positive || b == Bound::AtLeastOne) ? Q(1) : Q(0); }

}  // namespace

LPResult lp_feasible(const QMatrix& M, const std::vector<Bound>& bounds) {
    if (bounds.size() != M.cols()) throw std::invalid_argument("lp_feasible: bounds do not match columns");
    size_t m = M.rows(), n = M.cols();
    // substitute x = l + z (bounded) or x = z+ - z- (free); columns of z
    std::vector<std::pair<size_t, int>> zcol;  // (original column, sign)
    for (size_t j = 0; j < n; ++j) {
        zcol.push_back({j, 1});
        if (bounds[j] == Bound::Free) zcol.push_back({j, -1});
    }
    size_t nz = zcol.size();
    QVec b(m, Q(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) b[i] -= M(i, j) * lower_of(bounds[j]);
    std::vector<int> rowsign(m, 1);
    for (size_t i = 0; i < m; ++i)
        if (b[i] < 0) rowsign[i] = -1;

    // tableau: nz structural, m artificial, rhs
    size_t W = nz + m + 1;
    std::vector<QVec> T(m, QVec(W, Q(0)));
    for (size_t i = 0; i < m; ++i) {
        for (size_t k = 0; k < nz; ++k) T[i][k] = M(i, zcol[k].first) * zcol[k].second * rowsign[i];
        T[i][nz + i] = 1;
        T[i][W - 1] = b[i] * rowsign[i];
    }
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = nz + i;
    auto cost = [&](size_t col) { return col >= nz && col < nz + m ? Q(1) : Q(0); };

    for (;;) {
        // Bland: entering = smallest index with negative reduced cost
        size_t enter = W;
        for (size_t j = 0; j + 1 < W; ++j) {
            Q d = cost(j);
            for (size_t i = 0; i < m; ++i) d -= cost(basis[i]) * T[i][j];
            if (d < 0) {
                enter = j;
                break;
            }
        }
        if (enter == W) break;
        size_t leave = m;
        Q best;
        for (size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Q r = T[i][W - 1] / T[i][enter];
            if (leave == m || r < best || (r == best && basis[i] < basis[leave])) {
                leave = i;
                best = r;
            }
        }
        if (leave == m) throw std::logic_error("lp_feasible: unbounded phase-one problem");
        Q piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Q f = T[i][enter];
            for (size_t j = 0; j < W; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }

    Q obj = 0;
    for (size_t i = 0; i < m; ++i) obj += cost(basis[i]) * T[i][W - 1];
    LPResult res;
    if (obj == 0) {
        res.feasible = true;
        QVec z(nz, Q(0));
        for (size_t i = 0; i < m; ++i)
            if (basis[i] < nz) z[basis[i]] = T[i][W - 1];
        res.witness.assign(n, Q(0));
        for (size_t j = 0; j < n; ++j) res.witness[j] = lower_of(bounds[j]);
        for (size_t k = 0; k < nz; ++k) res.witness[zcol[k].first] += z[k] * zcol[k].second;
        return res;
    }
    // dual of phase one: y_k = sum_i c_B(i) (B^-1)_{i,k}; B^-1 sits in the artificial columns
    QVec y(m, Q(0));
    for (size_t k = 0; k < m; ++k)
        for (size_t i = 0; i < m; ++i) y[k] += cost(basis[i]) * T[i][nz + k];
    res.farkas.assign(m, Q(0));
    for (size_t k = 0; k < m; ++k) res.farkas[k] = -y[k] * rowsign[k];
    return res;
}

bool verify_farkas(const QMatrix& M, const std::vector<Bound>& bounds, const QVec& y) {
    if (y.size() != M.rows()) return false;
    Q against = 0;
    for (size_t j = 0; j < M.cols(); ++j) {
        Q s = 0;
        for (size_t i = 0; i < M.rows(); ++i) s += y[i] * M(i, j);
        if (bounds[j] == Bound::Free ? s != 0 : s < 0) return false;
        against += s * lower_of(bounds[j]);
    }
    // y^T M x >= y^T M l > 0 for every admissible x, contradicting M x = 0
    return against > 0;
}

}  // namespace crn
