#include "crnbif/matrix.hpp"

namespace crn {

size_t rank_fraction_free(const QMatrix& m) {
    size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Z>> a(R, std::vector<Z>(C));
    for (size_t i = 0; i < R; ++i) {
        Z l = 1;
        for (size_t j = 0; j < C; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (size_t j = 0; j < C; ++j) {
            Q s = m(i, j) * l;
            a[i][j] = s.get_num();
        }
    }
    Z prev = 1;
    size_t rank = 0;
    for (size_t j = 0; j < C && rank < R; ++j) {
        size_t sel = R;
        for (size_t i = R; i-- > rank;)
            if (a[i][j] != 0) { sel = i; break; }
        if (sel == R) continue;
        std::swap(a[rank], a[sel]);
        for (size_t i = rank + 1; i < R; ++i) {
            for (size_t k = j + 1; k < C; ++k) {
                Z t = a[rank][j] * a[i][k] - a[i][j] * a[rank][k];
                mpz_divexact(a[i][k].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][j] = 0;
        }
        prev = a[rank][j];
        ++rank;
    }
    return rank;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
    return m;
}

}  // namespace crn
