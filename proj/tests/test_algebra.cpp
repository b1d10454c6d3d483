#include "checks.hpp"

#include "crnbif/lp.hpp"
#include "crnbif/matrix.hpp"
#include "crnbif/mpoly.hpp"
#include "crnbif/quadnum.hpp"
#include "crnbif/ratfunc.hpp"
#include "crnbif/roots.hpp"
#include "crnbif/sign.hpp"
#include "crnbif/upoly.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace crn;

namespace {

UPoly from_roots(const std::vector<Q>& r) {
    UPoly p(1);
    for (const auto& x : r) p *= UPoly(std::vector<Q>{-x, 1});
    return p;
}

UPoly random_upoly(std::mt19937_64& rng, int deg) {
    std::vector<Q> c;
    for (int i = 0; i <= deg; ++i) c.push_back(checks::random_rational(rng, -9, 9, 4));
    return UPoly(c);
}

}  // namespace

TEST_CASE("rational literals") {
    CHECK(parse_rational("3/2") == Q(3, 2));
    CHECK(parse_rational("-4/6") == Q(-2, 3));
    CHECK(parse_rational("0.25") == Q(1, 4));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("univariate division and gcd") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        UPoly a = random_upoly(rng, 5), b = random_upoly(rng, 3);
        if (b.is_zero()) continue;
        auto [q, r] = a.divmod(b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
    UPoly g = gcd(from_roots({1, 2}), from_roots({1, 3}));
    CHECK(g == from_roots({1}));
    CHECK(squarefree_part(from_roots({2, 2, Q(1, 3)})) == from_roots({2, Q(1, 3)}));
}

TEST_CASE("resultant equals product over roots") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 100; ++it) {
        std::vector<Q> r = {checks::random_rational(rng, -5, 5, 3), checks::random_rational(rng, -5, 5, 3),
                            checks::random_rational(rng, -5, 5, 3)};
        UPoly p = from_roots(r), q = random_upoly(rng, 2);
        Q prod = 1;
        for (const auto& x : r) prod *= q.eval(x);
        CHECK(resultant(p, q) == prod);
        // multivariate resultant specialises to the univariate one
        MPoly P = MPoly::from_upoly(p, {"a"}, 0), Qm = MPoly::from_upoly(q, {"a"}, 0);
        CHECK(resultant(P, Qm, "a").constant_term() == prod);
    }
}

TEST_CASE("root isolation against known roots") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 100; ++it) {
        std::vector<Q> r;
        while (r.size() < 4) {
            Q x = checks::random_rational(rng, 1, 63, 64);
            if (x < 1 && std::find(r.begin(), r.end(), x) == r.end()) r.push_back(x);
        }
        std::sort(r.begin(), r.end());
        UPoly p = from_roots(r) * UPoly(std::vector<Q>{3, 0, 1});  // no real roots from x^2 + 3
        auto iv = isolate_real_roots(p, 0, 1);
        REQUIRE(iv.size() == r.size());
        for (size_t i = 0; i < r.size(); ++i) {
            if (iv[i].is_point())
                CHECK(iv[i].lo == r[i]);
            else
                CHECK((iv[i].lo < r[i] && r[i] < iv[i].hi));
        }
        CHECK(count_roots(sturm_sequence(p), 0, 1) == 4);
    }
    auto s2 = real_roots(UPoly(std::vector<Q>{-2, 0, 1}), 0, 2);
    REQUIRE(s2.size() == 1);
    CHECK(std::abs(s2[0].to_double() - std::sqrt(2.0)) < 1e-12);
    CHECK(s2[0].compare(Q(141, 100)) > 0);
    CHECK(s2[0].compare(Q(142, 100)) < 0);
    CHECK(s2[0].sign_of(UPoly(std::vector<Q>{-2, 0, 1})) == 0);
}

TEST_CASE("cell decomposition samples avoid every root") {
    std::mt19937_64 rng(14);
    for (int it = 0; it < 100; ++it) {
        std::vector<UPoly> fam = {random_upoly(rng, 3), random_upoly(rng, 2), random_upoly(rng, 4)};
        std::erase_if(fam, [](const UPoly& p) { return p.is_constant(); });
        if (fam.empty()) continue;
        auto cd = decompose(fam, 0, 1);
        CHECK(cd.cells.size() == cd.roots.size() + 1);
        for (size_t i = 0; i < cd.cells.size(); ++i) {
            const Q& s = cd.cells[i];
            CHECK((s > 0 && s < 1));
            for (const auto& p : fam) CHECK(p.sign_at(s) != 0);
            if (i > 0) CHECK(cd.roots[i - 1].compare(s) < 0);
            if (i < cd.roots.size()) CHECK(cd.roots[i].compare(s) > 0);
        }
    }
}

TEST_CASE("quadratic field arithmetic") {
    QuadNum s(0, 1, 2);  // sqrt 2
    CHECK((QuadNum(1) + s) * (QuadNum(1) - s) == QuadNum(-1));
    CHECK((QuadNum(3) - QuadNum(0, 2, 2)).sign() == 1);  // 3 - 2 sqrt 2 > 0
    CHECK((QuadNum(Q(141, 100)) - s).sign() == -1);
    CHECK((QuadNum(1) / (QuadNum(1) + s)) == s - QuadNum(1));
    auto r = real_roots(UPoly(std::vector<Q>{-1, -1, 1}), 0, 2);  // golden ratio
    REQUIRE(r.size() == 1);
    auto g = QuadNum::from_algebraic(r[0]);
    REQUIRE(g);
    CHECK(*g * *g - *g - QuadNum(1) == QuadNum(0));
    CHECK(std::abs(g->to_double() - (1 + std::sqrt(5.0)) / 2) < 1e-14);
}

TEST_CASE("rational functions") {
    UPoly a = UPoly::x();
    RatFunc lhs = RatFunc(UPoly(1), a + UPoly(1)) + RatFunc(UPoly(1), a - UPoly(1));
    RatFunc rhs(a * UPoly(2), a * a - UPoly(1));
    CHECK(lhs == rhs);
    CHECK((lhs / rhs) == RatFunc(1));
    CHECK(rhs.eval(3) == Q(3, 4));
}

TEST_CASE("multivariate determinant matches Gaussian elimination") {
    std::mt19937_64 rng(15);
    std::vector<std::string> vars = {"u", "v"};
    MPoly u = MPoly::var(vars, 0), v = MPoly::var(vars, 1);
    for (int it = 0; it < 50; ++it) {
        std::vector<std::vector<MPoly>> M(3, std::vector<MPoly>(3));
        for (auto& row : M)
            for (auto& e : row)
                e = u * checks::random_rational(rng, -3, 3, 2) + v * checks::random_rational(rng, -3, 3, 2) +
                    MPoly(vars, checks::random_rational(rng, -3, 3, 2));
        MPoly d = det_berkowitz(M);
        QVec pt = {checks::random_rational(rng, -5, 5, 3), checks::random_rational(rng, -5, 5, 3)};
        QMatrix N(3, 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) N(i, j) = M[i][j].eval(pt);
        CHECK(d.eval(pt) == N.det());
    }
}

TEST_CASE("fraction-free rank agrees with rref rank") {
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<int> e(-2, 2);
    for (int it = 0; it < 200; ++it) {
        QMatrix m(4, 5);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 5; ++j) m(i, j) = e(rng);
        if (it % 3 == 0)
            for (size_t j = 0; j < 5; ++j) m(3, j) = m(0, j) * 2 - m(1, j);
        CHECK(rank_fraction_free(m) == m.rank());
    }
}

TEST_CASE("linear feasibility with certificates") {
    QMatrix M(1, 2, {1, -1});  // x1 = x2
    auto ok = lp_feasible(M, {Bound::Positive, Bound::Positive});
    REQUIRE(ok.feasible);
    CHECK(ok.witness[0] == ok.witness[1]);
    CHECK(ok.witness[0] > 0);

    QMatrix N(1, 2, {1, 1});  // x1 + x2 = 0 with x > 0 is empty
    auto no = lp_feasible(N, {Bound::Positive, Bound::Positive});
    REQUIRE_FALSE(no.feasible);
    CHECK(verify_farkas(N, {Bound::Positive, Bound::Positive}, no.farkas));

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int it = 0; it < 200; ++it) {
        QMatrix G(2, 4);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 4; ++j) G(i, j) = e(rng);
        std::vector<Bound> b(4, Bound::Positive);
        auto r = lp_feasible(G, b);
        if (r.feasible) {
            auto img = G * r.witness;
            CHECK(std::all_of(img.begin(), img.end(), [](const Q& q) { return q == 0; }));
            CHECK(std::all_of(r.witness.begin(), r.witness.end(), [](const Q& q) { return q > 0; }));
        } else {
            CHECK(verify_farkas(G, b, r.farkas));
        }
    }
}

TEST_CASE("sign decisions on structured polynomials") {
    std::vector<std::string> vars = {"u", "v"};
    MPoly u = MPoly::var(vars, 0), v = MPoly::var(vars, 1);
    auto dom = Domain::positive_orthant(vars);
    auto half = MPoly(vars, Q(1, 2));
    CHECK(decide_sign(u * v + MPoly(vars, 1), dom).verdict == Verdict::AllPositive);
    CHECK(decide_sign(-(u * u) - MPoly(vars, 1), dom).verdict == Verdict::AllNegative);
    CHECK(decide_sign(MPoly(vars), dom).verdict == Verdict::IdenticallyZero);
    CHECK(decide_sign((u - half) * (u - half) + v, dom).verdict == Verdict::AllPositive);
    CHECK(decide_sign((u - v) * (u - v), dom).verdict == Verdict::NonNegative);
    auto mixed = decide_sign(u - v, dom);
    CHECK(mixed.verdict == Verdict::Mixed);
    CHECK(verify_witnesses(u - v, dom, mixed));
}

TEST_CASE("sign decisions against sampling on random polynomials") {
    std::mt19937_64 rng(18);
    std::vector<std::string> vars = {"u", "v"};
    MPoly u = MPoly::var(vars, 0), v = MPoly::var(vars, 1);
    Domain dom = Domain::positive_orthant(vars);
    dom.box("u", Q(0), Q(1)).box("v", Q(0), Q(1));
    int unresolved = 0;
    for (int it = 0; it < 150; ++it) {
        MPoly p(vars);
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; i + j <= 2; ++j) p.add_term({i, j}, checks::random_rational(rng, -4, 4, 2));
        auto d = decide_sign(p, dom);
        bool pos = false, neg = false;
        for (int i = 1; i < 40; ++i)
            for (int j = 1; j < 40; ++j) {
                int s = sgn(p.eval(QVec{Q(i, 40), Q(j, 40)}));
                pos |= s > 0;
                neg |= s < 0;
            }
        switch (d.verdict) {
            case Verdict::AllPositive: CHECK_FALSE(neg); CHECK(pos); break;
            case Verdict::AllNegative: CHECK_FALSE(pos); CHECK(neg); break;
            case Verdict::NonNegative: CHECK_FALSE(neg); break;
            case Verdict::NonPositive: CHECK_FALSE(pos); break;
            case Verdict::IdenticallyZero: CHECK_FALSE((pos || neg)); break;
            case Verdict::Mixed: {
                REQUIRE(d.witnesses.size() == 2);
                CHECK(dom.contains(d.witnesses[0]));
                CHECK(dom.contains(d.witnesses[1]));
                CHECK(sgn(p.eval(d.witnesses[0])) == 1);
                CHECK(sgn(p.eval(d.witnesses[1])) == -1);
                break;
            }
            case Verdict::Unresolved: ++unresolved; break;
        }
        if (pos && neg) CHECK((d.verdict == Verdict::Mixed || d.verdict == Verdict::Unresolved));
    }
    CHECK(unresolved == 0);
}
