#include "checks.hpp"
#include "tables.hpp"

#include "crnbif/bifurcation.hpp"
#include "crnbif/focal.hpp"

#include <doctest.h>

#include <map>

using namespace crn;

TEST_CASE("network 9 is vertical in every sense") {
    Network net = parse_network(tables::network9);
    auto rep = analyze(net);
    CHECK_FALSE(rep.unresolved);
    REQUIRE(rep.fold);
    CHECK(rep.fold->kind == FoldKind::Nondegenerate);
    REQUIRE(rep.focal);
    CHECK(rep.focal->kind == HopfKind::Vertical);
    CHECK(rep.focal->higher_vanish_checked);
    REQUIRE(rep.bt);
    CHECK(rep.bt->kind == BTKind::Vertical);
    CHECK(rep.bt->transversal == true);
    // all focal quantities vanish at the Hopf witness
    const auto& w = *rep.hopf->witness;
    for (const auto& eta : focal_at(net, w.alpha, w.x / w.y, 3)) CHECK(eta == 0);
}

TEST_CASE("Bautin network") {
    Network net = parse_network(tables::bautin);
    auto f = focal_values(net);
    CHECK(f.kind == HopfKind::Bautin);
    CHECK(f.l2_sign == 1);
    CHECK(f.l1_signs == std::set<int>{-1, 1});
    REQUIRE_FALSE(f.l1_zeros.empty());
}

TEST_CASE("Wilhelm network: fold with a stable origin") {
    auto rep = analyze(parse_network(tables::wilhelm));
    REQUIRE(rep.fold);
    CHECK(rep.fold->kind == FoldKind::Nondegenerate);
    REQUIRE(rep.origin);
    CHECK(rep.origin->stable());
    CHECK(rep.bistable);
    CHECK_FALSE(rep.unresolved);
}

TEST_CASE("rank-one folds") {
    auto r1 = rank_one_fold(parse_network("0->X; X->0; 2X->3X"));
    CHECK(r1.found);
    CHECK(r1.pattern == "1");
    auto r2 = rank_one_fold(parse_network("0->X+Y; X+Y->0; 2X->3X+Y"));
    CHECK(r2.found);
    CHECK(r2.pattern == "2a");
    // pattern 1 embedded in a larger rank-one network through a species deletion
    auto r3 = rank_one_fold(parse_network("0->2X; X->0; 2X->3X; X+Y->2X+Y"));
    CHECK(r3.found);
    CHECK_FALSE(rank_one_fold(parse_network("0->X; X->0; X->2X")).found);
    CHECK_THROWS_AS(rank_one_fold(parse_network(tables::network9)), std::invalid_argument);
}

TEST_CASE("nilpotent-only networks") {
    for (const auto& s : tables::nilpotent_only) {
        auto f = fold_analysis(parse_network(s));
        CHECK_MESSAGE(f.kind == FoldKind::NilpotentOnly, s);
        CHECK_FALSE(f.witness);
    }
}

TEST_CASE("focal values agree with the classical first Lyapunov coefficient") {
    // x' = -w y + f(x, y), y' = w x + g(x, y):
    // 16 L1 = f_xxx + f_xyy + g_xxy + g_yyy
    //       + (f_xy (f_xx + f_yy) - g_xy (g_xx + g_yy) - f_xx g_xx + f_yy g_yy) / w
    std::mt19937_64 rng(41);
    using BP = BPoly<Q>;
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        Q w = it % 2 ? Q(1) : Q(2);
        std::map<std::pair<int, int>, Q> fc, gc;
        for (auto e : {std::pair{2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}) {
            fc[e] = checks::random_rational(rng, -4, 4, 3);
            gc[e] = checks::random_rational(rng, -4, 4, 3);
        }
        BP F, G;
        F.add(0, 1, -w);
        G.add(1, 0, w);
        for (auto& [e, v] : fc) F.add(e.first, e.second, v);
        for (auto& [e, v] : gc) G.add(e.first, e.second, v);
        // partial derivatives at 0: d^(i+j) / dx^i dy^j of c x^i y^j is i! j! c
        auto d = [](std::map<std::pair<int, int>, Q>& c, int i, int j) -> Q {
            Q fact = 1;
            for (int k = 2; k <= i; ++k) fact *= k;
            for (int k = 2; k <= j; ++k) fact *= k;
            return c[{i, j}] * fact;
        };
        Q l1 = d(fc, 3, 0) + d(fc, 1, 2) + d(gc, 2, 1) + d(gc, 0, 3) +
               (d(fc, 1, 1) * (d(fc, 2, 0) + d(fc, 0, 2)) - d(gc, 1, 1) * (d(gc, 2, 0) + d(gc, 0, 2)) -
                d(fc, 2, 0) * d(gc, 2, 0) + d(fc, 0, 2) * d(gc, 0, 2)) /
                   w;
        auto etas = focal_etas<Q>({F, G}, 1);
        CHECK(sgn(etas[0]) == sgn(l1));
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("return-map amplitude follows the sign of L1") {
    auto cells = tables::hopf_table();
    std::map<char, std::vector<std::string>> by_mark;
    for (const auto& c : cells) by_mark[c.mark].push_back(c.network);
    for (auto [mark, expected] : {std::pair{'-', -1}, {'+', 1}, {'0', 0}}) {
        const auto& list = by_mark[mark];
        REQUIRE(list.size() >= 5);
        for (size_t i = 0; i < 5; ++i) {
            // spread the picks over the table
            const auto& s = list[i * (list.size() - 1) / 4];
            auto r = checks::l1_amplitude(parse_network(s), expected);
            CHECK_MESSAGE(r.ok, r.detail);
        }
    }
}

TEST_CASE("cusp gradient identity at fold points") {
    std::vector<Network> folds;
    for (const auto& c : tables::fold_bimolecular()) folds.push_back(parse_network(c.network));
    auto r = checks::cusp_identity(folds, 1e-8);
    CHECK_MESSAGE(r.ok, r.detail);
    CHECK(r.cases == 60);
    CHECK_THROWS_AS(cusp_gradient_check(parse_network(tables::wilhelm), {1, 1}, {1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("Bogdanov-Takens verdicts") {
    const auto& t = tables::bt_table();
    CHECK(bt_analysis(parse_network(t[0])).kind == BTKind::Supercritical);
    CHECK(bt_analysis(parse_network(t[9])).kind == BTKind::Vertical);
    CHECK(bt_analysis(parse_network(t[32])).kind == BTKind::Subcritical);
    for (const auto& s : tables::no_bt) {
        auto v = bt_analysis(parse_network(s));
        CHECK_MESSAGE(v.search.candidate, s);
        CHECK_MESSAGE(!v.search.feasible, s);
    }
    // the double zero is exact: det and trace of M vanish at the stored alpha
    Network net = parse_network(t[0]);
    auto s = bt_point_search(net);
    REQUIRE(s.feasible);
    auto red = reduce(net);
    for (const auto& p : s.points) {
        CHECK(p.alpha.sign_of(red.det) == 0);
        auto nf = bt_normal_form(net, p);
        CHECK((nf.bt1 && nf.bt2));
        CHECK(nf.sigma == -1);
    }
}

TEST_CASE("origin classification") {
    CHECK(origin_stability(parse_network(tables::network9)).kind == OriginKind::NoBoundaryEquilibrium);
    CHECK(origin_stability(parse_network("Y->2X; 2X->X+Y; X+Y->Y; X->0")).kind == OriginKind::StableHyperbolic);
    CHECK(origin_stability(parse_network("X->2X; Y->2Y; X+Y->0; 2X->0")).kind == OriginKind::Unstable);
}
