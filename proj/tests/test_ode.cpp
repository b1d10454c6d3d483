#include "checks.hpp"
#include "tables.hpp"

#include "crnbif/ode.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

using namespace crn;

namespace {

Portrait golden_portrait() {
    return make_portrait(parse_network(tables::network9), {1, 1, 3, 1}, {{1.4, 0.9}, {0.6, 2.0}}, 5);
}

std::vector<std::vector<double>> read_csv(std::istream& in, std::string& header) {
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    for (std::string line; std::getline(in, line);) {
        std::vector<double> r;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) r.push_back(std::stod(cell));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_CASE("integrator order on a linear system") {
    // rotation about (2, 2), inside the orthant: (2 + cos t, 2 + sin t)
    Field f = [](const State& s, State& d) {
        d[0] = 2 - s[1];
        d[1] = s[0] - 2;
    };
    double err[2];
    for (int k = 0; k < 2; ++k) {
        OdeOptions o;
        o.fixed_step = k == 0 ? 0.1 : 0.05;
        auto tr = integrate(f, {3, 2}, 1, o);
        err[k] = std::hypot(tr.x.back()[0] - 2 - std::cos(1.0), tr.x.back()[1] - 2 - std::sin(1.0));
    }
    // fifth-order method: halving h divides the error by about 32
    CHECK(err[0] / err[1] > 20);
    OdeOptions o;
    auto tr = integrate(f, {3, 2}, 10, o);
    CHECK(std::abs(tr.x.back()[0] - 2 - std::cos(10.0)) < 1e-8);
    CHECK(tr.t.back() == doctest::Approx(10));
}

TEST_CASE("blow-up truncates the run") {
    // x' = x^2 from x = 1 blows up at t = 1
    auto f = mass_action_field(parse_network("2X->3X; Y->0"), {1, 1});
    auto tr = integrate(f, {1, 1}, 5);
    CHECK(tr.truncated);
    CHECK(tr.t.back() < 1.0);
    CHECK(tr.t.back() > 0.99);
}

TEST_CASE("trajectories stay in the closed orthant") {
    auto f = mass_action_field(parse_network("X->0; Y->0; X+Y->0; 2X->0"), {5, 5, 20, 20});
    auto tr = integrate(f, {1, 1}, 50);
    CHECK_FALSE(tr.truncated);
    for (const auto& s : tr.x) {
        CHECK(s[0] >= 0);
        CHECK(s[1] >= 0);
    }
    CHECK(tr.x.back()[0] < 1e-8);
}

TEST_CASE("network 9 first integral") {
    double drift = 1;
    auto r = checks::network9_drift(100, 1e-6, &drift);
    CHECK_MESSAGE(r.ok, r.detail);
    CHECK(drift < 1e-6);
    CHECK(checks::network9_dulac().ok);
    // no first integral off the center manifold k1 = k2
    CHECK_FALSE(known_first_integral(parse_network(tables::network9), {1, 2, 3, 1}));
}

TEST_CASE("network 9 first-integral drift shrinks with the step") {
    double ratio = 0;
    auto r = checks::network9_order(&ratio);
    CHECK_MESSAGE(r.ok, r.detail);
}

TEST_CASE("portrait CSV matches the golden file") {
    auto p = golden_portrait();
    std::stringstream out;
    write_portrait_csv(out, p);
    std::string h1, h2;
    auto got = read_csv(out, h1);
    std::ifstream gf(std::string(GOLDEN_DIR) + "/network9_portrait.csv");
    REQUIRE(gf);
    auto want = read_csv(gf, h2);
    CHECK(h1 == "trajectory,t,x,y");
    CHECK(h2 == h1);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].size() == 4);
        CHECK(got[i][0] == want[i][0]);
        for (size_t j = 1; j < 4; ++j) CHECK(got[i][j] == doctest::Approx(want[i][j]).epsilon(1e-7));
    }
}

TEST_CASE("portrait SVG structure") {
    auto p = golden_portrait();
    std::stringstream out;
    write_portrait_svg(out, p);
    std::string svg = out.str();
    CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\"", 0) == 0);
    auto count = [&](const std::string& pat) {
        std::regex re(pat);
        return std::distance(std::sregex_iterator(svg.begin(), svg.end(), re), std::sregex_iterator());
    };
    CHECK(count("<polyline ") == 2);
    CHECK(count("<circle ") == static_cast<long>(p.equilibria.count()));
    CHECK(p.equilibria.count() == 2);
    CHECK(count("<g id=\"nullclines\"") == 1);
    CHECK(count("<path stroke=") == 2);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("portrait input validation") {
    Network net = parse_network(tables::network9);
    CHECK_THROWS_AS(make_portrait(net, {1, 1, 0, 1}, {{1, 1}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_portrait(net, {1, 1, 1, 1}, {{-1, 1}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_portrait(net, {1, 1, 1}, {{1, 1}}, 1), std::invalid_argument);
}
