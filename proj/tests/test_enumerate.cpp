#include "tables.hpp"

#include "crnbif/enumerate.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

using namespace crn;

namespace {

const Catalog& bimolecular(unsigned jobs) {
    static Catalog one = enumerate_networks(named_spec("fold-bimolecular"), 1);
    static Catalog three = enumerate_networks(named_spec("fold-bimolecular"), 3);
    return jobs == 1 ? one : three;
}

long binom(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("complex enumeration") {
    for (size_t n = 1; n <= 3; ++n)
        for (int d = 0; d <= 3; ++d) {
            auto cs = enumerate_complexes(n, d);
            CHECK(static_cast<long>(cs.size()) == binom(static_cast<long>(n) + d, d));
            std::set<Complex> uniq(cs.begin(), cs.end());
            CHECK(uniq.size() == cs.size());
            for (const auto& c : cs) CHECK(c.molecularity() <= d);
        }
}

TEST_CASE("named specs") {
    CHECK(named_spec("fold").max_product == 3);
    CHECK(named_spec("fold-bimolecular").max_product == 2);
    CHECK(named_spec("hopf").mixed_source);
    CHECK_THROWS_AS(named_spec("saddle-node"), std::invalid_argument);
}

TEST_CASE("catalog is deterministic across thread counts") {
    const auto& a = bimolecular(1);
    const auto& b = bimolecular(3);
    REQUIRE(a.size() == b.size());
    CHECK(a.raw_count == b.raw_count);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a.entries[i].key == b.entries[i].key);
        CHECK(format_network_raw(a.entries[i].net) == format_network_raw(b.entries[i].net));
    }
    std::ostringstream ja, jb;
    write_jsonl(ja, a);
    write_jsonl(jb, b);
    CHECK(ja.str() == jb.str());
}

TEST_CASE("catalog entries satisfy the class constraints") {
    const auto& cat = bimolecular(1);
    CHECK(cat.raw_count == raw_candidate_count(cat.spec));
    for (size_t i = 0; i < cat.size(); ++i) {
        const auto& e = cat.entries[i];
        if (i > 0) CHECK(cat.entries[i - 1].key < e.key);
        CHECK(e.key == dynamic_key(e.net));
        CHECK(e.net.n() == 2);
        CHECK(e.net.m() == 4);
        CHECK(e.net.rank() == 2);
        CHECK(e.net.is_quadratic());
        CHECK(e.net.max_product_molecularity() <= 2);
        CHECK(is_dynamically_nontrivial(e.net));
        CHECK(e.net.trivial_species().empty());
        auto src = e.net.sources();
        CHECK(std::set<Complex>(src.begin(), src.end()).size() == src.size());
        CHECK(cat.find(e.key) == &e);
        // the representative is a fixed point of class_representative
        CHECK(dynamic_key(class_representative(e.net, 2)) == e.key);
    }
    CHECK(cat.find("no such key") == nullptr);
}

TEST_CASE("published bimolecular folds are catalogued") {
    const auto& cat = bimolecular(1);
    auto cells = tables::fold_bimolecular();
    CHECK(cells.size() == 30);
    std::set<CanonicalKey> keys;
    for (const auto& c : cells) {
        Network net = parse_network(c.network);
        CHECK_MESSAGE(cat.find(dynamic_key(net)), c.network);
        keys.insert(dynamic_key(net));
    }
    CHECK(keys.size() == 30);
    CHECK(cat.find(dynamic_key(parse_network(tables::wilhelm))));
}

TEST_CASE("jsonl and csv exports") {
    const auto& cat = bimolecular(1);
    std::ostringstream js, cs;
    write_jsonl(js, cat);
    write_csv(cs, cat);
    std::istringstream in(js.str());
    size_t lines = 0;
    for (std::string line; std::getline(in, line); ++lines) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["schema"] == "crnbif.catalog/1");
        CHECK(j["key"] == cat.entries[lines].key);
        CHECK(dynamic_key(parse_network(j["text"].get<std::string>())) == cat.entries[lines].key);
    }
    CHECK(lines == cat.size());
    std::string csv = cs.str();
    CHECK(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')) == cat.size() + 1);
}

TEST_CASE("diagonal partition agrees with pairwise equivalence") {
    std::vector<Network> nets;
    for (const auto& s : tables::bt_table()) nets.push_back(parse_network(s));
    auto part = partition_diagonal(nets);
    for (size_t i = 0; i < nets.size(); ++i) {
        CHECK(part[i] <= i);
        CHECK(part[part[i]] == part[i]);
        for (size_t j = i + 1; j < nets.size(); ++j)
            CHECK((part[i] == part[j]) == equivalent(nets[i], nets[j], EquivalenceMode::Diagonal));
    }
    CHECK(class_count(part) == 28);
}

TEST_CASE("source predicates") {
    CHECK(sources_collinear({Complex{{0, 0}}, Complex{{1, 0}}, Complex{{2, 0}}}));
    CHECK_FALSE(sources_collinear({Complex{{0, 0}}, Complex{{1, 0}}, Complex{{0, 1}}}));
    CHECK(is_mixed(Complex{{1, 1}}));
    CHECK_FALSE(is_mixed(Complex{{2, 0}}));
    CHECK(has_autocatalytic_square(parse_network("2X->3X; Y->0")));
    CHECK(has_autocatalytic_square(parse_network("2Y->4Y; X->0")));
    CHECK_FALSE(has_autocatalytic_square(parse_network("2X->X; X->2X")));
    CHECK(has_mixed_source(parse_network(tables::network9)));
}
