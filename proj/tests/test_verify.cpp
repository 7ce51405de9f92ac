#include "oracles.hpp"

#include "qmlat/error.hpp"
#include "qmlat/io.hpp"
#include "qmlat/verify.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qmlat;

namespace {

CanonicalQM make(const char* lattice, std::initializer_list<const char*> gens) {
    auto L = builtin(lattice);
    std::vector<Ideal> f;
    for (auto g : gens) f.push_back(Ideal::principal(L, L.at(g)));
    return CanonicalQM(L, f);
}

const TheoremReport& find_report(const std::vector<TheoremReport>& rs, std::string_view id) {
    auto it = std::find_if(rs.begin(), rs.end(), [&](const TheoremReport& r) { return r.id == id; });
    REQUIRE(it != rs.end());
    return *it;
}

std::size_t count(const std::vector<TheoremReport>& rs, Status s) {
    return static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [&](const auto& r) { return r.status == s; }));
}

} // namespace

TEST_CASE("catalog ids are unique and probes are excluded by default") {
    const auto& cat = clause_catalog();
    std::vector<std::string> ids;
    std::size_t probes = 0;
    for (const auto& c : cat) {
        ids.push_back(c.id);
        probes += c.probe;
    }
    std::sort(ids.begin(), ids.end());
    CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    CHECK(check_all(make("n5", {"1"})).size() == cat.size() - probes);
}

TEST_CASE("every clause passes on 0-distributive instances") {
    for (const auto& qm : {make("n5", {"1", "a"}), make("fig5", {"1"}), make("chain_3", {"1", "1"}),
                           make("n5", {"0"}), make("boolean_2", {"1", "a"})}) {
        CAPTURE(qm_spec_to_text(qm));
        const auto reports = check_all(qm);
        for (const auto& r : reports) {
            CAPTURE(r.id);
            CAPTURE(r.detail);
            CHECK(r.status == Status::Pass);
            CHECK_FALSE(r.scope.empty());
        }
    }
}

TEST_CASE("without 0-distributivity the dependent clauses report the unmet hypothesis") {
    const auto reports = check_all(make("m3", {"1", "a"}));
    CHECK(count(reports, Status::Fail) == 0);
    CHECK(count(reports, Status::Error) == 0);
    const auto& r = find_report(reports, "perp.is-subquasimodule");
    CHECK(r.status == Status::HypothesisNotMet);
    CHECK(r.unmet_hypotheses == std::vector<std::string>{"0-distributive"});
    REQUIRE(r.witness);
    CHECK(replay(r));

    for (const auto& c : clause_catalog())
        if (!c.probe && c.hypotheses.empty()) CHECK(find_report(reports, c.id).status == Status::Pass);
}

TEST_CASE("dropping a hypothesis turns violations into failures that replay") {
    VerifyOptions opt;
    opt.drop_hypotheses = {"0-distributive"};
    const auto reports = check_all(make("m3", {"1", "a"}), opt);
    const auto& r = find_report(reports, "perp.is-subquasimodule");
    CHECK(r.status == Status::Fail);
    REQUIRE(r.witness);
    CHECK(replay(r));
    for (const auto& x : reports)
        if (x.status == Status::Fail) {
            CAPTURE(x.id);
            CHECK(replay(x));
        }
}

TEST_CASE("probe clauses run when asked for") {
    VerifyOptions opt;
    opt.only = {"splitting.converse"};
    const auto reports = check_all(make("fig5", {"1", "1"}), opt);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].status == Status::Fail);
    CHECK(replay(reports[0]));
}

TEST_CASE("subset family scope") {
    const auto small = subset_family(make("n5", {"1", "a"}), {});
    CHECK(small.sets.size() == 1024);
    CHECK(small.scope.rfind("exhaustive", 0) == 0);
    const auto big = subset_family(make("n5", {"1", "1"}), {});
    CHECK(big.scope.rfind("exhaustive", 0) != 0);
    const auto again = subset_family(make("n5", {"1", "1"}), {});
    CHECK(big.sets == again.sets);
}

TEST_CASE("verification is deterministic for a fixed seed") {
    const auto qm = make("n5", {"1", "1"});
    const auto a = check_all(qm);
    const auto b = check_all(qm);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].status == b[i].status);
        CHECK(a[i].scope == b[i].scope);
    }
}

TEST_CASE("perp closure homomorphism") {
    const auto r = check_homomorphism(make("n5", {"1", "a"}));
    CHECK(r.status != Status::Error);
    CHECK(r.status != Status::Fail);
    try {
        check_homomorphism(make("m3", {"1"}));
        FAIL("expected NotZeroDistributive");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotZeroDistributive);
    }
}

TEST_CASE("worked examples") {
    CHECK(example_instances() == std::vector<std::string>{"ex2", "m3", "ex1", "fig5", "n5-power"});
    for (const char* name : {"ex2", "m3", "fig5", "n5-power"}) {
        CAPTURE(name);
        const auto reports = reproduce_example(name);
        CHECK_FALSE(reports.empty());
        for (const auto& r : reports) {
            CAPTURE(r.id);
            CAPTURE(r.detail);
            CHECK(r.status == Status::Pass);
        }
    }
    try {
        reproduce_example("nope");
        FAIL("expected UnknownInstance");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownInstance);
    }
}

TEST_CASE("worked example failures replay") {
    for (const auto& r : reproduce_example("ex1"))
        if (r.status == Status::Fail) {
            CAPTURE(r.id);
            REQUIRE(r.witness);
            CHECK(replay(r));
        }
}

TEST_CASE("lattice enumeration counts") {
    const std::size_t expected[] = {1, 1, 1, 2, 5, 15};
    for (std::size_t n = 1; n <= 6; ++n) {
        CAPTURE(n);
        const auto ls = enumerate_lattices(n);
        CHECK(ls.size() == expected[n - 1]);
        for (const auto& l : ls) CHECK(l.size() == n);
    }
}

TEST_CASE("random lattices are seeded") {
    std::uint64_t s1 = 7, s2 = 7;
    const auto a = random_lattice(6, s1);
    const auto b = random_lattice(6, s2);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);
    CHECK(s1 == s2);
    CHECK(a->size() == 6);
}

TEST_CASE("search finds a perp-closure violation once 0-distributivity is dropped") {
    SearchConfig cfg;
    cfg.max_lattice_size = 5;
    cfg.drop_hypotheses = {"0-distributive"};
    cfg.targets = {"perp.is-subquasimodule"};
    const auto found = counterexample_search(cfg);
    REQUIRE(found.size() == 1);
    CHECK(found[0].status == Status::Fail);
    CHECK(replay(found[0]));
    const auto spec = parse_qm_spec(found[0].instance);
    CHECK_FALSE(CanonicalQM(spec.lattice, spec.factors).factors_0_distributive());
}

TEST_CASE("search rejects unknown names") {
    SearchConfig cfg;
    cfg.drop_hypotheses = {"commutative"};
    CHECK_THROWS_AS(counterexample_search(cfg), Error);
    cfg.drop_hypotheses.clear();
    cfg.targets = {"no.such-clause"};
    CHECK_THROWS_AS(counterexample_search(cfg), Error);
}
