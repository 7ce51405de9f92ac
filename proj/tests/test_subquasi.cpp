#include "oracles.hpp"

#include "qmlat/error.hpp"
#include "qmlat/io.hpp"

#include <doctest.h>

using namespace qmlat;

namespace {

CanonicalQM make(const char* lattice, std::initializer_list<const char*> gens) {
    auto L = builtin(lattice);
    std::vector<Ideal> f;
    for (auto g : gens) f.push_back(Ideal::principal(L, L.at(g)));
    return CanonicalQM(L, f);
}

} // namespace

TEST_CASE("generate") {
    const auto qm = make("n5", {"1", "a"});
    CHECK(generate(qm, qm.empty_set()) == qm.zero_set());
    CHECK(qm.format_set(generate(qm, qm.parse_set("(a,0)"))) == "{(0,0),(a,0)}");
    const auto g = generate(qm, qm.parse_set("(b,0) (0,a)"));
    CHECK(g.count() == 4);
    CHECK(generate(qm, qm.full_set()) == qm.full_set());
    const auto base = generate(qm, qm.parse_set("(a,0)"));
    CHECK(generate_over(qm, base, qm.parse_set("(0,a)")) == generate(qm, qm.parse_set("(a,0) (0,a)")));
}

TEST_CASE("subquasimodule violations name the first failure") {
    const auto qm = make("m3", {"1"});
    auto v = subquasimodule_violation(qm, qm.parse_set("(a)"));
    REQUIRE(v);
    CHECK(v->kind == ClosureViolation::Kind::MissingZero);
    v = subquasimodule_violation(qm, qm.parse_set("(0) (a) (b)"));
    REQUIRE(v);
    CHECK(v->kind == ClosureViolation::Kind::Add);
    CHECK(qm.format(v->result) == "(1)");
    CHECK_FALSE(v->describe(qm).empty());
    CHECK(is_subquasimodule(qm, qm.parse_set("(0) (a)")));
}

TEST_CASE("L(Q) equals the brute-force subset filter") {
    for (const char* name : {"n5", "m3", "fig5", "chain_3", "chain_4", "boolean_2", "boolean_3"}) {
        CAPTURE(name);
        for (const auto& qm : oracle::principal_instances(builtin(name), 2, 16)) {
            CAPTURE(qm_spec_to_text(qm));
            const auto subs = all_subquasimodules(qm);
            CHECK(subs.nodes() == oracle::subquasimodules_by_filter(qm));
        }
    }
}

TEST_CASE("generate equals the intersection of containing subquasimodules") {
    for (const char* name : {"n5", "m3", "fig5"}) {
        CAPTURE(name);
        for (const auto& qm : oracle::principal_instances(builtin(name), 2, 16)) {
            const auto all = oracle::subquasimodules_by_filter(qm);
            oracle::for_small_subsets(qm.size(), 3, [&](const Bitset& a) {
                CHECK(generate(qm, a) == oracle::generated_by_intersection(qm, all, a));
            });
        }
    }
}

TEST_CASE("L(Q) is a lattice under intersection and generated join") {
    const auto qm = make("n5", {"1", "a"});
    const auto subs = all_subquasimodules(qm);
    CHECK(subs.node(subs.bottom()) == qm.zero_set());
    CHECK(subs.node(subs.top()) == qm.full_set());
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = 0; j < subs.size(); ++j) {
            CHECK(subs.node(subs.meet(i, j)) == (subs.node(i) & subs.node(j)));
            CHECK(subs.node(subs.join(i, j)) == generate(qm, subs.node(i) | subs.node(j)));
        }
    const auto L = subs.to_lattice();
    CHECK(L.size() == subs.size());
    CHECK_FALSE(check_lattice_laws(L).has_value());
}

TEST_CASE("enumeration budget") {
    const auto qm = make("boolean_3", {"1", "1"});
    try {
        all_subquasimodules(qm, 10);
        FAIL("expected EnumerationBudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EnumerationBudgetExceeded);
    }
}

TEST_CASE("bases are minimal generating sets") {
    const auto qm = make("n5", {"1", "a"});
    const auto bases = find_bases(qm, qm.full_set(), 3);
    REQUIRE_FALSE(bases.empty());
    for (const auto& b : bases) {
        Bitset s(qm.size());
        for (auto v : b.members) s.set(v);
        CHECK(is_basis(qm, qm.full_set(), s));
        CHECK(b.orthogonal == is_orthogonal_set(qm, s));
    }
    CHECK(is_basis(qm, qm.full_set(), qm.parse_set("(0,a) (1,0)")));
    CHECK_FALSE(is_basis(qm, qm.full_set(), qm.parse_set("(0,a) (1,0) (b,0)")));
    CHECK_FALSE(is_generating(qm, qm.full_set(), qm.parse_set("(0,a) (c,0)")));

    // Brute force: every minimal generating set of size <= 2 is listed.
    std::size_t brute = 0;
    oracle::for_small_subsets(qm.size(), 2, [&](const Bitset& a) {
        if (is_basis(qm, qm.full_set(), a)) ++brute;
    });
    std::size_t listed = 0;
    for (const auto& b : bases) listed += b.members.size() <= 2;
    CHECK(listed == brute);
}
