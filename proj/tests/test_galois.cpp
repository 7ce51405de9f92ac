#include "oracles.hpp"

#include "qmlat/error.hpp"
#include "qmlat/galois.hpp"

#include <doctest.h>

using namespace qmlat;

namespace {

CanonicalQM make(const char* lattice, std::initializer_list<const char*> gens) {
    auto L = builtin(lattice);
    std::vector<Ideal> f;
    for (auto g : gens) f.push_back(Ideal::principal(L, L.at(g)));
    return CanonicalQM(L, f);
}

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::Internal;
}

} // namespace

TEST_CASE("perp of N5 over itself") {
    const auto qm = make("n5", {"1"});
    CHECK(perp(qm, qm.empty_set()) == qm.full_set());
    CHECK(perp(qm, qm.full_set()) == qm.zero_set());
    CHECK(qm.format_set(perp(qm, qm.parse_set("a"))) == "{(0),(b)}");
    CHECK(qm.format_set(perp(qm, qm.parse_set("c"))) == "{(0),(b)}");
    CHECK(qm.format_set(perp(qm, qm.parse_set("b"))) == "{(0),(a),(c)}");
    CHECK(qm.format_set(perp(qm, qm.parse_set("1"))) == "{(0)}");

    const auto closed = closed_subquasimodules(qm);
    CHECK(closed.base.size() == 4);
    REQUIRE(boolean_shape(closed.base.to_lattice()));
}

TEST_CASE("perp matches the brute-force definition") {
    const auto qm = make("fig5", {"1", "c"});
    oracle::for_small_subsets(qm.size(), 2, [&](const Bitset& a) { CHECK(perp(qm, a) == oracle::brute_perp(qm, a)); });
}

TEST_CASE("double perp is extensive and idempotent") {
    const auto qm = make("n5", {"1", "a"});
    oracle::for_small_subsets(qm.size(), 2, [&](const Bitset& a) {
        const auto pp = double_perp(qm, a);
        CHECK(pp.is_subquasimodule());
        CHECK(a.is_subset_of(pp.set));
        CHECK(double_perp(qm, pp.set).set == pp.set);
        CHECK(perp(qm, pp.set) == perp(qm, a));
    });
}

TEST_CASE("double perp reports the closure failure without 0-distributivity") {
    const auto qm = make("m3", {"1"});
    const auto pp = double_perp(qm, qm.parse_set("(b) (c)"));
    CHECK(qm.format_set(pp.set) == "{(0),(b),(c)}");
    CHECK_FALSE(pp.is_subquasimodule());
}

TEST_CASE("closed family equals the closed filter of L(Q)") {
    for (const char* name : {"n5", "fig5", "chain_3", "boolean_2", "boolean_3"}) {
        CAPTURE(name);
        for (const auto& qm : oracle::principal_instances(builtin(name), 2, 64)) {
            const auto closed = closed_subquasimodules(qm);
            const auto subs = all_subquasimodules(qm);
            CHECK(closed.base.nodes() == oracle::closed_filter(qm, subs.nodes()));
            for (std::size_t i = 0; i < closed.base.size(); ++i) {
                const auto j = closed.perp_map[i];
                CHECK(closed.base.node(j) == perp(qm, closed.base.node(i)));
                CHECK(closed.perp_map[j] == i);
            }
        }
    }
}

TEST_CASE("closed family requires 0-distributive factors") {
    const auto qm = make("m3", {"1"});
    CHECK(code_of([&] { closed_subquasimodules(qm); }) == Errc::NotZeroDistributive);
    CHECK(code_of([&] { require_0_distributive_factors(qm); }) == Errc::NotZeroDistributive);
    // A 0-distributive factor inside a non-0-distributive lattice is fine.
    CHECK_NOTHROW(closed_subquasimodules(make("m3", {"a", "b"})));
}

TEST_CASE("closed join") {
    const auto qm = make("n5", {"1", "a"});
    const auto closed = closed_subquasimodules(qm);
    for (const auto& p : closed.base.nodes())
        for (const auto& r : closed.base.nodes()) {
            const auto j = closed_join(qm, p, r);
            CHECK(closed.base.find(j).has_value());
            CHECK(j == oracle::brute_perp(qm, oracle::brute_perp(qm, p | r)));
        }
    CHECK(code_of([&] { closed_join(qm, qm.parse_set("(0,0) (a,0)"), qm.zero_set()); }) == Errc::NotClosedInput);
}

TEST_CASE("splitting") {
    const auto ex1 = make("n5", {"1", "a"});
    CHECK(splitting_subquasimodules(ex1) == closed_subquasimodules(ex1).base.nodes());

    const auto fig5 = make("fig5", {"1", "1"});
    const auto P = product(fig5, std::vector<Bitset>{fig5.lattice().down_set(fig5.lattice().at("b")),
                                                     fig5.lattice().down_set(fig5.lattice().at("c"))});
    CHECK(is_closed(fig5, P));
    CHECK_FALSE(is_splitting(fig5, P));
    CHECK_FALSE(sum_set(fig5, P, perp(fig5, P)).test(fig5.parse_vector("(1,1)")));

    for (const auto& s : splitting_subquasimodules(fig5)) CHECK(is_closed(fig5, s));
}

TEST_CASE("factorization of closed subquasimodules") {
    const auto qm = make("fig5", {"1", "c"});
    const auto closed = closed_subquasimodules(qm);
    for (const auto& p : closed.base.nodes()) {
        const auto w = factorize_closed(qm, p);
        REQUIRE(w.parts.size() == 2);
        CHECK(product(qm, w.parts) == p);
    }
    CHECK(code_of([&] { factorize_closed(qm, qm.parse_set("(0,0) (a,0)")); }) == Errc::NotClosed);
    CHECK(code_of([&] { factorize_closed(make("m3", {"1"}), make("m3", {"1"}).zero_set()); }) ==
          Errc::NotZeroDistributive);
}

TEST_CASE("closed lattice of a product is the product of closed lattices") {
    for (int n = 1; n <= 2; ++n) {
        const auto qm = n == 1 ? make("n5", {"1"}) : make("n5", {"1", "1"});
        const auto iso = closed_lattice_iso(qm);
        CHECK(iso.verified());
        CHECK(iso.closed.base.size() == (n == 1 ? 4u : 16u));
        const auto shape = boolean_shape(iso.closed.base.to_lattice());
        REQUIRE(shape);
        CHECK(shape->rank == static_cast<std::size_t>(2 * n));
    }
    CHECK(closed_lattice_iso(make("fig5", {"1", "c"})).verified());
}
