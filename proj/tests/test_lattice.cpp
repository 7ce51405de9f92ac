#include "qmlat/error.hpp"
#include "qmlat/io.hpp"
#include "qmlat/lattice.hpp"

#include <doctest.h>

#include <string>

using namespace qmlat;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::Internal;
}

std::string message_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("builtin lattices have the expected shape") {
    const auto n5 = builtin("n5");
    CHECK(n5.size() == 5);
    CHECK(n5.covers().size() == 5);
    CHECK(n5.name(n5.bottom()) == "0");
    CHECK(n5.name(n5.top()) == "1");
    CHECK(n5.meet(n5.at("a"), n5.at("b")) == n5.bottom());
    CHECK(n5.join(n5.at("a"), n5.at("b")) == n5.top());
    CHECK(n5.join(n5.at("a"), n5.at("c")) == n5.at("c"));

    CHECK(builtin("m3").covers().size() == 6);
    CHECK(builtin("fig5").size() == 6);
    CHECK(builtin("chain_4").size() == 4);
    CHECK(builtin("chain_1").size() == 1);
    CHECK(builtin("boolean_3").size() == 8);
    CHECK(builtin("boolean_3").covers().size() == 12);

    CHECK(code_of([] { builtin("pentagon"); }) == Errc::UnknownBuiltin);
    CHECK(code_of([] { builtin("chain_0"); }) == Errc::UnknownBuiltin);
    CHECK(code_of([] { builtin("boolean_7"); }) == Errc::UnknownBuiltin);
}

TEST_CASE("meet and join tables satisfy the lattice laws") {
    for (const char* name : {"n5", "m3", "fig5", "chain_5", "boolean_3"}) {
        CAPTURE(name);
        const auto L = builtin(name);
        CHECK_FALSE(check_lattice_laws(L).has_value());
        for (Elem x = 0; x < L.size(); ++x)
            for (Elem y = 0; y < L.size(); ++y) {
                CHECK(L.leq(L.meet(x, y), x));
                CHECK(L.leq(y, L.join(x, y)));
                CHECK(L.leq(x, y) == (L.meet(x, y) == x));
            }
    }
}

TEST_CASE("law checks return the first witness") {
    const auto n5 = builtin("n5");
    CHECK(check_0_distributive(n5).holds);
    CHECK_FALSE(check_modular(n5).holds);
    CHECK_FALSE(check_distributive(n5).holds);

    const auto m3 = builtin("m3");
    const auto zd = check_0_distributive(m3);
    REQUIRE_FALSE(zd.holds);
    REQUIRE(zd.witness);
    CHECK(*zd.witness == Triple{m3.at("a"), m3.at("b"), m3.at("c")});
    CHECK(check_modular(m3).holds);
    CHECK_FALSE(check_distributive(m3).holds);

    const auto fig5 = builtin("fig5");
    CHECK(check_0_distributive(fig5).holds);
    CHECK_FALSE(check_modular(fig5).holds);

    for (const char* name : {"chain_1", "chain_2", "chain_6", "boolean_2", "boolean_4"}) {
        CAPTURE(name);
        const auto L = builtin(name);
        CHECK(check_0_distributive(L).holds);
        CHECK(check_modular(L).holds);
        CHECK(check_distributive(L).holds);
    }
}

TEST_CASE("0-distributivity restricted to an ideal") {
    const auto m3 = builtin("m3");
    CHECK(check_0_distributive(m3, m3.down_set(m3.at("a"))).holds);
    CHECK_FALSE(check_0_distributive(m3, m3.down_set(m3.top())).holds);
}

TEST_CASE("build rejects non-lattices") {
    const std::vector<std::string> names{"0", "a", "1"};
    std::vector<Lattice::LabelPair> cycle{{"0", "a"}, {"a", "0"}, {"a", "1"}};
    CHECK(code_of([&] { Lattice::build(names, std::span<const Lattice::LabelPair>(cycle)); }) == Errc::NotAPoset);

    std::vector<Lattice::LabelPair> two_tops{{"0", "a"}, {"0", "1"}};
    CHECK(code_of([&] { Lattice::build(names, std::span<const Lattice::LabelPair>(two_tops)); }) ==
          Errc::NotBounded);

    CHECK(code_of([] { load_lattice(QMLAT_DATA_DIR "/not_lattice.lat"); }) == Errc::NotALattice);
    const auto msg = message_of([] { load_lattice(QMLAT_DATA_DIR "/not_lattice.lat"); });
    CHECK(msg.find("(a, b)") != std::string::npos);
}

TEST_CASE("parse errors carry the line number") {
    CHECK(code_of([] { load_lattice(QMLAT_DATA_DIR "/bad_syntax.lat"); }) == Errc::ParseError);
    CHECK(message_of([] { load_lattice(QMLAT_DATA_DIR "/bad_syntax.lat"); }).find("line 3") != std::string::npos);
    CHECK(code_of([] { parse_lattice("elements: 0 1\n0 <= 2\n"); }) == Errc::ParseError);
    CHECK(code_of([] { parse_lattice("0 <= 1\n"); }) == Errc::ParseError);
    CHECK(code_of([] { load_lattice(QMLAT_DATA_DIR "/missing.lat"); }) == Errc::Io);
}

TEST_CASE("lattice text round trip") {
    for (const char* name : {"n5", "m3", "fig5", "chain_3", "boolean_3"}) {
        CAPTURE(name);
        const auto L = builtin(name);
        CHECK(parse_lattice(lattice_to_text(L)) == L);
    }
    CHECK(load_lattice(QMLAT_DATA_DIR "/n5.lat") == builtin("n5"));
    CHECK(load_lattice(QMLAT_DATA_DIR "/m3.lat") == builtin("m3"));
    CHECK(load_lattice(QMLAT_DATA_DIR "/fig5.lat") == builtin("fig5"));
}

TEST_CASE("ideals") {
    const auto n5 = builtin("n5");
    const auto ideals = all_ideals(n5);
    CHECK(ideals.size() == 5);
    for (const auto& i : ideals) {
        CHECK(is_ideal(n5, i.members()));
        REQUIRE(i.generator(n5));
        CHECK(n5.down_set(*i.generator(n5)) == i.members());
    }
    CHECK_FALSE(is_ideal(n5, Bitset(5, {n5.at("a")})));
    CHECK_FALSE(is_ideal(n5, Bitset(5, {n5.at("0"), n5.at("a"), n5.at("b")})));
    CHECK(code_of([&] { Ideal(n5, Bitset(5, {n5.at("a")})); }) == Errc::FactorNotIdeal);
}

TEST_CASE("boolean shape detection") {
    auto b3 = boolean_shape(builtin("boolean_3"));
    REQUIRE(b3);
    CHECK(b3->rank == 3);
    CHECK(boolean_shape(builtin("chain_2"))->rank == 1);
    CHECK_FALSE(boolean_shape(builtin("n5")));
    CHECK_FALSE(boolean_shape(builtin("m3")));
    CHECK_FALSE(boolean_shape(builtin("chain_3")));
}

TEST_CASE("induced sublattices") {
    const auto n5 = builtin("n5");
    Bitset keep = n5.all();
    keep.reset(n5.at("c"));
    auto sub = induced_lattice(n5, keep);
    REQUIRE(sub);
    CHECK(sub->size() == 4);
    CHECK(boolean_shape(*sub)->rank == 2);
}
