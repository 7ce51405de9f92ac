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

TEST_CASE("carrier is enumerated row-major, first factor most significant") {
    const auto qm = make("n5", {"1", "a"});
    REQUIRE(qm.size() == 10);
    CHECK(qm.format(0) == "(0,0)");
    CHECK(qm.format(1) == "(0,a)");
    CHECK(qm.format(2) == "(a,0)");
    CHECK(qm.format(9) == "(1,a)");
    CHECK(qm.zero() == 0);
    for (VecId v = 0; v < qm.size(); ++v) CHECK(qm.index_of(qm.vector(v)) == v);
}

TEST_CASE("zero position is computed, not assumed") {
    const auto qm = make("chain_3", {"1"});
    CHECK(qm.format(qm.zero()) == "(0)");
    CHECK(qm.size() == 3);
}

TEST_CASE("vector operations are componentwise") {
    const auto qm = make("n5", {"1", "1"});
    const auto x = qm.parse_vector("(a,b)");
    const auto y = qm.parse_vector("(b,c)");
    CHECK(qm.format(qm.add(x, y)) == "(1,1)");
    CHECK(qm.format(qm.smul(qm.lattice().at("c"), y)) == "(0,c)");
    CHECK(qm.inner_product(x, y) == qm.lattice().bottom());
    CHECK(qm.orthogonal(x, y));
    CHECK_FALSE(qm.orthogonal(x, x));
    CHECK(qm.lattice().name(qm.inner_product(qm.parse_vector("(a,c)"), qm.parse_vector("(c,a)"))) == "a");
}

TEST_CASE("invalid vectors and factors") {
    const auto qm = make("n5", {"1", "a"});
    CHECK_THROWS_AS(qm.parse_vector("(0,b)"), Error);
    try {
        qm.parse_vector("(0,b)");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInCarrier);
    }
    try {
        qm.parse_vector("(0,zz)");
    } catch (const Error& e) {
        CHECK(e.code() != Errc::Internal);
    }
    const auto L = builtin("boolean_6");
    std::vector<Ideal> big(4, Ideal::principal(L, L.top()));
    try {
        CanonicalQM too_big(L, big);
        FAIL("expected CarrierTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CarrierTooLarge);
    }
    try {
        CanonicalQM none(L, {});
        FAIL("expected InvalidArgument");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidArgument);
    }
}

TEST_CASE("canonical constructions satisfy the quasimodule axioms") {
    for (const char* name : {"n5", "m3", "fig5", "chain_3", "boolean_2"}) {
        CAPTURE(name);
        for (const auto& qm : oracle::principal_instances(builtin(name), 2, 64)) {
            const auto rep = verify_axioms(qm);
            CHECK(rep.all_passed());
            CHECK(rep.scope == "exhaustive");
        }
    }
}

TEST_CASE("axiom checker detects broken tables") {
    auto raw = to_raw(make("chain_3", {"1"}));
    std::swap(raw.add[1 * raw.size + 2], raw.add[2 * raw.size + 1]);
    raw.add[1 * raw.size + 2] = 1;
    const auto rep = verify_axioms(raw);
    CHECK_FALSE(rep.all_passed());
    bool some_witness = false;
    for (const auto& a : rep.axioms)
        if (!a.passed) some_witness = some_witness || !a.witness.empty();
    CHECK(some_witness);
}

TEST_CASE("standard basis") {
    const auto qm = make("n5", {"1", "a"});
    const auto b = standard_basis(qm);
    REQUIRE(b.size() == 2);
    CHECK(qm.format(b[0]) == "(1,0)");
    CHECK(qm.format(b[1]) == "(0,a)");

    const auto L = builtin("n5");
    Bitset s(L.size(), {L.at("0"), L.at("a")});
    CanonicalQM q1(L, {Ideal(L, s)});
    CHECK(standard_basis(q1).size() == 1);
}

TEST_CASE("projection and product") {
    const auto qm = make("n5", {"1", "a"});
    const auto s = qm.parse_set("(a,0) (b,a)");
    const auto p0 = project(qm, s, 0);
    CHECK(qm.lattice().format_set(p0) == "{a,b}");
    std::vector<Bitset> parts{p0, project(qm, s, 1)};
    CHECK(product(qm, parts).count() == 4);
    const auto local = elements_to_factor_set(qm, 1, project(qm, s, 1));
    CHECK(factor_set_to_elements(qm, 1, local) == project(qm, s, 1));
}

TEST_CASE("quasimodule spec files") {
    const auto spec = load_qm_spec(QMLAT_DATA_DIR "/ex1.qm");
    CHECK(spec.lattice == builtin("n5"));
    REQUIRE(spec.factors.size() == 2);
    CanonicalQM qm(spec.lattice, spec.factors);
    CHECK(qm.size() == 10);

    const auto text = qm_spec_to_text(qm);
    const auto again = parse_qm_spec(text);
    CHECK(again.lattice == spec.lattice);
    CHECK(again.factors == spec.factors);

    CHECK_THROWS_AS(parse_qm_spec("lattice: builtin n5\nfactor: set a\n"), Error);
    try {
        parse_qm_spec("lattice: builtin n5\nfactor: set a\n");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FactorNotIdeal);
    }
    try {
        parse_qm_spec("lattice: builtin n5\nfactor principal 1\n");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ParseError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}
