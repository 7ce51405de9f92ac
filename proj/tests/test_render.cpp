#include "qmlat/error.hpp"
#include "qmlat/io.hpp"
#include "qmlat/render.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <sstream>

using namespace qmlat;

namespace {

CanonicalQM load(const char* file) {
    const auto spec = load_qm_spec(std::string(QMLAT_DATA_DIR) + "/" + file);
    return CanonicalQM(spec.lattice, spec.factors);
}

std::size_t count_of(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

std::vector<nlohmann::json> records(const std::string& out) {
    std::vector<nlohmann::json> rs;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) rs.push_back(nlohmann::json::parse(line));
    return rs;
}

} // namespace

TEST_CASE("lattice check output") {
    RunOptions opt;
    const auto out = render_lattice_check(builtin("m3"), Format::Table, opt);
    CHECK(out.find("valid lattice: 5 elements, 6 covers") != std::string::npos);
    CHECK(out.find("0-distributive: no, witness (a,b,c)") != std::string::npos);
    CHECK(out.find("summary: 0-distributive: no, modular: yes, distributive: no") != std::string::npos);
}

TEST_CASE("config is echoed as the first line") {
    RunOptions opt;
    opt.config = "qm subs ex1.qm";
    const auto out = render_qm_action(load("ex1.qm"), "subs", Format::Table, opt);
    CHECK(out.rfind("# qm subs ex1.qm\n", 0) == 0);
    const auto dot = render_dot(builtin("n5"), opt);
    CHECK(dot.rfind("// qm subs ex1.qm\n", 0) == 0);
}

TEST_CASE("subs listing") {
    const auto out = render_qm_action(load("trivial.qm"), "subs", Format::Table, {});
    CHECK(out == "P1 = {(0)}\n1 subquasimodules\n");
    const auto ex1 = render_qm_action(load("ex1.qm"), "subs", Format::Table, {});
    CHECK(ex1.find("21 subquasimodules") != std::string::npos);
    CHECK(ex1.find("P1  = {(0,0)}") != std::string::npos);
}

TEST_CASE("perp table rows") {
    RunOptions opt;
    opt.closed_only = true;
    const auto out = render_qm_action(load("ex1.qm"), "perp-table", Format::Table, opt);
    CHECK(out.find("P^⊥⊥") != std::string::npos);
    CHECK(count_of(out, "P^⊥ ") >= 1);
}

TEST_CASE("dot export") {
    const auto qm = load("ex1.qm");
    const auto closed = render_dot(qm, "closed", {});
    CHECK(count_of(closed, "[label=") == 8);
    CHECK(count_of(closed, " -> ") == 12);
    CHECK(closed.find("digraph \"L_C(Q)\"") != std::string::npos);

    const auto lat = render_dot(builtin("n5"), {});
    CHECK(count_of(lat, "[label=") == 5);
    CHECK(count_of(lat, " -> ") == 5);

    const auto triv = render_dot(load("trivial.qm"), "subs", {});
    CHECK(count_of(triv, "[label=") == 1);
    CHECK(count_of(triv, " -> ") == 0);

    CHECK_THROWS_AS(render_dot(qm, "nodes", {}), Error);
}

TEST_CASE("structured output is JSON lines with header and summary") {
    RunOptions opt;
    opt.config = "qm closed ex1.qm";
    const auto rs = records(render_qm_action(load("ex1.qm"), "closed", Format::Structured, opt));
    REQUIRE(rs.size() == 10);
    CHECK(rs.front()["record"] == "header");
    CHECK(rs.front()["schema"] == "qmlat/1");
    CHECK(rs.front()["kind"] == "closed");
    CHECK(rs.front()["config"] == "qm closed ex1.qm");
    CHECK(rs.back()["record"] == "summary");
    CHECK(rs.back()["count"] == 8);
    CHECK(rs[1]["members"] == nlohmann::json::array({"(0,0)"}));
}

TEST_CASE("structured verify output") {
    bool failed = true;
    const auto out = render_qm_action(load("m3.qm"), "verify", Format::Structured, {}, &failed);
    CHECK_FALSE(failed);
    const auto rs = records(out);
    REQUIRE(rs.size() >= 3);
    CHECK(rs.back()["fail"] == 0);
    CHECK(rs.back()["hypothesis-not-met"].get<int>() > 0);
    bool has_witness = false;
    for (const auto& r : rs)
        if (r["record"] == "report" && r["id"] == "perp.is-subquasimodule") {
            CHECK(r["status"] == "hypothesis-not-met");
            has_witness = !r["witness"].is_null();
            CHECK_FALSE(r.contains("millis"));
        }
    CHECK(has_witness);
}

TEST_CASE("output is byte-stable without timing") {
    const auto qm = load("ex1.qm");
    CHECK(render_qm_action(qm, "verify", Format::Table, {}) == render_qm_action(qm, "verify", Format::Table, {}));
}

TEST_CASE("unknown action") {
    try {
        render_qm_action(load("ex1.qm"), "explode", Format::Table, {});
        FAIL("expected InvalidArgument");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidArgument);
    }
}
