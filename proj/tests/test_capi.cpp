// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmlat/qmlat.h"

#include <string>

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    qmlat_free_string(s);
    return out;
}

} // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(qmlat_version()) == "1.0.0");
    CHECK(std::string(qmlat_status_name(QMLAT_OK)) == "Ok");
    CHECK(std::string(qmlat_status_name(QMLAT_NOT_ZERO_DISTRIBUTIVE)) == "NotZeroDistributive");
}

TEST_CASE("lattice handles") {
    qmlat_lattice* l = nullptr;
    REQUIRE(qmlat_lattice_builtin("n5", &l) == QMLAT_OK);
    CHECK(qmlat_lattice_size(l) == 5);
    size_t a = 0, b = 0, m = 0, j = 0;
    REQUIRE(qmlat_lattice_find(l, "a", &a) == QMLAT_OK);
    REQUIRE(qmlat_lattice_find(l, "b", &b) == QMLAT_OK);
    REQUIRE(qmlat_lattice_meet_join(l, a, b, &m, &j) == QMLAT_OK);
    const char* label = nullptr;
    REQUIRE(qmlat_lattice_label(l, m, &label) == QMLAT_OK);
    CHECK(std::string(label) == "0");
    REQUIRE(qmlat_lattice_label(l, j, &label) == QMLAT_OK);
    CHECK(std::string(label) == "1");
    int zd = 0;
    REQUIRE(qmlat_lattice_is_0_distributive(l, &zd) == QMLAT_OK);
    CHECK(zd == 1);

    CHECK(qmlat_lattice_meet_join(l, 9, 0, &m, &j) == QMLAT_INDEX_OUT_OF_RANGE);
    CHECK(std::string(qmlat_last_error()).find("range") != std::string::npos);
    CHECK(qmlat_lattice_label(l, 5, &label) == QMLAT_INDEX_OUT_OF_RANGE);
    CHECK(qmlat_lattice_find(l, "zz", &a) == QMLAT_INVALID_ARGUMENT);

    char* dot = nullptr;
    REQUIRE(qmlat_lattice_to_dot(l, nullptr, &dot) == QMLAT_OK);
    CHECK(take(dot).find("digraph") != std::string::npos);
    CHECK(std::string(qmlat_last_error()).empty());
    qmlat_lattice_free(l);
}

TEST_CASE("lattice errors map to status codes") {
    qmlat_lattice* l = nullptr;
    CHECK(qmlat_lattice_builtin("nope", &l) == QMLAT_UNKNOWN_BUILTIN);
    CHECK(l == nullptr);
    CHECK(qmlat_lattice_parse("elements: 0 a 1\n0 <= a\na => 1\n", &l) == QMLAT_PARSE_ERROR);
    CHECK(std::string(qmlat_last_error()).find("line 3") != std::string::npos);
    CHECK(qmlat_lattice_load(QMLAT_DATA_DIR "/not_lattice.lat", &l) == QMLAT_NOT_A_LATTICE);
    CHECK(qmlat_lattice_load(QMLAT_DATA_DIR "/absent.lat", &l) == QMLAT_IO_ERROR);
    CHECK(qmlat_lattice_builtin(nullptr, &l) == QMLAT_INVALID_ARGUMENT);
    CHECK(qmlat_lattice_size(nullptr) == 0);
}

TEST_CASE("lattice report") {
    qmlat_lattice* l = nullptr;
    REQUIRE(qmlat_lattice_load(QMLAT_DATA_DIR "/m3.lat", &l) == QMLAT_OK);
    char* out = nullptr;
    qmlat_run_options opt;
    qmlat_run_options_init(&opt);
    REQUIRE(qmlat_lattice_report(l, QMLAT_FORMAT_TABLE, &opt, &out) == QMLAT_OK);
    CHECK(take(out).find("witness (a,b,c)") != std::string::npos);
    CHECK(qmlat_lattice_report(l, static_cast<qmlat_format>(7), &opt, &out) == QMLAT_INVALID_ARGUMENT);
    qmlat_lattice_free(l);
}

TEST_CASE("quasimodule handles") {
    qmlat_qm* qm = nullptr;
    REQUIRE(qmlat_qm_load(QMLAT_DATA_DIR "/ex1.qm", &qm) == QMLAT_OK);
    CHECK(qmlat_qm_carrier_size(qm) == 10);
    qmlat_run_options opt;
    qmlat_run_options_init(&opt);
    char* out = nullptr;
    int failed = -1;
    REQUIRE(qmlat_qm_run(qm, "closed", QMLAT_FORMAT_TABLE, &opt, &out, &failed) == QMLAT_OK);
    CHECK(take(out).find("8 closed subquasimodules") != std::string::npos);
    CHECK(failed == 0);
    REQUIRE(qmlat_qm_run(qm, "verify", QMLAT_FORMAT_STRUCTURED, &opt, &out, &failed) == QMLAT_OK);
    CHECK(take(out).find("\"fail\":0") != std::string::npos);
    CHECK(failed == 0);
    CHECK(qmlat_qm_run(qm, "nope", QMLAT_FORMAT_TABLE, &opt, &out, &failed) == QMLAT_INVALID_ARGUMENT);
    REQUIRE(qmlat_qm_export_dot(qm, "closed", &opt, &out) == QMLAT_OK);
    CHECK(take(out).find("L_C(Q)") != std::string::npos);
    qmlat_qm_free(qm);

    REQUIRE(qmlat_qm_load(QMLAT_DATA_DIR "/m3.qm", &qm) == QMLAT_OK);
    CHECK(qmlat_qm_run(qm, "closed", QMLAT_FORMAT_TABLE, &opt, &out, &failed) == QMLAT_NOT_ZERO_DISTRIBUTIVE);
    qmlat_qm_free(qm);

    CHECK(qmlat_qm_parse("lattice: builtin n5\nfactor: set a\n", nullptr, &qm) == QMLAT_FACTOR_NOT_IDEAL);
    REQUIRE(qmlat_qm_parse("lattice: builtin boolean_3\nfactor: principal 1\nfactor: principal 1\n", nullptr, &qm) ==
            QMLAT_OK);
    opt.budget = 5;
    CHECK(qmlat_qm_run(qm, "subs", QMLAT_FORMAT_TABLE, &opt, &out, &failed) == QMLAT_ENUMERATION_BUDGET_EXCEEDED);
    qmlat_qm_free(qm);
}

TEST_CASE("worked example verification") {
    qmlat_run_options opt;
    qmlat_run_options_init(&opt);
    char* out = nullptr;
    int failed = -1;
    REQUIRE(qmlat_verify_instance("m3", QMLAT_FORMAT_TABLE, &opt, &out, &failed) == QMLAT_OK);
    CHECK(take(out).find(" 0 fail") != std::string::npos);
    CHECK(failed == 0);
    CHECK(qmlat_verify_instance("ex9", QMLAT_FORMAT_TABLE, &opt, &out, &failed) == QMLAT_UNKNOWN_INSTANCE);

    // Concurrent run over every instance matches the sequential concatenation.
    REQUIRE(qmlat_verify_instance("all", QMLAT_FORMAT_STRUCTURED, &opt, &out, &failed) == QMLAT_OK);
    const auto all = take(out);
    REQUIRE(qmlat_verify_instance("all", QMLAT_FORMAT_STRUCTURED, &opt, &out, &failed) == QMLAT_OK);
    CHECK(take(out) == all);
}

TEST_CASE("search") {
    qmlat_search_config cfg;
    qmlat_search_config_init(&cfg);
    cfg.drop = "0-distributive";
    cfg.targets = "perp.is-subquasimodule";
    qmlat_run_options opt;
    qmlat_run_options_init(&opt);
    char* out = nullptr;
    size_t found = 0;
    REQUIRE(qmlat_verify_search(&cfg, QMLAT_FORMAT_TABLE, &opt, &out, &found) == QMLAT_OK);
    CHECK(found == 1);
    CHECK(take(out).find("perp.is-subquasimodule") != std::string::npos);
    cfg.drop = "bogus";
    CHECK(qmlat_verify_search(&cfg, QMLAT_FORMAT_TABLE, &opt, &out, &found) == QMLAT_INVALID_ARGUMENT);
}
