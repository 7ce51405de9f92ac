#include "qmlat/qmlat.h"

#include "qmlat/error.hpp"
#include "qmlat/io.hpp"
#include "qmlat/render.hpp"

#include <cstdlib>
#include <cstring>
#include <future>
#include <new>

struct qmlat_lattice {
    qmlat::Lattice lattice;
};

struct qmlat_qm {
    qmlat::CanonicalQM qm;
};

namespace {

thread_local std::string last_error;

qmlat_status to_status(qmlat::Errc e) {
    using qmlat::Errc;
    switch (e) {
    case Errc::ParseError: return QMLAT_PARSE_ERROR;
    case Errc::InvalidArgument: return QMLAT_INVALID_ARGUMENT;
    case Errc::NotAPoset: return QMLAT_NOT_A_POSET;
    case Errc::NotALattice: return QMLAT_NOT_A_LATTICE;
    case Errc::NotBounded: return QMLAT_NOT_BOUNDED;
    case Errc::IndexOutOfRange: return QMLAT_INDEX_OUT_OF_RANGE;
    case Errc::UnknownBuiltin: return QMLAT_UNKNOWN_BUILTIN;
    case Errc::FactorNotIdeal: return QMLAT_FACTOR_NOT_IDEAL;
    case Errc::FactorNotPrincipal: return QMLAT_FACTOR_NOT_PRINCIPAL;
    case Errc::CarrierTooLarge: return QMLAT_CARRIER_TOO_LARGE;
    case Errc::NotInCarrier: return QMLAT_NOT_IN_CARRIER;
    case Errc::EnumerationBudgetExceeded: return QMLAT_ENUMERATION_BUDGET_EXCEEDED;
    case Errc::NotZeroDistributive: return QMLAT_NOT_ZERO_DISTRIBUTIVE;
    case Errc::NotClosedInput: return QMLAT_NOT_CLOSED_INPUT;
    case Errc::NotClosed: return QMLAT_NOT_CLOSED;
    case Errc::FactorizationFailed: return QMLAT_FACTORIZATION_FAILED;
    case Errc::UnknownInstance: return QMLAT_UNKNOWN_INSTANCE;
    case Errc::Io: return QMLAT_IO_ERROR;
    case Errc::Internal: return QMLAT_INTERNAL_ERROR;
    }
    return QMLAT_INTERNAL_ERROR;
}

template <class F>
qmlat_status guard(F&& f) {
    try {
        f();
        last_error.clear();
        return QMLAT_OK;
    } catch (const qmlat::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return QMLAT_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        last_error = e.what();
        return QMLAT_INTERNAL_ERROR;
    }
}

void require(const void* p, const char* what) {
    if (!p) qmlat::fail(qmlat::Errc::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qmlat::RunOptions convert(const qmlat_run_options* o) {
    qmlat::RunOptions r;
    if (!o) return r;
    r.budget = o->budget;
    r.max_basis_size = o->max_basis_size;
    r.closed_only = o->closed_only != 0;
    r.seed = o->seed;
    r.timing = o->timing != 0;
    if (o->config) r.config = o->config;
    return r;
}

qmlat::Format convert(qmlat_format f) {
    if (f == QMLAT_FORMAT_TABLE) return qmlat::Format::Table;
    if (f == QMLAT_FORMAT_STRUCTURED) return qmlat::Format::Structured;
    qmlat::fail(qmlat::Errc::InvalidArgument, "unknown output format");
}

std::vector<std::string> split_list(const char* s) {
    std::vector<std::string> out;
    if (!s) return out;
    std::string cur;
    for (const char* p = s;; ++p) {
        if (*p == ',' || *p == '\0') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
            if (!*p) break;
        } else if (*p != ' ') {
            cur += *p;
        }
    }
    return out;
}

} // namespace

extern "C" {

const char* qmlat_version(void) { return "1.0.0"; }

const char* qmlat_status_name(qmlat_status status) {
    switch (status) {
    case QMLAT_OK: return "Ok";
    case QMLAT_PARSE_ERROR: return "ParseError";
    case QMLAT_INVALID_ARGUMENT: return "InvalidArgument";
    case QMLAT_NOT_A_POSET: return "NotAPoset";
    case QMLAT_NOT_A_LATTICE: return "NotALattice";
    case QMLAT_NOT_BOUNDED: return "NotBounded";
    case QMLAT_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case QMLAT_UNKNOWN_BUILTIN: return "UnknownBuiltin";
    case QMLAT_FACTOR_NOT_IDEAL: return "FactorNotIdeal";
    case QMLAT_FACTOR_NOT_PRINCIPAL: return "FactorNotPrincipal";
    case QMLAT_CARRIER_TOO_LARGE: return "CarrierTooLarge";
    case QMLAT_NOT_IN_CARRIER: return "NotInCarrier";
    case QMLAT_ENUMERATION_BUDGET_EXCEEDED: return "EnumerationBudgetExceeded";
    case QMLAT_NOT_ZERO_DISTRIBUTIVE: return "NotZeroDistributive";
    case QMLAT_NOT_CLOSED_INPUT: return "NotClosedInput";
    case QMLAT_NOT_CLOSED: return "NotClosed";
    case QMLAT_FACTORIZATION_FAILED: return "FactorizationFailed";
    case QMLAT_UNKNOWN_INSTANCE: return "UnknownInstance";
    case QMLAT_IO_ERROR: return "Io";
    case QMLAT_INTERNAL_ERROR: return "Internal";
    case QMLAT_STATUS_MAX_ENUM: break;
    }
    return "Unknown";
}

const char* qmlat_last_error(void) { return last_error.c_str(); }

void qmlat_free_string(char* s) { std::free(s); }

void qmlat_run_options_init(qmlat_run_options* o) {
    if (!o) return;
    o->budget = qmlat::kDefaultEnumerationBudget;
    o->max_basis_size = 3;
    o->closed_only = 0;
    o->seed = 1;
    o->timing = 0;
    o->config = nullptr;
}

void qmlat_search_config_init(qmlat_search_config* c) {
    if (!c) return;
    const qmlat::SearchConfig d;
    c->max_lattice_size = d.max_lattice_size;
    c->max_factor_count = d.max_factor_count;
    c->max_carrier = d.max_carrier;
    c->seed = d.seed;
    c->drop = nullptr;
    c->targets = nullptr;
}

qmlat_status qmlat_lattice_builtin(const char* name, qmlat_lattice** out) {
    return guard([&] {
        require(name, "name");
        require(out, "out");
        *out = new qmlat_lattice{qmlat::builtin(name)};
    });
}

qmlat_status qmlat_lattice_parse(const char* text, qmlat_lattice** out) {
    return guard([&] {
        require(text, "text");
        require(out, "out");
        *out = new qmlat_lattice{qmlat::parse_lattice(text)};
    });
}

qmlat_status qmlat_lattice_load(const char* path, qmlat_lattice** out) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = new qmlat_lattice{qmlat::load_lattice(path)};
    });
}

void qmlat_lattice_free(qmlat_lattice* lattice) { delete lattice; }

size_t qmlat_lattice_size(const qmlat_lattice* lattice) { return lattice ? lattice->lattice.size() : 0; }

qmlat_status qmlat_lattice_label(const qmlat_lattice* lattice, size_t index, const char** out) {
    return guard([&] {
        require(lattice, "lattice");
        require(out, "out");
        if (index >= lattice->lattice.size()) qmlat::fail(qmlat::Errc::IndexOutOfRange, "element index out of range");
        *out = lattice->lattice.name(static_cast<qmlat::Elem>(index)).c_str();
    });
}

qmlat_status qmlat_lattice_find(const qmlat_lattice* lattice, const char* label, size_t* out) {
    return guard([&] {
        require(lattice, "lattice");
        require(label, "label");
        require(out, "out");
        *out = lattice->lattice.at(label);
    });
}

qmlat_status qmlat_lattice_meet_join(const qmlat_lattice* lattice, size_t x, size_t y, size_t* meet, size_t* join) {
    return guard([&] {
        require(lattice, "lattice");
        if (x > UINT32_MAX || y > UINT32_MAX) qmlat::fail(qmlat::Errc::IndexOutOfRange, "element index out of range");
        auto [m, j] = lattice->lattice.meet_join(static_cast<qmlat::Elem>(x), static_cast<qmlat::Elem>(y));
        if (meet) *meet = m;
        if (join) *join = j;
    });
}

qmlat_status qmlat_lattice_is_0_distributive(const qmlat_lattice* lattice, int* out) {
    return guard([&] {
        require(lattice, "lattice");
        require(out, "out");
        *out = qmlat::check_0_distributive(lattice->lattice).holds ? 1 : 0;
    });
}

qmlat_status qmlat_lattice_report(const qmlat_lattice* lattice, qmlat_format format, const qmlat_run_options* options,
                                  char** out) {
    return guard([&] {
        require(lattice, "lattice");
        require(out, "out");
        *out = dup(qmlat::render_lattice_check(lattice->lattice, convert(format), convert(options)));
    });
}

qmlat_status qmlat_lattice_to_dot(const qmlat_lattice* lattice, const qmlat_run_options* options, char** out) {
    return guard([&] {
        require(lattice, "lattice");
        require(out, "out");
        *out = dup(qmlat::render_dot(lattice->lattice, convert(options)));
    });
}

qmlat_status qmlat_qm_load(const char* path, qmlat_qm** out) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        auto spec = qmlat::load_qm_spec(path);
        *out = new qmlat_qm{qmlat::CanonicalQM(std::move(spec.lattice), std::move(spec.factors))};
    });
}

qmlat_status qmlat_qm_parse(const char* text, const char* base_dir, qmlat_qm** out) {
    return guard([&] {
        require(text, "text");
        require(out, "out");
        auto spec = qmlat::parse_qm_spec(text, base_dir ? base_dir : ".");
        *out = new qmlat_qm{qmlat::CanonicalQM(std::move(spec.lattice), std::move(spec.factors))};
    });
}

void qmlat_qm_free(qmlat_qm* qm) { delete qm; }

size_t qmlat_qm_carrier_size(const qmlat_qm* qm) { return qm ? qm->qm.size() : 0; }

qmlat_status qmlat_qm_run(const qmlat_qm* qm, const char* action, qmlat_format format,
                          const qmlat_run_options* options, char** out, int* failed) {
    return guard([&] {
        require(qm, "qm");
        require(action, "action");
        require(out, "out");
        bool f = false;
        *out = dup(qmlat::render_qm_action(qm->qm, action, convert(format), convert(options), &f));
        if (failed) *failed = f ? 1 : 0;
    });
}

qmlat_status qmlat_qm_export_dot(const qmlat_qm* qm, const char* which, const qmlat_run_options* options, char** out) {
    return guard([&] {
        require(qm, "qm");
        require(which, "which");
        require(out, "out");
        *out = dup(qmlat::render_dot(qm->qm, which, convert(options)));
    });
}

qmlat_status qmlat_verify_instance(const char* name, qmlat_format format, const qmlat_run_options* options, char** out,
                                   int* failed) {
    return guard([&] {
        require(name, "name");
        require(out, "out");
        const auto fmt = convert(format);
        std::vector<std::string> names;
        if (std::string_view(name) == "all") names = qmlat::example_instances();
        else names.push_back(name);
        // Independent instances run concurrently; reports keep instance order.
        std::vector<std::future<std::vector<qmlat::TheoremReport>>> jobs;
        for (const auto& n : names)
            jobs.push_back(std::async(std::launch::async, [n] { return qmlat::reproduce_example(n); }));
        std::vector<qmlat::TheoremReport> reports;
        for (auto& j : jobs)
            for (auto& r : j.get()) reports.push_back(std::move(r));
        bool f = false;
        for (const auto& r : reports) f = f || r.status == qmlat::Status::Fail || r.status == qmlat::Status::Error;
        *out = dup(qmlat::render_reports(reports, fmt, convert(options), "reproduce"));
        if (failed) *failed = f ? 1 : 0;
    });
}

qmlat_status qmlat_verify_search(const qmlat_search_config* config, qmlat_format format,
                                 const qmlat_run_options* options, char** out, size_t* found) {
    return guard([&] {
        require(config, "config");
        require(out, "out");
        const auto fmt = convert(format);
        qmlat::SearchConfig c;
        c.max_lattice_size = config->max_lattice_size;
        c.max_factor_count = config->max_factor_count;
        c.max_carrier = config->max_carrier;
        c.seed = config->seed;
        c.drop_hypotheses = split_list(config->drop);
        c.targets = split_list(config->targets);
        auto reports = qmlat::counterexample_search(c);
        *out = dup(qmlat::render_reports(reports, fmt, convert(options), "search"));
        if (found) *found = reports.size();
    });
}

} // extern "C"
