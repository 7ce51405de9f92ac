#include "qmlat/qmlat.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct Failure {
    qmlat_status status;
};

void check(qmlat_status s) {
    if (s != QMLAT_OK) throw Failure{s};
}

// Owns a char* produced by the library.
struct Text {
    char* p = nullptr;
    ~Text() { qmlat_free_string(p); }
};

struct LatticeHandle {
    qmlat_lattice* p = nullptr;
    ~LatticeHandle() { qmlat_lattice_free(p); }
};

struct QmHandle {
    qmlat_qm* p = nullptr;
    ~QmHandle() { qmlat_qm_free(p); }
};

qmlat_format parse_format(const std::string& f) { return f == "structured" ? QMLAT_FORMAT_STRUCTURED : QMLAT_FORMAT_TABLE; }

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
    return out;
}

int emit(const char* text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::fputs(text, stdout);
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: Io: cannot write '" << path << "'\n";
        return kExitInput;
    }
    out << text;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite lattices, canonical quasimodules and their orthogonality lattices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qmlat_version());

    std::string format = "table";
    std::size_t budget = 200000;
    std::uint64_t seed = 1;
    bool timing = false;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "structured"}));
    };

    // lattice check FILE
    auto* lattice_cmd = app.add_subcommand("lattice", "Lattice commands");
    lattice_cmd->require_subcommand(1);
    auto* lattice_check = lattice_cmd->add_subcommand("check", "Validate a lattice file and report its laws");
    std::string lattice_file;
    lattice_check->add_option("FILE", lattice_file, "Lattice file")->required();
    add_format(lattice_check);

    // qm ACTION FILE
    auto* qm_cmd = app.add_subcommand("qm", "Quasimodule computations");
    std::string action, qm_file;
    std::size_t max_basis = 3;
    bool closed_only = false;
    qm_cmd->add_option("ACTION", action, "subs | closed | splitting | perp-table | bases | verify")
        ->required()
        ->check(CLI::IsMember({"subs", "closed", "splitting", "perp-table", "bases", "verify"}));
    qm_cmd->add_option("FILE", qm_file, "Quasimodule spec file")->required();
    qm_cmd->add_option("--max-basis-size", max_basis, "Largest basis size searched")->check(CLI::PositiveNumber);
    qm_cmd->add_option("--budget", budget, "Enumeration budget")->check(CLI::PositiveNumber);
    qm_cmd->add_option("--seed", seed, "Seed for sampled quantifiers");
    qm_cmd->add_flag("--closed-only", closed_only, "perp-table: restrict to closed subquasimodules");
    qm_cmd->add_flag("--timing", timing, "verify: include timings");
    add_format(qm_cmd);

    // export dot FILE --which ...
    auto* export_cmd = app.add_subcommand("export", "Export diagrams");
    export_cmd->require_subcommand(1);
    auto* dot_cmd = export_cmd->add_subcommand("dot", "Hasse diagram in DOT");
    std::string dot_file, which, out_path;
    dot_cmd->add_option("FILE", dot_file, "Lattice or quasimodule spec file")->required();
    dot_cmd->add_option("--which", which, "lattice | subs | closed")
        ->required()
        ->check(CLI::IsMember({"lattice", "subs", "closed"}));
    dot_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");
    dot_cmd->add_option("--budget", budget, "Enumeration budget")->check(CLI::PositiveNumber);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Reproduce worked examples or search for counterexamples");
    std::string instance;
    bool search = false;
    std::size_t max_size = 5, max_factors = 2, max_carrier = 36;
    std::vector<std::string> drop, targets;
    auto* inst_opt = verify_cmd->add_option("--instance", instance, "ex2 | m3 | ex1 | fig5 | n5-power | all");
    auto* search_opt = verify_cmd->add_flag("--search", search, "Counterexample search");
    verify_cmd->add_option("--max-size", max_size, "Largest lattice size searched")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-factors", max_factors, "Most factors per quasimodule")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-carrier", max_carrier, "Largest carrier searched")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", seed, "Search seed");
    verify_cmd->add_option("--drop", drop, "Hypothesis to drop (0-distributive, principal-factors)")
        ->check(CLI::IsMember({"0-distributive", "principal-factors"}));
    verify_cmd->add_option("--target", targets, "Clause id to hunt");
    verify_cmd->add_flag("--timing", timing, "Include timings");
    add_format(verify_cmd);
    inst_opt->excludes(search_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    qmlat_run_options opts;
    qmlat_run_options_init(&opts);
    opts.budget = budget;
    opts.max_basis_size = max_basis;
    opts.closed_only = closed_only ? 1 : 0;
    opts.seed = seed;
    opts.timing = timing ? 1 : 0;
    const qmlat_format fmt = parse_format(format);
    std::string config;

    try {
        if (lattice_check->parsed()) {
            config = "lattice check " + lattice_file + " format=" + format;
            opts.config = config.c_str();
            LatticeHandle l;
            check(qmlat_lattice_load(lattice_file.c_str(), &l.p));
            Text t;
            check(qmlat_lattice_report(l.p, fmt, &opts, &t.p));
            return emit(t.p, "");
        }
        if (qm_cmd->parsed()) {
            config = "qm " + action + " " + qm_file + " budget=" + std::to_string(budget) +
                     " max-basis-size=" + std::to_string(max_basis) + " seed=" + std::to_string(seed) +
                     " closed-only=" + (closed_only ? "yes" : "no") + " format=" + format;
            opts.config = config.c_str();
            QmHandle q;
            check(qmlat_qm_load(qm_file.c_str(), &q.p));
            Text t;
            int failed = 0;
            check(qmlat_qm_run(q.p, action.c_str(), fmt, &opts, &t.p, &failed));
            emit(t.p, "");
            return failed ? kExitFailed : kExitOk;
        }
        if (dot_cmd->parsed()) {
            config = "export dot " + dot_file + " which=" + which + " budget=" + std::to_string(budget);
            opts.config = config.c_str();
            Text t;
            if (which == "lattice") {
                LatticeHandle l;
                if (qmlat_lattice_load(dot_file.c_str(), &l.p) == QMLAT_OK) {
                    check(qmlat_lattice_to_dot(l.p, &opts, &t.p));
                    return emit(t.p, out_path);
                }
            }
            QmHandle q;
            check(qmlat_qm_load(dot_file.c_str(), &q.p));
            check(qmlat_qm_export_dot(q.p, which.c_str(), &opts, &t.p));
            return emit(t.p, out_path);
        }
        if (verify_cmd->parsed()) {
            Text t;
            if (!search) {
                if (instance.empty()) instance = "all";
                config = "verify instance=" + instance + " format=" + format;
                opts.config = config.c_str();
                int failed = 0;
                check(qmlat_verify_instance(instance.c_str(), fmt, &opts, &t.p, &failed));
                emit(t.p, "");
                return failed ? kExitFailed : kExitOk;
            }
            config = "verify search max-size=" + std::to_string(max_size) + " max-factors=" + std::to_string(max_factors) +
                     " max-carrier=" + std::to_string(max_carrier) + " seed=" + std::to_string(seed) +
                     " drop=" + (drop.empty() ? "none" : join(drop)) + " target=" + (targets.empty() ? "auto" : join(targets)) +
                     " format=" + format;
            opts.config = config.c_str();
            qmlat_search_config sc;
            qmlat_search_config_init(&sc);
            sc.max_lattice_size = max_size;
            sc.max_factor_count = max_factors;
            sc.max_carrier = max_carrier;
            sc.seed = seed;
            const std::string drop_list = join(drop), target_list = join(targets);
            sc.drop = drop_list.c_str();
            sc.targets = target_list.c_str();
            std::size_t found = 0;
            check(qmlat_verify_search(&sc, fmt, &opts, &t.p, &found));
            emit(t.p, "");
            // A violation with every hypothesis in force refutes a theorem clause.
            return (found > 0 && drop.empty() && targets.empty()) ? kExitFailed : kExitOk;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << qmlat_status_name(f.status) << ": " << qmlat_last_error() << "\n";
        if (f.status == QMLAT_ENUMERATION_BUDGET_EXCEEDED) std::cerr << "hint: raise --budget or use a smaller instance\n";
        return kExitInput;
    }
    return kExitInput;
}
