#include "qmlat/error.hpp"
#include "qmlat/galois.hpp"
#include "qmlat/io.hpp"
#include "qmlat/verify.hpp"

#include <algorithm>
#include <chrono>

namespace qmlat {

namespace {

using Clock = std::chrono::steady_clock;

CanonicalQM make_qm(const std::string& lattice, const std::vector<std::string>& generators) {
    Lattice L = builtin(lattice);
    std::vector<Ideal> factors;
    for (const auto& g : generators) factors.push_back(Ideal::principal(L, L.at(g)));
    return CanonicalQM(L, factors);
}

class Recorder {
public:
    Recorder(std::string prefix, const CanonicalQM& qm) : prefix_(std::move(prefix)), instance_(qm_spec_to_text(qm)) {}

    /// Starts a check; subsequent expect() calls attach to it.
    void begin(std::string id, std::string statement) {
        flush();
        current_ = TheoremReport{};
        current_.id = prefix_ + "." + id;
        current_.statement = std::move(statement);
        current_.instance = instance_;
        current_.scope = "exact";
        start_ = Clock::now();
        open_ = true;
    }

    void expect(bool ok, const std::string& what, std::vector<NamedSet> sets = {}) {
        if (ok || current_.status == Status::Fail) return;
        current_.status = Status::Fail;
        current_.witness = Witness{std::move(sets), what, true};
    }

    void note(std::string detail) { current_.detail = std::move(detail); }

    std::vector<TheoremReport> finish() {
        flush();
        return std::move(out_);
    }

private:
    void flush() {
        if (!open_) return;
        current_.millis = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
        out_.push_back(std::move(current_));
        open_ = false;
    }

    std::string prefix_;
    std::string instance_;
    TheoremReport current_;
    Clock::time_point start_;
    bool open_ = false;
    std::vector<TheoremReport> out_;
};

std::string diff(const CanonicalQM& qm, const Bitset& got, const Bitset& want) {
    return "got " + qm.format_set(got) + ", expected " + qm.format_set(want);
}

// ---- N5 as a lattice ------------------------------------------------------

std::vector<TheoremReport> ex2() {
    const auto qm = make_qm("n5", {"1"});
    const Lattice& L = qm.lattice();
    Recorder r("ex2", qm);

    r.begin("lattice", "N5 from its covers {0<a, 0<b, a<c, c<1, b<1} has a∧b = 0 and a∨b = 1");
    const std::vector<Lattice::LabelPair> covers{{"0", "a"}, {"0", "b"}, {"a", "c"}, {"c", "1"}, {"b", "1"}};
    const Lattice rebuilt = Lattice::build({"0", "a", "b", "c", "1"}, std::span<const Lattice::LabelPair>(covers));
    r.expect(rebuilt == L, "covers do not rebuild the builtin n5");
    const auto [m, j] = L.meet_join(L.at("a"), L.at("b"));
    r.expect(m == L.at("0") && j == L.at("1"), "a∧b = " + L.name(m) + ", a∨b = " + L.name(j));

    r.begin("0-distributive", "N5 is 0-distributive");
    auto zd = check_0_distributive(L);
    r.expect(zd.holds, "0-distributivity fails");

    r.begin("non-modular", "N5 is not modular");
    auto mod = check_modular(L);
    r.expect(!mod.holds, "N5 reported modular");
    if (mod.witness)
        r.note("modular law witness (" + L.name(mod.witness->x) + "," + L.name(mod.witness->y) + "," +
               L.name(mod.witness->z) + ")");
    return r.finish();
}

// ---- M3 x [0,a] -----------------------------------------------------------

std::vector<TheoremReport> m3() {
    const auto qm = make_qm("m3", {"1", "a"});
    const Lattice& L = qm.lattice();
    Recorder r("m3", qm);
    const Elem a = L.at("a"), b = L.at("b"), c = L.at("c");

    r.begin("not-0-distributive", "M3 fails 0-distributivity with a∧c = b∧c = 0 and (a∨b)∧c = c");
    auto zd = check_0_distributive(L);
    r.expect(!zd.holds && zd.witness.has_value(), "M3 reported 0-distributive");
    if (zd.witness) {
        const auto w = *zd.witness;
        r.expect(w.x == a && w.y == b && w.z == c, "witness (" + L.name(w.x) + "," + L.name(w.y) + "," +
                                                       L.name(w.z) + "), expected (a,b,c)");
        r.expect(L.meet(a, c) == L.bottom() && L.meet(b, c) == L.bottom() && L.meet(L.join(a, b), c) == c,
                 "meet pattern differs");
        r.note("witness (a,b,c): a∧c = b∧c = 0, (a∨b)∧c = c");
    }

    r.begin("perp-not-subquasimodule", "for P = [0,a]×[0,a], P^⊥ is not closed under +: (b,0)+(c,0) = (1,0)");
    const Bitset P = qm.parse_set("(0,0) (0,a) (a,0) (a,a)");
    r.expect(is_subquasimodule(qm, P), "P is not a subquasimodule", {{"P", P}});
    const Bitset pp = perp(qm, P);
    const Bitset want = qm.parse_set("(0,0) (b,0) (c,0)");
    r.expect(pp == want, "P^⊥: " + diff(qm, pp, want), {{"P", P}});
    auto v = subquasimodule_violation(qm, pp);
    const VecId b0 = qm.parse_vector("(b,0)"), c0 = qm.parse_vector("(c,0)"), one0 = qm.parse_vector("(1,0)");
    r.expect(v && v->kind == ClosureViolation::Kind::Add && v->x == b0 && v->y == c0 && v->result == one0,
             v ? "violation: " + v->describe(qm) : "P^⊥ is a subquasimodule", {{"P", P}});
    r.expect(!qm.orthogonal(one0, qm.parse_vector("(a,0)")), "(1,0) ⊥ (a,0)");
    if (v) r.note(v->describe(qm));

    r.begin("orthogonal-basis", "B = {(0,a),(a,0),(b,0)} is an orthogonal basis with the three displayed pair spans");
    const Bitset B = qm.parse_set("(0,a) (a,0) (b,0)");
    r.expect(is_basis(qm, qm.full_set(), B), "B is not a basis", {{"B", B}});
    r.expect(is_orthogonal_set(qm, B), "B is not orthogonal", {{"B", B}});
    const std::vector<std::pair<std::string, std::string>> spans{
        {"(0,a) (a,0)", "(0,0) (0,a) (a,0) (a,a)"},
        {"(0,a) (b,0)", "(0,0) (0,a) (b,0) (b,a)"},
        {"(a,0) (b,0)", "(0,0) (a,0) (b,0) (c,0) (1,0)"},
    };
    for (const auto& [gens, span] : spans) {
        const Bitset g = qm.parse_set(gens);
        const Bitset got = generate(qm, g);
        const Bitset exp = qm.parse_set(span);
        r.expect(got == exp && exp != qm.full_set(), "⟨" + qm.format_set(g) + "⟩: " + diff(qm, got, exp), {{"S", g}});
    }

    r.begin("harness-hypothesis", "the harness reports the perp-subquasimodule clause as hypothesis-not-met");
    VerifyOptions opt;
    opt.only = {"perp.is-subquasimodule"};
    auto reports = check_all(qm, opt);
    const bool ok = reports.size() == 1 && reports[0].status == Status::HypothesisNotMet && reports[0].witness;
    r.expect(ok, "clause status " + (reports.empty() ? std::string("missing") : std::string(status_name(reports[0].status))));
    if (ok) r.note(reports[0].witness->note);
    return r.finish();
}

// ---- N5 x [0,a] -----------------------------------------------------------

const char* const kEx1Subs[] = {
    "(0,0)",
    "(0,0),(0,a)",
    "(0,0),(a,0)",
    "(0,0),(a,a)",
    "(0,0),(b,0)",
    "(0,0),(0,a),(a,a)",
    "(0,0),(a,0),(a,a)",
    "(0,0),(a,0),(c,0)",
    "(0,0),(a,a),(c,a)",
    "(0,0),(0,a),(a,0),(a,a)",
    "(0,0),(0,a),(a,a),(c,a)",
    "(0,0),(0,a),(b,0),(b,a)",
    "(0,0),(0,a),(a,0),(a,a),(c,a)",
    "(0,0),(a,0),(a,a),(c,0),(c,a)",
    "(0,0),(a,0),(b,0),(c,0),(1,0)",
    "(0,0),(a,a),(b,0),(c,a),(1,a)",
    "(0,0),(0,a),(a,0),(a,a),(c,0),(c,a)",
    "(0,0),(0,a),(a,a),(b,0),(b,a),(c,a),(1,a)",
    "(0,0),(a,0),(a,a),(b,0),(c,0),(c,a),(1,0),(1,a)",
    "(0,0),(0,a),(a,0),(a,a),(b,0),(b,a),(c,0),(c,a),(1,0),(1,a)",
};
// 1-based P indices.
const int kEx1Perp[] = {20, 15, 12, 5, 17, 5, 5, 12, 5, 5, 5, 8, 5, 5, 2, 1, 5, 1, 1, 1};
const int kEx1DoublePerp[] = {1, 2, 8, 17, 5, 17, 17, 8, 17, 17, 17, 12, 17, 17, 15, 20, 17, 20, 20, 20};
const int kEx1Closed[] = {1, 2, 5, 8, 12, 15, 17, 20};
const int kEx1ClosedPerp[] = {20, 15, 17, 12, 8, 2, 5, 1};

std::vector<TheoremReport> ex1() {
    const auto qm = make_qm("n5", {"1", "a"});
    Recorder r("ex1", qm);

    r.begin("n5-perps", "in N5 over itself 0^⊥ = N5, a^⊥ = c^⊥ = {0,b}, b^⊥ = {0,a,c}, 1^⊥ = {0}; L_C(N5) is 2^2");
    {
        const auto n5 = make_qm("n5", {"1"});
        const std::pair<const char*, const char*> rows[] = {
            {"0", "0 a b c 1"}, {"a", "0 b"}, {"b", "0 a c"}, {"c", "0 b"}, {"1", "0"}};
        for (const auto& [x, want] : rows) {
            const Bitset got = perp(n5, n5.parse_set(x));
            r.expect(got == n5.parse_set(want), std::string(x) + "^⊥: " + diff(n5, got, n5.parse_set(want)));
        }
        const auto closed = closed_subquasimodules(n5);
        std::vector<Bitset> want{n5.parse_set("0"), n5.parse_set("0 b"), n5.parse_set("0 a c"),
                                 n5.parse_set("0 a b c 1")};
        r.expect(closed.base.nodes() == want, "L_C(N5) differs");
        auto shape = boolean_shape(closed.base.to_lattice());
        r.expect(shape && shape->rank == 2, "L_C(N5) is not the four-element Boolean algebra");
    }

    const auto subs = all_subquasimodules(qm);
    std::vector<Bitset> printed;
    for (const char* s : kEx1Subs) printed.push_back(qm.parse_set(s));
    auto P = [&](int k) { return printed[static_cast<std::size_t>(k - 1)]; };
    auto printed_name = [&](const Bitset& s) -> std::string {
        for (std::size_t i = 0; i < printed.size(); ++i)
            if (printed[i] == s) return "P" + std::to_string(i + 1);
        return qm.format_set(s);
    };

    r.begin("printed-subquasimodules", "each printed P1..P20 is a subquasimodule and a member of L(Q)");
    for (std::size_t i = 0; i < printed.size(); ++i) {
        const std::string name = "P" + std::to_string(i + 1);
        r.expect(is_subquasimodule(qm, printed[i]) && subs.find(printed[i]).has_value(),
                 name + " = " + qm.format_set(printed[i]) + " is not in L(Q)", {{name, printed[i]}});
    }

    r.begin("subquasimodule-count", "L(Q) consists of exactly the 20 printed sets");
    {
        std::vector<NamedSet> extra;
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (std::find(printed.begin(), printed.end(), subs.node(i)) == printed.end())
                extra.push_back({subs.name(i), subs.node(i)});
        std::string what = "|L(Q)| = " + std::to_string(subs.size()) + "; not in the printed list:";
        for (const auto& e : extra) {
            const bool sub = is_subquasimodule(qm, e.set);
            what += " " + qm.format_set(e.set) + (sub ? " (closed under + and every scalar)" : " (not closed)");
        }
        r.expect(subs.size() == 20 && extra.empty(), what, extra);
    }

    r.begin("perp-table", "the P / P^⊥ / P^⊥⊥ rows match both printed tables");
    for (std::size_t i = 0; i < printed.size(); ++i) {
        const std::string name = "P" + std::to_string(i + 1);
        const Bitset p = perp(qm, printed[i]);
        const Bitset pp = perp(qm, p);
        r.expect(p == P(kEx1Perp[i]),
                 name + "^⊥ = " + printed_name(p) + ", expected P" + std::to_string(kEx1Perp[i]), {{name, printed[i]}});
        r.expect(pp == P(kEx1DoublePerp[i]),
                 name + "^⊥⊥ = " + printed_name(pp) + ", expected P" + std::to_string(kEx1DoublePerp[i]),
                 {{name, printed[i]}});
    }

    r.begin("closed", "L_C(Q) = {P1,P2,P5,P8,P12,P15,P17,P20} with the printed restricted table");
    const auto closed = closed_subquasimodules(qm);
    r.expect(closed.base.size() == 8, "|L_C(Q)| = " + std::to_string(closed.base.size()));
    for (std::size_t k = 0; k < 8 && k < closed.base.size(); ++k) {
        const Bitset want = P(kEx1Closed[k]);
        r.expect(closed.base.node(k) == want, "closed member " + std::to_string(k + 1) + ": " +
                                                  diff(qm, closed.base.node(k), want));
        r.expect(closed.base.node(closed.perp_map[k]) == P(kEx1ClosedPerp[k]),
                 "restricted ^⊥ of P" + std::to_string(kEx1Closed[k]) + " differs");
        r.expect(is_closed(qm, closed.base.node(k)), "restricted ^⊥⊥ is not the identity");
    }

    r.begin("boolean", "L_C(Q) is order-isomorphic to 2^3");
    {
        auto shape = boolean_shape(closed.base.to_lattice());
        r.expect(shape && shape->rank == 3, "L_C(Q) is not Boolean of rank 3");
        auto iso = closed_lattice_iso(qm);
        r.expect(iso.verified(), "product map onto L_C(N5) × L_C([0,a]) is not an isomorphism");
    }

    r.begin("bases", "{(0,a),(1,0)} and {(0,a),(b,0),(c,0)} are orthogonal bases of Q");
    for (const char* b : {"(0,a) (1,0)", "(0,a) (b,0) (c,0)"}) {
        const Bitset B = qm.parse_set(b);
        r.expect(is_basis(qm, qm.full_set(), B) && is_orthogonal_set(qm, B),
                 qm.format_set(B) + " is not an orthogonal basis", {{"B", B}});
        bool listed = false;
        for (const auto& found : find_bases(qm, qm.full_set(), 3)) {
            Bitset s(qm.size());
            for (auto m : found.members) s.set(m);
            listed = listed || (s == B && found.orthogonal);
        }
        r.expect(listed, "basis search misses " + qm.format_set(B), {{"B", B}});
    }

    r.begin("basis-spans", "the printed spans of the basis subsets");
    {
        const std::pair<const char*, int> spans[] = {
            {"(0,a) (1,0)", 20}, {"(0,a)", 2},        {"(1,0)", 15},       {"(0,a) (b,0) (c,0)", 20},
            {"(0,a) (b,0)", 12}, {"(0,a) (c,0)", 8}, {"(b,0) (c,0)", 15},
        };
        std::string mismatches;
        std::vector<NamedSet> sets;
        for (const auto& [gens, k] : spans) {
            const Bitset g = qm.parse_set(gens);
            const Bitset got = generate(qm, g);
            if (got != P(k)) {
                mismatches += (mismatches.empty() ? "" : "; ") + std::string("⟨") + qm.format_set(g) + "⟩ printed as P" +
                              std::to_string(k) + " = " + qm.format_set(P(k)) + ", computed " + printed_name(got) + " = " +
                              qm.format_set(got);
                sets.push_back({"S", g});
            }
        }
        r.expect(mismatches.empty(), mismatches, sets);
    }

    r.begin("splitting", "L_S(Q) = L_C(Q)");
    r.expect(splitting_subquasimodules(qm) == closed.base.nodes(), "splitting family differs from L_C(Q)");
    return r.finish();
}

// ---- the six-element lattice, squared ------------------------------------

std::vector<TheoremReport> fig5() {
    const auto qm = make_qm("fig5", {"1", "1"});
    const Lattice& L = qm.lattice();
    Recorder r("fig5", qm);

    r.begin("lattice", "the six-element lattice is 0-distributive and not modular");
    r.expect(L.size() == 6, "lattice size " + std::to_string(L.size()));
    r.expect(check_0_distributive(L).holds, "not 0-distributive");
    r.expect(!check_modular(L).holds, "modular");

    r.begin("closed-not-splitting", "P = [0,b]×[0,c] is closed but (1,1) ∉ P + P^⊥");
    Bitset P = qm.empty_set();
    L.down_set(L.at("b")).for_each([&](std::size_t x) {
        L.down_set(L.at("c")).for_each([&](std::size_t y) {
            P.set(qm.index_of(std::vector<Elem>{static_cast<Elem>(x), static_cast<Elem>(y)}));
        });
    });
    Bitset Pp = qm.empty_set();
    L.down_set(L.at("c")).for_each([&](std::size_t x) {
        L.down_set(L.at("b")).for_each([&](std::size_t y) {
            Pp.set(qm.index_of(std::vector<Elem>{static_cast<Elem>(x), static_cast<Elem>(y)}));
        });
    });
    const auto single = make_qm("fig5", {"1"});
    for (const char* g : {"b", "c"}) {
        const Bitset d = elements_to_factor_set(single, 0, L.down_set(L.at(g)));
        r.expect(is_subquasimodule(single, d) && is_closed(single, d),
                 std::string("[0,") + g + "] is not closed in the one-factor quasimodule");
    }
    r.expect(is_subquasimodule(qm, P), "P is not a subquasimodule", {{"P", P}});
    r.expect(is_closed(qm, P), "P is not closed", {{"P", P}});
    const Bitset got = perp(qm, P);
    r.expect(got == Pp, "P^⊥: " + diff(qm, got, Pp), {{"P", P}});
    const Bitset sum = sum_set(qm, P, got);
    r.expect(!sum.test(qm.parse_vector("(1,1)")), "(1,1) lies in P + P^⊥", {{"P", P}});
    r.expect(!is_splitting(qm, P), "P splits", {{"P", P}});
    r.note("missing from P + P^⊥: " + qm.format_set(qm.full_set() - sum));
    return r.finish();
}

// ---- powers of N5 ---------------------------------------------------------

std::vector<TheoremReport> n5_power() {
    std::vector<TheoremReport> out;
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto qm = make_qm("n5", std::vector<std::string>(n, "1"));
        Recorder r("n5-power", qm);
        const std::size_t want = std::size_t{1} << (2 * n);
        r.begin("n" + std::to_string(n), "L_C(N5^" + std::to_string(n) + ") is the " + std::to_string(want) +
                                             "-element Boolean algebra");
        const auto iso = closed_lattice_iso(qm);
        r.expect(iso.closed.base.size() == want, "|L_C| = " + std::to_string(iso.closed.base.size()));
        r.expect(iso.verified(), "product map is not an isomorphism");
        const auto shape = boolean_shape(iso.closed.base.to_lattice());
        r.expect(shape && shape->rank == 2 * n, "Hasse diagram is not Boolean of rank " + std::to_string(2 * n));
        r.note(std::to_string(iso.closed.base.size()) + " nodes, " +
               std::to_string(iso.closed.base.covers().size()) + " cover edges");
        for (auto& rep : r.finish()) out.push_back(std::move(rep));
    }
    return out;
}

} // namespace

std::vector<std::string> example_instances() { return {"ex2", "m3", "ex1", "fig5", "n5-power"}; }

std::vector<TheoremReport> reproduce_example(std::string_view instance) {
    if (instance == "ex2") return ex2();
    if (instance == "m3") return m3();
    if (instance == "ex1") return ex1();
    if (instance == "fig5") return fig5();
    if (instance == "n5-power") return n5_power();
    fail(Errc::UnknownInstance, "unknown instance '" + std::string(instance) + "' (known: ex2, m3, ex1, fig5, n5-power)");
}

} // namespace qmlat
