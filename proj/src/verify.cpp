#include "qmlat/verify.hpp"

#include "qmlat/error.hpp"
#include "qmlat/galois.hpp"
#include "qmlat/io.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

namespace qmlat {

std::string_view status_name(Status s) noexcept {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::HypothesisNotMet: return "hypothesis-not-met";
    case Status::Error: return "error";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kPairFamilyFull = 256;    // |F| up to which F x F is exhaustive
constexpr std::size_t kPairLeftCap = 4096;      // left operands otherwise
constexpr std::size_t kPairRightRandom = 32;
constexpr std::size_t kFamilySamples = 2000;
constexpr std::size_t kTupleCap = 4096;
constexpr std::size_t kOrthogonalSetCap = 5000;
constexpr std::size_t kVectorPairCap = 4'000'000;

using Sets = std::vector<Bitset>;
using Note = std::optional<std::string>;

Bitset singleton(std::size_t universe, std::size_t v) {
    Bitset b(universe);
    b.set(v);
    return b;
}

Bitset random_subset(std::size_t universe, std::mt19937_64& rng) {
    Bitset b(universe);
    const auto threshold = rng() % 1001;
    for (std::size_t i = 0; i < universe; ++i)
        if (rng() % 1000 < threshold) b.set(i);
    return b;
}

// Lazily computed structure shared by the clauses of one instance.
class Ctx {
public:
    Ctx(const CanonicalQM& qm, const VerifyOptions& opt) : qm(qm), opt(opt), rng(opt.seed) {
        zero_distributive = qm.factors_0_distributive();
    }

    const CanonicalQM& qm;
    const VerifyOptions& opt;
    std::mt19937_64 rng;
    bool zero_distributive = false;

    Bitset perp(const Bitset& a) const { return qmlat::perp(qm, a); }
    Bitset dperp(const Bitset& a) const { return perp(perp(a)); }
    bool closed_subqm(const Bitset& s) const { return is_subquasimodule(qm, s) && is_closed(qm, s); }

    const SubsetFamily& family() {
        if (!family_) family_ = subset_family(qm, opt);
        return *family_;
    }

    const SubQMLattice& subs() {
        if (!subs_) subs_ = all_subquasimodules(qm, opt.budget);
        return *subs_;
    }

    /// L_C(Q): the intersection closure of principal perps when the factors are
    /// 0-distributive, otherwise the closed members of L(Q).
    const std::vector<Bitset>& closed_nodes() {
        if (!closed_) {
            if (zero_distributive) {
                closed_ = closed_subquasimodules(qm, opt.budget).base.nodes();
            } else {
                closed_.emplace();
                for (const auto& s : subs().nodes())
                    if (is_closed(qm, s)) closed_->push_back(s);
            }
        }
        return *closed_;
    }

    const CanonicalQM& factor(std::size_t i) {
        if (factors_.empty())
            for (std::size_t k = 0; k < qm.factor_count(); ++k) factors_.push_back(qm.factor_qm(k));
        return factors_[i];
    }

    /// Carrier subset of factor i's quasimodule for an element subset.
    Bitset local(std::size_t i, const Bitset& elements) { return elements_to_factor_set(qm, i, elements); }

private:
    std::optional<SubsetFamily> family_;
    std::optional<SubQMLattice> subs_;
    std::optional<std::vector<Bitset>> closed_;
    std::vector<CanonicalQM> factors_;
};

struct Outcome {
    std::optional<Witness> violation;
    std::string scope = "exhaustive";
    std::string detail;
};

struct ClauseDef {
    ClauseInfo info;
    std::function<Outcome(Ctx&)> run;
    /// Evaluates the statement on explicit witness sets; returns the failure.
    std::function<Note(Ctx&, const Sets&)> check;
};

Witness make_witness(const std::vector<std::string>& names, const Sets& sets, std::string note,
                     bool over_elements = false) {
    Witness w;
    for (std::size_t i = 0; i < sets.size(); ++i)
        w.sets.push_back({i < names.size() ? names[i] : "S" + std::to_string(i + 1), sets[i], over_elements});
    w.note = std::move(note);
    return w;
}

// ---- quantifier drivers ---------------------------------------------------

using Unary = std::function<Note(Ctx&, const Bitset&)>;
using Binary = std::function<Note(Ctx&, const Bitset&, const Bitset&)>;

ClauseDef over_subsets(ClauseInfo info, Unary pred) {
    ClauseDef d;
    d.info = std::move(info);
    d.run = [pred](Ctx& c) {
        Outcome o;
        const auto& fam = c.family();
        o.scope = fam.scope;
        for (const auto& a : fam.sets) {
            if (auto n = pred(c, a)) {
                o.violation = make_witness({"A"}, {a}, *n);
                break;
            }
        }
        return o;
    };
    d.check = [pred](Ctx& c, const Sets& s) { return pred(c, s.at(0)); };
    return d;
}

ClauseDef over_subquasimodules(ClauseInfo info, Unary pred) {
    ClauseDef d;
    d.info = std::move(info);
    d.run = [pred](Ctx& c) {
        Outcome o;
        o.scope = "all of L(Q)";
        for (const auto& p : c.subs().nodes()) {
            if (auto n = pred(c, p)) {
                o.violation = make_witness({"P"}, {p}, *n);
                break;
            }
        }
        return o;
    };
    d.check = [pred](Ctx& c, const Sets& s) { return pred(c, s.at(0)); };
    return d;
}

ClauseDef over_closed_pairs(ClauseInfo info, Binary pred) {
    ClauseDef d;
    d.info = std::move(info);
    d.run = [pred](Ctx& c) {
        Outcome o;
        o.scope = "all pairs of L_C(Q)";
        const auto& nodes = c.closed_nodes();
        for (const auto& p : nodes)
            for (const auto& r : nodes)
                if (auto n = pred(c, p, r)) {
                    o.violation = make_witness({"P", "R"}, {p, r}, *n);
                    return o;
                }
        return o;
    };
    d.check = [pred](Ctx& c, const Sets& s) { return pred(c, s.at(0), s.at(1)); };
    return d;
}

// Left operands: F when small, else L(Q) members of F plus a seeded sample.
// Right operands: F when small, else singletons, ∅, Q and seeded members of F.
Outcome run_pairs(Ctx& c, const Binary& pred) {
    Outcome o;
    const auto& fam = c.family();
    const auto& F = fam.sets;
    std::vector<const Bitset*> left, right;
    Sets extra;
    if (F.size() <= kPairFamilyFull) {
        for (const auto& a : F) left.push_back(&a), right.push_back(&a);
        o.scope = fam.scope + "; all pairs";
    } else {
        std::mt19937_64 rng(c.opt.seed ^ 0x5eedULL);
        if (F.size() <= kPairLeftCap) {
            for (const auto& a : F) left.push_back(&a);
        } else {
            for (std::size_t k = 0; k < kPairLeftCap; ++k) left.push_back(&F[rng() % F.size()]);
        }
        extra.push_back(c.qm.empty_set());
        extra.push_back(c.qm.full_set());
        for (VecId v = 0; v < c.qm.size(); ++v) extra.push_back(singleton(c.qm.size(), v));
        for (const auto& e : extra) right.push_back(&e);
        for (std::size_t k = 0; k < kPairRightRandom; ++k) right.push_back(&F[rng() % F.size()]);
        o.scope = fam.scope + "; pairs: " + std::to_string(left.size()) + " left operands x " +
                  std::to_string(right.size()) + " right operands (empty, full, singletons, seeded sample)";
    }
    for (const auto* a : left)
        for (const auto* b : right)
            if (auto n = pred(c, *a, *b)) {
                o.violation = make_witness({"A", "B"}, {*a, *b}, *n);
                return o;
            }
    return o;
}

ClauseDef over_subset_pairs(ClauseInfo info, Binary pred) {
    ClauseDef d;
    d.info = std::move(info);
    d.run = [pred](Ctx& c) { return run_pairs(c, pred); };
    d.check = [pred](Ctx& c, const Sets& s) { return pred(c, s.at(0), s.at(1)); };
    return d;
}

// Families of 2 and 3 members drawn from F.
ClauseDef over_families(ClauseInfo info, std::function<Note(Ctx&, const Sets&)> pred) {
    ClauseDef d;
    d.info = std::move(info);
    d.run = [pred](Ctx& c) {
        Outcome o;
        const auto& F = c.family().sets;
        auto test = [&](const Sets& fam) {
            if (auto n = pred(c, fam)) {
                std::vector<std::string> names;
                for (std::size_t i = 0; i < fam.size(); ++i) names.push_back("A" + std::to_string(i + 1));
                o.violation = make_witness(names, fam, *n);
                return true;
            }
            return false;
        };
        std::mt19937_64 rng(c.opt.seed ^ 0xfa111eULL);
        if (F.size() <= 128) {
            for (std::size_t i = 0; i < F.size(); ++i)
                for (std::size_t j = i; j < F.size(); ++j)
                    if (test({F[i], F[j]})) return o;
            o.scope = c.family().scope + "; all pairs of members, " + std::to_string(kFamilySamples) +
                      " seeded triples";
        } else {
            for (std::size_t k = 0; k < kFamilySamples; ++k)
                if (test({F[rng() % F.size()], F[rng() % F.size()]})) return o;
            o.scope = c.family().scope + "; " + std::to_string(kFamilySamples) + " seeded pairs and triples";
        }
        for (std::size_t k = 0; k < kFamilySamples; ++k)
            if (test({F[rng() % F.size()], F[rng() % F.size()], F[rng() % F.size()]})) return o;
        return o;
    };
    d.check = pred;
    return d;
}

ClauseDef structural(ClauseInfo info, std::function<Outcome(Ctx&)> run) {
    ClauseDef d;
    d.info = std::move(info);
    d.run = [run](Ctx& c) {
        auto o = run(c);
        if (o.violation) o.violation->structural = true;
        return o;
    };
    d.check = [run](Ctx& c, const Sets&) -> Note {
        auto o = run(c);
        if (o.violation) return o.violation->note;
        return std::nullopt;
    };
    return d;
}

// Pairs of carrier vectors.
ClauseDef over_vector_pairs(ClauseInfo info, std::function<Note(Ctx&, VecId, VecId)> pred) {
    ClauseDef d;
    d.info = std::move(info);
    d.run = [pred](Ctx& c) {
        Outcome o;
        const std::size_t m = c.qm.size();
        auto test = [&](VecId x, VecId y) {
            if (auto n = pred(c, x, y)) {
                o.violation = make_witness({"x", "y"}, {singleton(m, x), singleton(m, y)}, *n);
                return true;
            }
            return false;
        };
        if (m * m <= kVectorPairCap) {
            for (VecId x = 0; x < m; ++x)
                for (VecId y = 0; y < m; ++y)
                    if (test(x, y)) return o;
        } else {
            std::mt19937_64 rng(c.opt.seed);
            for (std::size_t k = 0; k < 200'000; ++k)
                if (test(static_cast<VecId>(rng() % m), static_cast<VecId>(rng() % m))) return o;
            o.scope = "200000 seeded vector pairs";
        }
        return o;
    };
    d.check = [pred](Ctx& c, const Sets& s) {
        return pred(c, static_cast<VecId>(s.at(0).first()), static_cast<VecId>(s.at(1).first()));
    };
    return d;
}

// Tuples of element subsets, one per factor (each within its factor).
ClauseDef over_factor_tuples(ClauseInfo info, std::function<Note(Ctx&, const Sets&)> pred) {
    ClauseDef d;
    d.info = std::move(info);
    d.run = [pred](Ctx& c) {
        Outcome o;
        const std::size_t f = c.qm.factor_count();
        const std::size_t n = c.qm.lattice().size();
        // Per-factor candidate element subsets.
        std::vector<Sets> cand(f);
        std::size_t total = 1;
        bool exhaustive = true;
        for (std::size_t i = 0; i < f; ++i) {
            auto mem = c.qm.factor_members(i);
            if (mem.size() <= 12) {
                for (std::uint32_t mask = 0; mask < (1u << mem.size()); ++mask) {
                    Bitset s(n);
                    for (std::size_t b = 0; b < mem.size(); ++b)
                        if (mask >> b & 1) s.set(mem[b]);
                    cand[i].push_back(std::move(s));
                }
            } else {
                exhaustive = false;
                const auto factor_subs = all_subquasimodules(c.factor(i), c.opt.budget);
                for (const auto& node : factor_subs.nodes())
                    cand[i].push_back(factor_set_to_elements(c.qm, i, node));
                for (std::size_t k = 0; k < 16; ++k)
                    cand[i].push_back(factor_set_to_elements(c.qm, i, random_subset(mem.size(), c.rng)));
            }
            total = (total > kTupleCap * 1024) ? total : total * cand[i].size();
        }
        std::vector<std::string> names;
        for (std::size_t i = 0; i < f; ++i) names.push_back("M" + std::to_string(i + 1));
        auto test = [&](const Sets& tuple) {
            if (auto msg = pred(c, tuple)) {
                o.violation = make_witness(names, tuple, *msg, true);
                return true;
            }
            return false;
        };
        if (exhaustive && total <= kTupleCap) {
            std::vector<std::size_t> idx(f, 0);
            for (std::size_t k = 0; k < total; ++k) {
                Sets tuple;
                for (std::size_t i = 0; i < f; ++i) tuple.push_back(cand[i][idx[i]]);
                if (test(tuple)) return o;
                for (std::size_t i = f; i-- > 0;) {
                    if (++idx[i] < cand[i].size()) break;
                    idx[i] = 0;
                }
            }
            o.scope = "all tuples of factor subsets";
        } else {
            std::mt19937_64 rng(c.opt.seed ^ 0x7u);
            for (std::size_t k = 0; k < kTupleCap; ++k) {
                Sets tuple;
                for (std::size_t i = 0; i < f; ++i) tuple.push_back(cand[i][rng() % cand[i].size()]);
                if (test(tuple)) return o;
            }
            o.scope = std::to_string(kTupleCap) + " seeded tuples of factor subsets";
        }
        return o;
    };
    d.check = pred;
    return d;
}

// ---- helpers for individual statements ------------------------------------

bool factor_subqm(Ctx& c, std::size_t i, const Bitset& elements) {
    return is_subquasimodule(c.factor(i), c.local(i, elements));
}

bool factor_splitting(Ctx& c, std::size_t i, const Bitset& elements) {
    const auto& fq = c.factor(i);
    const Bitset loc = c.local(i, elements);
    return is_subquasimodule(fq, loc) && is_splitting(fq, loc);
}

Bitset factor_perp(Ctx& c, std::size_t i, const Bitset& elements) {
    return factor_set_to_elements(c.qm, i, perp(c.factor(i), c.local(i, elements)));
}

Bitset intersect_all(const Ctx& c, const Sets& sets) {
    Bitset acc = c.qm.full_set();
    for (const auto& s : sets) acc &= s;
    return acc;
}

Bitset union_all(const Ctx& c, const Sets& sets) {
    Bitset acc = c.qm.empty_set();
    for (const auto& s : sets) acc |= s;
    return acc;
}

// Orthogonal sets up to size 4, by DFS over carrier order, capped.
Sets orthogonal_sets(const CanonicalQM& qm) {
    Sets out;
    std::vector<VecId> cur;
    auto dfs = [&](auto&& self, VecId start) -> void {
        if (out.size() >= kOrthogonalSetCap) return;
        if (!cur.empty()) {
            Bitset s(qm.size());
            for (auto v : cur) s.set(v);
            out.push_back(std::move(s));
        }
        if (cur.size() == 4) return;
        for (VecId v = start; v < qm.size(); ++v) {
            bool ok = true;
            for (auto u : cur) ok = ok && qm.orthogonal(u, v);
            if (!ok) continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
            if (out.size() >= kOrthogonalSetCap) return;
        }
    };
    dfs(dfs, 0);
    return out;
}

// Hasse-free least-upper-bound test among a family.
std::optional<Bitset> least_upper_bound(const Sets& family, const Bitset& a, const Bitset& b) {
    std::optional<Bitset> best;
    for (const auto& s : family) {
        if (!a.is_subset_of(s) || !b.is_subset_of(s)) continue;
        if (!best || s.is_subset_of(*best)) best = s;
    }
    if (!best) return std::nullopt;
    for (const auto& s : family)
        if (a.is_subset_of(s) && b.is_subset_of(s) && !best->is_subset_of(s)) return std::nullopt;
    return best;
}

TheoremReport run_homomorphism(const CanonicalQM& qm, const VerifyOptions& opt, bool require_hypothesis);

// ---- the catalog ----------------------------------------------------------

const std::string kZD(kZeroDistributive);
const std::string kPF(kPrincipalFactors);

std::vector<ClauseDef> build_catalog() {
    std::vector<ClauseDef> cat;

    cat.push_back(structural({"quasimodule.axioms", "canonical construction satisfies the quasimodule axioms", {}},
                             [](Ctx& c) {
                                 Outcome o;
                                 auto rep = verify_axioms(c.qm, 256, c.opt.seed);
                                 o.scope = rep.scope;
                                 for (const auto& a : rep.axioms)
                                     if (!a.passed) {
                                         o.violation = Witness{{}, a.id + ": " + a.witness, true};
                                         break;
                                     }
                                 return o;
                             }));

    cat.push_back(over_vector_pairs(
        {"inner-product.orthogonality",
         "x ⊥ y iff all componentwise meets vanish iff xy = 0; xy = yx",
         {}},
        [](Ctx& c, VecId x, VecId y) -> Note {
            const auto& q = c.qm;
            const Elem ip = q.inner_product(x, y);
            if (ip != q.inner_product(y, x)) return "inner product not commutative";
            bool componentwise = true;
            for (std::size_t i = 0; i < q.factor_count(); ++i)
                componentwise = componentwise && q.lattice().meet(q.coord(x, i), q.coord(y, i)) == q.lattice().bottom();
            if (q.orthogonal(x, y) != componentwise || componentwise != (ip == q.lattice().bottom()))
                return "orthogonality disagrees with inner product " + q.lattice().name(ip);
            return std::nullopt;
        }));

    {
        ClauseDef d;
        d.info = {"separation", "xz = yz for all z implies x = y", {kPF}};
        auto pred = [](Ctx& c, VecId x, VecId y) -> Note {
            if (x == y) return std::nullopt;
            for (VecId z = 0; z < c.qm.size(); ++z)
                if (c.qm.inner_product(x, z) != c.qm.inner_product(y, z)) return std::nullopt;
            return c.qm.format(x) + " and " + c.qm.format(y) + " have equal inner products with every vector";
        };
        d = over_vector_pairs(d.info, pred);
        auto inner = d.run;
        d.run = [inner, pred](Ctx& c) {
            if (c.qm.size() <= 128) return inner(c);
            Outcome o;
            std::mt19937_64 rng(c.opt.seed);
            const auto m = c.qm.size();
            for (std::size_t k = 0; k < 20'000 && !o.violation; ++k) {
                const auto x = static_cast<VecId>(rng() % m), y = static_cast<VecId>(rng() % m);
                if (auto n = pred(c, x, y)) o.violation = make_witness({"x", "y"}, {singleton(m, x), singleton(m, y)}, *n);
            }
            o.scope = "20000 seeded vector pairs";
            return o;
        };
        cat.push_back(std::move(d));
    }

    cat.push_back(structural(
        {"standard-basis", "B = {b_i} is a basis and omitting b_k generates {x : x_k = 0}", {kPF}}, [](Ctx& c) {
            Outcome o;
            const auto basis = standard_basis(c.qm);
            Bitset b(c.qm.size());
            // b_i vanishes for a factor {0} and is left out.
            for (auto v : basis)
                if (v != c.qm.zero()) b.set(v);
            if (!is_basis(c.qm, c.qm.full_set(), b)) {
                o.violation = Witness{{{"B", b, false}}, "standard basis is not a basis", true};
                return o;
            }
            for (std::size_t k = 0; k < basis.size(); ++k) {
                Bitset rest = b;
                if (basis[k] != c.qm.zero()) rest.reset(basis[k]);
                Bitset expect(c.qm.size());
                for (VecId v = 0; v < c.qm.size(); ++v)
                    if (c.qm.coord(v, k) == c.qm.lattice().bottom()) expect.set(v);
                if (generate(c.qm, rest) != expect) {
                    o.violation = Witness{{{"B", b, false}},
                                          "omitting b_" + std::to_string(k + 1) + " does not yield {x : x_k = 0}", true};
                    return o;
                }
            }
            return o;
        }));

    cat.push_back(over_subsets({"galois.extensive", "A ⊆ A^⊥⊥", {}}, [](Ctx& c, const Bitset& a) -> Note {
        if (!a.is_subset_of(c.dperp(a))) return std::string("A is not contained in A^⊥⊥");
        return std::nullopt;
    }));

    {
        Binary pred = [](Ctx& c, const Bitset& a, const Bitset& b) -> Note {
            if (a.is_subset_of(b) && !c.perp(b).is_subset_of(c.perp(a))) return std::string("A ⊆ B but B^⊥ ⊄ A^⊥");
            return std::nullopt;
        };
        auto d = over_subset_pairs({"galois.antitone", "A ⊆ B implies B^⊥ ⊆ A^⊥", {}}, pred);
        auto pairs = d.run;
        // Covering pairs (B minus one element) make the check exhaustive when F is the full power set.
        d.run = [pairs, pred](Ctx& c) {
            Outcome o;
            for (const auto& b : c.family().sets) {
                bool hit = false;
                b.for_each([&](std::size_t e) {
                    if (hit) return;
                    Bitset a = b;
                    a.reset(e);
                    if (auto n = pred(c, a, b)) {
                        o.violation = make_witness({"A", "B"}, {a, b}, *n);
                        hit = true;
                    }
                });
                if (hit) return o;
            }
            o = pairs(c);
            o.scope += "; plus all one-element deletions";
            return o;
        };
        cat.push_back(std::move(d));
    }

    cat.push_back(over_subsets({"galois.triple-perp", "A^⊥⊥⊥ = A^⊥", {}}, [](Ctx& c, const Bitset& a) -> Note {
        const Bitset p = c.perp(a);
        if (c.perp(c.perp(p)) != p) return std::string("A^⊥⊥⊥ differs from A^⊥");
        return std::nullopt;
    }));

    cat.push_back(over_subset_pairs(
        {"galois.exchange", "A ⊆ B^⊥ iff B ⊆ A^⊥", {}}, [](Ctx& c, const Bitset& a, const Bitset& b) -> Note {
            if (a.is_subset_of(c.perp(b)) != b.is_subset_of(c.perp(a))) return std::string("exchange law fails");
            return std::nullopt;
        }));

    cat.push_back(over_families({"perp.union", "⋂ A_j^⊥ = (⋃ A_j)^⊥", {}}, [](Ctx& c, const Sets& fam) -> Note {
        Bitset lhs = c.qm.full_set();
        for (const auto& a : fam) lhs &= c.perp(a);
        if (lhs != c.perp(union_all(c, fam))) return std::string("intersection of perps differs from perp of union");
        return std::nullopt;
    }));

    cat.push_back(over_families(
        {"perp.intersection-closure", "(⋂ A_j)^⊥⊥ ⊆ ⋂ A_j^⊥⊥", {}}, [](Ctx& c, const Sets& fam) -> Note {
            Bitset rhs = c.qm.full_set();
            for (const auto& a : fam) rhs &= c.dperp(a);
            if (!c.dperp(intersect_all(c, fam)).is_subset_of(rhs))
                return std::string("closure of intersection exceeds intersection of closures");
            return std::nullopt;
        }));

    cat.push_back(structural({"perp.of-carrier", "Q^⊥ = {0}", {}}, [](Ctx& c) {
        Outcome o;
        if (c.perp(c.qm.full_set()) != c.qm.zero_set()) o.violation = Witness{{}, "Q^⊥ differs from {0}", true};
        return o;
    }));

    cat.push_back(over_subsets(
        {"perp.disjoint", "A ∩ A^⊥ ⊆ {0} for A ≠ ∅, with equality when 0 ∈ A", {}},
        [](Ctx& c, const Bitset& a) -> Note {
            if (a.none()) return std::nullopt;
            const Bitset meet = a & c.perp(a);
            if (!meet.is_subset_of(c.qm.zero_set())) return "A ∩ A^⊥ = " + c.qm.format_set(meet);
            if (a.test(c.qm.zero()) && meet != c.qm.zero_set()) return std::string("0 ∈ A but 0 ∉ A ∩ A^⊥");
            return std::nullopt;
        }));

    cat.push_back(structural({"perp.of-zero", "{0}^⊥ = Q", {}}, [](Ctx& c) {
        Outcome o;
        if (c.perp(c.qm.zero_set()) != c.qm.full_set()) o.violation = Witness{{}, "{0}^⊥ differs from Q", true};
        return o;
    }));

    cat.push_back(over_subsets({"perp.is-subquasimodule", "A^⊥ is a subquasimodule", {kZD}},
                               [](Ctx& c, const Bitset& a) -> Note {
                                   if (auto v = subquasimodule_violation(c.qm, c.perp(a)))
                                       return "A^⊥ = " + c.qm.format_set(c.perp(a)) + ": " + v->describe(c.qm);
                                   return std::nullopt;
                               }));

    {
        Unary pred = [](Ctx& c, const Bitset& d) -> Note {
            const Bitset p = c.perp(d);
            if (!c.closed_subqm(p)) return "D^⊥ = " + c.qm.format_set(p) + " is not a closed subquasimodule";
            const auto& nodes = c.closed_nodes();
            if (std::find(nodes.begin(), nodes.end(), p) == nodes.end()) return std::string("D^⊥ missing from L_C(Q)");
            return std::nullopt;
        };
        auto d = over_subsets({"closed.perp-images", "L_C(Q) = {D^⊥ : D ⊆ Q}", {kZD}}, pred);
        auto images = d.run;
        d.run = [images](Ctx& c) {
            auto o = images(c);
            if (o.violation) return o;
            // Every member is the perp of its own perp, and the set equals the
            // closed filter of L(Q).
            std::unordered_set<Bitset, BitsetHash> filter;
            for (const auto& s : c.subs().nodes())
                if (is_closed(c.qm, s)) filter.insert(s);
            const auto& nodes = c.closed_nodes();
            for (const auto& n : nodes) {
                if (c.perp(c.perp(n)) != n || !filter.count(n)) {
                    o.violation = make_witness({"D"}, {c.perp(n)}, "member " + c.qm.format_set(n) + " is not closed in L(Q)");
                    return o;
                }
            }
            if (filter.size() != nodes.size())
                o.violation = Witness{{}, "closed filter of L(Q) has " + std::to_string(filter.size()) +
                                              " members, intersection closure " + std::to_string(nodes.size()), true};
            o.scope += "; L_C(Q) compared with the closed filter of L(Q)";
            return o;
        };
        cat.push_back(std::move(d));
    }

    cat.push_back(over_subsets(
        {"closed.least-closure", "A^⊥⊥ is the least closed subquasimodule containing A", {kZD}},
        [](Ctx& c, const Bitset& a) -> Note {
            const Bitset d = c.dperp(a);
            if (!c.closed_subqm(d)) return "A^⊥⊥ = " + c.qm.format_set(d) + " is not a closed subquasimodule";
            if (!a.is_subset_of(d)) return std::string("A ⊄ A^⊥⊥");
            for (const auto& n : c.closed_nodes())
                if (a.is_subset_of(n) && !d.is_subset_of(n))
                    return "closed " + c.qm.format_set(n) + " contains A but not A^⊥⊥";
            return std::nullopt;
        }));

    cat.push_back(over_closed_pairs(
        {"closed.join", "the join in L_C(Q) is (P ∪ R)^⊥⊥", {kZD}},
        [](Ctx& c, const Bitset& p, const Bitset& r) -> Note {
            const Bitset j = c.dperp(p | r);
            auto lub = least_upper_bound(c.closed_nodes(), p, r);
            if (!lub) return std::string("no least closed upper bound");
            if (*lub != j) return "(P ∪ R)^⊥⊥ = " + c.qm.format_set(j) + " but the join is " + c.qm.format_set(*lub);
            return std::nullopt;
        }));

    cat.push_back(over_closed_pairs(
        {"closed.involution", "^⊥ is an antitone involution on L_C(Q)", {kZD}},
        [](Ctx& c, const Bitset& p, const Bitset& r) -> Note {
            const Bitset pp = c.perp(p);
            const auto& nodes = c.closed_nodes();
            if (std::find(nodes.begin(), nodes.end(), pp) == nodes.end()) return std::string("P^⊥ not in L_C(Q)");
            if (c.perp(pp) != p) return std::string("P^⊥⊥ differs from P");
            if (p.is_subset_of(r) && !c.perp(r).is_subset_of(pp)) return std::string("not antitone");
            return std::nullopt;
        }));

    cat.push_back(over_closed_pairs(
        {"closed.complete", "L_C(Q) is a complete lattice with meet = ∩", {kZD}},
        [](Ctx& c, const Bitset& p, const Bitset& r) -> Note {
            const auto& nodes = c.closed_nodes();
            if (std::find(nodes.begin(), nodes.end(), p & r) == nodes.end()) return std::string("P ∩ R not closed");
            if (!least_upper_bound(nodes, p, r)) return std::string("no least upper bound");
            if (std::find(nodes.begin(), nodes.end(), c.qm.full_set()) == nodes.end()) return std::string("Q missing");
            return std::nullopt;
        }));

    cat.push_back(over_subsets({"perp.generated", "A^⊥ = ⟨A⟩^⊥", {kZD}}, [](Ctx& c, const Bitset& a) -> Note {
        if (c.perp(a) != c.perp(generate(c.qm, a))) return std::string("A^⊥ differs from ⟨A⟩^⊥");
        return std::nullopt;
    }));

    {
        ClauseDef d;
        d.info = {"perp.orthogonal-split", "C orthogonal, B ⊆ C implies ⟨C∖B⟩ ⊆ ⟨B⟩^⊥", {kZD}};
        d.check = [](Ctx& c, const Sets& s) -> Note {
            const Bitset& cs = s.at(0);
            const Bitset& b = s.at(1);
            if (!b.is_subset_of(cs) || !is_orthogonal_set(c.qm, cs)) return std::nullopt;
            if (!generate(c.qm, cs - b).is_subset_of(c.perp(generate(c.qm, b))))
                return std::string("⟨C∖B⟩ ⊄ ⟨B⟩^⊥");
            return std::nullopt;
        };
        d.run = [check = d.check](Ctx& c) {
            Outcome o;
            const auto sets = orthogonal_sets(c.qm);
            for (const auto& cs : sets) {
                const auto idx = cs.indices();
                for (std::uint32_t mask = 0; mask < (1u << idx.size()); ++mask) {
                    Bitset b(c.qm.size());
                    for (std::size_t k = 0; k < idx.size(); ++k)
                        if (mask >> k & 1) b.set(idx[k]);
                    if (auto n = check(c, {cs, b})) {
                        o.violation = make_witness({"C", "B"}, {cs, b}, *n);
                        return o;
                    }
                }
            }
            o.scope = sets.size() >= kOrthogonalSetCap ? "first " + std::to_string(kOrthogonalSetCap) +
                                                              " orthogonal sets of size <= 4, all B ⊆ C"
                                                        : "all orthogonal sets of size <= 4, all B ⊆ C";
            return o;
        };
        cat.push_back(std::move(d));
    }

    cat.push_back(over_subquasimodules(
        {"projection.subquasimodule", "p_i(P) is a subquasimodule of L_i for P in L(Q)", {}},
        [](Ctx& c, const Bitset& p) -> Note {
            for (std::size_t i = 0; i < c.qm.factor_count(); ++i)
                if (!factor_subqm(c, i, project(c.qm, p, i)))
                    return "projection onto factor " + std::to_string(i + 1) + " is not a subquasimodule";
            return std::nullopt;
        }));

    cat.push_back(over_factor_tuples(
        {"product.subquasimodule", "∏ M_i ∈ L(Q) iff every M_i ∈ L(L_i)", {}},
        [](Ctx& c, const Sets& parts) -> Note {
            const bool lhs = is_subquasimodule(c.qm, product(c.qm, parts));
            bool rhs = true;
            for (std::size_t i = 0; i < parts.size(); ++i) rhs = rhs && factor_subqm(c, i, parts[i]);
            if (lhs != rhs) return std::string(lhs ? "product is a subquasimodule but a factor part is not"
                                                   : "all parts are subquasimodules but the product is not");
            return std::nullopt;
        }));

    cat.push_back(over_subsets({"perp.product-of-projections", "P^⊥ = ∏ p_i(P)^⊥", {}},
                               [](Ctx& c, const Bitset& p) -> Note {
                                   Sets parts;
                                   for (std::size_t i = 0; i < c.qm.factor_count(); ++i)
                                       parts.push_back(factor_perp(c, i, project(c.qm, p, i)));
                                   if (c.perp(p) != product(c.qm, parts))
                                       return std::string("P^⊥ is not the product of the projected perps");
                                   return std::nullopt;
                               }));

    cat.push_back(over_subquasimodules(
        {"closed.factorization", "P ∈ L_C(Q) iff P = ∏ P_i with closed P_i ∈ L_C(L_i)", {kZD}},
        [](Ctx& c, const Bitset& p) -> Note {
            const bool closed = is_closed(c.qm, p);
            Sets parts;
            bool parts_closed = true;
            for (std::size_t i = 0; i < c.qm.factor_count(); ++i) {
                parts.push_back(project(c.qm, p, i));
                const Bitset loc = c.local(i, parts.back());
                parts_closed = parts_closed && is_subquasimodule(c.factor(i), loc) && is_closed(c.factor(i), loc);
            }
            const bool factorizes = parts_closed && product(c.qm, parts) == p;
            if (closed != factorizes)
                return std::string(closed ? "closed but not a product of closed factor parts"
                                          : "product of closed factor parts but not closed");
            if (closed && c.zero_distributive) {
                auto w = factorize_closed(c.qm, p);
                if (w.parts != parts) return std::string("factorize_closed disagrees with the projections");
            }
            return std::nullopt;
        }));

    cat.push_back(structural({"closed.product-iso", "L_C(Q) ≅ ∏ L_C(L_i) via (P_i) ↦ ∏ P_i", {kZD}}, [](Ctx& c) {
        Outcome o;
        if (c.zero_distributive) {
            auto iso = closed_lattice_iso(c.qm, c.opt.budget);
            if (!iso.bijective) o.violation = Witness{{}, "product map is not a bijection", true};
            else if (!iso.order_preserving) o.violation = Witness{{}, "product map is not an order isomorphism", true};
            return o;
        }
        // Without the hypothesis: compare the closed members of L(Q) with
        // products of closed members of each L(L_i).
        std::size_t expected = 1;
        for (std::size_t i = 0; i < c.qm.factor_count(); ++i) {
            std::size_t k = 0;
            const auto factor_subs = all_subquasimodules(c.factor(i), c.opt.budget);
            for (const auto& s : factor_subs.nodes())
                if (is_closed(c.factor(i), s)) ++k;
            expected *= k;
        }
        std::set<std::vector<std::vector<std::uint64_t>>> images;
        for (const auto& n : c.closed_nodes()) {
            std::vector<std::vector<std::uint64_t>> key;
            Sets parts;
            for (std::size_t i = 0; i < c.qm.factor_count(); ++i) {
                parts.push_back(project(c.qm, n, i));
                const Bitset loc = c.local(i, parts.back());
                if (!is_closed(c.factor(i), loc)) {
                    o.violation = Witness{{{"P", n, false}}, "projection of a closed member is not closed", true};
                    return o;
                }
                key.push_back(parts.back().words());
            }
            if (product(c.qm, parts) != n) {
                o.violation = Witness{{{"P", n, false}}, "closed member is not the product of its projections", true};
                return o;
            }
            images.insert(key);
        }
        if (images.size() != expected)
            o.violation = Witness{{}, std::to_string(images.size()) + " closed members but " + std::to_string(expected) +
                                          " tuples of closed factor members", true};
        return o;
    }));

    cat.push_back(over_subquasimodules({"splitting.closed", "every splitting subquasimodule is closed", {}},
                                       [](Ctx& c, const Bitset& p) -> Note {
                                           if (is_splitting(c.qm, p) && !is_closed(c.qm, p))
                                               return std::string("splitting but not closed");
                                           return std::nullopt;
                                       }));

    cat.push_back(over_subquasimodules(
        {"splitting.perp", "P splitting implies P^⊥ splitting and closed", {kZD}}, [](Ctx& c, const Bitset& p) -> Note {
            if (!is_splitting(c.qm, p)) return std::nullopt;
            const Bitset pp = c.perp(p);
            if (!is_subquasimodule(c.qm, pp)) return std::string("P^⊥ is not a subquasimodule");
            if (!is_splitting(c.qm, pp)) return std::string("P^⊥ is not splitting");
            if (!is_closed(c.qm, pp)) return std::string("P^⊥ is not closed");
            return std::nullopt;
        }));

    cat.push_back(over_factor_tuples(
        {"splitting.product", "∏ M_i ∈ L_S(Q) iff every M_i ∈ L_S(L_i)", {}}, [](Ctx& c, const Sets& parts) -> Note {
            const Bitset prod = product(c.qm, parts);
            const bool lhs = is_subquasimodule(c.qm, prod) && is_splitting(c.qm, prod);
            bool rhs = true;
            for (std::size_t i = 0; i < parts.size(); ++i) rhs = rhs && factor_splitting(c, i, parts[i]);
            if (lhs != rhs) return std::string(lhs ? "product splits but some part does not"
                                                   : "every part splits but the product does not");
            return std::nullopt;
        }));

    cat.push_back(structural({"perp-closure.homomorphism",
                              "if ^⊥⊥ preserves intersections of subquasimodules it is a homomorphism onto L_C(Q)",
                              {kZD}},
                             [](Ctx& c) {
                                 Outcome o;
                                 auto rep = run_homomorphism(c.qm, c.opt, false);
                                 o.scope = rep.scope;
                                 o.detail = rep.detail;
                                 if (rep.status == Status::Fail && rep.witness) o.violation = *rep.witness;
                                 return o;
                             }));

    {
        auto d = over_subquasimodules({"splitting.converse", "probe: every closed subquasimodule splits", {}, true},
                                      [](Ctx& c, const Bitset& p) -> Note {
                                          if (is_closed(c.qm, p) && !is_splitting(c.qm, p))
                                              return "closed " + c.qm.format_set(p) + " does not split: " +
                                                     c.qm.format_set(c.qm.full_set() -
                                                                     sum_set(c.qm, p, c.perp(p))) +
                                                     " missing from P + P^⊥";
                                          return std::nullopt;
                                      });
        cat.push_back(std::move(d));
    }
    return cat;
}

const std::vector<ClauseDef>& catalog() {
    static const std::vector<ClauseDef> cat = build_catalog();
    return cat;
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

TheoremReport evaluate(const ClauseDef& def, Ctx& ctx, const std::string& instance) {
    TheoremReport r;
    r.id = def.info.id;
    r.statement = def.info.statement;
    r.instance = instance;
    for (const auto& h : def.info.hypotheses) {
        if (contains(ctx.opt.drop_hypotheses, h)) continue;
        bool holds = true;
        if (h == kZeroDistributive) holds = ctx.zero_distributive;
        if (h == kPrincipalFactors)
            for (const auto& f : ctx.qm.factors()) holds = holds && f.generator(ctx.qm.lattice()).has_value();
        if (!holds) r.unmet_hypotheses.push_back(h);
    }
    const auto start = std::chrono::steady_clock::now();
    try {
        auto o = def.run(ctx);
        r.scope = o.scope;
        r.detail = o.detail;
        if (o.violation) {
            r.witness = std::move(o.violation);
            r.status = r.unmet_hypotheses.empty() ? Status::Fail : Status::HypothesisNotMet;
            if (r.status == Status::HypothesisNotMet)
                r.detail = "conclusion fails on this instance: " + r.witness->note;
        } else {
            r.status = r.unmet_hypotheses.empty() ? Status::Pass : Status::HypothesisNotMet;
            if (r.status == Status::HypothesisNotMet && r.detail.empty())
                r.detail = "conclusion holds on this instance anyway";
        }
    } catch (const Error& e) {
        r.status = r.unmet_hypotheses.empty() ? Status::Error : Status::HypothesisNotMet;
        r.detail = std::string(errc_name(e.code())) + ": " + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace

const std::vector<ClauseInfo>& clause_catalog() {
    static const std::vector<ClauseInfo> infos = [] {
        std::vector<ClauseInfo> v;
        for (const auto& d : catalog()) v.push_back(d.info);
        return v;
    }();
    return infos;
}

SubsetFamily subset_family(const CanonicalQM& qm, const VerifyOptions& opt) {
    SubsetFamily fam;
    const std::size_t m = qm.size();
    if (m <= opt.exhaustive_subset_limit && m < 31) {
        fam.sets.reserve(std::size_t{1} << m);
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            Bitset s(m);
            for (std::size_t b = 0; b < m; ++b)
                if (mask >> b & 1) s.set(b);
            fam.sets.push_back(std::move(s));
        }
        fam.scope = "exhaustive over all " + std::to_string(fam.sets.size()) + " subsets";
        return fam;
    }
    std::size_t subs = 0;
    std::string note;
    try {
        const auto all = all_subquasimodules(qm, opt.budget);
        for (const auto& s : all.nodes()) fam.sets.push_back(s), ++subs;
    } catch (const Error& e) {
        note = " (L(Q) over budget, omitted)";
    }
    fam.sets.push_back(qm.empty_set());
    fam.sets.push_back(qm.full_set());
    for (VecId v = 0; v < m; ++v) fam.sets.push_back(singleton(m, v));
    std::mt19937_64 rng(opt.seed);
    for (std::size_t k = 0; k < opt.random_subsets; ++k) fam.sets.push_back(random_subset(m, rng));
    fam.scope = "sampled: all " + std::to_string(subs) + " subquasimodules" + note + ", empty set, carrier, " +
                std::to_string(m) + " singletons and " + std::to_string(opt.random_subsets) + " seeded random subsets";
    return fam;
}

std::vector<TheoremReport> check_all(const CanonicalQM& qm, const VerifyOptions& options) {
    Ctx ctx(qm, options);
    const std::string instance = qm_spec_to_text(qm);
    std::vector<TheoremReport> out;
    for (const auto& def : catalog()) {
        if (options.only.empty() ? def.info.probe : !contains(options.only, def.info.id)) continue;
        out.push_back(evaluate(def, ctx, instance));
    }
    return out;
}

namespace {

TheoremReport run_homomorphism(const CanonicalQM& qm, const VerifyOptions& opt, bool require_hypothesis) {
    TheoremReport r;
    r.id = "perp-closure.homomorphism";
    r.statement = "if ^⊥⊥ preserves intersections of subquasimodules it is a homomorphism onto L_C(Q)";
    r.instance = qm_spec_to_text(qm);
    const auto start = std::chrono::steady_clock::now();
    if (require_hypothesis) require_0_distributive_factors(qm);

    const auto subs = all_subquasimodules(qm, opt.budget);
    const auto& nodes = subs.nodes();
    const std::size_t k = nodes.size();
    std::vector<Bitset> closure(k), perps(k);
    for (std::size_t i = 0; i < k; ++i) {
        perps[i] = perp(qm, nodes[i]);
        closure[i] = perp(qm, perps[i]);
    }
    auto dp = [&](const Bitset& s) { return perp(qm, perp(qm, s)); };

    // Families to test: all pairs when affordable, plus families of 3 and 4.
    std::vector<std::vector<std::size_t>> families;
    std::mt19937_64 rng(opt.seed ^ 0x40a0ULL);
    if (k * k <= 90'000) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) families.push_back({i, j});
        r.scope = "all pairs of L(Q)";
    } else {
        for (std::size_t s = 0; s < 50'000; ++s) families.push_back({rng() % k, rng() % k});
        r.scope = "50000 seeded pairs of L(Q)";
    }
    const std::size_t quads = k < 4 ? 0 : k * (k - 1) * (k - 2) * (k - 3) / 24;
    if (quads > 0 && quads + k * (k - 1) * (k - 2) / 6 <= 60'000) {
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                for (std::size_t c = b + 1; c < k; ++c) {
                    families.push_back({a, b, c});
                    for (std::size_t d = c + 1; d < k; ++d) families.push_back({a, b, c, d});
                }
        r.scope += "; all families of 3 and 4";
    } else if (k >= 3) {
        for (std::size_t s = 0; s < 20'000; ++s) {
            std::vector<std::size_t> fam{rng() % k, rng() % k, rng() % k};
            if (s & 1) fam.push_back(rng() % k);
            families.push_back(std::move(fam));
        }
        r.scope += "; 20000 seeded families of 3 and 4";
    }

    auto name_family = [&](const std::vector<std::size_t>& fam) {
        Witness w;
        for (auto i : fam) w.sets.push_back({subs.name(i), nodes[i], false});
        return w;
    };

    for (const auto& fam : families) {
        Bitset meet = qm.full_set(), meet_of_closures = qm.full_set();
        for (auto i : fam) meet &= nodes[i], meet_of_closures &= closure[i];
        if (dp(meet) != meet_of_closures) {
            r.status = Status::HypothesisNotMet;
            r.witness = name_family(fam);
            r.witness->note = "(⋂ P_j)^⊥⊥ = " + qm.format_set(dp(meet)) + " but ⋂ P_j^⊥⊥ = " +
                              qm.format_set(meet_of_closures);
            r.detail = "intersection-preservation fails, so no homomorphism is claimed";
            r.unmet_hypotheses.push_back("closure preserves intersections");
            r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            return r;
        }
    }

    // Hypothesis holds on every tested family: check the conclusions.
    auto fail_with = [&](const std::vector<std::size_t>& fam, std::string note) {
        r.status = Status::Fail;
        r.witness = name_family(fam);
        r.witness->note = std::move(note);
    };
    if (dp(qm.zero_set()) != qm.zero_set()) fail_with({}, "{0}^⊥⊥ differs from {0}");
    else if (dp(qm.full_set()) != qm.full_set()) fail_with({}, "Q^⊥⊥ differs from Q");
    for (std::size_t i = 0; i < k && r.status != Status::Fail; ++i)
        if (dp(perps[i]) != perp(qm, closure[i])) fail_with({i}, "(P^⊥)^⊥⊥ differs from (P^⊥⊥)^⊥");
    for (const auto& fam : families) {
        if (r.status == Status::Fail) break;
        Bitset joined = qm.empty_set(), closures = qm.empty_set();
        for (auto i : fam) joined |= nodes[i], closures |= closure[i];
        // (⋁ P_j)^⊥⊥ with the join of L(Q), versus the closed join of the closures.
        if (dp(generate(qm, joined)) != dp(closures)) fail_with(fam, "join not preserved");
    }
    if (r.status != Status::Fail) {
        r.status = Status::Pass;
        r.detail = "intersection-preservation holds on all tested families and the conclusion holds";
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace

TheoremReport check_homomorphism(const CanonicalQM& qm, const VerifyOptions& options) {
    return run_homomorphism(qm, options, true);
}

bool replay(const TheoremReport& report) {
    if (!report.witness) return false;
    const auto& defs = catalog();
    auto it = std::find_if(defs.begin(), defs.end(), [&](const ClauseDef& d) { return d.info.id == report.id; });
    if (it == defs.end()) {
        // Worked-example checks replay by re-running their instance.
        const auto dot = report.id.find('.');
        const auto names = example_instances();
        if (dot == std::string::npos || !contains(names, report.id.substr(0, dot)))
            fail(Errc::InvalidArgument, "unknown clause '" + report.id + "'");
        for (const auto& r : reproduce_example(report.id.substr(0, dot)))
            if (r.id == report.id) return r.status == Status::Fail;
        return false;
    }
    const auto spec = parse_qm_spec(report.instance);
    const CanonicalQM qm(spec.lattice, spec.factors);
    VerifyOptions opt;
    opt.drop_hypotheses = {std::string(kZeroDistributive), std::string(kPrincipalFactors)};
    Ctx ctx(qm, opt);
    if (report.witness->structural) return it->run(ctx).violation.has_value();
    Sets sets;
    for (const auto& s : report.witness->sets) sets.push_back(s.set);
    return it->check(ctx, sets).has_value();
}

} // namespace qmlat
