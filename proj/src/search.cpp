#include "qmlat/error.hpp"
#include "qmlat/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace qmlat {

namespace {

std::vector<std::string> inner_labels(std::size_t k) {
    std::vector<std::string> names{"0"};
    for (std::size_t i = 0; i < k; ++i)
        names.push_back(k <= 26 ? std::string(1, static_cast<char>('a' + i)) : "e" + std::to_string(i + 1));
    names.push_back("1");
    return names;
}

// Strict order on the inner elements given as rel[i*k+j] (i < j only).
std::optional<Lattice> bounded_from_order(std::size_t k, const std::vector<char>& rel) {
    std::vector<Lattice::IndexPair> pairs;
    const Elem top = static_cast<Elem>(k + 1);
    pairs.emplace_back(0, top);
    for (Elem i = 0; i < k; ++i) {
        pairs.emplace_back(0, i + 1);
        pairs.emplace_back(i + 1, top);
        for (Elem j = 0; j < k; ++j)
            if (rel[i * k + j]) pairs.emplace_back(i + 1, j + 1);
    }
    try {
        return Lattice::build(inner_labels(k), std::span<const Lattice::IndexPair>(pairs));
    } catch (const Error&) {
        return std::nullopt;
    }
}

void transitive_close(std::size_t k, std::vector<char>& rel) {
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t i = 0; i < k; ++i)
            if (rel[i * k + m])
                for (std::size_t j = 0; j < k; ++j)
                    if (rel[m * k + j]) rel[i * k + j] = 1;
}

// Lexicographically least adjacency string over relabellings of the inner elements.
std::vector<char> canonical_form(const Lattice& l) {
    const std::size_t n = l.size();
    std::vector<Elem> inner;
    for (Elem x = 0; x < n; ++x)
        if (x != l.bottom() && x != l.top()) inner.push_back(x);
    std::vector<std::size_t> perm(inner.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> best;
    do {
        std::vector<char> sig;
        sig.reserve(inner.size() * inner.size());
        for (auto i : perm)
            for (auto j : perm) sig.push_back(l.leq(inner[i], inner[j]) ? 1 : 0);
        if (best.empty() || sig < best) best = std::move(sig);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct Candidate {
    Lattice lattice;
    std::vector<Ideal> factors;
};

std::optional<TheoremReport> evaluate(const Candidate& c, const std::string& clause, const SearchConfig& cfg) {
    try {
        CanonicalQM qm(c.lattice, c.factors);
        VerifyOptions opt;
        opt.seed = cfg.seed;
        opt.drop_hypotheses = cfg.drop_hypotheses;
        opt.only = {clause};
        auto reports = check_all(qm, opt);
        if (!reports.empty() && reports[0].status == Status::Fail) return reports[0];
    } catch (const Error&) {
    }
    return std::nullopt;
}

// Greedy shrink: drop inner elements while the violation persists, then factors.
TheoremReport minimize(Candidate c, TheoremReport report, const std::string& clause, const SearchConfig& cfg) {
    bool progress = true;
    while (progress) {
        progress = false;
        const Lattice& L = c.lattice;
        for (Elem e = 0; e < L.size() && !progress; ++e) {
            if (e == L.bottom() || e == L.top()) continue;
            Bitset keep = L.all();
            keep.reset(e);
            auto sub = induced_lattice(L, keep);
            if (!sub) continue;
            std::vector<Ideal> factors;
            bool ok = true;
            for (const auto& f : c.factors) {
                Bitset members(sub->size());
                (f.members() & keep).for_each([&](std::size_t x) { members.set(*sub->find(L.name(static_cast<Elem>(x)))); });
                if (!is_ideal(*sub, members)) {
                    ok = false;
                    break;
                }
                factors.emplace_back(*sub, members);
            }
            if (!ok) continue;
            Candidate smaller{*sub, factors};
            if (auto r = evaluate(smaller, clause, cfg)) {
                c = std::move(smaller);
                report = std::move(*r);
                progress = true;
            }
        }
        for (std::size_t i = 0; i < c.factors.size() && !progress && c.factors.size() > 1; ++i) {
            Candidate fewer = c;
            fewer.factors.erase(fewer.factors.begin() + static_cast<std::ptrdiff_t>(i));
            if (auto r = evaluate(fewer, clause, cfg)) {
                c = std::move(fewer);
                report = std::move(*r);
                progress = true;
            }
        }
    }
    return report;
}

bool hypotheses_hold(const CanonicalQM& qm, const std::vector<std::string>& dropped) {
    for (const auto& h : dropped) {
        if (h == kZeroDistributive && !qm.factors_0_distributive()) return false;
    }
    return true;
}

} // namespace

std::vector<Lattice> enumerate_lattices(std::size_t n) {
    std::vector<Lattice> out;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back(Lattice::build({"0"}, std::span<const Lattice::IndexPair>{}));
        return out;
    }
    const std::size_t k = n - 2;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) slots.emplace_back(i, j);
    if (slots.size() > 24) fail(Errc::InvalidArgument, "exhaustive enumeration is limited to 9 elements");
    std::set<std::vector<char>> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<char> rel(k * k, 0);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (mask >> s & 1) rel[slots[s].first * k + slots[s].second] = 1;
        // Only transitively closed relations, so each order is visited once.
        auto closed = rel;
        transitive_close(k, closed);
        if (closed != rel) continue;
        auto l = bounded_from_order(k, rel);
        if (!l) continue;
        if (seen.insert(canonical_form(*l)).second) out.push_back(std::move(*l));
    }
    return out;
}

std::optional<Lattice> random_lattice(std::size_t n, std::uint64_t& state, std::size_t attempts) {
    if (n < 2) return enumerate_lattices(n).empty() ? std::nullopt : std::optional<Lattice>(enumerate_lattices(n)[0]);
    std::mt19937_64 rng(state);
    const std::size_t k = n - 2;
    std::optional<Lattice> found;
    for (std::size_t a = 0; a < attempts && !found; ++a) {
        std::vector<char> rel(k * k, 0);
        const auto density = rng() % 100;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (rng() % 100 < density) rel[i * k + j] = 1;
        transitive_close(k, rel);
        found = bounded_from_order(k, rel);
    }
    state = rng();
    return found;
}

std::vector<TheoremReport> counterexample_search(const SearchConfig& cfg) {
    if (cfg.max_lattice_size == 0 || cfg.max_factor_count == 0 || cfg.max_carrier == 0)
        fail(Errc::InvalidArgument, "search budgets must be positive");
    for (const auto& h : cfg.drop_hypotheses)
        if (h != kZeroDistributive && h != kPrincipalFactors)
            fail(Errc::InvalidArgument, "unknown hypothesis '" + h + "' (known: 0-distributive, principal-factors)");

    std::vector<std::string> targets = cfg.targets;
    if (targets.empty()) {
        for (const auto& c : clause_catalog()) {
            if (c.probe) continue;
            bool relevant = cfg.drop_hypotheses.empty();
            for (const auto& h : c.hypotheses)
                relevant = relevant || std::find(cfg.drop_hypotheses.begin(), cfg.drop_hypotheses.end(), h) !=
                                           cfg.drop_hypotheses.end();
            if (relevant) targets.push_back(c.id);
        }
    } else {
        for (const auto& t : targets) {
            const auto& cat = clause_catalog();
            if (std::none_of(cat.begin(), cat.end(), [&](const ClauseInfo& c) { return c.id == t; }))
                fail(Errc::InvalidArgument, "unknown clause '" + t + "'");
        }
    }

    std::vector<Lattice> lattices;
    std::uint64_t state = cfg.seed;
    for (std::size_t n = 1; n <= cfg.max_lattice_size; ++n) {
        if (n <= cfg.exhaustive_up_to) {
            for (auto& l : enumerate_lattices(n)) lattices.push_back(std::move(l));
        } else {
            for (std::size_t s = 0; s < cfg.random_lattices; ++s)
                if (auto l = random_lattice(n, state)) lattices.push_back(std::move(*l));
        }
    }

    std::vector<TheoremReport> findings;
    std::vector<bool> done(targets.size(), false);
    for (const auto& L : lattices) {
        if (std::all_of(done.begin(), done.end(), [](bool d) { return d; })) break;
        const auto ideals = all_ideals(L);
        // Non-decreasing tuples of ideal indices, 1..max_factor_count long.
        std::vector<std::vector<std::size_t>> tuples;
        std::vector<std::size_t> cur;
        auto rec = [&](auto&& self, std::size_t from) -> void {
            if (!cur.empty()) tuples.push_back(cur);
            if (cur.size() == cfg.max_factor_count) return;
            for (std::size_t i = from; i < ideals.size(); ++i) {
                cur.push_back(i);
                self(self, i);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        for (const auto& t : tuples) {
            std::size_t carrier = 1;
            Candidate c{L, {}};
            for (auto i : t) carrier *= ideals[i].size(), c.factors.push_back(ideals[i]);
            if (carrier > cfg.max_carrier) continue;
            const CanonicalQM qm(L, c.factors);
            // With hypotheses dropped, only instances that actually violate one are of interest.
            if (!cfg.drop_hypotheses.empty() && hypotheses_hold(qm, cfg.drop_hypotheses) &&
                std::find(cfg.drop_hypotheses.begin(), cfg.drop_hypotheses.end(), std::string(kZeroDistributive)) !=
                    cfg.drop_hypotheses.end())
                continue;
            for (std::size_t ti = 0; ti < targets.size(); ++ti) {
                if (done[ti]) continue;
                if (auto r = evaluate(c, targets[ti], cfg)) {
                    auto m = minimize(c, std::move(*r), targets[ti], cfg);
                    m.detail = (m.detail.empty() ? "" : m.detail + "; ") + "found on a " + std::to_string(L.size()) +
                               "-element lattice with " + std::to_string(t.size()) + " factor(s), minimized";
                    findings.push_back(std::move(m));
                    done[ti] = true;
                }
            }
        }
    }
    return findings;
}

} // namespace qmlat
