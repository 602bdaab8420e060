#include "tri4/search.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "tri4/canonical.hpp"
#include "tri4/errors.hpp"
#include "tri4/skeleton.hpp"

namespace tri4 {

namespace {

int sig_size(const std::string& sig) {
    // "d<dim>:<n>:..."
    size_t colon = sig.find(':', 3);
    return std::stoi(sig.substr(3, colon - 3));
}

bool sorted_contains(const std::vector<std::string>& v, const std::string& s) {
    return std::binary_search(v.begin(), v.end(), s);
}

} // namespace

std::vector<Neighbor> pachner_neighbors(const Triangulation& canon, int cap) {
    std::vector<Neighbor> out;
    Skeleton sk = skeleton(canon);
    for (const MoveStep& step : pachner_sites(canon, sk)) {
        const int nf4 = canon.size() + 2 * step.dim - 4;
        if (cap >= 0 && nf4 > cap) continue;
        Triangulation next = pachner_apply(canon, sk, step.dim, step.index);
        out.push_back({step, signature(next), nf4});
    }
    return out;
}

namespace {

// One generated child during a ring expansion, in deterministic scan order.
struct Child {
    int parent;   // index into the (sorted) frontier
    MoveStep step;
    std::string sig;
    int f4;
};

std::vector<Child> expand_frontier(const std::vector<std::string>& frontier, int cap,
                                   int threads, long* visited) {
    std::vector<std::vector<Neighbor>> per(frontier.size());
    std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 1 ? threads : 1) \
    if (threads > 1)
#endif
    for (size_t m = 0; m < frontier.size(); ++m) {
        try {
            per[m] = pachner_neighbors(parse_signature(frontier[m]), cap);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<Child> out;
    for (size_t m = 0; m < frontier.size(); ++m) {
        for (auto& nb : per[m]) out.push_back({static_cast<int>(m), nb.step, std::move(nb.sig), nb.f4});
        *visited += static_cast<long>(per[m].size());
    }
    return out;
}

struct Seam {
    std::string parent_sig; // member of the previous generation's frontier
    int parent_depth;       // its ring index there
    MoveStep step;          // parent -> seed
    std::string seed_sig;
};

struct SideState {
    char name = ' ';
    std::string seed; // current generation seed
    int generation = 1;
    int depth = 1;                     // index of the frontier ring
    std::vector<std::string> prev;     // ring depth-1, sorted
    std::vector<std::string> frontier; // ring depth, sorted
    bool complete = false;
    std::vector<Seam> seams;                    // seams[g-2] created generation g
    std::vector<std::vector<int>> cap_history;  // [generation-1][depth] = cap used
                                                // when expanding that ring

    void record_cap(int cap) {
        while (static_cast<int>(cap_history.size()) < generation) cap_history.emplace_back();
        auto& h = cap_history[generation - 1];
        while (static_cast<int>(h.size()) <= depth) h.push_back(cap);
        h[depth] = cap;
    }
};

// Debug-mode ring archive for full disjointness verification.
struct RingArchive {
    // (side, generation) -> rings by depth
    std::map<std::pair<char, int>, std::vector<std::vector<std::string>>> rings;

    void add(char side, int gen, int depth, const std::vector<std::string>& ring) {
        auto& v = rings[{side, gen}];
        while (static_cast<int>(v.size()) <= depth) v.emplace_back();
        v[depth] = ring;
    }

    static bool disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b,
                         const std::string* allowed) {
        for (const auto& s : a) {
            if (allowed && s == *allowed) continue;
            if (sorted_contains(b, s)) return false;
        }
        return true;
    }

    // Same-side rings of one generation must be pairwise disjoint; before an
    // overlap is found, rings of opposite sides must not intersect at all.
    void check(bool cross_sides, const std::string* overlap) const {
        for (const auto& [key, by_depth] : rings) {
            for (size_t a = 0; a < by_depth.size(); ++a)
                for (size_t b = a + 1; b < by_depth.size(); ++b)
                    if (!disjoint(by_depth[a], by_depth[b], nullptr))
                        throw Error(Err::InvalidInput,
                                    "ring disjointness violated on one side");
        }
        if (!cross_sides) return;
        for (const auto& [ka, ra] : rings) {
            if (ka.first != 'L') continue;
            for (const auto& [kb, rb] : rings) {
                if (kb.first != 'R') continue;
                for (const auto& a : ra)
                    for (const auto& b : rb)
                        if (!disjoint(a, b, overlap))
                            throw Error(Err::InvalidInput,
                                        "cross-side ring disjointness violated");
            }
        }
    }
};

struct Searcher {
    const SearchConfig& cfg;
    SearchStats stats;
    int n_max = 0;
    int cap = 0;
    SideState L, R;
    RingArchive archive;
    std::string overlap_sig;

    explicit Searcher(const SearchConfig& c) : cfg(c) {
        L.name = 'L';
        R.name = 'R';
    }

    long stored_now(long extra) const {
        return static_cast<long>(L.prev.size() + L.frontier.size() + R.prev.size() +
                                 R.frontier.size()) +
               extra;
    }
    void bump_peak(long extra) { stats.peak_stored = std::max(stats.peak_stored, stored_now(extra)); }

    void recompute_cap() {
        n_max = std::max(sig_size(L.seed), sig_size(R.seed));
        cap = n_max + cfg.headroom;
    }

    enum class StepOutcome { RingDone, Overlap, Reseeded, Empty, Abort };

    // Executes Step 2/2' for `side`; `other` provides the opposite frontier.
    StepOutcome expand(SideState& side, SideState& other, std::string* abort_reason) {
        side.record_cap(cap);
        std::vector<Child> children =
            expand_frontier(side.frontier, cap, cfg.threads, &stats.visited);
        ++stats.rings_expanded;

        std::unordered_set<std::string> fresh;
        std::vector<std::string> ring;
        for (Child& ch : children) {
            bump_peak(static_cast<long>(ring.size()) + 1);
            // (a) membership checks consult only the two newest rings.
            if (!sorted_contains(side.prev, ch.sig) && !sorted_contains(side.frontier, ch.sig) &&
                fresh.insert(ch.sig).second)
                ring.push_back(ch.sig);
            if (cfg.ring_size_limit > 0 &&
                static_cast<long>(ring.size()) > cfg.ring_size_limit) {
                *abort_reason = "ring size limit exceeded on side " + std::string(1, side.name);
                return StepOutcome::Abort;
            }
            // (b) overlap against the opposite frontier.
            if (sorted_contains(other.frontier, ch.sig)) {
                overlap_sig = ch.sig;
                side.prev = side.frontier;
                std::sort(ring.begin(), ring.end());
                side.frontier = std::move(ring);
                side.depth += 1;
                return StepOutcome::Overlap;
            }
            // (c) simplification reset.
            if (cfg.simplify && ch.f4 < sig_size(side.seed)) {
                side.seams.push_back(
                    {side.frontier[ch.parent], side.depth, ch.step, ch.sig});
                side.generation += 1;
                side.seed = ch.sig;
                side.prev.clear();
                side.frontier = {ch.sig};
                side.depth = 1;
                recompute_cap();
                return StepOutcome::Reseeded;
            }
        }
        if (ring.empty()) return StepOutcome::Empty;
        side.prev = side.frontier;
        std::sort(ring.begin(), ring.end());
        side.frontier = std::move(ring);
        side.depth += 1;
        stats.rings.push_back({side.name, side.generation, side.depth,
                               static_cast<long>(side.frontier.size())});
        if (cfg.check_invariants) {
            archive.add(side.name, side.generation, side.depth, side.frontier);
            archive.check(!cfg.simplify, nullptr);
        }
        bump_peak(0);
        return StepOutcome::RingDone;
    }

    // Regenerates ring `depth` of one side's generation by re-running the
    // single-sided expansion from its seed (keeping two rings at a time).
    std::vector<std::string> regen_ring(const SideState& side, int generation, int depth) {
        std::string seed = generation == 1
                               ? (side.name == 'L' ? first_seed_L : first_seed_R)
                               : side.seams[generation - 2].seed_sig;
        std::vector<std::string> prev;
        std::vector<std::string> frontier{seed};
        const auto& caps = side.cap_history[generation - 1];
        for (int d = 1; d < depth; ++d) {
            long dummy = 0;
            int c = caps[std::min<size_t>(d, caps.size() - 1)];
            std::vector<Child> children = expand_frontier(frontier, c, cfg.threads, &dummy);
            std::unordered_set<std::string> fresh;
            std::vector<std::string> ring;
            for (Child& ch : children) {
                if (!sorted_contains(prev, ch.sig) && !sorted_contains(frontier, ch.sig) &&
                    fresh.insert(ch.sig).second)
                    ring.push_back(ch.sig);
            }
            std::sort(ring.begin(), ring.end());
            prev = std::move(frontier);
            frontier = std::move(ring);
            bump_peak(static_cast<long>(prev.size() + frontier.size()));
        }
        return frontier;
    }

    std::string first_seed_L, first_seed_R;

    // First Pachner neighbor of `from` (canonical site order) whose signature
    // is `to`; both are canonical forms.
    MoveStep move_between(const std::string& from, const std::string& to) {
        Triangulation t = parse_signature(from);
        for (const Neighbor& nb : pachner_neighbors(t, -1))
            if (nb.sig == to) return nb.step;
        throw Error(Err::InvalidInput, "backtrace: adjacent signatures not adjacent");
    }

    // Path of moves from the generation seed to `sig` sitting at ring
    // `depth`, returned in forward order (seed -> sig).
    std::vector<std::pair<std::string, std::string>> unwind(const SideState& side,
                                                            int generation,
                                                            std::string sig, int depth) {
        std::vector<std::pair<std::string, std::string>> edges; // (from, to), reversed
        std::string cur = sig;
        for (int a = depth - 1; a >= 1; --a) {
            std::vector<std::string> ring = regen_ring(side, generation, a);
            std::string parent;
            for (const Neighbor& nb : pachner_neighbors(parse_signature(cur), -1)) {
                if (sorted_contains(ring, nb.sig)) {
                    parent = nb.sig;
                    break;
                }
            }
            if (parent.empty())
                throw Error(Err::InvalidInput, "backtrace: no parent in the previous ring");
            edges.emplace_back(parent, cur);
            cur = parent;
        }
        std::reverse(edges.begin(), edges.end());
        return edges;
    }

    // Complete move path from the original seed of `side` out to `sig` at
    // (generation, depth), crossing the simplification seams.
    void trace_side(const SideState& side, std::string sig, int depth,
                    std::vector<std::pair<std::string, std::string>>& edges) {
        int gen = side.generation;
        std::string cur = sig;
        int d = depth;
        std::vector<std::vector<std::pair<std::string, std::string>>> chunks;
        while (true) {
            chunks.push_back(unwind(side, gen, cur, d));
            if (gen == 1) break;
            const Seam& seam = side.seams[gen - 2];
            chunks.push_back({{seam.parent_sig, seam.seed_sig}});
            cur = seam.parent_sig;
            d = seam.parent_depth;
            gen -= 1;
        }
        for (auto it = chunks.rbegin(); it != chunks.rend(); ++it)
            edges.insert(edges.end(), it->begin(), it->end());
    }
};

} // namespace

SearchOutcome outside_in(const Triangulation& t1, const Triangulation& t2,
                         const SearchConfig& cfg) {
    SearchOutcome out;
    std::vector<MoveStep> prefix;
    CanonicalForm c1 = canonical_form(t1, cfg.threads);
    if (cfg.prepass) {
        auto [simplified, steps] = simplify_prepass(c1.triangulation, cfg.safe_mode);
        prefix = std::move(steps);
        c1 = canonical_form(simplified, cfg.threads);
    }
    CanonicalForm c2 = canonical_form(t2, cfg.threads);
    if (c1.signature == c2.signature) {
        if (!prefix.empty()) {
            // The pre-pass alone already reached the target.
            out.result = SearchResult::Found;
            out.sequence = std::move(prefix);
            return out;
        }
        throw Error(Err::IsomorphicInputs, "the inputs are combinatorially isomorphic");
    }

    Searcher s(cfg);
    s.L.seed = s.first_seed_L = c1.signature;
    s.R.seed = s.first_seed_R = c2.signature;
    s.L.frontier = {c1.signature};
    s.R.frontier = {c2.signature};
    s.recompute_cap();
    s.stats.rings.push_back({'L', 1, 1, 1});
    s.stats.rings.push_back({'R', 1, 1, 1});
    s.bump_peak(0);
    if (cfg.check_invariants) {
        s.archive.add('L', 1, 1, s.L.frontier);
        s.archive.add('R', 1, 1, s.R.frontier);
    }

    bool expand_left = true; // Step 1 always enters Step 2 first
    while (true) {
        SideState& side = expand_left ? s.L : s.R;
        SideState& other = expand_left ? s.R : s.L;
        std::string abort_reason;
        auto result = s.expand(side, other, &abort_reason);
        if (result == Searcher::StepOutcome::Abort) {
            out.result = SearchResult::Aborted;
            out.abort_reason = abort_reason;
            out.stats = s.stats;
            return out;
        }
        if (result == Searcher::StepOutcome::Overlap) break;
        if (result == Searcher::StepOutcome::Empty) {
            if (!cfg.simplify) {
                // Verbatim Step 3: an exhausted side ends the search.
                out.result = SearchResult::NotFound;
                out.stats = s.stats;
                return out;
            }
            side.complete = true;
            if (s.L.complete && s.R.complete) {
                out.result = SearchResult::NotFound;
                out.stats = s.stats;
                return out;
            }
            expand_left = !s.L.complete;
            continue;
        }
        // Alternation: the smaller frontier expands next, ties to the left.
        if (cfg.simplify && s.L.complete)
            expand_left = false;
        else if (cfg.simplify && s.R.complete)
            expand_left = true;
        else
            expand_left = s.L.frontier.size() <= s.R.frontier.size();
    }

    if (cfg.check_invariants) s.archive.check(!cfg.simplify, &s.overlap_sig);

    // Backtrace. The finder's depth was bumped as it met the overlap, so on
    // both sides the overlap sits at the current frontier depth.
    std::vector<std::pair<std::string, std::string>> left_edges, right_edges;
    s.trace_side(s.L, s.overlap_sig, s.L.depth, left_edges);
    s.trace_side(s.R, s.overlap_sig, s.R.depth, right_edges);

    out.sequence = prefix;
    for (const auto& [from, to] : left_edges) out.sequence.push_back(s.move_between(from, to));
    for (auto it = right_edges.rbegin(); it != right_edges.rend(); ++it)
        out.sequence.push_back(s.move_between(it->second, it->first));
    out.result = SearchResult::Found;
    out.stats = s.stats;
    return out;
}

SearchOutcome naive_bfs(const Triangulation& t1, const Triangulation& t2, int headroom,
                        long state_limit) {
    SearchOutcome out;
    CanonicalForm c1 = canonical_form(t1);
    CanonicalForm c2 = canonical_form(t2);
    if (c1.signature == c2.signature)
        throw Error(Err::IsomorphicInputs, "the inputs are combinatorially isomorphic");
    const int cap = std::max(t1.size(), t2.size()) + headroom;

    struct ParentRec {
        std::string parent;
        MoveStep step;
    };
    std::map<std::string, ParentRec> visited;
    visited.emplace(c1.signature, ParentRec{});
    std::vector<std::string> frontier{c1.signature};
    std::string found;
    while (!found.size() && !frontier.empty()) {
        std::vector<std::string> next;
        for (const std::string& sig : frontier) {
            for (const Neighbor& nb : pachner_neighbors(parse_signature(sig), cap)) {
                ++out.stats.visited;
                if (visited.count(nb.sig)) continue;
                visited.emplace(nb.sig, ParentRec{sig, nb.step});
                next.push_back(nb.sig);
                if (nb.sig == c2.signature) {
                    found = nb.sig;
                    break;
                }
            }
            if (!found.empty()) break;
        }
        ++out.stats.rings_expanded;
        frontier = std::move(next);
        out.stats.peak_stored = std::max(out.stats.peak_stored,
                                         static_cast<long>(visited.size()));
        if (state_limit > 0 && static_cast<long>(visited.size()) > state_limit) {
            out.result = SearchResult::Aborted;
            out.abort_reason = "state limit exceeded";
            return out;
        }
    }
    if (found.empty()) {
        out.result = SearchResult::NotFound;
        return out;
    }
    std::vector<MoveStep> seq;
    std::string cur = found;
    while (cur != c1.signature) {
        const ParentRec& rec = visited.at(cur);
        seq.push_back(rec.step);
        cur = rec.parent;
    }
    std::reverse(seq.begin(), seq.end());
    out.sequence = std::move(seq);
    out.result = SearchResult::Found;
    return out;
}

VerifyResult verify_sequence(const Triangulation& t1, const Triangulation& t2,
                             const std::vector<MoveStep>& seq, int cap) {
    VerifyResult res;
    Triangulation cur = canonical_form(t1).triangulation;
    const std::string target = signature(t2);
    if (cap >= 0 && cur.size() > cap) {
        res.failed_step = 0;
        res.message = "start already exceeds the size cap";
        return res;
    }
    for (size_t i = 0; i < seq.size(); ++i) {
        try {
            Skeleton sk = skeleton(cur);
            Triangulation next = apply_move(cur, sk, seq[i], /*safe=*/false);
            cur = canonical_form(next).triangulation;
        } catch (const Error& e) {
            res.failed_step = static_cast<int>(i);
            res.message = e.what();
            return res;
        }
        if (cap >= 0 && cur.size() > cap) {
            res.failed_step = static_cast<int>(i);
            res.message = "intermediate exceeds the size cap";
            return res;
        }
    }
    if (signature(cur) != target) {
        res.failed_step = static_cast<int>(seq.size());
        res.message = "final triangulation does not match the target";
        return res;
    }
    res.ok = true;
    return res;
}

std::pair<Triangulation, std::vector<MoveStep>> simplify_prepass(const Triangulation& t,
                                                                 bool safe) {
    Triangulation cur = canonical_form(t).triangulation;
    std::vector<MoveStep> steps;
    bool progress = true;
    while (progress) {
        progress = false;
        Skeleton sk = skeleton(cur);
        for (const MoveStep& step : simplify_sites(cur, sk, safe)) {
            Triangulation next = apply_move(cur, sk, step, safe);
            steps.push_back(step);
            cur = canonical_form(next).triangulation;
            progress = true;
            break; // re-derive canonical labels before the next step
        }
    }
    return {cur, steps};
}

} // namespace tri4
