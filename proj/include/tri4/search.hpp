#pragma once

#include <string>
#include <vector>

#include "tri4/moves.hpp"
#include "tri4/triangulation.hpp"

namespace tri4 {

struct SearchConfig {
    int headroom = 2;         // size cap = max(f4(t1), f4(t2)) + headroom
    bool simplify = false;    // restart a side whenever it finds a smaller triangulation
    long ring_size_limit = 0; // 0 = unlimited; exceeded rings abort the search
    bool safe_mode = true;    // assert homology preservation on pre-pass moves
    int threads = 1;          // ring expansion workers; results are thread-count invariant
    bool check_invariants = false; // debug: full ring disjointness verification
    bool prepass = false;     // greedy 2-0/collapse simplification of t1 before searching
};

enum class SearchResult { Found, NotFound, Aborted };

struct RingStat {
    char side;      // 'L' or 'R'
    int generation; // increments on simplification restarts
    int depth;
    long size;
};

struct SearchStats {
    long rings_expanded = 0;
    long peak_stored = 0; // signatures retained at once (rings + backtrace)
    long visited = 0;     // neighbor triangulations generated
    std::vector<RingStat> rings;
};

struct SearchOutcome {
    SearchResult result = SearchResult::NotFound;
    std::vector<MoveStep> sequence; // meaningful iff result == Found
    std::string abort_reason;
    SearchStats stats;
};

/// Single-sided breadth-first oracle: stores every visited signature and a
/// parent record per state, returns a shortest cap-respecting sequence.
SearchOutcome naive_bfs(const Triangulation& t1, const Triangulation& t2, int headroom,
                        long state_limit = 0);

/// Bidirectional outside-in search. Expands the smaller frontier first (ties
/// expand the left side), keeps only the two most recent rings per side plus
/// the opposite frontier, and reconstructs the move sequence by regenerating
/// rings rather than storing parents. With cfg.simplify the side that
/// discovers a smaller triangulation restarts from it (generation bump); one
/// parent record per generation stitches the backtrace together.
///
/// Throws Error(IsomorphicInputs) when the endpoints are already isomorphic.
SearchOutcome outside_in(const Triangulation& t1, const Triangulation& t2,
                         const SearchConfig& cfg);

struct VerifyResult {
    bool ok = false;
    int failed_step = -1; // first failing step, -1 when ok
    std::string message;
};

/// Replays a move sequence from t1, checking that every step applies, every
/// intermediate stays within the cap (cap < 0 disables the check), and the
/// final signature equals t2's.
VerifyResult verify_sequence(const Triangulation& t1, const Triangulation& t2,
                             const std::vector<MoveStep>& seq, int cap);

/// Greedy size-reducing 2-0/collapse pre-pass. Returns the simplified
/// triangulation (canonical form) and the steps taken, for prepending to a
/// search certificate.
std::pair<Triangulation, std::vector<MoveStep>> simplify_prepass(const Triangulation& t,
                                                                 bool safe = true);

/// Valid Pachner neighbors of a canonically labelled triangulation, in
/// canonical site order; results with more than `cap` pentachora are skipped
/// (cap < 0 disables the check). One frontier member's worth of expansion.
struct Neighbor {
    MoveStep step;
    std::string sig;
    int f4;
};
std::vector<Neighbor> pachner_neighbors(const Triangulation& canon, int cap);

} // namespace tri4
