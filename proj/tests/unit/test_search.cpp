#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "tri4/canonical.hpp"
#include "tri4/errors.hpp"
#include "tri4/families.hpp"
#include "tri4/kernel.hpp"
#include "tri4/search.hpp"

using namespace tri4;
using tri4::testing::random_relabel;

namespace {

Triangulation canon(const Triangulation& t) { return canonical_form(t).triangulation; }

// t2 = one deterministic Pachner move away from t1
std::pair<Triangulation, MoveStep> one_move(const Triangulation& t, int dim) {
    Triangulation c = canon(t);
    Skeleton sk = skeleton(c);
    for (const MoveStep& s : pachner_sites(c, sk))
        if (s.dim == dim) return {apply_move(c, sk, s, false), s};
    throw std::runtime_error("no site");
}

} // namespace

TEST_CASE("isomorphic inputs are rejected") {
    std::mt19937_64 rng(3);
    Triangulation t = family(FamilyKind::P, 1);
    SearchConfig cfg;
    CHECK_THROWS_AS(outside_in(t, random_relabel(t, rng), cfg), Error);
    CHECK_THROWS_AS(naive_bfs(t, random_relabel(t, rng), 2), Error);
}

TEST_CASE("a single 2-4 move is found with sequence length one") {
    Triangulation t1 = family(FamilyKind::P, 0);
    auto [t2, step] = one_move(t1, 3);
    SearchConfig cfg;
    cfg.headroom = 2;
    SearchOutcome res = outside_in(t1, t2, cfg);
    REQUIRE(res.result == SearchResult::Found);
    CHECK(res.sequence.size() == 1);
    CHECK(verify_sequence(t1, t2, res.sequence, t2.size() + 2).ok);

    SearchOutcome naive = naive_bfs(t1, t2, 2);
    REQUIRE(naive.result == SearchResult::Found);
    CHECK(naive.sequence.size() == 1);
}

TEST_CASE("no path exists within headroom zero between the two 2-pentachoron spheres") {
    Triangulation a = pillow_s4();
    Triangulation b = family(FamilyKind::P, 0);
    CHECK(naive_bfs(a, b, 0).result == SearchResult::NotFound);
    SearchConfig cfg;
    cfg.headroom = 0;
    CHECK(outside_in(a, b, cfg).result == SearchResult::NotFound);
}

TEST_CASE("pillow to P0 with headroom 2") {
    Triangulation a = pillow_s4();
    Triangulation b = family(FamilyKind::P, 0);
    SearchConfig cfg;
    cfg.headroom = 2;
    cfg.check_invariants = true;
    SearchOutcome res = outside_in(a, b, cfg);
    if (res.result == SearchResult::Found) {
        CHECK(verify_sequence(a, b, res.sequence, a.size() + 4).ok);
        SearchOutcome naive = naive_bfs(a, b, 2);
        REQUIRE(naive.result == SearchResult::Found);
        CHECK(naive.sequence.size() == res.sequence.size());
    } else {
        // cap 4 may be too tight; headroom 4 must succeed (acceptance covers it)
        CHECK(res.result == SearchResult::NotFound);
    }
}

TEST_CASE("oracle agreement on short random walks") {
    std::mt19937_64 rng(11);
    std::vector<Triangulation> bases = {family(FamilyKind::P, 0), family(FamilyKind::P, 1)};
    int done = 0;
    for (int trial = 0; trial < 8 && done < 4; ++trial) {
        Triangulation t1 = canon(bases[trial % bases.size()]);
        Triangulation t2 = t1;
        int moves = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < moves; ++i) {
            Skeleton sk = skeleton(t2);
            auto sites = pachner_sites(t2, sk);
            std::vector<MoveStep> usable;
            for (const MoveStep& s : sites)
                if (t2.size() + 2 * s.dim - 4 <= 8) usable.push_back(s);
            const MoveStep& pick = usable[rng() % usable.size()];
            t2 = canon(apply_move(t2, skeleton(t2), pick, false));
        }
        if (signature(t1) == signature(t2)) continue;
        const int k = 8 - std::max(t1.size(), t2.size());
        SearchConfig cfg;
        cfg.headroom = k;
        cfg.check_invariants = true;
        SearchOutcome a = outside_in(t1, t2, cfg);
        SearchOutcome b = naive_bfs(t1, t2, k);
        REQUIRE(a.result == SearchResult::Found);
        REQUIRE(b.result == SearchResult::Found);
        CHECK(a.sequence.size() == b.sequence.size());
        CHECK(verify_sequence(t1, t2, a.sequence, 8).ok);
        CHECK(verify_sequence(t1, t2, b.sequence, 8).ok);
        ++done;
    }
    CHECK(done >= 3);
}

TEST_CASE("search results are identical across thread counts") {
    Triangulation a = pillow_s4();
    Triangulation b = family(FamilyKind::P, 0);
    SearchConfig cfg;
    cfg.headroom = 2;
    cfg.threads = 1;
    SearchOutcome serial = outside_in(a, b, cfg);
    cfg.threads = 4;
    SearchOutcome parallel = outside_in(a, b, cfg);
    CHECK(serial.result == parallel.result);
    CHECK(serial.stats.visited == parallel.stats.visited);
    REQUIRE(serial.sequence.size() == parallel.sequence.size());
    for (size_t i = 0; i < serial.sequence.size(); ++i)
        CHECK(serial.sequence[i] == parallel.sequence[i]);
}

TEST_CASE("raising the headroom can only shorten the optimum") {
    Triangulation a = pillow_s4();
    Triangulation b = family(FamilyKind::P, 0);
    SearchConfig tight;
    tight.headroom = 4;
    SearchOutcome small = outside_in(a, b, tight);
    REQUIRE(small.result == SearchResult::Found);
    SearchConfig loose;
    loose.headroom = 6;
    SearchOutcome big = outside_in(a, b, loose);
    REQUIRE(big.result == SearchResult::Found);
    CHECK(big.sequence.size() <= small.sequence.size());
    CHECK(verify_sequence(a, b, big.sequence, 8).ok);
}

TEST_CASE("memory contract: far fewer signatures retained than visited") {
    Triangulation a = pillow_s4();
    Triangulation b = family(FamilyKind::P, 0);
    SearchConfig cfg;
    cfg.headroom = 4;
    SearchOutcome res = outside_in(a, b, cfg);
    REQUIRE(res.result == SearchResult::Found);

    // Retained state is two rings per side, the ring under construction, and
    // two regenerated rings during backtrace: bounded by twice the largest
    // consecutive-ring sums on each side.
    long max_l = 0, max_r = 0;
    std::vector<long> lsizes, rsizes;
    for (const RingStat& rs : res.stats.rings)
        (rs.side == 'L' ? lsizes : rsizes).push_back(rs.size);
    for (size_t i = 0; i + 1 < lsizes.size(); ++i)
        max_l = std::max(max_l, lsizes[i] + lsizes[i + 1]);
    for (size_t i = 0; i + 1 < rsizes.size(); ++i)
        max_r = std::max(max_r, rsizes[i] + rsizes[i + 1]);
    CHECK(res.stats.peak_stored <= 2 * (max_l + max_r));

    // and the bidirectional search stores far less than the naive oracle
    SearchOutcome naive = naive_bfs(a, b, 4);
    REQUIRE(naive.result == SearchResult::Found);
    CHECK(res.stats.peak_stored < naive.stats.peak_stored);
}

TEST_CASE("ring size limit aborts the search") {
    Triangulation a = pillow_s4();
    Triangulation b = family(FamilyKind::P, 0);
    SearchConfig cfg;
    cfg.headroom = 4;
    cfg.ring_size_limit = 2;
    SearchOutcome res = outside_in(a, b, cfg);
    CHECK(res.result == SearchResult::Aborted);
    CHECK(!res.abort_reason.empty());
}

TEST_CASE("simplification restarts find a 5-1 reduction immediately") {
    Triangulation t2 = canon(family(FamilyKind::P, 0));
    Skeleton sk = skeleton(t2);
    Triangulation t1 = canon(pachner_apply(t2, sk, 4, 0)); // one 1-5 move bigger
    SearchConfig cfg;
    cfg.headroom = 2;
    cfg.simplify = true;
    SearchOutcome res = outside_in(t1, t2, cfg);
    REQUIRE(res.result == SearchResult::Found);
    CHECK(res.sequence.size() == 1);
    CHECK(verify_sequence(t1, t2, res.sequence, t1.size() + 2).ok);
}

TEST_CASE("simplification crosses generations with stitched backtrace") {
    // two 1-5 moves above P0; the simplify search must reseed (twice) on its
    // way down and still emit a replayable certificate to the pillow sphere
    Triangulation base = canon(family(FamilyKind::P, 0));
    Triangulation t1 = canon(pachner_apply(base, skeleton(base), 4, 0));
    t1 = canon(pachner_apply(t1, skeleton(t1), 4, 0));
    REQUIRE(t1.size() == 10);
    Triangulation t2 = pillow_s4();
    // headroom 4: the reseeds tighten the cap down to 6, where the base
    // spheres are still connected
    SearchConfig cfg;
    cfg.headroom = 4;
    cfg.simplify = true;
    SearchOutcome res = outside_in(t1, t2, cfg);
    REQUIRE(res.result == SearchResult::Found);
    CHECK(verify_sequence(t1, t2, res.sequence, 14).ok);
    // the left side reseeded at least once
    bool reseeded = false;
    for (const RingStat& r : res.stats.rings) reseeded |= r.generation > 1;
    CHECK(reseeded);
}

TEST_CASE("simplify mode flags both sides complete before giving up") {
    SearchConfig cfg;
    cfg.headroom = 0;
    cfg.simplify = true;
    SearchOutcome res = outside_in(pillow_s4(), family(FamilyKind::P, 0), cfg);
    CHECK(res.result == SearchResult::NotFound);
    // both sides expanded at least their first ring
    bool l = false, r = false;
    for (const RingStat& rs : res.stats.rings) {
        l |= rs.side == 'L';
        r |= rs.side == 'R';
    }
    CHECK(l);
    CHECK(r);
}

TEST_CASE("simplify-mode sequences replay even when longer") {
    Triangulation t1 = pillow_s4();
    Triangulation t2 = family(FamilyKind::P, 0);
    SearchConfig plain;
    plain.headroom = 3;
    SearchOutcome best = outside_in(t1, t2, plain);
    SearchConfig cfg;
    cfg.headroom = 3;
    cfg.simplify = true;
    SearchOutcome res = outside_in(t1, t2, cfg);
    if (res.result == SearchResult::Found && best.result == SearchResult::Found) {
        CHECK(res.sequence.size() >= best.sequence.size());
        CHECK(verify_sequence(t1, t2, res.sequence, t1.size() + 3).ok);
    }
}

TEST_CASE("verify rejects tampered certificates") {
    Triangulation t1 = family(FamilyKind::P, 0);
    auto [t2, step] = one_move(t1, 3);
    SearchConfig cfg;
    cfg.headroom = 2;
    SearchOutcome res = outside_in(t1, t2, cfg);
    REQUIRE(res.result == SearchResult::Found);

    // out-of-range face index fails at that step
    std::vector<MoveStep> bad = res.sequence;
    bad[0].index = 9999;
    VerifyResult vr = verify_sequence(t1, t2, bad, 20);
    CHECK(!vr.ok);
    CHECK(vr.failed_step == 0);

    // wrong endpoint fails at the final comparison
    VerifyResult vr2 = verify_sequence(t1, family(FamilyKind::P, 1), res.sequence, 20);
    CHECK(!vr2.ok);

    // cap violations are reported
    VerifyResult vr3 = verify_sequence(t1, t2, res.sequence, 1);
    CHECK(!vr3.ok);
}

TEST_CASE("prepass shortens an obviously reducible input") {
    // t1 = P0 after a 1-5 move: the pre-pass cannot use Pachner moves, but a
    // collapse reduces it back
    Triangulation t2 = canon(family(FamilyKind::P, 1));
    Skeleton sk = skeleton(t2);
    Triangulation t1 = canon(pachner_apply(t2, sk, 4, 0));
    auto [simplified, steps] = simplify_prepass(t1, true);
    CHECK(simplified.size() <= t1.size());
    if (!steps.empty()) {
        CHECK(verify_sequence(t1, simplified, steps, t1.size()).ok);
    }
}
