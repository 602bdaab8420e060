#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "tri4/canonical.hpp"
#include "tri4/errors.hpp"
#include "tri4/families.hpp"
#include "tri4/homology.hpp"
#include "tri4/kernel.hpp"
#include "tri4/moves.hpp"

using namespace tri4;
using tri4::testing::random_relabel;

namespace {

Triangulation canon(const Triangulation& t) { return canonical_form(t).triangulation; }

// Applies the first valid Pachner site of the given dimension; -1 if none.
int first_site(const Triangulation& t, const Skeleton& sk, int dim) {
    const int count = dim == 4 ? t.size() : static_cast<int>(sk.faces(dim).size());
    for (int i = 0; i < count; ++i)
        if (pachner_valid(t, sk, dim, i)) return i;
    return -1;
}

} // namespace

TEST_CASE("1-5 moves are always valid and add four pentachora") {
    Triangulation t = family(FamilyKind::P, 0);
    Skeleton sk = skeleton(t);
    for (int i = 0; i < t.size(); ++i) CHECK(pachner_valid(t, sk, 4, i));
    Triangulation u = pachner_apply(t, sk, 4, 0);
    CHECK(u.size() == 6);
    CHECK(validate(u).valid());
    CHECK(homology(u) == homology(t));
}

TEST_CASE("a 2-4 move on P0 yields a 4-pentachoron homology sphere") {
    Triangulation t = family(FamilyKind::P, 0);
    Skeleton sk = skeleton(t);
    int site = first_site(t, sk, 3);
    REQUIRE(site >= 0);
    Triangulation u = pachner_apply(t, sk, 3, site);
    CHECK(u.size() == 4);
    CHECK(validate(u).valid());
    CHECK(u.is_closed());
    CHECK(homology(u) == homology(t));
}

TEST_CASE("f4 deltas are 2*dim - 4") {
    // walk until each dimension has fired at least once
    Triangulation t = canon(family(FamilyKind::P, 0));
    std::array<bool, 5> fired{false, false, false, false, false};
    for (int step = 0; step < 25; ++step) {
        Skeleton sk = skeleton(t);
        auto sites = pachner_sites(t, sk);
        REQUIRE(!sites.empty());
        // prefer an unfired dimension, otherwise shrink if too big
        MoveStep pick = sites.front();
        for (const MoveStep& s : sites)
            if (!fired[s.dim]) {
                pick = s;
                break;
            }
        if (fired[pick.dim] && t.size() > 8) {
            for (const MoveStep& s : sites)
                if (s.dim <= 1) {
                    pick = s;
                    break;
                }
        }
        Triangulation u = pachner_apply(t, skeleton(t), pick.dim, pick.index);
        CHECK(u.size() - t.size() == 2 * pick.dim - 4);
        fired[pick.dim] = true;
        t = canon(u);
        if (fired[0] && fired[1] && fired[2] && fired[3] && fired[4]) break;
    }
    CHECK(fired[4]);
    CHECK(fired[3]);
    CHECK(fired[1]);
    CHECK(fired[0]);
    // 3-3 sites are rarer; accept if the walk above found one
    WARN(fired[2]);
}

TEST_CASE("the vertex created by a 1-5 move admits the inverse 5-1 move") {
    Triangulation t = canon(family(FamilyKind::P, 0));
    std::string before = signature(t);
    Skeleton sk = skeleton(t);
    Triangulation u = canon(pachner_apply(t, sk, 4, 0));
    Skeleton sku = skeleton(u);
    bool restored = false;
    for (int i = 0; i < static_cast<int>(sku.faces(0).size()) && !restored; ++i) {
        if (!pachner_valid(u, sku, 0, i)) continue;
        restored = signature(pachner_apply(u, sku, 0, i)) == before;
    }
    CHECK(restored);
}

TEST_CASE("2-4 then 4-2 at the created edge restores the signature") {
    Triangulation t = canon(family(FamilyKind::P, 1));
    std::string before = signature(t);
    Skeleton sk = skeleton(t);
    int site = first_site(t, sk, 3);
    REQUIRE(site >= 0);
    Triangulation u = canon(pachner_apply(t, sk, 3, site));
    Skeleton sku = skeleton(u);
    bool restored = false;
    for (int i = 0; i < static_cast<int>(sku.faces(1).size()) && !restored; ++i) {
        if (!pachner_valid(u, sku, 1, i)) continue;
        restored = signature(pachner_apply(u, sku, 1, i)) == before;
    }
    CHECK(restored);
}

TEST_CASE("every valid site admits an inverse move restoring the signature") {
    // walk a few states to cover all five move dimensions
    std::vector<Triangulation> states;
    states.push_back(canon(family(FamilyKind::P, 1)));
    states.push_back(canon(family(FamilyKind::A, 1)));
    {
        Triangulation t = states[0];
        t = canon(pachner_apply(t, skeleton(t), 4, 0));
        states.push_back(t);
    }
    for (const Triangulation& t : states) {
        const std::string before = signature(t);
        Skeleton sk = skeleton(t);
        for (const MoveStep& site : pachner_sites(t, sk)) {
            Triangulation moved = canon(pachner_apply(t, sk, site.dim, site.index));
            Skeleton skm = skeleton(moved);
            const int inv_dim = 4 - site.dim;
            bool restored = false;
            const int count = inv_dim == 4 ? moved.size()
                                           : static_cast<int>(skm.faces(inv_dim).size());
            for (int i = 0; i < count && !restored; ++i) {
                if (!pachner_valid(moved, skm, inv_dim, i)) continue;
                restored = signature(pachner_apply(moved, skm, inv_dim, i)) == before;
            }
            CHECK(restored);
        }
    }
}

TEST_CASE("a self-glued degree-2 ridge is not a Pachner site") {
    Triangulation t = dsb2();
    Skeleton sk = skeleton(t);
    for (int i = 0; i < static_cast<int>(sk.faces(3).size()); ++i) {
        const FaceClass& f = sk.faces(3)[i];
        if (f.boundary) continue;
        CHECK(f.degree() == 2);
        CHECK(f.members[0].simplex == f.members[1].simplex);
        CHECK(!pachner_valid(t, sk, 3, i));
    }
}

TEST_CASE("move application commutes with relabeling") {
    std::mt19937_64 rng(17);
    Triangulation t = family(FamilyKind::E, 1);
    Skeleton sk = skeleton(t);
    int site = first_site(t, sk, 3);
    REQUIRE(site >= 0);
    const FaceClass::Member rep = sk.faces(3)[site].rep();
    std::string direct = signature(pachner_apply(t, sk, 3, site));

    for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> smap(t.size());
        for (size_t i = 0; i < smap.size(); ++i) smap[i] = static_cast<int>(i);
        std::shuffle(smap.begin(), smap.end(), rng);
        std::vector<Perm> vmaps;
        for (int i = 0; i < t.size(); ++i)
            vmaps.push_back(Perm::from_index(5, static_cast<int>(rng() % 120)));
        Triangulation r = t.relabel(smap, vmaps);
        Skeleton skr = skeleton(r);
        uint8_t rmask = apply_perm_to_mask(vmaps[rep.simplex], rep.mask);
        int rsite = skr.class_index(3, smap[rep.simplex], rmask);
        REQUIRE(pachner_valid(r, skr, 3, rsite));
        CHECK(signature(pachner_apply(r, skr, 3, rsite)) == direct);
    }
}

TEST_CASE("Pachner moves commute with ungluing and regluing") {
    Triangulation t = family(FamilyKind::P, 1);
    Skeleton sk = skeleton(t);
    const int site = first_site(t, sk, 3);
    REQUIRE(site >= 0);
    const FaceClass& f = sk.faces(3)[site];
    std::string direct = signature(pachner_apply(t, sk, 3, site));

    // A ridge whose pentachora avoid the star of f.
    Site cut_site{-1, -1};
    Entry cut_entry;
    for (int q = 0; q < t.size() && cut_site.simplex < 0; ++q) {
        bool in_star = false;
        for (const auto& m : f.members) in_star |= m.simplex == q;
        if (in_star) continue;
        for (int s = 0; s < 5; ++s) {
            const Entry& e = t.entry(q, s);
            if (e.is_boundary()) continue;
            bool target_in_star = false;
            for (const auto& m : f.members) target_in_star |= m.simplex == e.target;
            if (!target_in_star) {
                cut_site = {q, s};
                cut_entry = e;
                break;
            }
        }
    }
    REQUIRE(cut_site.simplex >= 0);

    Triangulation cut = unglue(t, cut_site);
    Skeleton skc = skeleton(cut);
    int cut_f = skc.class_index(3, f.rep().simplex, f.rep().mask);
    REQUIRE(pachner_valid(cut, skc, 3, cut_f));
    Triangulation moved = pachner_apply(cut, skc, 3, cut_f);

    auto open = moved.boundary_sites();
    REQUIRE(open.size() == 2);
    bool matches = false;
    for (const Perm& p : {cut_entry.perm, cut_entry.perm.inverse()}) {
        for (int flip = 0; flip < 2 && !matches; ++flip) {
            Site a = flip ? open[1] : open[0];
            Site b = flip ? open[0] : open[1];
            if (p(a.slot) != b.slot) continue;
            try {
                matches = signature(reglue(moved, a, b, p)) == direct;
            } catch (const Error&) {
            }
        }
    }
    CHECK(matches);
}

TEST_CASE("a 1-5 / 4-2 sequence builds a vertex pillow that flattens back") {
    Triangulation t = canon(family(FamilyKind::P, 0));
    std::string original = signature(t);
    HomologyGroups h = homology(t);

    Skeleton sk = skeleton(t);
    Triangulation u = canon(pachner_apply(t, sk, 4, 0)); // 1-5: +4
    Skeleton sku = skeleton(u);
    int edge_site = first_site(u, sku, 1);
    REQUIRE(edge_site >= 0);
    Triangulation v = canon(pachner_apply(u, sku, 1, edge_site)); // 4-2: -2
    CHECK(v.size() == t.size() + 2);

    // the flattening undoes the remaining pillow
    Skeleton skv = skeleton(v);
    bool flattened = false;
    for (int i = 0; i < static_cast<int>(skv.faces(0).size()) && !flattened; ++i) {
        try {
            Triangulation w = two_zero(v, skv, 0, i, /*safe=*/true);
            CHECK(w.size() == v.size() - 2);
            CHECK(homology(w) == h);
            CHECK(validate(w).valid());
            flattened = true;
            CHECK(signature(w) == original);
        } catch (const Error&) {
        }
    }
    CHECK(flattened);
}

TEST_CASE("2-0 rejects degree mismatches and shared pentachora") {
    Triangulation t = family(FamilyKind::P, 1);
    Skeleton sk = skeleton(t);
    for (int dim = 0; dim <= 2; ++dim) {
        for (int i = 0; i < static_cast<int>(sk.faces(dim).size()); ++i) {
            const FaceClass& f = sk.faces(dim)[i];
            if (f.degree() == 2 && f.members[0].simplex != f.members[1].simplex) continue;
            CHECK_THROWS_AS(two_zero(t, sk, dim, i, false), Error);
        }
    }
    // pillow S4: both occurrences joined along all five facets, so the
    // remaining pair is already identified
    Triangulation p = pillow_s4();
    Skeleton skp = skeleton(p);
    for (int i = 0; i < static_cast<int>(skp.faces(0).size()); ++i)
        CHECK_THROWS_AS(two_zero(p, skp, 0, i, false), Error);
}

TEST_CASE("collapsing a loop edge is rejected") {
    Triangulation t = dsb2();
    Skeleton sk = skeleton(t);
    bool saw_loop = false;
    for (int i = 0; i < static_cast<int>(sk.faces(1).size()); ++i) {
        const auto& rep = sk.faces(1)[i].rep();
        int cnt;
        auto verts = mask_vertices(rep.mask, &cnt);
        int u = sk.class_index(0, rep.simplex, static_cast<uint8_t>(1 << verts[0]));
        int w = sk.class_index(0, rep.simplex, static_cast<uint8_t>(1 << verts[1]));
        if (u == w) {
            saw_loop = true;
            CHECK_THROWS_AS(collapse_edge(t, sk, i, false), Error);
        }
    }
    CHECK(saw_loop);
}

TEST_CASE("collapse after a 1-5 move removes the new vertex") {
    Triangulation t = canon(family(FamilyKind::P, 0));
    Skeleton sk = skeleton(t);
    long f0 = skeleton(t).f_vector()[0];
    HomologyGroups h = homology(t);
    Triangulation u = canon(pachner_apply(t, sk, 4, 0));
    Skeleton sku = skeleton(u);
    CHECK(sku.f_vector()[0] == f0 + 1);
    bool collapsed = false;
    for (int i = 0; i < static_cast<int>(sku.faces(1).size()) && !collapsed; ++i) {
        try {
            Triangulation w = collapse_edge(u, sku, i, /*safe=*/true);
            collapsed = true;
            CHECK(skeleton(w).f_vector()[0] == f0);
            CHECK(u.size() - w.size() == sku.faces(1)[i].degree());
            CHECK(homology(w) == h);
            CHECK(validate(w).valid());
        } catch (const Error&) {
        }
    }
    CHECK(collapsed);
}

TEST_CASE("random valid moves preserve validity and homology (sample)") {
    std::mt19937_64 rng(23);
    for (FamilyKind kind : {FamilyKind::P, FamilyKind::E}) {
        Triangulation t = canon(family(kind, 1));
        HomologyGroups h = homology(t);
        for (int step = 0; step < 10; ++step) {
            Skeleton sk = skeleton(t);
            auto sites = pachner_sites(t, sk);
            // keep the walk small
            std::vector<MoveStep> usable;
            for (const MoveStep& s : sites)
                if (t.size() + 2 * s.dim - 4 <= 8) usable.push_back(s);
            REQUIRE(!usable.empty());
            const MoveStep& pick = usable[rng() % usable.size()];
            t = canon(pachner_apply(t, sk, pick.dim, pick.index));
            CHECK(validate(t).valid());
            CHECK(homology(t) == h);
        }
    }
}

TEST_CASE("certificate text round-trips") {
    Certificate c;
    c.from_sig = "d4:2:x";
    c.to_sig = "d4:2:y";
    c.cap = 6;
    c.steps = {{MoveKind::Pachner, 3, 0},
               {MoveKind::Collapse, 1, 5},
               {MoveKind::TwoZeroEdge, 1, 2},
               {MoveKind::TwoZeroTriangle, 2, 7},
               {MoveKind::TwoZeroVertex, 0, 1},
               {MoveKind::Pachner, 1, 4}};
    Certificate parsed = parse_certificate(format_certificate(c));
    CHECK(parsed.from_sig == c.from_sig);
    CHECK(parsed.to_sig == c.to_sig);
    CHECK(parsed.cap == c.cap);
    REQUIRE(parsed.steps.size() == c.steps.size());
    for (size_t i = 0; i < c.steps.size(); ++i) CHECK(parsed.steps[i] == c.steps[i]);
}
