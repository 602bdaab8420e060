#include <doctest.h>

#include "helpers.hpp"
#include "tri4/canonical.hpp"
#include "tri4/errors.hpp"
#include "tri4/families.hpp"
#include "tri4/kernel.hpp"

using namespace tri4;
using tri4::testing::random_relabel;

TEST_CASE("canonical form is invariant under relabeling") {
    std::mt19937_64 rng(1);
    for (const Triangulation& t :
         {dsb2(), pillow_s4(), cylinder_c(), family(FamilyKind::P, 1),
          family(FamilyKind::A, 1), boundary_s()}) {
        CanonicalForm c = canonical_form(t);
        for (int trial = 0; trial < 20; ++trial) {
            CanonicalForm c2 = canonical_form(random_relabel(t, rng));
            CHECK(c2.signature == c.signature);
            CHECK(c2.triangulation == c.triangulation);
        }
    }
}

TEST_CASE("1000 random relabelings of each family member keep the signature bytes") {
    std::mt19937_64 rng(2024);
    std::vector<Triangulation> members;
    members.push_back(family(FamilyKind::P, 0));
    for (int k = 1; k <= 4; ++k) {
        members.push_back(family(FamilyKind::P, k));
        members.push_back(family(FamilyKind::E, k));
        members.push_back(family(FamilyKind::A, k));
    }
    members.push_back(family(FamilyKind::D, 1, 1));
    members.push_back(family(FamilyKind::D, 2, 1));
    members.push_back(family(FamilyKind::D, 1, 2));
    for (const Triangulation& t : members) {
        const std::string expect = signature(t);
        int bad = 0;
        for (int trial = 0; trial < 1000; ++trial)
            if (signature(random_relabel(t, rng)) != expect) ++bad;
        CHECK(bad == 0);
    }
}

TEST_CASE("canonical relabeling actually produces the canonical form") {
    Triangulation t = cylinder_c();
    CanonicalForm c = canonical_form(t);
    CHECK(t.relabel(c.relabeling.simplex_map, c.relabeling.vertex_maps) == c.triangulation);
    CHECK(parse_signature(c.signature) == c.triangulation);
}

TEST_CASE("signature text shape") {
    std::string sig = signature(family(FamilyKind::P, 0));
    CHECK(sig.rfind("d4:2:", 0) == 0);
    // 10 cells, comma separated
    CHECK(std::count(sig.begin(), sig.end(), ',') == 9);
    CHECK(parse_signature(sig) == canonical_form(family(FamilyKind::P, 0)).triangulation);
}

TEST_CASE("signature length depends only on size and boundary count") {
    // different closed triangulations of 6 pentachora
    CHECK(signature(family(FamilyKind::P, 2)).size() ==
          signature(family(FamilyKind::E, 1)).size());
    CHECK(signature(family(FamilyKind::A, 1)).size() ==
          signature(family(FamilyKind::E, 1)).size());
    // same size and boundary count, with boundary
    Triangulation bow = unit(UnitKind::Bow).tri;
    Triangulation cut = unglue(family(FamilyKind::P, 0), Site{0, 4});
    CHECK(bow.size() == cut.size());
    CHECK(bow.boundary_facet_count() == cut.boundary_facet_count());
    CHECK(signature(bow).size() == signature(cut).size());
}

TEST_CASE("is_isomorphic distinguishes the hooks") {
    Triangulation h0 = unit(UnitKind::EvenHook).tri;
    Triangulation h1 = unit(UnitKind::OddHook).tri;
    // identical dual graphs ...
    DualGraph g0 = dual_graph(h0);
    DualGraph g1 = dual_graph(h1);
    CHECK(g0.nodes == g1.nodes);
    CHECK(g0.arcs == g1.arcs);
    // ... but different isomorphism classes
    CHECK(signature(h0) != signature(h1));
    CHECK(!is_isomorphic(h0, h1));
}

TEST_CASE("is_isomorphic short-circuits on size mismatch") {
    CHECK(!is_isomorphic(family(FamilyKind::P, 1), family(FamilyKind::P, 0)));
}

TEST_CASE("is_isomorphic is an equivalence on a small sample") {
    std::mt19937_64 rng(5);
    std::vector<Triangulation> sample = {family(FamilyKind::P, 1),
                                         random_relabel(family(FamilyKind::P, 1), rng),
                                         family(FamilyKind::E, 1), pillow_s4()};
    for (const auto& a : sample) CHECK(is_isomorphic(a, a));
    for (const auto& a : sample)
        for (const auto& b : sample) CHECK(is_isomorphic(a, b) == is_isomorphic(b, a));
    for (const auto& a : sample)
        for (const auto& b : sample)
            for (const auto& c : sample)
                if (is_isomorphic(a, b) && is_isomorphic(b, c)) CHECK(is_isomorphic(a, c));
    CHECK(is_isomorphic(sample[0], sample[1]));
}

TEST_CASE("disconnected triangulations canonicalize componentwise") {
    std::mt19937_64 rng(9);
    Triangulation a = dsb2().disjoint_union(pillow_s4());
    Triangulation b = pillow_s4().disjoint_union(dsb2());
    CHECK(signature(a) == signature(b));
    CHECK(signature(random_relabel(a, rng)) == signature(a));
    // two copies of the same component
    Triangulation twin = pillow_s4().disjoint_union(pillow_s4());
    CHECK(signature(random_relabel(twin, rng)) == signature(twin));
    CHECK(parse_signature(signature(twin)) == canonical_form(twin).triangulation);
    CHECK(!is_isomorphic(twin, a));
}

TEST_CASE("parallel candidate scan agrees with the serial reference") {
    for (const Triangulation& t : {cylinder_c(), family(FamilyKind::D, 2, 1)}) {
        CHECK(signature(t, 1) == signature(t, 4));
        CHECK(canonical_form(t, 4).triangulation == canonical_form(t, 1).triangulation);
    }
}

namespace {

// Independent isomorphism oracle: anchored label propagation, no canonical
// forms involved.
bool isomorphic_by_propagation(const Triangulation& a, const Triangulation& b) {
    if (a.dim() != b.dim() || a.size() != b.size()) return false;
    if (a.size() == 0) return true;
    if (!a.is_connected() || !b.is_connected()) return false; // oracle scope
    const int slots = a.slots_per_simplex();
    const int nperm = Perm::factorial(a.dim() + 1);
    for (int p0 = 0; p0 < b.size(); ++p0) {
        for (int pi = 0; pi < nperm; ++pi) {
            std::vector<int> map(a.size(), -1);
            std::vector<Perm> vmap(a.size(), Perm(a.dim() + 1));
            std::vector<char> used(b.size(), 0);
            map[0] = p0;
            vmap[0] = Perm::from_index(a.dim() + 1, pi);
            used[p0] = 1;
            std::vector<int> stack{0};
            bool ok = true;
            while (ok && !stack.empty()) {
                int q = stack.back();
                stack.pop_back();
                for (int i = 0; i < slots && ok; ++i) {
                    const Entry& e = a.entry(q, i);
                    const Entry& want = b.entry(map[q], vmap[q](i));
                    if (e.is_boundary() != want.is_boundary()) {
                        ok = false;
                        break;
                    }
                    if (e.is_boundary()) continue;
                    Perm np = want.perm * vmap[q] * e.perm.inverse();
                    if (map[e.target] < 0) {
                        if (used[want.target]) {
                            ok = false;
                            break;
                        }
                        map[e.target] = want.target;
                        vmap[e.target] = np;
                        used[want.target] = 1;
                        stack.push_back(e.target);
                    } else {
                        ok = map[e.target] == want.target && vmap[e.target] == np;
                    }
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("is_isomorphic agrees with a propagation oracle on random pairs") {
    std::mt19937_64 rng(31337);
    std::vector<Triangulation> pool = {dsb2(),
                                       pillow_s4(),
                                       cylinder_c(),
                                       family(FamilyKind::P, 0),
                                       family(FamilyKind::P, 1),
                                       family(FamilyKind::E, 1),
                                       family(FamilyKind::A, 1),
                                       unit(UnitKind::Bow).tri,
                                       unit(UnitKind::EvenHook).tri,
                                       unit(UnitKind::OddHook).tri,
                                       boundary_s()};
    for (int trial = 0; trial < 60; ++trial) {
        const Triangulation& a = pool[rng() % pool.size()];
        const Triangulation& b = pool[rng() % pool.size()];
        Triangulation ra = random_relabel(a, rng);
        Triangulation rb = random_relabel(b, rng);
        if (ra.dim() != rb.dim()) continue;
        CHECK(is_isomorphic(ra, rb) == isomorphic_by_propagation(ra, rb));
        CHECK(is_isomorphic(ra, random_relabel(a, rng)));
    }
}

TEST_CASE("automorphisms of DSB2 form a group of order two") {
    auto autos = automorphisms(dsb2());
    CHECK(autos.size() == 2);
}

TEST_CASE("signature parser rejects garbage") {
    CHECK_THROWS_AS(parse_signature("nonsense"), Error);
    CHECK_THROWS_AS(parse_signature("d9:1:b,b,b,b,b"), Error);
}
