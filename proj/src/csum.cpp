#include "tri4/csum.hpp"

#include "tri4/errors.hpp"
#include "tri4/families.hpp"

namespace tri4 {

namespace {

// Ascending-order permutation gluing a cylinder-end tetrahedron (facet
// `from_slot`) onto the facet `to_slot` of the opened pentachoron.
Perm ascending_gluing(int from_slot, int to_slot) {
    std::array<int, 5> img{};
    int v = 0;
    for (int u = 0; u < 5; ++u) {
        if (u == from_slot) continue;
        if (v == to_slot) ++v;
        img[u] = v++;
    }
    img[from_slot] = to_slot;
    return Perm::from_images(5, img);
}

} // namespace

Triangulation puncture(const Triangulation& t, const Site& site) {
    if (t.dim() != 4) throw Error(Err::InvalidInput, "puncture needs a 4-dimensional input");
    if (site.simplex < 0 || site.simplex >= t.size() || site.slot < 0 || site.slot > 4)
        throw Error(Err::IndexOutOfRange, "puncture site");
    const Entry e = t.entry(site);
    if (e.is_boundary()) throw Error(Err::BoundarySite, "puncture site must be internal");

    const int n = t.size();
    const Site partner{e.target, e.perm(site.slot)};
    Triangulation open = t.unglue(site).disjoint_union(cylinder_c());

    // Cylinder end one: facet 4 of pentachora n and n+4.
    Perm rho = ascending_gluing(4, site.slot);
    open = open.glue_boundary({n, 4}, site, rho);
    open = open.glue_boundary({n + 4, 4}, partner, e.perm * rho);
    return open;
}

Triangulation connected_sum(const Triangulation& t1, const Site& site1,
                            const Triangulation& t2, const Site& site2, bool sign) {
    if (t1.dim() != 4 || t2.dim() != 4)
        throw Error(Err::InvalidInput, "connected sum needs 4-dimensional inputs");
    const int n1 = t1.size(), n2 = t2.size();
    Triangulation t = t1.disjoint_union(t2);
    t = puncture(t, site1);

    const Site site{n1 + site2.simplex, site2.slot};
    const Entry e = t.entry(site);
    if (e.is_boundary()) throw Error(Err::BoundarySite, "second site must be internal");
    const Site partner{e.target, e.perm(site.slot)};
    t = t.unglue(site);

    // Cylinder end two: facet 0 of pentachora n1+n2+3 and n1+n2+7.
    Perm rho = ascending_gluing(0, site.slot);
    Perm rho_adj = e.perm * rho;
    if (sign) {
        Perm swap12 = transposition(5, 1, 2);
        rho = rho * swap12;
        rho_adj = rho_adj * swap12;
    }
    t = t.glue_boundary({n1 + n2 + 3, 0}, site, rho);
    t = t.glue_boundary({n1 + n2 + 7, 0}, partner, rho_adj);
    return t;
}

} // namespace tri4
