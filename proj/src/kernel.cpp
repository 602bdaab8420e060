#include "tri4/kernel.hpp"

#include <algorithm>
#include <map>

#include "tri4/errors.hpp"
#include "tri4/homology.hpp"

namespace tri4 {

Triangulation boundary_of_simplex(int n) {
    // Facet v of the n-simplex omits vertex v; its local labels follow the
    // ascending order of the remaining vertices.
    const int d = n - 1; // dimension of the facets
    auto local = [&](int facet, int vertex) { return vertex < facet ? vertex : vertex - 1; };
    std::vector<std::vector<Entry>> table(n + 1, std::vector<Entry>(d + 1));
    for (int u = 0; u <= n; ++u) {
        for (int v = 0; v <= n; ++v) {
            if (u == v) continue;
            std::array<int, 5> img{0, 1, 2, 3, 4};
            for (int w = 0; w <= n; ++w) {
                if (w == u) continue;
                img[local(u, w)] = (w == v) ? local(v, u) : local(v, w);
            }
            table[u][local(u, v)] = Entry::glued(v, Perm::from_images(d + 1, img));
        }
    }
    if (d == 0) {
        // Two isolated points.
        table.assign(2, std::vector<Entry>{});
    }
    return Triangulation::build(d, std::move(table));
}

Triangulation link(const Triangulation& t, const FaceClass& f) {
    const int d = t.dim();
    const int ld = d - f.dim - 1;
    const auto& members = f.members;
    // Index of each member occurrence within this class.
    std::map<std::pair<int, uint8_t>, int> member_index;
    for (size_t m = 0; m < members.size(); ++m)
        member_index[{members[m].simplex, members[m].mask}] = static_cast<int>(m);

    const uint8_t full = static_cast<uint8_t>((1 << (d + 1)) - 1);
    std::vector<std::vector<Entry>> table(members.size(),
                                          std::vector<Entry>(ld == 0 ? 0 : ld + 1));
    if (ld > 0) {
        for (size_t m = 0; m < members.size(); ++m) {
            const int q = members[m].simplex;
            const uint8_t fmask = members[m].mask;
            const uint8_t cmask = full & ~fmask; // vertices of the opposite face
            int cnt;
            auto cverts = mask_vertices(cmask, &cnt);
            for (int slot = 0; slot < cnt; ++slot) {
                const int v = cverts[slot]; // gluing of t at the facet omitting v
                const Entry& e = t.entry(q, v);
                if (e.is_boundary()) {
                    table[m][slot] = Entry::boundary();
                    continue;
                }
                const uint8_t timg = apply_perm_to_mask(e.perm, fmask);
                const int tm = member_index.at({e.target, timg});
                const uint8_t tcmask = full & ~timg;
                std::array<int, 5> img{0, 1, 2, 3, 4};
                for (int a = 0; a < cnt; ++a)
                    img[a] = mask_position(tcmask, e.perm(cverts[a]));
                table[m][slot] = Entry::glued(tm, Perm::from_images(ld + 1, img));
            }
        }
    }
    return Triangulation::build(ld, std::move(table));
}

const std::vector<FaceClass::Member>& star(const FaceClass& f) { return f.members; }

Triangulation boundary(const Triangulation& t) {
    const int d = t.dim();
    if (d == 0) return Triangulation(0);
    auto sites = t.boundary_sites();
    std::map<std::pair<int, int>, int> facet_index;
    for (size_t i = 0; i < sites.size(); ++i)
        facet_index[{sites[i].simplex, sites[i].slot}] = static_cast<int>(i);

    std::vector<std::vector<Entry>> table(sites.size(),
                                          std::vector<Entry>(d == 1 ? 0 : d));
    for (size_t bi = 0; bi < sites.size() && d >= 2; ++bi) {
        const int q0 = sites[bi].simplex;
        const int i0 = sites[bi].slot;
        const uint8_t fmask0 = static_cast<uint8_t>(((1 << (d + 1)) - 1) & ~(1 << i0));
        int cnt;
        auto fverts = mask_vertices(fmask0, &cnt);
        for (int slot = 0; slot < d; ++slot) {
            if (!table[bi][slot].is_boundary()) continue; // already filled from the other end
            const int w0 = fverts[slot];
            // Pivot around the codimension-2 face omitting {i0, w0} until the
            // ridge on the far side is unglued.
            int q = q0, in = i0, out = w0;
            Perm acc(d + 1);
            int guard = 0;
            while (!t.entry(q, out).is_boundary()) {
                const Entry& e = t.entry(q, out);
                int nin = e.perm(out);
                int nout = e.perm(in);
                acc = e.perm * acc;
                q = e.target;
                in = nin;
                out = nout;
                if (++guard > 4 * (d + 1) * t.size())
                    throw Error(Err::InvalidInput, "boundary pivot does not close up");
            }
            auto it = facet_index.find({q, out});
            if (it == facet_index.end())
                throw Error(Err::InvalidInput, "boundary pivot left the boundary");
            const int bj = it->second;
            const uint8_t fmaskj = static_cast<uint8_t>(((1 << (d + 1)) - 1) & ~(1 << out));
            if (bj == static_cast<int>(bi) && mask_position(fmaskj, acc(w0)) == slot)
                throw Error(Err::SelfIdentification,
                            "boundary ridge glued to itself across the same face");
            std::array<int, 5> img{0, 1, 2, 3, 4};
            for (int a = 0; a < d; ++a)
                img[a] = mask_position(fmaskj, acc(fverts[a]));
            Perm p = Perm::from_images(d, img);
            table[bi][slot] = Entry::glued(bj, p);
            table[bj][p(slot)] = Entry::glued(static_cast<int>(bi), p.inverse());
        }
    }
    return Triangulation::build(d - 1, std::move(table));
}

Triangulation unglue(const Triangulation& t, const Site& site) { return t.unglue(site); }

Triangulation reglue(const Triangulation& t, const Site& a, const Site& b, const Perm& perm) {
    Triangulation r = t.glue_boundary(a, b, perm);
    if (has_self_identification(r))
        throw Error(Err::WouldCreateSelfIdentification,
                    "regluing identifies a face with itself along a non-identity map");
    return r;
}

bool has_self_identification(const Triangulation& t) {
    std::vector<SelfIdentViolation> v;
    skeleton_checked(t, &v);
    return !v.empty();
}

namespace {

bool certify_link(const Triangulation& lk, bool expect_sphere, std::string* why) {
    const int D = lk.dim();
    if (D == 0) {
        const bool ok = lk.size() == (expect_sphere ? 2 : 1);
        if (!ok && why) *why = "point count " + std::to_string(lk.size());
        return ok;
    }
    if (!lk.is_connected()) {
        if (why) *why = "link not connected";
        return false;
    }
    std::vector<SelfIdentViolation> v;
    Skeleton sk = skeleton_checked(lk, &v);
    if (!v.empty()) {
        if (why) *why = "link has a self-identified face";
        return false;
    }
    const bool closed = lk.is_closed();
    if (closed != expect_sphere) {
        if (why) *why = expect_sphere ? "link of internal vertex has boundary"
                                      : "link of boundary vertex is closed";
        return false;
    }
    long chi = 0;
    for (int i = 0; i <= D; ++i) chi += (i % 2 == 0 ? 1 : -1) * sk.f_vector()[i];
    const long want_chi = expect_sphere ? (D % 2 == 0 ? 2 : 0) : 1;
    if (chi != want_chi) {
        if (why) *why = "link Euler characteristic " + std::to_string(chi);
        return false;
    }
    // Recurse: links of the link must be spheres/balls a dimension down.
    if (!validate(lk).vertex_links_manifoldlike) {
        if (why) *why = "link of link fails certificate";
        return false;
    }
    if (D >= 2) {
        HomologyGroups h = homology(lk);
        if (h.groups[1].betti != 0 || !h.groups[1].torsion.empty()) {
            if (why) *why = "link has non-trivial first homology";
            return false;
        }
        if (!expect_sphere) {
            for (int i = 1; i <= D; ++i)
                if (h.groups[i].betti != 0 || !h.groups[i].torsion.empty()) {
                    if (why) *why = "ball link has non-trivial homology";
                    return false;
                }
        }
    }
    return true;
}

} // namespace

ValidityReport validate(const Triangulation& t) {
    ValidityReport rep;
    rep.closed = t.is_closed();

    std::vector<SelfIdentViolation> v;
    Skeleton sk = skeleton_checked(t, &v);
    if (!v.empty()) {
        rep.no_reverse_self_identification = false;
        for (const auto& viol : v)
            rep.offending_faces.push_back(
                {viol.dim, viol.simplex, viol.mask,
                 "identified with itself along " + viol.self_map.str()});
        // Links are not well defined on top of self-identifications.
        rep.vertex_links_manifoldlike = false;
        return rep;
    }

    if (t.dim() >= 1) {
        for (const auto& fc : sk.faces(0)) {
            std::string why;
            Triangulation lk = link(t, fc);
            if (!certify_link(lk, !fc.boundary, &why)) {
                rep.vertex_links_manifoldlike = false;
                rep.offending_faces.push_back(
                    {0, fc.rep().simplex, fc.rep().mask, why});
            }
        }
    }
    return rep;
}

} // namespace tri4
