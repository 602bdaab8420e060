#include "tri4/families.hpp"

#include <algorithm>

#include "tri4/errors.hpp"
#include "tri4/kernel.hpp"
#include "tri4/tableio.hpp"

namespace tri4 {

namespace {

std::string cell(int target, const char* images) {
    return std::to_string(target) + "(" + images + ")";
}

std::string row(const std::string& c0, const std::string& c1, const std::string& c2,
                const std::string& c3, const std::string& c4) {
    return c0 + " " + c1 + " " + c2 + " " + c3 + " " + c4 + "\n";
}

// The shared k=0 base: two snapped 4-balls glued along their boundary.
std::string base_table() {
    return row(cell(1, "0123"), cell(0, "0324"), cell(0, "3214"), cell(0, "0214"),
               cell(0, "3104")) +
           row(cell(0, "0123"), cell(1, "0324"), cell(1, "3214"), cell(1, "0214"),
               cell(1, "3104"));
}

std::string front_cap_row() {
    return row(cell(1, "0123"), cell(0, "0324"), cell(0, "3214"), cell(0, "0214"),
               cell(0, "3104"));
}

// Bow rows 2i-1 and 2i of the P family; last == true closes onto the end cap
// with the identity, the D family instead hands over to a hook.
std::string bow_rows(int i, int k, bool to_hook) {
    std::string r1 = row(i == 1 ? cell(0, "0123") : cell(2 * i - 2, "2013"),
                         cell(2 * i, "1034"), cell(2 * i - 1, "3214"), cell(2 * i, "0234"),
                         cell(2 * i - 1, "3104"));
    std::string c0;
    if (i < k)
        c0 = cell(2 * i + 1, "1203");
    else
        c0 = to_hook ? cell(2 * k + 1, "1204") : cell(2 * k + 1, "0123");
    std::string r2 = row(c0, cell(2 * i, "3124"), cell(2 * i - 1, "1024"),
                         cell(2 * i - 1, "0234"), cell(2 * i, "1204"));
    return r1 + r2;
}

std::string p_end_cap_row(int k) {
    const int c = 2 * k + 1;
    return row(cell(2 * k, "0123"), cell(c, "3124"), cell(c, "3024"), cell(c, "1304"),
               cell(c, "1204"));
}

// Hook rows 4i-3..4i of the E (even) and A (odd) families; the two differ in
// the middle pair of gluings only.
std::string hook_rows(int i, bool odd) {
    const char* m1 = odd ? "1304" : "3014";
    const char* m2 = odd ? "2014" : "1204";
    const int b = 4 * i - 3;
    std::string r1 = row(i == 1 ? cell(0, "0123") : cell(b - 2, "0123"), cell(b + 2, "0124"),
                         cell(b + 1, "3204"), cell(b + 2, "0234"), cell(b + 1, "1234"));
    std::string r2 = row(cell(b + 3, "0123"), cell(b + 1, m1), cell(b + 1, m2),
                         cell(b, "3104"), cell(b, "1234"));
    std::string r3 = row(cell(b + 4, "0123"), cell(b, "0124"), cell(b + 2, "3214"),
                         cell(b, "0234"), cell(b + 2, "3104"));
    std::string r4 = row(cell(b + 1, "0123"), cell(b + 3, m1), cell(b + 3, m2),
                         cell(b + 3, "1234"), cell(b + 3, "0234"));
    return r1 + r2 + r3 + r4;
}

std::string ea_end_cap_row(int k) {
    const int c = 4 * k + 1;
    return row(cell(4 * k - 1, "0123"), cell(c, "0324"), cell(c, "3214"), cell(c, "0214"),
               cell(c, "3104"));
}

// Hook rows of the D family, attached through Tet 0124 instead of Tet 0123.
std::string d_hook_rows(int j, int k) {
    const int b = 2 * k + 4 * j - 3;
    std::string r1 = row(cell(b + 2, "0123"),
                         j == 1 ? cell(2 * k, "2013") : cell(b - 2, "0124"),
                         cell(b + 1, "4230"), cell(b + 2, "0234"), cell(b + 1, "1234"));
    std::string r2 = row(cell(b + 1, "4013"), cell(b + 3, "0124"), cell(b + 1, "1230"),
                         cell(b, "4130"), cell(b, "1234"));
    std::string r3 = row(cell(b, "0123"), cell(b + 4, "0124"), cell(b + 2, "4231"),
                         cell(b, "0234"), cell(b + 2, "4130"));
    std::string r4 = row(cell(b + 3, "4013"), cell(b + 1, "0124"), cell(b + 3, "1230"),
                         cell(b + 3, "1234"), cell(b + 3, "0234"));
    return r1 + r2 + r3 + r4;
}

std::string d_end_cap_row(int k, int l) {
    const int c = 2 * k + 4 * l + 1;
    return row(cell(c, "0423"), cell(c - 2, "0124"), cell(c, "4231"), cell(c, "0231"),
               cell(c, "4130"));
}

} // namespace

std::string family_table_text(FamilyKind kind, int k, int l) {
    if (k < 0 || l < 0) throw Error(Err::InvalidInput, "family parameters must be >= 0");
    if (kind == FamilyKind::D) {
        if (l == 0) return family_table_text(FamilyKind::P, k);
        if (k == 0) return family_table_text(FamilyKind::E, l);
        std::string s = front_cap_row();
        for (int i = 1; i <= k; ++i) s += bow_rows(i, k, /*to_hook=*/true);
        for (int j = 1; j <= l; ++j) s += d_hook_rows(j, k);
        s += d_end_cap_row(k, l);
        return s;
    }
    if (k == 0) return base_table();
    std::string s = front_cap_row();
    switch (kind) {
        case FamilyKind::P:
            for (int i = 1; i <= k; ++i) s += bow_rows(i, k, /*to_hook=*/false);
            s += p_end_cap_row(k);
            break;
        case FamilyKind::E:
            for (int i = 1; i <= k; ++i) s += hook_rows(i, /*odd=*/false);
            s += ea_end_cap_row(k);
            break;
        case FamilyKind::A:
            for (int i = 1; i <= k; ++i) s += hook_rows(i, /*odd=*/true);
            s += ea_end_cap_row(k);
            break;
        case FamilyKind::D: break; // handled above
    }
    return s;
}

Triangulation family(FamilyKind kind, int k, int l) {
    return parse_table(family_table_text(kind, k, l));
}

Triangulation dsb2() {
    return parse_table("- 0(0324) 0(3214) 0(0214) 0(3104)\n");
}

Triangulation boundary_s() {
    return parse_table("0(032) 0(321) 0(021) 0(310)\n");
}

Triangulation pillow_s4() {
    std::vector<std::vector<Entry>> table(2, std::vector<Entry>(5));
    for (int i = 0; i < 5; ++i) {
        table[0][i] = Entry::glued(1, Perm(5));
        table[1][i] = Entry::glued(0, Perm(5));
    }
    return Triangulation::build(4, std::move(table));
}

Triangulation cylinder_c() {
    return parse_table(
        "- 1(0124) 4(0134) 4(0234) 4(1234)\n"
        "5(0123) 0(0124) 2(0134) 5(0234) 5(1234)\n"
        "6(0123) 6(0124) 1(0134) 3(0234) 6(1234)\n"
        "7(0123) 7(0124) 7(0134) 2(0234) -\n"
        "- 5(0124) 0(0134) 0(0234) 0(1234)\n"
        "1(0123) 4(0124) 6(0134) 1(0234) 1(1234)\n"
        "2(0123) 2(0124) 5(0134) 7(0234) 2(1234)\n"
        "3(0123) 3(0124) 3(0134) 6(0234) -\n");
}

Unit unit(UnitKind kind) {
    Unit u{kind, Triangulation(4), {0, 4}, {0, 4}};
    switch (kind) {
        case UnitKind::Bow:
            u.tri = family(FamilyKind::P, 1).remove_simplex(3).remove_simplex(0);
            u.second_boundary = {1, 4};
            break;
        case UnitKind::EvenHook:
            u.tri = family(FamilyKind::E, 1).remove_simplex(5).remove_simplex(0);
            u.second_boundary = {2, 4};
            break;
        case UnitKind::OddHook:
            u.tri = family(FamilyKind::A, 1).remove_simplex(5).remove_simplex(0);
            u.second_boundary = {2, 4};
            break;
    }
    return u;
}

namespace {

Relabeling nontrivial_automorphism(const Triangulation& t, const char* what) {
    auto autos = automorphisms(t);
    for (const auto& r : autos) {
        bool identity = true;
        for (size_t q = 0; q < r.simplex_map.size() && identity; ++q)
            identity = r.simplex_map[q] == static_cast<int>(q) && r.vertex_maps[q].is_identity();
        if (!identity) return r;
    }
    throw Error(Err::InvalidInput, std::string(what) + " has no non-trivial symmetry");
}

} // namespace

Relabeling unit_symmetry(const Unit& u) { return nontrivial_automorphism(u.tri, "unit"); }

Relabeling dsb2_symmetry() { return nontrivial_automorphism(dsb2(), "DSB2"); }

Triangulation build_chain(const std::vector<UnitKind>& units) {
    Triangulation t = dsb2();
    auto attach = [&](const Triangulation& piece, const Site& piece_site) {
        auto open = t.boundary_sites();
        if (open.size() != 1)
            throw Error(Err::InvalidInput, "chain does not have a single open facet");
        const Site chain_site = open[0];
        const int off = t.size();
        Triangulation joined = t.disjoint_union(piece);
        const Site target{piece_site.simplex + off, piece_site.slot};
        for (int pi = 0; pi < 120; ++pi) {
            Perm perm = Perm::from_index(5, pi);
            if (perm(chain_site.slot) != target.slot) continue;
            try {
                Triangulation glued = reglue(joined, chain_site, target, perm);
                if (validate(glued).valid()) {
                    t = glued;
                    return;
                }
            } catch (const Error&) {
            }
        }
        throw Error(Err::InvalidInput, "no valid gluing found while building the chain");
    };
    for (UnitKind kind : units) {
        Unit u = unit(kind);
        attach(u.tri, u.first_boundary);
    }
    attach(dsb2(), Site{0, 4});
    return t;
}

std::vector<Site> inter_unit_gluings(FamilyKind kind, int k, int l) {
    std::vector<Site> out;
    if (kind == FamilyKind::D) {
        if (l == 0) return inter_unit_gluings(FamilyKind::P, k);
        if (k == 0) return inter_unit_gluings(FamilyKind::E, l);
        out.push_back({0, 4});
        for (int i = 1; i < k; ++i) out.push_back({2 * i, 4});
        out.push_back({2 * k, 4}); // last bow to first hook
        for (int j = 1; j <= l; ++j) out.push_back({2 * k + 4 * j - 1, 3});
        return out;
    }
    if (k == 0) return {{0, 4}};
    out.push_back({0, 4});
    switch (kind) {
        case FamilyKind::P:
            for (int i = 1; i <= k; ++i) out.push_back({2 * i, 4});
            break;
        case FamilyKind::E:
        case FamilyKind::A:
            for (int i = 1; i <= k; ++i) out.push_back({4 * i - 1, 4});
            break;
        case FamilyKind::D: break; // handled above
    }
    return out;
}

std::vector<Perm> alternative_regluings(const Triangulation& t, const Site& site) {
    const Entry& e = t.entry(site);
    if (e.is_boundary()) throw Error(Err::NotAChainGluing, "site is a boundary facet");
    if (!t.is_connected()) throw Error(Err::NotAChainGluing, "triangulation is disconnected");
    Triangulation cut = t.unglue(site);
    if (cut.components().first != 2)
        throw Error(Err::NotAChainGluing, "severing the gluing does not split the chain");
    const Site a = site;
    const Site b{e.target, e.perm(site.slot)};
    std::vector<Perm> valid;
    for (int pi = 0; pi < 120; ++pi) {
        Perm perm = Perm::from_index(5, pi);
        if (perm(a.slot) != b.slot) continue;
        try {
            Triangulation glued = reglue(cut, a, b, perm);
            if (validate(glued).valid()) valid.push_back(perm);
        } catch (const Error&) {
        }
    }
    return valid;
}

} // namespace tri4
