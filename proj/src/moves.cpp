#include "tri4/moves.hpp"

#include <algorithm>
#include <sstream>

#include "tri4/canonical.hpp"
#include "tri4/errors.hpp"
#include "tri4/homology.hpp"
#include "tri4/kernel.hpp"

namespace tri4 {

namespace {

// ---- Pachner model: the boundary of a 5-simplex on vertices {0..5}. The
// face F spans A = {0..dim}; B = {dim+1..5}. Facet v of the model omits
// vertex v; before-region facets omit a vertex of B, the replacement facets
// omit a vertex of A.

int model_local(int facet, int vertex) { return vertex < facet ? vertex : vertex - 1; }
int model_global(int facet, int local) { return local < facet ? local : local + 1; }

// Gluing map between model facets u and v, on local labels.
Perm model_gluing(int u, int v) {
    std::array<int, 5> img{0, 1, 2, 3, 4};
    for (int x = 0; x < 5; ++x) {
        int w = model_global(u, x);
        img[x] = (w == v) ? model_local(v, u) : model_local(v, w);
    }
    return Perm::from_images(5, img);
}

struct Embedding {
    // For each b in B (indexed b-dim-1): the pentachoron of t carrying model
    // facet b, and the map from model-local labels onto its vertex labels.
    std::vector<int> pent;
    std::vector<Perm> perm;
};

// Finds an embedding of the before-region anchored at the first star
// occurrence; any match yields the same result up to isomorphism.
std::optional<Embedding> find_region(const Triangulation& t, const Skeleton& sk, int dim,
                                     int index) {
    const int nb = 5 - dim; // before-region pentachora
    Embedding emb;
    emb.pent.assign(nb, -1);
    emb.perm.assign(nb, Perm(5));

    if (dim == 4) {
        emb.pent[0] = index;
        // facet 5 of the model has local labels 0..4 in natural order
        return emb;
    }

    const FaceClass& f = sk.faces(dim)[index];
    if (f.boundary || f.degree() != nb) return std::nullopt;
    for (int a = 0; a < f.degree(); ++a)
        for (int b = a + 1; b < f.degree(); ++b)
            if (f.members[a].simplex == f.members[b].simplex) return std::nullopt;

    const int b0 = dim + 1;
    const int q0 = f.members[0].simplex;
    const uint8_t s0 = f.members[0].mask;
    int cnt;
    auto sverts = mask_vertices(s0, &cnt);
    auto cverts = mask_vertices(static_cast<uint8_t>(0x1f & ~s0), nullptr);

    // Local labels of facet b0: A vertices occupy 0..dim, the rest are the
    // other B vertices in ascending order.
    const int na = dim + 1, nc = 4 - dim;
    for (int ai = 0; ai < Perm::factorial(na); ++ai) {
        Perm pa = Perm::from_index(na, ai);
        for (int ci = 0; ci < Perm::factorial(nc); ++ci) {
            Perm pc = Perm::from_index(nc, ci);
            std::array<int, 5> img{0, 1, 2, 3, 4};
            for (int x = 0; x < na; ++x) img[x] = sverts[pa(x)];
            for (int x = 0; x < nc; ++x) img[na + x] = cverts[pc(x)];
            Embedding cand = emb;
            cand.pent[0] = q0;
            cand.perm[0] = Perm::from_images(5, img);

            // Propagate across the model gluings from facet b0.
            bool ok = true;
            for (int bv = b0 + 1; bv <= 5 && ok; ++bv) {
                const int bi = bv - dim - 1;
                const Entry& e = t.entry(cand.pent[0], cand.perm[0](model_local(b0, bv)));
                if (e.is_boundary()) {
                    ok = false;
                    break;
                }
                cand.pent[bi] = e.target;
                cand.perm[bi] = e.perm * cand.perm[0] * model_gluing(b0, bv).inverse();
            }
            if (!ok) continue;
            for (int u = 0; u < nb && ok; ++u)
                for (int v = u + 1; v < nb && ok; ++v) {
                    if (cand.pent[u] == cand.pent[v]) ok = false;
                }
            // Verify every internal model gluing against the table.
            for (int u = 0; u < nb && ok; ++u) {
                const int ug = dim + 1 + u;
                for (int v = 0; v < nb && ok; ++v) {
                    if (u == v) continue;
                    const int vg = dim + 1 + v;
                    const Entry& e = t.entry(cand.pent[u], cand.perm[u](model_local(ug, vg)));
                    if (e.is_boundary() || e.target != cand.pent[v] ||
                        e.perm != cand.perm[v] * model_gluing(ug, vg) * cand.perm[u].inverse())
                        ok = false;
                }
            }
            if (ok) return cand;
        }
    }
    return std::nullopt;
}

} // namespace

bool pachner_valid(const Triangulation& t, const Skeleton& sk, int dim, int index) {
    if (dim == 4) return index >= 0 && index < t.size();
    if (dim < 0 || index < 0 || index >= static_cast<int>(sk.faces(dim).size())) return false;
    const FaceClass& f = sk.faces(dim)[index];
    if (f.boundary || f.degree() != 5 - dim) return false;
    for (int a = 0; a < f.degree(); ++a)
        for (int b = a + 1; b < f.degree(); ++b)
            if (f.members[a].simplex == f.members[b].simplex) return false;
    if (dim == 3) return true; // two occurrences in distinct pentachora is the whole condition
    static const std::string bd_sig[5] = {
        "", signature(boundary_of_simplex(1)), signature(boundary_of_simplex(2)),
        signature(boundary_of_simplex(3)), signature(boundary_of_simplex(4))};
    return signature(link(t, f)) == bd_sig[4 - dim];
}

Triangulation pachner_apply(const Triangulation& t, const Skeleton& sk, int dim, int index) {
    if (!pachner_valid(t, sk, dim, index))
        throw Error(Err::InvalidSite, "Pachner move on " + std::to_string(dim) + "-face " +
                                          std::to_string(index));
    auto embOpt = find_region(t, sk, dim, index);
    if (!embOpt)
        throw Error(Err::InvalidSite, "star does not match the model region");
    const Embedding& emb = *embOpt;
    const int nb = 5 - dim, na = dim + 1;

    std::vector<int> new_index(t.size(), -1);
    std::vector<char> in_region(t.size(), 0);
    std::vector<int> which_b(t.size(), -1);
    for (int b = 0; b < nb; ++b) {
        in_region[emb.pent[b]] = 1;
        which_b[emb.pent[b]] = b;
    }
    int kept = 0;
    for (int q = 0; q < t.size(); ++q)
        if (!in_region[q]) new_index[q] = kept++;
    auto after_index = [&](int a) { return kept + a; };

    // tau(w, b): local labels of replacement facet w -> vertex labels of the
    // pentachoron carrying before-facet b.
    auto tau = [&](int w, int b) { return emb.perm[b] * model_gluing(w, dim + 1 + b); };

    std::vector<std::vector<Entry>> table(kept + na, std::vector<Entry>(5));
    for (int q = 0; q < t.size(); ++q) {
        if (in_region[q]) continue;
        for (int s = 0; s < 5; ++s) {
            const Entry& e = t.entry(q, s);
            if (e.is_boundary()) {
                table[new_index[q]][s] = Entry::boundary();
            } else if (!in_region[e.target]) {
                table[new_index[q]][s] = Entry::glued(new_index[e.target], e.perm);
            } else {
                const int b = which_b[e.target];
                const int w = model_global(dim + 1 + b, emb.perm[b].inverse()(e.perm(s)));
                table[new_index[q]][s] =
                    Entry::glued(after_index(w), tau(w, b).inverse() * e.perm);
            }
        }
    }
    for (int w = 0; w < na; ++w) {
        for (int x = 0; x < 5; ++x) {
            const int v = model_global(w, x);
            if (v <= dim) {
                table[after_index(w)][x] = Entry::glued(after_index(v), model_gluing(w, v));
                continue;
            }
            const int b = v - dim - 1;
            const Entry& e = t.entry(emb.pent[b], tau(w, b)(x));
            if (e.is_boundary()) {
                table[after_index(w)][x] = Entry::boundary();
            } else if (!in_region[e.target]) {
                table[after_index(w)][x] = Entry::glued(new_index[e.target], e.perm * tau(w, b));
            } else {
                const int b2 = which_b[e.target];
                const int w2 =
                    model_global(dim + 1 + b2, emb.perm[b2].inverse()(e.perm(tau(w, b)(x))));
                table[after_index(w)][x] =
                    Entry::glued(after_index(w2), tau(w2, b2).inverse() * e.perm * tau(w, b));
            }
        }
    }
    return Triangulation::build(4, std::move(table));
}

namespace {

Triangulation flatten_pair(const Triangulation& t, int p, int q, const Perm& g,
                           const std::vector<int>& fuse_slots) {
    // Fuse ridge (p, s) with (q, g(s)) for each s in fuse_slots; p and q are
    // dropped.
    std::vector<int> new_index(t.size(), -1);
    int kept = 0;
    for (int r = 0; r < t.size(); ++r)
        if (r != p && r != q) new_index[r] = kept++;

    std::vector<std::vector<Entry>> table(kept, std::vector<Entry>(5));
    for (int s : fuse_slots) {
        const Entry ep = t.entry(p, s);
        const Entry eq = t.entry(q, g(s));
        if (ep.is_boundary() && eq.is_boundary())
            throw Error(Err::InvalidSite, "fused ridge would not touch any pentachoron");
        if (ep.is_boundary()) {
            table[new_index[eq.target]][eq.perm(g(s))] = Entry::boundary();
        } else if (eq.is_boundary()) {
            table[new_index[ep.target]][ep.perm(s)] = Entry::boundary();
        } else {
            Perm through = eq.perm * g * ep.perm.inverse();
            table[new_index[ep.target]][ep.perm(s)] = Entry::glued(new_index[eq.target], through);
            table[new_index[eq.target]][eq.perm(g(s))] =
                Entry::glued(new_index[ep.target], through.inverse());
        }
    }
    for (int r = 0; r < t.size(); ++r) {
        if (r == p || r == q) continue;
        for (int s = 0; s < 5; ++s) {
            const Entry& e = t.entry(r, s);
            if (!e.is_boundary() && (e.target == p || e.target == q)) continue; // already fused
            if (!table[new_index[r]][s].is_boundary()) continue;                // fused entry
            if (e.is_boundary()) {
                table[new_index[r]][s] = Entry::boundary();
            } else {
                table[new_index[r]][s] = Entry::glued(new_index[e.target], e.perm);
            }
        }
    }
    try {
        return Triangulation::build(4, std::move(table));
    } catch (const Error&) {
        throw Error(Err::InvalidSite, "flattening folds a ridge onto itself");
    }
}

void assert_homology_unchanged(const Triangulation& before, const Triangulation& after,
                               const char* what) {
    if (homology(before) != homology(after))
        throw Error(Err::InvalidSite, std::string(what) + " changed the homology groups");
}

} // namespace

Triangulation two_zero(const Triangulation& t, const Skeleton& sk, int dim, int index,
                       bool safe) {
    if (dim < 0 || dim > 2 || index < 0 || index >= static_cast<int>(sk.faces(dim).size()))
        throw Error(Err::InvalidSite, "no such face");
    const FaceClass& f = sk.faces(dim)[index];
    if (f.boundary || f.degree() != 2)
        throw Error(Err::InvalidSite, "2-0 move needs an internal face of degree 2");
    const int p = f.members[0].simplex;
    const int q = f.members[1].simplex;
    if (p == q) throw Error(Err::InvalidSite, "both occurrences in the same pentachoron");
    const uint8_t sp = f.members[0].mask;
    const uint8_t sq = f.members[1].mask;

    // The 4-dim facets of p containing the face must all be glued straight
    // to q, and must agree on a single vertex correspondence g.
    std::array<int, 5> g_img{-1, -1, -1, -1, -1};
    int pillow = 0;
    for (int i = 0; i < 5; ++i) {
        if (sp & (1 << i)) continue;
        const Entry& e = t.entry(p, i);
        if (e.is_boundary() || e.target != q)
            throw Error(Err::InvalidSite, "enclosing facets are not glued pairwise");
        ++pillow;
        for (int v = 0; v < 5; ++v) {
            if (v == i) continue;
            if (g_img[v] < 0)
                g_img[v] = e.perm(v);
            else if (g_img[v] != e.perm(v))
                throw Error(Err::InvalidSite, "enclosing gluings disagree");
        }
    }
    if (pillow != 4 - dim)
        throw Error(Err::InvalidSite, "wrong number of enclosing facets");
    // One vertex can stay undetermined (dim == 0 leaves none; otherwise the
    // map is forced on every vertex except possibly a single free slot).
    int freev = -1;
    uint32_t used = 0;
    for (int v = 0; v < 5; ++v)
        if (g_img[v] >= 0) used |= 1u << g_img[v];
    for (int v = 0; v < 5; ++v) {
        if (g_img[v] >= 0) continue;
        if (freev >= 0) throw Error(Err::InvalidSite, "vertex correspondence underdetermined");
        freev = v;
    }
    if (freev >= 0) {
        for (int u = 0; u < 5; ++u)
            if (!(used & (1u << u))) g_img[freev] = u;
    }
    Perm g = Perm::from_images(5, g_img);
    if (apply_perm_to_mask(g, sp) != sq)
        throw Error(Err::InvalidSite, "correspondence does not match the face");

    // Fused facet pairs must be pairwise distinct classes, none identified.
    std::vector<int> fuse_slots;
    std::vector<int> classes;
    for (int s = 0; s < 5; ++s) {
        if (!(sp & (1 << s))) continue;
        fuse_slots.push_back(s);
        uint8_t mp = static_cast<uint8_t>(0x1f & ~(1 << s));
        uint8_t mq = static_cast<uint8_t>(0x1f & ~(1 << g(s)));
        classes.push_back(sk.class_index(3, p, mp));
        classes.push_back(sk.class_index(3, q, mq));
    }
    std::sort(classes.begin(), classes.end());
    if (std::adjacent_find(classes.begin(), classes.end()) != classes.end())
        throw Error(Err::InvalidSite, "facets being pushed together share a face class");

    Triangulation result = flatten_pair(t, p, q, g, fuse_slots);
    if (has_self_identification(result))
        throw Error(Err::WouldCreateSelfIdentification, "2-0 move");
    if (result.components().first != t.components().first)
        throw Error(Err::InvalidSite, "2-0 move would disconnect the triangulation");
    if (!validate(result).valid())
        throw Error(Err::WouldCreateSelfIdentification, "2-0 move breaks a link certificate");
    if (safe) assert_homology_unchanged(t, result, "2-0 move");
    return result;
}

Triangulation collapse_edge(const Triangulation& t, const Skeleton& sk, int index, bool safe) {
    if (index < 0 || index >= static_cast<int>(sk.faces(1).size()))
        throw Error(Err::InvalidSite, "no such edge");
    const FaceClass& e = sk.faces(1)[index];
    {
        const auto& rep = e.rep();
        int cnt;
        auto verts = mask_vertices(rep.mask, &cnt);
        int u = sk.class_index(0, rep.simplex, static_cast<uint8_t>(1 << verts[0]));
        int w = sk.class_index(0, rep.simplex, static_cast<uint8_t>(1 << verts[1]));
        if (u == w) throw Error(Err::SameEndpoints, "edge is a loop");
    }
    for (size_t a = 0; a < e.members.size(); ++a)
        for (size_t b = a + 1; b < e.members.size(); ++b)
            if (e.members[a].simplex == e.members[b].simplex)
                throw Error(Err::InvalidCollapse,
                            "edge occurs twice in one pentachoron");

    // Wires: collapsing merges the two ridges of each member pentachoron
    // that do not contain the edge, via the endpoint transposition.
    std::vector<char> member(t.size(), 0);
    std::vector<std::pair<int, int>> ends(t.size(), {-1, -1});
    for (const auto& m : e.members) {
        int cnt;
        auto verts = mask_vertices(m.mask, &cnt);
        member[m.simplex] = 1;
        ends[m.simplex] = {verts[0], verts[1]};
    }

    std::vector<int> new_index(t.size(), -1);
    int kept = 0;
    for (int q = 0; q < t.size(); ++q)
        if (!member[q]) new_index[q] = kept++;
    if (kept == 0) throw Error(Err::InvalidCollapse, "collapse would remove every pentachoron");

    std::vector<std::vector<Entry>> table(kept, std::vector<Entry>(5));
    std::vector<char> wire_seen(t.size(), 0);
    for (int r = 0; r < t.size(); ++r) {
        if (member[r]) continue;
        for (int s = 0; s < 5; ++s) {
            const Entry& e0 = t.entry(r, s);
            if (e0.is_boundary()) {
                table[new_index[r]][s] = Entry::boundary();
                continue;
            }
            if (!member[e0.target]) {
                table[new_index[r]][s] = Entry::glued(new_index[e0.target], e0.perm);
                continue;
            }
            // Trace through flattened pentachora.
            Perm acc = e0.perm;
            int cur = e0.target;
            int guard = 0;
            Entry out;
            while (true) {
                auto [x, y] = ends[cur];
                int at = acc(s);
                if (at != x && at != y)
                    throw Error(Err::InvalidCollapse, "trace entered a surviving ridge");
                wire_seen[cur] = 1;
                acc = transposition(5, x, y) * acc;
                const Entry& nxt = t.entry(cur, acc(s));
                if (nxt.is_boundary()) {
                    out = Entry::boundary();
                    break;
                }
                if (!member[nxt.target]) {
                    out = Entry::glued(new_index[nxt.target], nxt.perm * acc);
                    break;
                }
                acc = nxt.perm * acc;
                cur = nxt.target;
                if (++guard > 2 * t.size())
                    throw Error(Err::InvalidCollapse, "trace does not terminate");
            }
            table[new_index[r]][s] = out;
        }
    }
    // Chains that never reach a surviving pentachoron (pure cycles or
    // boundary-to-boundary) would leave a tetrahedron with an empty star.
    for (int q = 0; q < t.size(); ++q)
        if (member[q] && !wire_seen[q])
            throw Error(Err::InvalidCollapse, "collapse strands a tetrahedron");

    Triangulation result = [&] {
        try {
            return Triangulation::build(4, std::move(table));
        } catch (const Error&) {
            throw Error(Err::InvalidCollapse, "collapse folds a ridge onto itself");
        }
    }();
    if (has_self_identification(result))
        throw Error(Err::InvalidCollapse, "collapse identifies a face with itself");
    if (result.components().first != t.components().first)
        throw Error(Err::InvalidCollapse, "collapse would disconnect the triangulation");
    if (!validate(result).valid())
        throw Error(Err::InvalidCollapse, "collapse breaks a link certificate");
    if (safe) assert_homology_unchanged(t, result, "edge collapse");
    return result;
}

Triangulation apply_move(const Triangulation& t, const Skeleton& sk, const MoveStep& step,
                         bool safe) {
    switch (step.kind) {
        case MoveKind::Pachner: return pachner_apply(t, sk, step.dim, step.index);
        case MoveKind::TwoZeroVertex: return two_zero(t, sk, 0, step.index, safe);
        case MoveKind::TwoZeroEdge: return two_zero(t, sk, 1, step.index, safe);
        case MoveKind::TwoZeroTriangle: return two_zero(t, sk, 2, step.index, safe);
        case MoveKind::Collapse: return collapse_edge(t, sk, step.index, safe);
    }
    throw Error(Err::InvalidInput, "unknown move kind");
}

std::vector<MoveStep> pachner_sites(const Triangulation& t, const Skeleton& sk) {
    std::vector<MoveStep> out;
    for (int dim = 0; dim < 4; ++dim)
        for (int i = 0; i < static_cast<int>(sk.faces(dim).size()); ++i)
            if (pachner_valid(t, sk, dim, i)) out.push_back({MoveKind::Pachner, dim, i});
    for (int i = 0; i < t.size(); ++i) out.push_back({MoveKind::Pachner, 4, i});
    return out;
}

std::vector<MoveStep> simplify_sites(const Triangulation& t, const Skeleton& sk, bool safe) {
    std::vector<MoveStep> out;
    auto try_site = [&](const MoveStep& step) {
        try {
            apply_move(t, sk, step, safe);
            out.push_back(step);
        } catch (const Error&) {
        }
    };
    static const MoveKind tz[3] = {MoveKind::TwoZeroVertex, MoveKind::TwoZeroEdge,
                                   MoveKind::TwoZeroTriangle};
    for (int dim = 0; dim <= 2; ++dim)
        for (int i = 0; i < static_cast<int>(sk.faces(dim).size()); ++i)
            try_site({tz[dim], dim, i});
    for (int i = 0; i < static_cast<int>(sk.faces(1).size()); ++i)
        try_site({MoveKind::Collapse, 1, i});
    return out;
}

std::string MoveStep::str() const {
    switch (kind) {
        case MoveKind::Pachner: return std::to_string(dim) + "," + std::to_string(index);
        case MoveKind::TwoZeroVertex: return "V," + std::to_string(index);
        case MoveKind::TwoZeroEdge: return "E," + std::to_string(index);
        case MoveKind::TwoZeroTriangle: return "T," + std::to_string(index);
        case MoveKind::Collapse: return "C," + std::to_string(index);
    }
    return "?";
}

std::string format_certificate(const Certificate& c) {
    std::string out = "# tri4 move sequence v1\n";
    out += "# labeling: canonical (tri4), re-derived after each move\n";
    out += "# from: " + c.from_sig + "\n";
    out += "# to: " + c.to_sig + "\n";
    if (c.cap >= 0) out += "# cap: " + std::to_string(c.cap) + "\n";
    for (const auto& s : c.steps) out += s.str() + "\n";
    return out;
}

Certificate parse_certificate(const std::string& text) {
    Certificate c;
    std::istringstream in(text);
    std::string line;
    auto header = [&](const std::string& l, const char* key) -> std::optional<std::string> {
        std::string prefix = std::string("# ") + key + ": ";
        if (l.rfind(prefix, 0) == 0) return l.substr(prefix.size());
        return std::nullopt;
    };
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (auto v = header(line, "from")) c.from_sig = *v;
            if (auto v = header(line, "to")) c.to_sig = *v;
            if (auto v = header(line, "cap")) c.cap = std::stoi(*v);
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(Err::ParseError, "bad move line '" + line + "'");
        std::string kind = line.substr(0, comma);
        int idx = std::stoi(line.substr(comma + 1));
        MoveStep step;
        step.index = idx;
        if (kind == "C") {
            step.kind = MoveKind::Collapse;
            step.dim = 1;
        } else if (kind == "E") {
            step.kind = MoveKind::TwoZeroEdge;
            step.dim = 1;
        } else if (kind == "T") {
            step.kind = MoveKind::TwoZeroTriangle;
            step.dim = 2;
        } else if (kind == "V") {
            step.kind = MoveKind::TwoZeroVertex;
            step.dim = 0;
        } else if (kind.size() == 1 && kind[0] >= '0' && kind[0] <= '4') {
            step.kind = MoveKind::Pachner;
            step.dim = kind[0] - '0';
        } else {
            throw Error(Err::ParseError, "bad move kind '" + kind + "'");
        }
        c.steps.push_back(step);
    }
    return c;
}

} // namespace tri4
