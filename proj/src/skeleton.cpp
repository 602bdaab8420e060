#include "tri4/skeleton.hpp"

#include <algorithm>
#include <map>

#include "tri4/errors.hpp"

namespace tri4 {

const std::vector<uint8_t>& subset_masks(int n, int k) {
    static std::vector<uint8_t> tables[6][6];
    static bool built = false;
    if (!built) {
        for (int nn = 1; nn <= 5; ++nn) {
            for (int kk = 1; kk <= nn; ++kk) {
                std::vector<int> idx(kk);
                for (int i = 0; i < kk; ++i) idx[i] = i;
                auto& out = tables[nn][kk];
                while (true) {
                    uint8_t m = 0;
                    for (int v : idx) m |= static_cast<uint8_t>(1 << v);
                    out.push_back(m);
                    int i = kk - 1;
                    while (i >= 0 && idx[i] == nn - kk + i) --i;
                    if (i < 0) break;
                    ++idx[i];
                    for (int j = i + 1; j < kk; ++j) idx[j] = idx[j - 1] + 1;
                }
            }
        }
        built = true;
    }
    return tables[n][k];
}

std::array<int, 5> mask_vertices(uint8_t mask, int* count) {
    std::array<int, 5> out{};
    int c = 0;
    for (int v = 0; v < 5; ++v)
        if (mask & (1 << v)) out[c++] = v;
    if (count) *count = c;
    return out;
}

int mask_position(uint8_t mask, int v) {
    int pos = 0;
    for (int u = 0; u < v; ++u)
        if (mask & (1 << u)) ++pos;
    return pos;
}

uint8_t apply_perm_to_mask(const Perm& p, uint8_t mask) {
    uint8_t out = 0;
    for (int v = 0; v < 5; ++v)
        if (mask & (1 << v)) out |= static_cast<uint8_t>(1 << p(v));
    return out;
}

namespace {

// Union-find over faces of one dimension, tracking for every node the
// position bijection onto its parent.
struct PermForest {
    std::vector<int> parent;
    std::vector<Perm> to_parent;

    explicit PermForest(int n, int degree) : parent(n, -1), to_parent(n, Perm(degree)) {}

    std::pair<int, Perm> find(int x) {
        if (parent[x] < 0) return {x, to_parent[x]};
        auto [root, pr] = find(parent[x]);
        parent[x] = root;
        to_parent[x] = pr * to_parent[x];
        return {root, to_parent[x]};
    }

    // Relation x ~ y with map r: positions of x -> positions of y. Returns a
    // non-identity self-map if the relation is inconsistent with the forest.
    std::pair<bool, Perm> unite(int x, int y, const Perm& r) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx != ry) {
            parent[ry] = rx;
            to_parent[ry] = px * r.inverse() * py.inverse();
            return {true, Perm()};
        }
        Perm via_y = py * r; // x -> root
        if (via_y != px) return {false, px.inverse() * via_y};
        return {true, Perm()};
    }
};

} // namespace

Skeleton skeleton_checked(const Triangulation& t,
                          std::vector<SelfIdentViolation>* violations) {
    const int d = t.dim();
    const int n = t.size();
    Skeleton sk;
    sk.dim_ = d;
    sk.size_ = n;
    sk.f_vector_.assign(d + 1, 0);
    sk.f_vector_[d] = n;
    const uint8_t full = static_cast<uint8_t>((1 << (d + 1)) - 1);

    for (int m = 0; m < d; ++m) {
        const auto& subs = subset_masks(d + 1, m + 1);
        PermForest forest(n * 32, m + 1);

        // Identify faces across every gluing.
        for (int q = 0; q < n; ++q) {
            for (int i = 0; i <= d; ++i) {
                const Entry& e = t.entry(q, i);
                if (e.is_boundary()) continue;
                const uint8_t facet = full & ~static_cast<uint8_t>(1 << i);
                for (uint8_t s : subs) {
                    if ((s & facet) != s) continue;
                    uint8_t img = apply_perm_to_mask(e.perm, s);
                    int cnt;
                    auto verts = mask_vertices(s, &cnt);
                    std::array<int, 5> rimg{};
                    for (int a = 0; a < cnt; ++a)
                        rimg[a] = mask_position(img, e.perm(verts[a]));
                    Perm r = Perm::from_images(m + 1, rimg);
                    auto [ok, self] = forest.unite(q * 32 + s, e.target * 32 + img, r);
                    if (!ok && violations)
                        violations->push_back({m, q, s, self});
                }
            }
        }

        // Group into classes, representative = canonically first member.
        std::vector<int> class_of_root(n * 32, -1);
        auto& classes = sk.faces_[m];
        sk.index_[m].assign(n * 32, -1);
        sk.torep_[m].assign(n * 32, Perm(m + 1));
        for (int q = 0; q < n; ++q) {
            for (uint8_t s : subs) {
                auto [root, pr] = forest.find(q * 32 + s);
                int c = class_of_root[root];
                if (c < 0) {
                    c = static_cast<int>(classes.size());
                    class_of_root[root] = c;
                    classes.push_back(FaceClass{});
                    classes[c].dim = m;
                }
                classes[c].members.push_back({q, s, pr});
                sk.index_[m][q * 32 + s] = c;
            }
        }
        // First member is canonically first by scan order; re-base to_rep
        // maps onto it.
        for (auto& fc : classes) {
            fc.rep_member = 0;
            Perm base = fc.members[0].to_rep.inverse();
            for (auto& mem : fc.members) mem.to_rep = base * mem.to_rep;
        }
        for (auto& fc : classes)
            for (auto& mem : fc.members)
                sk.torep_[m][mem.simplex * 32 + mem.mask] = mem.to_rep;

        // Boundary faces: contained in an unglued ridge.
        for (int q = 0; q < n; ++q) {
            for (int i = 0; i <= d; ++i) {
                if (!t.entry(q, i).is_boundary()) continue;
                const uint8_t facet = full & ~static_cast<uint8_t>(1 << i);
                for (uint8_t s : subs)
                    if ((s & facet) == s) classes[sk.index_[m][q * 32 + s]].boundary = true;
            }
        }
        sk.f_vector_[m] = static_cast<long>(classes.size());
    }
    return sk;
}

Skeleton skeleton(const Triangulation& t) {
    std::vector<SelfIdentViolation> v;
    Skeleton sk = skeleton_checked(t, &v);
    if (!v.empty())
        throw Error(Err::SelfIdentification,
                    "face of dimension " + std::to_string(v.front().dim) + " in simplex " +
                        std::to_string(v.front().simplex) +
                        " is identified with itself along a non-identity map");
    return sk;
}

int Skeleton::class_index(int m, int simplex, uint8_t mask) const {
    return index_[m][simplex * 32 + mask];
}

const Perm& Skeleton::to_rep(int m, int simplex, uint8_t mask) const {
    return torep_[m][simplex * 32 + mask];
}

} // namespace tri4
