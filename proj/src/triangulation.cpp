#include "tri4/triangulation.hpp"

#include <algorithm>
#include <numeric>

#include "tri4/errors.hpp"

namespace tri4 {

Triangulation::Triangulation(int dim) : dim_(dim) {
    if (dim < 0 || dim > 4) throw Error(Err::InvalidInput, "dimension must be 0..4");
}

Triangulation Triangulation::build(int dim, std::vector<std::vector<Entry>> table) {
    Triangulation t(dim);
    const int slots = dim == 0 ? 0 : dim + 1;
    const int n = static_cast<int>(table.size());
    for (int q = 0; q < n; ++q) {
        if (static_cast<int>(table[q].size()) != slots)
            throw Error(Err::InvalidInput,
                        "simplex " + std::to_string(q) + " has wrong slot count");
        for (int i = 0; i < slots; ++i) {
            const Entry& e = table[q][i];
            if (e.is_boundary()) continue;
            if (e.target < 0 || e.target >= n)
                throw Error(Err::IndexOutOfRange,
                            "gluing target " + std::to_string(e.target) + " out of range");
            if (e.perm.size() != slots)
                throw Error(Err::InvalidInput, "gluing permutation has wrong degree");
            const int j = e.perm(i);
            if (e.target == q && j == i)
                throw Error(Err::InconsistentGluing,
                            "facet glued to itself at simplex " + std::to_string(q) +
                                " slot " + std::to_string(i));
            const Entry& back = table[e.target][j];
            if (back.is_boundary() || back.target != q || back.perm != e.perm.inverse() ||
                back.perm(j) != i)
                throw Error(Err::InconsistentGluing,
                            "partner of simplex " + std::to_string(q) + " slot " +
                                std::to_string(i) + " is missing or not inverse");
        }
    }
    t.table_ = std::move(table);
    return t;
}

bool Triangulation::is_closed() const { return boundary_facet_count() == 0; }

int Triangulation::boundary_facet_count() const {
    int c = 0;
    for (const auto& row : table_)
        for (const auto& e : row)
            if (e.is_boundary()) ++c;
    return c;
}

std::vector<Site> Triangulation::boundary_sites() const {
    std::vector<Site> out;
    for (int q = 0; q < size(); ++q)
        for (int i = 0; i < static_cast<int>(table_[q].size()); ++i)
            if (table_[q][i].is_boundary()) out.push_back({q, i});
    return out;
}

Triangulation Triangulation::unglue(const Site& site) const {
    if (site.simplex < 0 || site.simplex >= size() || site.slot < 0 || site.slot > dim_)
        throw Error(Err::IndexOutOfRange, "unglue site");
    const Entry& e = entry(site);
    if (e.is_boundary()) throw Error(Err::NotInternal, "unglue requires an internal ridge");
    auto table = table_;
    table[e.target][e.perm(site.slot)] = Entry::boundary();
    table[site.simplex][site.slot] = Entry::boundary();
    return build(dim_, std::move(table));
}

Triangulation Triangulation::glue_boundary(const Site& a, const Site& b, const Perm& perm) const {
    if (a.simplex < 0 || a.simplex >= size() || b.simplex < 0 || b.simplex >= size() ||
        a.slot < 0 || a.slot > dim_ || b.slot < 0 || b.slot > dim_)
        throw Error(Err::IndexOutOfRange, "reglue site");
    if (!entry(a).is_boundary() || !entry(b).is_boundary())
        throw Error(Err::NotBoundary, "reglue requires two boundary facets");
    if (a == b) throw Error(Err::InvalidInput, "cannot glue a facet to itself");
    if (perm.size() != dim_ + 1 || perm(a.slot) != b.slot)
        throw Error(Err::InconsistentGluing, "permutation does not map slot to slot");
    auto table = table_;
    table[a.simplex][a.slot] = Entry::glued(b.simplex, perm);
    table[b.simplex][b.slot] = Entry::glued(a.simplex, perm.inverse());
    return build(dim_, std::move(table));
}

Triangulation Triangulation::relabel(const std::vector<int>& simplex_map,
                                     const std::vector<Perm>& vertex_maps) const {
    const int n = size();
    std::vector<std::vector<Entry>> table(n, std::vector<Entry>(slots_per_simplex()));
    for (int q = 0; q < n; ++q) {
        for (int i = 0; i < slots_per_simplex(); ++i) {
            const Entry& e = table_[q][i];
            const int nq = simplex_map[q];
            const int ni = vertex_maps[q](i);
            if (e.is_boundary()) {
                table[nq][ni] = Entry::boundary();
            } else {
                Perm np = vertex_maps[e.target] * e.perm * vertex_maps[q].inverse();
                table[nq][ni] = Entry::glued(simplex_map[e.target], np);
            }
        }
    }
    return build(dim_, std::move(table));
}

Triangulation Triangulation::remove_simplex(int index) const {
    if (index < 0 || index >= size()) throw Error(Err::IndexOutOfRange, "remove_simplex");
    std::vector<std::vector<Entry>> table;
    table.reserve(size() - 1);
    for (int q = 0; q < size(); ++q) {
        if (q == index) continue;
        std::vector<Entry> row = table_[q];
        for (auto& e : row) {
            if (e.is_boundary()) continue;
            if (e.target == index)
                e = Entry::boundary();
            else if (e.target > index)
                e.target -= 1;
        }
        table.push_back(std::move(row));
    }
    return build(dim_, std::move(table));
}

Triangulation Triangulation::disjoint_union(const Triangulation& other) const {
    if (dim_ != other.dim_) throw Error(Err::InvalidInput, "dimension mismatch");
    auto table = table_;
    const int off = size();
    for (const auto& row : other.table_) {
        std::vector<Entry> r = row;
        for (auto& e : r)
            if (!e.is_boundary()) e.target += off;
        table.push_back(std::move(r));
    }
    return build(dim_, std::move(table));
}

std::pair<int, std::vector<int>> Triangulation::components() const {
    const int n = size();
    std::vector<int> comp(n, -1);
    int count = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (const auto& e : table_[q]) {
                if (!e.is_boundary() && comp[e.target] < 0) {
                    comp[e.target] = count;
                    stack.push_back(e.target);
                }
            }
        }
        ++count;
    }
    return {count, comp};
}

bool Triangulation::is_connected() const { return components().first <= 1; }

std::vector<Triangulation> Triangulation::split_components(
    std::vector<std::pair<int, int>>* out_simplex_map) const {
    auto [count, comp] = components();
    std::vector<int> local(size());
    std::vector<int> next(count, 0);
    for (int q = 0; q < size(); ++q) local[q] = next[comp[q]]++;
    std::vector<std::vector<std::vector<Entry>>> tables(count);
    for (int c = 0; c < count; ++c) tables[c].resize(next[c]);
    for (int q = 0; q < size(); ++q) {
        std::vector<Entry> row = table_[q];
        for (auto& e : row)
            if (!e.is_boundary()) e.target = local[e.target];
        tables[comp[q]][local[q]] = std::move(row);
    }
    if (out_simplex_map) {
        out_simplex_map->resize(size());
        for (int q = 0; q < size(); ++q) (*out_simplex_map)[q] = {comp[q], local[q]};
    }
    std::vector<Triangulation> out;
    out.reserve(count);
    for (auto& tb : tables) out.push_back(build(dim_, std::move(tb)));
    return out;
}

bool Triangulation::is_orientable() const {
    // Adjacent simplices must carry opposite sign times the gluing sign:
    // orient(q) = -orient(p) * sign(perm).
    const int n = size();
    std::vector<int> orient(n, 0);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (orient[s] != 0) continue;
        orient[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (const auto& e : table_[q]) {
                if (e.is_boundary()) continue;
                int want = -orient[q] * e.perm.sign();
                if (orient[e.target] == 0) {
                    orient[e.target] = want;
                    stack.push_back(e.target);
                } else if (orient[e.target] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

DualGraph dual_graph(const Triangulation& t) {
    DualGraph g;
    g.nodes = t.size();
    for (int q = 0; q < t.size(); ++q) {
        for (int i = 0; i < t.slots_per_simplex(); ++i) {
            const Entry& e = t.entry(q, i);
            if (e.is_boundary()) continue;
            int p = e.target, j = e.perm(i);
            // count each gluing once
            if (p < q || (p == q && j < i)) continue;
            g.arcs.emplace_back(std::min(q, p), std::max(q, p));
        }
    }
    std::sort(g.arcs.begin(), g.arcs.end());
    return g;
}

} // namespace tri4
