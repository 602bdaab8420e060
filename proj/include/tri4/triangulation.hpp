#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tri4/perm.hpp"

namespace tri4 {

/// One gluing-table entry: facet `slot` of some simplex is either unglued
/// (boundary) or attached to facet perm(slot) of simplex `target`, matching
/// vertex j to perm(j) for every j != slot.
struct Entry {
    int target = -1;
    Perm perm;

    bool is_boundary() const { return target < 0; }

    static Entry boundary() { return Entry{}; }
    static Entry glued(int target, const Perm& p) { return Entry{target, p}; }

    bool operator==(const Entry& o) const {
        if (is_boundary() || o.is_boundary()) return is_boundary() == o.is_boundary();
        return target == o.target && perm == o.perm;
    }
    bool operator!=(const Entry& o) const { return !(*this == o); }
};

/// A facet location: (simplex index, facet slot). Slot i is the facet
/// spanned by all vertices except i.
struct Site {
    int simplex = 0;
    int slot = 0;

    bool operator==(const Site& o) const { return simplex == o.simplex && slot == o.slot; }
    bool operator!=(const Site& o) const { return !(*this == o); }
};

/// Generalised triangulation of dimension 0..4: a list of abstract
/// d-simplices glued in pairs along their (d-1)-faces. Immutable after
/// construction; every mutating operation returns a new value.
class Triangulation {
public:
    /// Empty triangulation of the given dimension.
    explicit Triangulation(int dim = 4);

    /// Validates involution consistency of the table: the entry stored at
    /// (target, perm(slot)) must be (source, perm^-1), and no facet may be
    /// glued to itself.
    static Triangulation build(int dim, std::vector<std::vector<Entry>> table);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(table_.size()); }
    /// Codimension-1 faces per simplex; a point has none.
    int slots_per_simplex() const { return dim_ == 0 ? 0 : dim_ + 1; }

    const Entry& entry(int simplex, int slot) const { return table_[simplex][slot]; }
    const Entry& entry(const Site& s) const { return table_[s.simplex][s.slot]; }
    const std::vector<std::vector<Entry>>& table() const { return table_; }

    bool is_closed() const;
    int boundary_facet_count() const;
    std::vector<Site> boundary_sites() const;

    /// Detach the gluing at an internal site (both sides become boundary).
    Triangulation unglue(const Site& site) const;

    /// Glue two boundary facets; perm must map a.slot to b.slot. Structural
    /// only; the checked variant lives in kernel.hpp.
    Triangulation glue_boundary(const Site& a, const Site& b, const Perm& perm) const;

    /// New triangulation with simplices renumbered by simplex_map (old->new)
    /// and vertices of old simplex q relabelled by vertex_maps[q].
    Triangulation relabel(const std::vector<int>& simplex_map,
                          const std::vector<Perm>& vertex_maps) const;

    /// Drop one simplex; gluings to it become boundary, higher indices shift
    /// down by one.
    Triangulation remove_simplex(int index) const;

    /// Disjoint union; simplices of `other` are appended after ours.
    Triangulation disjoint_union(const Triangulation& other) const;

    /// Connected components of the dual graph, as component index per simplex.
    std::pair<int, std::vector<int>> components() const;
    bool is_connected() const;

    /// Splits into connected components; out_simplex_map[q] = (component,
    /// index within component).
    std::vector<Triangulation> split_components(
        std::vector<std::pair<int, int>>* out_simplex_map = nullptr) const;

    /// Consistent orientation of all top-simplices exists.
    bool is_orientable() const;

    bool operator==(const Triangulation& o) const {
        return dim_ == o.dim_ && table_ == o.table_;
    }
    bool operator!=(const Triangulation& o) const { return !(*this == o); }

private:
    int dim_;
    std::vector<std::vector<Entry>> table_;
};

/// Dual graph: one node per top simplex, one arc per gluing (loops allowed).
struct DualGraph {
    int nodes = 0;
    std::vector<std::pair<int, int>> arcs; // endpoints sorted, list sorted
};

DualGraph dual_graph(const Triangulation& t);

} // namespace tri4
