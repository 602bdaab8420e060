#pragma once

#include <string>
#include <vector>

#include "tri4/triangulation.hpp"

namespace tri4 {

struct Relabeling {
    std::vector<int> simplex_map; // old -> new
    std::vector<Perm> vertex_maps;
};

struct CanonicalForm {
    Triangulation triangulation;
    Relabeling relabeling;
    std::string signature;
};

/// Canonical form of a triangulation. For every (start simplex, start vertex
/// permutation) pair a breadth-first relabeling is produced: new indices in
/// first-encounter order scanning slots 0..d of simplices in new-index order,
/// each newly reached simplex relabelled so the discovering gluing becomes
/// the identity. The lexicographically minimal serialization wins.
/// Disconnected inputs are canonicalized per component, components sorted by
/// their serialization, then concatenated.
///
/// threads <= 1 runs the serial reference scan; threads > 1 evaluates
/// candidates in parallel with a deterministic minimum reduction. The
/// canonical triangulation and signature are identical for every thread
/// count; only the reported relabeling may differ by an automorphism.
CanonicalForm canonical_form(const Triangulation& t, int threads = 1);

/// Signature text: "d<dim>:<size>:" followed by one cell per (simplex, slot)
/// in canonical order, comma separated; a cell is "b" for boundary or
/// "<target>.<perm index>" zero-padded to fixed width so that equal sizes
/// yield equal cell widths. Equal signatures <=> combinatorially isomorphic.
std::string signature(const Triangulation& t, int threads = 1);

/// Parses the signature text back into a (canonically labelled) triangulation.
Triangulation parse_signature(const std::string& sig);

bool is_isomorphic(const Triangulation& a, const Triangulation& b);

/// All relabelings of a connected triangulation onto itself that reproduce
/// the gluing table exactly (the identity is always included).
std::vector<Relabeling> automorphisms(const Triangulation& t);

} // namespace tri4
