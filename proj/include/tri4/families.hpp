#pragma once

#include <string>
#include <vector>

#include "tri4/canonical.hpp"
#include "tri4/triangulation.hpp"

namespace tri4 {

/// The one-pentachoron "double snapped" 4-ball; one boundary tetrahedron.
Triangulation dsb2();

/// The 1-tetrahedron 3-sphere forming the boundary of dsb2().
Triangulation boundary_s();

/// Two pentachora with their boundaries identified by the identity map.
Triangulation pillow_s4();

/// The 8-pentachoron cylinder: two tetrahedral prisms glued along their
/// walls; both boundary components are 2-tetrahedron pillows.
Triangulation cylinder_c();

enum class FamilyKind { P, E, A, D };

/// The four infinite families as literal table transcriptions:
///   P_k: 2k+2 pentachora, beta2 = k
///   E_k: 4k+2 pentachora, beta2 = 2k
///   A_k: 4k+2 pentachora, beta2 = 2k
///   D_{k,l}: 2k+4l+2 pentachora, beta2 = k+2l
/// l is ignored except for D. P_0 = E_0 = A_0 = D_{0,0}; D_{k,0} equals P_k
/// and D_{0,l} equals E_l.
Triangulation family(FamilyKind kind, int k, int l = 0);

/// The table text the generator is transcribed from (same bytes that
/// emit_table(family(...)) produces).
std::string family_table_text(FamilyKind kind, int k, int l = 0);

enum class UnitKind { Bow, EvenHook, OddHook };

/// Chain units: a bow (2 pentachora) or a hook (4 pentachora), each with two
/// boundary tetrahedra. Extracted from the k=1 family members by deleting the
/// cap pentachora.
struct Unit {
    UnitKind kind;
    Triangulation tri;
    Site first_boundary;  // glued towards the front of the chain
    Site second_boundary; // stays open for the next unit
};

Unit unit(UnitKind kind);

/// The unique non-identity relabeling that reproduces the unit's gluing
/// table exactly.
Relabeling unit_symmetry(const Unit& u);
Relabeling dsb2_symmetry();

/// Builds a chain DSB2 + units + DSB2, picking at each step the first gluing
/// permutation that yields a valid triangulation. Isomorphic to the table
/// transcriptions by construction.
Triangulation build_chain(const std::vector<UnitKind>& units);

/// For a gluing that joins two adjacent chain segments (severing it must
/// disconnect the triangulation), returns every permutation of the severed
/// boundary tetrahedra that reglues to a valid triangulation. For family
/// inter-unit gluings this list has exactly two elements and both results
/// are combinatorially isomorphic.
std::vector<Perm> alternative_regluings(const Triangulation& t, const Site& site);

/// The gluings joining consecutive chain segments (cap-unit and unit-unit)
/// of a family member, by construction. One site per gluing, front side.
std::vector<Site> inter_unit_gluings(FamilyKind kind, int k, int l = 0);

} // namespace tri4
