#pragma once

#include <string>

#include "tri4/triangulation.hpp"

namespace tri4 {

/// Gluing-table text: one line per simplex, d+1 whitespace-separated cells in
/// ascending facet order (4-dim: Tet 0123, 0124, 0134, 0234, 1234). A cell is
/// "-" for a boundary facet or "q(abcd)" where q is the target simplex and
/// abcd are the images, in ascending source-vertex order, of the facet's
/// vertices. Round-trips bit-exactly.
std::string emit_table(const Triangulation& t);

/// Inverse of emit_table. '#' starts a comment; blank lines are ignored; an
/// empty table parses to the empty 4-dimensional triangulation.
Triangulation parse_table(const std::string& text);

/// Loads either a gluing table or a signature ("d<dim>:..." detects the latter).
Triangulation parse_any(const std::string& text);

} // namespace tri4
