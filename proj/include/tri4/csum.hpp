#pragma once

#include "tri4/triangulation.hpp"

namespace tri4 {

/// Pops open the ridge at `site` and glues one pillow end of the cylinder
/// into the opening: cylinder end c1 attaches to the site by the
/// ascending-order permutation rho, c2 to the old partner by sigma*rho, so
/// every lower-dimensional identification survives. Adds 8 pentachora; the
/// new boundary component is a 2-tetrahedron pillow.
Triangulation puncture(const Triangulation& t, const Site& site);

/// Connected sum: punctures the disjoint union at site1, then glues the
/// remaining pillow end of the inserted cylinder into the opened ridge at
/// site2 (indices refer to t2's own labels). `sign` composes both new
/// gluings with the vertex swap (1 2), giving the opposite of the two
/// possible sums. f4 = f4(t1) + f4(t2) + 8.
Triangulation connected_sum(const Triangulation& t1, const Site& site1,
                            const Triangulation& t2, const Site& site2, bool sign = false);

} // namespace tri4
