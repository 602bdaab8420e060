#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tri4/skeleton.hpp"
#include "tri4/triangulation.hpp"

namespace tri4 {

enum class MoveKind { Pachner, TwoZeroVertex, TwoZeroEdge, TwoZeroTriangle, Collapse };

/// One elementary move. `dim` is the dimension of the target face (for the
/// 2-0 moves it is implied by the kind) and `index` is the face-class index
/// in the canonical enumeration order of the triangulation the move applies
/// to (dimension-4 faces are the simplices themselves).
struct MoveStep {
    MoveKind kind = MoveKind::Pachner;
    int dim = 4;
    int index = 0;

    bool operator==(const MoveStep& o) const {
        return kind == o.kind && dim == o.dim && index == o.index;
    }
    std::string str() const;
};

/// A Pachner move on an i-face is legal when the face is internal, its link
/// is the boundary of a (4-i)-simplex, and the 5-i star occurrences lie in
/// pairwise distinct pentachora. Moves on pentachora (1-5) are always legal.
bool pachner_valid(const Triangulation& t, const Skeleton& sk, int dim, int index);

/// Replaces the star of the face by the complementary region of the boundary
/// of a 5-simplex; gluings on the region boundary are transported verbatim.
/// f4 changes by (dim+1) - (5-dim).
Triangulation pachner_apply(const Triangulation& t, const Skeleton& sk, int dim, int index);

/// 2-0 move: two pentachora enclosing an internal face of degree 2 (joined
/// along 4-dim facets) are flattened, fusing the remaining facet pairs.
/// Conservative preconditions plus perform-and-validate; with safe=true the
/// homology groups are additionally asserted unchanged.
Triangulation two_zero(const Triangulation& t, const Skeleton& sk, int dim, int index,
                       bool safe = true);

/// Edge collapse: contracts an edge between two distinct vertices, flattening
/// every pentachoron containing it. f0 drops by 1, f4 by the degree.
Triangulation collapse_edge(const Triangulation& t, const Skeleton& sk, int index,
                            bool safe = true);

Triangulation apply_move(const Triangulation& t, const Skeleton& sk, const MoveStep& step,
                         bool safe = true);

/// Valid Pachner sites in canonical order (dimension ascending, face index
/// ascending).
std::vector<MoveStep> pachner_sites(const Triangulation& t, const Skeleton& sk);

/// Valid size-reducing 2-0 and collapse sites, canonical order. A site is
/// listed only if applying it succeeds (perform-and-validate semantics).
std::vector<MoveStep> simplify_sites(const Triangulation& t, const Skeleton& sk, bool safe = true);

/// Move-sequence text: '#'-prefixed header records the endpoint signatures
/// and size cap, then one move per line in "(letter,index)" style: "3,0" for
/// a Pachner move on 3-face 0, and C/E/T/V for collapse and the 2-0 moves.
/// Indices refer to this tool's canonical labeling, re-derived after every
/// move.
struct Certificate {
    std::string from_sig;
    std::string to_sig;
    int cap = -1;
    std::vector<MoveStep> steps;
};

std::string format_certificate(const Certificate& c);
Certificate parse_certificate(const std::string& text);

} // namespace tri4
