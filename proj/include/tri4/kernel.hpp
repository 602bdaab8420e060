#pragma once

#include <string>
#include <vector>

#include "tri4/skeleton.hpp"
#include "tri4/triangulation.hpp"

namespace tri4 {

/// Boundary of the standard n-simplex: n+1 copies of the (n-1)-simplex, each
/// pair glued along the order-preserving map of their shared face.
Triangulation boundary_of_simplex(int n);

/// Link of a face class: one facet per member occurrence, gluings inherited
/// from the gluings of t that involve all vertices of the face.
Triangulation link(const Triangulation& t, const FaceClass& f);

/// Star at top-simplex level: the member occurrences of f.
const std::vector<FaceClass::Member>& star(const FaceClass& f);

/// Boundary triangulation: un-glued ridges with their faces, one dimension
/// down. Gluings are recovered by pivoting around each codimension-2 face.
Triangulation boundary(const Triangulation& t);

/// Checked surgery: unglue an internal ridge / reglue two boundary ridges.
/// reglue aborts with WouldCreateSelfIdentification instead of returning an
/// invalid triangulation.
Triangulation unglue(const Triangulation& t, const Site& site);
Triangulation reglue(const Triangulation& t, const Site& a, const Site& b, const Perm& perm);

struct ValidityReport {
    bool structural_ok = true;
    bool no_reverse_self_identification = true;
    bool closed = true;
    bool vertex_links_manifoldlike = true;

    struct Offender {
        int dim;
        int simplex;
        uint8_t mask;
        std::string reason;
    };
    std::vector<Offender> offending_faces;

    /// Everything except closedness, which is a property rather than a defect.
    bool valid() const {
        return structural_ok && no_reverse_self_identification && vertex_links_manifoldlike;
    }
};

/// Validity certification. The vertex-link flag is a certificate only: links
/// must be connected, valid, and carry the Euler characteristic and trivial
/// low homology of a sphere (or of a ball, for boundary vertices). This is
/// necessary but not sufficient for genuine sphere links.
ValidityReport validate(const Triangulation& t);

/// Cheap subset of validate: no non-identity self-identifications.
bool has_self_identification(const Triangulation& t);

} // namespace tri4
