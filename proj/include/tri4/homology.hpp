#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "tri4/skeleton.hpp"
#include "tri4/triangulation.hpp"

namespace tri4 {

using BigInt = boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<BigInt>>;

/// Integral chain complex over the face classes of a triangulation. Signs
/// follow the representative orderings, which are well defined because valid
/// triangulations admit no non-identity self-maps on face classes.
struct ChainComplex {
    int dim = 0;
    std::vector<long> ranks;           // generators per dimension 0..dim
    std::vector<Matrix> boundary_maps; // boundary_maps[k] = d_k : C_k -> C_{k-1}, k = 1..dim
};

ChainComplex chain_complex(const Triangulation& t, const Skeleton& sk);
ChainComplex chain_complex(const Triangulation& t);

struct HomologyGroup {
    long betti = 0;
    std::vector<BigInt> torsion; // divisibility chain, entries > 1

    bool trivial() const { return betti == 0 && torsion.empty(); }
    std::string str() const;
};

struct HomologyGroups {
    std::vector<HomologyGroup> groups; // per dimension 0..dim
    std::string str() const;
    bool operator==(const HomologyGroups& o) const;
    bool operator!=(const HomologyGroups& o) const { return !(*this == o); }
};

/// Exact integral homology via Smith normal form.
HomologyGroups homology(const Triangulation& t);
HomologyGroups homology(const Triangulation& t, const Skeleton& sk);

long euler_characteristic(const Triangulation& t);
long euler_characteristic(const Skeleton& sk);

/// Smith normal form diagonal of an integer matrix (exact arithmetic,
/// smallest-pivot elimination, divisibility chain enforced).
std::vector<BigInt> smith_diagonal(Matrix m);

} // namespace tri4
