#pragma once

#include <random>

#include "tri4/canonical.hpp"
#include "tri4/skeleton.hpp"
#include "tri4/triangulation.hpp"

namespace tri4::testing {

/// Uniformly random relabeling (simplex permutation + per-simplex vertex
/// permutations) driven by a seeded generator.
inline Triangulation random_relabel(const Triangulation& t, std::mt19937_64& rng) {
    const int n = t.size();
    std::vector<int> smap(n);
    for (int i = 0; i < n; ++i) smap[i] = i;
    std::shuffle(smap.begin(), smap.end(), rng);
    std::vector<Perm> vmaps;
    vmaps.reserve(n);
    std::uniform_int_distribution<int> d(0, Perm::factorial(t.dim() + 1) - 1);
    for (int i = 0; i < n; ++i) vmaps.push_back(Perm::from_index(t.dim() + 1, d(rng)));
    return t.relabel(smap, vmaps);
}

} // namespace tri4::testing
