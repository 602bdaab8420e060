#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tri4/triangulation.hpp"

namespace tri4 {

/// Vertex subsets of {0..n-1} of size k, as bitmasks listed in lexicographic
/// order of their sorted vertex tuples.
const std::vector<uint8_t>& subset_masks(int n, int k);

/// Sorted vertices of a mask.
std::array<int, 5> mask_vertices(uint8_t mask, int* count = nullptr);

/// Position of vertex v within the sorted vertex list of mask.
int mask_position(uint8_t mask, int v);

/// Image mask under a permutation.
uint8_t apply_perm_to_mask(const Perm& p, uint8_t mask);

/// A face identified with itself along a non-identity vertex map; this makes
/// the triangulation invalid.
struct SelfIdentViolation {
    int dim;
    int simplex;
    uint8_t mask;
    Perm self_map; // positions of the face onto themselves, != identity
};

/// One equivalence class of pre-glued faces. members[rep_member] is the
/// distinguished representative (canonically first); to_rep maps each
/// member's vertex positions (ascending order) onto the representative's.
struct FaceClass {
    struct Member {
        int simplex;
        uint8_t mask;
        Perm to_rep;
    };

    int dim = 0;
    std::vector<Member> members;
    int rep_member = 0;
    bool boundary = false;

    int degree() const { return static_cast<int>(members.size()); }
    const Member& rep() const { return members[rep_member]; }
};

/// Face classes of every proper dimension plus the f-vector. Classes within
/// one dimension are numbered by first encounter scanning simplices in index
/// order and subsets in lexicographic order; this ordering is what move
/// certificates index into.
class Skeleton {
public:
    int dim() const { return dim_; }
    const std::vector<FaceClass>& faces(int m) const { return faces_[m]; }
    const std::vector<long>& f_vector() const { return f_vector_; }

    int class_index(int m, int simplex, uint8_t mask) const;
    const Perm& to_rep(int m, int simplex, uint8_t mask) const;
    const FaceClass& class_of(int m, int simplex, uint8_t mask) const {
        return faces_[m][class_index(m, simplex, mask)];
    }

private:
    friend Skeleton skeleton_checked(const Triangulation&, std::vector<SelfIdentViolation>*);
    int dim_ = 0;
    int size_ = 0;
    std::array<std::vector<FaceClass>, 4> faces_;
    std::vector<long> f_vector_;
    std::array<std::vector<int>, 4> index_;  // (simplex*32 + mask) -> class
    std::array<std::vector<Perm>, 4> torep_; // (simplex*32 + mask) -> to_rep
};

/// Orbit computation; violations (if any) are appended rather than thrown.
Skeleton skeleton_checked(const Triangulation& t,
                          std::vector<SelfIdentViolation>* violations);

/// Throws Error(SelfIdentification) when a face is identified with itself
/// along a non-identity map.
Skeleton skeleton(const Triangulation& t);

} // namespace tri4
