#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace tri4 {

/// Permutation of {0..n-1} for n <= 5. Entries beyond n are fixed points so
/// that composition and inversion stay total regardless of n.
///
/// Permutations are ordered lexicographically by their image tuple; the
/// identity has index 0 and the reversal has index n!-1.
class Perm {
public:
    Perm() : n_(5) {
        for (int i = 0; i < 5; ++i) img_[i] = static_cast<uint8_t>(i);
    }

    explicit Perm(int n) : Perm() { n_ = static_cast<uint8_t>(n); }

    /// Build from explicit images; img must be a bijection on {0..n-1}.
    static Perm from_images(int n, const std::array<int, 5>& img);

    /// n-th degree permutation with the given lexicographic index.
    static Perm from_index(int n, int index);

    static int factorial(int n);

    int size() const { return n_; }
    int operator()(int i) const { return img_[i]; }
    int image(int i) const { return img_[i]; }

    /// (a * b)(x) = a(b(x))
    Perm compose(const Perm& b) const {
        Perm r(n_);
        for (int i = 0; i < 5; ++i) r.img_[i] = img_[b.img_[i]];
        return r;
    }

    Perm inverse() const {
        Perm r(n_);
        for (int i = 0; i < 5; ++i) r.img_[img_[i]] = static_cast<uint8_t>(i);
        return r;
    }

    bool is_identity() const {
        for (int i = 0; i < n_; ++i)
            if (img_[i] != i) return false;
        return true;
    }

    int sign() const;

    /// Lexicographic rank among permutations of the same degree.
    int index() const;

    bool operator==(const Perm& o) const {
        if (n_ != o.n_) return false;
        for (int i = 0; i < n_; ++i)
            if (img_[i] != o.img_[i]) return false;
        return true;
    }
    bool operator!=(const Perm& o) const { return !(*this == o); }

    std::string str() const;

private:
    uint8_t n_;
    std::array<uint8_t, 5> img_;
};

inline Perm operator*(const Perm& a, const Perm& b) { return a.compose(b); }

/// Transposition (a b) acting on {0..n-1}.
Perm transposition(int n, int a, int b);

} // namespace tri4
