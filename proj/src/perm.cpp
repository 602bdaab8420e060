#include "tri4/perm.hpp"

#include "tri4/errors.hpp"

namespace tri4 {

const char* err_name(Err e) {
    switch (e) {
        case Err::InconsistentGluing: return "InconsistentGluing";
        case Err::IndexOutOfRange: return "IndexOutOfRange";
        case Err::SelfIdentification: return "SelfIdentification";
        case Err::NotInternal: return "NotInternal";
        case Err::NotBoundary: return "NotBoundary";
        case Err::WouldCreateSelfIdentification: return "WouldCreateSelfIdentification";
        case Err::InvalidSite: return "InvalidSite";
        case Err::SameEndpoints: return "SameEndpoints";
        case Err::InvalidCollapse: return "InvalidCollapse";
        case Err::BoundarySite: return "BoundarySite";
        case Err::IsomorphicInputs: return "IsomorphicInputs";
        case Err::NotAChainGluing: return "NotAChainGluing";
        case Err::InvalidInput: return "InvalidInput";
        case Err::ParseError: return "ParseError";
    }
    return "UnknownError";
}

int Perm::factorial(int n) {
    static const int f[6] = {1, 1, 2, 6, 24, 120};
    return f[n];
}

Perm Perm::from_images(int n, const std::array<int, 5>& img) {
    Perm p(n);
    uint32_t seen = 0;
    for (int i = 0; i < n; ++i) {
        int v = img[i];
        if (v < 0 || v >= n || (seen & (1u << v)))
            throw Error(Err::InvalidInput, "not a bijection on {0.." + std::to_string(n - 1) + "}");
        seen |= 1u << v;
        p.img_[i] = static_cast<uint8_t>(v);
    }
    return p;
}

Perm Perm::from_index(int n, int index) {
    if (index < 0 || index >= factorial(n))
        throw Error(Err::IndexOutOfRange, "permutation index " + std::to_string(index));
    Perm p(n);
    std::array<uint8_t, 5> pool;
    for (int i = 0; i < n; ++i) pool[i] = static_cast<uint8_t>(i);
    int remaining = n;
    for (int i = 0; i < n; ++i) {
        int f = factorial(remaining - 1);
        int d = index / f;
        index %= f;
        p.img_[i] = pool[d];
        for (int j = d; j + 1 < remaining; ++j) pool[j] = pool[j + 1];
        --remaining;
    }
    return p;
}

int Perm::index() const {
    int idx = 0;
    for (int i = 0; i < n_; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n_; ++j)
            if (img_[j] < img_[i]) ++smaller;
        idx += smaller * factorial(n_ - 1 - i);
    }
    return idx;
}

int Perm::sign() const {
    int inv = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (img_[i] > img_[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

std::string Perm::str() const {
    std::string s;
    for (int i = 0; i < n_; ++i) s += static_cast<char>('0' + img_[i]);
    return s;
}

Perm transposition(int n, int a, int b) {
    Perm p(n);
    std::array<int, 5> img{0, 1, 2, 3, 4};
    img[a] = b;
    img[b] = a;
    return Perm::from_images(n, img);
}

} // namespace tri4
