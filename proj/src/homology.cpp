#include "tri4/homology.hpp"

#include <algorithm>

#include "tri4/errors.hpp"

namespace tri4 {

namespace {

// Sign of the position bijection realised by perm between two faces.
int perm_sign(const Perm& p) { return p.sign(); }

} // namespace

ChainComplex chain_complex(const Triangulation& t) { return chain_complex(t, skeleton(t)); }

ChainComplex chain_complex(const Triangulation& t, const Skeleton& sk) {
    const int d = t.dim();
    ChainComplex cc;
    cc.dim = d;
    cc.ranks.assign(d + 1, 0);
    for (int m = 0; m < d; ++m) cc.ranks[m] = sk.f_vector()[m];
    cc.ranks[d] = t.size();

    cc.boundary_maps.assign(d + 1, Matrix{});
    for (int k = 1; k <= d; ++k) {
        Matrix mat(static_cast<size_t>(cc.ranks[k - 1]),
                   std::vector<BigInt>(static_cast<size_t>(cc.ranks[k]), 0));
        const long gen_count = cc.ranks[k];
        for (long g = 0; g < gen_count; ++g) {
            // Representative of generator g in dimension k.
            int rq;
            uint8_t rmask;
            if (k == d) {
                rq = static_cast<int>(g);
                rmask = static_cast<uint8_t>((1 << (d + 1)) - 1);
            } else {
                const auto& rep = sk.faces(k)[g].rep();
                rq = rep.simplex;
                rmask = rep.mask;
            }
            int cnt;
            auto verts = mask_vertices(rmask, &cnt);
            for (int i = 0; i < cnt; ++i) {
                // i-th facet: drop the i-th vertex of the representative.
                uint8_t fm = rmask & ~static_cast<uint8_t>(1 << verts[i]);
                int cls = sk.class_index(k - 1, rq, fm);
                const Perm& pi = sk.to_rep(k - 1, rq, fm);
                int sign = ((i % 2 == 0) ? 1 : -1) * perm_sign(pi);
                mat[cls][g] += sign;
            }
        }
        cc.boundary_maps[k] = std::move(mat);
    }

    // Chain complex axiom, verified numerically.
    for (int k = 2; k <= d; ++k) {
        const Matrix& a = cc.boundary_maps[k - 1];
        const Matrix& b = cc.boundary_maps[k];
        for (size_t i = 0; i < a.size(); ++i) {
            for (size_t j = 0; b.size() && j < b[0].size(); ++j) {
                BigInt s = 0;
                for (size_t l = 0; l < b.size(); ++l) s += a[i][l] * b[l][j];
                if (s != 0)
                    throw Error(Err::InvalidInput, "boundary of boundary is non-zero");
            }
        }
    }
    return cc;
}

std::vector<BigInt> smith_diagonal(Matrix m) {
    std::vector<BigInt> diag;
    if (m.empty() || m[0].empty()) return diag;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0, c = 0;
    while (r < rows && c < cols) {
        // Smallest non-zero entry in the remaining block as pivot.
        size_t pr = r, pc = c;
        BigInt best = 0;
        for (size_t i = r; i < rows; ++i)
            for (size_t j = c; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || abs(m[i][j]) < best)) {
                    best = abs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[pr], m[r]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][pc], m[i][c]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                BigInt q = m[i][c] / m[r][c];
                for (size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) { // remainder smaller than pivot: swap up
                    std::swap(m[i], m[r]);
                    clean = false;
                }
            }
            for (size_t j = c + 1; j < cols; ++j) {
                if (m[r][j] == 0) continue;
                BigInt q = m[r][j] / m[r][c];
                for (size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
                if (m[r][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(m[i][j], m[i][c]);
                    clean = false;
                }
            }
        }
        diag.push_back(abs(m[r][c]));
        ++r;
        ++c;
    }
    // Enforce the divisibility chain d1 | d2 | ... .
    for (size_t i = 0; i < diag.size(); ++i) {
        for (size_t j = i + 1; j < diag.size(); ++j) {
            if (diag[j] % diag[i] != 0) {
                BigInt g = gcd(diag[i], diag[j]);
                BigInt l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

HomologyGroups homology(const Triangulation& t) { return homology(t, skeleton(t)); }

HomologyGroups homology(const Triangulation& t, const Skeleton& sk) {
    ChainComplex cc = chain_complex(t, sk);
    const int d = cc.dim;
    std::vector<std::vector<BigInt>> snf(d + 2);
    std::vector<long> rank(d + 2, 0);
    for (int k = 1; k <= d; ++k) {
        snf[k] = smith_diagonal(cc.boundary_maps[k]);
        rank[k] = static_cast<long>(snf[k].size());
    }
    HomologyGroups h;
    h.groups.resize(d + 1);
    for (int k = 0; k <= d; ++k) {
        h.groups[k].betti = cc.ranks[k] - rank[k] - rank[k + 1];
        for (const BigInt& v : snf[k + 1])
            if (v > 1) h.groups[k].torsion.push_back(v);
    }
    return h;
}

long euler_characteristic(const Skeleton& sk) {
    long chi = 0;
    for (size_t i = 0; i < sk.f_vector().size(); ++i)
        chi += (i % 2 == 0 ? 1 : -1) * sk.f_vector()[i];
    return chi;
}

long euler_characteristic(const Triangulation& t) {
    return euler_characteristic(skeleton(t));
}

std::string HomologyGroup::str() const {
    if (trivial()) return "0";
    std::string s;
    if (betti == 1) s = "Z";
    else if (betti > 1) s = "Z^" + std::to_string(betti);
    for (const BigInt& v : torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + v.str();
    }
    return s;
}

std::string HomologyGroups::str() const {
    std::string s = "(";
    for (size_t i = 0; i < groups.size(); ++i) {
        if (i) s += ", ";
        s += groups[i].str();
    }
    return s + ")";
}

bool HomologyGroups::operator==(const HomologyGroups& o) const {
    if (groups.size() != o.groups.size()) return false;
    for (size_t i = 0; i < groups.size(); ++i)
        if (groups[i].betti != o.groups[i].betti || groups[i].torsion != o.groups[i].torsion)
            return false;
    return true;
}

} // namespace tri4
