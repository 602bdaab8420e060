#include "tri4/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tri4/errors.hpp"

namespace tri4 {

namespace {

constexpr int32_t kBoundaryCell = std::numeric_limits<int32_t>::max();

struct Scan {
    std::vector<int32_t> cells;
    std::vector<int> new_to_old;
    std::vector<Perm> vert; // old simplex -> new vertex labels
};

// Builds the relabeled cell sequence for one candidate. When `best` is given
// the scan aborts as soon as it is lexicographically worse; returns +1 when
// strictly better (or no best), 0 when equal, -1 when worse.
int scan_candidate(const Triangulation& t, int start, const Perm& start_perm,
                   const std::vector<int32_t>* best, Scan& out) {
    const int slots = t.slots_per_simplex();
    const int n = t.size();
    out.cells.clear();
    out.new_to_old.clear();
    out.new_to_old.reserve(n);
    out.vert.assign(n, Perm(std::max(slots, 1)));
    static thread_local std::vector<int> old_to_new;
    old_to_new.assign(n, -1);

    out.new_to_old.push_back(start);
    old_to_new[start] = 0;
    out.vert[start] = start_perm;

    bool strictly_better = (best == nullptr);
    size_t pos = 0;
    for (size_t ni = 0; ni < out.new_to_old.size(); ++ni) {
        const int q = out.new_to_old[ni];
        const Perm& pi = out.vert[q];
        const Perm pinv = pi.inverse();
        for (int j = 0; j < slots; ++j) {
            const Entry& e = t.entry(q, pinv(j));
            int32_t cell;
            if (e.is_boundary()) {
                cell = kBoundaryCell;
            } else {
                const int p = e.target;
                if (old_to_new[p] < 0) {
                    old_to_new[p] = static_cast<int>(out.new_to_old.size());
                    out.new_to_old.push_back(p);
                    out.vert[p] = pi * e.perm.inverse();
                }
                Perm np = out.vert[p] * e.perm * pinv;
                cell = old_to_new[p] * 120 + np.index();
            }
            if (!strictly_better) {
                if (cell > (*best)[pos]) return -1;
                if (cell < (*best)[pos]) strictly_better = true;
            }
            out.cells.push_back(cell);
            ++pos;
        }
    }
    return strictly_better ? 1 : 0;
}

int digits(int v) {
    int w = 1;
    while (v >= 10) {
        v /= 10;
        ++w;
    }
    return w;
}

void append_padded(std::string& s, int value, int width) {
    char buf[8];
    int len = 0;
    do {
        buf[len++] = static_cast<char>('0' + value % 10);
        value /= 10;
    } while (value > 0);
    for (int i = len; i < width; ++i) s += '0';
    while (len > 0) s += buf[--len];
}

std::string serialize_cells(int dim, int n, const std::vector<int32_t>& cells) {
    std::string s = "d";
    s += static_cast<char>('0' + dim);
    s += ':';
    s += std::to_string(n);
    s += ':';
    const int tw = digits(n > 0 ? n - 1 : 0);
    const int pw = digits(Perm::factorial(dim + 1) - 1);
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        if (cells[i] == kBoundaryCell) {
            s += 'b';
        } else {
            append_padded(s, cells[i] / 120, tw);
            s += '.';
            append_padded(s, cells[i] % 120, pw);
        }
    }
    return s;
}

struct ComponentCanon {
    std::vector<int32_t> cells;
    Scan scan;
};

// Canonical cells of one connected component.
ComponentCanon canonical_component(const Triangulation& t, int threads) {
    const int n = t.size();
    const int nperm = Perm::factorial(t.dim() + 1);
    ComponentCanon best;
    bool have = false;

#ifdef _OPENMP
    if (threads > 1) {
        const int total = n * nperm;
        std::vector<ComponentCanon> local(threads);
        std::vector<char> local_have(threads, 0);
#pragma omp parallel num_threads(threads)
        {
            const int tid = omp_get_thread_num();
            Scan scan;
#pragma omp for schedule(static)
            for (int c = 0; c < total; ++c) {
                const std::vector<int32_t>* ref =
                    local_have[tid] ? &local[tid].cells : nullptr;
                int cmp = scan_candidate(t, c / nperm,
                                         Perm::from_index(t.dim() + 1, c % nperm), ref, scan);
                if (cmp > 0) {
                    local[tid].cells = scan.cells;
                    local[tid].scan = scan;
                    local_have[tid] = 1;
                }
            }
        }
        for (int i = 0; i < threads; ++i) {
            if (!local_have[i]) continue;
            if (!have || local[i].cells < best.cells) {
                best = local[i];
                have = true;
            }
        }
        return best;
    }
#else
    (void)threads;
#endif

    Scan scan;
    for (int s = 0; s < n; ++s) {
        for (int pi = 0; pi < nperm; ++pi) {
            int cmp = scan_candidate(t, s, Perm::from_index(t.dim() + 1, pi),
                                     have ? &best.cells : nullptr, scan);
            if (cmp > 0) {
                best.cells = scan.cells;
                best.scan = scan;
                have = true;
            }
        }
    }
    return best;
}

} // namespace

CanonicalForm canonical_form(const Triangulation& t, int threads) {
    const int d = t.dim();
    const int n = t.size();
    CanonicalForm out{Triangulation(d), Relabeling{}, ""};
    out.relabeling.simplex_map.assign(n, 0);
    out.relabeling.vertex_maps.assign(n, Perm(d + 1));
    if (n == 0) {
        out.signature = serialize_cells(d, 0, {});
        return out;
    }

    std::vector<std::pair<int, int>> smap;
    std::vector<Triangulation> comps = t.split_components(&smap);
    std::vector<ComponentCanon> canon(comps.size());
    std::vector<std::string> comp_sig(comps.size());
    for (size_t c = 0; c < comps.size(); ++c) {
        canon[c] = canonical_component(comps[c], threads);
        comp_sig[c] = serialize_cells(d, comps[c].size(), canon[c].cells);
    }

    // Components ordered by their own serializations.
    std::vector<int> order(comps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return comp_sig[a] < comp_sig[b]; });

    std::vector<int> offset(comps.size(), 0);
    int running = 0;
    for (int c : order) {
        offset[c] = running;
        running += comps[c].size();
    }

    std::vector<int32_t> cells;
    cells.reserve(static_cast<size_t>(n) * (d + 1));
    for (int c : order) {
        for (int32_t cell : canon[c].cells)
            cells.push_back(cell == kBoundaryCell ? cell : cell + offset[c] * 120);
    }

    // Compose the relabeling: old simplex -> component canonical index + offset.
    for (int q = 0; q < n; ++q) {
        auto [c, local] = smap[q];
        const auto& scan = canon[c].scan;
        int pos = -1;
        for (size_t i = 0; i < scan.new_to_old.size(); ++i)
            if (scan.new_to_old[i] == local) {
                pos = static_cast<int>(i);
                break;
            }
        out.relabeling.simplex_map[q] = offset[c] + pos;
        out.relabeling.vertex_maps[q] = scan.vert[local];
    }

    out.triangulation = t.relabel(out.relabeling.simplex_map, out.relabeling.vertex_maps);
    out.signature = serialize_cells(d, n, cells);
    return out;
}

std::string signature(const Triangulation& t, int threads) {
    return canonical_form(t, threads).signature;
}

Triangulation parse_signature(const std::string& sig) {
    auto fail = [&](const std::string& why) -> void {
        throw Error(Err::ParseError, "signature: " + why);
    };
    if (sig.size() < 5 || sig[0] != 'd') fail("missing header");
    const int dim = sig[1] - '0';
    if (dim < 0 || dim > 4 || sig[2] != ':') fail("bad dimension");
    size_t pos = 3;
    size_t colon = sig.find(':', pos);
    if (colon == std::string::npos) fail("missing size");
    const int n = std::stoi(sig.substr(pos, colon - pos));
    pos = colon + 1;

    std::vector<std::vector<Entry>> table(n, std::vector<Entry>(dim == 0 ? 0 : dim + 1));
    const int slots = dim + 1;
    if (dim > 0) {
        for (int q = 0; q < n; ++q) {
            for (int i = 0; i < slots; ++i) {
                size_t end = sig.find(',', pos);
                if (end == std::string::npos) end = sig.size();
                std::string cell = sig.substr(pos, end - pos);
                pos = end + 1;
                if (cell.empty()) fail("missing cell");
                if (cell == "b") {
                    table[q][i] = Entry::boundary();
                } else {
                    size_t dot = cell.find('.');
                    if (dot == std::string::npos) fail("bad cell '" + cell + "'");
                    int target = std::stoi(cell.substr(0, dot));
                    int pidx = std::stoi(cell.substr(dot + 1));
                    table[q][i] = Entry::glued(target, Perm::from_index(slots, pidx));
                }
            }
        }
    }
    return Triangulation::build(dim, std::move(table));
}

bool is_isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.dim() != b.dim() || a.size() != b.size() ||
        a.boundary_facet_count() != b.boundary_facet_count())
        return false;
    return signature(a) == signature(b);
}

std::vector<Relabeling> automorphisms(const Triangulation& t) {
    if (!t.is_connected())
        throw Error(Err::InvalidInput, "automorphism search requires a connected triangulation");
    const int n = t.size();
    const int slots = t.dim() + 1;
    const int nperm = Perm::factorial(slots);
    std::vector<Relabeling> out;
    if (n == 0) return out;

    for (int p0 = 0; p0 < n; ++p0) {
        for (int pi = 0; pi < nperm; ++pi) {
            Relabeling r;
            r.simplex_map.assign(n, -1);
            r.vertex_maps.assign(n, Perm(slots));
            std::vector<char> used(n, 0);
            r.simplex_map[0] = p0;
            r.vertex_maps[0] = Perm::from_index(slots, pi);
            used[p0] = 1;
            std::vector<int> stack{0};
            bool ok = true;
            while (ok && !stack.empty()) {
                int q = stack.back();
                stack.pop_back();
                const Perm& pq = r.vertex_maps[q];
                for (int i = 0; i < slots && ok; ++i) {
                    const Entry& e = t.entry(q, i);
                    const Entry& want = t.entry(r.simplex_map[q], pq(i));
                    if (e.is_boundary()) {
                        ok = want.is_boundary();
                        continue;
                    }
                    if (want.is_boundary()) {
                        ok = false;
                        continue;
                    }
                    Perm np = want.perm * pq * e.perm.inverse();
                    if (r.simplex_map[e.target] < 0) {
                        if (used[want.target]) {
                            ok = false;
                            continue;
                        }
                        r.simplex_map[e.target] = want.target;
                        r.vertex_maps[e.target] = np;
                        used[want.target] = 1;
                        stack.push_back(e.target);
                    } else {
                        ok = r.simplex_map[e.target] == want.target &&
                             r.vertex_maps[e.target] == np;
                    }
                }
            }
            if (ok) out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace tri4
