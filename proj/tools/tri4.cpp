#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tri4/canonical.hpp"
#include "tri4/csum.hpp"
#include "tri4/errors.hpp"
#include "tri4/families.hpp"
#include "tri4/homology.hpp"
#include "tri4/kernel.hpp"
#include "tri4/moves.hpp"
#include "tri4/search.hpp"
#include "tri4/tableio.hpp"

using nlohmann::json;
using namespace tri4;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitResource = 2;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(Err::InvalidInput, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(Err::InvalidInput, "cannot write '" + path + "'");
    out << text;
}

Triangulation load(const std::string& path) { return parse_any(slurp(path)); }

FamilyKind parse_family(const std::string& f) {
    if (f == "P") return FamilyKind::P;
    if (f == "E") return FamilyKind::E;
    if (f == "A") return FamilyKind::A;
    if (f == "D") return FamilyKind::D;
    throw Error(Err::InvalidInput, "family must be one of P, E, A, D");
}

Site parse_site(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos)
        throw Error(Err::InvalidInput, "site must look like PENT.SLOT, e.g. 0.4");
    return Site{std::stoi(s.substr(0, dot)), std::stoi(s.substr(dot + 1))};
}

json homology_json(const HomologyGroups& h) {
    json out = json::array();
    for (const auto& g : h.groups) {
        json t = json::array();
        for (const auto& v : g.torsion) t.push_back(v.str());
        out.push_back({{"betti", g.betti}, {"torsion", t}});
    }
    return out;
}

int cmd_invariants(const std::string& file, bool as_json) {
    Triangulation t = load(file);
    ValidityReport rep = validate(t);
    if (!rep.no_reverse_self_identification) {
        // face-class structure is broken; only the flags are meaningful
        if (as_json) {
            json j;
            j["valid"] = false;
            j["closed"] = rep.closed;
            json off = json::array();
            for (const auto& o : rep.offending_faces)
                off.push_back({{"dim", o.dim}, {"simplex", o.simplex}, {"reason", o.reason}});
            j["offending_faces"] = off;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "valid: no\n";
            for (const auto& off : rep.offending_faces)
                std::cout << "offending face (dim " << off.dim << ", simplex " << off.simplex
                          << "): " << off.reason << "\n";
        }
        return kExitDomain;
    }
    Skeleton sk = skeleton(t);
    HomologyGroups h = homology(t, sk);
    long chi = euler_characteristic(sk);
    DualGraph dg = dual_graph(t);

    std::vector<std::string> boundary_sigs;
    if (!rep.closed)
        for (const auto& comp : boundary(t).split_components())
            boundary_sigs.push_back(signature(comp));
    std::sort(boundary_sigs.begin(), boundary_sigs.end());

    if (as_json) {
        json j;
        j["f_vector"] = sk.f_vector();
        j["euler_characteristic"] = chi;
        j["homology"] = homology_json(h);
        j["valid"] = rep.valid();
        j["closed"] = rep.closed;
        j["connected"] = t.is_connected();
        j["orientable"] = t.is_orientable();
        j["dual_graph"] = {{"nodes", dg.nodes}, {"arcs", dg.arcs.size()}};
        j["boundary_components"] = boundary_sigs;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "f-vector:";
    for (long v : sk.f_vector()) std::cout << " " << v;
    std::cout << "\neuler characteristic: " << chi << "\n";
    std::cout << "homology: " << h.str() << "\n";
    std::cout << "valid: " << (rep.valid() ? "yes" : "no") << "\n";
    std::cout << "closed: " << (rep.closed ? "yes" : "no") << "\n";
    std::cout << "connected: " << (t.is_connected() ? "yes" : "no") << "\n";
    std::cout << "orientable: " << (t.is_orientable() ? "yes" : "no") << "\n";
    std::cout << "dual graph: " << dg.nodes << " nodes, " << dg.arcs.size() << " arcs\n";
    std::cout << "boundary components: " << boundary_sigs.size() << "\n";
    for (const auto& s : boundary_sigs) std::cout << "  " << s << "\n";
    if (!rep.valid())
        for (const auto& off : rep.offending_faces)
            std::cout << "offending face (dim " << off.dim << ", simplex " << off.simplex
                      << "): " << off.reason << "\n";
    return rep.valid() ? kExitOk : kExitDomain;
}

std::string dot_graph(const Triangulation& t) {
    DualGraph g = dual_graph(t);
    std::string out = "graph dual {\n";
    for (int i = 0; i < g.nodes; ++i) out += "  " + std::to_string(i) + ";\n";
    for (const auto& [a, b] : g.arcs)
        out += "  " + std::to_string(a) + " -- " + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalised 4-manifold triangulations: families, moves, invariants, "
                 "and bidirectional Pachner-graph search"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON reports");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a family member or named piece");
    std::string gen_family, gen_base, gen_out, gen_format = "table";
    int gen_k = 0, gen_l = 0;
    auto* gen_family_opt = gen->add_option("--family", gen_family, "P, E, A or D");
    auto* gen_k_opt = gen->add_option("--k", gen_k, "first parameter");
    gen->add_option("--l", gen_l, "second parameter (D only)");
    auto* gen_base_opt =
        gen->add_option("--base", gen_base, "dsb2, sphere, pillow or cylinder")
            ->check(CLI::IsMember({"dsb2", "sphere", "pillow", "cylinder"}))
            ->excludes(gen_family_opt);
    gen_family_opt->excludes(gen_base_opt)->needs(gen_k_opt);
    gen->add_option("--out", gen_out, "output file (default stdout)");
    gen->add_option("--format", gen_format, "table or sig")
        ->check(CLI::IsMember({"table", "sig"}));

    // invariants
    auto* inv = app.add_subcommand("invariants", "report invariants of a triangulation");
    std::string inv_file;
    inv->add_option("file", inv_file, "gluing table or signature, '-' for stdin")->required();

    // canon
    auto* canon = app.add_subcommand("canon", "print the isomorphism signature");
    std::string canon_file;
    int canon_threads = 1;
    canon->add_option("file", canon_file)->required();
    canon->add_option("--threads", canon_threads, "parallel candidate scan");

    // dot
    auto* dot = app.add_subcommand("dot", "print the dual graph in DOT format");
    std::string dot_file;
    dot->add_option("file", dot_file)->required();

    // csum
    auto* csum = app.add_subcommand("csum", "triangulated connected sum");
    std::string csum_a, csum_b, csum_site1 = "0.0", csum_site2 = "0.0", csum_out;
    bool csum_sign = false;
    csum->add_option("a", csum_a)->required();
    csum->add_option("b", csum_b)->required();
    csum->add_option("--site1", csum_site1, "internal ridge of A as PENT.SLOT")->required();
    csum->add_option("--site2", csum_site2, "internal ridge of B as PENT.SLOT")->required();
    csum->add_flag("--sign", csum_sign, "take the opposite of the two possible sums");
    csum->add_option("--out", csum_out);

    // search
    auto* search = app.add_subcommand("search", "outside-in Pachner-graph search");
    std::string search_a, search_b, search_cert;
    int search_k = 2, search_threads = 1;
    long search_ring_limit = 0;
    bool search_simplify = false, search_prepass = false, search_check = false;
    search->add_option("a", search_a)->required();
    search->add_option("b", search_b)->required();
    search->add_option("--headroom", search_k, "size cap above max(f4)")->required();
    search->add_flag("--simplify", search_simplify, "restart sides at smaller triangulations");
    search->add_flag("--prepass", search_prepass,
                     "greedy 2-0/collapse simplification of A first");
    search->add_option("--ring-limit", search_ring_limit, "abort when a ring grows past this");
    search->add_option("--threads", search_threads, "parallel ring expansion");
    search->add_flag("--check-invariants", search_check, "verify ring disjointness (debug)");
    search->add_option("--cert", search_cert, "write the move certificate here");

    // verify
    auto* verify = app.add_subcommand("verify", "replay and check a move certificate");
    std::string verify_a, verify_b, verify_cert;
    int verify_cap = -2; // -2: take the certificate's cap
    verify->add_option("a", verify_a)->required();
    verify->add_option("b", verify_b)->required();
    verify->add_option("cert", verify_cert)->required();
    verify->add_option("--cap", verify_cap, "override the certificate size cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Triangulation t(4);
            if (!gen_base.empty()) {
                if (gen_base == "dsb2") t = dsb2();
                else if (gen_base == "sphere") t = boundary_s();
                else if (gen_base == "pillow") t = pillow_s4();
                else t = cylinder_c();
            } else if (!gen_family.empty()) {
                t = family(parse_family(gen_family), gen_k, gen_l);
            } else {
                throw Error(Err::InvalidInput, "gen needs --family or --base");
            }
            write_out(gen_out, gen_format == "sig" ? signature(t) + "\n" : emit_table(t));
            return kExitOk;
        }
        if (*inv) return cmd_invariants(inv_file, as_json);
        if (*canon) {
            std::cout << signature(load(canon_file), canon_threads) << "\n";
            return kExitOk;
        }
        if (*dot) {
            std::cout << dot_graph(load(dot_file));
            return kExitOk;
        }
        if (*csum) {
            Triangulation a = load(csum_a), b = load(csum_b);
            Triangulation sum =
                connected_sum(a, parse_site(csum_site1), b, parse_site(csum_site2), csum_sign);
            write_out(csum_out, emit_table(sum));
            return kExitOk;
        }
        if (*search) {
            Triangulation a = load(search_a), b = load(search_b);
            SearchConfig cfg;
            cfg.headroom = search_k;
            cfg.simplify = search_simplify;
            cfg.prepass = search_prepass;
            cfg.ring_size_limit = search_ring_limit;
            cfg.threads = search_threads;
            cfg.check_invariants = search_check;
            SearchOutcome res = outside_in(a, b, cfg);

            if (as_json) {
                json j;
                j["result"] = res.result == SearchResult::Found      ? "found"
                              : res.result == SearchResult::NotFound ? "not-found"
                                                                     : "aborted";
                j["length"] = res.sequence.size();
                j["rings_expanded"] = res.stats.rings_expanded;
                j["peak_stored"] = res.stats.peak_stored;
                j["visited"] = res.stats.visited;
                if (!res.abort_reason.empty()) j["abort_reason"] = res.abort_reason;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "result: "
                          << (res.result == SearchResult::Found      ? "found"
                              : res.result == SearchResult::NotFound ? "not-found"
                                                                     : "aborted")
                          << "\n";
                if (res.result == SearchResult::Found)
                    std::cout << "moves: " << res.sequence.size() << "\n";
                if (!res.abort_reason.empty())
                    std::cout << "abort reason: " << res.abort_reason << "\n";
                std::cout << "rings expanded: " << res.stats.rings_expanded
                          << ", peak stored: " << res.stats.peak_stored
                          << ", visited: " << res.stats.visited << "\n";
            }
            if (res.result == SearchResult::Found) {
                Certificate cert;
                cert.from_sig = signature(a);
                cert.to_sig = signature(b);
                cert.cap = std::max(a.size(), b.size()) + search_k;
                cert.steps = res.sequence;
                if (!search_cert.empty()) write_out(search_cert, format_certificate(cert));
                VerifyResult vr = verify_sequence(a, b, res.sequence, cert.cap);
                if (!vr.ok) {
                    std::cerr << "internal error: emitted certificate fails to replay\n";
                    return kExitDomain;
                }
                return kExitOk;
            }
            return res.result == SearchResult::Aborted ? kExitResource : kExitDomain;
        }
        if (*verify) {
            Triangulation a = load(verify_a), b = load(verify_b);
            Certificate cert = parse_certificate(slurp(verify_cert));
            int cap = verify_cap == -2 ? cert.cap : verify_cap;
            VerifyResult vr = verify_sequence(a, b, cert.steps, cap);
            if (as_json) {
                json j;
                j["ok"] = vr.ok;
                if (!vr.ok) {
                    j["failed_step"] = vr.failed_step;
                    j["message"] = vr.message;
                }
                std::cout << j.dump(2) << "\n";
            } else if (vr.ok) {
                std::cout << "ok: " << cert.steps.size() << " moves replay to the target\n";
            } else {
                std::cout << "failed at step " << vr.failed_step << ": " << vr.message << "\n";
            }
            return vr.ok ? kExitOk : kExitDomain;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}
