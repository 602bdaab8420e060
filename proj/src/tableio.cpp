#include "tri4/tableio.hpp"

#include <sstream>

#include "tri4/canonical.hpp"
#include "tri4/errors.hpp"

namespace tri4 {

std::string emit_table(const Triangulation& t) {
    const int d = t.dim();
    std::string out;
    for (int q = 0; q < t.size(); ++q) {
        for (int j = 0; j <= d; ++j) {
            const int slot = d - j; // columns list facets by ascending vertex tuple
            if (j) out += ' ';
            const Entry& e = t.entry(q, slot);
            if (e.is_boundary()) {
                out += '-';
                continue;
            }
            out += std::to_string(e.target);
            out += '(';
            for (int v = 0; v <= d; ++v) {
                if (v == slot) continue;
                out += static_cast<char>('0' + e.perm(v));
            }
            out += ')';
        }
        out += '\n';
    }
    return out;
}

Triangulation parse_table(const std::string& text) {
    std::vector<std::vector<std::string>> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> cells;
        std::string tok;
        while (ls >> tok) cells.push_back(tok);
        if (!cells.empty()) lines.push_back(std::move(cells));
    }
    if (lines.empty()) return Triangulation(4);

    const int d = static_cast<int>(lines[0].size()) - 1;
    if (d < 1 || d > 4)
        throw Error(Err::ParseError, "table rows must have 2..5 cells");
    std::vector<std::vector<Entry>> table(lines.size(), std::vector<Entry>(d + 1));
    for (size_t q = 0; q < lines.size(); ++q) {
        if (static_cast<int>(lines[q].size()) != d + 1)
            throw Error(Err::ParseError, "row " + std::to_string(q) + " has wrong cell count");
        for (int j = 0; j <= d; ++j) {
            const int slot = d - j;
            const std::string& cell = lines[q][j];
            if (cell == "-") {
                table[q][slot] = Entry::boundary();
                continue;
            }
            auto open = cell.find('(');
            if (open == std::string::npos || cell.back() != ')' ||
                cell.size() - open - 2 != static_cast<size_t>(d))
                throw Error(Err::ParseError, "bad cell '" + cell + "'");
            int target;
            try {
                target = std::stoi(cell.substr(0, open));
            } catch (const std::exception&) {
                throw Error(Err::ParseError, "bad target in cell '" + cell + "'");
            }
            std::array<int, 5> img{0, 1, 2, 3, 4};
            uint32_t seen = 0;
            int v = 0;
            for (size_t k = open + 1; k + 1 < cell.size(); ++k, ++v) {
                if (v == slot) ++v; // source facet skips the slot vertex
                const char c = cell[k];
                if (c < '0' || c > '0' + d)
                    throw Error(Err::ParseError, "bad vertex in cell '" + cell + "'");
                img[v] = c - '0';
                seen |= 1u << img[v];
            }
            // The omitted vertex maps to the one unused label.
            for (int u = 0; u <= d; ++u)
                if (!(seen & (1u << u))) img[slot] = u;
            table[q][slot] = Entry::glued(target, Perm::from_images(d + 1, img));
        }
    }
    return Triangulation::build(d, std::move(table));
}

Triangulation parse_any(const std::string& text) {
    size_t i = 0;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\t' ||
                               text[i] == '\r'))
        ++i;
    if (i + 1 < text.size() && text[i] == 'd' && text[i + 1] >= '0' && text[i + 1] <= '4') {
        std::string sig = text.substr(i);
        while (!sig.empty() && (sig.back() == '\n' || sig.back() == ' ' || sig.back() == '\r'))
            sig.pop_back();
        return parse_signature(sig);
    }
    return parse_table(text);
}

} // namespace tri4
