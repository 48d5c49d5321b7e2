#pragma once

#include <ostream>
#include <string>

#include "efl/cell_map.hpp"
#include "efl/tower.hpp"

namespace efl::dot {

/// Component tree of a tower: one node per (level, component), bonding
/// edges upward, ends attached as peripheral doublecircle nodes.
inline void component_tree(std::ostream& os, const finite_space& s, const tower& t) {
    auto es = end_space(s, t);
    os << "digraph component_tree {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t k = 0; k < es.tree.depth(); ++k) {
        const auto& blocks = es.tree.level_blocks[k];
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            os << "  \"L" << k << ":" << s.name(blocks[i].least()) << "\" [label=\"E" << k << " | "
               << s.name(blocks[i].least()) << " (" << blocks[i].count() << ")\"];\n";
            if (k > 0) {
                int par = es.tree.parent[k][i];
                const auto& up = es.tree.level_blocks[k - 1][static_cast<std::size_t>(par)];
                os << "  \"L" << k << ":" << s.name(blocks[i].least()) << "\" -> \"L" << k - 1
                   << ":" << s.name(up.least()) << "\";\n";
            }
        }
    }
    for (const auto& e : es.ends) {
        const auto& blk =
            es.tree.level_blocks.back()[static_cast<std::size_t>(e.last_block())];
        std::string label = end_label(s, es, e);
        os << "  \"" << label << "\" [shape=doublecircle, peripheries=2];\n";
        os << "  \"" << label << "\" -> \"L" << es.tree.depth() - 1 << ":" << s.name(blk.least())
           << "\" [style=dashed];\n";
    }
    os << "}\n";
}

/// Top-cell dynamics graph; exits drawn as dangling arrows, basins as
/// fill colors when provided.
inline void dynamics(std::ostream& os, const finite_space& s, const cell_map& m,
                     const basin_result* basins = nullptr) {
    static const char* palette[] = {"lightblue",  "lightsalmon", "palegreen", "khaki",
                                    "plum",       "lightcyan",  "wheat",     "mistyrose"};
    os << "digraph dynamics {\n  node [shape=circle];\n";
    for (std::size_t c = 0; c < m.cell_count(); ++c) {
        int atom = s.tops()[c];
        os << "  \"" << s.name(atom) << "\"";
        if (basins) {
            bool done = false;
            for (std::size_t b = 0; b < basins->basins.size() && !done; ++b)
                if (basins->basins[b].contains(atom)) {
                    os << " [style=filled, fillcolor=" << palette[b % 8] << "]";
                    done = true;
                }
            if (!done && basins->ambiguous.contains(atom)) os << " [style=filled, fillcolor=gray]";
        }
        os << ";\n";
    }
    for (std::size_t c = 0; c < m.cell_count(); ++c) {
        const std::string& from = s.name(s.tops()[c]);
        for (int d : m.images[c])
            os << "  \"" << from << "\" -> \"" << s.name(s.tops()[static_cast<std::size_t>(d)])
               << "\";\n";
        if (m.exit[c]) {
            os << "  \"exit_" << from << "\" [label=\"\", shape=none];\n";
            os << "  \"" << from << "\" -> \"exit_" << from << "\" [style=dotted];\n";
        }
    }
    os << "}\n";
}

}  // namespace efl::dot
