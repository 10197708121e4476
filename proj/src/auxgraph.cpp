#include "degdet/auxgraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace degdet {

PairingTable::PairingTable(const Instance& inst, const Labeling& v) : nu_(inst.nu()) {
    bits_.assign(static_cast<std::size_t>(inst.mu()) * inst.nu(), 0);
    for (const auto& b : inst.blocks()) compute(inst, v, b.id.alpha, b.id.beta);
}

void PairingTable::compute(const Instance& inst, const Labeling& v, int alpha, int beta) {
    const Block* b = inst.block(alpha, beta);
    unsigned char bits = 0;
    if (b)
        for (int s : {kPlus, kMinus})
            for (int t : {kPlus, kMinus})
                if (pairing_nonzero(b->a, v.u[alpha][s], v.v[beta][t])) bits |= 1 << (2 * s + t);
    bits_[static_cast<std::size_t>(alpha) * nu_ + beta] = bits;
}

void PairingTable::refresh(const Instance& inst, const Labeling& v, NodeRef n) {
    if (n.col)
        for (int a = 0; a < inst.mu(); ++a) compute(inst, v, a, n.idx);
    else
        for (int b = 0; b < inst.nu(); ++b) compute(inst, v, n.idx, b);
}

bool aux_edge(const Instance& inst, const Labeling& v, const PotentialState& ps, int alpha, int s, int beta, int t) {
    const Block* b = inst.block(alpha, beta);
    if (!b) return false;
    if (ps.pr[alpha][s] + ps.pc[beta][t] + ps.c != b->d) return false;
    return pairing_nonzero(b->a, v.u[alpha][s], v.v[beta][t]);
}

bool AuxGraph::has(const NodeSide& row, const NodeSide& col) const {
    return std::binary_search(edges.begin(), edges.end(), AuxEdge{row, col});
}

AuxGraph build_aux(const Instance& inst, const MatchingState& s, const Labeling& v, const PotentialState& ps) {
    if (auto err = explain_tight(inst, s, ps)) throw std::logic_error("corrupted state: " + *err);
    AuxGraph g;
    for (const auto& b : inst.blocks())
        for (int x : {kPlus, kMinus})
            for (int y : {kPlus, kMinus})
                if (aux_edge(inst, v, ps, b.id.alpha, x, b.id.beta, y))
                    g.edges.push_back({{false, b.id.alpha, x}, {true, b.id.beta, y}});
    std::sort(g.edges.begin(), g.edges.end());
    for (const auto& se : s.m.edges()) {
        int a = se.id.alpha, b = se.id.beta;
        if (g.has({false, a, kPlus}, {true, b, kMinus}) || g.has({false, a, kMinus}, {true, b, kPlus}))
            throw std::logic_error("aux edge with mixed signs on a matching edge");
        bool both = g.has({false, a, kPlus}, {true, b, kPlus}) && g.has({false, a, kMinus}, {true, b, kMinus});
        g.m_tags[se.id] = both ? Tightness::Double : Tightness::Single;
    }
    return g;
}

std::vector<NodeSide> unmatched_sides(const MatchingState& s) {
    std::vector<NodeSide> out;
    for (bool col : {false, true}) {
        int n = col ? s.m.nu() : s.m.mu();
        for (int i = 0; i < n; ++i)
            for (int sg : {kPlus, kMinus})
                if (!is_matched(s, {col, i, sg})) out.push_back({col, i, sg});
    }
    return out;
}

std::vector<NodeSide> tight_component(const Instance& inst, const MatchingState& s, const Labeling& v,
                                      const PotentialState& ps, const NodeSide& start) {
    std::vector<NodeSide> out{start};
    std::deque<NodeSide> q{start};
    while (!q.empty()) {
        NodeSide x = q.front();
        q.pop_front();
        for (int es : {kPlus, kMinus}) {
            int p = s.m.partner(x.node(), es);
            if (p < 0) continue;
            for (int t : {kPlus, kMinus}) {
                NodeSide y{!x.col, p, t};
                bool edge = x.col ? aux_edge(inst, v, ps, p, t, x.idx, x.sign) : aux_edge(inst, v, ps, x.idx, x.sign, p, t);
                if (!edge || std::find(out.begin(), out.end(), y) != out.end()) continue;
                out.push_back(y);
                q.push_back(y);
            }
        }
    }
    return out;
}

int SourceTarget::source_col_count() const {
    int n = 0;
    for (int i = 0; i < index.count(); ++i) n += source[i] && index.side(i).col;
    return n;
}

int SourceTarget::source_row_count() const {
    int n = 0;
    for (int i = 0; i < index.count(); ++i) n += source[i] && !index.side(i).col;
    return n;
}

SourceTarget source_target_sets(const Instance& inst, const MatchingState& s, const Labeling& v,
                                const PotentialState& ps) {
    SourceTarget st;
    st.index = {inst.mu(), inst.nu()};
    st.source.assign(st.index.count(), 0);
    st.target.assign(st.index.count(), 0);
    for (const auto& u : unmatched_sides(s)) {
        auto& set = u.col ? st.source : st.target;
        if (set[st.index.id(u)]) continue;
        for (const auto& x : tight_component(inst, s, v, ps, u)) set[st.index.id(x)] = 1;
    }
    return st;
}

std::string aux_dot(const Instance& inst, const MatchingState& s, const Labeling& v, const PotentialState& ps) {
    AuxGraph g = build_aux(inst, s, v, ps);
    std::ostringstream os;
    os << "graph aux {\n";
    for (const auto& e : g.edges) {
        auto sign = s.m.sign_of(e.row.idx, e.col.idx);
        os << "  \"" << e.row.str() << "\" -- \"" << e.col.str() << "\"";
        if (sign) os << " [style=" << (s.in_i(e.row.idx, e.col.idx) ? "bold" : "dashed") << "]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace degdet
