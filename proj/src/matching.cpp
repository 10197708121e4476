#include "degdet/matching.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace degdet {

std::string NodeSide::str() const {
    return std::string(col ? "b" : "a") + std::to_string(idx + 1) + sign_char(sign);
}

SignedMatching::SignedMatching(int mu, int nu) : row_(mu, {-1, -1}), col_(nu, {-1, -1}) {}

void SignedMatching::add(int alpha, int beta, int sign) {
    if (row_[alpha][sign] >= 0 || col_[beta][sign] >= 0)
        throw std::logic_error("edge sign slot already taken at (" + std::to_string(alpha + 1) + "," +
                               std::to_string(beta + 1) + ")");
    if (contains(alpha, beta)) throw std::logic_error("edge already present");
    row_[alpha][sign] = beta;
    col_[beta][sign] = alpha;
}

void SignedMatching::remove(int alpha, int beta) {
    auto s = sign_of(alpha, beta);
    if (!s) throw std::logic_error("removing an absent edge");
    row_[alpha][*s] = -1;
    col_[beta][*s] = -1;
}

std::optional<int> SignedMatching::sign_of(int alpha, int beta) const {
    for (int s : {kPlus, kMinus})
        if (row_[alpha][s] == beta) return s;
    return std::nullopt;
}

std::vector<SignedEdge> SignedMatching::edges() const {
    std::vector<SignedEdge> out;
    for (int a = 0; a < mu(); ++a)
        for (int s : {kPlus, kMinus})
            if (row_[a][s] >= 0) out.push_back({{a, row_[a][s]}, s});
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t SignedMatching::size() const {
    std::size_t n = 0;
    for (const auto& r : row_) n += (r[0] >= 0) + (r[1] >= 0);
    return n;
}

Labeling Labeling::canonical(const Field& f, int mu, int nu) {
    Labeling l;
    Line plus = Line::span(f, 1, 0), minus = Line::span(f, 0, 1);
    l.u.assign(mu, {plus, minus});
    l.v.assign(nu, {plus, minus});
    return l;
}

void MatchingState::add_i(int alpha, int beta) {
    if (!m.contains(alpha, beta)) throw std::logic_error("I-edge must belong to M");
    i_row[alpha] = beta;
    i_col[beta] = alpha;
}

void MatchingState::remove_i(int alpha, int beta) {
    if (i_row[alpha] != beta) throw std::logic_error("removing an absent I-edge");
    i_row[alpha] = -1;
    i_col[beta] = -1;
}

std::size_t MatchingState::i_size() const {
    return static_cast<std::size_t>(std::count_if(i_row.begin(), i_row.end(), [](int b) { return b >= 0; }));
}

bool ComponentWalk::contains(NodeRef n) const { return std::find(nodes.begin(), nodes.end(), n) != nodes.end(); }

EdgeId edge_between(NodeRef a, NodeRef b) {
    if (a.col == b.col) throw std::logic_error("edge between nodes of the same side");
    return a.col ? EdgeId{b.idx, a.idx} : EdgeId{a.idx, b.idx};
}

static NodeRef across(NodeRef n, int partner) { return {!n.col, partner}; }

ComponentWalk component_of(const SignedMatching& m, NodeRef start) {
    ComponentWalk w;
    NodeRef end = start;
    if (m.degree(start) == 2) {
        NodeRef cur = start;
        int sign = kPlus;
        while (true) {
            NodeRef nb = across(cur, m.partner(cur, sign));
            sign = opp(sign);
            if (nb == start) {
                w.cycle = true;
                break;
            }
            if (m.partner(nb, sign) < 0) {
                end = nb;
                break;
            }
            cur = nb;
        }
    }
    w.nodes.push_back(end);
    int sign = m.partner(end, kPlus) >= 0 ? kPlus : kMinus;
    if (m.partner(end, sign) < 0) return w;
    NodeRef cur = end;
    while (true) {
        NodeRef nb = across(cur, m.partner(cur, sign));
        w.signs.push_back(sign);
        sign = opp(sign);
        if (nb == end) break;
        w.nodes.push_back(nb);
        if (m.partner(nb, sign) < 0) break;
        cur = nb;
    }
    return w;
}

SignedMatching two_color(const std::vector<EdgeId>& edges, int mu, int nu) {
    // adjacency over nodes: rows 0..mu-1, columns mu..mu+nu-1
    int n = mu + nu;
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        adj[e.alpha].push_back(mu + e.beta);
        adj[mu + e.beta].push_back(e.alpha);
    }
    for (int i = 0; i < n; ++i) {
        if (adj[i].size() >= 3) throw std::invalid_argument("node of degree >= 3 cannot be 2-edge-colored");
        std::sort(adj[i].begin(), adj[i].end());
    }
    SignedMatching m(mu, nu);
    std::vector<char> seen(n, 0);
    auto put = [&](int a, int b, int sign) {
        if (a > b) std::swap(a, b);
        m.add(a, b - mu, sign);
    };
    for (int pass = 0; pass < 2; ++pass) {
        // pass 0 starts at path ends, pass 1 handles cycles
        for (int s = 0; s < n; ++s) {
            if (seen[s] || adj[s].empty()) continue;
            if (pass == 0 && adj[s].size() != 1) continue;
            int prev = -1, cur = s, sign = kPlus;
            seen[s] = 1;
            while (true) {
                int nxt = -1;
                for (int x : adj[cur])
                    if (x != prev) {
                        nxt = x;
                        break;
                    }
                if (nxt < 0) break;
                put(cur, nxt, sign);
                sign = opp(sign);
                if (nxt == s) break;
                seen[nxt] = 1;
                prev = cur;
                cur = nxt;
            }
        }
    }
    return m;
}

bool check_cycle_condition(const Instance& inst, const SignedMatching& m) {
    std::vector<char> seen(m.mu(), 0);
    for (int a = 0; a < m.mu(); ++a) {
        if (seen[a] || m.degree({false, a}) < 2) continue;
        ComponentWalk w = component_of(m, {false, a});
        for (const auto& n : w.nodes)
            if (!n.col) seen[n.idx] = 1;
        if (!w.cycle) continue;
        bool rank1 = false;
        for (std::size_t i = 0; i < w.nodes.size(); ++i) {
            EdgeId e = edge_between(w.nodes[i], w.nodes[(i + 1) % w.nodes.size()]);
            if (inst.block(e.alpha, e.beta)->rank == 1) rank1 = true;
        }
        if (!rank1) return false;
    }
    return true;
}

namespace {
struct SlotGraph {
    int mu;
    int id(const NodeSide& s) const { return s.col ? 2 * mu + 2 * s.idx + s.sign : 2 * s.idx + s.sign; }
    NodeSide side(int id) const {
        if (id < 2 * mu) return {false, id / 2, id % 2};
        id -= 2 * mu;
        return {true, id / 2, id % 2};
    }
};

struct Link {
    int to;
    EdgeId e;
};
}  // namespace

std::optional<Labeling> derive_valid_labeling(const Instance& inst, const SignedMatching& m,
                                              const std::map<NodeSide, Line>& seeds) {
    const Field& f = inst.field();
    SlotGraph g{inst.mu()};
    int n = 2 * (inst.mu() + inst.nu());
    std::vector<std::optional<Line>> val(n);
    std::vector<std::vector<Link>> links(n);
    for (const auto& se : m.edges()) {
        const Block* b = inst.block(se.id.alpha, se.id.beta);
        if (!b) throw std::invalid_argument("matching edge outside the support");
        if (b->rank == 1) {
            int su = g.id({false, se.id.alpha, se.sign}), sv = g.id({true, se.id.beta, se.sign});
            if ((val[su] && *val[su] != *b->left_ker) || (val[sv] && *val[sv] != *b->right_ker)) return std::nullopt;
            val[su] = *b->left_ker;
            val[sv] = *b->right_ker;
            continue;
        }
        for (int s : {kPlus, kMinus}) {
            int su = g.id({false, se.id.alpha, s}), sv = g.id({true, se.id.beta, opp(s)});
            links[su].push_back({sv, se.id});
            links[sv].push_back({su, se.id});
        }
    }
    auto orth_across = [&](const std::vector<std::optional<Line>>& vals, int from, const Link& l) {
        const Block* b = inst.block(l.e.alpha, l.e.beta);
        Side side = g.side(from).col ? Side::Right : Side::Left;
        return *orth(b->a, *vals[from], side);
    };
    auto other = [&](int id) { return id ^ 1; };
    // Propagates from a seeded slot; returns false on a conflict. Writes into `out`.
    auto propagate = [&](int start, std::vector<std::optional<Line>>& out, std::vector<int>* touched) {
        std::deque<int> q{start};
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (const auto& l : links[x]) {
                Line y = orth_across(out, x, l);
                if (out[l.to]) {
                    if (*out[l.to] != y) return false;
                    continue;
                }
                out[l.to] = y;
                if (touched) touched->push_back(l.to);
                q.push_back(l.to);
            }
        }
        return true;
    };
    for (int s = 0; s < n; ++s)
        if (val[s] && !propagate(s, val, nullptr)) return std::nullopt;

    std::vector<Line> candidates = {Line::span(f, 1, 0), Line::span(f, 0, 1), Line::span(f, 1, 1)};
    for (std::int64_t k = 2; static_cast<int>(candidates.size()) < n + 4; ++k) candidates.push_back(Line::span(f, 1, k));

    for (int pass = 0; pass < 2; ++pass) {
        for (int s = 0; s < n; ++s) {
            if (val[s] || links[s].empty()) continue;
            if (pass == 0 && links[s].size() != 1) continue;
            std::vector<Line> order;
            auto it = seeds.find(g.side(s));
            if (it != seeds.end()) order.push_back(it->second);
            order.push_back(s % 2 == kPlus ? candidates[0] : candidates[1]);
            order.insert(order.end(), candidates.begin(), candidates.end());
            bool done = false;
            for (const Line& c : order) {
                std::vector<std::optional<Line>> trial = val;
                std::vector<int> touched{s};
                trial[s] = c;
                if (!propagate(s, trial, &touched)) continue;
                bool clash = false;
                for (int t : touched)
                    if (trial[other(t)] && *trial[other(t)] == *trial[t]) clash = true;
                if (clash) continue;
                val = std::move(trial);
                done = true;
                break;
            }
            if (!done) return std::nullopt;
        }
    }
    for (int s = 0; s < n; ++s) {
        if (val[s]) continue;
        auto it = seeds.find(g.side(s));
        if (it != seeds.end() && !(val[other(s)] && *val[other(s)] == it->second)) {
            val[s] = it->second;
            continue;
        }
        std::vector<Line> order = {s % 2 == kPlus ? candidates[0] : candidates[1], candidates[0], candidates[1],
                                   candidates[2]};
        for (const Line& c : order)
            if (!(val[other(s)] && *val[other(s)] == c)) {
                val[s] = c;
                break;
            }
    }
    Labeling out = Labeling::canonical(f, inst.mu(), inst.nu());
    for (int s = 0; s < n; ++s) out.at(g.side(s)) = *val[s];
    if (!verify_valid_labeling(inst, m, out)) return std::nullopt;
    return out;
}

std::optional<std::string> explain_valid_labeling(const Instance& inst, const SignedMatching& m, const Labeling& v) {
    for (int a = 0; a < inst.mu(); ++a)
        if (v.u[a][kPlus] == v.u[a][kMinus]) return "row " + std::to_string(a + 1) + " has equal + and - spaces";
    for (int b = 0; b < inst.nu(); ++b)
        if (v.v[b][kPlus] == v.v[b][kMinus]) return "column " + std::to_string(b + 1) + " has equal + and - spaces";
    for (const auto& se : m.edges()) {
        const Block* b = inst.block(se.id.alpha, se.id.beta);
        std::string tag = "(" + std::to_string(se.id.alpha + 1) + "," + std::to_string(se.id.beta + 1) + ")";
        const auto& u = v.u[se.id.alpha];
        const auto& w = v.v[se.id.beta];
        if (pairing_nonzero(b->a, u[kPlus], w[kMinus]) || pairing_nonzero(b->a, u[kMinus], w[kPlus]))
            return "orthogonality fails on edge " + tag;
        if (b->rank == 1 && (u[se.sign] != *b->left_ker || w[se.sign] != *b->right_ker))
            return "kernel condition fails on rank-1 edge " + tag;
    }
    return std::nullopt;
}

bool verify_valid_labeling(const Instance& inst, const SignedMatching& m, const Labeling& v) {
    return !explain_valid_labeling(inst, m, v).has_value();
}

bool is_matched(const MatchingState& s, const NodeSide& side) {
    NodeRef n = side.node();
    if (s.m.partner(n, opp(side.sign)) >= 0) return true;
    int ip = n.col ? s.i_col[n.idx] : s.i_row[n.idx];
    return ip >= 0 && s.m.partner(n, side.sign) == ip;
}

std::vector<NodeSide> matched_spaces(const MatchingState& s) {
    std::vector<NodeSide> out;
    for (bool col : {false, true}) {
        int n = col ? s.m.nu() : s.m.mu();
        for (int i = 0; i < n; ++i)
            for (int sg : {kPlus, kMinus})
                if (is_matched(s, {col, i, sg})) out.push_back({col, i, sg});
    }
    return out;
}

std::int64_t weight(const Instance& inst, const MatchingState& s) {
    std::int64_t w = 0;
    for (const auto& se : s.m.edges()) {
        std::int64_t d = inst.block(se.id.alpha, se.id.beta)->d;
        w = checked_add(w, d);
        if (s.in_i(se.id.alpha, se.id.beta)) w = checked_add(w, d);
    }
    return w;
}

std::optional<std::string> explain_matching_state(const Instance& inst, const MatchingState& s, const Labeling& v) {
    for (int a = 0; a < inst.mu(); ++a) {
        int b = s.i_row[a];
        if (b < 0) continue;
        if (s.i_col[b] != a) return "I bookkeeping is inconsistent";
        if (!s.m.contains(a, b)) return "I-edge outside M";
        if (inst.block(a, b)->rank != 2) return "I-edge is not rank-2";
        if (s.m.degree({false, a}) != 1 || s.m.degree({true, b}) != 1) return "I-edge is not isolated in M";
    }
    for (const auto& se : s.m.edges())
        if (!inst.has(se.id.alpha, se.id.beta)) return "matching edge outside the support";
    if (!check_cycle_condition(inst, s.m)) return "cycle without a rank-1 edge";
    return explain_valid_labeling(inst, s.m, v);
}

}  // namespace degdet
