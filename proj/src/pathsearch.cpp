#include "degdet/pathsearch.hpp"

#include <algorithm>
#include <set>

namespace degdet {

namespace {
std::string pos_str(std::size_t i) { return "position " + std::to_string(i); }

bool in_m_not_i(const MatchingState& s, int a, int b) { return s.m.contains(a, b) && !s.in_i(a, b); }

bool aux_sides(const Instance& inst, const Labeling& v, const PotentialState& ps, const NodeSide& x, const NodeSide& y) {
    const NodeSide& r = x.col ? y : x;
    const NodeSide& c = x.col ? x : y;
    if (r.col || !c.col) return false;
    return aux_edge(inst, v, ps, r.idx, r.sign, c.idx, c.sign);
}
}  // namespace

std::vector<Segment> derive_segments(const MatchingState& s, const AugPath& r) {
    std::vector<Segment> segs;
    if (r.empty()) return segs;
    if (!r[0].col) throw CoherenceError("path must start at a column side");
    segs.push_back({true, 0, 0});
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const NodeSide &x = r[i], &y = r[i + 1];
        if (x.col == y.col) throw CoherenceError("consecutive vertices on the same side at " + pos_str(i));
        int a = x.col ? y.idx : x.idx, b = x.col ? x.idx : y.idx;
        Segment& cur = segs.back();
        bool m_edge = in_m_not_i(s, a, b), i_edge = s.in_i(a, b);
        if (x.col) {
            if (cur.outer) {
                if (m_edge || i_edge) throw CoherenceError("outer path leaves a column side along M at " + pos_str(i));
            } else if (!m_edge) {
                if (i_edge) throw CoherenceError("inner path uses an I-edge at " + pos_str(i));
                segs.push_back({true, i, i});
            }
        } else {
            if (cur.outer) {
                if (m_edge) {
                    if (cur.first == i) throw CoherenceError("empty outer path at " + pos_str(i));
                    segs.push_back({false, i, i});
                } else if (!i_edge) {
                    throw CoherenceError("outer path leaves a row side along a non-I edge at " + pos_str(i));
                }
            } else if (!m_edge) {
                throw CoherenceError("inner path leaves a row side outside M \\ I at " + pos_str(i));
            }
        }
        segs.back().last = i + 1;
    }
    return segs;
}

std::optional<std::string> explain_aug_path(const Instance& inst, const MatchingState& s, const Labeling& v,
                                            const PotentialState& ps, const AugPath& r, PathCheck mode,
                                            const SourceTarget* st) {
    if (r.size() < 2) return "path has fewer than two vertices";
    std::set<NodeSide> seen(r.begin(), r.end());
    if (seen.size() != r.size()) return "path repeats a vertex";
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (!aux_sides(inst, v, ps, r[i], r[i + 1]))
            return "edge " + r[i].str() + "-" + r[i + 1].str() + " is not in the aux graph";
    std::vector<Segment> segs;
    try {
        segs = derive_segments(s, r);
    } catch (const CoherenceError& e) {
        return std::string(e.what());
    }
    if (mode != PathCheck::Truncated && (!segs.back().outer || r.back().col)) return "path does not end with an outer path";
    for (const auto& seg : segs) {
        if (seg.outer) {
            for (std::size_t i = seg.first + 1; i < seg.last; i += 2) {
                // r[i] is a row side continued by an I-edge
                const NodeSide &beta = r[i - 1], &alpha = r[i], &next = r[i + 1];
                if (next.sign != alpha.sign) return "I-edge traversed with mixed signs at " + pos_str(i);
                const Block* b = inst.block(alpha.idx, beta.idx);
                if (mode == PathCheck::Strict) {
                    if (pairing_nonzero(b->a, v.u[alpha.idx][opp(alpha.sign)], v.v[beta.idx][beta.sign]))
                        return "outer path orthogonality fails at " + pos_str(i);
                } else if (aux_edge(inst, v, ps, alpha.idx, opp(alpha.sign), beta.idx, beta.sign)) {
                    return "pseudo outer path condition fails at " + pos_str(i);
                }
            }
        } else {
            int sign = r[seg.first].sign;
            for (std::size_t i = seg.first; i <= seg.last; ++i)
                if (r[i].sign != sign) return "inner path changes sign at " + pos_str(i);
            for (std::size_t i = seg.first; i < seg.last; ++i) {
                const NodeSide &x = r[i], &y = r[i + 1];
                int a = x.col ? y.idx : x.idx, b = x.col ? x.idx : y.idx;
                int want = x.col ? sign : opp(sign);
                if (s.m.sign_of(a, b) != want) return "inner path edge has the wrong sign at " + pos_str(i);
            }
        }
    }
    if (mode == PathCheck::Truncated) return std::nullopt;
    SourceTarget local;
    if (!st) {
        local = source_target_sets(inst, s, v, ps);
        st = &local;
    }
    if (!st->in_source(r.front())) return "path does not start in the source set";
    if (!st->in_target(r.back())) return "path does not end in the target set";
    return std::nullopt;
}

bool is_rearrangeable(const Instance& inst, const MatchingState& s, const Labeling& v, const PotentialState& ps,
                      const ComponentWalk& comp, int* sign) {
    if (comp.cycle || comp.edge_count() % 2 == 0) return false;
    if (comp.edge_count() == 1) {
        EdgeId e = edge_between(comp.nodes[0], comp.nodes[1]);
        if (s.in_i(e.alpha, e.beta)) return false;
    }
    int sg = comp.signs.front();
    for (std::size_t i = 0; i < comp.edge_count(); i += 2) {
        EdgeId e = edge_between(comp.nodes[i], comp.nodes[i + 1]);
        if (!aux_edge(inst, v, ps, e.alpha, sg, e.beta, sg)) return false;
    }
    if (sign) *sign = sg;
    return true;
}

std::optional<Rearrangeable> find_rearrangeable(const Instance& inst, const MatchingState& s, const Labeling& v,
                                                const PotentialState& ps) {
    std::vector<char> seen(inst.mu(), 0);
    for (int a = 0; a < inst.mu(); ++a) {
        if (seen[a] || s.m.degree({false, a}) == 0) continue;
        ComponentWalk w = component_of(s.m, {false, a});
        for (const auto& n : w.nodes)
            if (!n.col) seen[n.idx] = 1;
        int sign = kPlus;
        if (is_rearrangeable(inst, s, v, ps, w, &sign)) return Rearrangeable{w, sign};
    }
    return std::nullopt;
}

void rearrange(const Instance& inst, MatchingState& s, const Rearrangeable& r) {
    std::vector<EdgeId> keep;
    for (std::size_t i = 0; i < r.comp.edge_count(); ++i) {
        EdgeId e = edge_between(r.comp.nodes[i], r.comp.nodes[i + 1]);
        if (r.comp.signs[i] == r.sign)
            keep.push_back(e);
        else
            s.m.remove(e.alpha, e.beta);
    }
    for (const auto& e : keep) {
        if (inst.block(e.alpha, e.beta)->rank != 2) throw CoherenceError("rearranged edge is not rank-2");
        s.add_i(e.alpha, e.beta);
    }
}

AugPath SearchForest::path_to(const NodeSide& x) const {
    AugPath p{x};
    for (auto cur = parent(x); cur; cur = parent(*cur)) p.push_back(*cur);
    std::reverse(p.begin(), p.end());
    return p;
}

std::int64_t dual_step_epsilon(const Instance& inst, const SearchForest& f, const Labeling& v, const PotentialState& ps) {
    std::int64_t eps = kInfinity;
    for (const auto& b : inst.blocks())
        for (int t : {kPlus, kMinus}) {
            if (!f.contains({true, b.id.beta, t})) continue;
            for (int s : {kPlus, kMinus}) {
                if (f.contains({false, b.id.alpha, s})) continue;
                if (!pairing_nonzero(b.a, v.u[b.id.alpha][s], v.v[b.id.beta][t])) continue;
                std::int64_t slack = checked_add(checked_add(ps.pr[b.id.alpha][s], ps.pc[b.id.beta][t]), ps.c) - b.d;
                eps = std::min(eps, slack);
            }
        }
    return eps;
}

void apply_dual_update(const SearchForest& f, PotentialState& ps, std::int64_t eps) {
    for (std::size_t b = 0; b < ps.pc.size(); ++b)
        for (int t : {kPlus, kMinus})
            if (!f.contains({true, static_cast<int>(b), t})) ps.pc[b][t] = checked_add(ps.pc[b][t], eps);
    for (std::size_t a = 0; a < ps.pr.size(); ++a)
        for (int s : {kPlus, kMinus})
            if (f.contains({false, static_cast<int>(a), s})) ps.pr[a][s] = checked_add(ps.pr[a][s], eps);
    ps.c = checked_add(ps.c, -eps);
}

namespace {
struct Search {
    const Instance& inst;
    MatchingState& s;
    Labeling& v;
    PotentialState& ps;
    const SearchOptions& opt;
    SideIndex ix;
    PairingTable pairs;
    SourceTarget st;
    SearchForest forest;
    SearchStats stats;

    Search(const Instance& i, MatchingState& s_, Labeling& v_, PotentialState& p_, const SearchOptions& o)
        : inst(i), s(s_), v(v_), ps(p_), opt(o), ix{i.mu(), i.nu()}, pairs(i, v_), forest(ix) {}

    bool aux(int a, int sa, int b, int sb) const {
        const Block* blk = inst.block(a, b);
        return blk && pairs.get(a, b, sa, sb) && ps.pr[a][sa] + ps.pc[b][sb] + ps.c == blk->d;
    }

    void fail(std::int64_t InvariantLedger::*field, const std::string& what) {
        if (opt.ledger) ++(opt.ledger->*field);
        throw CoherenceError("search invariant: " + what);
    }

    void trace(const std::string& line) {
        if (opt.trace) *opt.trace << line << "\n";
    }

    int k() const { return static_cast<int>(s.size()); }

    void check_phase() {
        if (!opt.checks) return;
        InvariantLedger* lg = opt.ledger;
        if (lg) ++lg->checks;
        try {
            build_aux(inst, s, v, ps);
        } catch (const std::logic_error& e) {
            fail(&InvariantLedger::eq5_violations, e.what());
        }
        if (auto err = explain_matching_state(inst, s, v)) fail(&InvariantLedger::forest_violations, *err);
        if (auto err = explain_c_potential(inst, v, ps)) fail(&InvariantLedger::forest_violations, *err);
        if (auto err = explain_zero(s, ps, opt.primal_only_target))
            fail(&InvariantLedger::forest_violations, *err);
        if (st.source_col_count() - st.source_row_count() != 2 * inst.nu() - k())
            fail(&InvariantLedger::cardinality_violations, "source set cardinality identity");
        int fcols = 0, frows = 0;
        for (int id = 0; id < ix.count(); ++id) {
            NodeSide x = ix.side(id);
            if (!forest.contains(x)) continue;
            (x.col ? fcols : frows)++;
            AugPath p = forest.path_to(x);
            int sources = 0;
            for (const auto& y : p) sources += st.in_source(y);
            if (!st.in_source(p.front())) fail(&InvariantLedger::forest_violations, "tree root outside the source set");
            if (p.size() > 1 && !x.col) {
                // a row side in F ends a path that must extend a truncated augmenting path
                AugPath q(p.begin(), p.end());
                if (auto err = explain_aug_path(inst, s, v, ps, q, PathCheck::Truncated))
                    fail(&InvariantLedger::forest_violations, "forest path: " + *err);
            }
            if (x.col && p.size() > 1)
                if (auto err = explain_aug_path(inst, s, v, ps, p, PathCheck::Truncated))
                    fail(&InvariantLedger::forest_violations, "forest path: " + *err);
            (void)sources;
        }
        // one source per tree: no source vertex may have a parent
        for (int id = 0; id < ix.count(); ++id) {
            NodeSide x = ix.side(id);
            if (forest.contains(x) && st.in_source(x) && forest.parent(x))
                fail(&InvariantLedger::forest_violations, "tree contains two source vertices");
        }
        // the pair that (Tight) mandates; the optional pair of a double-tight edge may split at a (P3) start
        for (const auto& se : s.m.edges())
            for (int sg : {kPlus, kMinus})
                if ((s.in_i(se.id.alpha, se.id.beta) || sg != se.sign) && aux(se.id.alpha, sg, se.id.beta, sg) &&
                    forest.contains({false, se.id.alpha, sg}) != forest.contains({true, se.id.beta, sg}))
                    fail(&InvariantLedger::forest_violations,
                         "matching edge half inside the forest at " + NodeSide{false, se.id.alpha, sg}.str() + "-" +
                             NodeSide{true, se.id.beta, sg}.str());
        // a restricted target set leaves free rows outside T
        if (!opt.primal_only_target && fcols - frows != 2 * inst.nu() - k())
            fail(&InvariantLedger::cardinality_violations, "forest cardinality");
    }

    SearchOutcome finish(SearchOutcome::Kind kind, AugPath path = {}) {
        SearchOutcome out;
        out.kind = kind;
        out.path = std::move(path);
        out.stats = stats;
        return out;
    }

    SearchOutcome run() {
        st = source_target_sets(inst, s, v, ps);
        if (opt.primal_only_target) {
            std::fill(st.target.begin(), st.target.end(), 0);
            for (const auto& x : tight_component(inst, s, v, ps, *opt.primal_only_target)) st.target[ix.id(x)] = 1;
        }
        for (int id = 0; id < ix.count(); ++id)
            if (st.source[id]) forest.add_root(ix.side(id));
        int limit = 8 * std::max(1, std::min(inst.mu(), inst.nu()));
        check_phase();
        while (true) {
            if (++stats.phases > limit) throw CoherenceError("search exceeded its phase bound");
            std::optional<std::pair<NodeSide, NodeSide>> edge;
            for (int b = 0; b < inst.nu() && !edge; ++b)
                for (int t : {kPlus, kMinus}) {
                    if (edge || !forest.contains({true, b, t})) continue;
                    for (int a = 0; a < inst.mu() && !edge; ++a)
                        for (int sa : {kPlus, kMinus})
                            if (!edge && !forest.contains({false, a, sa}) && aux(a, sa, b, t))
                                edge = {{true, b, t}, {false, a, sa}};
                }
            if (edge) {
                ++stats.primal;
                auto [beta, alpha] = *edge;
                forest.add_child(beta, alpha);
                if (st.in_target(alpha)) {
                    trace(R"({"phase":)" + std::to_string(stats.phases) + R"(,"step":"P1","edge":")" + beta.str() +
                          "-" + alpha.str() + "\"}");
                    return finish(SearchOutcome::Kind::AugmentingPath, forest.path_to(alpha));
                }
                int bi = s.i_row[alpha.idx];
                if (bi >= 0) {
                    primal_p2(beta, alpha, bi);
                } else {
                    primal_p3(alpha);
                }
                check_phase();
                continue;
            }
            if (opt.primal_only_target) return finish(SearchOutcome::Kind::Infeasible);
            ++stats.dual;
            std::int64_t eps = dual_step_epsilon(inst, forest, v, ps);
            trace(R"({"phase":)" + std::to_string(stats.phases) + R"(,"step":"dual","eps":)" +
                  (eps == kInfinity ? std::string("\"inf\"") : std::to_string(eps)) + "}");
            if (eps == kInfinity) return finish(SearchOutcome::Kind::Infeasible);
            if (eps <= 0) fail(&InvariantLedger::epsilon_violations, "non-positive dual step");
            apply_dual_update(forest, ps, eps);
            if (auto rc = find_rearrangeable(inst, s, v, ps)) {
                rearrange(inst, s, *rc);
                trace(R"({"phase":)" + std::to_string(stats.phases) + R"(,"step":"rearrange"})");
                return finish(SearchOutcome::Kind::Rearranged);
            }
            SourceTarget nst = source_target_sets(inst, s, v, ps);
            for (int id = 0; id < ix.count(); ++id) {
                NodeSide x = ix.side(id);
                if (!forest.contains(x) || !nst.target[id]) continue;
                AugPath p = forest.path_to(x);
                std::size_t j = 0;
                while (!nst.in_target(p[j])) ++j;
                std::optional<std::size_t> i0;
                for (std::size_t i = 0; i < j; ++i)
                    if (p[i].col && nst.in_source(p[i])) i0 = i;
                if (!i0 || p[j].col) throw CoherenceError("minimal path into the enlarged target set is malformed");
                AugPath r(p.begin() + static_cast<std::ptrdiff_t>(*i0), p.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                trace(R"({"phase":)" + std::to_string(stats.phases) + R"(,"step":"D2-2"})");
                return finish(SearchOutcome::Kind::AugmentingPath, r);
            }
            for (int id = 0; id < ix.count(); ++id)
                if (nst.source[id] && !forest.contains(ix.side(id))) forest.add_root(ix.side(id));
            st = std::move(nst);
            check_phase();
        }
    }

    void primal_p2(const NodeSide& beta, const NodeSide& alpha, int bi) {
        const Block* b1 = inst.block(alpha.idx, beta.idx);
        const Block* b2 = inst.block(alpha.idx, bi);
        OrthResult x = orth(b1->a, v.v[beta.idx][beta.sign], Side::Right);
        if (!x) throw CoherenceError("full plane in a primal relabel");
        v.u[alpha.idx][opp(alpha.sign)] = *x;
        OrthResult y = orth(b2->a, *x, Side::Left);
        if (!y) throw CoherenceError("full plane in a primal relabel");
        v.v[bi][alpha.sign] = *y;
        if (v.u[alpha.idx][0] == v.u[alpha.idx][1] || v.v[bi][0] == v.v[bi][1])
            throw CoherenceError("primal relabel merged the two spaces of a node");
        pairs.refresh(inst, v, {false, alpha.idx});
        pairs.refresh(inst, v, {true, bi});
        NodeSide next{true, bi, alpha.sign};
        if (!aux(alpha.idx, alpha.sign, bi, alpha.sign) || !aux(alpha.idx, alpha.sign, beta.idx, beta.sign))
            throw CoherenceError("primal relabel removed a forest edge");
        forest.add_child(alpha, next);
        trace(R"({"phase":)" + std::to_string(stats.phases) + R"(,"step":"P2","edge":")" + beta.str() + "-" +
              alpha.str() + "\"}");
    }

    void primal_p3(const NodeSide& start) {
        int sg = start.sign;
        NodeSide alpha = start;
        int added = 0;
        while (true) {
            int b = s.m.partner(alpha.node(), opp(sg));
            if (b < 0) break;
            NodeSide beta{true, b, sg};
            if (forest.contains(beta) || !aux(alpha.idx, sg, b, sg)) break;
            forest.add_child(alpha, beta);
            ++added;
            int a2 = s.m.partner(beta.node(), sg);
            if (a2 < 0 || !aux(a2, sg, b, sg)) break;
            NodeSide next{false, a2, sg};
            if (forest.contains(next)) break;
            int b2 = s.m.partner(next.node(), opp(sg));
            if (b2 < 0 || forest.contains({true, b2, sg})) break;
            forest.add_child(beta, next);
            alpha = next;
        }
        trace(R"({"phase":)" + std::to_string(stats.phases) + R"(,"step":"P3","from":")" + start.str() +
              R"(","edges":)" + std::to_string(added) + "}");
    }
};
}  // namespace

SearchOutcome search(const Instance& inst, MatchingState& s, Labeling& v, PotentialState& ps, const SearchOptions& opt) {
    Search run(inst, s, v, ps, opt);
    return run.run();
}

}  // namespace degdet
