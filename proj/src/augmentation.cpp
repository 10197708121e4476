#include "degdet/augmentation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "degdet/auxgraph.hpp"

namespace degdet {

namespace {

const Block& blk(const Instance& inst, int a, int b) {
    const Block* p = inst.block(a, b);
    if (!p) throw CoherenceError("path uses a zero block");
    return *p;
}

const Block& blk(const Instance& inst, const NodeSide& x, const NodeSide& y) {
    return x.col ? blk(inst, y.idx, x.idx) : blk(inst, x.idx, y.idx);
}

Line orth_req(const Mat2& a, const Line& l, Side side) {
    OrthResult o = orth(a, l, side);
    if (!o) throw CoherenceError("orthogonal complement is the full plane");
    return *o;
}

EdgeId eid(const NodeSide& x, const NodeSide& y) { return edge_between(x.node(), y.node()); }

bool m_not_i(const MatchingState& s, int a, int b) { return s.m.contains(a, b) && !s.in_i(a, b); }

bool aux_pair(const Instance& inst, const Labeling& v, const PotentialState& ps, const NodeSide& x,
              const NodeSide& y) {
    const NodeSide& r = x.col ? y : x;
    const NodeSide& c = x.col ? x : y;
    return aux_edge(inst, v, ps, r.idx, r.sign, c.idx, c.sign);
}

}  // namespace

Propagation front_propagation(const Instance& inst, const Labeling& v, const AugPath& r, std::size_t first,
                              std::size_t last) {
    Propagation out(r.size());
    Line cur = v.at(r[first]);
    out[first] = cur;
    for (std::size_t pos = first + 1; pos <= last; ++pos) {
        const Block& b = blk(inst, r[pos - 1], r[pos]);
        cur = orth_req(b.a, cur, r[pos].col ? Side::Left : Side::Right);
        out[pos] = cur;
    }
    return out;
}

void apply_front_propagation(Labeling& v, const AugPath& r, const Propagation& pr, std::size_t first,
                             std::size_t last) {
    for (std::size_t pos = first + 1; pos < last; ++pos) {
        const NodeSide& x = r[pos];
        v.at(x.col ? x : x.flipped()) = *pr[pos];
    }
}

Propagation back_propagation(const Instance& inst, const Labeling& v, const AugPath& r, std::size_t first,
                             std::size_t last) {
    Propagation out(r.size());
    Line cur = v.at(r[last]);
    out[last] = cur;
    for (std::size_t pos = last; pos-- > first;) {
        const Block& b = blk(inst, r[pos], r[pos + 1]);
        cur = orth_req(b.a, cur, r[pos].col ? Side::Left : Side::Right);
        out[pos] = cur;
    }
    return out;
}

void apply_back_propagation(Labeling& v, const AugPath& r, const Propagation& pr, std::size_t first,
                            std::size_t last) {
    for (std::size_t pos = first; pos < last; ++pos) {
        const NodeSide& x = r[pos];
        v.at(x.col ? x.flipped() : x) = *pr[pos];
    }
}

bool bp_invariant(const Labeling& v, const PotentialState& ps, const AugPath& r, const Propagation& bp,
                  std::size_t pos) {
    const NodeSide& b = r[pos];
    if (ps.pc[b.idx][kPlus] != ps.pc[b.idx][kMinus]) return true;
    return v.at(b.flipped()) == *bp[pos];
}

namespace {

struct Layout {
    std::vector<Segment> segs;
    std::size_t f = 0, l = 0;  // last outer path
    int k = 0;
    int m() const { return static_cast<int>(segs.size() / 2); }
    const Segment& outer(int i) const { return segs[2 * i]; }
    std::size_t alpha_pos(int i) const { return f + 2 * i - 1; }
    std::size_t beta_pos(int i) const { return f + 2 * i; }
};

Layout layout(const MatchingState& s, const AugPath& r) {
    Layout lay;
    lay.segs = derive_segments(s, r);
    const Segment& last = lay.segs.back();
    if (!last.outer || r.back().col) throw CoherenceError("path does not end with an outer path");
    lay.f = last.first;
    lay.l = last.last;
    lay.k = static_cast<int>((lay.l - lay.f - 1) / 2);
    return lay;
}

// Edges of the last outer path from beta_i onward are pairwise distinct.
bool simple_from(const AugPath& r, const Layout& lay, int i) {
    std::set<EdgeId> seen;
    for (std::size_t pos = lay.beta_pos(i); pos < lay.l; ++pos)
        if (!seen.insert(eid(r[pos], r[pos + 1])).second) return false;
    return true;
}

int min_simple_index(const AugPath& r, const Layout& lay) {
    for (int i = 0; i <= lay.k; ++i)
        if (simple_from(r, lay, i)) return i;
    throw CoherenceError("last outer path has no simple suffix");
}

std::optional<std::size_t> find_pos(const AugPath& r, const NodeSide& x) {
    auto it = std::find(r.begin(), r.end(), x);
    if (it == r.end()) return std::nullopt;
    return static_cast<std::size_t>(it - r.begin());
}

// Maximal inner s-path ending at beta^s, listed forward and starting at a row side.
AugPath inner_path_into(const Instance& inst, const EngineState& st, const NodeSide& beta) {
    int s = beta.sign;
    AugPath back{beta};
    std::set<NodeRef> seen{beta.node()};
    std::size_t keep = 1;
    NodeRef cur = beta.node();
    while (true) {
        int a = st.s.m.partner(cur, opp(s));
        if (a < 0 || !m_not_i(st.s, a, cur.idx) || seen.count({false, a}) ||
            !aux_edge(inst, st.v, st.ps, a, s, cur.idx, s))
            break;
        back.push_back({false, a, s});
        seen.insert({false, a});
        keep = back.size();
        int b = st.s.m.partner({false, a}, s);
        if (b < 0 || !m_not_i(st.s, a, b) || seen.count({true, b}) || !aux_edge(inst, st.v, st.ps, a, s, b, s)) break;
        back.push_back({true, b, s});
        seen.insert({true, b});
        cur = {true, b};
    }
    back.resize(keep);
    std::reverse(back.begin(), back.end());
    return back;
}

bool proper(const Instance& inst, const EngineState& st, const Segment& seg) {
    const NodeSide& b = st.r[seg.last - 1];
    const NodeSide& a = st.r[seg.last];
    return !aux_pair(inst, st.v, st.ps, b, a.flipped());
}

}  // namespace

bool check_n_outer(const Instance& inst, const EngineState& st) {
    Layout lay = layout(st.s, st.r);
    if (!simple_from(st.r, lay, 0)) return false;
    Propagation bp = back_propagation(inst, st.v, st.r, lay.f, lay.l);
    for (int i = 0; i <= lay.k; ++i) {
        std::size_t pos = lay.beta_pos(i);
        if (find_pos(st.r, st.r[pos].flipped()) && !bp_invariant(st.v, st.ps, st.r, bp, pos)) return false;
    }
    return true;
}

bool check_n_inner(const Instance& inst, const EngineState& st) {
    Layout lay = layout(st.s, st.r);
    Propagation bp = back_propagation(inst, st.v, st.r, lay.f, lay.l);
    if (bp_invariant(st.v, st.ps, st.r, bp, lay.f)) return true;
    const NodeSide& b0 = st.r[lay.f];
    AugPath q = inner_path_into(inst, st, b0.flipped());
    std::set<NodeRef> qn;
    for (const auto& x : q) qn.insert(x.node());
    for (int l = 0; l + 2 <= lay.m(); ++l) {
        const Segment& seg = lay.outer(l);
        const NodeSide& a = st.r[seg.last];
        if (!qn.count(a.node()) || q.size() < 2) continue;
        if (!proper(inst, st, seg) || a.sign != b0.sign) return false;
    }
    return true;
}

std::int64_t theta(const EngineState& st) {
    Layout lay = layout(st.s, st.r);
    std::int64_t t = 0;
    std::set<NodeRef> touch;
    for (std::size_t i = 0; i < lay.segs.size(); ++i) {
        const Segment& seg = lay.segs[i];
        if (seg.outer) t += static_cast<std::int64_t>(seg.length());
        for (std::size_t pos = seg.first; pos <= seg.last; ++pos) touch.insert(st.r[pos].node());
    }
    std::set<NodeRef> done;
    for (const auto& n : touch) {
        if (done.count(n) || st.s.m.degree(n) == 0) continue;
        if (n.col ? st.s.i_col[n.idx] >= 0 : st.s.i_row[n.idx] >= 0) continue;
        ComponentWalk w = component_of(st.s.m, n);
        for (const auto& x : w.nodes) done.insert(x);
        t += static_cast<std::int64_t>(w.edge_count());
    }
    return t;
}

std::int64_t phi(const Instance& inst, const EngineState& st) {
    std::int64_t len = static_cast<std::int64_t>(st.r.size()) - 1;
    const NodeSide& start = st.r.front();
    std::map<NodeSide, int> dist{{start, 0}};
    std::deque<NodeSide> q{start};
    while (!q.empty()) {
        NodeSide x = q.front();
        q.pop_front();
        if (x.col && !is_matched(st.s, x)) return len + dist[x];
        for (int es : {kPlus, kMinus}) {
            int p = st.s.m.partner(x.node(), es);
            if (p < 0) continue;
            for (int t : {kPlus, kMinus}) {
                NodeSide y{!x.col, p, t};
                if (dist.count(y) || !aux_pair(inst, st.v, st.ps, x, y)) continue;
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    throw CoherenceError("path does not start in the source set");
}

namespace {

class Engine {
public:
    Engine(const Instance& inst, EngineState& st, const AugmentOptions& opt) : inst_(inst), st_(st), opt_(opt) {}

    AugmentStats run() {
        init_exempt();
        check("start", true);
        int n = std::max(1, std::min(inst_.mu(), inst_.nu()));
        std::int64_t limit = 8LL * n * n + 8;
        std::optional<std::pair<std::int64_t, std::int64_t>> prev;
        while (true) {
            if (++stats_.iterations > limit) throw CoherenceError("augmentation exceeded its iteration bound");
            std::pair<std::int64_t, std::int64_t> cur{theta(st_), phi(inst_, st_)};
            if (reanchor_) {
                prev.reset();
                reanchor_ = false;
            }
            if (prev && !(cur < *prev)) {
                if (opt_.ledger) ++opt_.ledger->ledger_violations;
                throw CoherenceError("theta/phi did not decrease: (" + std::to_string(prev->first) + "," + std::to_string(prev->second) + ") -> (" + std::to_string(cur.first) + "," + std::to_string(cur.second) + ")");
            }
            prev = cur;
            if (initial_stage()) {
                stats_.rearranged = true;
                trace("rearrange", cur);
                break;
            }
            Layout lay = layout(st_.s, st_.r);
            if (lay.m() == 0 && simple_from(st_.r, lay, 0)) {
                trace("base", cur);
                base_case();
                ++stats_.base;
                break;
            }
            if (!check_n_outer(inst_, st_)) {
                trace("n_outer", cur);
                ++stats_.violations;
                violate_outer();
            } else if (!check_n_inner(inst_, st_)) {
                trace("n_inner", cur);
                ++stats_.violations;
                violate_inner();
            } else {
                ++stats_.conforming;
                Layout l2 = layout(st_.s, st_.r);
                const Segment& qm = l2.segs[l2.segs.size() - 2];
                if (component_of(st_.s.m, st_.r[qm.first].node()).cycle) {
                    trace("cycle", cur);
                    conforming_cycle();
                } else {
                    trace("path", cur);
                    conforming_path();
                }
            }
        }
        check_final();
        return stats_;
    }

    AugmentStats run_guarded() {
        try {
            return run();
        } catch (const Finished&) {
            stats_.rearranged = true;
            check_final();
            return stats_;
        }
    }

private:
    const Instance& inst_;
    EngineState& st_;
    const AugmentOptions& opt_;
    AugmentStats stats_;

    bool reanchor_ = false;

    struct Finished {};

    MatchingState& s() { return st_.s; }
    Labeling& v() { return st_.v; }
    AugPath& r() { return st_.r; }

    void trace(const char* what, std::pair<std::int64_t, std::int64_t> tp) {
        if (!opt_.trace) return;
        *opt_.trace << R"({"iteration":)" << stats_.iterations << R"(,"case":")" << what << R"(","theta":)"
                    << tp.first << R"(,"phi":)" << tp.second << R"(,"length":)" << (r().size() - 1) << "}\n";
    }

    bool aux(const NodeSide& x, const NodeSide& y) const { return aux_pair(inst_, st_.v, st_.ps, x, y); }

    void fail(const std::string& what) {
        if (opt_.ledger) ++opt_.ledger->eq5_violations;
        throw CoherenceError("augmentation: " + what);
    }

    // Full coherence check of the engine state.
    void check(const std::string& where, bool with_path) {
        if (!opt_.checks) return;
        if (opt_.ledger) ++opt_.ledger->checks;
        if (auto e = explain_matching_state(inst_, st_.s, st_.v)) fail(where + ": " + *e);
        if (auto e = explain_c_potential(inst_, st_.v, st_.ps)) fail(where + ": " + *e);
        if (auto e = explain_tight(inst_, st_.s, st_.ps)) fail(where + ": " + *e);
        try {
            build_aux(inst_, st_.s, st_.v, st_.ps);
        } catch (const std::logic_error& e) {
            fail(where + ": " + e.what());
        }
        if (auto e = explain_zero(st_.s, st_.ps, st_.exempt)) fail(where + ": " + *e);
        if (with_path && !r().empty())
            if (auto e = explain_aug_path(inst_, st_.s, st_.v, st_.ps, r(), PathCheck::Strict))
                fail(where + ": " + *e);
    }

    void check_final() {
        if (!opt_.checks) return;
        st_.exempt.reset();
        r().clear();
        check("result", false);
    }

    void init_exempt() {
        const NodeSide& end = r().back();
        for (const auto& x : tight_component(inst_, s(), v(), st_.ps, end))
            if (!x.col && !is_matched(s(), x)) {
                st_.exempt = x;
                return;
            }
        throw CoherenceError("path does not end in the target set");
    }

    // Slot write that must keep p unchanged on the new line.
    void set_slot(const NodeSide& x, const Line& l) {
        if (opt_.checks) {
            std::int64_t want = st_.ps.at(x);
            if (eval_p(st_.ps, st_.v, x.node(), l) != want) fail("relabel changes the potential at " + x.str());
        }
        v().at(x) = l;
    }

    void rename(NodeRef n) {
        for (auto& x : r())
            if (x.node() == n) x.sign = opp(x.sign);
        if (st_.exempt && st_.exempt->node() == n) st_.exempt->sign = opp(st_.exempt->sign);
    }

    void flip_node(NodeRef n) {
        auto& lab = n.col ? v().v[n.idx] : v().u[n.idx];
        std::swap(lab[0], lab[1]);
        auto& pv = n.col ? st_.ps.pc[n.idx] : st_.ps.pr[n.idx];
        std::swap(pv[0], pv[1]);
        rename(n);
    }

    // Swaps the sign convention on the whole component of n in M.
    void flip_component(NodeRef n) {
        ComponentWalk w = component_of(s().m, n);
        std::vector<SignedEdge> es;
        std::size_t cnt = w.edge_count();
        for (std::size_t i = 0; i < cnt; ++i) {
            EdgeId e = edge_between(w.nodes[i], w.nodes[(i + 1) % w.nodes.size()]);
            es.push_back({e, w.signs[i]});
        }
        for (const auto& e : es) s().m.remove(e.id.alpha, e.id.beta);
        for (const auto& e : es) s().m.add(e.id.alpha, e.id.beta, opp(e.sign));
        for (const auto& x : w.nodes) flip_node(x);
    }

    void set_edge_sign(int a, int b, int sign) {
        auto cur = s().m.sign_of(a, b);
        if (!cur) throw CoherenceError("setting the sign of an absent edge");
        if (*cur == sign) return;
        s().m.remove(a, b);
        s().m.add(a, b, sign);
    }

    bool same_component(NodeRef a, NodeRef b) { return component_of(s().m, a).contains(b); }

    // Sets slot tau at x to z and repairs the chain of rank-2 edges leaving x along the opposite sign.
    void relabel_walk(const NodeSide& x, const Line& z) {
        if (v().at(x) == z) return;
        set_slot(x, z);
        NodeSide cur = x;
        Line val = z;
        while (true) {
            int p = s().m.partner(cur.node(), opp(cur.sign));
            if (p < 0) break;
            NodeSide nxt{!cur.col, p, opp(cur.sign)};
            if (nxt.node() == x.node()) break;
            const Block& b = blk(inst_, cur, nxt);
            if (b.rank == 1) break;
            val = orth_req(b.a, val, cur.col ? Side::Right : Side::Left);
            set_slot(nxt, val);
            cur = nxt;
        }
    }

    // Front-propagates every outer segment so that a pseudo augmenting path becomes a genuine one.
    void normalize(const std::string& where) {
        if (auto e = explain_aug_path(inst_, s(), v(), st_.ps, r(), PathCheck::Pseudo)) {
            rearrange_at_exempt();
            research(where + ": " + *e);
            return;
        }
        for (const auto& seg : derive_segments(s(), r())) {
            if (!seg.outer) continue;
            Propagation fp = front_propagation(inst_, v(), r(), seg.first, seg.last);
            for (std::size_t pos = seg.first + 1; pos < seg.last; ++pos) {
                const NodeSide& x = r()[pos];
                set_slot(x.col ? x : x.flipped(), *fp[pos]);
            }
        }
        check(where, true);
    }

    // Fallback when the rebuilt path reuses an edge that just entered M: finish by rearranging at the exempt side.
    void rearrange_at_exempt() {
        if (!st_.exempt) return;
        NodeRef n = st_.exempt->node();
        if (s().m.degree(n) == 0 || s().i_row[n.idx] >= 0) return;
        ComponentWalk c = component_of(s().m, n);
        int sign = kPlus;
        if (!is_rearrangeable(inst_, s(), v(), st_.ps, c, &sign)) return;
        EngineState saved = st_;
        rearrange(inst_, s(), Rearrangeable{c, sign});
        st_.exempt.reset();
        r().clear();
        bool ok = !explain_matching_state(inst_, s(), v()) && !explain_c_potential(inst_, v(), st_.ps) &&
                  !explain_tight(inst_, s(), st_.ps) && !explain_zero(s(), st_.ps, std::nullopt);
        if (!ok) {
            st_ = std::move(saved);
            return;
        }
        ++stats_.fallbacks;
        throw Finished{};
    }

    // Fallback when the rebuilt path is not a pseudo augmenting path: find a fresh one into the exempt component.
    void research(const std::string& why) {
        if (!st_.exempt) fail(why);
        SearchOptions so;
        so.checks = opt_.checks;
        so.ledger = opt_.ledger;
        so.primal_only_target = st_.exempt;
        SearchOutcome out = search(inst_, s(), v(), st_.ps, so);
        if (out.kind != SearchOutcome::Kind::AugmentingPath) fail(why);
        r() = out.path;
        ++stats_.researches;
        reanchor_ = true;
        check("research", true);
    }

    void apply_back(const Propagation& bp, std::size_t first, std::size_t last) {
        for (std::size_t pos = first; pos < last; ++pos) {
            const NodeSide& x = r()[pos];
            set_slot(x.col ? x.flipped() : x, *bp[pos]);
        }
    }

    // Removes the opposite-sign edges and moves the same-sign edges into I along the tight path from x to its root.
    void isolate_end(const NodeSide& x) {
        NodeRef n = x.node();
        int sg = x.sign;
        int deg = s().m.degree(n);
        if (deg == 0 || (deg == 1 && s().m.partner(n, sg) >= 0)) return;
        std::vector<SignedEdge> path;
        NodeRef cur = n;
        int es = opp(sg);
        while (true) {
            int p = s().m.partner(cur, es);
            if (p < 0) break;
            NodeRef nxt{!cur.col, p};
            if (nxt == n) fail("tight path to the root closes a cycle");
            EdgeId e = edge_between(cur, nxt);
            if (s().in_i(e.alpha, e.beta)) fail("tight path to the root meets I");
            if (!aux_edge(inst_, v(), st_.ps, e.alpha, sg, e.beta, sg)) fail("path to the root is not tight");
            path.push_back({e, es});
            cur = nxt;
            es = opp(es);
        }
        if (path.empty() || path.back().sign != sg) fail("tight path to the root ends with the wrong sign");
        for (const auto& e : path)
            if (e.sign != sg) s().m.remove(e.id.alpha, e.id.beta);
        for (const auto& e : path) {
            if (e.sign != sg) continue;
            if (inst_.block(e.id.alpha, e.id.beta)->rank != 2) fail("double-tight edge is rank-1");
            s().add_i(e.id.alpha, e.id.beta);
        }
    }

    // Returns true when the rearrangement finished the augmentation.
    bool initial_stage() {
        NodeSide end = r().back();
        if (s().m.degree(end.node()) > 0 && s().i_row[end.idx] < 0) {
            ComponentWalk c = component_of(s().m, end.node());
            int sign = kPlus;
            if (is_rearrangeable(inst_, s(), v(), st_.ps, c, &sign)) {
                rearrange(inst_, s(), Rearrangeable{c, sign});
                st_.exempt.reset();
                r().clear();
                return true;
            }
        }
        // (A3): restart at the last source vertex that begins an outer step
        SourceTarget stt = source_target_sets(inst_, s(), v(), st_.ps);
        while (true) {
            bool bad = false;
            for (std::size_t pos = 1; pos + 1 < r().size(); ++pos) bad |= stt.in_source(r()[pos]) != 0;
            if (!bad) break;
            std::optional<std::size_t> cut;
            for (std::size_t pos = 1; pos + 1 < r().size(); ++pos) {
                const NodeSide& x = r()[pos];
                if (!x.col || !stt.in_source(x)) continue;
                EdgeId e = eid(x, r()[pos + 1]);
                if (!s().m.contains(e.alpha, e.beta)) cut = pos;
            }
            if (!cut) fail("no suffix of the path starts in the source set");
            r().erase(r().begin(), r().begin() + static_cast<std::ptrdiff_t>(*cut));
        }
        // (A4)
        {
            Layout lay = layout(s(), r());
            std::vector<NodeSide> tc = tight_component(inst_, s(), v(), st_.ps, r().back());
            std::set<NodeSide> cset(tc.begin(), tc.end());
            for (int l = 0; l < lay.m(); ++l) {
                const Segment& seg = lay.outer(l);
                NodeSide a = r()[seg.last];
                if (cset.count(a)) {
                    r().resize(seg.last + 1);
                    break;
                }
                if (cset.count(a.flipped()) && !proper(inst_, st_, seg)) {
                    r().resize(seg.last);
                    r().push_back(a.flipped());
                    break;
                }
            }
        }
        // (A5)
        NodeSide a = r().back();
        int deg = s().m.degree(a.node());
        if (deg > 1 || (deg == 1 && s().m.partner(a.node(), a.sign) < 0)) {
            isolate_end(a);
            st_.exempt = a;
            normalize("A5");
        } else {
            check("initial", true);
        }
        return false;
    }

    // Rewrites the last outer path from beta_istar on, adding its tail to M.
    void simplify(int istar) {
        Layout lay = layout(s(), r());
        if (!simple_from(r(), lay, istar)) fail("simplification needs a simple tail");
        int k = lay.k;
        for (int i = istar + 1; i <= k; ++i) {
            NodeSide a = r()[lay.alpha_pos(i)], b = r()[lay.beta_pos(i)];
            if (a.sign == kMinus) flip_component(a.node());
            set_edge_sign(a.idx, b.idx, kPlus);
        }
        if (r()[lay.l].sign == kMinus) flip_component(r()[lay.l].node());
        std::size_t from = lay.alpha_pos(istar + 1);
        if (istar == k) {
            check("simplify", true);
            return;
        }
        Propagation bp = back_propagation(inst_, v(), r(), from, lay.l);
        apply_back(bp, from, lay.l);
        NodeSide last = r()[lay.l], bk = r()[lay.beta_pos(k)];
        Line gap = orth_req(blk(inst_, last, bk).a, v().v[bk.idx][kPlus], Side::Right);
        for (int i = istar + 1; i <= k; ++i) {
            NodeSide a = r()[lay.alpha_pos(i)], b = r()[lay.beta_pos(i)];
            s().remove_i(a.idx, b.idx);
        }
        for (int i = istar + 1; i <= k; ++i) {
            NodeSide b = r()[lay.beta_pos(i)], a = r()[lay.alpha_pos(i + 1)];
            s().m.add(a.idx, b.idx, kMinus);
        }
        relabel_walk({false, last.idx, kMinus}, gap);
        r().resize(from + 1);
        st_.exempt = r().back();
        normalize("simplify");
    }

    void join(const NodeSide& b0, const NodeSide& a1, int sign) {
        // new sign-edge beta0 alpha1 matches the opposite sides of both nodes
        int t = opp(sign);
        const Block& b = blk(inst_, a1.idx, b0.idx);
        Line za = orth_req(b.a, v().v[b0.idx][t], Side::Right);
        Line zb = orth_req(b.a, v().u[a1.idx][t], Side::Left);
        s().m.add(a1.idx, b0.idx, sign);
        relabel_walk({false, a1.idx, sign}, za);
        relabel_walk({true, b0.idx, sign}, zb);
    }

    void base_case() {
        simplify(0);
        NodeSide b0 = r()[0];
        isolate_end(b0);
        if (r()[0].sign == kMinus) flip_component(r()[0].node());
        if (r()[1].sign == kMinus) {
            if (same_component(r()[0].node(), r()[1].node())) fail("base case endpoints disagree on signs");
            flip_component(r()[1].node());
        }
        NodeSide bb = r()[0], aa = r()[1];
        if (s().m.partner(bb.node(), kMinus) >= 0 || s().m.partner(aa.node(), kMinus) >= 0)
            fail("base case endpoint keeps a minus-edge");
        join(bb, aa, kMinus);
        if (!check_cycle_condition(inst_, s().m)) fail("base case closes a rank-2 cycle");
        r().clear();
        st_.exempt.reset();
    }

    void violate_outer() {
        Layout lay = layout(s(), r());
        int istar = min_simple_index(r(), lay);
        Propagation bp = back_propagation(inst_, v(), r(), lay.f, lay.l);
        int pick = -1;
        // a simple last outer path may still be violated at beta_0; reroute there as well
        for (int i = lay.k; i > istar || (istar == 0 && i == 0); --i) {
            std::size_t pos = lay.beta_pos(i);
            if (find_pos(r(), r()[pos].flipped()) && !bp_invariant(v(), st_.ps, r(), bp, pos)) {
                pick = i;
                break;
            }
        }
        if (pick >= 0) {
            NodeRef bnode = r()[lay.beta_pos(pick)].node();
            simplify(pick);
            Layout l2 = layout(s(), r());
            NodeSide bs = r()[l2.beta_pos(pick)];
            if (bs.node() != bnode) fail("case 1 lost track of beta_i");
            auto q = find_pos(r(), bs.flipped());
            if (!q || *q >= l2.beta_pos(pick)) fail("case 1 reroute vertex is not earlier on the path");
            NodeSide end = r().back();
            r().resize(*q + 1);
            r().push_back(end);
            normalize("case 1");
            return;
        }
        if (istar == 0) {
            research("N_outer violated with a simple last outer path and no reroute");
            return;
        }
        int jstar = -1;
        EdgeId rep = eid(r()[lay.alpha_pos(istar)], r()[lay.beta_pos(istar)]);
        for (int j = istar + 1; j <= lay.k; ++j)
            if (eid(r()[lay.alpha_pos(j)], r()[lay.beta_pos(j)]) == rep) jstar = j;
        if (jstar < 0) fail("case 2 repeated edge not found");
        simplify(jstar);
        lay = layout(s(), r());
        if (lay.k != jstar || min_simple_index(r(), lay) != istar) fail("case 2 layout changed by simplification");
        std::size_t pa = lay.alpha_pos(istar), pb = lay.beta_pos(istar);
        NodeRef an = r()[pa].node(), bn = r()[pb].node();
        s().remove_i(an.idx, bn.idx);
        s().m.remove(an.idx, bn.idx);
        if (r()[pa].sign == kMinus) flip_node(an);
        if (r()[pb].sign == kPlus) flip_node(bn);
        for (int i = istar + 1; i < jstar; ++i) {
            NodeSide a = r()[lay.alpha_pos(i)], b = r()[lay.beta_pos(i)];
            if (a.sign == kPlus) flip_component(a.node());
            set_edge_sign(a.idx, b.idx, kMinus);
        }
        std::size_t paj = lay.alpha_pos(jstar), pbj = lay.beta_pos(jstar);
        NodeSide anext = r()[lay.l];
        if (r()[paj].sign != kMinus || r()[pbj].sign != kPlus || anext.sign != kPlus)
            fail("case 2 signs are not normalized");
        Propagation bp2 = back_propagation(inst_, v(), r(), pb, paj);
        apply_back(bp2, pb, paj);
        Line y = v().v[bn.idx][kPlus];
        const Block& bl = blk(inst_, anext.idx, bn.idx);
        Line zb = orth_req(bl.a, v().u[anext.idx][kPlus], Side::Left);
        Line za = orth_req(bl.a, y, Side::Right);
        for (int i = istar; i < jstar; ++i) {
            NodeSide b = r()[lay.beta_pos(i)], a = r()[lay.alpha_pos(i + 1)];
            s().m.add(a.idx, b.idx, kPlus);
        }
        for (int i = istar + 1; i < jstar; ++i) {
            NodeSide a = r()[lay.alpha_pos(i)], b = r()[lay.beta_pos(i)];
            s().remove_i(a.idx, b.idx);
        }
        s().m.add(anext.idx, bn.idx, kMinus);
        relabel_walk({true, bn.idx, kMinus}, zb);
        relabel_walk({false, anext.idx, kMinus}, za);
        int kstar = jstar;
        std::size_t p = pa;
        while (kstar > istar + 1 && p >= lay.f + 2) {
            NodeSide bw{true, r()[lay.beta_pos(kstar - 1)].idx, kPlus};
            NodeSide aw{false, r()[lay.alpha_pos(kstar - 1)].idx, kPlus};
            if (r()[p - 1] != bw || r()[p - 2] != aw) break;
            p -= 2;
            --kstar;
        }
        r().resize(p + 1);
        st_.exempt = NodeSide{false, an.idx, kPlus};
        normalize("case 2");
    }

    void violate_inner() {
        simplify(0);
        Layout lay = layout(s(), r());
        const Segment& qm = lay.segs[lay.segs.size() - 2];
        if (r()[qm.last].sign == kMinus) flip_component(r()[qm.last].node());
        lay = layout(s(), r());
        NodeSide b0 = r()[lay.f];
        if (b0.sign != kPlus) fail("inner violation: last inner path is not a plus-path");
        AugPath q = inner_path_into(inst_, st_, b0.flipped());
        if (q.size() < 2) fail("inner violation without an inner minus-path");
        for (int l = 0; l + 2 <= lay.m(); ++l) {
            const Segment& seg = lay.outer(l);
            NodeSide a = r()[seg.last];
            auto it = std::find_if(q.begin(), q.end(), [&](const NodeSide& x) { return x.node() == a.node(); });
            if (it == q.end()) continue;
            if (a.sign == kPlus && proper(inst_, st_, seg)) continue;
            NodeSide end = r().back();
            AugPath nr(r().begin(), r().begin() + static_cast<std::ptrdiff_t>(seg.last));
            nr.insert(nr.end(), it, q.end());
            nr.push_back(end);
            r() = std::move(nr);
            normalize("N_inner");
            return;
        }
        fail("inner violation without a rerouting outer path");
    }

    void conforming_cycle() {
        simplify(0);
        Layout lay = layout(s(), r());
        const Segment& qm = lay.segs[lay.segs.size() - 2];
        if (r()[qm.last].sign == kPlus) flip_component(r()[qm.last].node());
        if (r()[lay.l].sign == kPlus) {
            if (same_component(r()[lay.l].node(), r()[qm.last].node())) fail("cycle case end lies on the cycle");
            flip_component(r()[lay.l].node());
        }
        NodeSide am1 = r()[lay.f - 1], b0 = r()[lay.f], a1 = r()[lay.l];
        if (s().m.sign_of(am1.idx, b0.idx) != kPlus) fail("cycle case: last inner edge is not a plus-edge");
        s().m.remove(am1.idx, b0.idx);
        join(b0, a1, kPlus);
        r().resize(qm.first + 1);
        st_.exempt = NodeSide{false, am1.idx, kMinus};
        normalize("cycle");
    }

    void conforming_path() {
        simplify(0);
        Layout lay = layout(s(), r());
        const Segment& qm = lay.segs[lay.segs.size() - 2];
        if (r()[qm.last].sign == kPlus) flip_component(r()[qm.last].node());
        NodeSide am1 = r()[lay.f - 1];
        NodeRef b0n = r()[lay.f].node(), a1n = r()[lay.l].node();
        if (s().m.sign_of(am1.idx, b0n.idx) != kPlus) fail("path case: last inner edge is not a plus-edge");
        s().m.remove(am1.idx, b0n.idx);
        if (r()[lay.f].sign == kMinus) flip_component(b0n);
        if (r()[lay.l].sign == kMinus) {
            if (same_component(b0n, a1n)) fail("path case endpoints disagree on signs");
            flip_component(a1n);
        }
        NodeSide b0 = r()[lay.f], a1 = r()[lay.l];
        join(b0, a1, kMinus);
        AugPath head(r().begin(), r().begin() + static_cast<std::ptrdiff_t>(qm.first) + 1);
        NodeSide am1now{false, am1.idx, kMinus};
        st_.exempt = am1now;
        SourceTarget stt = source_target_sets(inst_, s(), v(), st_.ps);
        if (stt.in_source(head.front())) {
            r() = std::move(head);
        } else {
            AugPath nr{{true, b0.idx, kMinus}, {false, am1.idx, kPlus}};
            NodeRef cur = {false, am1.idx};
            int es = kMinus;
            std::set<NodeRef> seen{b0.node(), cur};
            while (nr.back() != head.front()) {
                int p = s().m.partner(cur, es);
                if (p < 0) fail("path case: prefix repair cannot reach the first vertex");
                NodeRef nxt{!cur.col, p};
                if (!seen.insert(nxt).second) fail("path case: prefix repair revisits a node");
                NodeSide x{nxt.col, nxt.idx, kPlus};
                if (!aux(nr.back(), x)) fail("path case: prefix repair edge is not tight");
                nr.push_back(x);
                cur = nxt;
                es = opp(es);
            }
            nr.insert(nr.end(), head.begin() + 1, head.end());
            r() = std::move(nr);
        }
        normalize("path");
    }
};

}  // namespace

AugmentStats augment(const Instance& inst, MatchingState& s, Labeling& v, PotentialState& ps, const AugPath& path,
                     const AugmentOptions& opt) {
    EngineState st{s, v, ps, path, std::nullopt};
    Engine eng(inst, st, opt);
    AugmentStats stats = eng.run_guarded();
    s = std::move(st.s);
    v = std::move(st.v);
    ps = std::move(st.ps);
    return stats;
}

}  // namespace degdet
