#include "degdet/potential.hpp"

#include <algorithm>

namespace degdet {

std::int64_t eval_p(const PotentialState& ps, const Labeling& v, NodeRef gamma, const Line& l) {
    for (int s : {kPlus, kMinus})
        if (v.at({gamma.col, gamma.idx, s}) == l) return ps.at({gamma.col, gamma.idx, s});
    return std::max(ps.at({gamma.col, gamma.idx, kPlus}), ps.at({gamma.col, gamma.idx, kMinus}));
}

std::optional<std::string> explain_c_potential(const Instance& inst, const Labeling& v, const PotentialState& ps) {
    for (const auto& arr : {&ps.pr, &ps.pc})
        for (const auto& x : *arr)
            if (x[0] < 0 || x[1] < 0) return "negative potential value";
    for (const auto& b : inst.blocks())
        for (int s : {kPlus, kMinus})
            for (int t : {kPlus, kMinus}) {
                if (!pairing_nonzero(b.a, v.u[b.id.alpha][s], v.v[b.id.beta][t])) continue;
                std::int64_t lhs = checked_add(checked_add(ps.pr[b.id.alpha][s], ps.pc[b.id.beta][t]), ps.c);
                if (lhs < b.d)
                    return "potential condition fails at (a" + std::to_string(b.id.alpha + 1) + sign_char(s) + ", b" +
                           std::to_string(b.id.beta + 1) + sign_char(t) + ")";
            }
    return std::nullopt;
}

bool is_c_potential(const Instance& inst, const Labeling& v, const PotentialState& ps) {
    return !explain_c_potential(inst, v, ps).has_value();
}

std::optional<std::string> explain_tight(const Instance& inst, const MatchingState& s, const PotentialState& ps) {
    for (const auto& se : s.m.edges()) {
        int a = se.id.alpha, b = se.id.beta;
        std::int64_t d = inst.block(a, b)->d;
        std::string tag = "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
        int o = opp(se.sign);
        if (checked_add(checked_add(ps.pr[a][o], ps.pc[b][o]), ps.c) != d) return "edge " + tag + " is not tight";
        if (s.in_i(a, b) && checked_add(checked_add(ps.pr[a][se.sign], ps.pc[b][se.sign]), ps.c) != d)
            return "I-edge " + tag + " is not double-tight";
    }
    return std::nullopt;
}

bool check_tight(const Instance& inst, const MatchingState& s, const Labeling&, const PotentialState& ps) {
    return !explain_tight(inst, s, ps).has_value();
}

std::optional<std::string> explain_zero(const MatchingState& s, const PotentialState& ps,
                                        const std::optional<NodeSide>& exempt) {
    for (bool col : {false, true}) {
        int n = col ? s.m.nu() : s.m.mu();
        for (int i = 0; i < n; ++i)
            for (int sg : {kPlus, kMinus}) {
                NodeSide side{col, i, sg};
                if (exempt && *exempt == side) continue;
                if (!is_matched(s, side) && ps.at(side) != 0)
                    return "unmatched side " + side.str() + " has nonzero potential";
            }
    }
    return std::nullopt;
}

bool check_zero(const MatchingState& s, const Labeling&, const PotentialState& ps) {
    return !explain_zero(s, ps, std::nullopt).has_value();
}

bool check_zero_prime(const MatchingState& s, const Labeling&, const PotentialState& ps, const NodeSide& exempt) {
    return !explain_zero(s, ps, exempt).has_value();
}

std::int64_t dual_value(const Labeling&, const PotentialState& ps, std::int64_t k) {
    std::int64_t total = 0;
    for (const auto& arr : {&ps.pr, &ps.pc})
        for (const auto& x : *arr) total = checked_add(total, checked_add(x[0], x[1]));
    return checked_add(total, checked_mul(k, ps.c));
}

}  // namespace degdet
