#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/matching.hpp"

namespace degdet {

// Values of p at the two labeled spaces of each node; any other line takes the max.
struct PotentialState {
    std::int64_t c = 0;
    std::vector<std::array<std::int64_t, 2>> pr, pc;

    PotentialState() = default;
    PotentialState(int mu, int nu, std::int64_t c0) : c(c0), pr(mu, {0, 0}), pc(nu, {0, 0}) {}
    std::int64_t at(const NodeSide& s) const { return s.col ? pc[s.idx][s.sign] : pr[s.idx][s.sign]; }
    std::int64_t& at(const NodeSide& s) { return s.col ? pc[s.idx][s.sign] : pr[s.idx][s.sign]; }
    friend bool operator==(const PotentialState&, const PotentialState&) = default;
};

std::int64_t eval_p(const PotentialState& ps, const Labeling& v, NodeRef gamma, const Line& l);

std::optional<std::string> explain_c_potential(const Instance& inst, const Labeling& v, const PotentialState& ps);
bool is_c_potential(const Instance& inst, const Labeling& v, const PotentialState& ps);

std::optional<std::string> explain_tight(const Instance& inst, const MatchingState& s, const PotentialState& ps);
bool check_tight(const Instance& inst, const MatchingState& s, const Labeling& v, const PotentialState& ps);

bool check_zero(const MatchingState& s, const Labeling& v, const PotentialState& ps);
bool check_zero_prime(const MatchingState& s, const Labeling& v, const PotentialState& ps, const NodeSide& exempt);
std::optional<std::string> explain_zero(const MatchingState& s, const PotentialState& ps,
                                        const std::optional<NodeSide>& exempt);

std::int64_t dual_value(const Labeling& v, const PotentialState& ps, std::int64_t k);

}  // namespace degdet
