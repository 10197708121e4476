#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/matching.hpp"
#include "degdet/pathsearch.hpp"
#include "degdet/potential.hpp"

namespace degdet {

struct EngineState {
    MatchingState s;
    Labeling v;
    PotentialState ps;
    AugPath r;
    std::optional<NodeSide> exempt;
};

// Lines along r[first..last]; entries at positions outside the range are empty.
using Propagation = std::vector<std::optional<Line>>;

// Y0 = V at r[first]; X_i into the opposite row slot, Y_i into the traversed column slot.
Propagation front_propagation(const Instance& inst, const Labeling& v, const AugPath& r, std::size_t first,
                              std::size_t last);
void apply_front_propagation(Labeling& v, const AugPath& r, const Propagation& pr, std::size_t first, std::size_t last);
// X at r[last] is the traversed row slot; values run backwards.
Propagation back_propagation(const Instance& inst, const Labeling& v, const AugPath& r, std::size_t first,
                             std::size_t last);
// Writes X into the traversed row slot and Y into the opposite column slot, r[last] excluded.
void apply_back_propagation(Labeling& v, const AugPath& r, const Propagation& pr, std::size_t first, std::size_t last);

bool bp_invariant(const Labeling& v, const PotentialState& ps, const AugPath& r, const Propagation& bp,
                  std::size_t pos);
bool check_n_outer(const Instance& inst, const EngineState& st);
bool check_n_inner(const Instance& inst, const EngineState& st);

// Outer path lengths plus the edges of M\I components touching any node of the path.
std::int64_t theta(const EngineState& st);
std::int64_t phi(const Instance& inst, const EngineState& st);

struct AugmentOptions {
    bool checks = false;
    std::ostream* trace = nullptr;
    InvariantLedger* ledger = nullptr;
};

struct AugmentStats {
    int iterations = 0;
    int base = 0;
    int violations = 0;
    int conforming = 0;
    bool rearranged = false;
    int fallbacks = 0;   // rebuilt path was not a pseudo augmenting path; finished by rearrangement
    int researches = 0;  // rebuilt path was not a pseudo augmenting path; replaced by a primal-only search
};

// Turns an augmenting path into a matching-pair of size k+1. p keeps its values on every line.
AugmentStats augment(const Instance& inst, MatchingState& s, Labeling& v, PotentialState& ps, const AugPath& path,
                     const AugmentOptions& opt = {});

}  // namespace degdet
