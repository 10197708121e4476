#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "degdet/auxgraph.hpp"
#include "degdet/instance.hpp"
#include "degdet/matching.hpp"
#include "degdet/potential.hpp"

namespace degdet {

struct CoherenceError : std::logic_error {
    using std::logic_error::logic_error;
};

// Vertex sequence beta, alpha, ..., alpha. Segments are derived from the current state.
using AugPath = std::vector<NodeSide>;

struct Segment {
    bool outer = true;
    std::size_t first = 0, last = 0;  // vertex positions, endpoints shared with neighbours
    std::size_t length() const { return last - first; }
};

// Splits a path into outer and inner segments by classifying each edge against (M, I).
std::vector<Segment> derive_segments(const MatchingState& s, const AugPath& r);

enum class PathCheck { Strict, Pseudo, Truncated };
std::optional<std::string> explain_aug_path(const Instance& inst, const MatchingState& s, const Labeling& v,
                                            const PotentialState& ps, const AugPath& r, PathCheck mode,
                                            const SourceTarget* st = nullptr);

struct Rearrangeable {
    ComponentWalk comp;
    int sign = kPlus;
};

bool is_rearrangeable(const Instance& inst, const MatchingState& s, const Labeling& v, const PotentialState& ps,
                      const ComponentWalk& comp, int* sign = nullptr);
std::optional<Rearrangeable> find_rearrangeable(const Instance& inst, const MatchingState& s, const Labeling& v,
                                                const PotentialState& ps);
void rearrange(const Instance& inst, MatchingState& s, const Rearrangeable& r);

// Counters for the structural invariants checked while solving.
struct InvariantLedger {
    std::int64_t checks = 0;
    std::int64_t eq5_violations = 0;
    std::int64_t cardinality_violations = 0;
    std::int64_t forest_violations = 0;
    std::int64_t epsilon_violations = 0;
    std::int64_t ledger_violations = 0;
    std::int64_t total_violations() const {
        return eq5_violations + cardinality_violations + forest_violations + epsilon_violations + ledger_violations;
    }
};

struct SearchOptions {
    bool checks = false;
    std::ostream* trace = nullptr;
    InvariantLedger* ledger = nullptr;
    // Primal steps only, with the target set cut down to the component of this unmatched row side.
    std::optional<NodeSide> primal_only_target;
};

struct SearchStats {
    int phases = 0;
    int primal = 0;
    int dual = 0;
};

struct SearchOutcome {
    enum class Kind { AugmentingPath, Rearranged, Infeasible } kind = Kind::Infeasible;
    AugPath path;
    SearchStats stats;
};

class SearchForest {
public:
    SearchForest(const SideIndex& ix) : ix_(ix), in_(ix.count(), 0), parent_(ix.count(), -1) {}
    bool contains(const NodeSide& x) const { return in_[ix_.id(x)]; }
    void add_root(const NodeSide& x) { in_[ix_.id(x)] = 1; }
    void add_child(const NodeSide& parent, const NodeSide& child) {
        in_[ix_.id(child)] = 1;
        parent_[ix_.id(child)] = ix_.id(parent);
    }
    std::optional<NodeSide> parent(const NodeSide& x) const {
        int p = parent_[ix_.id(x)];
        if (p < 0) return std::nullopt;
        return ix_.side(p);
    }
    // Root-to-x path.
    AugPath path_to(const NodeSide& x) const;
    const SideIndex& index() const { return ix_; }

private:
    SideIndex ix_;
    std::vector<char> in_;
    std::vector<int> parent_;
};

inline constexpr std::int64_t kInfinity = INT64_MAX;

std::int64_t dual_step_epsilon(const Instance& inst, const SearchForest& f, const Labeling& v, const PotentialState& ps);
void apply_dual_update(const SearchForest& f, PotentialState& ps, std::int64_t eps);

SearchOutcome search(const Instance& inst, MatchingState& s, Labeling& v, PotentialState& ps,
                     const SearchOptions& opt = {});

}  // namespace degdet
