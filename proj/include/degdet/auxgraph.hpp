#pragma once

#include <map>
#include <string>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/matching.hpp"
#include "degdet/potential.hpp"

namespace degdet {

struct SideIndex {
    int mu = 0, nu = 0;
    int count() const { return 2 * (mu + nu); }
    int id(const NodeSide& s) const { return s.col ? 2 * mu + 2 * s.idx + s.sign : 2 * s.idx + s.sign; }
    NodeSide side(int id) const {
        if (id < 2 * mu) return {false, id / 2, id % 2};
        id -= 2 * mu;
        return {true, id / 2, id % 2};
    }
};

// Pairing bits A(U^s, V^t) per block, refreshed per node when spaces change.
class PairingTable {
public:
    PairingTable() = default;
    PairingTable(const Instance& inst, const Labeling& v);
    bool get(int alpha, int beta, int s, int t) const {
        return bits_[static_cast<std::size_t>(alpha) * nu_ + beta] >> (2 * s + t) & 1;
    }
    void refresh(const Instance& inst, const Labeling& v, NodeRef n);

private:
    void compute(const Instance& inst, const Labeling& v, int alpha, int beta);
    int nu_ = 0;
    std::vector<unsigned char> bits_;
};

bool aux_edge(const Instance& inst, const Labeling& v, const PotentialState& ps, int alpha, int s, int beta, int t);

enum class Tightness { Single, Double };

struct AuxEdge {
    NodeSide row, col;
    friend auto operator<=>(const AuxEdge&, const AuxEdge&) = default;
};

struct AuxGraph {
    std::vector<AuxEdge> edges;
    std::map<EdgeId, Tightness> m_tags;
    bool has(const NodeSide& row, const NodeSide& col) const;
};

AuxGraph build_aux(const Instance& inst, const MatchingState& s, const Labeling& v, const PotentialState& ps);
std::vector<NodeSide> unmatched_sides(const MatchingState& s);
// Component of `start` in the aux graph restricted to M, in breadth-first order.
std::vector<NodeSide> tight_component(const Instance& inst, const MatchingState& s, const Labeling& v,
                                      const PotentialState& ps, const NodeSide& start);

struct SourceTarget {
    SideIndex index;
    std::vector<char> source, target;
    bool in_source(const NodeSide& x) const { return source[index.id(x)]; }
    bool in_target(const NodeSide& x) const { return target[index.id(x)]; }
    int source_col_count() const;
    int source_row_count() const;
};

SourceTarget source_target_sets(const Instance& inst, const MatchingState& s, const Labeling& v,
                                const PotentialState& ps);

std::string aux_dot(const Instance& inst, const MatchingState& s, const Labeling& v, const PotentialState& ps);

}  // namespace degdet
