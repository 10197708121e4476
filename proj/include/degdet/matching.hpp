#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/plane.hpp"

namespace degdet {

inline constexpr int kPlus = 0;
inline constexpr int kMinus = 1;
inline int opp(int sign) { return sign ^ 1; }
inline char sign_char(int sign) { return sign == kPlus ? '+' : '-'; }

struct NodeRef {
    bool col = false;
    int idx = 0;
    friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

struct NodeSide {
    bool col = false;
    int idx = 0;
    int sign = kPlus;
    NodeRef node() const { return {col, idx}; }
    NodeSide flipped() const { return {col, idx, opp(sign)}; }
    std::string str() const;
    friend auto operator<=>(const NodeSide&, const NodeSide&) = default;
};

struct SignedEdge {
    EdgeId id;
    int sign = kPlus;
    friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

// Each node holds at most one edge per sign, which encodes (Deg) and the proper coloring.
class SignedMatching {
public:
    SignedMatching() = default;
    SignedMatching(int mu, int nu);

    int mu() const { return static_cast<int>(row_.size()); }
    int nu() const { return static_cast<int>(col_.size()); }
    void add(int alpha, int beta, int sign);
    void remove(int alpha, int beta);
    bool contains(int alpha, int beta) const { return sign_of(alpha, beta).has_value(); }
    std::optional<int> sign_of(int alpha, int beta) const;
    // Partner across the sign-σ edge at the node, or -1.
    int partner(NodeRef n, int sign) const { return n.col ? col_[n.idx][sign] : row_[n.idx][sign]; }
    int degree(NodeRef n) const { return (partner(n, kPlus) >= 0) + (partner(n, kMinus) >= 0); }
    std::vector<SignedEdge> edges() const;
    std::size_t size() const;

    friend bool operator==(const SignedMatching&, const SignedMatching&) = default;

private:
    std::vector<std::array<int, 2>> row_, col_;
};

struct Labeling {
    std::vector<std::array<Line, 2>> u, v;

    static Labeling canonical(const Field& f, int mu, int nu);
    const Line& at(const NodeSide& s) const { return s.col ? v[s.idx][s.sign] : u[s.idx][s.sign]; }
    Line& at(const NodeSide& s) { return s.col ? v[s.idx][s.sign] : u[s.idx][s.sign]; }
    friend bool operator==(const Labeling&, const Labeling&) = default;
};

struct MatchingState {
    SignedMatching m;
    std::vector<int> i_row, i_col;  // I-partner or -1

    MatchingState() = default;
    MatchingState(int mu, int nu) : m(mu, nu), i_row(mu, -1), i_col(nu, -1) {}
    bool in_i(int alpha, int beta) const { return i_row[alpha] == beta; }
    void add_i(int alpha, int beta);
    void remove_i(int alpha, int beta);
    std::size_t i_size() const;
    std::size_t size() const { return m.size() + i_size(); }
    friend bool operator==(const MatchingState&, const MatchingState&) = default;
};

// A component of M \ I (or a single I-edge) listed as a walk. Paths start at an end node.
struct ComponentWalk {
    std::vector<NodeRef> nodes;
    std::vector<int> signs;  // signs[i] is the sign of the edge nodes[i]--nodes[i+1 mod n]
    bool cycle = false;
    std::size_t edge_count() const { return signs.size(); }
    bool contains(NodeRef n) const;
};

ComponentWalk component_of(const SignedMatching& m, NodeRef start);
EdgeId edge_between(NodeRef a, NodeRef b);

SignedMatching two_color(const std::vector<EdgeId>& edges, int mu, int nu);
bool check_cycle_condition(const Instance& inst, const SignedMatching& m);

std::optional<Labeling> derive_valid_labeling(const Instance& inst, const SignedMatching& m,
                                              const std::map<NodeSide, Line>& seeds = {});
bool verify_valid_labeling(const Instance& inst, const SignedMatching& m, const Labeling& v);
std::optional<std::string> explain_valid_labeling(const Instance& inst, const SignedMatching& m, const Labeling& v);

bool is_matched(const MatchingState& s, const NodeSide& side);
std::vector<NodeSide> matched_spaces(const MatchingState& s);
std::int64_t weight(const Instance& inst, const MatchingState& s);

// (Deg), (Cycle), isolation and rank of I, and validity of the labeling.
std::optional<std::string> explain_matching_state(const Instance& inst, const MatchingState& s, const Labeling& v);

}  // namespace degdet
