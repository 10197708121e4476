#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "degdet/generate.hpp"
#include "degdet/instance.hpp"
#include "degdet/sequence.hpp"

namespace ref {

// Fixed corpora; index i always yields the same instance.
degdet::GenParams oracle_corpus_params(int i);           // mu, nu in 1..4, d in [-10, 10]
degdet::GenParams wide_weight_corpus_params(int i);      // same shape, d in [-1e6, 1e6]
degdet::GenParams dense_rank2_params(int n, int i);      // n x n, every block rank-2
degdet::GenParams mixed_corpus_params(int i, std::int64_t dmax);  // density, rank-1 share and entries vary with i

struct WeightedEdge {
    int row = 0, col = 0;
    std::int64_t w = 0;
};

struct WeightedGraph {
    int rows = 0, cols = 0;
    std::vector<WeightedEdge> edges;
};

WeightedGraph random_graph(std::uint64_t seed, int max_side);

// best[k] = maximum weight of a k-edge matching, nullopt if none exists.
// Successive shortest paths with Bellman-Ford on the residual graph.
degdet::DeltaSeq hungarian_by_size(const WeightedGraph& g);

// Every edge becomes the block s*I2 with weight w; s is a seeded nonzero scalar.
degdet::Instance scalar_block_instance(const WeightedGraph& g, std::uint64_t seed);

}  // namespace ref
