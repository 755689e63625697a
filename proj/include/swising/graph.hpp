#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "swising/rng.hpp"

namespace swising {

using Vertex = std::int32_t;

struct Edge {
    Vertex u;  // smaller endpoint
    Vertex v;  // larger endpoint
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Parameters of the stochastic partitioned graph G(n, [alpha_i], [p_ij]):
// n vertices split into partitions of fractions alpha_i, with each cross-pair
// (u in V_i, v in V_j) present independently with probability p_ij.
struct GraphSpec {
    std::int64_t n = 0;
    std::vector<double> alphas;               // fractions in (0,1], summing to 1
    std::vector<std::vector<double>> probs;   // symmetric, entries in [0,1]

    void validate() const;  // throws std::invalid_argument naming the offending field

    // floor(alpha_i * n), remainder distributed by largest fractional part
    std::vector<std::int64_t> partition_sizes() const;
};

// Immutable vertex-partitioned graph with a canonical (lexicographically
// sorted, deduplicated) edge list. Partition i occupies the contiguous id
// range [partition_begin(i), partition_begin(i+1)). Safe to share across
// threads after construction.
class PartitionedGraph {
public:
    PartitionedGraph(std::vector<std::int64_t> partition_sizes, std::vector<Edge> edges);
    PartitionedGraph(PartitionedGraph&& other) noexcept;
    PartitionedGraph(const PartitionedGraph&) = delete;
    PartitionedGraph& operator=(const PartitionedGraph&) = delete;
    PartitionedGraph& operator=(PartitionedGraph&&) = delete;
    ~PartitionedGraph();

    std::int64_t num_vertices() const { return num_vertices_; }
    std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
    int num_partitions() const { return static_cast<int>(partition_sizes_.size()); }
    const std::vector<std::int64_t>& partition_sizes() const { return partition_sizes_; }
    std::int64_t partition_begin(int i) const { return partition_begin_[i]; }
    int partition_of(Vertex v) const;
    const std::vector<Edge>& edges() const { return edges_; }

    // CSR adjacency, built lazily on first use (kept off the huge dense
    // graphs that only ever run Swendsen-Wang steps).
    struct Adjacency {
        std::vector<std::int64_t> offsets;     // size n+1
        std::vector<Vertex> neighbor;          // size 2|E|
        std::vector<std::int64_t> edge_index;  // size 2|E|
    };
    const Adjacency& adjacency() const;

    std::int64_t degree(Vertex v) const {
        const auto& adj = adjacency();
        return adj.offsets[v + 1] - adj.offsets[v];
    }

private:
    std::int64_t num_vertices_ = 0;
    std::vector<std::int64_t> partition_sizes_;
    std::vector<std::int64_t> partition_begin_;  // prefix sums, size r+1
    std::vector<Edge> edges_;
    // lazily built cache; atomic double-checked so reads stay lock-free
    mutable std::mutex adjacency_mutex_;
    mutable std::atomic<const Adjacency*> adjacency_{nullptr};
};

// Union-find with union by size and path compression. reset() makes the
// buffers reusable across percolation steps without reallocating.
class UnionFind {
public:
    void reset(std::int64_t n);
    Vertex find(Vertex x);
    void unite(Vertex a, Vertex b);
    std::int64_t num_sets() const { return num_sets_; }

    // label[v] = smallest vertex in v's set (the canonical component id)
    void canonical_labels(std::vector<Vertex>& out);

private:
    std::vector<Vertex> parent_;
    std::vector<Vertex> size_;
    std::vector<Vertex> min_of_root_;
    std::int64_t num_sets_ = 0;
};

// Samples G(n, [alpha_i], [p_ij]). Deterministic given the seed; expected
// O(#edges) time via geometric skipping over each block's pair-index space.
PartitionedGraph gen_partitioned(const GraphSpec& spec, std::uint64_t seed);

// Complete bipartite graph with partition sizes (n, m).
PartitionedGraph complete_bipartite(std::int64_t n, std::int64_t m);

// Connected-component labeling of (V, edges); label = smallest vertex in the
// component.
std::vector<Vertex> components(std::int64_t num_vertices, std::span<const Edge> edges);

// Number of edges with exactly one endpoint in the subset.
std::int64_t cut_size(const PartitionedGraph& g, const std::vector<bool>& in_subset);

// Edge-list text format: optional "#partitions i0 i1 ..." header, "#" comment
// lines, then one "u v" pair per line. Duplicates are dropped, gappy vertex
// ids are remapped densely (one warning per remapping), self-loops rejected.
PartitionedGraph load_edge_list(const std::string& path,
                                std::vector<std::string>* warnings = nullptr);

std::string serialize_edge_list(const PartitionedGraph& g);
void save_edge_list(const PartitionedGraph& g, const std::string& path);

}  // namespace swising
