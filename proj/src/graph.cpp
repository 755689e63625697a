#include "swising/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace swising {

void GraphSpec::validate() const {
    if (n < 1) throw std::invalid_argument("GraphSpec.n: must be >= 1");
    if (alphas.empty()) throw std::invalid_argument("GraphSpec.alphas: empty");
    double sum = 0.0;
    for (double a : alphas) {
        if (!(a > 0.0 && a <= 1.0))
            throw std::invalid_argument("GraphSpec.alphas: entries must lie in (0,1]");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("GraphSpec.alphas: must sum to 1 within 1e-12");
    const std::size_t r = alphas.size();
    if (probs.size() != r)
        throw std::invalid_argument("GraphSpec.probs: must be an r x r matrix");
    for (std::size_t i = 0; i < r; ++i) {
        if (probs[i].size() != r)
            throw std::invalid_argument("GraphSpec.probs: must be an r x r matrix");
        for (std::size_t j = 0; j < r; ++j) {
            if (!(probs[i][j] >= 0.0 && probs[i][j] <= 1.0))
                throw std::invalid_argument("GraphSpec.probs: entries must lie in [0,1]");
            if (probs[i][j] != probs[j][i])
                throw std::invalid_argument("GraphSpec.probs: must be symmetric");
        }
    }
}

std::vector<std::int64_t> GraphSpec::partition_sizes() const {
    const std::size_t r = alphas.size();
    std::vector<std::int64_t> sizes(r);
    std::vector<std::pair<double, std::size_t>> frac(r);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < r; ++i) {
        const double exact = alphas[i] * static_cast<double>(n);
        sizes[i] = static_cast<std::int64_t>(std::floor(exact));
        frac[i] = {exact - std::floor(exact), i};
        assigned += sizes[i];
    }
    // remainder to the largest fractional parts, ties by partition index
    std::stable_sort(frac.begin(), frac.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::int64_t leftover = n - assigned, i = 0; leftover > 0; --leftover, ++i)
        sizes[frac[i % r].second] += 1;
    return sizes;
}

PartitionedGraph::PartitionedGraph(std::vector<std::int64_t> partition_sizes,
                                   std::vector<Edge> edges)
    : partition_sizes_(std::move(partition_sizes)), edges_(std::move(edges)) {
    if (partition_sizes_.empty())
        throw std::invalid_argument("PartitionedGraph: no partitions");
    partition_begin_.resize(partition_sizes_.size() + 1, 0);
    for (std::size_t i = 0; i < partition_sizes_.size(); ++i) {
        if (partition_sizes_[i] < 0)
            throw std::invalid_argument("PartitionedGraph: negative partition size");
        partition_begin_[i + 1] = partition_begin_[i] + partition_sizes_[i];
    }
    num_vertices_ = partition_begin_.back();
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u == e.v) throw std::invalid_argument("PartitionedGraph: self-loop");
        if (e.u < 0 || e.v >= num_vertices_)
            throw std::invalid_argument("PartitionedGraph: edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("PartitionedGraph: duplicate edge");
}

PartitionedGraph::PartitionedGraph(PartitionedGraph&& other) noexcept
    : num_vertices_(other.num_vertices_),
      partition_sizes_(std::move(other.partition_sizes_)),
      partition_begin_(std::move(other.partition_begin_)),
      edges_(std::move(other.edges_)),
      adjacency_(other.adjacency_.exchange(nullptr)) {}

PartitionedGraph::~PartitionedGraph() { delete adjacency_.load(); }

int PartitionedGraph::partition_of(Vertex v) const {
    auto it = std::upper_bound(partition_begin_.begin(), partition_begin_.end(),
                               static_cast<std::int64_t>(v));
    return static_cast<int>(it - partition_begin_.begin()) - 1;
}

const PartitionedGraph::Adjacency& PartitionedGraph::adjacency() const {
    const Adjacency* cached = adjacency_.load(std::memory_order_acquire);
    if (cached) return *cached;
    std::lock_guard<std::mutex> lock(adjacency_mutex_);
    cached = adjacency_.load(std::memory_order_relaxed);
    if (cached) return *cached;

    auto adj = std::make_unique<Adjacency>();
    const std::int64_t n = num_vertices_;
    adj->offsets.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        adj->offsets[e.u + 1] += 1;
        adj->offsets[e.v + 1] += 1;
    }
    for (std::int64_t v = 0; v < n; ++v) adj->offsets[v + 1] += adj->offsets[v];
    adj->neighbor.resize(2 * edges_.size());
    adj->edge_index.resize(2 * edges_.size());
    std::vector<std::int64_t> cursor(adj->offsets.begin(), adj->offsets.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        adj->neighbor[cursor[e.u]] = e.v;
        adj->edge_index[cursor[e.u]++] = static_cast<std::int64_t>(i);
        adj->neighbor[cursor[e.v]] = e.u;
        adj->edge_index[cursor[e.v]++] = static_cast<std::int64_t>(i);
    }
    const Adjacency* built = adj.release();
    adjacency_.store(built, std::memory_order_release);
    return *built;
}

void UnionFind::reset(std::int64_t n) {
    parent_.resize(n);
    size_.assign(n, 1);
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
    num_sets_ = n;
}

Vertex UnionFind::find(Vertex x) {
    Vertex root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        Vertex next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

void UnionFind::unite(Vertex a, Vertex b) {
    Vertex ra = find(a);
    Vertex rb = find(b);
    if (ra == rb) return;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    num_sets_ -= 1;
}

void UnionFind::canonical_labels(std::vector<Vertex>& out) {
    const std::int64_t n = static_cast<std::int64_t>(parent_.size());
    out.resize(n);
    min_of_root_.assign(n, Vertex{-1});
    for (Vertex v = 0; v < n; ++v) {
        const Vertex r = find(v);
        if (min_of_root_[r] < 0) min_of_root_[r] = v;  // ascending scan: first hit is the min
        out[v] = min_of_root_[r];
    }
}

namespace {

// Decodes pair index t of the lexicographic enumeration (a,b), a<b, over s
// vertices: rows a = 0..s-2, row a holding s-1-a pairs.
std::pair<std::int64_t, std::int64_t> triangular_pair(std::int64_t t, std::int64_t s) {
    // row offset(a) = a*s - a*(a+1)/2
    auto offset = [s](std::int64_t a) { return a * s - a * (a + 1) / 2; };
    std::int64_t a = static_cast<std::int64_t>(
        std::floor(static_cast<double>(2 * s - 1) / 2.0 -
                   std::sqrt(std::max(0.0, (2.0 * s - 1) * (2.0 * s - 1) / 4.0 -
                                               2.0 * static_cast<double>(t)))));
    a = std::clamp<std::int64_t>(a, 0, s - 2);
    while (a > 0 && offset(a) > t) --a;
    while (a < s - 2 && offset(a + 1) <= t) ++a;
    const std::int64_t b = t - offset(a) + a + 1;
    return {a, b};
}

// Appends every index of [0, total) independently with probability p, by
// geometric jumps: exact per-index Bernoulli in expected O(p * total) draws.
template <typename Emit>
void bernoulli_subset(std::int64_t total, double p, Rng& rng, Emit&& emit) {
    if (total <= 0 || p <= 0.0) return;
    if (p >= 1.0) {
        for (std::int64_t t = 0; t < total; ++t) emit(t);
        return;
    }
    const double log1mp = std::log1p(-p);
    std::int64_t t = -1;
    while (true) {
        const double u = uniform01(rng);
        const double jump = std::floor(std::log1p(-u) / log1mp);
        if (jump >= static_cast<double>(total - t)) break;  // also catches inf
        t += 1 + static_cast<std::int64_t>(jump);
        if (t >= total) break;
        emit(t);
    }
}

}  // namespace

PartitionedGraph gen_partitioned(const GraphSpec& spec, std::uint64_t seed) {
    spec.validate();
    const auto sizes = spec.partition_sizes();
    const std::size_t r = sizes.size();
    std::vector<std::int64_t> begin(r + 1, 0);
    for (std::size_t i = 0; i < r; ++i) begin[i + 1] = begin[i] + sizes[i];

    Rng rng(seed);
    std::vector<Edge> edges;
    double expected = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        expected += spec.probs[i][i] * static_cast<double>(sizes[i]) * (sizes[i] - 1) / 2.0;
        for (std::size_t j = i + 1; j < r; ++j)
            expected += spec.probs[i][j] * static_cast<double>(sizes[i]) * sizes[j];
    }
    edges.reserve(static_cast<std::size_t>(expected * 1.2) + 64);

    // block order (0,0),(0,1),...,(r-1,r-1) fixes the RNG consumption order
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) {
            const double p = spec.probs[i][j];
            if (i == j) {
                const std::int64_t s = sizes[i];
                bernoulli_subset(s * (s - 1) / 2, p, rng, [&](std::int64_t t) {
                    auto [a, b] = triangular_pair(t, s);
                    edges.push_back({static_cast<Vertex>(begin[i] + a),
                                     static_cast<Vertex>(begin[i] + b)});
                });
            } else {
                bernoulli_subset(sizes[i] * sizes[j], p, rng, [&](std::int64_t t) {
                    edges.push_back({static_cast<Vertex>(begin[i] + t / sizes[j]),
                                     static_cast<Vertex>(begin[j] + t % sizes[j])});
                });
            }
        }
    }
    return PartitionedGraph(sizes, std::move(edges));
}

PartitionedGraph complete_bipartite(std::int64_t n, std::int64_t m) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("complete_bipartite: partition sizes must be >= 1");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n * m));
    for (std::int64_t u = 0; u < n; ++u)
        for (std::int64_t v = 0; v < m; ++v)
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(n + v)});
    return PartitionedGraph({n, m}, std::move(edges));
}

std::vector<Vertex> components(std::int64_t num_vertices, std::span<const Edge> edges) {
    UnionFind uf;
    uf.reset(num_vertices);
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices)
            throw std::invalid_argument("components: edge endpoint out of range");
        uf.unite(e.u, e.v);
    }
    std::vector<Vertex> labels;
    uf.canonical_labels(labels);
    return labels;
}

std::int64_t cut_size(const PartitionedGraph& g, const std::vector<bool>& in_subset) {
    if (static_cast<std::int64_t>(in_subset.size()) != g.num_vertices())
        throw std::invalid_argument("cut_size: subset mask size mismatch");
    std::int64_t cut = 0;
    for (const Edge& e : g.edges())
        cut += in_subset[e.u] != in_subset[e.v];
    return cut;
}

PartitionedGraph load_edge_list(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);

    std::vector<int> partition_labels;
    std::vector<std::pair<std::int64_t, std::int64_t>> raw_edges;
    std::string line;
    std::int64_t line_no = 0;
    bool have_partitions = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "partitions") {
                int p;
                while (ls >> p) partition_labels.push_back(p);
                have_partitions = true;
            }
            continue;  // other # lines are comments
        }
        std::istringstream ls(line);
        std::int64_t u, v;
        if (!(ls >> u >> v) || u < 0 || v < 0) {
            throw std::runtime_error("load_edge_list: malformed line " +
                                     std::to_string(line_no) + " in " + path);
        }
        std::string trailing;
        if (ls >> trailing)
            throw std::runtime_error("load_edge_list: malformed line " +
                                     std::to_string(line_no) + " in " + path);
        if (u == v)
            throw std::runtime_error("load_edge_list: self-loop at line " +
                                     std::to_string(line_no) + " in " + path);
        raw_edges.emplace_back(u, v);
    }

    std::int64_t n = 0;
    std::vector<Edge> edges;
    edges.reserve(raw_edges.size());
    if (have_partitions) {
        // the header defines the vertex set; ids are taken verbatim
        n = static_cast<std::int64_t>(partition_labels.size());
        for (auto [u, v] : raw_edges) {
            if (u >= n || v >= n)
                throw std::runtime_error("load_edge_list: edge id exceeds #partitions header");
            Vertex a = static_cast<Vertex>(u), b = static_cast<Vertex>(v);
            if (a > b) std::swap(a, b);
            edges.push_back({a, b});
        }
    } else {
        // dense remap of vertex ids; warn when ids have gaps
        std::vector<std::int64_t> ids;
        ids.reserve(raw_edges.size() * 2);
        for (auto [u, v] : raw_edges) {
            ids.push_back(u);
            ids.push_back(v);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        n = static_cast<std::int64_t>(ids.size());
        if (n > 0 && ids.back() != n - 1 && warnings)
            warnings->push_back("vertex ids have gaps; remapped densely to [0," +
                                std::to_string(n) + ")");
        std::unordered_map<std::int64_t, Vertex> remap;
        remap.reserve(ids.size());
        for (std::int64_t i = 0; i < n; ++i) remap[ids[i]] = static_cast<Vertex>(i);
        for (auto [u, v] : raw_edges) {
            Vertex a = remap[u], b = remap[v];
            if (a > b) std::swap(a, b);
            edges.push_back({a, b});
        }
    }
    std::sort(edges.begin(), edges.end());
    const auto dup = std::unique(edges.begin(), edges.end());
    if (dup != edges.end() && warnings)
        warnings->push_back(std::to_string(edges.end() - dup) + " duplicate edge(s) dropped");
    edges.erase(dup, edges.end());

    std::vector<std::int64_t> sizes;
    if (have_partitions) {
        // contiguous-range contract: labels must be sorted
        int max_label = 0;
        for (std::size_t v = 0; v + 1 < partition_labels.size(); ++v)
            if (partition_labels[v] > partition_labels[v + 1])
                throw std::runtime_error(
                    "load_edge_list: #partitions labels must be non-decreasing "
                    "(partitions occupy contiguous id ranges)");
        for (int p : partition_labels) max_label = std::max(max_label, p);
        sizes.assign(max_label + 1, 0);
        for (int p : partition_labels) sizes[p] += 1;
    } else {
        sizes.assign(1, n);
    }
    return PartitionedGraph(std::move(sizes), std::move(edges));
}

std::string serialize_edge_list(const PartitionedGraph& g) {
    std::ostringstream out;
    out << "#partitions";
    for (int i = 0; i < g.num_partitions(); ++i)
        for (std::int64_t c = 0; c < g.partition_sizes()[i]; ++c) out << ' ' << i;
    out << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

void save_edge_list(const PartitionedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_edge_list: cannot open " + path);
    out << serialize_edge_list(g);
}

}  // namespace swising
