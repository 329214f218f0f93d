#pragma once
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "srg/model.hpp"
#include "srg/rng.hpp"

namespace srg {

struct StopCondition {
    enum class Kind { AtTime, AtJam };
    Kind kind = Kind::AtTime;
    double time = 0.0;

    static StopCondition at_time(double t) { return {Kind::AtTime, t}; }
    static StopCondition at_jam() { return {Kind::AtJam, 0.0}; }
};

struct ProcessParams {
    std::uint32_t n_vertices = 1;
    double gluing_p = 1.0;
    Model model = Model::Simple;
    Sampler sampler = Sampler::Naive;
    std::uint64_t seed = 0;
    StopCondition stop = StopCondition::at_time(0.0);
    bool track_cycles = false;
    // Permit gluing_p > 1, interpreted as a rate relative to tree-tree
    // attempts. Requires the event-driven sampler.
    bool rate_mode = false;

    void validate() const;  // throws invalid_params
};

enum class EventKind {
    TreeTreeMerge,
    TreeCycleBirth,
    TreeUniGlue,
    RejectedUniUni,
    RejectedIntraUni,
    RejectedGlue,
    // Classical mode only: successes creating or extending complex components.
    ComplexMerge,
    ComplexCycle,
};

struct Event {
    EventKind kind{};
    double time = 0.0;
    std::uint32_t size_a = 0;  // merge: the two component sizes; cycle birth: component size
    std::uint32_t size_b = 0;
    std::uint32_t cycle_len = 0;  // cycle births, iff track_cycles

    bool operator==(const Event&) const = default;
};

using SizeHistogram = std::map<std::uint32_t, std::uint64_t>;

struct Snapshot {
    double t = 0.0;
    SizeHistogram tree_hist;   // component size -> count
    SizeHistogram uni_hist;
    SizeHistogram cycle_hist;  // cumulative cycle births by length (track_cycles)
    SizeHistogram ring_hist;   // unicycles whose cycle spans the whole component
    std::uint64_t n_trees = 0;
    std::uint64_t n_unicycles = 0;
    std::uint64_t n_complex = 0;
    std::uint64_t total_edges = 0;
    double s_empirical = 0.0;  // unicycle mass / N
    std::uint32_t largest_component = 0;
    std::int64_t largest_component_chi = 0;
    std::uint32_t largest_unicycle = 0;
};

struct JamReport {
    double t_jam = 0.0;
    std::uint64_t u_jam = 0;
    std::uint32_t largest_unicycle = 0;
    SizeHistogram uni_hist;
    SizeHistogram cycle_hist;
    std::uint64_t attempts_total = 0;
    std::uint64_t rejections_total = 0;
};

// Continuous-time evolution of one graph on N labeled vertices. Ordered
// vertex pairs, self-pairs included, each drawn at rate 1/(2N); repeated
// edges are allowed (multigraph). Single-threaded; owns its RNG.
class GraphState {
public:
    explicit GraphState(const ProcessParams& params);

    const ProcessParams& params() const { return params_; }
    double time() const { return t_; }
    std::uint32_t n_vertices() const { return n_; }
    std::uint64_t edge_count() const { return edges_; }
    std::uint64_t tree_mass() const { return tree_mass_; }
    std::uint64_t unicycle_mass() const { return uni_mass_; }
    std::uint64_t tree_count() const { return n_tree_comps_; }
    std::uint64_t unicycle_count() const { return n_uni_comps_; }
    std::uint64_t complex_count() const { return n_complex_comps_; }
    std::uint64_t attempts_total() const { return attempts_; }
    std::uint64_t rejections_total() const { return rejections_; }
    bool jammed() const { return params_.model == Model::Simple && n_tree_comps_ == 0; }

    // Aggregate success rate [m_T^2 + 2 p m_T m_U] / (2N) of the Simple
    // process; the event-driven waiting-time rate.
    double success_rate() const;

    // Naive sampler: advance time by Exp(N/2), draw an ordered pair,
    // classify. Rejections are events too.
    Event attempt();

    // Event-driven sampler (Simple only): advance by Exp(success_rate()),
    // then realize a success drawn from the aggregate classes. Identical in
    // law to attempt() restricted to successful events.
    Event advance_event();

    // Dispatch on params().sampler.
    Event step();

    // Time of the next event; drawn lazily and cached so that snapshot
    // boundaries do not perturb the event sequence.
    double peek_next_time();

    Snapshot run_to_time(double t_target);
    JamReport run_to_jam();
    Snapshot snapshot() const;

    // Classify the ordered pair (u, v) as the naive sampler would, without
    // advancing time. Exposed so tests can drive exact scenarios.
    Event apply_pair(std::uint32_t u, std::uint32_t v);

    // Length of the cycle an edge (u, v) inside a tree component would
    // close: tree-path distance + 1 (1 for u == v). Must be called before
    // the edge is inserted.
    std::uint32_t cycle_length(std::uint32_t u, std::uint32_t v);

    // Cycle core size of v's component, by peeling leaves of the adjacency
    // (track_cycles only). 0 for a tree.
    std::uint32_t recompute_cycle_length(std::uint32_t v) const;

    std::uint32_t find_root(std::uint32_t v) const;
    std::uint32_t component_size(std::uint32_t v) const;
    std::uint64_t component_edges(std::uint32_t v) const;
    std::int64_t component_chi(std::uint32_t v) const;
    // Length recorded at the component's cycle birth; 0 if none.
    std::uint32_t component_cycle_length(std::uint32_t v) const;

private:
    enum class Kind : std::uint8_t { Tree, Unicycle, Complex };

    Kind kind_of_root(std::uint32_t r) const;
    Event apply_tree_tree(std::uint32_t u, std::uint32_t v);
    Event apply_glue(std::uint32_t tree_vertex, std::uint32_t uni_vertex);
    std::uint32_t merge_roots(std::uint32_t ra, std::uint32_t rb);
    void record_edge(std::uint32_t u, std::uint32_t v);
    void move_component_to_unicycle_side(std::uint32_t root);
    std::uint32_t bfs_distance(std::uint32_t u, std::uint32_t v) const;

    ProcessParams params_;
    std::uint32_t n_;
    Rng rng_;
    double t_ = 0.0;
    double pending_time_ = 0.0;
    bool has_pending_ = false;
    double last_success_time_ = 0.0;

    std::uint64_t edges_ = 0;
    std::uint64_t attempts_ = 0;
    std::uint64_t rejections_ = 0;
    std::uint64_t n_tree_comps_ = 0;
    std::uint64_t n_uni_comps_ = 0;
    std::uint64_t n_complex_comps_ = 0;
    std::uint64_t tree_mass_ = 0;
    std::uint64_t uni_mass_ = 0;
    std::uint64_t complex_mass_ = 0;

    mutable std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;        // valid at roots
    std::vector<std::uint64_t> comp_edges_;  // valid at roots
    std::vector<std::uint32_t> cycle_len_;   // valid at roots; 0 = none

    // Simple mode: part_verts_[0..tree_mass_) are the tree vertices,
    // the rest unicycle vertices; part_pos_ is the inverse permutation.
    std::vector<std::uint32_t> part_verts_;
    std::vector<std::uint32_t> part_pos_;
    // Simple mode: intrusive singly-linked list of each component's
    // vertices (valid at roots), walked when a component changes kind.
    std::vector<std::uint32_t> next_vertex_;
    std::vector<std::uint32_t> list_head_;
    std::vector<std::uint32_t> list_tail_;

    std::vector<std::vector<std::uint32_t>> adj_;  // track_cycles only
    SizeHistogram cycle_births_;

    mutable std::vector<std::uint32_t> bfs_dist_;
    mutable std::vector<std::uint32_t> bfs_queue_;
};

}  // namespace srg
