#include "srg/process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "srg/errors.hpp"

namespace srg {

namespace {
constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void ProcessParams::validate() const {
    if (n_vertices == 0) throw invalid_params("ProcessParams: n_vertices must be >= 1");
    if (!std::isfinite(gluing_p) || gluing_p < 0.0)
        throw invalid_params("ProcessParams: gluing_p must be finite and >= 0");
    if (gluing_p > 1.0 && !rate_mode)
        throw invalid_params("ProcessParams: gluing_p > 1 requires rate_mode");
    if (gluing_p > 1.0 && sampler == Sampler::Naive)
        throw invalid_params("ProcessParams: gluing_p > 1 requires the event-driven sampler");
    if (sampler == Sampler::EventDriven && model != Model::Simple)
        throw invalid_params("ProcessParams: event-driven sampler requires the Simple model");
    if (stop.kind == StopCondition::Kind::AtJam && model != Model::Simple)
        throw invalid_params("ProcessParams: the classical process never jams");
    if (stop.kind == StopCondition::Kind::AtTime &&
        (!std::isfinite(stop.time) || stop.time < 0.0))
        throw invalid_params("ProcessParams: stop time must be finite and >= 0");
}

GraphState::GraphState(const ProcessParams& params)
    : params_(params), n_(params.n_vertices), rng_(params.seed) {
    params_.validate();
    parent_.resize(n_);
    std::iota(parent_.begin(), parent_.end(), 0u);
    size_.assign(n_, 1u);
    comp_edges_.assign(n_, 0u);
    cycle_len_.assign(n_, 0u);
    n_tree_comps_ = n_;
    tree_mass_ = n_;
    if (params_.model == Model::Simple) {
        part_verts_.resize(n_);
        std::iota(part_verts_.begin(), part_verts_.end(), 0u);
        part_pos_ = part_verts_;
        next_vertex_.assign(n_, kUnvisited);
        list_head_.resize(n_);
        std::iota(list_head_.begin(), list_head_.end(), 0u);
        list_tail_ = list_head_;
    }
    if (params_.track_cycles) {
        adj_.resize(n_);
        bfs_dist_.assign(n_, kUnvisited);
    }
}

std::uint32_t GraphState::find_root(std::uint32_t v) const {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

std::uint32_t GraphState::component_size(std::uint32_t v) const { return size_[find_root(v)]; }
std::uint64_t GraphState::component_edges(std::uint32_t v) const { return comp_edges_[find_root(v)]; }

std::int64_t GraphState::component_chi(std::uint32_t v) const {
    const std::uint32_t r = find_root(v);
    return static_cast<std::int64_t>(size_[r]) - static_cast<std::int64_t>(comp_edges_[r]);
}

std::uint32_t GraphState::component_cycle_length(std::uint32_t v) const {
    return cycle_len_[find_root(v)];
}

GraphState::Kind GraphState::kind_of_root(std::uint32_t r) const {
    const auto chi = static_cast<std::int64_t>(size_[r]) - static_cast<std::int64_t>(comp_edges_[r]);
    if (chi == 1) return Kind::Tree;
    if (chi == 0) return Kind::Unicycle;
    return Kind::Complex;
}

double GraphState::success_rate() const {
    const double mt = static_cast<double>(tree_mass_);
    const double mu = static_cast<double>(uni_mass_);
    return (mt * mt + 2.0 * params_.gluing_p * mt * mu) / (2.0 * n_);
}

double GraphState::peek_next_time() {
    if (!has_pending_) {
        const double rate =
            params_.sampler == Sampler::Naive ? 0.5 * n_ : success_rate();
        pending_time_ = rate > 0.0 ? t_ + rng_.exponential(rate) : kInf;
        has_pending_ = true;
    }
    return pending_time_;
}

void GraphState::record_edge(std::uint32_t u, std::uint32_t v) {
    if (!params_.track_cycles) return;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
}

std::uint32_t GraphState::bfs_distance(std::uint32_t u, std::uint32_t v) const {
    if (u == v) return 0;
    bfs_queue_.clear();
    bfs_queue_.push_back(u);
    bfs_dist_[u] = 0;
    std::uint32_t found = kUnvisited;
    for (std::size_t head = 0; head < bfs_queue_.size() && found == kUnvisited; ++head) {
        const std::uint32_t x = bfs_queue_[head];
        for (const std::uint32_t y : adj_[x]) {
            if (bfs_dist_[y] != kUnvisited) continue;
            bfs_dist_[y] = bfs_dist_[x] + 1;
            if (y == v) {
                found = bfs_dist_[y];
                break;
            }
            bfs_queue_.push_back(y);
        }
    }
    const std::uint32_t d = found != kUnvisited ? found : bfs_dist_[v];
    for (const std::uint32_t x : bfs_queue_) bfs_dist_[x] = kUnvisited;
    bfs_dist_[v] = kUnvisited;
    if (d == kUnvisited) throw error("bfs_distance: vertices not connected");
    return d;
}

std::uint32_t GraphState::cycle_length(std::uint32_t u, std::uint32_t v) {
    if (!params_.track_cycles) throw tracking_disabled("cycle_length: track_cycles is off");
    const std::uint32_t ra = find_root(u);
    if (ra != find_root(v) || kind_of_root(ra) != Kind::Tree)
        throw not_in_same_tree("cycle_length: endpoints must share a tree component");
    if (u == v) return 1;
    return bfs_distance(u, v) + 1;
}

std::uint32_t GraphState::recompute_cycle_length(std::uint32_t v) const {
    if (!params_.track_cycles)
        throw tracking_disabled("recompute_cycle_length: track_cycles is off");
    // collect the component through its edges
    bfs_queue_.clear();
    bfs_queue_.push_back(v);
    bfs_dist_[v] = 0;
    for (std::size_t head = 0; head < bfs_queue_.size(); ++head) {
        for (const std::uint32_t y : adj_[bfs_queue_[head]]) {
            if (bfs_dist_[y] != kUnvisited) continue;
            bfs_dist_[y] = 0;
            bfs_queue_.push_back(y);
        }
    }
    std::vector<std::uint32_t> comp = bfs_queue_;
    for (const std::uint32_t x : comp) bfs_dist_[x] = kUnvisited;

    // peel leaves; what survives with degree >= 2 is the cycle core
    std::vector<std::uint32_t> deg(comp.size());
    std::vector<std::uint32_t>& local = bfs_dist_;  // reuse as vertex -> local index
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < comp.size(); ++i) deg[i] = static_cast<std::uint32_t>(adj_[comp[i]].size());
    std::vector<bool> removed(comp.size(), false);
    std::vector<std::uint32_t> stack;
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (deg[i] == 1) stack.push_back(static_cast<std::uint32_t>(i));
    while (!stack.empty()) {
        const std::uint32_t i = stack.back();
        stack.pop_back();
        removed[i] = true;
        for (const std::uint32_t y : adj_[comp[i]]) {
            const std::uint32_t j = local[y];
            if (removed[j]) continue;
            if (--deg[j] == 1) stack.push_back(j);
        }
    }
    std::uint32_t core = 0;
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (!removed[i] && deg[i] >= 2) ++core;
    for (const std::uint32_t x : comp) local[x] = kUnvisited;
    return core;
}

std::uint32_t GraphState::merge_roots(std::uint32_t ra, std::uint32_t rb) {
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    comp_edges_[ra] += comp_edges_[rb];
    if (cycle_len_[ra] == 0) cycle_len_[ra] = cycle_len_[rb];
    if (params_.model == Model::Simple) {
        next_vertex_[list_tail_[ra]] = list_head_[rb];
        list_tail_[ra] = list_tail_[rb];
    }
    return ra;
}

void GraphState::move_component_to_unicycle_side(std::uint32_t root) {
    // walk the component's vertex list, swap each vertex just inside the
    // unicycle region; each vertex changes kind once per run, so this is
    // O(N) amortized
    std::uint32_t v = list_head_[root];
    const std::uint32_t tail = list_tail_[root];
    while (true) {
        const std::uint32_t pos = part_pos_[v];
        const std::uint32_t last = static_cast<std::uint32_t>(tree_mass_) - 1;
        const std::uint32_t w = part_verts_[last];
        part_verts_[last] = v;
        part_verts_[pos] = w;
        part_pos_[v] = last;
        part_pos_[w] = pos;
        --tree_mass_;
        ++uni_mass_;
        if (v == tail) break;
        v = next_vertex_[v];
    }
}

Event GraphState::apply_tree_tree(std::uint32_t u, std::uint32_t v) {
    const std::uint32_t ra = find_root(u);
    const std::uint32_t rb = find_root(v);
    if (ra == rb) {
        const std::uint32_t csize = size_[ra];
        std::uint32_t ell = 0;
        if (params_.track_cycles) {
            ell = u == v ? 1 : bfs_distance(u, v) + 1;
            ++cycle_births_[ell];
        }
        record_edge(u, v);
        ++comp_edges_[ra];
        ++edges_;
        last_success_time_ = t_;
        cycle_len_[ra] = ell;
        --n_tree_comps_;
        ++n_uni_comps_;
        if (params_.model == Model::Simple) {
            move_component_to_unicycle_side(ra);
        } else {
            tree_mass_ -= csize;
            uni_mass_ += csize;
        }
        return {EventKind::TreeCycleBirth, t_, csize, 0, ell};
    }
    const std::uint32_t sa = size_[ra];
    const std::uint32_t sb = size_[rb];
    record_edge(u, v);
    const std::uint32_t r = merge_roots(ra, rb);
    ++comp_edges_[r];
    ++edges_;
    last_success_time_ = t_;
    --n_tree_comps_;
    return {EventKind::TreeTreeMerge, t_, sa, sb, 0};
}

Event GraphState::apply_glue(std::uint32_t tree_vertex, std::uint32_t uni_vertex) {
    const std::uint32_t rt = find_root(tree_vertex);
    const std::uint32_t ru = find_root(uni_vertex);
    const std::uint32_t st = size_[rt];
    const std::uint32_t su = size_[ru];
    if (params_.model == Model::Simple) {
        move_component_to_unicycle_side(rt);
    } else {
        tree_mass_ -= st;
        uni_mass_ += st;
    }
    record_edge(tree_vertex, uni_vertex);
    const std::uint32_t r = merge_roots(rt, ru);
    ++comp_edges_[r];
    ++edges_;
    last_success_time_ = t_;
    --n_tree_comps_;
    return {EventKind::TreeUniGlue, t_, st, su, 0};
}

Event GraphState::apply_pair(std::uint32_t u, std::uint32_t v) {
    ++attempts_;
    const std::uint32_t ra = find_root(u);
    const std::uint32_t rb = find_root(v);
    const Kind ka = kind_of_root(ra);
    const Kind kb = kind_of_root(rb);

    if (params_.model == Model::Simple) {
        if (ka == Kind::Tree && kb == Kind::Tree) return apply_tree_tree(u, v);
        if (ka != Kind::Tree && kb != Kind::Tree) {
            ++rejections_;
            return {ra == rb ? EventKind::RejectedIntraUni : EventKind::RejectedUniUni, t_,
                    size_[ra], size_[rb], 0};
        }
        const std::uint32_t tv = ka == Kind::Tree ? u : v;
        const std::uint32_t uv = ka == Kind::Tree ? v : u;
        if (rng_.bernoulli(params_.gluing_p)) return apply_glue(tv, uv);
        ++rejections_;
        return {EventKind::RejectedGlue, t_, component_size(tv), component_size(uv), 0};
    }

    // classical: every attempt succeeds
    if (ra == rb) {
        const std::uint32_t csize = size_[ra];
        if (ka == Kind::Tree) return apply_tree_tree(u, v);
        std::uint32_t ell = 0;
        if (params_.track_cycles) {
            ell = u == v ? 1 : bfs_distance(u, v) + 1;
            ++cycle_births_[ell];
        }
        record_edge(u, v);
        ++comp_edges_[ra];
        ++edges_;
        last_success_time_ = t_;
        if (ka == Kind::Unicycle) {
            --n_uni_comps_;
            ++n_complex_comps_;
            uni_mass_ -= csize;
            complex_mass_ += csize;
        }
        return {EventKind::ComplexCycle, t_, csize, 0, ell};
    }
    if (ka == Kind::Tree && kb == Kind::Tree) return apply_tree_tree(u, v);
    if ((ka == Kind::Tree && kb == Kind::Unicycle) || (ka == Kind::Unicycle && kb == Kind::Tree))
        return apply_glue(ka == Kind::Tree ? u : v, ka == Kind::Tree ? v : u);

    // merge creating or extending a complex component
    const std::uint32_t sa = size_[ra];
    const std::uint32_t sb = size_[rb];
    auto drop_kind = [&](Kind k, std::uint32_t sz) {
        switch (k) {
            case Kind::Tree: --n_tree_comps_; tree_mass_ -= sz; break;
            case Kind::Unicycle: --n_uni_comps_; uni_mass_ -= sz; break;
            case Kind::Complex: --n_complex_comps_; complex_mass_ -= sz; break;
        }
    };
    drop_kind(ka, sa);
    drop_kind(kb, sb);
    ++n_complex_comps_;
    complex_mass_ += sa + sb;
    record_edge(u, v);
    const std::uint32_t r = merge_roots(ra, rb);
    ++comp_edges_[r];
    ++edges_;
    last_success_time_ = t_;
    return {EventKind::ComplexMerge, t_, sa, sb, 0};
}

Event GraphState::attempt() {
    if (params_.model == Model::Simple && params_.stop.kind == StopCondition::Kind::AtJam &&
        jammed())
        throw jammed_error("attempt: state is already jammed");
    t_ = peek_next_time();
    has_pending_ = false;
    const auto u = static_cast<std::uint32_t>(rng_.uniform_below(n_));
    const auto v = static_cast<std::uint32_t>(rng_.uniform_below(n_));
    return apply_pair(u, v);
}

Event GraphState::advance_event() {
    if (params_.model != Model::Simple)
        throw not_applicable("advance_event: requires the Simple model");
    if (jammed()) throw jammed_error("advance_event: state is jammed");
    t_ = peek_next_time();
    has_pending_ = false;
    ++attempts_;
    const double mt = static_cast<double>(tree_mass_);
    const double mu = static_cast<double>(uni_mass_);
    const double w_tree = mt * mt;
    const double w_glue = 2.0 * params_.gluing_p * mt * mu;
    if (rng_.uniform() * (w_tree + w_glue) < w_tree) {
        const auto u = part_verts_[rng_.uniform_below(tree_mass_)];
        const auto v = part_verts_[rng_.uniform_below(tree_mass_)];
        return apply_tree_tree(u, v);
    }
    const auto u = part_verts_[rng_.uniform_below(tree_mass_)];
    const auto v = part_verts_[tree_mass_ + rng_.uniform_below(uni_mass_)];
    return apply_glue(u, v);
}

Event GraphState::step() {
    return params_.sampler == Sampler::Naive ? attempt() : advance_event();
}

Snapshot GraphState::run_to_time(double t_target) {
    if (!(t_target >= t_)) throw invalid_params("run_to_time: target before current time");
    while (true) {
        if (params_.model == Model::Simple && jammed()) {
            has_pending_ = false;
            break;
        }
        if (peek_next_time() > t_target) break;
        step();
    }
    t_ = t_target;
    return snapshot();
}

JamReport GraphState::run_to_jam() {
    if (params_.model != Model::Simple)
        throw not_applicable("run_to_jam: requires the Simple model");
    while (!jammed()) step();
    const Snapshot s = snapshot();
    JamReport r;
    r.t_jam = last_success_time_;
    r.u_jam = s.n_unicycles;
    r.largest_unicycle = s.largest_unicycle;
    r.uni_hist = s.uni_hist;
    r.cycle_hist = s.cycle_hist;
    r.attempts_total = attempts_;
    r.rejections_total = rejections_;
    return r;
}

Snapshot GraphState::snapshot() const {
    Snapshot s;
    s.t = t_;
    s.total_edges = edges_;
    s.n_trees = n_tree_comps_;
    s.n_unicycles = n_uni_comps_;
    s.n_complex = n_complex_comps_;
    s.s_empirical = static_cast<double>(uni_mass_) / static_cast<double>(n_);
    s.cycle_hist = cycle_births_;
    std::int64_t best_chi = 0;
    for (std::uint32_t v = 0; v < n_; ++v) {
        if (find_root(v) != v) continue;
        const std::uint32_t sz = size_[v];
        const auto chi = static_cast<std::int64_t>(sz) - static_cast<std::int64_t>(comp_edges_[v]);
        if (chi == 1) {
            ++s.tree_hist[sz];
        } else if (chi == 0) {
            ++s.uni_hist[sz];
            if (cycle_len_[v] == sz) ++s.ring_hist[sz];
            s.largest_unicycle = std::max(s.largest_unicycle, sz);
        }
        if (sz > s.largest_component) {
            s.largest_component = sz;
            best_chi = chi;
        }
    }
    s.largest_component_chi = best_chi;
    return s;
}

}  // namespace srg
