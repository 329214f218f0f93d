#include "srg/exact_chain.hpp"

#include <algorithm>

#include "srg/errors.hpp"

namespace srg::oracle {

namespace {

// (size, is_unicycle), kept sorted for canonical keys
using State = std::vector<std::pair<std::uint32_t, bool>>;
using Distribution = std::map<std::vector<std::uint32_t>, rational>;

State canonical(State s) {
    std::sort(s.begin(), s.end());
    return s;
}

struct Enumerator {
    unsigned n;
    rational p;
    std::map<State, Distribution> memo;

    const Distribution& solve(const State& state) {
        auto it = memo.find(state);
        if (it != memo.end()) return it->second;

        Distribution dist;
        bool has_tree = false;
        for (const auto& [sz, uni] : state)
            if (!uni) has_tree = true;

        if (!has_tree) {
            std::vector<std::uint32_t> sizes;
            sizes.reserve(state.size());
            for (const auto& [sz, uni] : state) sizes.push_back(sz);
            std::sort(sizes.begin(), sizes.end());
            dist.emplace(std::move(sizes), rational(1));
            return memo.emplace(state, std::move(dist)).first->second;
        }

        // transitions and their rates (ordered vertex pairs at rate 1/(2N):
        // distinct trees merge at ij/N, a tree closes a cycle at k^2/(2N),
        // a tree glues onto a unicycle at p*ij/N)
        struct Transition {
            State next;
            rational rate;
        };
        std::vector<Transition> transitions;
        rational total(0);
        const auto m = state.size();
        for (std::size_t a = 0; a < m; ++a) {
            const auto [sa, ua] = state[a];
            if (!ua) {
                // intra-tree edge: the tree becomes a unicycle
                State next = state;
                next[a].second = true;
                const rational rate(static_cast<std::uint64_t>(sa) * sa, 2ULL * n);
                total += rate;
                transitions.push_back({canonical(std::move(next)), rate});
            }
            for (std::size_t b = a + 1; b < m; ++b) {
                const auto [sb, ub] = state[b];
                if (ua && ub) continue;  // both unicyclic: rejected
                rational rate(static_cast<std::uint64_t>(sa) * sb, n);
                if (ua || ub) rate *= p;  // tree-unicycle glue
                if (rate == 0) continue;
                State next;
                next.reserve(m - 1);
                for (std::size_t i = 0; i < m; ++i)
                    if (i != a && i != b) next.push_back(state[i]);
                next.emplace_back(sa + sb, ua || ub);
                total += rate;
                transitions.push_back({canonical(std::move(next)), rate});
            }
        }

        for (auto& [next, rate] : transitions) {
            const rational weight = rate / total;
            for (const auto& [jam, prob] : solve(next)) dist[jam] += weight * prob;
        }
        return memo.emplace(state, std::move(dist)).first->second;
    }
};

}  // namespace

rational JamDistribution::prob_u_jam(std::size_t m) const {
    rational sum(0);
    for (const auto& [sizes, prob] : states)
        if (sizes.size() == m) sum += prob;
    return sum;
}

rational JamDistribution::prob_of(const std::vector<std::uint32_t>& sizes) const {
    auto key = sizes;
    std::sort(key.begin(), key.end());
    const auto it = states.find(key);
    return it == states.end() ? rational(0) : it->second;
}

rational JamDistribution::total() const {
    rational sum(0);
    for (const auto& [sizes, prob] : states) sum += prob;
    return sum;
}

double JamDistribution::expected_u_jam() const {
    double e = 0.0;
    for (const auto& [sizes, prob] : states)
        e += static_cast<double>(sizes.size()) * static_cast<double>(prob);
    return e;
}

double JamDistribution::expected_largest() const {
    double e = 0.0;
    for (const auto& [sizes, prob] : states)
        e += static_cast<double>(sizes.back()) * static_cast<double>(prob);
    return e;
}

JamDistribution enumerate_exact(unsigned n, const rational& gluing_p) {
    if (n == 0 || n > 6) throw invalid_params("enumerate_exact: requires 1 <= N <= 6");
    if (gluing_p < 0) throw invalid_params("enumerate_exact: requires p >= 0");
    Enumerator e{n, gluing_p, {}};
    State initial(n, {1u, false});
    JamDistribution out;
    out.states = e.solve(initial);
    return out;
}

JamDistribution enumerate_exact(unsigned n, double gluing_p) {
    return enumerate_exact(n, rational(gluing_p));
}

}  // namespace srg::oracle
