#include "ceeflow/cluster.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "ceeflow/errors.hpp"

namespace ceeflow {

ClusterTree hca_ward(const Eigen::MatrixXd& points, const std::optional<Eigen::VectorXd>& weights) {
    const Eigen::Index n = points.rows();
    if (n < 2)
        throw ValidationError("ward: need at least 2 points");
    if (!points.allFinite())
        throw ValidationError("ward: non-finite coordinates");

    Eigen::VectorXd mass = weights.value_or(Eigen::VectorXd::Ones(n));
    if (mass.size() != n)
        throw ValidationError("ward: one weight per point required");
    if ((mass.array() <= 0).any())
        throw ValidationError("ward: weights must be positive");

    struct Cluster {
        int node;
        int size;
        double mass;
    };
    std::vector<Cluster> active;
    for (Eigen::Index i = 0; i < n; ++i)
        active.push_back({static_cast<int>(i), 1, mass[i]});

    // pairwise Ward costs between active clusters, keyed by position
    const auto ward_init = [&](Eigen::Index i, Eigen::Index j) {
        const double mi = mass[i], mj = mass[j];
        return mi * mj / (mi + mj) * (points.row(i) - points.row(j)).squaredNorm();
    };
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) d[i][j] = d[j][i] = ward_init(i, j);

    ClusterTree tree;
    tree.n_leaves = static_cast<int>(n);
    int next_node = static_cast<int>(n);

    while (active.size() > 1) {
        // nearest pair; ties resolved by the smaller ordered (node_a, node_b)
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const double dij = d[i][j];
                auto key = std::minmax(active[i].node, active[j].node);
                auto best_key = std::minmax(active[bi].node, active[bj].node);
                if (dij < best || (dij == best && key < best_key)) {
                    best = dij;
                    bi = i;
                    bj = j;
                }
            }
        }

        const auto [node_a, node_b] = std::minmax(active[bi].node, active[bj].node);
        const double ma = active[bi].mass, mb = active[bj].mass;
        const int merged_size = active[bi].size + active[bj].size;
        tree.merges.push_back({node_a, node_b, best, merged_size});

        // Lance-Williams update for the Ward criterion with masses
        for (std::size_t c = 0; c < active.size(); ++c) {
            if (c == bi || c == bj) continue;
            const double mc = active[c].mass;
            const double updated =
                ((ma + mc) * d[bi][c] + (mb + mc) * d[bj][c] - mc * best) / (ma + mb + mc);
            d[bi][c] = d[c][bi] = updated;
        }
        active[bi] = {next_node++, merged_size, ma + mb};

        // drop cluster bj by swapping in the last active entry
        const std::size_t last = active.size() - 1;
        if (bj != last) {
            active[bj] = active[last];
            for (std::size_t c = 0; c < active.size(); ++c) {
                d[bj][c] = d[last][c];
                d[c][bj] = d[c][last];
            }
            d[bj][bj] = 0.0;
        }
        active.pop_back();
    }
    return tree;
}

std::vector<int> cut_tree(const ClusterTree& tree, int k) {
    const int n = tree.n_leaves;
    if (k < 1 || k > n)
        throw ValidationError("cut_tree: k must be in [1, " + std::to_string(n) + "]");

    // replay all but the last k-1 merges through a union-find over node ids
    std::vector<int> parent(n + tree.merges.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const int applied = n - k;
    for (int t = 0; t < applied; ++t) {
        const Merge& m = tree.merges[t];
        const int u = n + t;
        parent[root(m.node_a)] = u;
        parent[root(m.node_b)] = u;
    }

    // canonical labels: clusters ordered by smallest member index
    std::map<int, std::vector<int>> members;
    for (int i = 0; i < n; ++i) members[root(i)].push_back(i);
    std::vector<std::pair<int, int>> order;  // (smallest member, root)
    for (const auto& [r, ms] : members) order.emplace_back(ms.front(), r);
    std::sort(order.begin(), order.end());

    std::vector<int> labels(n, -1);
    for (std::size_t lab = 0; lab < order.size(); ++lab)
        for (int i : members[order[lab].second]) labels[i] = static_cast<int>(lab);
    return labels;
}

}  // namespace ceeflow
