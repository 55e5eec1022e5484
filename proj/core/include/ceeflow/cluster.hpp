#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ceeflow {

struct Merge {
    int node_a = 0;  // node ids: leaves are 0..n-1, merge t creates node n+t
    int node_b = 0;  // node_a < node_b
    double height = 0;
    int size = 0;  // leaves in the merged cluster
};

struct ClusterTree {
    int n_leaves = 0;
    std::vector<Merge> merges;  // n_leaves - 1 entries, heights non-decreasing
};

/// Agglomerative clustering with the Ward criterion: the merge height is the
/// increase in total within-cluster (mass-weighted) sum of squares,
/// m_a m_b / (m_a + m_b) * |centroid_a - centroid_b|^2, maintained with the
/// Lance-Williams recurrence. Ties break on the smallest (node_a, node_b).
/// Rows of `points` are observations; `weights` default to 1.
ClusterTree hca_ward(const Eigen::MatrixXd& points,
                     const std::optional<Eigen::VectorXd>& weights = std::nullopt);

/// Partition into k clusters by undoing the last k-1 merges. Labels are
/// canonical: clusters numbered 0..k-1 in order of their smallest member.
std::vector<int> cut_tree(const ClusterTree& tree, int k);

}  // namespace ceeflow
