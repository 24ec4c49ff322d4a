#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace myo {

/// Outcome of greedy forward selection. `order` holds the chosen feature
/// indices in pick order; `score_per_step[s]` is the cumulative fraction of
/// centered kinematic variance explained after pick s (non-decreasing).
struct SelectionResult {
    std::vector<int> order;
    std::vector<double> score_per_step;
    int k() const { return static_cast<int>(order.size()); }
};

/// Stepwise Gram-Schmidt greedy forward selection.
///
/// Columns of X are mean-centered and unit-normalized internally; at each
/// step the unselected feature whose component orthogonal to all previous
/// picks carries the largest residual kinematic sum of squares
/// (||R^T c||^2 / c^T c, summed over DOFs) is chosen, then the remaining
/// candidates and the residual are orthogonalized against it. Ties break
/// toward the lowest feature index; zero-variance columns are never picked.
///
/// X is T x F (features), Y is T x D (kinematics). Requires T > k, k <= F.
SelectionResult gram_schmidt_select(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int k);

/// Gather the selected features from a full-length frame, in pick order.
Eigen::VectorXd apply_selection(std::span<const double> frame, const SelectionResult& result);
Eigen::VectorXd apply_selection(const Eigen::VectorXd& frame, const SelectionResult& result);

/// Allocation-free gather for the streaming path.
void apply_selection_into(std::span<const double> frame, const SelectionResult& result,
                          std::span<double> out);

}  // namespace myo
