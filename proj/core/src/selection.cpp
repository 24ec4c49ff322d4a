#include "myo/selection.hpp"

#include <cmath>
#include <string>

#include "myo/errors.hpp"

namespace myo {

namespace {
// columns whose squared norm falls below this (relative to the unit columns
// they start as) are treated as spanned by the picks already made
constexpr double kDegenerateNormSq = 1e-12;
}  // namespace

SelectionResult gram_schmidt_select(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, int k) {
    const Eigen::Index T = X.rows();
    const Eigen::Index F = X.cols();
    if (k < 0 || k > F) {
        throw invalid_argument_error("gram_schmidt_select: k must be in [0, F]");
    }
    if (Y.rows() != T) {
        throw invalid_argument_error("gram_schmidt_select: X and Y row counts differ");
    }
    if (T <= k) {
        throw ill_posed_error("gram_schmidt_select: need more samples than picks (T > k)");
    }
    if (!X.allFinite() || !Y.allFinite()) {
        throw data_error("gram_schmidt_select: non-finite input");
    }

    SelectionResult result;
    if (k == 0) {
        return result;
    }

    // center and unit-normalize candidates; degenerate columns are excluded
    Eigen::MatrixXd C = X.rowwise() - X.colwise().mean();
    std::vector<bool> usable(F, true);
    for (Eigen::Index f = 0; f < F; ++f) {
        const double norm = C.col(f).norm();
        if (norm <= 0.0 || !std::isfinite(norm)) {
            usable[f] = false;
            C.col(f).setZero();
        } else {
            C.col(f) /= norm;
        }
    }

    Eigen::MatrixXd R = Y.rowwise() - Y.colwise().mean();
    const double total = R.squaredNorm();

    Eigen::MatrixXd picked_basis(T, k);  // orthonormal directions of the picks
    Eigen::VectorXd residual_ss(F);

    result.order.reserve(k);
    result.score_per_step.reserve(k);

    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_score = -1.0;
        for (Eigen::Index f = 0; f < F; ++f) {
            if (!usable[f]) continue;
            const double nsq = C.col(f).squaredNorm();
            if (nsq < kDegenerateNormSq) {
                usable[f] = false;  // numerically inside the picked span
                continue;
            }
            const double score = (C.col(f).transpose() * R).squaredNorm() / nsq;
            // strict > keeps the lowest index on exact ties
            if (score > best_score) {
                best_score = score;
                best = static_cast<int>(f);
            }
        }
        if (best < 0) {
            break;  // every remaining candidate is degenerate
        }

        Eigen::VectorXd u = C.col(best) / C.col(best).norm();
        picked_basis.col(step) = u;
        usable[best] = false;
        result.order.push_back(best);

        R.noalias() -= u * (u.transpose() * R);
        for (Eigen::Index f = 0; f < F; ++f) {
            if (usable[f]) {
                C.col(f).noalias() -= u * u.dot(C.col(f));
            }
        }

        // periodic full re-orthogonalization bounds Gram-Schmidt drift
        if ((step + 1) % 8 == 0 && step + 1 < k) {
            const auto U = picked_basis.leftCols(step + 1);
            for (Eigen::Index f = 0; f < F; ++f) {
                if (usable[f]) {
                    C.col(f).noalias() -= U * (U.transpose() * C.col(f));
                }
            }
            R.noalias() -= U * (U.transpose() * R);
        }

        const double explained = (total > 0.0) ? 1.0 - R.squaredNorm() / total : 1.0;
        result.score_per_step.push_back(explained);
    }
    return result;
}

Eigen::VectorXd apply_selection(std::span<const double> frame, const SelectionResult& result) {
    Eigen::VectorXd out(result.k());
    apply_selection_into(frame, result, std::span<double>(out.data(), out.size()));
    return out;
}

Eigen::VectorXd apply_selection(const Eigen::VectorXd& frame, const SelectionResult& result) {
    return apply_selection(std::span<const double>(frame.data(), frame.size()), result);
}

void apply_selection_into(std::span<const double> frame, const SelectionResult& result,
                          std::span<double> out) {
    if (out.size() != result.order.size()) {
        throw invalid_argument_error("apply_selection: output size mismatch");
    }
    for (std::size_t s = 0; s < result.order.size(); ++s) {
        const int idx = result.order[s];
        if (idx < 0 || static_cast<std::size_t>(idx) >= frame.size()) {
            throw data_error("apply_selection: feature index " + std::to_string(idx) +
                             " out of range for frame of length " +
                             std::to_string(frame.size()));
        }
        out[s] = frame[static_cast<std::size_t>(idx)];
    }
}

}  // namespace myo
