#pragma once

#include <span>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace myo {

/// Trained Kalman filter matrices mapping D-dimensional kinematics to
/// k-dimensional feature observations. Immutable after training and safe
/// to share across decoding sessions.
struct KalmanModel {
    Eigen::MatrixXd A;   // D x D state transition
    Eigen::MatrixXd W;   // D x D process-noise covariance
    Eigen::MatrixXd H;   // k x D observation matrix
    Eigen::MatrixXd Q;   // k x k observation-noise covariance
    Eigen::MatrixXd P0;  // D x D initial state covariance
    bool ridge_rescued = false;  // normal equations were rank-deficient

    // reserved post-hoc output shaping, default off (identity behavior)
    Eigen::VectorXd output_gain;      // per-DOF multiplier, empty = 1.0
    Eigen::VectorXd output_deadband;  // per-DOF dead zone, empty = 0.0

    int dofs() const { return static_cast<int>(A.rows()); }
    int obs_dim() const { return static_cast<int>(H.rows()); }
};

/// Posterior mean and covariance of one decoding session.
struct DecodeState {
    Eigen::VectorXd x;  // D
    Eigen::MatrixXd P;  // D x D, symmetric PSD
};

/// Least-squares fit of (A, W, H, Q) from paired kinematics X (T x D) and
/// selection-reduced features Z (T x k); P0 = W.
///
/// A minimizes sum ||x_{t+1} - A x_t||^2 over the T-1 transition pairs and
/// H minimizes sum ||z_t - H x_t||^2 over all T rows; W and Q are the
/// residual covariances. Rank-deficient normal equations are re-solved with
/// a trace-scaled ridge (1e-6 * tr(Sxx)/D) and flagged on the model.
KalmanModel train_kalman(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z);

/// Streaming decoder with a preallocated workspace: step() performs one
/// predict/update with no heap allocation (Joseph-form covariance update).
///
/// Per-session state; one instance per stream. The model itself may be
/// shared between instances.
class KalmanDecoder {
public:
    explicit KalmanDecoder(const KalmanModel& model);

    /// Start a session: x = 0, P = P0.
    void reset();

    /// One predict/update with observation z (length k). Returns the
    /// unclamped posterior mean. Throws numeric_error if the innovation
    /// covariance is not invertible, data_error on non-finite input.
    const Eigen::VectorXd& step(std::span<const double> z);

    /// Posterior mean clamped to [-1, 1] (with the reserved gain/dead-band
    /// shaping applied, when the model enables it) for downstream consumers.
    void decoded_output(std::span<double> out) const;

    const DecodeState& state() const { return state_; }
    DecodeState& mutable_state() { return state_; }
    const KalmanModel& model() const { return *model_; }

private:
    const KalmanModel* model_;
    DecodeState state_;
    // workspace (fixed sizes after construction)
    Eigen::VectorXd x_prior_, innovation_, z_;
    Eigen::MatrixXd AP_, P_prior_, HP_, S_, Kt_, IKH_, tmp_dd_, tmp_dk_;
    Eigen::LDLT<Eigen::MatrixXd> ldlt_;
};

/// Fold a decoder over a feature-row stream (T x k) from the rest state;
/// returns the T x D clamped trajectory.
Eigen::MatrixXd decode_session(const KalmanModel& model, const Eigen::MatrixXd& Z);

}  // namespace myo
