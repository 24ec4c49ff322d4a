#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

namespace myo {

inline constexpr int kNumChannels = 32;
inline constexpr int kSampleRateHz = 1000;
inline constexpr int kFeatureRateHz = 30;
inline constexpr int kNumFeatures = 528;   // 32 single-ended + C(32,2) differential
inline constexpr int kDefaultSelectionK = 48;
inline constexpr int kWarmupSamples = 500;  // first 500 ms excluded from features

/// One 1 kHz time step of 32 channel samples, in microvolts.
struct RawFrame {
    std::uint64_t t = 0;
    std::array<double, kNumChannels> samples{};
};

/// Same layout as RawFrame; produced by the filter cascade.
struct FilteredFrame {
    std::uint64_t t = 0;
    std::array<double, kNumChannels> samples{};
};

/// 528 smoothed MAV features at one 30 Hz tick.
struct FeatureFrame {
    std::uint64_t k = 0;
    Eigen::VectorXd values;  // length kNumFeatures
};

/// Time series of DOF positions in [-1, 1] at 30 Hz.
/// Row t = frame t, column d = degree of freedom d.
struct Trajectory {
    Eigen::MatrixXd x;  // T x D
    int frames() const { return static_cast<int>(x.rows()); }
    int dofs() const { return static_cast<int>(x.cols()); }
};

}  // namespace myo
