#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "myo/frames.hpp"

namespace myo {

/// One feature channel: a single electrode (j < 0) or the difference of
/// two electrodes i < j.
struct FeatureDescriptor {
    int i = 0;
    int j = -1;
    bool single_ended() const { return j < 0; }
    bool operator==(const FeatureDescriptor&) const = default;
};

/// Canonical ordering of the n + n(n-1)/2 feature channels:
/// entries 0..n-1 are SingleEnded(0..n-1), followed by Differential(i, j)
/// in lexicographic (i, j) order. For 32 electrodes this is 528 features.
class FeatureIndexMap {
public:
    static FeatureIndexMap enumerate(int n_channels);

    int size() const { return static_cast<int>(entries_.size()); }
    int channels() const { return n_channels_; }
    const FeatureDescriptor& descriptor(int index) const { return entries_[index]; }
    int index_of(const FeatureDescriptor& d) const;
    const std::vector<FeatureDescriptor>& entries() const { return entries_; }

private:
    std::vector<FeatureDescriptor> entries_;
    int n_channels_ = 0;
};

/// Convenience alias for the spec's enumerate_features operation.
FeatureIndexMap enumerate_features(int n_channels);

/// Mean absolute value over a window of filtered samples.
/// `window` holds one row per sample (n_channels columns).
/// SingleEnded(i) -> mean |x_i|, Differential(i, j) -> mean |x_i - x_j|.
Eigen::VectorXd compute_mav(const Eigen::MatrixXd& window, const FeatureIndexMap& map);

/// Incremental MAV over one tick window; add_sample is allocation-free.
class MavAccumulator {
public:
    explicit MavAccumulator(const FeatureIndexMap& map);

    void add_sample(std::span<const double> samples);
    /// Mean over the accumulated samples, written to `out` (map.size()).
    /// Throws sequencing_error if no samples were added.
    void finish(std::span<double> out);
    void reset();
    int count() const { return count_; }

private:
    const FeatureIndexMap* map_;
    std::vector<double> sums_;
    int count_ = 0;
};

/// 30 Hz tick boundaries from a 1 kHz stream by phase accumulation:
/// tick k closes after sample floor((k+1) * fs / rate), giving windows of
/// alternating 33/34 samples that partition the stream exactly.
class TickScheduler {
public:
    TickScheduler(int fs_hz = kSampleRateHz, int feature_rate_hz = kFeatureRateHz);

    /// Count one sample; returns true when that sample closes a tick.
    bool add_sample();
    /// Size of the window just closed (valid after add_sample() returned true).
    int closed_window_size() const { return closed_window_; }
    /// Index of the tick just closed.
    std::uint64_t closed_tick() const { return tick_ - 1; }
    std::uint64_t samples_seen() const { return samples_; }
    void reset();

    /// Boundary sample index after tick k: floor((k+1) * fs / rate).
    static std::uint64_t boundary(std::uint64_t k, int fs_hz, int rate_hz) {
        return (k + 1) * static_cast<std::uint64_t>(fs_hz) / static_cast<std::uint64_t>(rate_hz);
    }

private:
    int fs_;
    int rate_;
    std::uint64_t samples_ = 0;
    std::uint64_t tick_ = 0;
    std::uint64_t next_boundary_;
    std::uint64_t prev_boundary_ = 0;
    int closed_window_ = 0;
};

/// Trailing moving average over the last `width` frames; during warm-up the
/// mean runs over the frames seen so far (no zero padding bias).
class BoxcarSmoother {
public:
    BoxcarSmoother(int width_frames, int dim);

    /// Smooth in place: `values` is replaced by the boxcar output.
    void update(std::span<double> values);
    void reset();
    int width() const { return width_; }

private:
    int width_;
    int dim_;
    int filled_ = 0;
    int head_ = 0;
    std::vector<double> ring_;  // width x dim
};

/// Per-feature rest-activity means, estimated from labeled rest frames.
struct BaselineProfile {
    Eigen::VectorXd means;
    int n_frames = 0;
};

/// Arithmetic mean of the given rest frames (rows). Throws on empty input.
BaselineProfile estimate_baseline(const Eigen::MatrixXd& rest_frames);

/// frame - profile.means; values may go negative (no clamping).
Eigen::VectorXd subtract_baseline(const Eigen::VectorXd& frame, const BaselineProfile& profile);

/// Streaming feature stage: filtered samples in, smoothed 528-feature frames
/// out at 30 Hz. Frames whose window overlaps the first `warmup_samples`
/// filter-settling samples are computed and discarded; the smoother starts
/// fresh on the first retained frame.
///
/// Holds per-session state; one instance per stream.
class FeaturePipeline {
public:
    FeaturePipeline(const FeatureIndexMap& map, int fs_hz = kSampleRateHz,
                    int feature_rate_hz = kFeatureRateHz,
                    int boxcar_width = 9, int warmup_samples = kWarmupSamples);

    /// Feed one filtered sample frame. Returns the closed tick's absolute
    /// index when a post-warm-up feature frame is ready, nullopt otherwise.
    /// The frame itself is in latest() until the next tick closes.
    std::optional<std::uint64_t> push_sample(std::span<const double> samples);

    std::span<const double> latest() const { return latest_; }
    /// Absolute tick index of the first frame the pipeline emits.
    std::uint64_t first_emitted_tick() const { return warmup_ticks_; }
    void reset();

private:
    const FeatureIndexMap* map_;
    TickScheduler scheduler_;
    MavAccumulator mav_;
    BoxcarSmoother boxcar_;
    std::vector<double> latest_;
    std::uint64_t warmup_ticks_;
};

}  // namespace myo
