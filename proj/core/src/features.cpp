#include "myo/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "myo/errors.hpp"

namespace myo {

FeatureIndexMap FeatureIndexMap::enumerate(int n_channels) {
    if (n_channels < 1) {
        throw invalid_argument_error("enumerate_features: need at least one channel");
    }
    FeatureIndexMap map;
    map.n_channels_ = n_channels;
    map.entries_.reserve(n_channels + n_channels * (n_channels - 1) / 2);
    for (int i = 0; i < n_channels; ++i) {
        map.entries_.push_back({i, -1});
    }
    for (int i = 0; i < n_channels; ++i) {
        for (int j = i + 1; j < n_channels; ++j) {
            map.entries_.push_back({i, j});
        }
    }
    return map;
}

int FeatureIndexMap::index_of(const FeatureDescriptor& d) const {
    const int n = n_channels_;
    if (d.single_ended()) {
        if (d.i < 0 || d.i >= n) {
            throw invalid_argument_error("FeatureIndexMap: channel out of range");
        }
        return d.i;
    }
    if (d.i < 0 || d.j <= d.i || d.j >= n) {
        throw invalid_argument_error("FeatureIndexMap: bad differential pair");
    }
    // pairs (r, *) for r < i come first, then (i, i+1..j)
    const int before = d.i * (n - 1) - d.i * (d.i - 1) / 2;
    return n + before + (d.j - d.i - 1);
}

FeatureIndexMap enumerate_features(int n_channels) {
    return FeatureIndexMap::enumerate(n_channels);
}

Eigen::VectorXd compute_mav(const Eigen::MatrixXd& window, const FeatureIndexMap& map) {
    if (window.rows() == 0) {
        throw sequencing_error("compute_mav: empty window");
    }
    if (window.cols() != map.channels()) {
        throw invalid_argument_error("compute_mav: window has wrong channel count");
    }
    MavAccumulator acc(map);
    std::vector<double> row(map.channels());
    for (Eigen::Index r = 0; r < window.rows(); ++r) {
        for (Eigen::Index c = 0; c < window.cols(); ++c) row[c] = window(r, c);
        acc.add_sample(row);
    }
    Eigen::VectorXd out(map.size());
    acc.finish(std::span<double>(out.data(), out.size()));
    return out;
}

MavAccumulator::MavAccumulator(const FeatureIndexMap& map)
    : map_(&map), sums_(map.size(), 0.0) {}

void MavAccumulator::add_sample(std::span<const double> samples) {
    const auto& entries = map_->entries();
    const int n = map_->channels();
    double* sums = sums_.data();
    const double* x = samples.data();
    // single-ended block, then (i, j) pairs in canonical order
    for (int i = 0; i < n; ++i) {
        sums[i] += std::abs(x[i]);
    }
    int idx = n;
    for (std::size_t e = static_cast<std::size_t>(n); e < entries.size(); ++e, ++idx) {
        sums[idx] += std::abs(x[entries[e].i] - x[entries[e].j]);
    }
    ++count_;
}

void MavAccumulator::finish(std::span<double> out) {
    if (count_ == 0) {
        throw sequencing_error("MavAccumulator: no samples in window");
    }
    const double inv = 1.0 / count_;
    for (std::size_t f = 0; f < sums_.size(); ++f) {
        out[f] = sums_[f] * inv;
    }
    reset();
}

void MavAccumulator::reset() {
    std::fill(sums_.begin(), sums_.end(), 0.0);
    count_ = 0;
}

TickScheduler::TickScheduler(int fs_hz, int feature_rate_hz) : fs_(fs_hz), rate_(feature_rate_hz) {
    if (fs_hz <= 0 || feature_rate_hz <= 0 || feature_rate_hz > fs_hz) {
        throw invalid_argument_error("TickScheduler: need 0 < rate <= fs");
    }
    next_boundary_ = boundary(0, fs_, rate_);
}

bool TickScheduler::add_sample() {
    ++samples_;
    if (samples_ < next_boundary_) {
        return false;
    }
    closed_window_ = static_cast<int>(next_boundary_ - prev_boundary_);
    prev_boundary_ = next_boundary_;
    ++tick_;
    next_boundary_ = boundary(tick_, fs_, rate_);
    return true;
}

void TickScheduler::reset() {
    samples_ = 0;
    tick_ = 0;
    prev_boundary_ = 0;
    next_boundary_ = boundary(0, fs_, rate_);
    closed_window_ = 0;
}

BoxcarSmoother::BoxcarSmoother(int width_frames, int dim)
    : width_(width_frames), dim_(dim), ring_(static_cast<std::size_t>(width_frames) * dim, 0.0) {
    if (width_frames < 1 || dim < 1) {
        throw invalid_argument_error("BoxcarSmoother: width and dim must be >= 1");
    }
}

void BoxcarSmoother::update(std::span<double> values) {
    double* slot = ring_.data() + static_cast<std::size_t>(head_) * dim_;
    std::copy(values.begin(), values.end(), slot);
    head_ = (head_ + 1) % width_;
    filled_ = std::min(filled_ + 1, width_);

    // mean over the filled slots, recomputed each tick (9 x dim adds)
    const double inv = 1.0 / filled_;
    for (int d = 0; d < dim_; ++d) {
        double sum = 0.0;
        for (int w = 0; w < filled_; ++w) {
            sum += ring_[static_cast<std::size_t>(w) * dim_ + d];
        }
        values[d] = sum * inv;
    }
}

void BoxcarSmoother::reset() {
    std::fill(ring_.begin(), ring_.end(), 0.0);
    filled_ = 0;
    head_ = 0;
}

BaselineProfile estimate_baseline(const Eigen::MatrixXd& rest_frames) {
    if (rest_frames.rows() == 0) {
        throw invalid_argument_error("estimate_baseline: no rest frames");
    }
    BaselineProfile profile;
    profile.means = rest_frames.colwise().mean();
    profile.n_frames = static_cast<int>(rest_frames.rows());
    return profile;
}

Eigen::VectorXd subtract_baseline(const Eigen::VectorXd& frame, const BaselineProfile& profile) {
    if (frame.size() != profile.means.size()) {
        throw invalid_argument_error("subtract_baseline: dimension mismatch");
    }
    return frame - profile.means;
}

FeaturePipeline::FeaturePipeline(const FeatureIndexMap& map, int fs_hz, int feature_rate_hz,
                                 int boxcar_width, int warmup_samples)
    : map_(&map),
      scheduler_(fs_hz, feature_rate_hz),
      mav_(map),
      boxcar_(boxcar_width, map.size()),
      latest_(map.size(), 0.0) {
    // first tick whose window starts at or after the warm-up boundary
    std::uint64_t k = 0;
    while (k * static_cast<std::uint64_t>(fs_hz) / feature_rate_hz <
           static_cast<std::uint64_t>(warmup_samples)) {
        ++k;
    }
    warmup_ticks_ = k;
}

std::optional<std::uint64_t> FeaturePipeline::push_sample(std::span<const double> samples) {
    mav_.add_sample(samples);
    if (!scheduler_.add_sample()) {
        return std::nullopt;
    }
    const std::uint64_t tick = scheduler_.closed_tick();
    mav_.finish(latest_);
    if (tick < warmup_ticks_) {
        return std::nullopt;  // settling frame, discarded
    }
    boxcar_.update(latest_);
    return tick;
}

void FeaturePipeline::reset() {
    scheduler_.reset();
    mav_.reset();
    boxcar_.reset();
    std::fill(latest_.begin(), latest_.end(), 0.0);
}

}  // namespace myo
