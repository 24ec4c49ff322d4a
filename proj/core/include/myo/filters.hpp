#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "myo/frames.hpp"

namespace myo {

enum class FilterKind { highpass, lowpass, notch };

/// Design parameters for one filter in the cascade.
/// For Butterworth kinds, `order` must be even (2, 4 or 6) and `cutoff_hz`
/// is the -3 dB point. For notches, `cutoff_hz` is the center frequency and
/// `q` the quality factor; the section count is fixed at one.
struct FilterSpec {
    FilterKind kind = FilterKind::lowpass;
    int order = 2;
    double cutoff_hz = 0.0;
    double q = 0.0;       // notch only
    double fs_hz = static_cast<double>(kSampleRateHz);
};

/// Second-order section, normalized so a0 == 1.
struct BiquadCoeffs {
    double b0 = 0, b1 = 0, b2 = 0;
    double a1 = 0, a2 = 0;

    /// Both poles strictly inside the unit circle.
    bool stable() const { return std::abs(a2) < 1.0 && std::abs(a1) < 1.0 + a2; }
};

/// An ordered cascade of biquad sections with per-channel, per-section
/// state (direct form II transposed, two delay registers each).
///
/// An instance is single-session, single-stream: process_frame mutates
/// state and requires exclusive access. Distinct instances are independent.
class FilterCascade {
public:
    FilterCascade(std::vector<BiquadCoeffs> sections, int channels, double fs_hz);

    int channels() const { return channels_; }
    int num_sections() const { return static_cast<int>(sections_.size()); }
    double sample_rate_hz() const { return fs_hz_; }
    const std::vector<BiquadCoeffs>& sections() const { return sections_; }

    /// Append another cascade's sections (same fs, same channel count).
    void append(const FilterCascade& other);

    /// Filter one frame; `in` and `out` must have `channels()` elements and
    /// may alias. Frames must arrive with strictly increasing t.
    void process_frame(std::uint64_t t, std::span<const double> in, std::span<double> out);

    FilteredFrame process(const RawFrame& frame);

    /// Reset all delay registers to zero and forget stream position.
    void reset();

    /// Analytic cascade magnitude |H(e^{j 2 pi f / fs})|.
    double magnitude_at(double freq_hz) const;

private:
    std::vector<BiquadCoeffs> sections_;
    std::vector<double> state_;  // channels x sections x 2
    int channels_;
    double fs_hz_;
    std::int64_t last_t_ = -1;
};

/// Butterworth design via bilinear transform with frequency prewarping,
/// as a cascade of order/2 second-order sections. The digital -3 dB point
/// lands exactly on spec.cutoff_hz.
/// Throws invalid_argument_error for odd order or cutoff >= Nyquist.
FilterCascade design_butterworth(const FilterSpec& spec, int channels = kNumChannels);

/// Single second-order notch with unity gain at DC and Nyquist and a zero
/// pair on the unit circle at center_hz. Bandwidth ~ center_hz / q.
FilterCascade design_notch(double center_hz, double q, double fs_hz,
                           int channels = kNumChannels);

/// The paper's per-channel chain at 1 kHz: 6th-order high-pass Butterworth
/// at 15 Hz, 2nd-order low-pass at 375 Hz, then 60/120/180 Hz notches
/// (q = 35), in that fixed order.
FilterCascade make_emg_cascade(double fs_hz = kSampleRateHz, int channels = kNumChannels,
                               double notch_q = 35.0);

/// Magnitude of the ideal analog Butterworth response: for a lowpass,
/// 1/sqrt(1 + (f/fc)^(2n)); for a highpass, 1/sqrt(1 + (fc/f)^(2n)).
double butterworth_analog_magnitude(FilterKind kind, int order, double cutoff_hz,
                                    double freq_hz);

}  // namespace myo
