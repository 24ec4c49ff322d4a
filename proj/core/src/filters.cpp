#include "myo/filters.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "myo/errors.hpp"

namespace myo {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_common(double cutoff_hz, double fs_hz) {
    if (fs_hz <= 0.0) {
        throw invalid_argument_error("filter design: fs_hz must be positive");
    }
    if (cutoff_hz <= 0.0) {
        throw invalid_argument_error("filter design: cutoff must be positive");
    }
    if (cutoff_hz >= fs_hz / 2.0) {
        throw invalid_argument_error("filter design: cutoff " + std::to_string(cutoff_hz) +
                                     " Hz is at or above Nyquist (fs = " +
                                     std::to_string(fs_hz) + " Hz)");
    }
}

void check_sections_stable(const std::vector<BiquadCoeffs>& sections) {
    for (const auto& s : sections) {
        if (!s.stable()) {
            throw numeric_error("filter design produced an unstable section");
        }
    }
}

}  // namespace

FilterCascade::FilterCascade(std::vector<BiquadCoeffs> sections, int channels, double fs_hz)
    : sections_(std::move(sections)), channels_(channels), fs_hz_(fs_hz) {
    if (channels <= 0) {
        throw invalid_argument_error("FilterCascade: channel count must be positive");
    }
    check_sections_stable(sections_);
    state_.assign(static_cast<std::size_t>(channels_) * sections_.size() * 2, 0.0);
}

void FilterCascade::append(const FilterCascade& other) {
    if (other.channels_ != channels_ || other.fs_hz_ != fs_hz_) {
        throw invalid_argument_error("FilterCascade::append: incompatible cascade");
    }
    sections_.insert(sections_.end(), other.sections_.begin(), other.sections_.end());
    state_.assign(static_cast<std::size_t>(channels_) * sections_.size() * 2, 0.0);
    last_t_ = -1;
}

void FilterCascade::process_frame(std::uint64_t t, std::span<const double> in,
                                  std::span<double> out) {
    if (static_cast<int>(in.size()) != channels_ || static_cast<int>(out.size()) != channels_) {
        throw invalid_argument_error("process_frame: frame size does not match channel count");
    }
    if (static_cast<std::int64_t>(t) <= last_t_) {
        throw sequencing_error("process_frame: sample index " + std::to_string(t) +
                               " is not strictly increasing");
    }
    last_t_ = static_cast<std::int64_t>(t);

    const int ns = static_cast<int>(sections_.size());
    for (int c = 0; c < channels_; ++c) {
        double x = in[c];
        if (!std::isfinite(x)) {
            throw data_error("process_frame: non-finite sample on channel " + std::to_string(c));
        }
        double* st = state_.data() + static_cast<std::size_t>(c) * ns * 2;
        for (int s = 0; s < ns; ++s, st += 2) {
            const BiquadCoeffs& q = sections_[s];
            // DF2-transposed
            const double y = q.b0 * x + st[0];
            st[0] = q.b1 * x - q.a1 * y + st[1];
            st[1] = q.b2 * x - q.a2 * y;
            x = y;
        }
        out[c] = x;
    }
}

FilteredFrame FilterCascade::process(const RawFrame& frame) {
    FilteredFrame out;
    out.t = frame.t;
    process_frame(frame.t, frame.samples, out.samples);
    return out;
}

void FilterCascade::reset() {
    state_.assign(state_.size(), 0.0);
    last_t_ = -1;
}

double FilterCascade::magnitude_at(double freq_hz) const {
    const std::complex<double> e1 = std::polar(1.0, -2.0 * kPi * freq_hz / fs_hz_);
    const std::complex<double> e2 = e1 * e1;
    double mag = 1.0;
    for (const auto& s : sections_) {
        const std::complex<double> num = s.b0 + s.b1 * e1 + s.b2 * e2;
        const std::complex<double> den = 1.0 + s.a1 * e1 + s.a2 * e2;
        mag *= std::abs(num) / std::abs(den);
    }
    return mag;
}

FilterCascade design_butterworth(const FilterSpec& spec, int channels) {
    if (spec.kind != FilterKind::highpass && spec.kind != FilterKind::lowpass) {
        throw invalid_argument_error("design_butterworth: kind must be highpass or lowpass");
    }
    if (spec.order <= 0 || spec.order % 2 != 0 || spec.order > 6) {
        throw invalid_argument_error("design_butterworth: order must be 2, 4 or 6, got " +
                                     std::to_string(spec.order));
    }
    check_common(spec.cutoff_hz, spec.fs_hz);

    // Prewarped bilinear constant: the analog prototype (cutoff 1 rad/s)
    // lands its -3 dB point exactly at cutoff_hz after the transform.
    const double K = 1.0 / std::tan(kPi * spec.cutoff_hz / spec.fs_hz);
    const double K2 = K * K;
    const int n = spec.order;

    std::vector<BiquadCoeffs> sections;
    sections.reserve(n / 2);
    for (int k = 0; k < n / 2; ++k) {
        // prototype pole pair: s^2 + alpha s + 1
        const double alpha = 2.0 * std::sin((2.0 * k + 1.0) * kPi / (2.0 * n));
        const double d = K2 + alpha * K + 1.0;
        BiquadCoeffs s;
        if (spec.kind == FilterKind::lowpass) {
            s.b0 = 1.0 / d;
            s.b1 = 2.0 / d;
            s.b2 = 1.0 / d;
        } else {
            s.b0 = K2 / d;
            s.b1 = -2.0 * K2 / d;
            s.b2 = K2 / d;
        }
        s.a1 = (2.0 - 2.0 * K2) / d;
        s.a2 = (K2 - alpha * K + 1.0) / d;
        sections.push_back(s);
    }
    return FilterCascade(std::move(sections), channels, spec.fs_hz);
}

FilterCascade design_notch(double center_hz, double q, double fs_hz, int channels) {
    if (q <= 0.0) {
        throw invalid_argument_error("design_notch: q must be positive");
    }
    check_common(center_hz, fs_hz);

    const double w0 = 2.0 * kPi * center_hz / fs_hz;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double c = std::cos(w0);
    const double a0 = 1.0 + alpha;

    BiquadCoeffs s;
    s.b0 = 1.0 / a0;
    s.b1 = -2.0 * c / a0;
    s.b2 = 1.0 / a0;
    s.a1 = -2.0 * c / a0;
    s.a2 = (1.0 - alpha) / a0;
    return FilterCascade({s}, channels, fs_hz);
}

FilterCascade make_emg_cascade(double fs_hz, int channels, double notch_q) {
    FilterCascade chain = design_butterworth(
        {FilterKind::highpass, 6, 15.0, 0.0, fs_hz}, channels);
    chain.append(design_butterworth({FilterKind::lowpass, 2, 375.0, 0.0, fs_hz}, channels));
    chain.append(design_notch(60.0, notch_q, fs_hz, channels));
    chain.append(design_notch(120.0, notch_q, fs_hz, channels));
    chain.append(design_notch(180.0, notch_q, fs_hz, channels));
    return chain;
}

double butterworth_analog_magnitude(FilterKind kind, int order, double cutoff_hz,
                                    double freq_hz) {
    const double ratio = (kind == FilterKind::lowpass) ? freq_hz / cutoff_hz
                                                       : cutoff_hz / freq_hz;
    return 1.0 / std::sqrt(1.0 + std::pow(ratio, 2.0 * order));
}

}  // namespace myo
