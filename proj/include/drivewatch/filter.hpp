#pragma once

#include <Eigen/Dense>
#include <vector>

#include "drivewatch/session.hpp"

namespace drivewatch {

// Band-pass design. `order` counts the poles of the band-pass filter
// (twice the low-pass prototype order) and must be even.
struct FilterSpec {
  double low_hz = 4.0;
  double high_hz = 45.0;
  int order = 4;

  void validate(double sample_rate) const;
};

// One second-order section, direct form II transposed.
struct Biquad {
  double b0, b1, b2;  // numerator
  double a1, a2;      // denominator (a0 == 1)
};

// Butterworth band-pass as cascaded biquads, bilinear transform with
// frequency prewarping, unit gain at the geometric center frequency.
std::vector<Biquad> design_bandpass(const FilterSpec& spec, double sample_rate);

// Single forward pass with steady-state initial conditions scaled to the
// first input value.
std::vector<double> sos_filter(const std::vector<Biquad>& sos,
                               const std::vector<double>& x);

// Zero-phase (forward-backward) band-pass of one channel. Pads both ends
// with 3*order samples reflected odd about the endpoints before filtering.
std::vector<double> filtfilt_bandpass(const std::vector<Biquad>& sos, int order,
                                      const std::vector<double>& x);

// Applies the zero-phase band-pass to every channel independently.
// Throws if the trial is shorter than 6*order samples.
EegTrial bandpass_filter(const EegTrial& trial, const FilterSpec& spec);

// |H(f)| of the single forward pass; the zero-phase filter applies the
// square of this.
double bandpass_magnitude(const std::vector<Biquad>& sos, double freq_hz,
                          double sample_rate);

}  // namespace drivewatch
