#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace drivewatch {

inline constexpr int kNumChannels = 14;
inline constexpr double kSampleRateHz = 128.0;

// 14-channel consumer headset montage. Channel order is canonical for the
// whole pipeline: every sample matrix, feature vector and pair index uses
// this order.
struct ChannelLayout {
  std::array<std::string, kNumChannels> names;
  // (x, y) in the unit head disk (azimuthal-equidistant projection,
  // nose at +y, right ear at +x, disk radius 1).
  std::array<std::pair<double, double>, kNumChannels> positions;

  // Frozen default montage: AF3 AF4 F3 F4 F7 F8 FC5 FC6 P7 P8 T7 T8 O1 O2,
  // positions projected from idealized 10-20 spherical placements.
  static const ChannelLayout& standard();

  // Index of a channel name, -1 if unknown.
  int index_of(const std::string& name) const;

  // Throws ValidationError unless the layout holds exactly the 14
  // canonical names in canonical order, all positions inside the unit
  // disk and pairwise distinct.
  void validate() const;
};

// Canonical unordered channel pairs (i < j), row-major over the canonical
// order; size C(14,2) = 91. Pair k maps to (pair_first[k], pair_second[k]).
struct ChannelPairs {
  std::vector<int> first;
  std::vector<int> second;
  static const ChannelPairs& canonical();
  static constexpr int kCount = kNumChannels * (kNumChannels - 1) / 2;
};

}  // namespace drivewatch
