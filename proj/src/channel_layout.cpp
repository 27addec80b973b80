#include "drivewatch/channel_layout.hpp"

#include <cmath>
#include <set>

#include "drivewatch/errors.hpp"

namespace drivewatch {

const ChannelLayout& ChannelLayout::standard() {
  // Positions derived once from the idealized 10-20 construction on a unit
  // sphere (outer ring at 72 deg polar, great-circle interpolation for the
  // 10-10 in-between sites) and projected azimuthal-equidistant with the
  // equator mapping to disk radius 1. Frozen; do not recompute at runtime.
  static const ChannelLayout layout{
      {"AF3", "AF4", "F3", "F4", "F7", "F8", "FC5", "FC6", "P7", "P8", "T7",
       "T8", "O1", "O2"},
      {{{-0.229341, +0.647567},
        {+0.229341, +0.647567},
        {-0.315760, +0.470632},
        {+0.315760, +0.470632},
        {-0.647214, +0.470228},
        {+0.647214, +0.470228},
        {-0.568282, +0.257520},
        {+0.568282, +0.257520},
        {-0.647214, -0.470228},
        {+0.647214, -0.470228},
        {-0.800000, +0.000000},
        {+0.800000, +0.000000},
        {-0.247214, -0.760845},
        {+0.247214, -0.760845}}}};
  return layout;
}

int ChannelLayout::index_of(const std::string& name) const {
  for (int i = 0; i < kNumChannels; ++i) {
    if (names[i] == name) return i;
  }
  return -1;
}

void ChannelLayout::validate() const {
  const auto& canon = standard().names;
  for (int i = 0; i < kNumChannels; ++i) {
    if (names[i] != canon[i]) {
      throw ValidationError("channel layout: expected '" + canon[i] +
                            "' at index " + std::to_string(i) + ", got '" +
                            names[i] + "'");
    }
  }
  std::set<std::pair<double, double>> seen;
  for (int i = 0; i < kNumChannels; ++i) {
    const auto [x, y] = positions[i];
    if (x * x + y * y > 1.0 + 1e-12) {
      throw ValidationError("channel layout: " + names[i] +
                            " lies outside the unit head disk");
    }
    if (!seen.insert(positions[i]).second) {
      throw ValidationError("channel layout: duplicate position for " +
                            names[i]);
    }
  }
}

const ChannelPairs& ChannelPairs::canonical() {
  static const ChannelPairs pairs = [] {
    ChannelPairs p;
    for (int i = 0; i < kNumChannels; ++i) {
      for (int j = i + 1; j < kNumChannels; ++j) {
        p.first.push_back(i);
        p.second.push_back(j);
      }
    }
    return p;
  }();
  return pairs;
}

}  // namespace drivewatch
