#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "drivewatch/channel_layout.hpp"

namespace drivewatch {

enum class Task { kAttention, kHazard };

std::string task_name(Task t);
Task task_from_name(const std::string& s);

// Binary class per task: attention low/high, hazard non-hazardous/hazardous.
// Class index 1 is the "positive" state (high attention / hazardous).
struct TrialLabel {
  Task task = Task::kAttention;
  int value = 0;

  std::string value_name() const;
  static TrialLabel parse(Task task, const std::string& value_name,
                          const std::string& trial_id);
};

// One trial of 14-channel EEG at 128 Hz, rows = samples, cols = channels in
// canonical order.
struct EegTrial {
  std::string subject_id;
  std::string trial_id;
  Eigen::MatrixXd samples;  // n_samples x 14, microvolts
  double sample_rate = kSampleRateHz;
  double duration_s = 0.0;

  int n_samples() const { return static_cast<int>(samples.rows()); }

  // Checks sample-rate, sample-count/duration agreement, finiteness and,
  // when min_duration_s > 0, the minimum duration. Loaded trials must be
  // at least 1 s; derived segments may be shorter.
  void validate(double min_duration_s = 0.0) const;
};

inline constexpr int kNumLandmarks = 49;

struct LandmarkFrame {
  double timestamp_s = 0.0;
  double box_x = 0.0, box_y = 0.0, box_w = 0.0, box_h = 0.0;  // pixels
  std::vector<std::pair<double, double>> points;              // 49 x (x, y)
  bool valid = true;
};

struct LandmarkTrack {
  std::string subject_id;
  std::string trial_id;
  std::vector<LandmarkFrame> frames;

  void validate() const;
  int valid_frame_count() const;
};

struct TrialEntry {
  std::string subject_id;
  std::string trial_id;
  std::string eeg_path;        // relative to manifest directory
  std::string landmarks_path;  // relative to manifest directory
  std::optional<std::string> embeddings_path;
  TrialLabel label;
  double duration_s = 0.0;
};

// Root dataset object. Loading validates everything eagerly, including the
// existence and parseability of every referenced file.
struct SessionManifest {
  Task task = Task::kAttention;
  std::vector<std::string> subjects;
  std::vector<TrialEntry> trials;
  std::optional<uint64_t> dataset_seed;
  std::string base_dir;  // directory of the manifest file, for path resolution

  std::string resolve(const std::string& rel_path) const;
  std::vector<const TrialEntry*> trials_of(const std::string& subject) const;

  // Structural checks that do not touch the filesystem.
  void validate_structure() const;
};

// Loads and fully validates a manifest: schema, invariants, and each
// referenced EEG / landmark file. Errors name the offending trial and field.
SessionManifest load_manifest(const std::string& path);

// Writes a manifest as deterministic JSON.
void save_manifest(const SessionManifest& manifest, const std::string& path);

// Loads one EEG trial, reordering columns into canonical channel order.
EegTrial load_eeg_trial(const SessionManifest& manifest,
                        const TrialEntry& entry);

// Loads one landmark track.
LandmarkTrack load_landmark_track(const SessionManifest& manifest,
                                  const TrialEntry& entry);

// Writes trial files in the formats load_* expects.
void save_eeg_csv(const EegTrial& trial, const std::string& path);
void save_landmark_csv(const LandmarkTrack& track, const std::string& path);

}  // namespace drivewatch
