#pragma once

#include <string>
#include <vector>

#include "drivewatch/session.hpp"

namespace drivewatch {

// Configuration of the synthetic session generator. class_separation scales
// every label-dependent effect; 0 produces label-independent data.
struct SynthConfig {
  int n_subjects = 12;
  int trials_per_subject = 15;
  Task task = Task::kAttention;
  double class_separation = 1.0;
  uint64_t seed = 1;
  // Trial durations drawn uniformly from [duration_min_s, duration_max_s]
  // and rounded to 0.1 s. The hazard task forces 2.0 s.
  double duration_min_s = 14.0;
  double duration_max_s = 105.0;

  void validate() const;
};

// Per-trial generative state the class signal was injected through, written
// alongside the dataset. Lets a calibration oracle (e.g. a logistic fit)
// measure how separable the injected signal is before the pipeline runs.
struct TrialLatent {
  std::string trial_id;
  int label = 0;
  double log_alpha_amp = 0.0;    // occipital alpha amplitude (log scale)
  double log_coupling = 0.0;     // frontal shared-source gain (log scale)
  double eyebrow_offset = 0.0;   // eyebrow y-offset / face size, trial mean
  double alpha_slope = 0.0;      // hazard: within-trial log-envelope slope
  double eyebrow_slope = 0.0;    // hazard: within-trial eyebrow drift
};

struct SynthDataset {
  SessionManifest manifest;
  std::vector<TrialLatent> latents;
};

// Generates EEG CSVs, landmark CSVs, latents.csv and manifest.json under
// out_dir. Deterministic: the same config writes byte-identical files.
SynthDataset synth_dataset(const SynthConfig& cfg, const std::string& out_dir);

// In-memory variants used by the round-trip tests and the bindings.
EegTrial synth_eeg_trial(const SynthConfig& cfg, int subject_idx, int trial_idx);
LandmarkTrack synth_landmark_track(const SynthConfig& cfg, int subject_idx,
                                   int trial_idx);

}  // namespace drivewatch
