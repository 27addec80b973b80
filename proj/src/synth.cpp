#include "drivewatch/synth.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "drivewatch/csv.hpp"
#include "drivewatch/errors.hpp"
#include "drivewatch/rng.hpp"

namespace fs = std::filesystem;

namespace drivewatch {

namespace {

constexpr double kPi = std::numbers::pi;

// Base amplitudes in microvolts.
constexpr double kNoiseSigma = 10.0;
constexpr double kAlphaAmp = 18.0;
constexpr double kThetaAmp = 4.0;
constexpr double kBetaAmp = 3.0;
constexpr double kCouplingAmp = 6.0;

// Per-channel source gains, canonical channel order
// (AF3 AF4 F3 F4 F7 F8 FC5 FC6 P7 P8 T7 T8 O1 O2).
constexpr double kAlphaGain[kNumChannels] = {0.10, 0.10, 0.10, 0.10, 0.10,
                                             0.10, 0.10, 0.10, 0.60, 0.60,
                                             0.25, 0.25, 1.00, 1.00};
constexpr double kCouplingGain[kNumChannels] = {1.0, 1.0, 1.0, 1.0, 0.7, 0.7,
                                                0.5, 0.5, 0.0, 0.0, 0.0, 0.0,
                                                0.0, 0.0};

// Label effect scales per unit of class_separation.
constexpr double kAlphaLogEffect = 0.35;
constexpr double kCouplingLogEffect = 0.30;
constexpr double kBrowEffect = 0.006;        // fraction of face size
constexpr double kHazardRampLo = -0.175;     // log-envelope ramp endpoints
constexpr double kHazardRampHi = 0.325;
constexpr double kHazardBrowDrift = 0.012;   // fraction of face size over 2 s

constexpr double kFaceFps = 10.0;

// Neutral 49-point face template, unit face frame, x right / y down.
// Index layout follows the 49-point localization scheme: 0-9 eyebrows,
// 10-13 nose bridge, 14-18 nose base, 19-30 eyes, 31-42 outer mouth,
// 43-48 inner mouth.
constexpr double kFaceTemplate[kNumLandmarks][2] = {
    {0.18, 0.310}, {0.24, 0.285}, {0.30, 0.275}, {0.36, 0.285}, {0.42, 0.310},
    {0.58, 0.310}, {0.64, 0.285}, {0.70, 0.275}, {0.76, 0.285}, {0.82, 0.310},
    {0.50, 0.380}, {0.50, 0.440}, {0.50, 0.500}, {0.50, 0.550},
    {0.40, 0.600}, {0.45, 0.620}, {0.50, 0.630}, {0.55, 0.620}, {0.60, 0.600},
    {0.22, 0.400}, {0.28, 0.370}, {0.34, 0.370}, {0.40, 0.400},
    {0.34, 0.430}, {0.28, 0.430},
    {0.60, 0.400}, {0.66, 0.370}, {0.72, 0.370}, {0.78, 0.400},
    {0.72, 0.430}, {0.66, 0.430},
    {0.32, 0.750}, {0.38, 0.720}, {0.44, 0.700}, {0.50, 0.710}, {0.56, 0.700},
    {0.62, 0.720}, {0.68, 0.750}, {0.62, 0.790}, {0.56, 0.810}, {0.50, 0.820},
    {0.44, 0.810}, {0.38, 0.790},
    {0.42, 0.740}, {0.50, 0.735}, {0.58, 0.740},
    {0.58, 0.765}, {0.50, 0.775}, {0.42, 0.765}};

struct SubjectParams {
  double alpha_freq;
  double amp_factor;
  double noise_factor;
  double coupling_factor;
  double face_scale;
  double brow_base;  // fraction of face size
};

SubjectParams subject_params(const SynthConfig& cfg, int s) {
  Rng rng(Rng::derive(cfg.seed, 1000 + static_cast<uint64_t>(s)));
  SubjectParams p;
  p.alpha_freq = rng.uniform(9.0, 11.5);
  p.amp_factor = rng.uniform(0.85, 1.20);
  p.noise_factor = rng.uniform(0.90, 1.10);
  p.coupling_factor = rng.uniform(0.90, 1.10);
  p.face_scale = rng.uniform(0.90, 1.10);
  p.brow_base = rng.uniform(-0.008, 0.008);
  return p;
}

struct TrialMeta {
  int label;          // 0/1, balanced by alternation
  double duration_s;  // rounded to 0.1 s
  // class-effect signs/strengths realized for this trial
  double alpha_class_log;     // additive log-amplitude term (attention)
  double coupling_class_log;  // additive log-gain term (attention)
  double brow_class_offset;   // fraction of face size (attention)
  bool ramp;                  // hazard: envelope ramps, brows drift
};

TrialMeta trial_meta(const SynthConfig& cfg, int s, int t) {
  TrialMeta m{};
  m.label = t % 2;
  const double sep = cfg.class_separation;
  if (cfg.task == Task::kHazard) {
    m.duration_s = 2.0;
    m.ramp = m.label == 1;
  } else {
    Rng rng(Rng::derive(cfg.seed, 2000000 + static_cast<uint64_t>(s) * 100000 +
                                      static_cast<uint64_t>(t)));
    const double d = rng.uniform(cfg.duration_min_s, cfg.duration_max_s);
    m.duration_s = std::round(d * 10.0) / 10.0;
    // low attention -> stronger alpha, weaker frontal coupling
    const double sign = m.label == 1 ? -1.0 : 1.0;
    m.alpha_class_log = sign * kAlphaLogEffect * sep;
    m.coupling_class_log = -sign * kCouplingLogEffect * sep;
    m.brow_class_offset = (m.label == 1 ? 1.0 : -1.0) * kBrowEffect * sep;
  }
  return m;
}

// Log of the alpha envelope at normalized trial position u in [0, 1].
double envelope_log(const TrialMeta& m, double sep, double u) {
  if (!m.ramp) return m.alpha_class_log;
  return sep * (kHazardRampLo + (kHazardRampHi - kHazardRampLo) * u);
}

double coupling_log(const TrialMeta& m, double sep, double u) {
  if (!m.ramp) return m.coupling_class_log;
  return sep * 0.7 * (kHazardRampLo + (kHazardRampHi - kHazardRampLo) * u);
}

double brow_offset(const TrialMeta& m, double sep, double brow_base, double u) {
  if (m.ramp) return brow_base + sep * kHazardBrowDrift * u;
  return brow_base + m.brow_class_offset;
}

std::string subject_id_of(int s) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "s%02d", s + 1);
  return buf;
}

std::string trial_id_of(int s, int t) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "s%02d_t%02d", s + 1, t);
  return buf;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_subjects < 2) throw ValidationError("synth: n_subjects must be >= 2");
  if (trials_per_subject < 1) {
    throw ValidationError("synth: trials_per_subject must be >= 1");
  }
  if (class_separation < 0.0) {
    throw ValidationError("synth: class_separation must be >= 0");
  }
  if (duration_min_s < 1.0 || duration_max_s < duration_min_s) {
    throw ValidationError("synth: bad duration range");
  }
}

EegTrial synth_eeg_trial(const SynthConfig& cfg, int s, int t) {
  cfg.validate();
  const auto sp = subject_params(cfg, s);
  const auto meta = trial_meta(cfg, s, t);
  const double sep = cfg.class_separation;
  Rng rng(Rng::derive(cfg.seed, 3000000 + static_cast<uint64_t>(s) * 100000 +
                                    static_cast<uint64_t>(t)));

  const int n = static_cast<int>(std::lround(meta.duration_s * kSampleRateHz));
  EegTrial trial;
  trial.subject_id = subject_id_of(s);
  trial.trial_id = trial_id_of(s, t);
  trial.duration_s = meta.duration_s;
  trial.samples.resize(n, kNumChannels);

  // Per-channel background oscillation parameters.
  double theta_freq[kNumChannels], theta_phase[kNumChannels];
  double beta_freq[kNumChannels], beta_phase[kNumChannels];
  for (int c = 0; c < kNumChannels; ++c) {
    theta_freq[c] = rng.uniform(4.5, 6.5);
    theta_phase[c] = rng.uniform(0.0, 2.0 * kPi);
    beta_freq[c] = rng.uniform(16.0, 24.0);
    beta_phase[c] = rng.uniform(0.0, 2.0 * kPi);
  }
  const double alpha_phase = rng.uniform(0.0, 2.0 * kPi);

  // Shared frontal latent: white noise through a 3-tap moving average,
  // rescaled back to unit variance.
  std::vector<double> latent(n);
  {
    std::vector<double> white(n + 2);
    for (auto& w : white) w = rng.normal();
    for (int i = 0; i < n; ++i) {
      latent[i] = (white[i] + white[i + 1] + white[i + 2]) / std::sqrt(3.0);
    }
  }

  const double alpha_base = kAlphaAmp * sp.amp_factor;
  const double coup_base = kCouplingAmp * sp.coupling_factor;
  const double noise_sigma = kNoiseSigma * sp.noise_factor;
  for (int i = 0; i < n; ++i) {
    const double ts = i / kSampleRateHz;
    const double u = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
    const double alpha_env =
        alpha_base * std::exp(envelope_log(meta, sep, u));
    const double coup_env = coup_base * std::exp(coupling_log(meta, sep, u));
    const double alpha_s = std::sin(2.0 * kPi * sp.alpha_freq * ts + alpha_phase);
    for (int c = 0; c < kNumChannels; ++c) {
      double v = rng.normal(0.0, noise_sigma);
      v += kThetaAmp * std::sin(2.0 * kPi * theta_freq[c] * ts + theta_phase[c]);
      v += kBetaAmp * std::sin(2.0 * kPi * beta_freq[c] * ts + beta_phase[c]);
      v += kAlphaGain[c] * alpha_env * alpha_s;
      v += kCouplingGain[c] * coup_env * latent[i];
      trial.samples(i, c) = v;
    }
  }
  return trial;
}

LandmarkTrack synth_landmark_track(const SynthConfig& cfg, int s, int t) {
  cfg.validate();
  const auto sp = subject_params(cfg, s);
  const auto meta = trial_meta(cfg, s, t);
  const double sep = cfg.class_separation;
  Rng rng(Rng::derive(cfg.seed, 7000000 + static_cast<uint64_t>(s) * 100000 +
                                    static_cast<uint64_t>(t)));

  const int n_frames = static_cast<int>(std::lround(meta.duration_s * kFaceFps));
  const double size = 220.0 * sp.face_scale;
  const double drift_f1 = rng.uniform(0.08, 0.16);
  const double drift_f2 = rng.uniform(0.06, 0.12);
  const double drift_p1 = rng.uniform(0.0, 2.0 * kPi);
  const double drift_p2 = rng.uniform(0.0, 2.0 * kPi);

  LandmarkTrack track;
  track.subject_id = subject_id_of(s);
  track.trial_id = trial_id_of(s, t);
  for (int k = 0; k < n_frames; ++k) {
    const double ts = k / kFaceFps;
    const double u = n_frames > 1 ? static_cast<double>(k) / (n_frames - 1) : 0.0;
    LandmarkFrame f;
    f.timestamp_s = ts;
    f.valid = true;
    const double cx = 320.0 + 6.0 * std::sin(2.0 * kPi * drift_f1 * ts + drift_p1);
    const double cy = 240.0 + 5.0 * std::sin(2.0 * kPi * drift_f2 * ts + drift_p2);
    f.box_x = cx - size / 2.0;
    f.box_y = cy - size / 2.0;
    f.box_w = size;
    f.box_h = size;
    const double brow_dy = brow_offset(meta, sep, sp.brow_base, u) * size;
    f.points.reserve(kNumLandmarks);
    for (int p = 0; p < kNumLandmarks; ++p) {
      double x = f.box_x + kFaceTemplate[p][0] * size + rng.normal(0.0, 0.0018 * size);
      double y = f.box_y + kFaceTemplate[p][1] * size + rng.normal(0.0, 0.0018 * size);
      if (p < 10) y += brow_dy;  // eyebrows carry the class signal
      f.points.emplace_back(x, y);
    }
    track.frames.push_back(std::move(f));
  }
  return track;
}

SynthDataset synth_dataset(const SynthConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "eeg", ec);
  fs::create_directories(fs::path(out_dir) / "landmarks", ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "'");

  SynthDataset ds;
  ds.manifest.task = cfg.task;
  ds.manifest.dataset_seed = cfg.seed;
  ds.manifest.base_dir = out_dir;

  for (int s = 0; s < cfg.n_subjects; ++s) {
    ds.manifest.subjects.push_back(subject_id_of(s));
    const auto sp = subject_params(cfg, s);
    for (int t = 0; t < cfg.trials_per_subject; ++t) {
      const auto meta = trial_meta(cfg, s, t);
      const auto eeg = synth_eeg_trial(cfg, s, t);
      const auto lm = synth_landmark_track(cfg, s, t);

      TrialEntry entry;
      entry.subject_id = eeg.subject_id;
      entry.trial_id = eeg.trial_id;
      entry.eeg_path = "eeg/" + entry.trial_id + ".csv";
      entry.landmarks_path = "landmarks/" + entry.trial_id + ".csv";
      entry.duration_s = meta.duration_s;
      entry.label.task = cfg.task;
      entry.label.value = meta.label;
      save_eeg_csv(eeg, ds.manifest.resolve(entry.eeg_path));
      save_landmark_csv(lm, ds.manifest.resolve(entry.landmarks_path));
      ds.manifest.trials.push_back(entry);

      TrialLatent lat;
      lat.trial_id = entry.trial_id;
      lat.label = meta.label;
      const double sep = cfg.class_separation;
      // Trial-mean realized latents (subject effect + class effect).
      const double mean_env_log =
          meta.ramp ? sep * (kHazardRampLo + kHazardRampHi) / 2.0
                    : meta.alpha_class_log;
      lat.log_alpha_amp = std::log(kAlphaAmp * sp.amp_factor) + mean_env_log;
      const double mean_coup_log =
          meta.ramp ? sep * 0.7 * (kHazardRampLo + kHazardRampHi) / 2.0
                    : meta.coupling_class_log;
      lat.log_coupling = std::log(kCouplingAmp * sp.coupling_factor) + mean_coup_log;
      lat.eyebrow_offset =
          meta.ramp ? sp.brow_base + sep * kHazardBrowDrift / 2.0
                    : sp.brow_base + meta.brow_class_offset;
      lat.alpha_slope = meta.ramp ? sep * (kHazardRampHi - kHazardRampLo) : 0.0;
      lat.eyebrow_slope = meta.ramp ? sep * kHazardBrowDrift : 0.0;
      ds.latents.push_back(lat);
    }
  }

  save_manifest(ds.manifest, (fs::path(out_dir) / "manifest.json").string());

  csv::Table lt;
  lt.header = {"label", "log_alpha_amp", "log_coupling", "eyebrow_offset",
               "alpha_slope", "eyebrow_slope"};
  // rows follow manifest trial order; see docs/formats.md
  for (const auto& l : ds.latents) {
    lt.rows.push_back({static_cast<double>(l.label), l.log_alpha_amp,
                       l.log_coupling, l.eyebrow_offset, l.alpha_slope,
                       l.eyebrow_slope});
  }
  csv::write((fs::path(out_dir) / "latents.csv").string(), lt);
  return ds;
}

}  // namespace drivewatch
