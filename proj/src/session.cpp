#include "drivewatch/session.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "drivewatch/csv.hpp"
#include "drivewatch/errors.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace drivewatch {

std::string task_name(Task t) {
  return t == Task::kAttention ? "attention" : "hazard";
}

Task task_from_name(const std::string& s) {
  if (s == "attention") return Task::kAttention;
  if (s == "hazard") return Task::kHazard;
  throw ValidationError("unknown task '" + s + "'");
}

std::string TrialLabel::value_name() const {
  if (task == Task::kAttention) return value ? "high" : "low";
  return value ? "hazardous" : "non-hazardous";
}

TrialLabel TrialLabel::parse(Task task, const std::string& value_name,
                             const std::string& trial_id) {
  TrialLabel label;
  label.task = task;
  if (task == Task::kAttention) {
    if (value_name == "low")
      label.value = 0;
    else if (value_name == "high")
      label.value = 1;
    else
      throw ValidationError("trial '" + trial_id + "': label '" + value_name +
                            "' is not valid for the attention task");
  } else {
    if (value_name == "non-hazardous")
      label.value = 0;
    else if (value_name == "hazardous")
      label.value = 1;
    else
      throw ValidationError("trial '" + trial_id + "': label '" + value_name +
                            "' is not valid for the hazard task");
  }
  return label;
}

void EegTrial::validate(double min_duration_s) const {
  if (sample_rate != kSampleRateHz) {
    throw ValidationError("trial '" + trial_id + "': sample_rate " +
                          std::to_string(sample_rate) + " != 128");
  }
  if (samples.cols() != kNumChannels) {
    throw ValidationError("trial '" + trial_id + "': expected 14 channels, got " +
                          std::to_string(samples.cols()));
  }
  if (min_duration_s > 0.0 && duration_s < min_duration_s) {
    throw ValidationError("trial '" + trial_id + "': duration " +
                          std::to_string(duration_s) + " s below minimum " +
                          std::to_string(min_duration_s) + " s");
  }
  const auto expected = static_cast<Eigen::Index>(std::lround(duration_s * sample_rate));
  if (samples.rows() != expected) {
    throw ValidationError("trial '" + trial_id + "': " +
                          std::to_string(samples.rows()) + " samples but " +
                          std::to_string(duration_s) + " s at 128 Hz needs " +
                          std::to_string(expected));
  }
  if (!samples.allFinite()) {
    throw ValidationError("trial '" + trial_id + "': non-finite EEG sample");
  }
}

void LandmarkTrack::validate() const {
  double prev_t = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    if (f.timestamp_s <= prev_t) {
      throw ValidationError("trial '" + trial_id + "': landmark timestamps not strictly increasing at frame " +
                            std::to_string(i));
    }
    prev_t = f.timestamp_s;
    if (!f.valid) continue;
    if (static_cast<int>(f.points.size()) != kNumLandmarks) {
      throw ValidationError("trial '" + trial_id + "': frame " + std::to_string(i) +
                            " has " + std::to_string(f.points.size()) +
                            " landmarks, expected 49");
    }
    if (f.box_w < 50.0 || f.box_h < 50.0) {
      throw ValidationError("trial '" + trial_id + "': frame " + std::to_string(i) +
                            " face box below 50x50 px");
    }
    for (const auto& [x, y] : f.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw ValidationError("trial '" + trial_id + "': non-finite landmark in frame " +
                              std::to_string(i));
      }
    }
  }
}

int LandmarkTrack::valid_frame_count() const {
  int n = 0;
  for (const auto& f : frames) n += f.valid ? 1 : 0;
  return n;
}

std::string SessionManifest::resolve(const std::string& rel_path) const {
  fs::path p(rel_path);
  if (p.is_absolute()) return rel_path;
  return (fs::path(base_dir) / p).string();
}

std::vector<const TrialEntry*> SessionManifest::trials_of(
    const std::string& subject) const {
  std::vector<const TrialEntry*> out;
  for (const auto& t : trials) {
    if (t.subject_id == subject) out.push_back(&t);
  }
  return out;
}

void SessionManifest::validate_structure() const {
  std::set<std::string> subject_set(subjects.begin(), subjects.end());
  if (subject_set.size() != subjects.size()) {
    throw ValidationError("manifest: duplicate subject ids");
  }
  std::set<std::string> trial_ids;
  for (const auto& t : trials) {
    if (t.subject_id.empty()) {
      throw ValidationError("trial '" + t.trial_id + "': empty subject_id");
    }
    if (!subject_set.count(t.subject_id)) {
      throw ValidationError("trial '" + t.trial_id + "': subject '" +
                            t.subject_id + "' not in subject list");
    }
    if (!trial_ids.insert(t.trial_id).second) {
      throw ValidationError("manifest: duplicate trial_id '" + t.trial_id + "'");
    }
    if (t.label.task != task) {
      throw ValidationError("trial '" + t.trial_id + "': label task '" +
                            task_name(t.label.task) + "' != manifest task '" +
                            task_name(task) + "'");
    }
    if (task == Task::kHazard && t.duration_s != 2.0) {
      throw ValidationError("trial '" + t.trial_id + "': hazard trials must be exactly 2.0 s, got " +
                            std::to_string(t.duration_s));
    }
    if (t.duration_s < 1.0) {
      throw ValidationError("trial '" + t.trial_id + "': duration " +
                            std::to_string(t.duration_s) + " s below 1.0 s");
    }
  }
}

namespace {

json manifest_to_json(const SessionManifest& m) {
  json j;
  j["task"] = task_name(m.task);
  j["subjects"] = m.subjects;
  if (m.dataset_seed) j["dataset_seed"] = *m.dataset_seed;
  json trials = json::array();
  for (const auto& t : m.trials) {
    json e;
    e["subject_id"] = t.subject_id;
    e["trial_id"] = t.trial_id;
    e["eeg_path"] = t.eeg_path;
    e["landmarks_path"] = t.landmarks_path;
    if (t.embeddings_path) e["embeddings_path"] = *t.embeddings_path;
    e["label"] = t.label.value_name();
    e["duration_s"] = t.duration_s;
    trials.push_back(e);
  }
  j["trials"] = trials;
  return j;
}

SessionManifest manifest_from_json(const json& j, const std::string& base_dir) {
  SessionManifest m;
  m.base_dir = base_dir;
  try {
    m.task = task_from_name(j.at("task").get<std::string>());
    m.subjects = j.at("subjects").get<std::vector<std::string>>();
    if (j.contains("dataset_seed")) {
      m.dataset_seed = j.at("dataset_seed").get<uint64_t>();
    }
    for (const auto& e : j.at("trials")) {
      TrialEntry t;
      t.subject_id = e.at("subject_id").get<std::string>();
      t.trial_id = e.at("trial_id").get<std::string>();
      t.eeg_path = e.at("eeg_path").get<std::string>();
      t.landmarks_path = e.at("landmarks_path").get<std::string>();
      if (e.contains("embeddings_path")) {
        t.embeddings_path = e.at("embeddings_path").get<std::string>();
      }
      t.duration_s = e.at("duration_s").get<double>();
      t.label = TrialLabel::parse(m.task, e.at("label").get<std::string>(),
                                  t.trial_id);
      m.trials.push_back(std::move(t));
    }
  } catch (const json::exception& ex) {
    throw ValidationError(std::string("manifest schema violation: ") + ex.what());
  }
  return m;
}

}  // namespace

SessionManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& ex) {
    throw ValidationError("manifest '" + path + "' is not valid JSON: " + ex.what());
  }
  SessionManifest m =
      manifest_from_json(j, fs::path(path).parent_path().string());
  m.validate_structure();
  // Eager file validation: every referenced file must exist and parse.
  for (const auto& t : m.trials) {
    if (!fs::exists(m.resolve(t.eeg_path))) {
      throw ValidationError("trial '" + t.trial_id + "': eeg_path '" +
                            t.eeg_path + "' does not exist");
    }
    if (!fs::exists(m.resolve(t.landmarks_path))) {
      throw ValidationError("trial '" + t.trial_id + "': landmarks_path '" +
                            t.landmarks_path + "' does not exist");
    }
    if (t.embeddings_path && !fs::exists(m.resolve(*t.embeddings_path))) {
      throw ValidationError("trial '" + t.trial_id + "': embeddings_path '" +
                            *t.embeddings_path + "' does not exist");
    }
    load_eeg_trial(m, t);
    load_landmark_track(m, t);
  }
  return m;
}

void save_manifest(const SessionManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest '" + path + "'");
  out << manifest_to_json(manifest).dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

EegTrial load_eeg_trial(const SessionManifest& manifest,
                        const TrialEntry& entry) {
  const auto table = csv::read(manifest.resolve(entry.eeg_path));
  const auto& layout = ChannelLayout::standard();
  if (static_cast<int>(table.header.size()) != kNumChannels) {
    std::string missing;
    std::set<std::string> present(table.header.begin(), table.header.end());
    for (const auto& name : layout.names) {
      if (!present.count(name)) missing += (missing.empty() ? "" : ", ") + name;
    }
    throw ValidationError("trial '" + entry.trial_id + "': EEG file has " +
                          std::to_string(table.header.size()) +
                          " columns, expected 14 (missing: " + missing + ")");
  }
  // Map file columns onto canonical order; any permutation is accepted.
  std::array<int, kNumChannels> col_of{};
  col_of.fill(-1);
  for (size_t c = 0; c < table.header.size(); ++c) {
    const int idx = layout.index_of(table.header[c]);
    if (idx < 0) {
      throw ValidationError("trial '" + entry.trial_id +
                            "': unknown EEG channel '" + table.header[c] + "'");
    }
    if (col_of[idx] != -1) {
      throw ValidationError("trial '" + entry.trial_id +
                            "': duplicate EEG channel '" + table.header[c] + "'");
    }
    col_of[idx] = static_cast<int>(c);
  }
  EegTrial trial;
  trial.subject_id = entry.subject_id;
  trial.trial_id = entry.trial_id;
  trial.duration_s = entry.duration_s;
  trial.samples.resize(static_cast<Eigen::Index>(table.rows.size()), kNumChannels);
  for (Eigen::Index r = 0; r < trial.samples.rows(); ++r) {
    for (int ch = 0; ch < kNumChannels; ++ch) {
      trial.samples(r, ch) = table.rows[static_cast<size_t>(r)][static_cast<size_t>(col_of[ch])];
    }
  }
  trial.validate(1.0);
  return trial;
}

LandmarkTrack load_landmark_track(const SessionManifest& manifest,
                                  const TrialEntry& entry) {
  const auto table = csv::read(manifest.resolve(entry.landmarks_path));
  // timestamp_s, valid, box_x, box_y, box_w, box_h, x0, y0, ..., x48, y48
  const size_t expected_cols = 6 + 2 * kNumLandmarks;
  if (table.header.size() != expected_cols) {
    throw ValidationError("trial '" + entry.trial_id + "': landmark file has " +
                          std::to_string(table.header.size()) +
                          " columns, expected " + std::to_string(expected_cols));
  }
  LandmarkTrack track;
  track.subject_id = entry.subject_id;
  track.trial_id = entry.trial_id;
  for (const auto& row : table.rows) {
    LandmarkFrame f;
    f.timestamp_s = row[0];
    f.valid = row[1] != 0.0;
    f.box_x = row[2];
    f.box_y = row[3];
    f.box_w = row[4];
    f.box_h = row[5];
    f.points.reserve(kNumLandmarks);
    for (int p = 0; p < kNumLandmarks; ++p) {
      f.points.emplace_back(row[6 + 2 * p], row[7 + 2 * p]);
    }
    track.frames.push_back(std::move(f));
  }
  track.validate();
  return track;
}

void save_eeg_csv(const EegTrial& trial, const std::string& path) {
  csv::Table t;
  const auto& layout = ChannelLayout::standard();
  t.header.assign(layout.names.begin(), layout.names.end());
  t.rows.resize(static_cast<size_t>(trial.samples.rows()));
  for (Eigen::Index r = 0; r < trial.samples.rows(); ++r) {
    auto& row = t.rows[static_cast<size_t>(r)];
    row.resize(kNumChannels);
    for (int c = 0; c < kNumChannels; ++c) row[static_cast<size_t>(c)] = trial.samples(r, c);
  }
  csv::write(path, t);
}

void save_landmark_csv(const LandmarkTrack& track, const std::string& path) {
  csv::Table t;
  t.header = {"timestamp_s", "valid", "box_x", "box_y", "box_w", "box_h"};
  for (int p = 0; p < kNumLandmarks; ++p) {
    t.header.push_back("x" + std::to_string(p));
    t.header.push_back("y" + std::to_string(p));
  }
  for (const auto& f : track.frames) {
    std::vector<double> row;
    row.reserve(t.header.size());
    row.push_back(f.timestamp_s);
    row.push_back(f.valid ? 1.0 : 0.0);
    row.push_back(f.box_x);
    row.push_back(f.box_y);
    row.push_back(f.box_w);
    row.push_back(f.box_h);
    for (const auto& [x, y] : f.points) {
      row.push_back(x);
      row.push_back(y);
    }
    t.rows.push_back(std::move(row));
  }
  csv::write(path, t);
}

}  // namespace drivewatch
