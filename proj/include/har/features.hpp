#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "har/mutual_info.hpp"
#include "har/parallel.hpp"
#include "har/windowing.hpp"

namespace har {

enum class BaseFeature { SW, SWMI, SWMITemp, SWMIex, SWMIAct, BSS, SWLS, SWTW };

std::string_view base_feature_name(BaseFeature b);
std::optional<BaseFeature> base_feature_from_name(std::string_view name);

enum class Scaling { None, MinMax };

/// Default SWTW decay: half-life of 60 seconds.
inline constexpr double kDefaultSwtwLambda = 0.6931471805599453 / 60.0;

struct FeatureConfig {
  BaseFeature base = BaseFeature::SWMI;
  bool cyclic = false;
  bool location_change = false;
  bool dynamic_window = false;  // DW segmentation instead of a fixed N
  double swtw_lambda = kDefaultSwtwLambda;
  Scaling scaling = Scaling::None;
};

/// Parses method strings like "SWMI+cyclic+location", "BSS+cyclic", "DW".
FeatureConfig parse_method(std::string_view method);
std::string method_name(const FeatureConfig& cfg);

// --- per-window primitives ---

/// Component i = number of events of sensor i in the window.
std::vector<double> count_vector(const LabeledWindow& w, int m);

/// Each event contributes mi(its sensor, last sensor) to its sensor's
/// component.
std::vector<double> swmi_vector(const LabeledWindow& w, const MIMatrix& mi);

/// swmi_vector with the matrix chosen by the trigger timestamp's day segment.
std::vector<double> swmi_temp_vector(const LabeledWindow& w, const TemporalMI& tmi);

/// Component i = +1/-1 for sensor i's last state in the window, 0 if absent.
std::vector<double> bss_vector(const LabeledWindow& w, int m);

/// Same rule as bss_vector; kept as a separate named method.
std::vector<double> swls_vector(const LabeledWindow& w, int m);

/// Like swmi_vector with each event's contribution decayed by
/// exp(-lambda * seconds before the trigger).
std::vector<double> swtw_vector(const LabeledWindow& w, const MIMatrix& mi,
                                double lambda);

/// (sin_h, cos_h, sin_d, cos_d) from the fractional hour and Monday-based
/// day-of-week.
std::array<double, 4> cyclic_features(Micros ts);

/// 1 iff the window's last two events come from different sensors.
double location_change(const LabeledWindow& w);

// --- batch extraction ---

struct FeatureLayout {
  struct Block {
    std::string name;
    std::size_t dim = 0;
    bool operator==(const Block&) const = default;
  };
  std::vector<Block> blocks;
  std::size_t total = 0;

  std::vector<std::string> dim_names(const std::vector<std::string>& sensor_names) const;
  bool operator==(const FeatureLayout&) const = default;
};

struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<double> data;  // row-major
  FeatureLayout layout;

  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * dim, dim};
  }
};

class MinMaxScaler {
 public:
  static MinMaxScaler fit(const FeatureMatrix& train);
  void transform(std::span<double> row) const;
  void apply(FeatureMatrix& matrix) const;
  std::size_t dim() const { return mins_.size(); }

 private:
  std::vector<double> mins_;
  std::vector<double> ranges_;  // 0 for constant dimensions
};

struct FeatureModels {
  std::optional<MIMatrix> mi;        // SWMI, SWTW
  std::optional<MIMatrix> mi_cooc;   // SWMIex
  std::optional<MIMatrix> mi_act;    // SWMI-Act
  std::optional<TemporalMI> tmi;     // SWMI-Temp
};

/// Assembles [base block][cyclic?][location?] per the config, applying the
/// scaler when one is set. Models are validated against the base method at
/// construction.
class FeatureExtractor {
 public:
  FeatureExtractor(FeatureConfig cfg, FeatureModels models, int sensor_count);

  const FeatureLayout& layout() const { return layout_; }
  const FeatureConfig& config() const { return cfg_; }

  std::vector<double> assemble(const LabeledWindow& w) const;

  FeatureMatrix extract_batch(std::span<const LabeledWindow> windows,
                              Exec exec = Exec::Parallel) const;
  FeatureMatrix extract_batch_serial(std::span<const LabeledWindow> windows) const;

  void set_scaler(MinMaxScaler scaler);
  const std::optional<MinMaxScaler>& scaler() const { return scaler_; }

 private:
  FeatureConfig cfg_;
  FeatureModels models_;
  int m_ = 0;
  FeatureLayout layout_;
  std::optional<MinMaxScaler> scaler_;
};

}  // namespace har
