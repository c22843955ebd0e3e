#include "har/features.hpp"

#include <cmath>
#include <numbers>

namespace har {
namespace {

constexpr std::array<std::string_view, 8> kBaseNames = {
    "SW", "SWMI", "SWMI-Temp", "SWMIex", "SWMI-Act", "BSS", "SWLS", "SWTW"};

}  // namespace

std::string_view base_feature_name(BaseFeature b) {
  return kBaseNames[static_cast<std::size_t>(b)];
}

std::optional<BaseFeature> base_feature_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kBaseNames.size(); ++i)
    if (kBaseNames[i] == name) return static_cast<BaseFeature>(i);
  return std::nullopt;
}

FeatureConfig parse_method(std::string_view method) {
  FeatureConfig cfg;
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= method.size()) {
    std::size_t plus = method.find('+', pos);
    if (plus == std::string_view::npos) plus = method.size();
    parts.push_back(method.substr(pos, plus - pos));
    pos = plus + 1;
  }
  if (parts.empty() || parts[0].empty())
    throw ConfigError("empty method string");

  if (parts[0] == "DW") {
    cfg.base = BaseFeature::SW;
    cfg.dynamic_window = true;
  } else if (auto base = base_feature_from_name(parts[0])) {
    cfg.base = *base;
  } else {
    throw ConfigError("unknown base method '" + std::string(parts[0]) + "'");
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] == "cyclic")
      cfg.cyclic = true;
    else if (parts[i] == "location")
      cfg.location_change = true;
    else
      throw ConfigError("unknown method modifier '" + std::string(parts[i]) + "'");
  }
  return cfg;
}

std::string method_name(const FeatureConfig& cfg) {
  std::string name = cfg.dynamic_window && cfg.base == BaseFeature::SW
                         ? "DW"
                         : std::string(base_feature_name(cfg.base));
  if (cfg.dynamic_window && cfg.base != BaseFeature::SW) name += "+DW";
  if (cfg.cyclic) name += "+cyclic";
  if (cfg.location_change) name += "+location";
  return name;
}

std::vector<double> count_vector(const LabeledWindow& w, int m) {
  std::vector<double> v(static_cast<std::size_t>(m), 0.0);
  for (const auto& e : w.events) v[static_cast<std::size_t>(e.sensor)] += 1.0;
  return v;
}

std::vector<double> swmi_vector(const LabeledWindow& w, const MIMatrix& mi) {
  std::vector<double> v(static_cast<std::size_t>(mi.m), 0.0);
  const SensorId last = w.trigger().sensor;
  for (const auto& e : w.events)
    v[static_cast<std::size_t>(e.sensor)] += mi.at(e.sensor, last);
  return v;
}

std::vector<double> swmi_temp_vector(const LabeledWindow& w, const TemporalMI& tmi) {
  return swmi_vector(w, tmi.for_hour(hour_of_day(w.trigger_timestamp())));
}

std::vector<double> bss_vector(const LabeledWindow& w, int m) {
  std::vector<double> v(static_cast<std::size_t>(m), 0.0);
  for (const auto& e : w.events)
    v[static_cast<std::size_t>(e.sensor)] = e.state == SensorState::On ? 1.0 : -1.0;
  return v;
}

std::vector<double> swls_vector(const LabeledWindow& w, int m) {
  return bss_vector(w, m);
}

std::vector<double> swtw_vector(const LabeledWindow& w, const MIMatrix& mi,
                                double lambda) {
  if (lambda < 0) throw Error("SWTW lambda must be >= 0");
  std::vector<double> v(static_cast<std::size_t>(mi.m), 0.0);
  const SensorId last = w.trigger().sensor;
  const Micros trigger_ts = w.trigger_timestamp();
  for (const auto& e : w.events) {
    const double dt_seconds =
        static_cast<double>(trigger_ts - e.timestamp) / kMicrosPerSecond;
    v[static_cast<std::size_t>(e.sensor)] +=
        std::exp(-lambda * dt_seconds) * mi.at(e.sensor, last);
  }
  return v;
}

std::array<double, 4> cyclic_features(Micros ts) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double h = hour_of_day(ts);
  const double d = static_cast<double>(day_of_week(ts));
  return {std::sin(two_pi * h / 24.0), std::cos(two_pi * h / 24.0),
          std::sin(two_pi * d / 7.0), std::cos(two_pi * d / 7.0)};
}

double location_change(const LabeledWindow& w) {
  if (w.events.size() < 2) return 0.0;
  const auto& a = w.events[w.events.size() - 2];
  const auto& b = w.events[w.events.size() - 1];
  return a.sensor != b.sensor ? 1.0 : 0.0;
}

std::vector<std::string> FeatureLayout::dim_names(
    const std::vector<std::string>& sensor_names) const {
  std::vector<std::string> out;
  out.reserve(total);
  for (const auto& block : blocks) {
    if (block.name == "cyclic") {
      out.insert(out.end(), {"hour_sin", "hour_cos", "dow_sin", "dow_cos"});
    } else if (block.name == "location") {
      out.push_back("location_change");
    } else {
      for (std::size_t i = 0; i < block.dim; ++i)
        out.push_back(i < sensor_names.size() ? sensor_names[i]
                                              : "s" + std::to_string(i));
    }
  }
  return out;
}

MinMaxScaler MinMaxScaler::fit(const FeatureMatrix& train) {
  if (train.rows == 0) throw Error("scaler fit requires at least one row");
  MinMaxScaler s;
  s.mins_.assign(train.dim, 0.0);
  s.ranges_.assign(train.dim, 0.0);
  std::vector<double> maxs(train.dim, 0.0);
  for (std::size_t d = 0; d < train.dim; ++d) {
    s.mins_[d] = train.data[d];
    maxs[d] = train.data[d];
  }
  for (std::size_t r = 1; r < train.rows; ++r) {
    const auto row = train.row(r);
    for (std::size_t d = 0; d < train.dim; ++d) {
      s.mins_[d] = std::min(s.mins_[d], row[d]);
      maxs[d] = std::max(maxs[d], row[d]);
    }
  }
  for (std::size_t d = 0; d < train.dim; ++d) s.ranges_[d] = maxs[d] - s.mins_[d];
  return s;
}

void MinMaxScaler::transform(std::span<double> row) const {
  if (row.size() != mins_.size()) throw Error("scaler dimension mismatch");
  for (std::size_t d = 0; d < row.size(); ++d)
    row[d] = ranges_[d] > 0 ? (row[d] - mins_[d]) / ranges_[d] : 0.0;
}

void MinMaxScaler::apply(FeatureMatrix& matrix) const {
  for (std::size_t r = 0; r < matrix.rows; ++r)
    transform({matrix.data.data() + r * matrix.dim, matrix.dim});
}

FeatureExtractor::FeatureExtractor(FeatureConfig cfg, FeatureModels models,
                                   int sensor_count)
    : cfg_(cfg), models_(std::move(models)), m_(sensor_count) {
  if (m_ < 1) throw ConfigError("sensor count must be >= 1");
  auto require = [&](bool present, std::string_view what) {
    if (!present)
      throw ConfigError(std::string(base_feature_name(cfg_.base)) +
                        " requires a fitted " + std::string(what));
  };
  auto check_m = [&](const MIMatrix& mi) {
    if (mi.m != m_) throw ConfigError("MI matrix size does not match sensor count");
  };
  switch (cfg_.base) {
    case BaseFeature::SWMI:
    case BaseFeature::SWTW:
      require(models_.mi.has_value(), "MI matrix");
      check_m(*models_.mi);
      break;
    case BaseFeature::SWMIex:
      require(models_.mi_cooc.has_value(), "co-occurrence MI matrix");
      check_m(*models_.mi_cooc);
      break;
    case BaseFeature::SWMIAct:
      require(models_.mi_act.has_value(), "activity MI matrix");
      check_m(*models_.mi_act);
      break;
    case BaseFeature::SWMITemp:
      require(models_.tmi.has_value(), "temporal MI model");
      check_m(models_.tmi->morning);
      break;
    default:
      break;
  }

  layout_.blocks.push_back({std::string(base_feature_name(cfg_.base)),
                            static_cast<std::size_t>(m_)});
  if (cfg_.cyclic) layout_.blocks.push_back({"cyclic", 4});
  if (cfg_.location_change) layout_.blocks.push_back({"location", 1});
  layout_.total = 0;
  for (const auto& b : layout_.blocks) layout_.total += b.dim;
}

void FeatureExtractor::set_scaler(MinMaxScaler scaler) {
  if (scaler.dim() != layout_.total) throw Error("scaler dimension mismatch");
  scaler_ = std::move(scaler);
}

std::vector<double> FeatureExtractor::assemble(const LabeledWindow& w) const {
  if (w.events.empty()) throw Error("cannot assemble features for an empty window");
  std::vector<double> base;
  switch (cfg_.base) {
    case BaseFeature::SW: base = count_vector(w, m_); break;
    case BaseFeature::SWMI: base = swmi_vector(w, *models_.mi); break;
    case BaseFeature::SWMITemp: base = swmi_temp_vector(w, *models_.tmi); break;
    case BaseFeature::SWMIex: base = swmi_vector(w, *models_.mi_cooc); break;
    case BaseFeature::SWMIAct: base = swmi_vector(w, *models_.mi_act); break;
    case BaseFeature::BSS: base = bss_vector(w, m_); break;
    case BaseFeature::SWLS: base = swls_vector(w, m_); break;
    case BaseFeature::SWTW: base = swtw_vector(w, *models_.mi, cfg_.swtw_lambda); break;
  }
  base.reserve(layout_.total);
  if (cfg_.cyclic) {
    const auto c = cyclic_features(w.trigger_timestamp());
    base.insert(base.end(), c.begin(), c.end());
  }
  if (cfg_.location_change) base.push_back(location_change(w));
  if (scaler_) scaler_->transform(base);
  return base;
}

FeatureMatrix FeatureExtractor::extract_batch_serial(
    std::span<const LabeledWindow> windows) const {
  FeatureMatrix out;
  out.rows = windows.size();
  out.dim = layout_.total;
  out.layout = layout_;
  out.data.resize(out.rows * out.dim);
  for (std::size_t r = 0; r < windows.size(); ++r) {
    const auto v = assemble(windows[r]);
    std::copy(v.begin(), v.end(), out.data.begin() + static_cast<std::ptrdiff_t>(r * out.dim));
  }
  return out;
}

FeatureMatrix FeatureExtractor::extract_batch(std::span<const LabeledWindow> windows,
                                              Exec exec) const {
  if (exec == Exec::Serial) return extract_batch_serial(windows);
  FeatureMatrix out;
  out.rows = windows.size();
  out.dim = layout_.total;
  out.layout = layout_;
  out.data.resize(out.rows * out.dim);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(windows.size()); ++r) {
    const auto v = assemble(windows[static_cast<std::size_t>(r)]);
    std::copy(v.begin(), v.end(),
              out.data.begin() + r * static_cast<std::ptrdiff_t>(out.dim));
  }
  return out;
}

}  // namespace har
