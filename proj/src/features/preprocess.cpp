#include "h3lab/features/preprocess.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "h3lab/common/error.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::features {

namespace {

double numeric(const RawValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* list = std::get_if<std::vector<double>>(&v)) {
    return fold_multivalue(*list).value_or(0.0);
  }
  return 0.0;
}

const std::string* symbol(const RawValue& v) { return std::get_if<std::string>(&v); }

void check_width(const RawRow& row, const FeatureSchema& schema) {
  if (row.values.size() != schema.features().size()) {
    throw SchemaError("row has " + std::to_string(row.values.size()) + " values, schema " +
                      std::to_string(schema.features().size()));
  }
}

}  // namespace

MinMaxScaler minmax_fit(const std::vector<RawRow>& rows, const FeatureSchema& schema) {
  const std::size_t n = schema.minmax_names().size();
  MinMaxScaler s;
  s.min.assign(n, rows.empty() ? 0.0 : std::numeric_limits<double>::infinity());
  s.max.assign(n, rows.empty() ? 0.0 : -std::numeric_limits<double>::infinity());
  for (const auto& row : rows) {
    check_width(row, schema);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = numeric(row.values[i]);
      s.min[i] = std::min(s.min[i], x);
      s.max[i] = std::max(s.max[i], x);
    }
  }
  return s;
}

std::vector<double> minmax_apply(const MinMaxScaler& scaler, const RawRow& row,
                                 const FeatureSchema& schema) {
  check_width(row, schema);
  const std::size_t n = schema.minmax_names().size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double range = scaler.max[i] - scaler.min[i];
    if (range <= 0.0) continue;
    out[i] = round_half_up((numeric(row.values[i]) - scaler.min[i]) / range, 3);
    if (out[i] == 0.0) out[i] = 0.0;  // no negative zero
  }
  return out;
}

OneHotEncoder ohe_fit(const std::vector<RawRow>& rows, const FeatureSchema& schema) {
  const std::size_t offset = schema.minmax_names().size();
  const std::size_t n = schema.ohe_names().size();
  std::vector<std::set<std::string>> seen(n);
  for (const auto& row : rows) {
    check_width(row, schema);
    for (std::size_t j = 0; j < n; ++j) {
      if (const auto* s = symbol(row.values[offset + j])) seen[j].insert(*s);
    }
  }
  OneHotEncoder enc;
  for (auto& s : seen) enc.categories.emplace_back(s.begin(), s.end());
  return enc;
}

std::vector<int> ohe_apply(const OneHotEncoder& encoder, const RawRow& row,
                           const FeatureSchema& schema) {
  check_width(row, schema);
  const std::size_t offset = schema.minmax_names().size();
  std::vector<int> out;
  for (std::size_t j = 0; j < encoder.categories.size(); ++j) {
    const auto& cats = encoder.categories[j];
    const auto* s = symbol(row.values[offset + j]);
    for (const auto& c : cats) out.push_back(s == nullptr ? -1 : (*s == c ? 1 : 0));
  }
  return out;
}

Preprocessor Preprocessor::fit(const std::vector<RawRow>& training, const FeatureSchema& schema) {
  Preprocessor p;
  p.schema_ = schema;
  p.scaler_ = minmax_fit(training, schema);
  p.encoder_ = ohe_fit(training, schema);
  return p;
}

ProcessedRow Preprocessor::apply(const RawRow& row) const {
  return {minmax_apply(scaler_, row, schema_), ohe_apply(encoder_, row, schema_), row.cls};
}

std::vector<ProcessedRow> Preprocessor::apply(const std::vector<RawRow>& rows) const {
  std::vector<ProcessedRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(apply(r));
  return out;
}

std::vector<std::string> Preprocessor::header() const {
  std::vector<std::string> h = schema_.minmax_names();
  for (std::size_t j = 0; j < encoder_.categories.size(); ++j) {
    for (const auto& c : encoder_.categories[j]) h.push_back(schema_.ohe_names()[j] + "=" + c);
  }
  h.emplace_back(kLabelColumn);
  return h;
}

nlohmann::json Preprocessor::to_json() const {
  nlohmann::json minmax = nlohmann::json::array();
  for (std::size_t i = 0; i < scaler_.min.size(); ++i) {
    minmax.push_back(
        {{"name", schema_.minmax_names()[i]}, {"min", scaler_.min[i]}, {"max", scaler_.max[i]}});
  }
  nlohmann::json ohe = nlohmann::json::array();
  for (std::size_t j = 0; j < encoder_.categories.size(); ++j) {
    ohe.push_back({{"name", schema_.ohe_names()[j]}, {"categories", encoder_.categories[j]}});
  }
  return {{"schema", schema_.to_json()}, {"minmax", std::move(minmax)}, {"ohe", std::move(ohe)}};
}

Preprocessor Preprocessor::from_json(const nlohmann::json& j) {
  try {
    Preprocessor p;
    p.schema_ = FeatureSchema::from_json(j.at("schema"));
    for (const auto& m : j.at("minmax")) {
      p.scaler_.min.push_back(m.at("min").get<double>());
      p.scaler_.max.push_back(m.at("max").get<double>());
    }
    for (const auto& o : j.at("ohe")) {
      p.encoder_.categories.push_back(o.at("categories").get<std::vector<std::string>>());
    }
    if (p.scaler_.min.size() != p.schema_.minmax_names().size() ||
        p.encoder_.categories.size() != p.schema_.ohe_names().size()) {
      throw SchemaError("preprocessor does not match its schema");
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad preprocessor: ") + e.what());
  }
}

}  // namespace h3lab::features
