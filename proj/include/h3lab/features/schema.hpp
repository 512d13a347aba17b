#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace h3lab::features {

enum class FeatureKind { minmax, ohe };

std::string_view to_string(FeatureKind kind) noexcept;

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::minmax;

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

inline constexpr std::string_view kLabelColumn = "Label";

/// Ordered feature list; minmax features first, then ohe, as in the
/// canonical 46-feature table.
class FeatureSchema {
 public:
  FeatureSchema() = default;
  /// Throws SchemaError on duplicate or empty names, or an ohe feature
  /// listed before a minmax one.
  explicit FeatureSchema(std::vector<FeatureSpec> features);

  /// 35 minmax + 11 ohe features.
  static const FeatureSchema& canonical();

  const std::vector<FeatureSpec>& features() const noexcept { return features_; }
  const std::vector<std::string>& minmax_names() const noexcept { return minmax_; }
  const std::vector<std::string>& ohe_names() const noexcept { return ohe_; }
  std::optional<std::size_t> index_of(std::string_view name) const noexcept;

  nlohmann::json to_json() const;
  static FeatureSchema from_json(const nlohmann::json& j);

  friend bool operator==(const FeatureSchema& a, const FeatureSchema& b) {
    return a.features_ == b.features_;
  }

 private:
  std::vector<FeatureSpec> features_;
  std::vector<std::string> minmax_;
  std::vector<std::string> ohe_;
};

/// Registry file: {"schemas": {"<name>": {"features": [{"name", "kind"}]}}}.
/// The built-in "canonical" entry is always available.
FeatureSchema load_schema(const std::filesystem::path& registry, const std::string& name);
nlohmann::json canonical_registry();

}  // namespace h3lab::features
