#include "h3lab/features/extract.hpp"

#include <numeric>

#include "h3lab/common/error.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::features {

std::optional<double> fold_multivalue(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

RawValue numeric_value(const std::string& text) {
  if (text.empty()) return std::monostate{};
  try {
    if (text.find(',') == std::string::npos) return parse_double(text);
    std::vector<double> list;
    for (const auto& part : split(text, ',')) {
      if (!part.empty()) list.push_back(parse_double(part));
    }
    if (list.empty()) return std::monostate{};
    return list;
  } catch (const ParameterError&) {
    return std::monostate{};
  }
}

}  // namespace

RawRow extract_row(const capture::PacketRecord& record, const FeatureSchema& schema) {
  RawRow row;
  row.values.resize(schema.features().size());
  for (std::size_t i = 0; i < schema.features().size(); ++i) {
    const auto& spec = schema.features()[i];
    auto it = record.fields.find(spec.name);
    if (it == record.fields.end()) continue;
    if (spec.kind == FeatureKind::minmax) {
      row.values[i] = numeric_value(it->second);
    } else if (!it->second.empty()) {
      row.values[i] = it->second;
    }
  }
  return row;
}

RawRow extract_row(const engine::AttackEvent& event, const FeatureSchema& schema) {
  RawRow row = extract_row(capture::record_from_event(event), schema);
  if (const auto* label = event.find("label")) {
    row.label = *label;
    row.cls = map_class(*label);
  }
  return row;
}

std::vector<RawRow> extract_rows(const std::vector<capture::LabeledPacket>& packets,
                                 const FeatureSchema& schema) {
  std::vector<RawRow> rows;
  rows.reserve(packets.size());
  for (const auto& p : packets) {
    RawRow row = extract_row(p.record, schema);
    row.label = p.label;
    row.cls = p.cls;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace h3lab::features
