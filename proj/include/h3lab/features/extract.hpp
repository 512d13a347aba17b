#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "h3lab/capture/label.hpp"
#include "h3lab/capture/packet_record.hpp"
#include "h3lab/engine/attack_event.hpp"
#include "h3lab/features/class_label.hpp"
#include "h3lab/features/schema.hpp"

namespace h3lab::features {

/// absent | number | symbol | list of numbers
using RawValue = std::variant<std::monostate, double, std::string, std::vector<double>>;

struct RawRow {
  std::vector<RawValue> values;  // schema order
  std::string label = "Normal";
  ClassLabel cls = ClassLabel::Normal;
};

/// Sum of the list; nullopt for an empty list.
std::optional<double> fold_multivalue(const std::vector<double>& values);

/// Populates every schema field present in the record; all others absent.
/// Comma-separated minmax values become lists.
RawRow extract_row(const capture::PacketRecord& record,
                   const FeatureSchema& schema = FeatureSchema::canonical());
RawRow extract_row(const engine::AttackEvent& event,
                   const FeatureSchema& schema = FeatureSchema::canonical());

std::vector<RawRow> extract_rows(const std::vector<capture::LabeledPacket>& packets,
                                 const FeatureSchema& schema = FeatureSchema::canonical());

}  // namespace h3lab::features
