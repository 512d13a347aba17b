#include "h3lab/features/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "h3lab/common/error.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::features {

void write_feature_csv(std::ostream& out, const std::vector<std::string>& header,
                       const std::vector<ProcessedRow>& rows) {
  out << join(header, ",") << '\n';
  std::string line;
  for (const auto& row : rows) {
    line.clear();
    for (double v : row.minmax) {
      line += format_double(v);
      line += ',';
    }
    for (int v : row.ohe) {
      line += std::to_string(v);
      line += ',';
    }
    line += to_string(row.label);
    out << line << '\n';
  }
}

void write_feature_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                       const std::vector<ProcessedRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_feature_csv(out, header, rows);
}

FeatureTable read_feature_csv(std::istream& in, const FeatureSchema& schema) {
  FeatureTable t;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("feature CSV is empty");
  t.header = split(line, ',');
  const auto& mm = schema.minmax_names();
  const auto& ohe = schema.ohe_names();
  if (t.header.size() < mm.size() + 1 || t.header.back() != kLabelColumn) {
    throw SchemaError("feature CSV header must end with " + std::string(kLabelColumn));
  }
  for (std::size_t i = 0; i < mm.size(); ++i) {
    if (t.header[i] != mm[i]) {
      throw SchemaError("feature CSV column " + std::to_string(i) + " is '" + t.header[i] +
                        "', expected '" + mm[i] + "'");
    }
  }
  t.minmax_count = mm.size();
  std::size_t group = 0;
  for (std::size_t i = mm.size(); i + 1 < t.header.size(); ++i) {
    const auto& col = t.header[i];
    const auto eq = col.find('=');
    if (eq == std::string::npos) throw SchemaError("unexpected column '" + col + "'");
    const std::string feature = col.substr(0, eq);
    while (group < ohe.size() && ohe[group] != feature) ++group;
    if (group == ohe.size()) {
      throw SchemaError("column '" + col + "' is not an ohe feature in schema order");
    }
  }
  const std::size_t width = t.header.size();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != width) {
      throw SchemaError("feature CSV line " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " cells, expected " + std::to_string(width));
    }
    ProcessedRow row;
    try {
      for (std::size_t i = 0; i < t.minmax_count; ++i) row.minmax.push_back(parse_double(cells[i]));
      for (std::size_t i = t.minmax_count; i + 1 < width; ++i) {
        const double v = parse_double(cells[i]);
        if (v != -1.0 && v != 0.0 && v != 1.0) throw ParameterError("indicator not in {-1,0,1}");
        row.ohe.push_back(static_cast<int>(v));
      }
    } catch (const ParameterError& e) {
      throw SchemaError("feature CSV line " + std::to_string(line_no) + ": " + e.what());
    }
    const auto cls = parse_class_label(cells.back());
    if (!cls) throw SchemaError("feature CSV line " + std::to_string(line_no) + ": bad label");
    row.label = *cls;
    t.rows.push_back(std::move(row));
  }
  return t;
}

FeatureTable read_feature_csv(const std::filesystem::path& path, const FeatureSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path.string());
  return read_feature_csv(in, schema);
}

}  // namespace h3lab::features
