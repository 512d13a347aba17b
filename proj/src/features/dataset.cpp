#include "h3lab/features/dataset.hpp"

#include <fstream>

#include "h3lab/common/error.hpp"

namespace h3lab::features {

Dataset build_dataset(const std::vector<RawRow>& rows, const FeatureSchema& schema,
                      const DatasetOptions& options) {
  std::vector<ClassLabel> labels;
  labels.reserve(rows.size());
  for (const auto& r : rows) labels.push_back(r.cls);
  const auto split = stratified_split(labels, options.fractions, options.seed);
  const auto parts = take_subsets(rows, split);
  Dataset d;
  d.warnings = split.warnings;
  d.preprocessor = Preprocessor::fit(parts.front(), schema);
  for (const auto& part : parts) d.splits.push_back(d.preprocessor.apply(part));
  return d;
}

std::vector<std::filesystem::path> write_dataset(const Dataset& dataset,
                                                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  switch (dataset.splits.size()) {
    case 1: names = {"dataset"}; break;
    case 2: names = {"train", "test"}; break;
    case 3: names = {"train", "val", "test"}; break;
    default:
      for (std::size_t i = 0; i < dataset.splits.size(); ++i) {
        names.push_back("split_" + std::to_string(i));
      }
  }
  std::vector<std::filesystem::path> paths;
  const auto header = dataset.header();
  for (std::size_t i = 0; i < dataset.splits.size(); ++i) {
    paths.push_back(dir / (names[i] + ".csv"));
    write_feature_csv(paths.back(), header, dataset.splits[i]);
  }
  std::ofstream out(dir / "preprocessor.json", std::ios::binary);
  if (!out) throw Error("cannot write preprocessor.json");
  out << dataset.preprocessor.to_json().dump(2) << '\n';
  return paths;
}

}  // namespace h3lab::features
