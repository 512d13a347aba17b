#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "h3lab/capture/label.hpp"
#include "h3lab/common/error.hpp"
#include "h3lab/common/rng.hpp"
#include "h3lab/features/class_label.hpp"
#include "h3lab/features/csv.hpp"
#include "h3lab/features/dataset.hpp"
#include "h3lab/features/extract.hpp"
#include "h3lab/features/preprocess.hpp"
#include "h3lab/features/schema.hpp"
#include "h3lab/features/split.hpp"

using namespace h3lab;
using namespace h3lab::features;

namespace {

FeatureSchema small_schema() {
  return FeatureSchema({{"x", FeatureKind::minmax},
                        {"y", FeatureKind::minmax},
                        {"tcp.flags.syn", FeatureKind::ohe},
                        {"dns.flags.response", FeatureKind::ohe}});
}

RawRow row(RawValue x, RawValue y, RawValue syn, RawValue dns,
           ClassLabel cls = ClassLabel::Normal) {
  RawRow r;
  r.values = {std::move(x), std::move(y), std::move(syn), std::move(dns)};
  r.cls = cls;
  r.label = std::string(to_string(cls));
  return r;
}

}  // namespace

TEST_CASE("canonical schema") {
  const auto& s = FeatureSchema::canonical();
  CHECK(s.features().size() == 46);
  CHECK(s.minmax_names().size() == 35);
  CHECK(s.ohe_names().size() == 11);
  CHECK(s.minmax_names().front() == "frame.len");
  CHECK(s.index_of("tcp.flags.syn").has_value());
  CHECK(FeatureSchema::from_json(s.to_json()) == s);
  CHECK(load_schema({}, "canonical") == s);
  CHECK_THROWS_AS(FeatureSchema({{"a", FeatureKind::ohe}, {"b", FeatureKind::minmax}}),
                  SchemaError);
  CHECK_THROWS_AS(FeatureSchema({{"a", FeatureKind::minmax}, {"a", FeatureKind::minmax}}),
                  SchemaError);
}

TEST_CASE("class map") {
  CHECK(map_class(engine::AttackKind::QuicFlood) == ClassLabel::DDoSFlooding);
  CHECK(map_class(engine::AttackKind::Http3Flood) == ClassLabel::DDoSFlooding);
  CHECK(map_class(engine::AttackKind::Http3TablesStreams) == ClassLabel::DDoSFlooding);
  CHECK(map_class(engine::AttackKind::Http3Loris) == ClassLabel::DDoSLoris);
  CHECK(map_class(engine::AttackKind::QuicLoris) == ClassLabel::DDoSLoris);
  CHECK(map_class(engine::AttackKind::Fuzzing) == ClassLabel::TransportLayer);
  CHECK(map_class(engine::AttackKind::QuicEnc) == ClassLabel::TransportLayer);
  CHECK(map_class(engine::AttackKind::HttpSmuggle) == ClassLabel::Http2Attacks);
  CHECK(map_class(engine::AttackKind::Http2Pause) == ClassLabel::Http2Attacks);
  CHECK(map_class("Normal") == ClassLabel::Normal);
  CHECK_THROWS_AS(map_class(engine::AttackKind::DowngradeProbe), MappingError);
  CHECK_THROWS_AS(map_class("weird"), MappingError);
  for (auto c : kClassOrder) CHECK(parse_class_label(to_string(c)) == c);
}

TEST_CASE("multi-valued fields fold to their sum") {
  CHECK(fold_multivalue({50, 70}) == 120.0);
  CHECK(fold_multivalue({7}) == 7.0);
  CHECK(fold_multivalue({1, 2, 3, 4}) == 10.0);
  CHECK_FALSE(fold_multivalue({}));
}

TEST_CASE("extraction from records") {
  capture::PacketRecord r;
  r.length = 1200;
  r.fields = {{"frame.len", "1200"}, {"udp.length", "1166"}, {"quic.length", "50,70"},
              {"http3.settings.qpack.max_table_capacity", "16"}, {"quic.fixed_bit", "1"}};
  const auto& s = FeatureSchema::canonical();
  const auto row = extract_row(r, s);
  CHECK(std::get<double>(row.values[*s.index_of("frame.len")]) == 1200);
  CHECK(std::get<std::vector<double>>(row.values[*s.index_of("quic.length")]) ==
        std::vector<double>{50, 70});
  CHECK(std::get<double>(row.values[*s.index_of("http3.settings.qpack.max_table_capacity")]) == 16);
  CHECK(std::get<std::string>(row.values[*s.index_of("quic.fixed_bit")]) == "1");
  CHECK(std::holds_alternative<std::monostate>(row.values[*s.index_of("tcp.len")]));
  CHECK(std::holds_alternative<std::monostate>(row.values[*s.index_of("tcp.flags.syn")]));
}

TEST_CASE("minmax scaling") {
  const auto s = small_schema();
  const std::vector<RawRow> rows{row(0.0, 5.0, {}, {}), row(50.0, 5.0, {}, {}),
                                 row(100.0, 5.0, {}, {})};
  const auto scaler = minmax_fit(rows, s);
  CHECK(minmax_apply(scaler, rows[0], s) == std::vector<double>{0.0, 0.0});
  CHECK(minmax_apply(scaler, rows[1], s) == std::vector<double>{0.5, 0.0});
  CHECK(minmax_apply(scaler, rows[2], s) == std::vector<double>{1.0, 0.0});
  CHECK(minmax_apply(scaler, row(100.0 / 3.0, 5.0, {}, {}), s)[0] == 0.333);
  // Out of range stays out of range; absent is 0 before scaling.
  CHECK(minmax_apply(scaler, row(150.0, {}, {}, {}), s)[0] == 1.5);
  CHECK(minmax_apply(scaler, row({}, {}, {}, {}), s)[0] == 0.0);
  CHECK(minmax_apply(scaler, row(std::vector<double>{30, 20}, 5.0, {}, {}), s)[0] == 0.5);
}

TEST_CASE("one-hot encoding") {
  const auto s = small_schema();
  const std::vector<RawRow> rows{row(0.0, 0.0, std::string("0"), std::string("a")),
                                 row(0.0, 0.0, std::string("1"), std::string("b")),
                                 row(0.0, 0.0, std::string("1"), {})};
  const auto enc = ohe_fit(rows, s);
  CHECK(enc.categories[0] == std::vector<std::string>{"0", "1"});
  CHECK(enc.categories[1] == std::vector<std::string>{"a", "b"});
  CHECK(ohe_apply(enc, rows[1], s) == std::vector<int>{0, 1, 0, 1});
  CHECK(ohe_apply(enc, rows[2], s) == std::vector<int>{0, 1, -1, -1});
  CHECK(ohe_apply(enc, row(0.0, 0.0, std::string("1"), std::string("c")), s) ==
        std::vector<int>{0, 1, 0, 0});
}

TEST_CASE("preprocessor header and JSON") {
  const auto s = small_schema();
  const std::vector<RawRow> rows{row(1.0, 2.0, std::string("0"), std::string("a")),
                                 row(3.0, 4.0, std::string("1"), {})};
  const auto p = Preprocessor::fit(rows, s);
  CHECK(p.header() == std::vector<std::string>{"x", "y", "tcp.flags.syn=0", "tcp.flags.syn=1",
                                               "dns.flags.response=a", "Label"});
  const auto back = Preprocessor::from_json(p.to_json());
  CHECK(back.apply(rows) == p.apply(rows));
}

TEST_CASE("stratified split arithmetic") {
  std::vector<ClassLabel> labels(60, ClassLabel::Normal);
  labels.insert(labels.end(), 40, ClassLabel::DDoSFlooding);
  const auto r = stratified_split(labels, {0.6, 0.4}, 1);
  REQUIRE(r.subsets.size() == 2);
  std::size_t normal = 0, attack = 0;
  for (auto i : r.subsets[0]) (labels[i] == ClassLabel::Normal ? normal : attack)++;
  CHECK(normal == 36);
  CHECK(attack == 24);
  CHECK(r.subsets[1].size() == 40);
  CHECK(std::is_sorted(r.subsets[0].begin(), r.subsets[0].end()));
  CHECK(stratified_split(labels, {0.6, 0.4}, 1).subsets == r.subsets);
  CHECK(stratified_split(labels, {0.6, 0.4}, 2).subsets != r.subsets);
}

TEST_CASE("split edge cases") {
  std::vector<ClassLabel> labels(10, ClassLabel::Normal);
  labels.push_back(ClassLabel::DDoSLoris);
  const auto id = stratified_split(labels, {1.0}, 3);
  REQUIRE(id.subsets.size() == 1);
  CHECK(id.subsets[0].size() == labels.size());
  const auto three = stratified_split(labels, {0.5, 0.3, 0.2}, 3);
  CHECK_FALSE(three.warnings.empty());
  std::size_t total = 0;
  for (const auto& s : three.subsets) total += s.size();
  CHECK(total == labels.size());
  CHECK_THROWS_AS(stratified_split(labels, {0.5, 0.4}, 1), ParameterError);
  CHECK_THROWS_AS(stratified_split(labels, {1.2, -0.2}, 1), ParameterError);
}

TEST_CASE("split deviation property") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ClassLabel> labels;
    for (std::size_t i = 0; i < 50 + rng.below(500); ++i) {
      labels.push_back(kClassOrder[rng.below(kClassCount)]);
    }
    const std::vector<double> f{0.5, 0.3, 0.2};
    const auto r = stratified_split(labels, f, trial);
    for (auto cls : kClassOrder) {
      const auto n = std::count(labels.begin(), labels.end(), cls);
      for (std::size_t s = 0; s < 3; ++s) {
        const auto got = std::count_if(r.subsets[s].begin(), r.subsets[s].end(),
                                       [&](std::size_t i) { return labels[i] == cls; });
        CHECK(std::abs(static_cast<double>(got) - static_cast<double>(n) * f[s]) <= 1.0);
      }
    }
  }
}

TEST_CASE("feature CSV round trip") {
  const auto& schema = FeatureSchema::canonical();
  SplitMix64 rng(8);
  std::vector<RawRow> raw;
  for (int i = 0; i < 1000; ++i) {
    RawRow r;
    r.values.resize(schema.features().size());
    for (std::size_t c = 0; c < schema.minmax_names().size(); ++c) {
      if (rng.chance(0.7)) r.values[c] = std::floor(rng.uniform(0, 1500));
    }
    for (std::size_t c = schema.minmax_names().size(); c < schema.features().size(); ++c) {
      if (rng.chance(0.5)) r.values[c] = std::to_string(rng.below(3));
    }
    r.cls = kClassOrder[rng.below(kClassCount)];
    raw.push_back(r);
  }
  const auto p = Preprocessor::fit(raw, schema);
  const auto rows = p.apply(raw);
  std::stringstream s;
  write_feature_csv(s, p.header(), rows);
  const auto table = read_feature_csv(s, schema);
  CHECK(table.header == p.header());
  CHECK(table.header.back() == "Label");
  CHECK(table.rows == rows);

  std::stringstream empty;
  write_feature_csv(empty, p.header(), {});
  const std::string text = empty.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(read_feature_csv(empty, schema).rows.empty());

  std::istringstream bad("x,y,Label\n0,0,Normal\n");
  CHECK_THROWS_AS(read_feature_csv(bad, schema), SchemaError);
}

TEST_CASE("dataset fits on the training split only") {
  const auto s = small_schema();
  std::vector<RawRow> rows;
  for (int i = 0; i < 100; ++i) {
    rows.push_back(row(static_cast<double>(i), 1.0, std::string(i % 2 ? "1" : "0"), {},
                       i < 60 ? ClassLabel::Normal : ClassLabel::DDoSLoris));
  }
  const auto ds = build_dataset(rows, s, {{0.6, 0.4}, 5});
  REQUIRE(ds.splits.size() == 2);
  CHECK(ds.splits[0].size() == 60);
  CHECK(ds.splits[1].size() == 40);
  for (const auto& r : ds.splits[0]) {
    CHECK(r.minmax[0] >= 0.0);
    CHECK(r.minmax[0] <= 1.0);
  }
  const auto dir = std::filesystem::temp_directory_path() / "h3lab_dataset_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto paths = write_dataset(ds, dir);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].filename() == "train.csv");
  CHECK(paths[1].filename() == "test.csv");
  CHECK(std::filesystem::exists(dir / "preprocessor.json"));
  std::filesystem::remove_all(dir);
}
