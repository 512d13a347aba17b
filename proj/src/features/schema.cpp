#include "h3lab/features/schema.hpp"

#include <fstream>
#include <set>

#include "h3lab/common/error.hpp"

namespace h3lab::features {

std::string_view to_string(FeatureKind kind) noexcept {
  return kind == FeatureKind::ohe ? "ohe" : "minmax";
}

FeatureSchema::FeatureSchema(std::vector<FeatureSpec> features) : features_(std::move(features)) {
  std::set<std::string> seen;
  for (const auto& f : features_) {
    if (f.name.empty() || f.name == kLabelColumn) throw SchemaError("invalid feature name");
    if (!seen.insert(f.name).second) throw SchemaError("duplicate feature: " + f.name);
    if (f.kind == FeatureKind::minmax) {
      if (!ohe_.empty()) throw SchemaError("minmax feature after ohe: " + f.name);
      minmax_.push_back(f.name);
    } else {
      ohe_.push_back(f.name);
    }
  }
}

const FeatureSchema& FeatureSchema::canonical() {
  static const FeatureSchema schema = [] {
    const std::vector<std::string> minmax{
        "frame.len",
        "ip.len",
        "tcp.len",
        "tcp.hdr_len",
        "tcp.window_size_value",
        "tcp.option_len",
        "udp.length",
        "tls.record.length",
        "tls.reassembled.length",
        "tls.handshake.length",
        "tls.handshake.certificates_length",
        "tls.handshake.certificate_length",
        "tls.handshake.session_id_length",
        "tls.handshake.cipher_suites_length",
        "tls.handshake.extensions_length",
        "tls.handshake.client_cert_vrfy.sig_len",
        "quic.packet_length",
        "quic.packet_number_length",
        "quic.length",
        "quic.nci.connection_id.length",
        "quic.crypto.length",
        "quic.stream.len",
        "quic.token_length",
        "quic.padding_length",
        "http2.length",
        "http2.header.length",
        "http2.header.name.length",
        "http2.header.value.length",
        "http2.headers.content_length",
        "http3.frame_length",
        "http3.settings.qpack.max_table_capacity",
        "http3.settings.max_field_section_size",
        "dns.count.queries",
        "dns.count.answers",
        "http.content_length",
    };
    const std::vector<std::string> ohe{
        "tcp.flags.ack",   "tcp.flags.push",        "tcp.flags.reset", "tcp.flags.syn",
        "tcp.flags.fin",   "quic.long.packet_type", "quic.fixed_bit",  "quic.spin_bit",
        "quic.stream.fin", "dns.flags.response",    "http.content_type",
    };
    std::vector<FeatureSpec> specs;
    for (const auto& n : minmax) specs.push_back({n, FeatureKind::minmax});
    for (const auto& n : ohe) specs.push_back({n, FeatureKind::ohe});
    return FeatureSchema(std::move(specs));
  }();
  return schema;
}

std::optional<std::size_t> FeatureSchema::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  return std::nullopt;
}

nlohmann::json FeatureSchema::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : features_) arr.push_back({{"name", f.name}, {"kind", to_string(f.kind)}});
  return {{"features", std::move(arr)}, {"label", kLabelColumn}};
}

FeatureSchema FeatureSchema::from_json(const nlohmann::json& j) {
  try {
    std::vector<FeatureSpec> specs;
    for (const auto& f : j.at("features")) {
      const auto kind = f.at("kind").get<std::string>();
      if (kind != "minmax" && kind != "ohe") throw SchemaError("unknown feature kind: " + kind);
      specs.push_back({f.at("name").get<std::string>(),
                       kind == "ohe" ? FeatureKind::ohe : FeatureKind::minmax});
    }
    return FeatureSchema(std::move(specs));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad schema: ") + e.what());
  }
}

nlohmann::json canonical_registry() {
  return {{"schemas", {{"canonical", FeatureSchema::canonical().to_json()}}}};
}

FeatureSchema load_schema(const std::filesystem::path& registry, const std::string& name) {
  if (registry.empty() && name == "canonical") return FeatureSchema::canonical();
  std::ifstream in(registry);
  if (!in) throw SchemaError("cannot open schema registry " + registry.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("schema registry is not JSON: ") + e.what());
  }
  if (!j.contains("schemas") || !j["schemas"].contains(name)) {
    if (name == "canonical") return FeatureSchema::canonical();
    throw SchemaError("schema '" + name + "' not in registry");
  }
  return FeatureSchema::from_json(j["schemas"][name]);
}

}  // namespace h3lab::features
