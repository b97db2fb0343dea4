// Copyright 2026 The dpa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpa/protocol.hpp"

#include <array>

namespace dpa {
namespace {

using nlohmann::json;

constexpr std::array<const char*, 6> kKindNames = {
    "freq_query", "freq_reply",  "vote_query",
    "vote_reply", "model_query", "model_reply"};

constexpr std::array<const char*, 9> kAllowedFields = {
    "kind", "run_id", "round", "attrs", "epsilon",
    "counts", "pair", "model", "n_j"};

}  // namespace

std::string to_string(MessageKind kind) {
  return kKindNames.at(static_cast<size_t>(kind));
}

MessageKind message_kind_from_string(const std::string& s) {
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (s == kKindNames[i]) return static_cast<MessageKind>(i);
  }
  throw ProtocolError("unknown message kind '" + s + "'");
}

bool ProtocolMessage::is_refusal() const {
  switch (kind) {
    case MessageKind::freq_reply:
      return !counts.has_value();
    case MessageKind::vote_reply:
      return !pair.has_value();
    case MessageKind::model_reply:
      return !model.has_value();
    default:
      return false;
  }
}

std::string ProtocolMessage::to_line() const {
  json doc;
  doc["kind"] = to_string(kind);
  doc["run_id"] = run_id;
  if (round) doc["round"] = *round;
  if (attrs) doc["attrs"] = *attrs;
  if (epsilon) doc["epsilon"] = *epsilon;
  if (counts) doc["counts"] = *counts;
  if (pair) {
    doc["pair"] = {{"child", pair->child}, {"parents", pair->parents}};
  }
  if (model) doc["model"] = *model;
  if (n_j) doc["n_j"] = *n_j;
  return doc.dump();
}

ProtocolMessage ProtocolMessage::from_line(const std::string& line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("malformed message: ") + e.what());
  }
  if (!doc.is_object()) throw ProtocolError("message is not an object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* field : kAllowedFields) known |= key == field;
    if (!known) {
      throw ProtocolError("message carries a field outside the protocol: '" +
                          key + "'");
    }
  }

  ProtocolMessage msg;
  msg.kind = message_kind_from_string(doc.at("kind").get<std::string>());
  msg.run_id = doc.at("run_id").get<std::string>();
  if (doc.contains("round")) msg.round = doc["round"].get<int64_t>();
  if (doc.contains("attrs")) {
    msg.attrs = doc["attrs"].get<std::vector<std::string>>();
  }
  if (doc.contains("epsilon")) msg.epsilon = doc["epsilon"].get<double>();
  if (doc.contains("counts")) {
    msg.counts = doc["counts"].get<std::vector<double>>();
  }
  if (doc.contains("pair")) {
    AttributePair pair;
    pair.child = doc["pair"].at("child").get<std::string>();
    pair.parents = doc["pair"].at("parents").get<std::vector<std::string>>();
    msg.pair = pair;
  }
  if (doc.contains("model")) msg.model = doc["model"];
  if (doc.contains("n_j")) msg.n_j = doc["n_j"].get<int64_t>();
  return msg;
}

}  // namespace dpa
