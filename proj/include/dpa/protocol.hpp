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

#ifndef DPA_PROTOCOL_HPP
#define DPA_PROTOCOL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace dpa {

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MessageKind {
  freq_query,
  freq_reply,
  vote_query,
  vote_reply,
  model_query,
  model_reply,
};

std::string to_string(MessageKind kind);
MessageKind message_kind_from_string(const std::string& s);

struct AttributePair {
  std::string child;
  std::vector<std::string> parents;

  bool operator==(const AttributePair& other) const {
    return child == other.child && parents == other.parents;
  }
};

// One analyst<->holder message. The wire form is a single JSON line with
// exactly the fields {kind, run_id, round, attrs, epsilon, counts, pair,
// model, n_j}; absent optionals are omitted. Replies never carry raw rows:
// the codec rejects unknown fields, so the message surface is closed.
struct ProtocolMessage {
  MessageKind kind = MessageKind::freq_query;
  std::string run_id;
  std::optional<int64_t> round;
  std::optional<std::vector<std::string>> attrs;
  std::optional<double> epsilon;
  std::optional<std::vector<double>> counts;
  std::optional<AttributePair> pair;
  std::optional<nlohmann::json> model;
  std::optional<int64_t> n_j;

  // A reply whose payload field is omitted signals refusal (the holder's
  // budget ledger would be exceeded).
  bool is_refusal() const;

  std::string to_line() const;
  static ProtocolMessage from_line(const std::string& line);
};

// Request/reply channel to a set of holders. Every serialized line that
// crosses the channel is recorded, in order, in the transcript.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual size_t holder_count() const = 0;
  virtual ProtocolMessage exchange(size_t holder,
                                   const ProtocolMessage& query) = 0;
  const std::vector<std::string>& transcript() const { return transcript_; }

 protected:
  void record(const std::string& line) { transcript_.push_back(line); }

 private:
  std::vector<std::string> transcript_;
};

}  // namespace dpa

#endif  // DPA_PROTOCOL_HPP
