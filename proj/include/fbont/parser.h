// Copyright 2026 The fbont Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Streaming, fault-tolerant N-Triples reader.
//
// ParseLine turns one physical line into a Triple or a Malformed reason.
// StreamParse drives ParseLine over a LineSource and hands every
// well-formed triple to a TripleSink. With more than one worker the input
// is cut into line-aligned chunks that are parsed concurrently; each chunk
// goes into a forked sink and the forks are absorbed back in input order,
// so the result is identical for any worker count.

#ifndef FBONT_PARSER_H_
#define FBONT_PARSER_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fbont/line_source.h"
#include "fbont/model.h"

namespace fbont {

enum class Malformed {
  kNoTriple,           // blank or comment-only line
  kFieldCount,
  kMissingTerminator,
  kUnbalancedQuote,
  kUnbalancedBracket,
  kLiteralSubject,
  kLiteralPredicate,
  kBlankNode,
  kBadTerm,
  kBadLiteral,
};

std::string_view ReasonName(Malformed reason);

// Per-line lint counters filled in by ParseLine.
struct LineLint {
  size_t unknown_escapes = 0;
  size_t nonstandard_ids = 0;
};

using LineResult = std::variant<Triple, Malformed>;

// Parses one line (no trailing newline).
LineResult ParseLine(std::string_view line, const Namespace &ns = {},
                     LineLint *lint = nullptr);

// Tab-separated dump form: <s>\t<p>\t<o>\t.
std::string SerializeTriple(const Triple &triple, const Namespace &ns = {});

struct ParseError {
  uint64_t line = 0;
  std::string reason;

  auto operator<=>(const ParseError &) const = default;
  bool operator==(const ParseError &) const = default;
};

struct ParseReport {
  uint64_t lines_read = 0;
  uint64_t triples_ok = 0;
  uint64_t lines_malformed = 0;
  // Lint.
  uint64_t unknown_escapes = 0;
  uint64_t invalid_utf8 = 0;
  uint64_t nonstandard_ids = 0;
  // The earliest malformed lines, sorted by line number.
  std::vector<ParseError> first_errors;

  void RecordError(uint64_t line, Malformed reason, size_t max_errors);
  // Field-wise addition; first_errors becomes the max_errors smallest of the
  // union. Associative and commutative for a fixed max_errors.
  void Merge(const ParseReport &other, size_t max_errors);

  bool operator==(const ParseReport &) const = default;
};

// Consumer of parsed triples. Fork() returns an empty sink of the same kind
// for one chunk of input; Absorb() folds a filled fork back in. Absorb is
// always called from one thread at a time, in input order.
class TripleSink {
 public:
  virtual ~TripleSink() = default;
  virtual void Consume(const Triple &triple) = 0;
  virtual std::unique_ptr<TripleSink> Fork() const = 0;
  virtual void Absorb(TripleSink &part) = 0;
};

// Feeds one triple stream into several sinks.
class TeeSink : public TripleSink {
 public:
  explicit TeeSink(std::vector<TripleSink *> sinks);

  void Consume(const Triple &triple) override;
  std::unique_ptr<TripleSink> Fork() const override;
  void Absorb(TripleSink &part) override;

 private:
  std::vector<TripleSink *> sinks_;
  std::vector<std::unique_ptr<TripleSink>> owned_;
};

// Collects triples in input order; mostly useful in tests and small tools.
class CollectSink : public TripleSink {
 public:
  void Consume(const Triple &triple) override { triples_.push_back(triple); }
  std::unique_ptr<TripleSink> Fork() const override {
    return std::make_unique<CollectSink>();
  }
  void Absorb(TripleSink &part) override;

  const std::vector<Triple> &triples() const { return triples_; }
  std::vector<Triple> &mutable_triples() { return triples_; }

 private:
  std::vector<Triple> triples_;
};

struct StreamOptions {
  Namespace ns;
  size_t max_errors = 10;
  int workers = 1;
  size_t chunk_bytes = 1 << 20;
  // Line number assigned to the first line of the source.
  uint64_t first_line = 1;
};

// Raised on unrecoverable read or sink failures. partial holds the report
// for everything committed before the failure.
class StreamError : public std::runtime_error {
 public:
  StreamError(const std::string &what, ParseReport partial)
      : std::runtime_error(what), partial(std::move(partial)) {}
  ParseReport partial;
};

ParseReport StreamParse(LineSource &source, TripleSink &sink,
                        const StreamOptions &options = {});

// Parses a line-aligned block of text. Exposed for partitioned drivers that
// split the input themselves.
void ParseBlock(std::string_view block, uint64_t first_line,
                const StreamOptions &options, TripleSink &sink,
                ParseReport *report);

}  // namespace fbont

#endif  // FBONT_PARSER_H_
