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

#include "fbont/parser.h"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "fbont/ntriples.h"

namespace fbont {

// ---------------------------------------------------------------------------
// Lexical helpers.

std::string EscapeLiteral(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 8);
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void AppendUtf8(char32_t cp, std::string *out) {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

namespace {

std::optional<char32_t> ParseHex(std::string_view digits) {
  char32_t value = 0;
  for (char c : digits) {
    value <<= 4;
    if (c >= '0' && c <= '9') value |= c - '0';
    else if (c >= 'a' && c <= 'f') value |= c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') value |= c - 'A' + 10;
    else return std::nullopt;
  }
  return value;
}

// Length of the valid UTF-8 sequence starting at s[i], or 0 if invalid.
size_t Utf8SequenceLength(std::string_view s, size_t i) {
  auto byte = [&](size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char c = byte(i);
  if (c < 0x80) return 1;
  size_t len;
  char32_t min;
  if ((c & 0xE0) == 0xC0) {
    len = 2;
    min = 0x80;
  } else if ((c & 0xF0) == 0xE0) {
    len = 3;
    min = 0x800;
  } else if ((c & 0xF8) == 0xF0) {
    len = 4;
    min = 0x10000;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  char32_t cp = c & (0xFF >> (len + 1));
  for (size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (byte(i + k) & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

}  // namespace

std::string UnescapeLiteral(std::string_view text, size_t *unknown_escapes) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  auto keep_verbatim = [&](size_t len) {
    out.append(text.substr(i, len));
    if (unknown_escapes) ++*unknown_escapes;
    i += len;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c != '\\') {
      out += c;
      ++i;
      continue;
    }
    if (i + 1 >= text.size()) {
      keep_verbatim(1);
      continue;
    }
    char e = text[i + 1];
    switch (e) {
      case 't': out += '\t'; i += 2; continue;
      case 'b': out += '\b'; i += 2; continue;
      case 'n': out += '\n'; i += 2; continue;
      case 'r': out += '\r'; i += 2; continue;
      case 'f': out += '\f'; i += 2; continue;
      case '"': out += '"'; i += 2; continue;
      case '\'': out += '\''; i += 2; continue;
      case '\\': out += '\\'; i += 2; continue;
      case 'u':
      case 'U': {
        size_t digits = e == 'u' ? 4 : 8;
        std::optional<char32_t> cp;
        if (i + 2 + digits <= text.size()) {
          cp = ParseHex(text.substr(i + 2, digits));
        }
        if (cp) {
          AppendUtf8(*cp, &out);
          i += 2 + digits;
        } else {
          keep_verbatim(2);
        }
        continue;
      }
      default:
        keep_verbatim(2);
    }
  }
  return out;
}

std::string FormatLiteral(const Literal &literal) {
  std::string out = "\"" + EscapeLiteral(literal.lexical) + "\"";
  if (literal.language) {
    out += "@" + *literal.language;
  } else if (literal.datatype) {
    out += "^^<" + literal.datatype->iri() + ">";
  }
  return out;
}

size_t SanitizeUtf8(std::string *text) {
  std::string_view s(*text);
  size_t i = 0;
  while (i < s.size()) {
    size_t len = Utf8SequenceLength(s, i);
    if (len == 0) break;
    i += len;
  }
  if (i == s.size()) return 0;

  std::string out(s.substr(0, i));
  size_t replaced = 0;
  while (i < s.size()) {
    size_t len = Utf8SequenceLength(s, i);
    if (len == 0) {
      AppendUtf8(0xFFFD, &out);
      ++replaced;
      ++i;
    } else {
      out.append(s.substr(i, len));
      i += len;
    }
  }
  text->swap(out);
  return replaced;
}

bool IsValidUtf8(std::string_view text) {
  for (size_t i = 0; i < text.size();) {
    size_t len = Utf8SequenceLength(text, i);
    if (len == 0) return false;
    i += len;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Line parsing.

std::string_view ReasonName(Malformed reason) {
  switch (reason) {
    case Malformed::kNoTriple: return "no-triple";
    case Malformed::kFieldCount: return "field-count";
    case Malformed::kMissingTerminator: return "missing-terminator";
    case Malformed::kUnbalancedQuote: return "unbalanced-quote";
    case Malformed::kUnbalancedBracket: return "unbalanced-bracket";
    case Malformed::kLiteralSubject: return "literal-subject";
    case Malformed::kLiteralPredicate: return "literal-predicate";
    case Malformed::kBlankNode: return "blank-node";
    case Malformed::kBadTerm: return "bad-term";
    case Malformed::kBadLiteral: return "bad-literal";
  }
  return "unknown";
}

namespace {

enum class TokenKind { kIri, kLiteral, kBlank, kDot, kBare };

struct Token {
  TokenKind kind;
  std::string_view text;  // IRI without brackets; literal with quotes
};

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool IsLangChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '-';
}

// Splits a line into terms. Whitespace separates terms except inside
// quoted literals and angle brackets, so tab-separated dump lines and
// hand-written space-separated lines go through the same path.
std::variant<std::vector<Token>, Malformed> Tokenize(std::string_view line) {
  std::vector<Token> tokens;
  size_t i = 0;
  const size_t n = line.size();
  while (true) {
    while (i < n && IsSpace(line[i])) ++i;
    if (i >= n) break;
    char c = line[i];
    if (c == '#') break;
    if (c == '<') {
      size_t close = line.find('>', i + 1);
      if (close == std::string_view::npos) return Malformed::kUnbalancedBracket;
      tokens.push_back({TokenKind::kIri, line.substr(i + 1, close - i - 1)});
      i = close + 1;
    } else if (c == '"') {
      size_t j = i + 1;
      while (j < n && line[j] != '"') j += line[j] == '\\' ? 2 : 1;
      if (j >= n) return Malformed::kUnbalancedQuote;
      ++j;
      if (j < n && line[j] == '@') {
        size_t k = j + 1;
        while (k < n && IsLangChar(line[k])) ++k;
        if (k == j + 1) return Malformed::kBadLiteral;
        j = k;
      } else if (j + 1 < n && line[j] == '^' && line[j + 1] == '^') {
        if (j + 2 >= n || line[j + 2] != '<') return Malformed::kBadLiteral;
        size_t close = line.find('>', j + 3);
        if (close == std::string_view::npos) {
          return Malformed::kUnbalancedBracket;
        }
        j = close + 1;
      }
      tokens.push_back({TokenKind::kLiteral, line.substr(i, j - i)});
      i = j;
    } else if (c == '.' && (i + 1 >= n || IsSpace(line[i + 1]) ||
                            line[i + 1] == '#')) {
      tokens.push_back({TokenKind::kDot, line.substr(i, 1)});
      ++i;
    } else {
      size_t j = i;
      while (j < n && !IsSpace(line[j])) ++j;
      std::string_view text = line.substr(i, j - i);
      bool blank = text.starts_with("_:");
      tokens.push_back({blank ? TokenKind::kBlank : TokenKind::kBare, text});
      i = j;
    }
  }
  return tokens;
}

std::optional<Literal> MakeLiteral(std::string_view text, LineLint *lint) {
  // text is "..." optionally followed by @lang or ^^<iri>.
  size_t close = 1;
  while (text[close] != '"') close += text[close] == '\\' ? 2 : 1;
  Literal literal;
  size_t unknown = 0;
  literal.lexical = UnescapeLiteral(text.substr(1, close - 1), &unknown);
  if (lint) lint->unknown_escapes += unknown;
  std::string_view suffix = text.substr(close + 1);
  if (suffix.starts_with("@")) {
    literal.language = std::string(suffix.substr(1));
  } else if (suffix.starts_with("^^<")) {
    std::string_view iri = suffix.substr(3, suffix.size() - 4);
    if (iri.empty()) return std::nullopt;
    literal.datatype = ExternalIri(std::string(iri));
  }
  return literal;
}

}  // namespace

LineResult ParseLine(std::string_view line, const Namespace &ns,
                     LineLint *lint) {
  auto lexed = Tokenize(line);
  if (auto *reason = std::get_if<Malformed>(&lexed)) return *reason;
  auto &tokens = std::get<std::vector<Token>>(lexed);

  if (tokens.empty()) return Malformed::kNoTriple;
  if (tokens.back().kind == TokenKind::kDot) {
    tokens.pop_back();
    if (tokens.size() != 3) return Malformed::kFieldCount;
  } else {
    bool all_terms = tokens.size() == 3 &&
                     std::none_of(tokens.begin(), tokens.end(), [](auto &t) {
                       return t.kind == TokenKind::kBare ||
                              t.kind == TokenKind::kDot;
                     });
    return all_terms ? Malformed::kMissingTerminator : Malformed::kFieldCount;
  }

  for (const Token &t : tokens) {
    if (t.kind == TokenKind::kBlank) return Malformed::kBlankNode;
    if (t.kind == TokenKind::kBare || t.kind == TokenKind::kDot) {
      return Malformed::kBadTerm;
    }
    if (t.kind == TokenKind::kIri && t.text.empty()) return Malformed::kBadTerm;
  }
  if (tokens[0].kind == TokenKind::kLiteral) return Malformed::kLiteralSubject;
  if (tokens[1].kind == TokenKind::kLiteral) return Malformed::kLiteralPredicate;

  Triple triple;
  triple.subject = NormalizeIri(tokens[0].text, ns);
  triple.predicate = NormalizeIri(tokens[1].text, ns);
  if (tokens[2].kind == TokenKind::kIri) {
    triple.object = NormalizeIri(tokens[2].text, ns);
  } else {
    auto literal = MakeLiteral(tokens[2].text, lint);
    if (!literal) return Malformed::kBadLiteral;
    triple.object = std::move(*literal);
  }
  if (lint) {
    lint->nonstandard_ids += !triple.subject.is_canonical();
    lint->nonstandard_ids += !triple.predicate.is_canonical();
    if (auto *ref = triple.object_ref()) lint->nonstandard_ids += !ref->is_canonical();
  }
  return triple;
}

std::string SerializeTriple(const Triple &triple, const Namespace &ns) {
  std::string out;
  out += '<';
  out += DenormalizeIri(triple.subject, ns);
  out += ">\t<";
  out += DenormalizeIri(triple.predicate, ns);
  out += ">\t";
  if (const auto *ref = triple.object_ref()) {
    out += '<';
    out += DenormalizeIri(*ref, ns);
    out += '>';
  } else {
    out += FormatLiteral(*triple.object_literal());
  }
  out += "\t.";
  return out;
}

// ---------------------------------------------------------------------------
// Reports and sinks.

void ParseReport::RecordError(uint64_t line, Malformed reason,
                              size_t max_errors) {
  ++lines_malformed;
  if (first_errors.size() < max_errors) {
    first_errors.push_back({line, std::string(ReasonName(reason))});
  }
}

void ParseReport::Merge(const ParseReport &other, size_t max_errors) {
  lines_read += other.lines_read;
  triples_ok += other.triples_ok;
  lines_malformed += other.lines_malformed;
  unknown_escapes += other.unknown_escapes;
  invalid_utf8 += other.invalid_utf8;
  nonstandard_ids += other.nonstandard_ids;
  std::vector<ParseError> merged;
  merged.reserve(first_errors.size() + other.first_errors.size());
  std::merge(first_errors.begin(), first_errors.end(),
             other.first_errors.begin(), other.first_errors.end(),
             std::back_inserter(merged));
  if (merged.size() > max_errors) merged.resize(max_errors);
  first_errors = std::move(merged);
}

TeeSink::TeeSink(std::vector<TripleSink *> sinks) : sinks_(std::move(sinks)) {}

void TeeSink::Consume(const Triple &triple) {
  for (auto *sink : sinks_) sink->Consume(triple);
}

std::unique_ptr<TripleSink> TeeSink::Fork() const {
  std::vector<std::unique_ptr<TripleSink>> forks;
  std::vector<TripleSink *> raw;
  for (auto *sink : sinks_) {
    forks.push_back(sink->Fork());
    raw.push_back(forks.back().get());
  }
  auto tee = std::make_unique<TeeSink>(std::move(raw));
  tee->owned_ = std::move(forks);
  return tee;
}

void TeeSink::Absorb(TripleSink &part) {
  auto &other = static_cast<TeeSink &>(part);
  for (size_t i = 0; i < sinks_.size(); ++i) sinks_[i]->Absorb(*other.sinks_[i]);
}

void CollectSink::Absorb(TripleSink &part) {
  auto &other = static_cast<CollectSink &>(part);
  triples_.insert(triples_.end(),
                  std::make_move_iterator(other.triples_.begin()),
                  std::make_move_iterator(other.triples_.end()));
  other.triples_.clear();
}

// ---------------------------------------------------------------------------
// Stream driver.

void ParseBlock(std::string_view block, uint64_t first_line,
                const StreamOptions &options, TripleSink &sink,
                ParseReport *report) {
  uint64_t line_number = first_line;
  std::string scratch;
  size_t start = 0;
  while (start < block.size()) {
    size_t end = block.find('\n', start);
    if (end == std::string_view::npos) end = block.size();
    std::string_view line = block.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!IsValidUtf8(line)) {
      scratch.assign(line);
      report->invalid_utf8 += SanitizeUtf8(&scratch);
      line = scratch;
    }

    ++report->lines_read;
    LineLint lint;
    LineResult result = ParseLine(line, options.ns, &lint);
    report->unknown_escapes += lint.unknown_escapes;
    report->nonstandard_ids += lint.nonstandard_ids;
    if (auto *triple = std::get_if<Triple>(&result)) {
      ++report->triples_ok;
      sink.Consume(*triple);
    } else {
      report->RecordError(line_number, std::get<Malformed>(result),
                          options.max_errors);
    }
    ++line_number;
  }
}

namespace {

uint64_t CountLines(std::string_view block) {
  if (block.empty()) return 0;
  uint64_t n = std::count(block.begin(), block.end(), '\n');
  return block.back() == '\n' ? n : n + 1;
}

ParseReport StreamSerial(LineSource &source, TripleSink &sink,
                         const StreamOptions &options) {
  ParseReport report;
  std::string block;
  uint64_t next_line = options.first_line;
  try {
    while (source.ReadBlock(&block, options.chunk_bytes)) {
      ParseReport part;
      ParseBlock(block, next_line, options, sink, &part);
      next_line += part.lines_read;
      report.Merge(part, options.max_errors);
    }
  } catch (const std::exception &e) {
    throw StreamError(e.what(), report);
  }
  return report;
}

// Chunks are read on the calling thread, parsed on worker threads into
// forked sinks, and absorbed strictly in chunk order.
class ParallelDriver {
 public:
  ParallelDriver(LineSource &source, TripleSink &sink,
                 const StreamOptions &options)
      : source_(source), sink_(sink), options_(options),
        max_in_flight_(static_cast<size_t>(options.workers) * 2 + 2) {}

  ParseReport Run() {
    std::vector<std::thread> threads;
    for (int i = 0; i < options_.workers; ++i) {
      threads.emplace_back([this] { WorkerLoop(); });
    }
    ReadLoop();
    {
      std::lock_guard lock(mu_);
      done_reading_ = true;
    }
    work_cv_.notify_all();
    for (auto &t : threads) t.join();
    if (failure_) {
      std::string what = "stream failure";
      try {
        std::rethrow_exception(failure_);
      } catch (const std::exception &e) {
        what = e.what();
      } catch (...) {
      }
      throw StreamError(what, report_);
    }
    return report_;
  }

 private:
  struct Chunk {
    uint64_t index;
    uint64_t first_line;
    std::string data;
  };
  struct Result {
    std::unique_ptr<TripleSink> part;
    ParseReport report;
  };

  void ReadLoop() {
    uint64_t index = 0;
    uint64_t next_line = options_.first_line;
    try {
      while (true) {
        {
          std::unique_lock lock(mu_);
          space_cv_.wait(lock, [&] {
            return in_flight_ < max_in_flight_ || failure_ != nullptr;
          });
          if (failure_) return;
        }
        Chunk chunk{index, next_line, {}};
        if (!source_.ReadBlock(&chunk.data, options_.chunk_bytes)) return;
        next_line += CountLines(chunk.data);
        ++index;
        {
          std::lock_guard lock(mu_);
          ++in_flight_;
          queue_.push_back(std::move(chunk));
        }
        work_cv_.notify_one();
      }
    } catch (...) {
      Fail(std::current_exception());
    }
  }

  void WorkerLoop() {
    while (true) {
      Chunk chunk;
      {
        std::unique_lock lock(mu_);
        work_cv_.wait(lock, [&] {
          return !queue_.empty() || done_reading_ || failure_ != nullptr;
        });
        if (failure_ || queue_.empty()) return;
        chunk = std::move(queue_.front());
        queue_.pop_front();
      }
      Result result;
      try {
        result.part = sink_.Fork();
        ParseBlock(chunk.data, chunk.first_line, options_, *result.part,
                   &result.report);
      } catch (...) {
        Fail(std::current_exception());
        return;
      }
      {
        std::lock_guard lock(mu_);
        ready_.emplace(chunk.index, std::move(result));
      }
      Commit();
    }
  }

  // Absorbs every consecutive ready chunk. Only one thread commits at a
  // time.
  void Commit() {
    std::lock_guard commit_lock(commit_mu_);
    while (true) {
      Result result;
      {
        std::lock_guard lock(mu_);
        auto it = ready_.find(next_commit_);
        if (it == ready_.end() || failure_) return;
        result = std::move(it->second);
        ready_.erase(it);
      }
      try {
        sink_.Absorb(*result.part);
      } catch (...) {
        Fail(std::current_exception());
        return;
      }
      report_.Merge(result.report, options_.max_errors);
      {
        std::lock_guard lock(mu_);
        ++next_commit_;
        --in_flight_;
      }
      space_cv_.notify_one();
    }
  }

  void Fail(std::exception_ptr e) {
    {
      std::lock_guard lock(mu_);
      if (!failure_) failure_ = e;
    }
    work_cv_.notify_all();
    space_cv_.notify_all();
  }

  LineSource &source_;
  TripleSink &sink_;
  const StreamOptions &options_;
  const size_t max_in_flight_;

  std::mutex mu_;
  std::condition_variable work_cv_;
  std::condition_variable space_cv_;
  std::deque<Chunk> queue_;
  std::map<uint64_t, Result> ready_;
  size_t in_flight_ = 0;
  bool done_reading_ = false;
  std::exception_ptr failure_;

  std::mutex commit_mu_;
  uint64_t next_commit_ = 0;
  ParseReport report_;  // guarded by commit_mu_
};

}  // namespace

ParseReport StreamParse(LineSource &source, TripleSink &sink,
                        const StreamOptions &options) {
  if (options.workers <= 1) return StreamSerial(source, sink, options);
  ParallelDriver driver(source, sink, options);
  return driver.Run();
}

}  // namespace fbont
