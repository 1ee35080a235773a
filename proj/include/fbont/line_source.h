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

#ifndef FBONT_LINE_SOURCE_H_
#define FBONT_LINE_SOURCE_H_

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

namespace fbont {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads text in whole-line blocks. Gzip input is detected from the magic
// bytes and decompressed transparently.
class LineSource {
 public:
  virtual ~LineSource() = default;

  // Opens a file, or standard input for "-". Throws IoError.
  static std::unique_ptr<LineSource> Open(const std::string &path);
  // In-memory source; data may itself be gzip-compressed.
  static std::unique_ptr<LineSource> FromString(std::string data);

  // Replaces *block with the next run of complete lines, at least
  // target_bytes long unless the input ends first. Every line in the block
  // ends with '\n' except possibly the last line of the input. Returns
  // false at end of input. Throws IoError.
  bool ReadBlock(std::string *block, size_t target_bytes);

  bool compressed() const { return compressed_; }

 protected:
  // Raw (decompressed) byte read; returns 0 at end of input, throws
  // IoError on failure.
  virtual size_t Read(char *buffer, size_t size) = 0;

  bool compressed_ = false;

 private:
  std::string pending_;
  bool eof_ = false;
};

}  // namespace fbont

#endif  // FBONT_LINE_SOURCE_H_
