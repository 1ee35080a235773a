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

#include "fbont/line_source.h"

#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <climits>
#include <cstring>

namespace fbont {

namespace {

constexpr size_t kReadSize = 1 << 18;

bool HasGzipMagic(const std::string &data) {
  return data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f &&
         static_cast<unsigned char>(data[1]) == 0x8b;
}

// zlib's gz* layer sniffs the gzip header itself and falls back to plain
// reads for anything else.
class GzFileSource : public LineSource {
 public:
  GzFileSource(gzFile file, std::string name)
      : file_(file), name_(std::move(name)) {
    gzbuffer(file_, kReadSize);
    compressed_ = gzdirect(file_) == 0;
  }
  ~GzFileSource() override { gzclose(file_); }

 protected:
  size_t Read(char *buffer, size_t size) override {
    int n = gzread(file_, buffer,
                   static_cast<unsigned>(std::min<size_t>(size, INT_MAX)));
    if (n < 0) {
      int code = 0;
      const char *msg = gzerror(file_, &code);
      throw IoError(name_ + ": " + (msg ? msg : "read error"));
    }
    if (n == 0) {
      // gzread tolerates a truncated member and just reports end of input.
      int code = Z_OK;
      gzerror(file_, &code);
      if (code == Z_BUF_ERROR) throw IoError(name_ + ": truncated gzip input");
    }
    return static_cast<size_t>(n);
  }

 private:
  gzFile file_;
  std::string name_;
};

class MemorySource : public LineSource {
 public:
  explicit MemorySource(std::string data) {
    if (HasGzipMagic(data)) {
      compressed_ = true;
      data_ = Inflate(data);
    } else {
      data_ = std::move(data);
    }
  }

 protected:
  size_t Read(char *buffer, size_t size) override {
    size_t n = std::min(size, data_.size() - pos_);
    std::memcpy(buffer, data_.data() + pos_, n);
    pos_ += n;
    return n;
  }

 private:
  static std::string Inflate(const std::string &in) {
    z_stream zs{};
    // 15 + 32: any window size, auto-detect zlib or gzip header.
    if (inflateInit2(&zs, 15 + 32) != Z_OK) throw IoError("inflateInit failed");
    zs.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(in.data()));
    zs.avail_in = static_cast<uInt>(in.size());
    std::string out;
    char buffer[1 << 15];
    int rc = Z_OK;
    while (true) {
      zs.next_out = reinterpret_cast<Bytef *>(buffer);
      zs.avail_out = sizeof(buffer);
      rc = inflate(&zs, Z_NO_FLUSH);
      out.append(buffer, sizeof(buffer) - zs.avail_out);
      if (rc == Z_STREAM_END) {
        // Concatenated gzip members.
        if (zs.avail_in == 0) break;
        inflateReset(&zs);
        continue;
      }
      if (rc != Z_OK) break;
    }
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw IoError("corrupt or truncated gzip data");
    return out;
  }

  std::string data_;
  size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<LineSource> LineSource::Open(const std::string &path) {
  gzFile file = nullptr;
  if (path == "-") {
    int fd = dup(STDIN_FILENO);
    if (fd >= 0) file = gzdopen(fd, "rb");
  } else {
    file = gzopen(path.c_str(), "rb");
  }
  if (file == nullptr) {
    throw IoError(path + ": " + std::strerror(errno));
  }
  return std::make_unique<GzFileSource>(file, path);
}

std::unique_ptr<LineSource> LineSource::FromString(std::string data) {
  return std::make_unique<MemorySource>(std::move(data));
}

bool LineSource::ReadBlock(std::string *block, size_t target_bytes) {
  block->clear();
  block->swap(pending_);
  while (!eof_) {
    size_t last_newline = block->rfind('\n');
    if (last_newline != std::string::npos && last_newline + 1 >= target_bytes) {
      pending_.assign(*block, last_newline + 1);
      block->resize(last_newline + 1);
      return true;
    }
    size_t old = block->size();
    block->resize(old + kReadSize);
    size_t n = Read(block->data() + old, kReadSize);
    block->resize(old + n);
    if (n == 0) eof_ = true;
  }
  return !block->empty();
}

}  // namespace fbont
