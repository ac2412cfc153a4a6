// Copyright 2026 The incidentqa Authors.
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

#include "incidentqa/io.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <system_error>

#include "incidentqa/error.hpp"

namespace incidentqa::io {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::StorageFailure, "cannot open " + path);
  }
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorCode::StorageFailure, "read failed: " + path);
  }
  return contents;
}

void write_file(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::StorageFailure, "cannot write " + tmp.string());
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
      throw Error(ErrorCode::StorageFailure, "write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    throw Error(ErrorCode::StorageFailure, "rename failed: " + path + ": " + ec.message());
  }
}

}  // namespace incidentqa::io
