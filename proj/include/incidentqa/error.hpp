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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace incidentqa {

enum class ErrorCode {
  // incident_model
  MalformedDocument,
  MissingRequiredField,
  UnknownField,
  // ingest
  HeaderMismatch,
  EmptyInput,
  KeyCollision,
  InvalidFieldMap,
  UnparseableProviderOutput,
  // classify
  UnrecognizedLabel,
  MissingVerdict,
  KeyMismatch,
  // chunk_index
  InvalidParams,
  EmptyCorpus,
  IncompatibleVersion,
  ChecksumMismatch,
  StorageFailure,
  // retrieve
  DimensionMismatch,
  UnknownChunk,
  EmptyIndex,
  // answer
  ChunkExceedsBudget,
  EmptyRetrieval,
  // eval
  SystemFailure,
  // providers
  ProviderUnavailable,
  // generic configuration / argument problems
  InvalidArgument,
};

/// Stable snake_case identifier, used in HTTP error bodies and CLI output.
std::string_view error_code_name(ErrorCode code) noexcept;

/// Coarse error family; the CLI maps each family to an exit code.
enum class ErrorFamily { Usage, Input, Provider, Storage };

ErrorFamily error_family(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace incidentqa
