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

#include "incidentqa/error.hpp"

namespace incidentqa {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedDocument: return "malformed_document";
    case ErrorCode::MissingRequiredField: return "missing_required_field";
    case ErrorCode::UnknownField: return "unknown_field";
    case ErrorCode::HeaderMismatch: return "header_mismatch";
    case ErrorCode::EmptyInput: return "empty_input";
    case ErrorCode::KeyCollision: return "key_collision";
    case ErrorCode::InvalidFieldMap: return "invalid_field_map";
    case ErrorCode::UnparseableProviderOutput: return "unparseable_provider_output";
    case ErrorCode::UnrecognizedLabel: return "unrecognized_label";
    case ErrorCode::MissingVerdict: return "missing_verdict";
    case ErrorCode::KeyMismatch: return "key_mismatch";
    case ErrorCode::InvalidParams: return "invalid_params";
    case ErrorCode::EmptyCorpus: return "empty_corpus";
    case ErrorCode::IncompatibleVersion: return "incompatible_version";
    case ErrorCode::ChecksumMismatch: return "checksum_mismatch";
    case ErrorCode::StorageFailure: return "storage_failure";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::UnknownChunk: return "unknown_chunk";
    case ErrorCode::EmptyIndex: return "empty_index";
    case ErrorCode::ChunkExceedsBudget: return "chunk_exceeds_budget";
    case ErrorCode::EmptyRetrieval: return "empty_retrieval";
    case ErrorCode::SystemFailure: return "system_failure";
    case ErrorCode::ProviderUnavailable: return "provider_unavailable";
    case ErrorCode::InvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

ErrorFamily error_family(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidParams:
      return ErrorFamily::Usage;
    case ErrorCode::ProviderUnavailable:
    case ErrorCode::UnparseableProviderOutput:
    case ErrorCode::UnrecognizedLabel:
      return ErrorFamily::Provider;
    case ErrorCode::IncompatibleVersion:
    case ErrorCode::ChecksumMismatch:
    case ErrorCode::StorageFailure:
      return ErrorFamily::Storage;
    default:
      return ErrorFamily::Input;
  }
}

}  // namespace incidentqa
