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

#include <nlohmann/json.hpp>

#include "incidentqa/incident.hpp"

namespace incidentqa {

using ordered_json = nlohmann::ordered_json;

/// Canonical JSON object (field order fixed) for a record.
ordered_json record_to_json(const IncidentRecord& record);

/// Throws MalformedDocument, MissingRequiredField or UnknownField.
IncidentRecord record_from_json(const nlohmann::json& doc);

}  // namespace incidentqa
