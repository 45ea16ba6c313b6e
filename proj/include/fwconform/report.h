// Copyright 2026 The fwconform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FWCONFORM_REPORT_H_
#define FWCONFORM_REPORT_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fwconform/campaign.h"

namespace fwconform {

enum class ReportFormat { kHuman, kMachine };

inline constexpr char kReportFormatName[] = "fwconform-report";
inline constexpr int kReportSchemaVersion = 1;

// Versioned JSON. Deterministic: equal reports give identical bytes.
// Documented in docs/report-format.md.
std::string ExportMachine(const Report& report);
// Inverse of ExportMachine. InvalidArgument on malformed input or an
// unsupported schema version.
absl::StatusOr<Report> ImportMachine(std::string_view text);

// Readable summary with per-criterion witnesses.
std::string RenderHuman(const Report& report);

std::string Export(const Report& report, ReportFormat format);

// IO errors are reported as Unavailable (write) and NotFound (read).
absl::Status WriteFile(const std::string& path, std::string_view contents);
absl::StatusOr<std::string> ReadFile(const std::string& path);

}  // namespace fwconform

#endif  // FWCONFORM_REPORT_H_
