// Copyright 2026 The shallowsep Authors
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

#ifndef SHALLOWSEP_IO_H
#define SHALLOWSEP_IO_H

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace spdlog {
class logger;
}

namespace shallowsep {

/// File system failure: unreadable input or unwritable output.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path);

/// Writes to a temporary file next to path and renames it over path, so readers never see a partial file.
void write_file_atomic(const std::string &path, const std::string &content);

/// Comma-separated table with a header row. Fields are unquoted, as in every CSV this library writes.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a named column. Throws std::invalid_argument if absent.
    size_t column(const std::string &name) const;
};

/// Throws std::invalid_argument on an empty text or a row whose width differs from the header.
CsvTable parse_csv(const std::string &text);

/// Shared stderr logger. Its level comes from SHALLOWSEP_LOG (trace, debug, info, warn, error, off), default warn.
std::shared_ptr<spdlog::logger> log();

}  // namespace shallowsep

#endif
