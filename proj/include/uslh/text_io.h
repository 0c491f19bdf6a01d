// Copyright 2026 The USL-H Metric Authors
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
//

#ifndef USLH_TEXT_IO_H_
#define USLH_TEXT_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace uslh {

// Splits on every occurrence of `delim`; keeps empty fields.
std::vector<std::string> SplitFields(std::string_view line, char delim);

// Splits on runs of ASCII whitespace; drops empty fields.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

std::string_view TrimWhitespace(std::string_view text);

// Reads all lines; a trailing '\r' is stripped from each. Throws Error(kIo).
std::vector<std::string> ReadLines(const std::filesystem::path& path);
std::vector<std::string> ReadLines(std::istream& in);

void WriteTextFile(const std::filesystem::path& path, std::string_view text);

// Shortest decimal that round-trips the double exactly.
std::string FormatExact(double value);

// Fixed-point with `decimals` digits.
std::string FormatFixed(double value, int decimals);

double ParseDouble(std::string_view text);
long long ParseInt(std::string_view text);

}  // namespace uslh

#endif  // USLH_TEXT_IO_H_
