// Copyright 2026 The fairgap Authors.
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

#ifndef FAIRGAP_TOOLS_UTIL_HPP_
#define FAIRGAP_TOOLS_UTIL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fairgap::tools {

// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

// Writes via a sibling temp file plus rename, so readers never observe a
// half-written artifact. Creates missing parent directories.
void atomic_write(const std::string& path, const std::string& content);

// Shortest round-trip decimal form, matching the report CSV writer.
std::string format_double(double value);

// FNV-1a over a byte string, the digest behind manifest ids.
std::uint64_t fnv1a64(const std::string& bytes);

std::string to_hex(std::uint64_t value);

// Resolves a --positive-class argument against the class list: first as
// an exact class name, then as a decimal index. Empty means unset.
std::optional<int> parse_positive_class(const std::string& arg,
                                        const std::vector<std::string>& classes);

}  // namespace fairgap::tools

#endif  // FAIRGAP_TOOLS_UTIL_HPP_
