/*
 * Copyright 2026 The gpgreeks Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GPGREEKS_IO_HPP
#define GPGREEKS_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gpgreeks {

// Doubles are printed with %.17g so files round-trip bit-exactly.
std::string format_double(double v);

/// Write text to path atomically (temp file in the same directory + rename).
void atomic_write_text(const std::string& path, const std::string& text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);  // numeric columns only; "" and "nan" -> NaN

std::string read_text(const std::string& path);
bool file_exists(const std::string& path);
void ensure_dir(const std::string& path);

/// FNV-1a over a string key; used for cache file names.
std::uint64_t fnv1a(const std::string& key);

}  // namespace gpgreeks

#endif
