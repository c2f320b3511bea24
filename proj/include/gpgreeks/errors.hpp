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

#ifndef GPGREEKS_ERRORS_HPP
#define GPGREEKS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gpgreeks {

/// Bad inputs, bad configuration, violated preconditions.
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Linear algebra gave up: Cholesky failed even after jitter escalation.
class IllConditioned : public std::runtime_error {
public:
    IllConditioned(const std::string& what, double attempted_jitter)
        : std::runtime_error(what), attempted_jitter_(attempted_jitter) {}
    double attempted_jitter() const { return attempted_jitter_; }

private:
    double attempted_jitter_;
};

/// Root finding found no admissible solution (e.g. implied vol outside
/// no-arbitrage bounds).
class NoSolution : public std::runtime_error {
public:
    explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gpgreeks

#endif
