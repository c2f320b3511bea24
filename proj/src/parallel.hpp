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

#ifndef GPGREEKS_PARALLEL_HPP
#define GPGREEKS_PARALLEL_HPP

#include <exception>
#include <future>
#include <thread>
#include <vector>

namespace gpgreeks {

// Runs fn(i) for i in [0, n). Work items must be independent; outputs should
// be written into pre-sized slots indexed by i so the result is identical to
// a serial loop regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (n <= 1 || hw == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t n_workers = std::min<std::size_t>(hw, n);
    std::vector<std::future<void>> futs;
    futs.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < n; i += n_workers) fn(i);
        }));
    }
    std::exception_ptr err;
    for (auto& f : futs) {
        try {
            f.get();
        } catch (...) {
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace gpgreeks

#endif
