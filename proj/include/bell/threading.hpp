// Copyright 2026 The toric-bell Authors
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

#ifndef BELL_THREADING_HPP
#define BELL_THREADING_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace bell {

/// requested > 0 wins, else BELL_THREADS, else hardware concurrency.
inline int resolve_thread_count(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("BELL_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs f(chunk) for chunk in [0, n_chunks) across at most `threads` workers.
/// Chunks are independent; results must be combined by chunk index afterwards
/// so the outcome does not depend on scheduling.
template <typename F>
void parallel_chunks(int n_chunks, int threads, F&& f) {
    if (threads <= 1 || n_chunks <= 1) {
        for (int c = 0; c < n_chunks; ++c) {
            f(c);
        }
        return;
    }
    std::vector<std::thread> pool;
    int workers = std::min(threads, n_chunks);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int c = w; c < n_chunks; c += workers) {
                f(c);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace bell

#endif
