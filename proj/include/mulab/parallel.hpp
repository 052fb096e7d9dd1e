#pragma once

#include <functional>

namespace mulab {

// Runs body(i) for every i in [0, count) across `workers` threads, each
// thread owning a contiguous index range. Callers keep results deterministic
// by writing into per-index slots and reducing sequentially afterwards, so
// the outcome never depends on the worker count.
void parallel_for_index(int count, int workers, const std::function<void(int)>& body);

}  // namespace mulab
