#include "mulab/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace mulab {

void parallel_for_index(int count, int workers, const std::function<void(int)>& body) {
    if (count <= 0) return;
    workers = std::clamp(workers, 1, count);
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        int lo = int((long long)count * w / workers);
        int hi = int((long long)count * (w + 1) / workers);
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace mulab
