/* parallel.hpp -- a tiny deterministic fork-join helper. */

#ifndef DENDRO_PARALLEL_HPP_
#define DENDRO_PARALLEL_HPP_

#include <cstddef>
#include <thread>
#include <vector>

namespace dendro {

// apply fn to 0..count-1 on up to `jobs` threads; results land in order
template <typename Fn>
inline void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::size_t n = std::min(jobs, count);
    for (std::size_t w = 0; w < n; ++w)
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += n) fn(i);
        });
    for (auto& t : workers) t.join();
}

}  // namespace dendro

#endif  // DENDRO_PARALLEL_HPP_
