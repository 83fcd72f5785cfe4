#pragma once

// Compensated summation and the fixed-grid parallel driver.
//
// Every reduction in the library follows the same contract: the index range
// is cut into segments of kSegmentLength, each segment is reduced on its own
// with a Neumaier accumulator, and the per-segment partials are folded in
// ascending segment order. The grid never depends on the thread count, so
// results are bit-identical for any number of workers.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace divisum {

constexpr std::int64_t kSegmentLength = std::int64_t{1} << 16;

class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    NeumaierSum& operator+=(double x) {
        add(x);
        return *this;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// 0 means "use DIVISUM_THREADS if set, else the hardware concurrency".
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DIVISUM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

// Runs body(i) for i in [0, count). Work is handed out dynamically, so body
// must only write to state owned by index i.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
}

inline std::size_t segment_count(std::int64_t lo, std::int64_t hi,
                                 std::int64_t length = kSegmentLength) {
    return hi <= lo ? 0 : static_cast<std::size_t>((hi - lo + length - 1) / length);
}

// Sum of term(n) over n in [lo, hi).
template <class Term>
double segmented_sum(std::int64_t lo, std::int64_t hi, unsigned threads, Term&& term,
                     std::int64_t length = kSegmentLength) {
    const std::size_t segs = segment_count(lo, hi, length);
    std::vector<double> partial(segs, 0.0);
    parallel_for(segs, threads, [&](std::size_t s) {
        const std::int64_t a = lo + static_cast<std::int64_t>(s) * length;
        const std::int64_t b = std::min(hi, a + length);
        NeumaierSum acc;
        for (std::int64_t n = a; n < b; ++n) acc.add(term(n));
        partial[s] = acc.value();
    });
    NeumaierSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

} // namespace divisum
