#pragma once

// Deterministic seeded random streams for the Monte-Carlo oracles.
// splitmix64 expands a (seed, stream) pair into xoshiro256++ state; the
// stream chunking is fixed a priori by (total, stream_count), so estimates
// are bit-identical no matter how many threads execute the streams.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ordstat {

struct RNGSpec {
  std::uint64_t seed = 0;
  std::int64_t stream_count = 256;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t sm = seed ^ (0xA0761D6478BD642FULL * (stream + 1));
    for (auto& word : state_) word = splitmix64(sm);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double next_unit() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

// Sizes of the per-stream chunks: total split as evenly as possible, the
// remainder going to the leading streams.
inline std::vector<std::int64_t> stream_chunks(std::int64_t total, std::int64_t streams) {
  std::vector<std::int64_t> sizes(streams, total / streams);
  for (std::int64_t s = 0; s < total % streams; ++s) ++sizes[s];
  return sizes;
}

// Thread cap from ORDSTAT_THREADS (0 or unset means hardware concurrency).
inline int thread_cap() {
  const char* env = std::getenv("ORDSTAT_THREADS");
  if (env != nullptr) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(stream_index) for every stream, possibly in parallel.  Each stream
// writes only its own slot, so results are independent of the schedule.
template <typename Fn>
void run_streams(std::int64_t stream_count, Fn&& fn) {
  const int threads = std::min<std::int64_t>(thread_cap(), stream_count);
  if (threads <= 1) {
    for (std::int64_t s = 0; s < stream_count; ++s) fn(s);
    return;
  }
  std::atomic<std::int64_t> next_stream{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::int64_t s = next_stream.fetch_add(1); s < stream_count;
           s = next_stream.fetch_add(1))
        fn(s);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail
}  // namespace ordstat
