// Template implementation of scan_batches; included from sliced.hpp.

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <thread>

namespace modal::detail {

template <class MakeScratch, class Probe>
std::optional<Hit> scan_batches(std::uint64_t batch_count, unsigned threads,
                                MakeScratch make_scratch, Probe probe,
                                std::uint64_t* processed) {
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  constexpr std::uint64_t kChunk = 256;

  if (threads <= 1 || batch_count <= kChunk) {
    auto scratch = make_scratch();
    for (std::uint64_t b = 0; b < batch_count; ++b) {
      Lanes lanes = probe(scratch, b);
      if (lanes) {
        if (processed) *processed = b + 1;
        return Hit{b, static_cast<unsigned>(std::countr_zero(lanes))};
      }
    }
    if (processed) *processed = batch_count;
    return std::nullopt;
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{kNone};
  std::atomic<std::uint64_t> done{0};
  std::vector<unsigned> best_lane(threads, 0);
  std::vector<std::uint64_t> local_best(threads, kNone);

  auto worker = [&](unsigned id) {
    auto scratch = make_scratch();
    std::uint64_t count = 0;
    for (;;) {
      std::uint64_t start = next.fetch_add(kChunk);
      if (start >= batch_count || start > best.load()) break;
      std::uint64_t end = std::min(batch_count, start + kChunk);
      for (std::uint64_t b = start; b < end && b < best.load(); ++b) {
        ++count;
        Lanes lanes = probe(scratch, b);
        if (lanes) {
          if (b < local_best[id]) {
            local_best[id] = b;
            best_lane[id] = static_cast<unsigned>(std::countr_zero(lanes));
          }
          std::uint64_t cur = best.load();
          while (b < cur && !best.compare_exchange_weak(cur, b)) {
          }
          break;
        }
      }
    }
    done += count;
  };

  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
  pool.clear();

  if (processed) *processed = done.load();
  std::uint64_t b = best.load();
  if (b == kNone) return std::nullopt;
  for (unsigned i = 0; i < threads; ++i) {
    if (local_best[i] == b) return Hit{b, best_lane[i]};
  }
  return std::nullopt;
}

}  // namespace modal::detail
