#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "acl/rng.hpp"

namespace acl {

// Monte Carlo answer with its uncertainty. se is the standard error of the
// mean, computed from the unbiased (n-1) sample variance.
struct McEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

namespace detail {

constexpr std::size_t kMcChunk = std::size_t{1} << 16;

// Compensated accumulator; keeps zero-variance estimators bit-clean.
struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

struct ChunkMoments {
  double sum = 0.0;
  double sumsq = 0.0;
};

inline McEstimate combine_moments(const std::vector<ChunkMoments>& chunks,
                                  std::size_t n) {
  double sum = 0.0;
  double sumsq = 0.0;
  for (const auto& c : chunks) {  // fixed order, independent of thread count
    sum += c.sum;
    sumsq += c.sumsq;
  }
  McEstimate est;
  est.n = n;
  est.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double var = (sumsq - static_cast<double>(n) * est.mean * est.mean) /
                 static_cast<double>(n - 1);
    if (var < 0.0) var = 0.0;
    est.se = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

// Runs fn(chunk_index, offset, count) for every chunk of [0, n). Each chunk
// must derive its randomness from its own substream so results do not depend
// on the thread count.
template <typename Fn>
void for_each_chunk(std::size_t n, int threads, Fn&& fn) {
  const std::size_t n_chunks = (n + kMcChunk - 1) / kMcChunk;
  auto run = [&](std::size_t c) {
    const std::size_t offset = c * kMcChunk;
    const std::size_t count = std::min(kMcChunk, n - offset);
    fn(c, offset, count);
  };
  if (threads <= 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run(c);
    return;
  }
  const int nt = static_cast<int>(std::min<std::size_t>(threads, n_chunks));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t c = t; c < n_chunks; c += nt) run(c);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

// Sample mean and standard error of integrand(sampler(rng)) over n draws.
// Chunk c draws from rng.substream(c) and partial sums are combined in chunk
// order, so the result is a pure function of (seed, stream_id, n). A
// non-finite integrand value aborts with the offending sample index.
template <typename Integrand, typename Sampler>
McEstimate mc_mean(Integrand&& integrand, Sampler&& sampler, std::size_t n,
                   const RngStream& rng, int threads = 1) {
  if (n < 2) throw std::domain_error("mc_mean: need n >= 2 samples");
  const std::size_t n_chunks = (n + detail::kMcChunk - 1) / detail::kMcChunk;
  std::vector<detail::ChunkMoments> chunks(n_chunks);
  detail::for_each_chunk(n, threads,
                         [&](std::size_t c, std::size_t offset, std::size_t count) {
                           RngStream sub = rng.substream(c);
                           detail::KahanSum s, s2;
                           for (std::size_t i = 0; i < count; ++i) {
                             const double v = integrand(sampler(sub));
                             if (!std::isfinite(v)) {
                               std::ostringstream msg;
                               msg << "mc_mean: non-finite integrand value at sample "
                                   << offset + i;
                               throw std::runtime_error(msg.str());
                             }
                             s.add(v);
                             s2.add(v * v);
                           }
                           chunks[c] = {s.value(), s2.value()};
                         });
  return detail::combine_moments(chunks, n);
}

}  // namespace acl
