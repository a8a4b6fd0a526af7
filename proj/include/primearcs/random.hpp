#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace primearcs {

/// Default seed used whenever a run does not name one.
inline constexpr std::uint64_t kDefaultSeed = 1729;

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream seed for item `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Engine make_engine(std::uint64_t seed);

/// Uniform integer in [0, n) by rejection; no modulo bias and the same
/// output on every standard library (unlike std::uniform_int_distribution).
std::uint64_t uniform_below(Engine& rng, std::uint64_t n);

/// Worker count: PRIMEARCS_THREADS if set to a positive integer, else the
/// hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on thread_count() workers. Callers write
/// into pre-sized per-index slots so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace primearcs
