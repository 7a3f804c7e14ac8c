#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace uconf {

/*
 * Portable seeded random source: std::mt19937_64 (fully specified by the
 * standard) with hand-written distribution code, since the standard
 * distributions are implementation-defined.
 *
 * Streams: Rng::stream(seed, {a, b, ...}) derives an independent generator
 * for a path of integer tags by folding them into the seed with SplitMix64.
 * The synthetic pipeline uses tags (purpose, trace index[, event index]) so a
 * trace's draws do not depend on how many draws other traces made.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    // Uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound);
    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Stream tags used by the synthetic pipeline.
enum class StreamTag : std::uint64_t {
    model = 1,
    playout = 2,
    deviation = 3,
    uncertainty = 4,
    random_trace = 5,
};

} // namespace uconf
