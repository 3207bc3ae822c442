#pragma once

#include <array>
#include <cstdint>

namespace mimocap {

/// Counter-based Philox4x32-10 generator (Salmon et al., SC'11).
///
/// The 128-bit counter is split into a block index (word 0), a lane (word 1)
/// and a 64-bit stream id (words 2-3). Every (key, stream, lane) triple is an
/// independent sequence, so Monte Carlo trials can be evaluated in any order
/// or on any worker and still draw identical numbers.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t key, std::uint64_t stream, std::uint32_t lane = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }

  result_type operator()();

  /// One raw bijection evaluation; exposed for known-answer tests.
  static Counter block(Counter counter, Key key);

 private:
  Key key_;
  Counter counter_;
  Counter buffer_{};
  unsigned used_ = 4;
};

/// Stream for one Monte Carlo trial.
inline Philox4x32 trial_stream(std::uint64_t seed, std::uint64_t trial,
                               std::uint32_t lane = 0) {
  return Philox4x32(seed, trial, lane);
}

}  // namespace mimocap
