#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/value.h"

namespace tval {

// Deterministic outside world.  Reads are a pure function of
// (seed, history); every read and write folds the involved values into
// the history so subsequent reads observe them.  Two worlds are equal
// iff they were seeded equally and consumed/produced identical values.
class WorldState {
public:
  explicit WorldState(uint64_t seed = 0)
      : m_seed(seed), m_hist(0x243f6a8885a308d3ull ^ seed) {}

  // kind is a stable tag describing the read shape; entry-set reads use
  // a layout descriptor so the generated address sets form a plausible
  // machine layout (still arbitrary from the semantics' point of view).
  std::vector<Value> read(const std::string &kind, const std::vector<Type> &tys,
                          unsigned width);
  void write_digest(uint64_t digest);

  uint64_t seed() const { return m_seed; }
  uint64_t id() const { return m_hist * 0x9e3779b97f4a7c15ull + m_seed; }
  bool operator==(const WorldState &o) const {
    return m_seed == o.m_seed && m_hist == o.m_hist;
  }

private:
  uint64_t rng();
  uint64_t m_seed;
  uint64_t m_hist;
};

uint64_t value_digest(const Value &v);
uint64_t values_digest(const std::vector<Value> &vs);

} // namespace tval
