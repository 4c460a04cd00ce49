#pragma once

#include <cstddef>

namespace livsic {

/// Desk-scale caps. Every enumeration checks the relevant cap up front and
/// raises ErrorCode::RangeTooLarge instead of running away.
struct Limits {
  int max_period = 16;
  int max_symbols = 8;
  std::size_t max_blocks = 1u << 16;
  std::size_t max_states = 1u << 16;
  std::size_t max_orbits = 2'000'000;
  std::size_t max_group_order = 5040;
  std::size_t associativity_cap = 128;
  std::size_t max_words = 5'000'000;
};

}  // namespace livsic
