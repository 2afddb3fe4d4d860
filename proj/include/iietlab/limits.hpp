#pragma once

#include <cstddef>

namespace iietlab {

// Conservative defaults; every CLI path exposes these as flags. Interval
// counts and supertile lengths grow geometrically, so we fail loudly instead
// of slowly.
inline constexpr std::size_t kMaxWordLetters = 10'000'000;
inline constexpr std::size_t kMaxAddresses = 100'000;
inline constexpr std::size_t kMaxPieces = 1'000'000;
inline constexpr unsigned long long kMaxDualOrders = 1'000'000;

}  // namespace iietlab
