#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace jetbound {

/// 64-bit FNV-1a; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view data);

/// splitmix64 finalizer applied to a ^ (b + golden ratio).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

std::string to_hex(std::uint64_t value);

}  // namespace jetbound
