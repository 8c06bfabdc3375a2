#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace revert {

using Rng = std::mt19937_64;

// Seed for a named sub-stream of a master seed, e.g. derive_seed(s, "sim/path/17").
// Adding new stream names never perturbs existing ones.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream);

inline Rng make_rng(std::uint64_t master, std::string_view stream) { return Rng(derive_seed(master, stream)); }

}  // namespace revert
