#pragma once

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace boxmerge::detail {

// LSD radix sort of keys whose set bits all lie below `key_bits`.
inline void radix_sort_keys(std::vector<std::uint64_t>& keys, unsigned key_bits) {
  constexpr unsigned kDigitBits = 11;
  constexpr std::size_t kBuckets = std::size_t{1} << kDigitBits;
  if (keys.size() < 256) {
    std::sort(keys.begin(), keys.end());
    return;
  }
  std::vector<std::uint64_t> scratch(keys.size());
  std::vector<std::size_t> offsets(kBuckets);
  for (unsigned shift = 0; shift < key_bits; shift += kDigitBits) {
    std::fill(offsets.begin(), offsets.end(), std::size_t{0});
    for (const std::uint64_t k : keys) ++offsets[(k >> shift) & (kBuckets - 1)];
    std::size_t running = 0;
    for (auto& o : offsets) {
      const std::size_t count = o;
      o = running;
      running += count;
    }
    for (const std::uint64_t k : keys) scratch[offsets[(k >> shift) & (kBuckets - 1)]++] = k;
    keys.swap(scratch);
  }
}

// Sorts a flat row-major table of `width`-tuples into lexicographic order and
// drops repeated rows. `extents[i]` is an exclusive upper bound on column i.
//
// When the columns fit into 64 bits together, every row is packed into a
// single key (column 0 most significant) so ordering the keys is the same as
// ordering the rows lexicographically. Wider rows fall back to an index sort.
// Coord is at most 32 bits wide, so a single column never needs a 64-bit shift.
template <std::unsigned_integral Coord>
  requires(sizeof(Coord) <= 4)
void sort_unique_rows(std::vector<Coord>& flat, std::size_t width,
                      std::span<const std::uint64_t> extents) {
  if (width == 0 || flat.empty()) return;
  const std::size_t rows = flat.size() / width;

  std::vector<unsigned> bits(width);
  unsigned total_bits = 0;
  for (std::size_t i = 0; i < width; ++i) {
    bits[i] = static_cast<unsigned>(std::bit_width(extents[i] - 1));
    total_bits += bits[i];
  }

  if (total_bits <= 64) {
    std::vector<std::uint64_t> keys(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const Coord* row = flat.data() + r * width;
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < width; ++i) {
        // A zero-bit column is always 0; shifting by 64 would be undefined.
        if (bits[i] != 0) key = (key << bits[i]) | row[i];
      }
      keys[r] = key;
    }
    radix_sort_keys(keys, total_bits);
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    flat.resize(keys.size() * width);
    for (std::size_t r = 0; r < keys.size(); ++r) {
      std::uint64_t key = keys[r];
      Coord* row = flat.data() + r * width;
      for (std::size_t i = width; i-- > 0;) {
        if (bits[i] == 0) {
          row[i] = 0;
          continue;
        }
        row[i] = static_cast<Coord>(key & ((std::uint64_t{1} << bits[i]) - 1));
        key >>= bits[i];
      }
    }
    return;
  }

  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto row_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(
        flat.begin() + a * width, flat.begin() + (a + 1) * width,
        flat.begin() + b * width, flat.begin() + (b + 1) * width);
  };
  const auto row_equal = [&](std::size_t a, std::size_t b) {
    return std::equal(flat.begin() + a * width, flat.begin() + (a + 1) * width,
                      flat.begin() + b * width);
  };
  std::sort(order.begin(), order.end(), row_less);
  order.erase(std::unique(order.begin(), order.end(), row_equal), order.end());

  std::vector<Coord> out;
  out.reserve(order.size() * width);
  for (const std::size_t r : order) {
    out.insert(out.end(), flat.begin() + r * width, flat.begin() + (r + 1) * width);
  }
  flat = std::move(out);
}

}  // namespace boxmerge::detail
