#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace coreproj {

using Mask = std::uint32_t;

/// Upper bound on the player count. Worth tables are dense (2^n entries), so
/// this is a memory limit rather than a precision one.
inline constexpr std::size_t kMaxPlayers = 20;

/// A set of players encoded as a bitmask: bit i is set iff player i (in the
/// order of the game's player list) belongs to the coalition.
struct Coalition {
  Mask mask = 0;

  constexpr Coalition() = default;
  constexpr explicit Coalition(Mask m) : mask(m) {}

  static constexpr Coalition grand(std::size_t n) { return Coalition(static_cast<Mask>((Mask{1} << n) - 1)); }
  static constexpr Coalition singleton(std::size_t i) { return Coalition(Mask{1} << i); }

  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask)); }
  constexpr bool empty() const { return mask == 0; }
  constexpr bool contains(std::size_t i) const { return (mask >> i) & 1U; }
  constexpr bool is_grand(std::size_t n) const { return mask == grand(n).mask; }
  /// Nonempty and different from N.
  constexpr bool is_proper(std::size_t n) const { return mask != 0 && !is_grand(n); }

  constexpr Coalition operator&(Coalition o) const { return Coalition(mask & o.mask); }
  constexpr Coalition operator|(Coalition o) const { return Coalition(mask | o.mask); }
  constexpr Coalition complement(std::size_t n) const { return Coalition(grand(n).mask & ~mask); }

  constexpr auto operator<=>(const Coalition&) const = default;
};

/// Sum of x_i over the members of s.
double payment(Coalition s, std::span<const double> x);

/// Player indices of s, ascending.
std::vector<std::size_t> members(Coalition s);

/// Comma-joined player names in player-list order, e.g. "a,b".
std::string coalition_name(Coalition s, std::span<const std::string> players);

/// A duplicate-free set of coalitions kept in ascending mask order.
class CoalitionCollection {
 public:
  CoalitionCollection() = default;
  CoalitionCollection(std::initializer_list<Coalition> items);
  explicit CoalitionCollection(std::vector<Coalition> items);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Coalition& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::span<const Coalition> items() const { return items_; }

  bool contains(Coalition s) const;
  /// Copy with s inserted (no-op when already present).
  CoalitionCollection with(Coalition s) const;

  bool operator==(const CoalitionCollection&) const = default;
  /// Lexicographic order on the ascending mask sequences.
  auto operator<=>(const CoalitionCollection& o) const { return items_ <=> o.items_; }

 private:
  std::vector<Coalition> items_;
};

/// Every nonempty coalition of an n-player game in ascending mask order,
/// optionally leaving out N.
std::vector<Coalition> all_coalitions(std::size_t n, bool include_grand = true);

}  // namespace coreproj
