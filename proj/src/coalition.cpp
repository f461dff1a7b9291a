#include "coreproj/coalition.hpp"

#include <algorithm>

namespace coreproj {

double payment(Coalition s, std::span<const double> x) {
  double total = 0.0;
  for (Mask m = s.mask; m != 0; m &= m - 1) {
    total += x[static_cast<std::size_t>(std::countr_zero(m))];
  }
  return total;
}

std::vector<std::size_t> members(Coalition s) {
  std::vector<std::size_t> out;
  out.reserve(s.size());
  for (Mask m = s.mask; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

std::string coalition_name(Coalition s, std::span<const std::string> players) {
  std::string out;
  for (std::size_t i : members(s)) {
    if (!out.empty()) out += ',';
    out += i < players.size() ? players[i] : std::to_string(i);
  }
  return out;
}

CoalitionCollection::CoalitionCollection(std::initializer_list<Coalition> items)
    : CoalitionCollection(std::vector<Coalition>(items)) {}

CoalitionCollection::CoalitionCollection(std::vector<Coalition> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool CoalitionCollection::contains(Coalition s) const {
  return std::binary_search(items_.begin(), items_.end(), s);
}

CoalitionCollection CoalitionCollection::with(Coalition s) const {
  CoalitionCollection out = *this;
  auto it = std::lower_bound(out.items_.begin(), out.items_.end(), s);
  if (it == out.items_.end() || *it != s) out.items_.insert(it, s);
  return out;
}

std::vector<Coalition> all_coalitions(std::size_t n, bool include_grand) {
  const Mask grand = Coalition::grand(n).mask;
  std::vector<Coalition> out;
  out.reserve(grand);
  for (Mask m = 1; m <= grand; ++m) {
    if (m == grand && !include_grand) break;
    out.emplace_back(m);
    if (m == grand) break;  // guards wrap-around at 32 players
  }
  return out;
}

}  // namespace coreproj
