#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fairsub {

/// Binary inclusion mask over dataset rows: bit i set keeps row i.
class SolutionVector {
 public:
  SolutionVector() = default;
  explicit SolutionVector(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}
  explicit SolutionVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t i, bool value) noexcept { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) noexcept { bits_[i] ^= 1; }

  [[nodiscard]] std::size_t popcount() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }

  [[nodiscard]] std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  [[nodiscard]] std::span<std::uint8_t> bits() noexcept { return bits_; }

  friend bool operator==(const SolutionVector&, const SolutionVector&) = default;
  friend auto operator<=>(const SolutionVector&, const SolutionVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace fairsub
