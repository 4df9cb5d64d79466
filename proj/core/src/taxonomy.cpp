#include "guibench/taxonomy.hpp"

#include <string>

#include "guibench/errors.hpp"

namespace guibench {
namespace {
constexpr std::array<std::string_view, 7> kSectorNames = {
    "FoodDelivery", "FoodWalkin", "MedicalService", "FundSelect", "Insurance", "Gaming", "Other"};
constexpr std::array<std::string_view, 3> kBucketNames = {"Short", "Middle", "Long"};
}  // namespace

std::string_view to_string(Sector s) noexcept {
  return kSectorNames[static_cast<std::size_t>(s)];
}

Sector sector_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kSectorNames.size(); ++i) {
    if (kSectorNames[i] == s) return static_cast<Sector>(i);
  }
  throw InvalidConfig("unknown sector '" + std::string(s) + "'");
}

ComplexityBucket bucket(std::size_t steps) noexcept {
  if (steps <= 4) return ComplexityBucket::kShort;
  if (steps <= 8) return ComplexityBucket::kMiddle;
  return ComplexityBucket::kLong;
}

std::string_view to_string(ComplexityBucket b) noexcept {
  return kBucketNames[static_cast<std::size_t>(b)];
}

ComplexityBucket bucket_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kBucketNames.size(); ++i) {
    if (kBucketNames[i] == s) return static_cast<ComplexityBucket>(i);
  }
  throw InvalidConfig("unknown complexity bucket '" + std::string(s) + "'");
}

}  // namespace guibench
