#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace guibench {

// Business areas of the benchmark, plus Other.
enum class Sector : std::uint8_t {
  kFoodDelivery,
  kFoodWalkin,
  kMedicalService,
  kFundSelect,
  kInsurance,
  kGaming,
  kOther,
};

inline constexpr std::array<Sector, 7> kAllSectors = {
    Sector::kFoodDelivery, Sector::kFoodWalkin, Sector::kMedicalService, Sector::kFundSelect,
    Sector::kInsurance,    Sector::kGaming,     Sector::kOther};

// "FoodDelivery", "FoodWalkin", ...
std::string_view to_string(Sector s) noexcept;
// Throws InvalidConfig.
Sector sector_from_string(std::string_view s);

// Task length class: Short <= 4 steps < Middle <= 8 steps < Long.
enum class ComplexityBucket : std::uint8_t { kShort, kMiddle, kLong };

inline constexpr std::array<ComplexityBucket, 3> kAllBuckets = {
    ComplexityBucket::kShort, ComplexityBucket::kMiddle, ComplexityBucket::kLong};

ComplexityBucket bucket(std::size_t steps) noexcept;

std::string_view to_string(ComplexityBucket b) noexcept;
ComplexityBucket bucket_from_string(std::string_view s);

}  // namespace guibench
