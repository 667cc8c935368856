#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace moodloom {

enum class MoodClass : std::uint8_t {
  Calm = 0,
  Energetic,
  Dance,
  Happy,
  Sad,
  Romantic,
  Seductive,
  Hopeful,
  Angry,
};

inline constexpr std::size_t kMoodClassCount = 9;

inline constexpr std::array<MoodClass, kMoodClassCount> kAllMoodClasses = {
    MoodClass::Calm,     MoodClass::Energetic, MoodClass::Dance,
    MoodClass::Happy,    MoodClass::Sad,       MoodClass::Romantic,
    MoodClass::Seductive, MoodClass::Hopeful,  MoodClass::Angry,
};

std::string_view to_string(MoodClass c);
std::optional<MoodClass> parse_mood_class(std::string_view name);

/// Small set of mood classes backed by a bitmask; iterates in enum order.
class MoodSet {
 public:
  constexpr MoodSet() = default;
  constexpr MoodSet(std::initializer_list<MoodClass> classes) {
    for (auto c : classes) insert(c);
  }

  constexpr void insert(MoodClass c) { bits_ |= bit(c); }
  constexpr void erase(MoodClass c) { bits_ &= static_cast<std::uint16_t>(~bit(c)); }
  constexpr bool contains(MoodClass c) const { return (bits_ & bit(c)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<MoodClass> to_vector() const;
  constexpr std::uint16_t bits() const { return bits_; }

  constexpr bool is_subset_of(MoodSet other) const { return (bits_ & ~other.bits_) == 0; }
  friend constexpr bool operator==(MoodSet, MoodSet) = default;
  friend constexpr MoodSet operator|(MoodSet a, MoodSet b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr MoodSet operator&(MoodSet a, MoodSet b) { return from_bits(a.bits_ & b.bits_); }

  static constexpr MoodSet from_bits(unsigned bits) {
    MoodSet s;
    s.bits_ = static_cast<std::uint16_t>(bits & 0x1FFu);
    return s;
  }

 private:
  static constexpr std::uint16_t bit(MoodClass c) {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(c));
  }
  std::uint16_t bits_ = 0;
};

/// JSON array of class names.
nlohmann::json to_json(MoodSet s);
MoodSet mood_set_from_json(const nlohmann::json& j);

}  // namespace moodloom
