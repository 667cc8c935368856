#include "moodloom/mood.hpp"

#include <bit>

#include "moodloom/error.hpp"
#include "moodloom/text.hpp"

namespace moodloom {

std::string_view to_string(MoodClass c) {
  static constexpr std::array<std::string_view, kMoodClassCount> kNames = {
      "Calm", "Energetic", "Dance", "Happy", "Sad", "Romantic", "Seductive", "Hopeful", "Angry"};
  return kNames[static_cast<std::size_t>(c)];
}

std::optional<MoodClass> parse_mood_class(std::string_view name) {
  const auto lc = text::to_lower(text::trim(name));
  for (auto c : kAllMoodClasses) {
    if (text::to_lower(to_string(c)) == lc) return c;
  }
  return std::nullopt;
}

std::size_t MoodSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<MoodClass> MoodSet::to_vector() const {
  std::vector<MoodClass> out;
  for (auto c : kAllMoodClasses) {
    if (contains(c)) out.push_back(c);
  }
  return out;
}

nlohmann::json to_json(MoodSet s) {
  auto arr = nlohmann::json::array();
  for (auto c : s.to_vector()) arr.push_back(std::string(to_string(c)));
  return arr;
}

MoodSet mood_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw DataError("classes must be an array of class names");
  MoodSet s;
  for (const auto& item : j) {
    if (!item.is_string()) throw DataError("class names must be strings");
    auto c = parse_mood_class(item.get<std::string>());
    if (!c) throw DataError("unknown mood class '" + item.get<std::string>() + "'");
    s.insert(*c);
  }
  return s;
}

}  // namespace moodloom
