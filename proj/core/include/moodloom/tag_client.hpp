#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "moodloom/dataset.hpp"

namespace moodloom {

enum class ServiceMode { Live, Fixture };

inline constexpr const char* kApiKeyEnvVar = "MOODLOOM_API_KEY";
inline constexpr const char* kDefaultTagServiceUrl = "http://ws.audioscrobbler.com/2.0/";

struct TagServiceConfig {
  std::string api_key;
  std::string base_url = kDefaultTagServiceUrl;
  ServiceMode mode = ServiceMode::Fixture;
  std::string fixture_dir;
  double requests_per_second = 5.0;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};

  /// LIVE needs an API key, FIXTURE a directory.
  void validate() const;

  /// Default config with the API key taken from MOODLOOM_API_KEY.
  static TagServiceConfig from_environment(ServiceMode mode, std::string fixture_dir = {});
};

struct TrackRef {
  std::string artist;
  std::string title;

  friend bool operator==(const TrackRef&, const TrackRef&) = default;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// GET against the service root. Returns nullopt on a transport failure.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual std::optional<HttpResponse> get(const std::string& path_and_query) = 0;
};

/// cpp-httplib backed transport for http:// base URLs.
std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url);

/// Serializes request admission to at most `rate` per second across threads.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second);
  void acquire();

 private:
  std::mutex mutex_;
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_{};
};

std::string percent_encode(std::string_view s);

/// Tolerates the service's quirks: a single object instead of a one-element
/// array, and counts sent as strings.
std::vector<TrackRef> parse_top_tracks(const nlohmann::json& response);
std::vector<Tag> parse_top_tags(const nlohmann::json& response);

/// Client for the tag.getTopTracks / track.getTopTags calls of a
/// Last.fm-compatible web service, or canned responses in FIXTURE mode.
class TagClient {
 public:
  /// `transport` overrides the default HTTP transport in LIVE mode.
  explicit TagClient(TagServiceConfig config, std::unique_ptr<HttpTransport> transport = nullptr);
  ~TagClient();

  /// Up to `limit` tracks for a tag; unknown tags yield an empty list.
  std::vector<TrackRef> fetch_top_tracks(std::string_view tag, std::size_t limit);

  /// Up to `limit` tags, heaviest first; unknown tracks yield an empty list.
  std::vector<Tag> fetch_top_tags(std::string_view artist, std::string_view title,
                                  std::size_t limit);

  static std::string top_tracks_key(std::string_view tag);
  static std::string top_tags_key(std::string_view artist, std::string_view title);

  const TagServiceConfig& config() const { return config_; }

 private:
  std::optional<nlohmann::json> request(const std::string& query, const std::string& fixture_key);

  TagServiceConfig config_;
  std::unique_ptr<HttpTransport> transport_;
  std::unique_ptr<RateLimiter> limiter_;
};

}  // namespace moodloom
