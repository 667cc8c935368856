#include "moodloom/tag_client.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "moodloom/error.hpp"
#include "moodloom/text.hpp"

namespace moodloom {
namespace {

// Service error codes: 6 = no such tag/track, 11/16/29 = temporary.
constexpr int kNotFound = 6;
constexpr int kTemporaryErrors[] = {11, 16, 29};

struct RetryableError {
  std::string message;
};

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(const std::string& base_url) {
    constexpr std::string_view kScheme = "http://";
    if (!base_url.starts_with(kScheme)) {
      throw ConfigError("only http:// tag service URLs are supported: " + base_url);
    }
    const auto slash = base_url.find('/', kScheme.size());
    origin_ = base_url.substr(0, slash);
    prefix_ = slash == std::string::npos ? "/" : base_url.substr(slash);
  }

  std::optional<HttpResponse> get(const std::string& path_and_query) override {
    httplib::Client client(origin_);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    auto res = client.Get(prefix_ + path_and_query);
    if (!res) return std::nullopt;
    return HttpResponse{res->status, res->body};
  }

 private:
  std::string origin_;
  std::string prefix_;
};

// Single objects and arrays both appear in service responses.
std::vector<nlohmann::json> as_list(const nlohmann::json& j) {
  if (j.is_array()) return {j.begin(), j.end()};
  if (j.is_object()) return {j};
  return {};
}

int parse_count(const nlohmann::json& j) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_number()) return static_cast<int>(j.get<double>());
  if (j.is_string()) {
    try {
      return std::stoi(j.get<std::string>());
    } catch (const std::exception&) {
      return 0;
    }
  }
  return 0;
}

std::string artist_name(const nlohmann::json& artist) {
  if (artist.is_string()) return artist.get<std::string>();
  if (artist.is_object()) {
    for (const char* field : {"name", "#text"}) {
      if (auto it = artist.find(field); it != artist.end() && it->is_string()) return *it;
    }
  }
  return {};
}

}  // namespace

void TagServiceConfig::validate() const {
  if (mode == ServiceMode::Live) {
    if (api_key.empty()) {
      throw ConfigError(std::string("LIVE mode requires an API key in ") + kApiKeyEnvVar);
    }
    if (!(requests_per_second > 0.0)) throw ConfigError("rate limit must be positive");
  } else if (fixture_dir.empty()) {
    throw ConfigError("FIXTURE mode requires a fixture directory");
  }
  if (max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
}

TagServiceConfig TagServiceConfig::from_environment(ServiceMode mode, std::string fixture_dir) {
  TagServiceConfig config;
  config.mode = mode;
  config.fixture_dir = std::move(fixture_dir);
  if (const char* key = std::getenv(kApiKeyEnvVar)) config.api_key = key;
  return config;
}

std::unique_ptr<HttpTransport> make_http_transport(const std::string& base_url) {
  return std::make_unique<HttplibTransport>(base_url);
}

RateLimiter::RateLimiter(double requests_per_second)
    : interval_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(1.0 / requests_per_second))) {}

void RateLimiter::acquire() {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::vector<TrackRef> parse_top_tracks(const nlohmann::json& response) {
  std::vector<TrackRef> tracks;
  const auto root = response.find("tracks");
  if (root == response.end() || !root->is_object() || !root->contains("track")) return tracks;
  for (const auto& t : as_list((*root)["track"])) {
    if (!t.is_object()) continue;
    TrackRef ref{artist_name(t.value("artist", nlohmann::json())), t.value("name", "")};
    if (!ref.artist.empty() && !ref.title.empty()) tracks.push_back(std::move(ref));
  }
  return tracks;
}

std::vector<Tag> parse_top_tags(const nlohmann::json& response) {
  std::vector<Tag> tags;
  const auto root = response.find("toptags");
  if (root == response.end() || !root->is_object() || !root->contains("tag")) return tags;
  for (const auto& t : as_list((*root)["tag"])) {
    if (!t.is_object()) continue;
    Tag tag{t.value("name", ""), std::clamp(parse_count(t.value("count", nlohmann::json(0))), 0, 100)};
    if (!tag.name.empty()) tags.push_back(std::move(tag));
  }
  std::stable_sort(tags.begin(), tags.end(),
                   [](const Tag& a, const Tag& b) { return a.weight > b.weight; });
  return tags;
}

TagClient::TagClient(TagServiceConfig config, std::unique_ptr<HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  config_.validate();
  if (config_.mode == ServiceMode::Live) {
    if (!transport_) transport_ = make_http_transport(config_.base_url);
    limiter_ = std::make_unique<RateLimiter>(config_.requests_per_second);
  }
}

TagClient::~TagClient() = default;

std::string TagClient::top_tracks_key(std::string_view tag) {
  return "tag.gettoptracks/" + text::slug(tag);
}

std::string TagClient::top_tags_key(std::string_view artist, std::string_view title) {
  return "track.gettoptags/" + text::slug(artist) + "__" + text::slug(title);
}

std::optional<nlohmann::json> TagClient::request(const std::string& query,
                                                 const std::string& fixture_key) {
  if (config_.mode == ServiceMode::Fixture) {
    const auto path = std::filesystem::path(config_.fixture_dir) / (fixture_key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
      return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw FetchError("malformed fixture " + path.string() + ": " + e.what());
    }
  }

  const std::string full = query + "&api_key=" + percent_encode(config_.api_key) + "&format=json";
  auto backoff = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    limiter_->acquire();
    try {
      const auto res = transport_->get(full);
      if (!res) throw RetryableError{"network failure"};

      nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
      if (!body.is_discarded() && body.is_object() && body.contains("error")) {
        const int code = parse_count(body["error"]);
        const std::string message = body.value("message", "");
        if (code == kNotFound) return std::nullopt;
        if (std::ranges::find(kTemporaryErrors, code) != std::end(kTemporaryErrors)) {
          throw RetryableError{"service error " + std::to_string(code) + ": " + message};
        }
        throw FetchError("service error " + std::to_string(code) + ": " + message);
      }
      if (res->status >= 500 || res->status == 429) {
        throw RetryableError{"HTTP " + std::to_string(res->status)};
      }
      if (res->status != 200) throw FetchError("HTTP " + std::to_string(res->status));
      if (body.is_discarded()) throw RetryableError{"response is not JSON"};
      return body;
    } catch (const RetryableError& e) {
      last_error = e.message;
    }
  }
  throw FetchError("giving up after " + std::to_string(config_.max_attempts) +
                   " attempts: " + last_error);
}

std::vector<TrackRef> TagClient::fetch_top_tracks(std::string_view tag, std::size_t limit) {
  if (limit == 0) throw ConfigError("limit must be at least 1");
  const std::string query = "?method=tag.gettoptracks&tag=" + percent_encode(tag) +
                            "&limit=" + std::to_string(limit);
  const auto body = request(query, top_tracks_key(tag));
  if (!body) return {};
  std::vector<TrackRef> tracks;
  try {
    tracks = parse_top_tracks(*body);
  } catch (const nlohmann::json::exception& e) {
    throw FetchError("unexpected tag.gettoptracks response: " + std::string(e.what()));
  }
  if (tracks.size() > limit) tracks.resize(limit);
  return tracks;
}

std::vector<Tag> TagClient::fetch_top_tags(std::string_view artist, std::string_view title,
                                           std::size_t limit) {
  if (limit == 0) throw ConfigError("limit must be at least 1");
  const std::string query = "?method=track.gettoptags&artist=" + percent_encode(artist) +
                            "&track=" + percent_encode(title) + "&autocorrect=1";
  const auto body = request(query, top_tags_key(artist, title));
  if (!body) return {};
  std::vector<Tag> tags;
  try {
    tags = parse_top_tags(*body);
  } catch (const nlohmann::json::exception& e) {
    throw FetchError("unexpected track.gettoptags response: " + std::string(e.what()));
  }
  if (tags.size() > limit) tags.resize(limit);
  return tags;
}

}  // namespace moodloom
