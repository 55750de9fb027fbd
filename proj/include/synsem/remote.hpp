#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>

#include "synsem/backend.hpp"

namespace synsem {

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // GET `target` (path and query, appended to the base URL). Throws
  // TransportError when no response could be obtained at all.
  virtual HttpResponse get(const std::string& target) = 0;
};

// cpp-httplib client; opens one connection per request so a single instance
// can serve concurrent lookups.
class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(const std::string& base_url,
                            std::chrono::seconds timeout = std::chrono::seconds(10));
  HttpResponse get(const std::string& target) override;

 private:
  std::string origin_;  // scheme://host[:port]
  std::string prefix_;  // path prefix without trailing slash
  std::chrono::seconds timeout_;
};

// Token bucket shared by every request of a backend. Callers reserve a token
// and sleep off any deficit outside the lock, so waiting threads queue fairly.
class RateLimiter {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;
  using Sleeper = std::function<void(std::chrono::nanoseconds)>;

  explicit RateLimiter(double per_second, double burst = 1.0, Clock clock = {}, Sleeper sleep = {});

  void acquire();

 private:
  double rate_;
  double burst_;
  double tokens_;
  Clock clock_;
  Sleeper sleep_;
  std::chrono::steady_clock::time_point last_;
  std::mutex mu_;
};

struct RemoteOptions {
  std::string base_url = "https://babelnet.io/v9";
  std::string api_key;  // never logged, never cached
  std::string language = "EN";
  double requests_per_second = 1.0;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds negative_ttl{std::chrono::hours(24 * 7)};
};

// Two-step lookup against a BabelNet-shaped HTTP service: synset ids for a
// lemma, then one detail request per id.
class RemoteBackend : public KnowledgeBackend {
 public:
  using Sleeper = std::function<void(std::chrono::nanoseconds)>;

  RemoteBackend(RemoteOptions options, std::shared_ptr<HttpTransport> transport, Sleeper sleep = {});

  std::vector<Synset> lookup(const std::string& keyword) override;
  std::string tag() const override { return "remote:" + options_.language; }
  std::optional<std::chrono::seconds> negative_ttl() const override { return options_.negative_ttl; }

  // HTTP requests issued so far, retries included.
  std::size_t requests() const { return requests_.load(); }

 private:
  nlohmann::json get_json(const std::string& endpoint, const std::string& query, const std::string& what);
  Synset decode_synset(const nlohmann::json& doc, const std::string& id, const std::string& keyword) const;

  RemoteOptions options_;
  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleep_;
  RateLimiter limiter_;
  std::atomic<std::size_t> requests_{0};
};

std::string url_encode(std::string_view s);

}  // namespace synsem
