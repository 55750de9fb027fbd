#include "synsem/remote.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <set>
#include <thread>

#include "synsem/errors.hpp"
#include "synsem/text.hpp"

namespace synsem {
namespace {

void default_sleep(std::chrono::nanoseconds d) { std::this_thread::sleep_for(d); }

// Keeps order, drops empties and repeats.
void push_unique(std::vector<std::string>& out, std::set<std::string>& seen, std::string value) {
  if (!value.empty() && seen.insert(value).second) out.push_back(std::move(value));
}

}  // namespace

std::string url_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0F]);
    }
  }
  return out;
}

HttplibTransport::HttplibTransport(const std::string& base_url, std::chrono::seconds timeout) : timeout_(timeout) {
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) throw InputError("remote base URL must include a scheme: '" + base_url + "'");
  const auto path_start = base_url.find('/', scheme_end + 3);
  origin_ = base_url.substr(0, path_start);
  prefix_ = path_start == std::string::npos ? "" : base_url.substr(path_start);
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
}

HttpResponse HttplibTransport::get(const std::string& target) {
  httplib::Client client(origin_);
  if (!client.is_valid()) throw InputError("unsupported remote base URL '" + origin_ + "'");
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  auto res = client.Get(prefix_ + "/" + target);
  if (!res) throw TransportError("request to " + origin_ + " failed: " + httplib::to_string(res.error()));
  return {res->status, res->body};
}

RateLimiter::RateLimiter(double per_second, double burst, Clock clock, Sleeper sleep)
    : rate_(per_second), burst_(std::max(burst, 1.0)), tokens_(std::max(burst, 1.0)),
      clock_(std::move(clock)), sleep_(std::move(sleep)) {
  if (!(rate_ > 0)) throw InputError("rate limit must be positive");
  if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
  if (!sleep_) sleep_ = default_sleep;
  last_ = clock_();
}

void RateLimiter::acquire() {
  std::chrono::nanoseconds wait{0};
  {
    std::lock_guard lock(mu_);
    const auto now = clock_();
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(burst_, tokens_ + elapsed * rate_);
    tokens_ -= 1.0;
    if (tokens_ < 0) {
      wait = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::duration<double>(-tokens_ / rate_));
    }
  }
  if (wait.count() > 0) sleep_(wait);
}

RemoteBackend::RemoteBackend(RemoteOptions options, std::shared_ptr<HttpTransport> transport, Sleeper sleep)
    : options_(std::move(options)), transport_(std::move(transport)), sleep_(std::move(sleep)),
      limiter_(options_.requests_per_second, 1.0, {}, sleep_) {
  if (!sleep_) sleep_ = default_sleep;
  if (options_.max_attempts < 1) throw InputError("remote max_attempts must be at least 1");
}

nlohmann::json RemoteBackend::get_json(const std::string& endpoint, const std::string& query,
                                       const std::string& what) {
  std::string target = endpoint + "?" + query;
  if (!options_.api_key.empty()) target += "&key=" + url_encode(options_.api_key);

  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    if (attempt > 1) {
      sleep_(backoff);
      backoff *= 2;
    }
    limiter_.acquire();
    requests_.fetch_add(1);
    HttpResponse res;
    try {
      res = transport_->get(target);
    } catch (const TransportError& e) {
      last_error = e.what();
      continue;
    }
    if (res.status < 200 || res.status >= 300) {
      last_error = "HTTP status " + std::to_string(res.status);
      continue;
    }
    try {
      return nlohmann::json::parse(res.body);
    } catch (const nlohmann::json::parse_error&) {
      throw DecodeError(endpoint + " returned a non-JSON payload for " + what);
    }
  }
  throw TransportError(endpoint + " for " + what + " failed after " + std::to_string(options_.max_attempts) +
                       " attempt(s): " + last_error);
}

Synset RemoteBackend::decode_synset(const nlohmann::json& doc, const std::string& id,
                                    const std::string& keyword) const {
  if (!doc.is_object()) throw DecodeError("getSynset payload for '" + id + "' is not an object");
  const std::string lang = case_fold(options_.language);
  auto language_matches = [&](const nlohmann::json& obj) {
    auto it = obj.find("language");
    return it == obj.end() || !it->is_string() || case_fold(it->get<std::string>()) == lang;
  };

  Synset s;
  s.id = id;
  s.lemma = keyword;
  std::set<std::string> seen;

  if (auto cats = doc.find("categories"); cats != doc.end()) {
    if (!cats->is_array()) throw DecodeError("getSynset '" + id + "': 'categories' is not an array");
    for (const auto& c : *cats) {
      if (c.is_string()) {
        push_unique(s.categories, seen, c.get<std::string>());
      } else if (c.is_object() && c.contains("category") && c["category"].is_string()) {
        if (language_matches(c)) push_unique(s.categories, seen, c["category"].get<std::string>());
      } else {
        throw DecodeError("getSynset '" + id + "': malformed category entry");
      }
    }
  }

  seen.clear();
  if (auto doms = doc.find("domains"); doms != doc.end()) {
    if (doms->is_object()) {
      for (const auto& [name, weight] : doms->items()) push_unique(s.domains, seen, name);
    } else if (doms->is_array()) {
      for (const auto& d : *doms) {
        if (!d.is_string()) throw DecodeError("getSynset '" + id + "': malformed domain entry");
        push_unique(s.domains, seen, d.get<std::string>());
      }
    } else {
      throw DecodeError("getSynset '" + id + "': 'domains' has an unexpected type");
    }
  }

  seen.clear();
  if (auto senses = doc.find("senses"); senses != doc.end()) {
    if (!senses->is_array()) throw DecodeError("getSynset '" + id + "': 'senses' is not an array");
    for (const auto& sense : *senses) {
      if (!sense.is_object()) throw DecodeError("getSynset '" + id + "': malformed sense entry");
      // Newer service versions nest lemma data under "properties".
      const auto& props = sense.contains("properties") ? sense["properties"] : sense;
      if (!props.is_object() || !language_matches(props)) continue;
      for (const char* field : {"fullLemma", "lemma"}) {
        if (props.contains(field) && props[field].is_string()) {
          push_unique(s.synonyms, seen, props[field].get<std::string>());
          break;
        }
      }
    }
  }
  return s;
}

std::vector<Synset> RemoteBackend::lookup(const std::string& keyword) {
  const auto ids_doc = get_json("getSynsetIds",
                                "lemma=" + url_encode(keyword) + "&searchLang=" + url_encode(options_.language),
                                "lemma '" + keyword + "'");
  if (!ids_doc.is_array()) throw DecodeError("getSynsetIds for '" + keyword + "' did not return an array");

  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ids_doc.size(); ++i) {
    const auto& item = ids_doc[i];
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string()) {
      throw DecodeError("getSynsetIds for '" + keyword + "': record " + std::to_string(i) + " has no string 'id'");
    }
    push_unique(ids, seen, item["id"].get<std::string>());
  }

  std::vector<Synset> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const auto doc = get_json("getSynset", "id=" + url_encode(id) + "&targetLang=" + url_encode(options_.language),
                              "synset '" + id + "'");
    out.push_back(decode_synset(doc, id, keyword));
  }
  return out;
}

}  // namespace synsem
