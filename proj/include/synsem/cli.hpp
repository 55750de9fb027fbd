#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "synsem/inference.hpp"
#include "synsem/remote.hpp"

namespace synsem::cli {

// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,    // bad flags, unreadable or malformed inputs, contract violations
  kBackendError = 2,  // knowledge base unreachable or answered garbage
  kInternalError = 3  // invariant violation detected before writing
};

// Everything the configuration file can hold. Inference keys feed the config
// fingerprint; the rest only affect how synsets are obtained.
struct AppConfig {
  InferenceConfig inference;
  RemoteOptions remote;
  std::optional<std::filesystem::path> cache_dir;
  unsigned parallelism = 4;
  std::chrono::seconds timeout{10};
};

AppConfig app_config_from_json(const nlohmann::json& doc);
AppConfig load_app_config(const std::optional<std::filesystem::path>& path);

constexpr const char* kDefaultRemoteCacheDir = ".synsem-cache";
constexpr const char* kApiKeyVariable = "SYNSEM_KB_KEY";

// Process-level dependencies, replaceable in tests.
struct Environment {
  std::function<std::shared_ptr<HttpTransport>(const std::string& base_url, std::chrono::seconds timeout)>
      make_transport;
  std::function<std::optional<std::string>(const std::string& name)> getenv;
};

Environment default_environment();

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = default_environment());

}  // namespace synsem::cli
