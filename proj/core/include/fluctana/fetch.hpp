#ifndef FLUCTANA_FETCH_HPP
#define FLUCTANA_FETCH_HPP

#include <filesystem>
#include <string>

namespace fluctana::ingest {

/// Name of the environment variable overriding the cache directory.
inline constexpr const char* kCacheDirEnv = "FLUCTANA_CACHE_DIR";

struct FetchOptions {
  bool offline = false;       // serve from cache only, never touch the network
  std::string cache_dir;      // empty: $FLUCTANA_CACHE_DIR, else ./.fluctana-cache
  int timeout_seconds = 30;
};

/// Cache file a given URL maps to (deterministic, content-independent).
std::filesystem::path cache_path_for(const std::string& url,
                                     const FetchOptions& opts = {});

/// Fetches the body of an HTTP(S) resource, writing it through to the local
/// cache. In offline mode, or when the transfer fails but a cached copy
/// exists, the cached bytes are returned instead. Throws FetchError when
/// neither network nor cache can satisfy the request, or on HTTP status
/// >= 400.
std::string fetch_remote(const std::string& url, const FetchOptions& opts = {});

}  // namespace fluctana::ingest

#endif  // FLUCTANA_FETCH_HPP
