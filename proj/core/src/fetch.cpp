#include "fluctana/fetch.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "fluctana/errors.hpp"

namespace fluctana::ingest {

namespace {

// FNV-1a; stable across platforms and runs, unlike std::hash.
std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct UrlParts {
  std::string scheme;
  std::string host_port;  // host[:port], as httplib wants it
  std::string target;     // path + query
};

UrlParts split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw FetchError("not an absolute http(s) URL: " + url);
  UrlParts parts;
  parts.scheme = url.substr(0, scheme_end);
  if (parts.scheme != "http" && parts.scheme != "https")
    throw FetchError("unsupported scheme '" + parts.scheme + "'");
  auto rest = url.substr(scheme_end + 3);
  auto slash = rest.find('/');
  parts.host_port = rest.substr(0, slash);
  parts.target = slash == std::string::npos ? "/" : rest.substr(slash);
  if (parts.host_port.empty()) throw FetchError("empty host in URL: " + url);
  return parts;
}

std::filesystem::path resolve_cache_dir(const FetchOptions& opts) {
  if (!opts.cache_dir.empty()) return opts.cache_dir;
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return ".fluctana-cache";
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& body) {
  std::filesystem::create_directories(p.parent_path());
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw FetchError("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace

std::filesystem::path cache_path_for(const std::string& url,
                                     const FetchOptions& opts) {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.body",
                static_cast<unsigned long long>(fnv1a64(url)));
  return resolve_cache_dir(opts) / name;
}

std::string fetch_remote(const std::string& url, const FetchOptions& opts) {
  const auto cache_file = cache_path_for(url, opts);
  const bool cached = std::filesystem::exists(cache_file);

  if (opts.offline) {
    if (!cached) throw FetchError("offline and no cached copy of " + url);
    return read_file(cache_file);
  }

  const UrlParts parts = split_url(url);
  httplib::Result res = [&] {
    if (parts.scheme == "https") {
      httplib::SSLClient client(parts.host_port);
      client.set_connection_timeout(opts.timeout_seconds);
      client.set_read_timeout(opts.timeout_seconds);
      client.set_follow_location(true);
      client.enable_server_certificate_verification(false);
      return client.Get(parts.target);
    }
    httplib::Client client(parts.host_port);
    client.set_connection_timeout(opts.timeout_seconds);
    client.set_read_timeout(opts.timeout_seconds);
    client.set_follow_location(true);
    return client.Get(parts.target);
  }();

  if (!res) {
    if (cached) return read_file(cache_file);
    throw FetchError("transfer failed for " + url + " (" +
                     httplib::to_string(res.error()) + ") and cache is empty");
  }
  if (res->status >= 400)
    throw FetchError("HTTP " + std::to_string(res->status) + " for " + url,
                     res->status);
  write_file_atomic(cache_file, res->body);
  return res->body;
}

}  // namespace fluctana::ingest
