// Copyright 2026 The wwweval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/fetch.h"

#include <curl/curl.h>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <memory>

#include "json.hpp"

namespace wwweval::cli {

namespace fs = std::filesystem;
using nlohmann::json;

const Artifact &DatasetManifest::find(std::string_view name) const {
  auto it = std::lower_bound(
      artifacts.begin(), artifacts.end(), name,
      [](const Artifact &a, std::string_view n) { return a.name < n; });
  if (it == artifacts.end() || it->name != name)
    throw PreconditionError("manifest has no artifact named " +
                            std::string(name));
  return *it;
}

namespace {

std::string string_field(const json &obj, const char *key, bool required,
                         const std::string &artifact) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required)
      throw ParseError("artifact " + artifact + " lacks \"" + key + "\"", 0);
    return {};
  }
  if (!it->is_string())
    throw ParseError("artifact " + artifact + ": \"" + key +
                         "\" must be a string",
                     0);
  return it->get<std::string>();
}

bool is_hex_digest(const std::string &s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

}  // namespace

DatasetManifest parse_manifest(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("artifacts") ||
      !doc["artifacts"].is_object())
    throw ParseError("manifest must be an object with an \"artifacts\" object", 0);

  DatasetManifest manifest;
  for (const auto &[name, entry] : doc["artifacts"].items()) {
    if (!entry.is_object())
      throw ParseError("artifact " + name + " must be an object", 0);
    Artifact a;
    a.name = name;
    a.url = string_field(entry, "url", true, name);
    a.sha256 = string_field(entry, "sha256", false, name);
    std::transform(a.sha256.begin(), a.sha256.end(), a.sha256.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!a.sha256.empty() && !is_hex_digest(a.sha256))
      throw ParseError("artifact " + name + ": sha256 must be 64 hex digits", 0);
    a.path = string_field(entry, "path", false, name);
    if (a.path.empty()) a.path = name;
    fs::path rel(a.path);
    if (rel.is_absolute() ||
        std::any_of(rel.begin(), rel.end(), [](const fs::path &p) { return p == ".."; }))
      throw PreconditionError("artifact " + name +
                              ": path must stay inside the cache root");
    manifest.artifacts.push_back(std::move(a));
  }
  std::sort(manifest.artifacts.begin(), manifest.artifacts.end(),
            [](const Artifact &x, const Artifact &y) { return x.name < y.name; });
  return manifest;
}

fs::path resolve_cache_root(const std::optional<std::string> &flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char *env = std::getenv("WWWEVAL_CACHE_ROOT"); env && *env)
    return env;
  if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return fs::path(xdg) / "wwweval";
  if (const char *home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "wwweval";
  return fs::path(".wwweval-cache");
}

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX *ctx) const { EVP_MD_CTX_free(ctx); }
};

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
      throw Error("SHA-256 initialisation failed");
  }
  void update(const void *data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_.get(), data, n) != 1)
      throw Error("SHA-256 update failed");
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md.data(), &len) != 1)
      throw Error("SHA-256 finalisation failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += kHex[md[i] >> 4];
      out += kHex[md[i] & 15];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const fs::path &path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE *)> f(
      std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!f) throw IoError("cannot open " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), f.get())) > 0)
    h.update(buf.data(), n);
  if (std::ferror(f.get())) throw IoError("cannot read " + path.string());
  return h.hex();
}

namespace {

std::size_t write_to_file(char *ptr, std::size_t size, std::size_t nmemb,
                          void *userdata) {
  return std::fwrite(ptr, size, nmemb, static_cast<std::FILE *>(userdata));
}

void ensure_curl_init() {
  static const bool ok = curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK;
  if (!ok) throw NetworkError("libcurl initialisation failed");
}

}  // namespace

void curl_download(const std::string &url, const fs::path &dest) {
  ensure_curl_init();
  std::unique_ptr<CURL, void (*)(CURL *)> curl(curl_easy_init(),
                                               &curl_easy_cleanup);
  if (!curl) throw NetworkError("cannot create a libcurl handle");
  std::unique_ptr<std::FILE, int (*)(std::FILE *)> out(
      std::fopen(dest.c_str(), "wb"), &std::fclose);
  if (!out) throw IoError("cannot write " + dest.string());

  std::array<char, CURL_ERROR_SIZE> error{};
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 30L);
  curl_easy_setopt(curl.get(), CURLOPT_ERRORBUFFER, error.data());
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, &write_to_file);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, out.get());
  const CURLcode rc = curl_easy_perform(curl.get());
  if (rc != CURLE_OK) {
    std::string detail = error[0] ? error.data() : curl_easy_strerror(rc);
    throw NetworkError("download of " + url + " failed: " + detail);
  }
  if (std::fflush(out.get()) != 0) throw IoError("cannot write " + dest.string());
}

namespace {

fs::path quarantine(const fs::path &file, const fs::path &cache_root,
                    const std::string &name, const std::string &actual) {
  fs::path dir = cache_root / ".quarantine";
  fs::create_directories(dir);
  fs::path target = dir / (name + "." + actual.substr(0, 16));
  fs::rename(file, target);
  return target;
}

}  // namespace

fs::path fetch_artifact(const Artifact &artifact, const fs::path &cache_root,
                        const Downloader &download) {
  const fs::path target = cache_root / artifact.path;
  std::error_code ec;
  if (fs::is_regular_file(target, ec)) {
    if (artifact.sha256.empty()) return target;
    const std::string actual = sha256_file(target);
    if (actual == artifact.sha256) return target;
    quarantine(target, cache_root, artifact.name, actual);
  }

  fs::create_directories(target.parent_path(), ec);
  if (ec) throw IoError("cannot create " + target.parent_path().string());
  fs::path partial = target;
  partial += ".part";
  try {
    download(artifact.url, partial);
  } catch (...) {
    fs::remove(partial, ec);
    throw;
  }
  if (!artifact.sha256.empty()) {
    const std::string actual = sha256_file(partial);
    if (actual != artifact.sha256) {
      fs::path q = quarantine(partial, cache_root, artifact.name, actual);
      throw DigestMismatchError("digest mismatch for " + artifact.name +
                                    ": expected " + artifact.sha256 + ", got " +
                                    actual + " (quarantined at " + q.string() +
                                    ")",
                                q);
    }
  }
  fs::rename(partial, target, ec);
  if (ec) throw IoError("cannot move download into " + target.string());
  return target;
}

}  // namespace wwweval::cli
