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

// Dataset manifests and a digest-checked download cache.
//
// A manifest is JSON:
//
//   {"artifacts": {
//      "www2.qrels": {"url": "https://...", "sha256": "ab12...",
//                     "path": "www2/qrels.txt"}}}
//
// "path" is relative to the cache root and defaults to the artifact name;
// "sha256" is optional. Renaming files on the server only needs a manifest
// edit.

#ifndef WWWEVAL_TOOLS_CLI_FETCH_H_
#define WWWEVAL_TOOLS_CLI_FETCH_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wwweval/errors.h"

namespace wwweval::cli {

// The download itself failed (DNS, connection, HTTP status >= 400).
class NetworkError : public Error {
 public:
  using Error::Error;
};

// Downloaded content does not match the manifest digest. The offending file
// has been moved to quarantine_path().
class DigestMismatchError : public Error {
 public:
  DigestMismatchError(const std::string &message,
                      std::filesystem::path quarantine_path)
      : Error(message), quarantine_path_(std::move(quarantine_path)) {}

  const std::filesystem::path &quarantine_path() const {
    return quarantine_path_;
  }

 private:
  std::filesystem::path quarantine_path_;
};

struct Artifact {
  std::string name;
  std::string url;
  std::string sha256;  // lowercase hex, empty when unknown
  std::string path;    // relative to the cache root
};

struct DatasetManifest {
  std::vector<Artifact> artifacts;  // sorted by name

  // Throws PreconditionError for an unknown name.
  const Artifact &find(std::string_view name) const;
};

// Throws ParseError on malformed JSON or missing/ill-typed fields, and
// PreconditionError on absolute or escaping paths.
DatasetManifest parse_manifest(std::string_view json);

// --cache-root if given, else $WWWEVAL_CACHE_ROOT, else
// $XDG_CACHE_HOME/wwweval, else $HOME/.cache/wwweval.
std::filesystem::path resolve_cache_root(
    const std::optional<std::string> &flag);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path &path);

// Writes the body at url to dest. Throws NetworkError.
using Downloader =
    std::function<void(const std::string &url, const std::filesystem::path &dest)>;

// libcurl, following redirects, failing on HTTP errors.
void curl_download(const std::string &url, const std::filesystem::path &dest);

// Returns the cached path of `artifact`. A cached file is reused without
// network access when it matches the digest (or when there is no digest).
// A stale cached file is quarantined and downloaded again. A download that
// fails the digest is quarantined and reported as DigestMismatchError.
std::filesystem::path fetch_artifact(const Artifact &artifact,
                                     const std::filesystem::path &cache_root,
                                     const Downloader &download = curl_download);

}  // namespace wwweval::cli

#endif  // WWWEVAL_TOOLS_CLI_FETCH_H_
