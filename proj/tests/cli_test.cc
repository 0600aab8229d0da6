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

#include <sys/wait.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <thread>

#include "cli/commands.h"
#include "cli/fetch.h"
#include "cli/files.h"
#include "cli/paper.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "oracles.h"
#include "wwweval/errors.h"

namespace wwweval::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("wwweval_cli_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path &path() const { return path_; }
  fs::path operator/(const std::string &name) const { return path_ / name; }

 private:
  fs::path path_;
};

struct Result {
  int code = -1;
  std::string out;
};

// Runs the installed binary; stderr is discarded.
Result run_cli(const std::string &args) {
  const std::string cmd = std::string(WWWEVAL_BIN) + " " + args + " 2>/dev/null";
  Result r;
  FILE *pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// A small synthetic collection: 6 runs, 12 topics, graded labels.
void write_collection(const TempDir &dir) {
  std::mt19937_64 gen(17);
  std::string qrels;
  for (int t = 1; t <= 12; ++t)
    for (int d = 0; d < 15; ++d)
      qrels += std::to_string(t) + " 0 doc" + std::to_string(d) + " L" +
               std::to_string(gen() % 5) + "\n";
  write_file(dir / "qrels.txt", qrels);
  fs::create_directories(dir / "runs");
  for (int r = 0; r < 6; ++r) {
    std::string text;
    for (int t = 1; t <= 12; ++t) {
      std::vector<int> docs(25);
      for (int d = 0; d < 25; ++d) docs[d] = d;
      std::shuffle(docs.begin(), docs.end(), gen);
      for (int i = 0; i < 20; ++i)
        text += std::to_string(t) + " Q0 doc" + std::to_string(docs[i]) + " " +
                std::to_string(i + 1) + " " + std::to_string(50 - i) + " run" +
                std::to_string(r) + "\n";
    }
    write_file(dir / ("runs/run" + std::to_string(r) + ".txt"), text);
  }
}

TEST(Eval, LeaderboardMatchesMatrixAndIsSorted) {
  TempDir dir;
  write_collection(dir);
  EvalOptions opts;
  opts.qrels = (dir / "qrels.txt").string();
  opts.runs = {(dir / "runs").string()};
  opts.measures = {"ndcg", "q"};
  opts.matrix_dir = (dir / "m").string();
  std::ostringstream out;
  cmd_eval(opts, out);

  const ScoreMatrix m = parse_score_matrix(read_file(dir / "m/nDCG@10.tsv"));
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "run\tnDCG@10");
  double prev = 2.0;
  for (int i = 0; i < 6; ++i) {
    ASSERT_TRUE(std::getline(lines, line));
    const auto tab = line.find('\t');
    const std::string run = line.substr(0, tab);
    const double mean = std::stod(line.substr(tab + 1));
    EXPECT_LE(mean, prev);
    prev = mean;
    EXPECT_NEAR(mean, m.column_mean(m.system_index(run)), 5e-5 + 1e-6);
  }
}

TEST(Eval, SingleRunSingleTopic) {
  TempDir dir;
  write_file(dir / "q.txt", "1 0 a L1\n");
  write_file(dir / "r.txt", "1 Q0 a 1 1.0 only\n");
  EvalOptions opts;
  opts.qrels = (dir / "q.txt").string();
  opts.runs = {(dir / "r.txt").string()};
  std::ostringstream out;
  cmd_eval(opts, out);
  EXPECT_EQ(out.str(), "run\tnDCG@10\nonly\t1.0000\n");
}

TEST(BugDemo, Examples) {
  TempDir dir;
  write_file(dir / "a.pool", "# seed=0 ordering=PRI\n1 1 dA\n1 2 dB\n");
  write_file(dir / "b.pool", "# seed=5 ordering=RND\n1 1 dB\n1 2 dA\n");
  write_file(dir / "labels.txt", "1 1 2\n1 2 0\n");
  std::ostringstream same, swapped;
  cmd_bug_demo({(dir / "a.pool").string(), (dir / "a.pool").string(),
                (dir / "labels.txt").string()},
               same);
  EXPECT_EQ(same.str(), "# topic=1 pool_size=2 divergent=0\ndoc_id\tby_docid\tby_rank\n");
  cmd_bug_demo({(dir / "a.pool").string(), (dir / "b.pool").string(),
                (dir / "labels.txt").string()},
               swapped);
  EXPECT_EQ(swapped.str(),
            "# topic=1 pool_size=2 divergent=2\ndoc_id\tby_docid\tby_rank\n"
            "dA\tL2\tL0\ndB\tL0\tL2\n");
}

TEST(BugDemo, HundredDocPoolMatchesOracle) {
  TempDir dir;
  std::mt19937_64 gen(23);
  std::vector<std::string> docs;
  for (int i = 0; i < 100; ++i) docs.push_back("doc" + std::to_string(i));
  std::vector<std::string> shuffled = docs;
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  std::string a = "# seed=0 ordering=PRI\n", b = "# seed=9 ordering=RND\n",
              labels;
  std::vector<int> by_pos;
  for (int i = 0; i < 100; ++i) {
    a += "7 " + std::to_string(i + 1) + " " + docs[i] + "\n";
    b += "7 " + std::to_string(i + 1) + " " + shuffled[i] + "\n";
    by_pos.push_back(static_cast<int>(gen() % 3));
    labels += "7 " + std::to_string(i + 1) + " " + std::to_string(by_pos.back()) + "\n";
  }
  write_file(dir / "a.pool", a);
  write_file(dir / "b.pool", b);
  write_file(dir / "labels.txt", labels);
  std::ostringstream out;
  cmd_bug_demo({(dir / "a.pool").string(), (dir / "b.pool").string(),
                (dir / "labels.txt").string()},
               out);
  const auto expected = oracle::predicted_divergence(docs, shuffled, by_pos);
  EXPECT_NE(out.str().find("divergent=" + std::to_string(expected.size()) + "\n"),
            std::string::npos);
}

TEST(Repro, IdenticalRunsReproducePerfectly) {
  TempDir dir;
  write_collection(dir);
  ReproOptions opts;
  opts.qrels = (dir / "qrels.txt").string();
  opts.orig_a = (dir / "runs/run0.txt").string();
  opts.orig_b = (dir / "runs/run1.txt").string();
  opts.rep_a = {opts.orig_a};
  opts.rep_b = {opts.orig_b};
  opts.measures = {"ndcg"};
  std::ostringstream out;
  cmd_repro(opts, out);
  EXPECT_NE(out.str().find("REP A-run\trun0\tnDCG@10\t0.0000\t1.0000\n"),
            std::string::npos)
      << out.str();
  EXPECT_NE(out.str().find("run0\trun1\tnDCG@10\t0.0000\t1.0000\t0.0000\n"),
            std::string::npos)
      << out.str();
  EXPECT_NE(out.str().find("REP A-run\trun0\t1.0000\t1.0000\n"), std::string::npos)
      << out.str();
}

TEST(PaperLayout, OverridesAndUnknownTables) {
  DataLayout layout("/data");
  EXPECT_EQ(layout.path("www2.qrels"), fs::path("/data/www2/qrels.txt"));
  layout.override_from_json(R"({"www2.qrels": "corrected/www2.qrels"})");
  EXPECT_EQ(layout.path("www2.qrels"), fs::path("/data/corrected/www2.qrels"));
  EXPECT_THROW(layout.path("nope"), PreconditionError);
  EXPECT_THROW(layout.override_from_json("[1]"), ParseError);
  std::ostringstream out;
  EXPECT_THROW(run_paper_table("no-such-table", {}, out), PreconditionError);
}

TEST(Manifest, Parsing) {
  auto m = parse_manifest(R"({"artifacts": {"b": {"url": "http://x/b"},
      "a": {"url": "http://x/a", "path": "dir/a.txt",
            "sha256": "ABCDEF0123456789abcdef0123456789abcdef0123456789abcdef0123456789"}}})");
  ASSERT_EQ(m.artifacts.size(), 2u);
  EXPECT_EQ(m.find("a").path, "dir/a.txt");
  EXPECT_EQ(m.find("a").sha256.substr(0, 6), "abcdef");
  EXPECT_EQ(m.find("b").path, "b");
  EXPECT_THROW(m.find("c"), PreconditionError);
  EXPECT_THROW(parse_manifest("{"), ParseError);
  EXPECT_THROW(parse_manifest(R"({"artifacts": {"a": {}}})"), ParseError);
  EXPECT_THROW(parse_manifest(R"({"artifacts": {"a": {"url": "u", "sha256": "12"}}})"),
               ParseError);
  EXPECT_THROW(parse_manifest(R"({"artifacts": {"a": {"url": "u", "path": "../x"}}})"),
               PreconditionError);
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

// Serves /good and /other; everything else is 404.
class LocalServer {
 public:
  LocalServer() {
    server_.Get("/good", [](const httplib::Request &, httplib::Response &res) {
      res.set_content("payload\n", "text/plain");
    });
    server_.Get("/other", [](const httplib::Request &, httplib::Response &res) {
      res.set_content("tampered\n", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string &path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

std::string manifest_json(const LocalServer &server, const std::string &path,
                          const std::string &digest) {
  return R"({"artifacts": {"qrels": {"url": ")" + server.url(path) +
         R"(", "path": "www2/qrels.txt", "sha256": ")" + digest + R"("}}})";
}

TEST(Fetch, ColdThenWarmCache) {
  LocalServer server;
  TempDir dir;
  const std::string digest = sha256_hex("payload\n");
  const Artifact a = parse_manifest(manifest_json(server, "/good", digest)).find("qrels");
  const fs::path got = fetch_artifact(a, dir.path());
  EXPECT_EQ(got, dir / "www2/qrels.txt");
  EXPECT_EQ(read_file(got), "payload\n");

  int calls = 0;
  Downloader no_network = [&](const std::string &, const fs::path &) {
    ++calls;
    throw NetworkError("network touched");
  };
  EXPECT_EQ(fetch_artifact(a, dir.path(), no_network), got);
  EXPECT_EQ(calls, 0);
}

TEST(Fetch, NotFoundIsNetworkError) {
  LocalServer server;
  TempDir dir;
  const Artifact a = parse_manifest(manifest_json(server, "/missing", sha256_hex("x")))
                         .find("qrels");
  EXPECT_THROW(fetch_artifact(a, dir.path()), NetworkError);
  EXPECT_FALSE(fs::exists(dir / "www2/qrels.txt"));
}

TEST(Fetch, DigestMismatchIsQuarantined) {
  LocalServer server;
  TempDir dir;
  const Artifact a = parse_manifest(manifest_json(server, "/other", sha256_hex("payload\n")))
                         .find("qrels");
  try {
    fetch_artifact(a, dir.path());
    FAIL() << "expected DigestMismatchError";
  } catch (const DigestMismatchError &e) {
    EXPECT_TRUE(fs::exists(e.quarantine_path()));
    EXPECT_EQ(read_file(e.quarantine_path()), "tampered\n");
  }
  EXPECT_FALSE(fs::exists(dir / "www2/qrels.txt"));
}

TEST(Fetch, StaleCacheEntryIsReplaced) {
  LocalServer server;
  TempDir dir;
  fs::create_directories(dir / "www2");
  write_file(dir / "www2/qrels.txt", "stale\n");
  const Artifact a = parse_manifest(manifest_json(server, "/good", sha256_hex("payload\n")))
                         .find("qrels");
  EXPECT_EQ(read_file(fetch_artifact(a, dir.path())), "payload\n");
  EXPECT_TRUE(fs::exists(dir / ".quarantine"));
}

TEST(Binary, ExitCodesAreDistinct) {
  LocalServer server;
  TempDir dir;
  write_file(dir / "ok.json", manifest_json(server, "/good", sha256_hex("payload\n")));
  write_file(dir / "404.json", manifest_json(server, "/missing", sha256_hex("x")));
  write_file(dir / "bad.json", manifest_json(server, "/other", sha256_hex("payload\n")));
  const std::string root = " --cache-root " + (dir / "cache").string();

  Result ok = run_cli("fetch --manifest " + (dir / "ok.json").string() + root);
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("qrels\t"), std::string::npos);
  EXPECT_EQ(run_cli("fetch --manifest " + (dir / "404.json").string() + root +
                    "404").code,
            5);
  EXPECT_EQ(run_cli("fetch --manifest " + (dir / "bad.json").string() + root +
                    "bad").code,
            6);

  write_file(dir / "q.txt", "1 0 a Lx\n");
  write_file(dir / "r.txt", "1 Q0 a 1 1.0 r\n");
  const std::string runs = " --runs " + (dir / "r.txt").string();
  EXPECT_EQ(run_cli("eval --qrels " + (dir / "q.txt").string() + runs).code, 2);
  write_file(dir / "q.txt", "1 0 a L0\n");
  EXPECT_EQ(run_cli("eval --qrels " + (dir / "q.txt").string() + runs).code, 3);
  EXPECT_EQ(run_cli("eval --qrels " + (dir / "none.txt").string() + runs).code, 4);
  EXPECT_EQ(run_cli("eval" + runs).code, 1);
}

TEST(Binary, CacheRootFromEnvironment) {
  LocalServer server;
  TempDir dir;
  write_file(dir / "ok.json", manifest_json(server, "/good", sha256_hex("payload\n")));
  const std::string cmd = "WWWEVAL_CACHE_ROOT=" + (dir / "envcache").string() +
                          " " + WWWEVAL_BIN + " fetch --manifest " +
                          (dir / "ok.json").string() + " >/dev/null 2>&1";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "envcache/www2/qrels.txt"));
}

// Every seeded command: two runs, and serial vs parallel, give identical
// bytes.
TEST(Binary, SeededCommandsAreDeterministic) {
  TempDir dir;
  write_collection(dir);
  const std::string q = (dir / "qrels.txt").string();
  const std::string runs = (dir / "runs").string();
  ASSERT_EQ(run_cli("eval --qrels " + q + " --runs " + runs +
                    " --measure ndcg --matrix-dir " + (dir / "m").string())
                .code,
            0);
  const std::string matrix = (dir / "m/nDCG@10.tsv").string();
  // (command, accepts --threads)
  const std::vector<std::pair<std::string, bool>> commands = {
      {"eval --qrels " + q + " --runs " + runs +
           " --measure ndcg --measure q --measure nerr --measure irbu",
       true},
      {"tukey --matrix " + matrix + " --trials 3000 --seed 11", true},
      {"compare-rankings --variant a=" + q + " --variant b=" + q + " --runs " +
           runs + " --ci bootstrap --boot 500 --seed 4",
       true},
      {"pool --runs " + runs + " --topic 3 --depth 10 --ordering RND --seed 8",
       false},
  };
  for (const auto &[c, threaded] : commands) {
    const std::string serial = threaded ? c + " --threads 1" : c;
    Result first = run_cli(serial);
    ASSERT_EQ(first.code, 0) << c;
    ASSERT_FALSE(first.out.empty());
    EXPECT_EQ(first.out, run_cli(serial).out) << c;
    if (threaded) EXPECT_EQ(first.out, run_cli(c + " --threads 4").out) << c;
  }
}

TEST(Binary, AutoSeedIsReported) {
  TempDir dir;
  write_file(dir / "m.tsv", "topic\ta\tb\nt1\t0.1\t0.2\nt2\t0.3\t0.5\n");
  Result r = run_cli("tukey --trials 10 --matrix " + (dir / "m.tsv").string());
  ASSERT_EQ(r.code, 0);
  const auto pos = r.out.find("seed=");
  ASSERT_NE(pos, std::string::npos);
  const std::string seed = r.out.substr(pos + 5, r.out.find(' ', pos) - pos - 5);
  Result replay = run_cli("tukey --trials 10 --seed " + seed + " --matrix " +
                          (dir / "m.tsv").string());
  EXPECT_EQ(r.out, replay.out);
}

}  // namespace
}  // namespace wwweval::cli
