#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "jetbound/bound_engine.hpp"
#include "jetbound/cache.hpp"

using namespace jetbound;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("jetbound-cache-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

CacheRecord record(const std::string& material, std::size_t rank) {
  CacheRecord r;
  r.key = cache_key(material);
  r.key_material = material;
  r.rank = rank;
  r.certified = true;
  return r;
}

}  // namespace

TEST_CASE("put then get") {
  TempDir dir;
  FileRankCache cache(dir.path);
  CHECK_FALSE(cache.get("a"));
  cache.put(record("a", 5));
  const auto hit = cache.get("a");
  REQUIRE(hit);
  CHECK(hit->rank == 5);
  CHECK(hit->certified);
  CHECK(cache.entry_count() == 1);
  CHECK(cache.clear() == 1);
  CHECK_FALSE(cache.get("a"));
}

TEST_CASE("a version bump invalidates entries") {
  TempDir dir;
  FileRankCache(dir.path, "v1").put(record("a", 5));
  FileRankCache newer(dir.path, "v2");
  CHECK_FALSE(newer.get("a"));
  CHECK(newer.evictions() == 1);
  CHECK(newer.entry_count() == 0);
}

TEST_CASE("corrupt and mismatched entries are evicted") {
  TempDir dir;
  FileRankCache cache(dir.path);
  cache.put(record("a", 5));
  {
    std::ofstream out(dir.path / (cache_key("a") + ".json"), std::ios::trunc);
    out << "{\"key\": ";
  }
  CHECK_FALSE(cache.get("a"));
  CHECK(cache.evictions() == 1);

  // A record stored under another material's key is a collision, not a hit.
  cache.put(record("b", 3));
  fs::rename(dir.path / (cache_key("b") + ".json"), dir.path / (cache_key("c") + ".json"));
  CHECK_FALSE(cache.get("c"));
  CHECK(cache.evictions() == 2);
}

TEST_CASE("concurrent writers") {
  TempDir dir;
  FileRankCache cache(dir.path);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&cache, t] {
      for (int i = 0; i < 50; ++i) cache.put(record("k" + std::to_string(i % 10), static_cast<std::size_t>(i % 10 + t * 0)));
    });
  }
  for (auto& th : threads) th.join();
  CHECK(cache.entry_count() == 10);
  for (int i = 0; i < 10; ++i) {
    const auto hit = cache.get("k" + std::to_string(i));
    REQUIRE(hit);
    CHECK(hit->rank == static_cast<std::size_t>(i));
  }
  std::size_t stray = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) stray += e.path().extension() != ".json";
  CHECK(stray == 0);
}

TEST_CASE("cached and uncached engines agree") {
  TempDir dir;
  FileRankCache cache(dir.path);
  const auto delta = RationalPolytope::from_points({{0, 0}, {2, 1}, {1, 2}});
  EngineOptions plain;
  plain.k_budget = 3;
  plain.seed = 99;
  EngineOptions cached = plain;
  cached.cache = &cache;
  const Weights w({Rational(1), Rational(1)});
  const auto a = multipoint_seshadri_lower(delta, w, plain);
  const auto b = multipoint_seshadri_lower(delta, w, cached);
  CHECK(cache.entry_count() > 0);
  const auto c = multipoint_seshadri_lower(delta, w, cached);
  CHECK(a.lower == b.lower);
  CHECK(b.lower == c.lower);
  CHECK(a.jets == c.jets);
  CHECK(seshadri_lower_bound(delta, cached).lower == seshadri_lower_bound(delta, plain).lower);
}
