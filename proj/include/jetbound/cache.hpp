#pragma once

// Rank cache. Records are addressed by a hash of their key material (the
// canonical instance text plus everything else that influences the rank
// verdict: ideal, jet orders, seed, exactness). A stored copy of the key
// material guards against hash collisions.

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace jetbound {

/// Bumping this invalidates every cached rank.
inline constexpr const char* kEngineVersion = "jetbound-0.1.0";

struct CacheRecord {
  std::string key;           // hex digest of key_material
  std::string key_material;  // canonical description of the rank query
  std::size_t rank = 0;
  bool certified = false;
  std::string engine_version = kEngineVersion;
};

std::string cache_key(const std::string& key_material);

class RankCache {
 public:
  virtual ~RankCache() = default;
  virtual std::optional<CacheRecord> get(const std::string& key_material) = 0;
  virtual void put(const CacheRecord& record) = 0;
};

class MemoryRankCache final : public RankCache {
 public:
  std::optional<CacheRecord> get(const std::string& key_material) override;
  void put(const CacheRecord& record) override;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, CacheRecord> records_;
};

/// One JSON file per record under `root`. Writers go through a temporary
/// file and an atomic rename, so concurrent processes never observe partial
/// records. Entries that fail to parse, carry another engine version, or
/// whose key material does not match are deleted on read.
class FileRankCache final : public RankCache {
 public:
  explicit FileRankCache(std::filesystem::path root, std::string engine_version = kEngineVersion);

  std::optional<CacheRecord> get(const std::string& key_material) override;
  void put(const CacheRecord& record) override;

  const std::filesystem::path& root() const { return root_; }
  std::size_t entry_count() const;
  std::size_t evictions() const { return evictions_; }
  /// Removes every record; returns how many were deleted.
  std::size_t clear();

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path root_;
  std::string engine_version_;
  std::size_t evictions_ = 0;
  mutable std::mutex mutex_;
};

}  // namespace jetbound
