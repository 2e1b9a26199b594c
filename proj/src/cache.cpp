#include "jetbound/cache.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include <nlohmann/json.hpp>

#include "jetbound/hashing.hpp"

namespace jetbound {

namespace fs = std::filesystem;

std::string cache_key(const std::string& key_material) { return to_hex(fnv1a64(key_material)); }

std::optional<CacheRecord> MemoryRankCache::get(const std::string& key_material) {
  std::lock_guard lock(mutex_);
  auto it = records_.find(key_material);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void MemoryRankCache::put(const CacheRecord& record) {
  std::lock_guard lock(mutex_);
  records_[record.key_material] = record;
}

std::size_t MemoryRankCache::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

FileRankCache::FileRankCache(fs::path root, std::string engine_version)
    : root_(std::move(root)), engine_version_(std::move(engine_version)) {
  fs::create_directories(root_);
}

fs::path FileRankCache::path_for(const std::string& key) const { return root_ / (key + ".json"); }

std::optional<CacheRecord> FileRankCache::get(const std::string& key_material) {
  const std::string key = cache_key(key_material);
  const fs::path path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  in.close();

  CacheRecord rec;
  bool ok = false;
  try {
    const auto j = nlohmann::json::parse(buf.str());
    rec.key = j.at("key").get<std::string>();
    rec.key_material = j.at("key_material").get<std::string>();
    rec.rank = j.at("rank").get<std::size_t>();
    rec.certified = j.at("certified").get<bool>();
    rec.engine_version = j.at("engine_version").get<std::string>();
    ok = rec.key == key && rec.key_material == key_material &&
         rec.engine_version == engine_version_;
  } catch (const nlohmann::json::exception&) {
    ok = false;
  }
  if (!ok) {
    std::lock_guard lock(mutex_);
    std::error_code ec;
    fs::remove(path, ec);
    ++evictions_;
    return std::nullopt;
  }
  return rec;
}

void FileRankCache::put(const CacheRecord& record) {
  static std::atomic<std::uint64_t> counter{0};
  nlohmann::ordered_json j;
  j["key"] = cache_key(record.key_material);
  j["key_material"] = record.key_material;
  j["rank"] = record.rank;
  j["certified"] = record.certified;
  j["engine_version"] = engine_version_;

  const fs::path target = path_for(j["key"].get<std::string>());
  std::ostringstream tmp_name;
  tmp_name << ".tmp-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-"
           << counter.fetch_add(1) << "-" << j["key"].get<std::string>();
  const fs::path tmp = root_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << '\n';
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

std::size_t FileRankCache::entry_count() const {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(root_)) {
    if (e.path().extension() == ".json") ++n;
  }
  return n;
}

std::size_t FileRankCache::clear() {
  std::size_t n = 0;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(root_)) {
    if (e.path().extension() == ".json" && fs::remove(e.path(), ec)) ++n;
  }
  return n;
}

}  // namespace jetbound
