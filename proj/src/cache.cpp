#include "hecke_atlas/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace atlas {

u64 fnv1a(const std::string& data) {
  u64 h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Cache::Cache(std::string dir) {
  if (dir.empty()) {
    const char* env = std::getenv("HECKE_ATLAS_CACHE");
    dir = env ? env : ".hecke-atlas-cache";
  }
  dir_ = dir;
  std::filesystem::create_directories(dir_);
}

std::string Cache::path_for(const std::string& kind,
                            const std::string& params) const {
  std::ostringstream os;
  os << dir_ << "/" << kind << "-" << std::hex << fnv1a(kind + "|" + params)
     << ".json";
  return os.str();
}

std::optional<std::string> Cache::load(const std::string& kind,
                                       const std::string& params) const {
  std::ifstream in(path_for(kind, params));
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (...) {
    return std::nullopt;
  }
  if (!j.is_object() || j.value("version", "") != kCodeVersion ||
      j.value("kind", "") != kind || j.value("params", "") != params)
    return std::nullopt;
  std::string payload = j.value("payload", "");
  std::ostringstream chk;
  chk << std::hex << fnv1a(payload);
  if (j.value("checksum", "") != chk.str()) return std::nullopt;
  return payload;
}

void Cache::store(const std::string& kind, const std::string& params,
                  const std::string& payload) const {
  nlohmann::ordered_json j;
  j["version"] = kCodeVersion;
  j["kind"] = kind;
  j["params"] = params;
  std::ostringstream chk;
  chk << std::hex << fnv1a(payload);
  j["checksum"] = chk.str();
  j["payload"] = payload;
  std::string path = path_for(kind, params);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace atlas
