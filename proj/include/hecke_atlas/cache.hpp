#pragma once

#include <optional>
#include <string>

#include "hecke_atlas/numtheory.hpp"

namespace atlas {

inline constexpr const char* kCodeVersion = "hecke-atlas-1.0.0";

// Content-addressed JSON cache. Entries are keyed by (kind, parameter
// string, code version); payloads carry a checksum validated on read, and
// a version change invalidates every entry. Writes go through a temp file
// and an atomic rename.
class Cache {
 public:
  // dir resolution order: explicit argument, HECKE_ATLAS_CACHE, default
  // ".hecke-atlas-cache"
  explicit Cache(std::string dir = "");

  const std::string& dir() const { return dir_; }
  std::optional<std::string> load(const std::string& kind,
                                  const std::string& params) const;
  void store(const std::string& kind, const std::string& params,
             const std::string& payload) const;

 private:
  std::string path_for(const std::string& kind, const std::string& params) const;
  std::string dir_;
};

u64 fnv1a(const std::string& data);

}  // namespace atlas
