#pragma once

// Loading group spec documents:
//   {"kind": "...", "params": {...}, "generators": [{"name": "a", "element": ...}]}
// A free-product document lists its factors as full documents under
// params.factors; any other kind yields a one-factor ambient group.

#include <filesystem>

#include <json.hpp>

#include "fpg/free_product.hpp"

namespace fpg {

struct GroupSpec {
  FreeProductPtr ambient;
  nlohmann::json document;

  const FreeProduct& group() const { return *ambient; }
  bool two_factor() const { return ambient->factor_count() == 2; }
};

/// Relative CSV paths for Cayley tables resolve against `base_dir`.
GroupSpec load_group(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
GroupSpec load_group_file(const std::filesystem::path& path);

/// Convenience documents for the common factors.
nlohmann::json cyclic_doc(std::int64_t n, const std::string& gen);
nlohmann::json integers_doc(const std::string& gen);
nlohmann::json free_product_doc(std::vector<nlohmann::json> factors);

}  // namespace fpg
