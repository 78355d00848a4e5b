#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace ibc {

/// One plain-text file per digest under dir/: a commented metadata header
/// (digest, creation time, tolerances, full canonical spec string) followed
/// by the endpoint vector, one hexfloat per line (bit-exact round trip).
/// Lookup requires an exact canonical match; corrupt entries degrade to a
/// miss with a warning. Stores replace atomically (temp file + rename).
class ReferenceCache {
public:
  ReferenceCache(std::filesystem::path dir, bool enabled)
      : dir_(std::move(dir)), enabled_(enabled && !dir_.empty()) {}

  bool enabled() const { return enabled_; }

  std::optional<Eigen::VectorXd> lookup(const std::string& canonical) const;
  void store(const std::string& canonical, double abs_tol, double rel_tol,
             const Eigen::VectorXd& endpoint) const;

  /// FNV-1a 64-bit over the canonical serialization, as 16 hex digits.
  static std::string digest(std::string_view canonical);

private:
  std::filesystem::path entry_path(std::string_view digest) const;

  std::filesystem::path dir_;
  bool enabled_;
};

}  // namespace ibc
