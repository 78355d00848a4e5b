#include "ibcsplit/reference_cache.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace ibc {

namespace {

std::string iso_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string hexfloat(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

bool parse_hexfloat(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end != nullptr && end != s.c_str();
}

}  // namespace

std::string ReferenceCache::digest(std::string_view canonical) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::filesystem::path ReferenceCache::entry_path(std::string_view digest) const {
  return dir_ / (std::string(digest) + ".refcache");
}

std::optional<Eigen::VectorXd> ReferenceCache::lookup(const std::string& canonical) const {
  if (!enabled_) return std::nullopt;
  const std::string dig = digest(canonical);
  const std::filesystem::path path = entry_path(dig);
  std::ifstream in(path);
  if (!in) return std::nullopt;

  const auto miss = [&](const char* why) -> std::optional<Eigen::VectorXd> {
    std::cerr << "warning: ignoring corrupt reference cache entry " << path << " (" << why
              << ")\n";
    return std::nullopt;
  };

  std::string line;
  std::string file_digest, file_canonical;
  long dim = -1;
  while (std::getline(in, line) && !line.empty() && line[0] == '#') {
    std::istringstream ls(line);
    std::string hash, key;
    ls >> hash >> key;
    if (key == "digest") {
      ls >> file_digest;
    } else if (key == "canonical") {
      std::getline(ls, file_canonical);
      if (!file_canonical.empty() && file_canonical.front() == ' ')
        file_canonical.erase(0, 1);
    } else if (key == "dim") {
      ls >> dim;
    }
  }
  if (file_digest != dig) return miss("digest mismatch");
  if (file_canonical != canonical) return miss("canonical spec mismatch");
  if (dim < 0) return miss("missing dimension");

  Eigen::VectorXd v(dim);
  // the first non-header line was already consumed by the loop above
  for (long i = 0; i < dim; ++i) {
    if (i > 0 && !std::getline(in, line)) return miss("truncated vector");
    if (!parse_hexfloat(line, v[i])) return miss("unparseable value");
  }
  return v;
}

void ReferenceCache::store(const std::string& canonical, double abs_tol, double rel_tol,
                           const Eigen::VectorXd& endpoint) const {
  if (!enabled_) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    std::cerr << "warning: cannot create reference cache directory " << dir_ << ": "
              << ec.message() << "\n";
    return;
  }

  const std::string dig = digest(canonical);
  std::random_device rd;
  const std::filesystem::path tmp =
      dir_ / (dig + ".tmp-" + std::to_string(rd() % 1000000));
  {
    std::ofstream out(tmp);
    if (!out) {
      std::cerr << "warning: cannot write reference cache file " << tmp << "\n";
      return;
    }
    out << "# ibcsplit reference cache v1\n";
    out << "# digest " << dig << "\n";
    out << "# created " << iso_now() << "\n";
    out << "# abs_tol " << hexfloat(abs_tol) << "\n";
    out << "# rel_tol " << hexfloat(rel_tol) << "\n";
    out << "# canonical " << canonical << "\n";
    out << "# dim " << endpoint.size() << "\n";
    for (Eigen::Index i = 0; i < endpoint.size(); ++i) out << hexfloat(endpoint[i]) << "\n";
  }
  std::filesystem::rename(tmp, entry_path(dig), ec);
  if (ec) {
    std::cerr << "warning: cannot finalize reference cache entry: " << ec.message() << "\n";
    std::filesystem::remove(tmp, ec);
  }
}

}  // namespace ibc
