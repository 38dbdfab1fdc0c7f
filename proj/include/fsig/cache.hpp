#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include "fsig/rational.hpp"
#include "fsig/sigcore.hpp"

namespace fsig {

// Identity of one colon-length computation.
struct CacheKey {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::uint32_t c = 0;
  std::uint64_t a = 0;
  std::string f;  // canonical polynomial form

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const noexcept {
    std::size_t h = std::hash<std::string>{}(k.f);
    auto mix = [&h](std::uint64_t v) {
      h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    };
    mix(k.p);
    mix(k.n);
    mix(k.c);
    mix(k.a);
    return h;
  }
};

// Append-only JSONL store of colon lengths, one record per line:
//   {"a":75,"c":3,"f":"x^3+y^2","length":"500","n":2,"p":5}
// Corrupt lines are skipped with a warning; a record is written at most once
// per key and flushed as a single line, so concurrent appenders do not
// interleave partial records. With an empty path the cache is memory-only.
class LengthCache {
 public:
  LengthCache() = default;

  explicit LengthCache(const std::filesystem::path& path) : path_(path) {
    if (path_.empty()) return;
    load_existing();
    out_.open(path_, std::ios::app);
    if (!out_) {
      throw std::runtime_error("cannot open cache file: " + path_.string());
    }
  }

  std::optional<BigInt> lookup(const CacheKey& key) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void store(const CacheKey& key, const BigInt& length) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = map_.emplace(key, length);
    if (!inserted) return;
    if (!out_.is_open()) return;
    nlohmann::json j;
    j["p"] = key.p;
    j["n"] = key.n;
    j["c"] = key.c;
    j["a"] = key.a;
    j["f"] = key.f;
    j["length"] = length.str();
    const std::string line = j.dump() + "\n";
    out_.write(line.data(), static_cast<std::streamsize>(line.size()));
    out_.flush();
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
  }

  // A LengthProvider that resolves through the cache and computes (and
  // records) misses. Safe for concurrent use from table sweeps.
  LengthProvider provider() {
    return [this](const SparsePoly& f, std::uint64_t a,
                  const TruncationParams& tp) -> BigInt {
      const CacheKey key{tp.p, tp.n, tp.c, a, f.to_string()};
      if (auto hit = lookup(key)) return *hit;
      const BigInt length = colon_length(f, a, tp).length;
      store(key, length);
      return length;
    };
  }

 private:
  void load_existing() {
    std::ifstream in(path_);
    if (!in) return;  // no cache yet
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        const nlohmann::json j = nlohmann::json::parse(line);
        CacheKey key;
        key.p = j.at("p").get<std::uint64_t>();
        key.n = j.at("n").get<unsigned>();
        key.c = j.at("c").get<std::uint32_t>();
        key.a = j.at("a").get<std::uint64_t>();
        key.f = j.at("f").get<std::string>();
        const std::string digits = j.at("length").get<std::string>();
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos) {
          throw std::runtime_error("length is not a natural number");
        }
        const BigInt length(digits);
        if (key.n < 1 || key.n > kMaxVars || !is_prime_u64(key.p)) {
          throw std::runtime_error("invalid ring parameters");
        }
        if (length > big_pow(BigInt(key.p), key.c * key.n)) {
          throw std::runtime_error("length exceeds the bracket colength");
        }
        map_.emplace(std::move(key), length);
      } catch (const std::exception& e) {
        std::cerr << "warning: skipping corrupt cache line " << lineno
                  << " in " << path_.string() << ": " << e.what() << "\n";
      }
    }
  }

  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::unordered_map<CacheKey, BigInt, CacheKeyHash> map_;
  std::ofstream out_;
};

}  // namespace fsig
