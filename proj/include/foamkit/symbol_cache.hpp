#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foamkit/matrix2.hpp"

namespace foamkit {

// One cached symbol value. Binary layout (little-endian byte order, records
// self-delimiting, duplicate keys resolve to the last-written record):
//   kind     : 1 byte
//   n_spins  : uint8, then n_spins  x int32  (twice-spins)
//   n_params : uint8, then n_params x double
//   value    : 2 x double (re, im)
struct CacheKey {
    std::uint8_t kind = 0;
    std::vector<std::int32_t> spins;
    std::vector<double> params;

    bool operator<(const CacheKey& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (spins != o.spins) return spins < o.spins;
        // bitwise double comparison keeps 0.0 / -0.0 and NaN keys distinct
        auto bits = [](const std::vector<double>& v) {
            std::vector<std::uint64_t> b(v.size());
            std::memcpy(b.data(), v.data(), v.size() * sizeof(double));
            return b;
        };
        return bits(params) < bits(o.params);
    }
};

// Append-only persistent cache of complex symbol values, kept in memory and
// mirrored to <dir>/symbols.bin. A corrupt or truncated tail is skipped with a
// warning; everything before it loads normally.
class SymbolCache {
public:
    explicit SymbolCache(const std::filesystem::path& dir) : dir_(dir) {
        std::filesystem::create_directories(dir_);
        load();
    }

    std::optional<Complex> lookup(const CacheKey& key) const {
        auto it = table_.find(key);
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }

    void store(const CacheKey& key, Complex value) {
        table_[key] = value;
        std::ofstream out(file_path(), std::ios::binary | std::ios::app);
        std::string rec = encode(key, value);
        out.write(rec.data(), (std::streamsize)rec.size());
    }

    std::map<int, std::size_t> stats() const {
        std::map<int, std::size_t> counts;
        for (const auto& [k, v] : table_) ++counts[(int)k.kind];
        return counts;
    }

    std::size_t size() const { return table_.size(); }

    void clear() {
        table_.clear();
        std::error_code ec;
        std::filesystem::remove(file_path(), ec);
    }

    const std::vector<std::string>& warnings() const { return warnings_; }
    std::filesystem::path file_path() const { return dir_ / "symbols.bin"; }

private:
    static std::string encode(const CacheKey& key, Complex value) {
        std::string out;
        auto raw = [&](const void* p, std::size_t n) {
            out.append(reinterpret_cast<const char*>(p), n);
        };
        out.push_back((char)key.kind);
        std::uint8_t ns = (std::uint8_t)key.spins.size();
        raw(&ns, 1);
        raw(key.spins.data(), key.spins.size() * sizeof(std::int32_t));
        std::uint8_t np = (std::uint8_t)key.params.size();
        raw(&np, 1);
        raw(key.params.data(), key.params.size() * sizeof(double));
        double re = value.real(), im = value.imag();
        raw(&re, sizeof(double));
        raw(&im, sizeof(double));
        return out;
    }

    void load() {
        std::ifstream in(file_path(), std::ios::binary);
        if (!in) return;
        std::string buf((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
        std::size_t pos = 0;
        auto take = [&](void* p, std::size_t n) {
            if (pos + n > buf.size()) return false;
            std::memcpy(p, buf.data() + pos, n);
            pos += n;
            return true;
        };
        while (pos < buf.size()) {
            std::size_t start = pos;
            CacheKey key;
            std::uint8_t ns = 0, np = 0;
            double re = 0, im = 0;
            bool ok = take(&key.kind, 1) && take(&ns, 1);
            if (ok) {
                key.spins.resize(ns);
                ok = take(key.spins.data(), ns * sizeof(std::int32_t)) && take(&np, 1);
            }
            if (ok) {
                key.params.resize(np);
                ok = take(key.params.data(), np * sizeof(double)) &&
                     take(&re, sizeof(double)) && take(&im, sizeof(double));
            }
            if (!ok) {
                warnings_.push_back("symbol cache: skipped corrupt record at byte offset " +
                                    std::to_string(start));
                break;
            }
            table_[key] = Complex(re, im);
        }
    }

    std::filesystem::path dir_;
    std::map<CacheKey, Complex> table_;
    std::vector<std::string> warnings_;
};

}  // namespace foamkit
