#pragma once

#include <cstdint>
#include <string_view>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "hyperbounds/series.hpp"

namespace hyperbounds {

// Coefficient-table cache keyed by (kind, n, box). Disk entries carry a
// trailing FNV-1a checksum; corrupt files are recomputed, never trusted.
// Writes publish atomically (temp file + rename).
class SeriesCache {
public:
    // Empty dir: in-memory only.
    explicit SeriesCache(std::filesystem::path dir = {});

    const std::filesystem::path& dir() const { return dir_; }

    MultiSeries get_or_build(const std::string& kind, int n, const TruncationBox& box,
                             const std::function<MultiSeries()>& build);

    struct EntryInfo {
        std::string file;
        std::uintmax_t bytes = 0;
        bool checksum_ok = false;
    };
    std::vector<EntryInfo> inspect() const;
    std::size_t purge();

    static std::string entry_name(const std::string& kind, int n, const TruncationBox& box);

    // number of cache file reads that failed verification and triggered a
    // recompute (exposed for the fault-injection tests)
    int corrupt_reads() const { return corrupt_reads_; }

private:
    std::filesystem::path dir_;
    std::mutex mutex_;
    std::map<std::string, MultiSeries> memory_;
    int corrupt_reads_ = 0;
};

std::uint64_t fnv1a64(std::string_view payload);

}  // namespace hyperbounds
