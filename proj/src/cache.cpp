#include "hyperbounds/cache.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace hyperbounds {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view payload) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SeriesCache::SeriesCache(fs::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
}

std::string SeriesCache::entry_name(const std::string& kind, int n, const TruncationBox& box) {
    std::ostringstream name;
    name << kind << "_n" << n << "_caps";
    for (std::size_t j = 0; j < box.caps.size(); ++j) {
        if (j) name << '-';
        name << box.caps[j];
    }
    name << "_total";
    if (box.total_cap) {
        name << *box.total_cap;
    } else {
        name << "none";
    }
    name << "_v1.hbs";
    return name.str();
}

namespace {

std::string serialize_with_checksum(const MultiSeries& s) {
    std::ostringstream payload;
    write_series(payload, s);
    std::string body = payload.str();
    std::ostringstream out;
    out << body << "checksum " << std::hex << fnv1a64(body) << "\n";
    return out.str();
}

bool load_entry(const fs::path& file, const TruncationBox& expected_box, MultiSeries& out) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return false;
    std::string content;
    {
        std::ostringstream whole;
        whole << in.rdbuf();
        content = std::move(whole).str();
    }
    auto pos = content.rfind("checksum ");
    if (pos == std::string::npos) return false;
    std::istringstream tail(content.substr(pos + 9));
    std::uint64_t stored = 0;
    tail >> std::hex >> stored;
    if (!tail || stored != fnv1a64(std::string_view(content.data(), pos))) return false;
    // read_series consumes exactly the announced term count; the trailing
    // checksum line is ignored
    std::istringstream body_in(std::move(content));
    try {
        MultiSeries s = read_series(body_in);
        if (s.box() != expected_box) return false;
        out = std::move(s);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

MultiSeries SeriesCache::get_or_build(const std::string& kind, int n, const TruncationBox& box,
                                      const std::function<MultiSeries()>& build) {
    const std::string name = entry_name(kind, n, box);
    {
        std::lock_guard lock(mutex_);
        auto it = memory_.find(name);
        if (it != memory_.end()) return it->second;
    }
    if (!dir_.empty()) {
        fs::path file = dir_ / name;
        if (fs::exists(file)) {
            MultiSeries loaded{box};
            if (load_entry(file, box, loaded)) {
                std::lock_guard lock(mutex_);
                auto [it, ignored] = memory_.emplace(name, std::move(loaded));
                return it->second;
            }
            std::lock_guard lock(mutex_);
            ++corrupt_reads_;
            std::cerr << "hyperbounds: cache entry " << file.string()
                      << " failed verification, recomputing\n";
        }
    }
    MultiSeries built = build();
    if (!dir_.empty()) {
        fs::path file = dir_ / name;
        fs::path tmp = file;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << serialize_with_checksum(built);
        }
        fs::rename(tmp, file);
    }
    std::lock_guard lock(mutex_);
    auto [it, ignored] = memory_.emplace(name, std::move(built));
    return it->second;
}

std::vector<SeriesCache::EntryInfo> SeriesCache::inspect() const {
    std::vector<EntryInfo> infos;
    if (dir_.empty() || !fs::exists(dir_)) return infos;
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".hbs") continue;
        EntryInfo info;
        info.file = entry.path().filename().string();
        info.bytes = entry.file_size();
        std::ifstream in(entry.path());
        std::stringstream whole;
        whole << in.rdbuf();
        std::string content = whole.str();
        auto pos = content.rfind("checksum ");
        if (pos != std::string::npos) {
            std::istringstream tail(content.substr(pos + 9));
            std::uint64_t stored = 0;
            tail >> std::hex >> stored;
            info.checksum_ok = static_cast<bool>(tail) &&
                               stored == fnv1a64(content.substr(0, pos));
        }
        infos.push_back(std::move(info));
    }
    std::sort(infos.begin(), infos.end(),
              [](const EntryInfo& a, const EntryInfo& b) { return a.file < b.file; });
    return infos;
}

std::size_t SeriesCache::purge() {
    std::lock_guard lock(mutex_);
    memory_.clear();
    std::size_t removed = 0;
    if (dir_.empty() || !fs::exists(dir_)) return removed;
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (entry.is_regular_file() && entry.path().extension() == ".hbs") {
            fs::remove(entry.path());
            ++removed;
        }
    }
    return removed;
}

}  // namespace hyperbounds
