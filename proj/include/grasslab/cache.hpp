#pragma once

// On-disk form of a Grassmannian index:
//
//   p n count
//   <subspace text document>
//   checksums <adjacency fnv1a> <distant fnv1a>
//
// Relations are recomputed on load and compared with the stored checksums.

#include "grasslab/grassmann.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace grasslab {

/// FNV-1a over the words of every row of one relation.
inline std::uint64_t relation_checksum(const GrassmannianIndex& index, Relation rel)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& row : index.rows(rel))
        for (std::uint64_t w : row.words())
            for (int b = 0; b < 8; ++b) {
                h ^= (w >> (8 * b)) & 0xffu;
                h *= 0x100000001b3ull;
            }
    return h;
}

inline std::string serialize_index(const GrassmannianIndex& index)
{
    std::ostringstream os;
    os << index.p() << ' ' << index.n() << ' ' << index.size() << '\n';
    os << format_subspaces(index.field(), index.ambient(), index.elements());
    os << "checksums " << std::hex << std::setw(16) << std::setfill('0')
       << relation_checksum(index, Relation::adjacency) << ' ' << std::setw(16)
       << relation_checksum(index, Relation::distant) << '\n';
    return os.str();
}

inline GrassmannianIndex deserialize_index(std::string_view text)
{
    auto corrupt = [](const std::string& why) -> GrassmannianIndex { fail(ErrorKind::CorruptCache, why); };

    const auto header_end = text.find('\n');
    if (header_end == std::string_view::npos) return corrupt("missing header");
    int p = 0, n = 0;
    std::size_t count = 0;
    {
        std::istringstream hs{std::string(text.substr(0, header_end))};
        std::string extra;
        if (!(hs >> p >> n >> count) || (hs >> extra)) return corrupt("bad header");
    }

    const auto tail = text.rfind("checksums ");
    if (tail == std::string_view::npos || tail <= header_end) return corrupt("missing checksum line (truncated?)");
    std::uint64_t adj = 0, dist = 0;
    {
        std::istringstream ts{std::string(text.substr(tail + 10))};
        std::string extra;
        if (!(ts >> std::hex >> adj >> dist) || (ts >> extra)) return corrupt("bad checksum line");
    }

    try {
        auto doc = parse_subspaces(text.substr(header_end + 1, tail - header_end - 1));
        if (doc.field.p() != p || doc.ambient != std::size_t(2 * n)) return corrupt("document header disagrees");
        if (doc.subspaces.size() != count)
            return corrupt("expected " + std::to_string(count) + " subspaces, found " +
                           std::to_string(doc.subspaces.size()));
        auto index = GrassmannianIndex::from_elements(doc.field, n, std::move(doc.subspaces));
        if (relation_checksum(index, Relation::adjacency) != adj ||
            relation_checksum(index, Relation::distant) != dist)
            return corrupt("checksum mismatch");
        return index;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::CorruptCache) throw;
        return corrupt(e.what());
    }
}

inline std::filesystem::path cache_path(const std::filesystem::path& dir, int p, int n)
{
    return dir / ("grassmannian-p" + std::to_string(p) + "-n" + std::to_string(n) + ".cache");
}

/// Writes the index under dir and returns the file path.
inline std::filesystem::path cache_index(const GrassmannianIndex& index, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    auto path = cache_path(dir, index.p(), index.n());
    std::ofstream out(path, std::ios::binary);
    out << serialize_index(index);
    if (!out) fail(ErrorKind::BadArgument, "cannot write " + path.string());
    return path;
}

inline GrassmannianIndex load_index(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::CorruptCache, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_index(buf.str());
}

/// Loads the cached index for (p, n) if present, otherwise builds and caches it.
inline GrassmannianIndex cached_index(const std::filesystem::path& dir, int p, int n)
{
    auto path = cache_path(dir, p, n);
    if (std::filesystem::exists(path)) return load_index(path);
    auto index = build_index(p, n);
    cache_index(index, dir);
    return index;
}

} // namespace grasslab
