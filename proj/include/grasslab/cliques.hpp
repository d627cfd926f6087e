#pragma once

// Generic clique search over bit-row adjacency matrices. Knows nothing about
// subspaces; used to cross-check the geometric clique constructions.

#include "grasslab/bitrow.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace grasslab {

using Handle = std::uint32_t;

namespace detail {

inline void bron_kerbosch(std::span<const BitRow> rows, std::vector<Handle>& r, BitRow p, BitRow x,
                          std::vector<std::vector<Handle>>& out)
{
    if (p.none()) {
        if (x.none()) {
            auto c = r;
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
        }
        return;
    }
    // pivot: vertex of P u X with most neighbours in P
    std::size_t pivot = 0, best = 0;
    bool have = false;
    auto consider = [&](std::size_t u) {
        std::size_t c = (rows[u] & p).count();
        if (!have || c > best) {
            pivot = u;
            best = c;
            have = true;
        }
    };
    p.for_each(consider);
    x.for_each(consider);

    BitRow candidates = p;
    candidates.subtract(rows[pivot]);
    candidates.for_each([&](std::size_t v) {
        r.push_back(static_cast<Handle>(v));
        bron_kerbosch(rows, r, p & rows[v], x & rows[v], out);
        r.pop_back();
        p.reset(v);
        x.set(v);
    });
}

template <class Fn>
void grow_cliques(std::span<const BitRow> rows, std::vector<Handle>& r, const BitRow& candidates, std::size_t min_size,
                  Fn& fn)
{
    if (r.size() >= min_size) fn(static_cast<const std::vector<Handle>&>(r));
    candidates.for_each([&](std::size_t v) {
        BitRow next = candidates & rows[v];
        // keep only vertices above v so each clique is produced once
        for (std::size_t i = 0; i <= v; ++i) next.reset(i);
        r.push_back(static_cast<Handle>(v));
        grow_cliques(rows, r, next, min_size, fn);
        r.pop_back();
    });
}

} // namespace detail

/// All maximal cliques of the graph (Bron-Kerbosch with pivoting). Each
/// clique is sorted; the list is sorted lexicographically.
inline std::vector<std::vector<Handle>> maximal_cliques(std::span<const BitRow> rows)
{
    std::vector<std::vector<Handle>> out;
    if (rows.empty()) return out;
    BitRow all(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) all.set(i);
    std::vector<Handle> r;
    detail::bron_kerbosch(rows, r, all, BitRow(rows.size()), out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Calls fn(clique) for every clique with at least min_size vertices,
/// each presented as an increasing handle list.
template <class Fn>
void for_each_clique(std::span<const BitRow> rows, std::size_t min_size, Fn&& fn)
{
    BitRow all(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) all.set(i);
    std::vector<Handle> r;
    detail::grow_cliques(rows, r, all, min_size, fn);
}

inline bool is_clique(std::span<const BitRow> rows, std::span<const Handle> members)
{
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (!rows[members[i]].test(members[j])) return false;
    return true;
}

/// A clique no outside vertex can extend.
inline bool is_maximal_clique(std::span<const BitRow> rows, std::span<const Handle> members)
{
    if (!is_clique(rows, members)) return false;
    if (members.empty()) return rows.empty();
    BitRow common = rows[members[0]];
    for (auto m : members) common &= rows[m];
    return common.none();
}

} // namespace grasslab
