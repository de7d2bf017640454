#pragma once

// Segal maps p_m = <i_1, ..., i_m> : X_m -> (X_1)^m and exact bijectivity
// checks for simplicial and multisimplicial sets.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "segal/sset.hpp"

namespace segal {

/// (i_1 x, ..., i_m x); the empty tuple when m = 0.
inline std::vector<SimplexId> segal_map(const SimplicialSet& x_set, std::size_t m, SimplexId x)
{
    x_set.require_level(m);
    std::vector<SimplexId> out;
    out.reserve(m);
    for (std::size_t j = 1; j <= m; ++j)
        out.push_back(x_set.act(segal_arrow(j, m), x));
    if (m == 0 && x >= x_set.level_size(0))
        throw IndexOutOfRange("segal_map: vertex " + std::to_string(x) + " out of range");
    return out;
}

enum class SegalVerdict { bijective, not_injective, not_surjective };

inline const char* to_string(SegalVerdict v)
{
    switch (v) {
    case SegalVerdict::bijective: return "bijective";
    case SegalVerdict::not_injective: return "not-injective";
    case SegalVerdict::not_surjective: return "not-surjective";
    }
    return "?";
}

struct SegalLevel {
    std::size_t m = 0;
    SegalVerdict verdict = SegalVerdict::bijective;
    /// not-injective: two level-m simplices with equal image;
    /// not-surjective: an m-tuple of level-1 simplices outside the image.
    std::vector<SimplexId> witness;
};

struct SegalReport {
    std::vector<SegalLevel> levels;
    bool all_bijective() const
    {
        for (const auto& l : levels)
            if (l.verdict != SegalVerdict::bijective)
                return false;
        return true;
    }
    const SegalLevel* first_failure() const
    {
        for (const auto& l : levels)
            if (l.verdict != SegalVerdict::bijective)
                return &l;
        return nullptr;
    }
};

namespace detail {

struct TupleHash {
    std::size_t operator()(const std::vector<SimplexId>& v) const noexcept
    {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : v)
            h ^= std::hash<SimplexId>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

// Dense bitmap of seen tuples is used when the tuple space is at most this large.
inline constexpr std::uint64_t dense_tuple_limit = std::uint64_t{1} << 30;

inline SegalLevel check_segal_level(const SimplicialSet& x_set, std::size_t m)
{
    SegalLevel out;
    out.m = m;
    const SimplexId nm = x_set.level_size(m);
    if (m == 0) {
        if (nm == 0)
            out.verdict = SegalVerdict::not_surjective;
        else if (nm > 1) {
            out.verdict = SegalVerdict::not_injective;
            out.witness = {0, 1};
        }
        return out;
    }
    const SimplexId n1 = x_set.level_size(1);
    const auto space = checked_power(n1, m);

    std::vector<OpArrow> edges;
    for (std::size_t j = 1; j <= m; ++j)
        edges.push_back(segal_arrow(j, m));
    auto image_index = [&](SimplexId x) {
        std::uint64_t r = 0;
        for (const auto& e : edges)
            r = r * n1 + x_set.act(e, x);
        return r;
    };

    if (space && *space <= dense_tuple_limit) {
        std::vector<bool> seen(*space, false);
        for (SimplexId x = 0; x < nm; ++x) {
            const auto idx = image_index(x);
            if (seen[idx]) {
                for (SimplexId y = 0; y < x; ++y)
                    if (image_index(y) == idx) {
                        out.verdict = SegalVerdict::not_injective;
                        out.witness = {y, x};
                        return out;
                    }
            }
            seen[idx] = true;
        }
        for (std::uint64_t idx = 0; idx < *space; ++idx)
            if (!seen[idx]) {
                out.verdict = SegalVerdict::not_surjective;
                out.witness.assign(m, 0);
                for (std::size_t j = m; j-- > 0;) {
                    out.witness[j] = idx % n1;
                    idx /= n1;
                }
                return out;
            }
        return out;
    }

    std::unordered_map<std::vector<SimplexId>, SimplexId, TupleHash> image;
    for (SimplexId x = 0; x < nm; ++x) {
        auto [it, fresh] = image.emplace(segal_map(x_set, m, x), x);
        if (!fresh) {
            out.verdict = SegalVerdict::not_injective;
            out.witness = {it->second, x};
            return out;
        }
    }
    if (space && *space == nm)
        return out;
    // Smallest tuple in lexicographic order that is missed.
    std::vector<SimplexId> t(m, 0);
    while (true) {
        if (!image.count(t)) {
            out.verdict = SegalVerdict::not_surjective;
            out.witness = t;
            return out;
        }
        std::size_t j = m;
        while (j-- > 0) {
            if (++t[j] < n1)
                break;
            t[j] = 0;
        }
    }
}

}  // namespace detail

/// Exact bijectivity of p_m for 0 <= m <= m_max.  At m = 0 the condition is |X_0| = 1.
inline SegalReport check_segal(const SimplicialSet& x_set, std::size_t m_max)
{
    x_set.require_level(m_max);
    SegalReport r;
    for (std::size_t m = 0; m <= m_max; ++m)
        r.levels.push_back(detail::check_segal_level(x_set, m));
    return r;
}

struct SliceSegalReport {
    std::size_t l = 0;
    std::optional<std::size_t> k;  // absent when no direction is pinned at k
    SegalReport report;
};

struct MultiSegalReport {
    std::vector<SliceSegalReport> slices;
    bool all_bijective() const
    {
        for (const auto& s : slices)
            if (!s.report.all_bijective())
                return false;
        return true;
    }
};

/// check_segal on slice_ones(X, l, k) for every l < arity and k <= k_max.
inline MultiSegalReport check_segal_multi(const MultiPtr& x, std::size_t m_max, std::size_t k_max)
{
    MultiSegalReport out;
    const std::size_t n = x->arity();
    for (std::size_t l = 0; l < n; ++l) {
        if (l + 1 == n) {
            auto slice = slice_ones(x, l, 0);
            out.slices.push_back({l, std::nullopt, check_segal(*slice, m_max)});
            continue;
        }
        for (std::size_t k = 0; k <= k_max; ++k) {
            auto slice = slice_ones(x, l, k);
            out.slices.push_back({l, k, check_segal(*slice, m_max)});
        }
    }
    return out;
}

}  // namespace segal
