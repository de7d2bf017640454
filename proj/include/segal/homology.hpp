#pragma once

// Normalized integer chains of a truncated simplicial set and their homology.
//
// Generators in degree k are the nondegenerate k-simplices, in increasing
// simplex order.  The boundary is  dx = sum_i (-1)^i d_i x, faces that are
// degenerate contributing zero.  Homology in degree k needs the boundary out
// of degree k+1, so the top degree of a complex is reported as not computed.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <numeric>
#include <string>
#include <vector>

#include "segal/cat.hpp"
#include "segal/smith.hpp"
#include "segal/sset.hpp"

namespace segal {

struct ChainComplex {
    std::size_t max_degree = 0;
    std::vector<std::vector<SimplexId>> generators;  // per degree
    std::vector<IntMatrix> boundaries;               // boundaries[k] : C_k -> C_{k-1}; boundaries[0] is empty

    std::size_t rank(std::size_t k) const { return generators.at(k).size(); }

    /// Reorders the generators of degree k: new generator j is old generator perm[j].
    ChainComplex reordered(std::size_t k, const std::vector<std::size_t>& perm) const
    {
        ChainComplex out = *this;
        std::vector<std::size_t> where(perm.size());
        for (std::size_t j = 0; j < perm.size(); ++j) {
            where[perm[j]] = j;
            out.generators[k][j] = generators[k][perm[j]];
        }
        if (k >= 1)
            for (auto& t : out.boundaries[k].entries)
                t.col = where[t.col];
        if (k + 1 <= max_degree)
            for (auto& t : out.boundaries[k + 1].entries)
                t.row = where[t.row];
        return out;
    }
};

namespace detail {

/// Sparse columns of a triplet matrix, with duplicates summed.
inline std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns(const IntMatrix& m)
{
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> cols(m.cols);
    for (const auto& t : m.entries)
        cols[t.col].emplace_back(t.row, t.value);
    return cols;
}

/// Throws unless boundaries[k-1] o boundaries[k] = 0.
inline void require_square_zero(const ChainComplex& c, std::size_t k)
{
    const auto lower = columns(c.boundaries[k - 1]);
    const auto upper = columns(c.boundaries[k]);
    std::vector<BigInt> acc(c.rank(k - 2));
    for (std::size_t j = 0; j < upper.size(); ++j) {
        std::fill(acc.begin(), acc.end(), 0);
        for (const auto& [mid, v] : upper[j])
            for (const auto& [row, w] : lower[mid])
                acc[row] += BigInt(v) * w;
        for (std::size_t r = 0; r < acc.size(); ++r)
            if (acc[r] != 0)
                throw ValidationError("chain complex: boundary of boundary is nonzero in degree " + std::to_string(k) +
                                      " (generator " + std::to_string(j) + ")");
    }
}

}  // namespace detail

inline ChainComplex normalized_chains(const SimplicialSet& x, std::size_t max_degree)
{
    if (max_degree > x.truncation())
        throw TruncationExceeded("normalized_chains: degree " + std::to_string(max_degree) + " exceeds truncation " +
                                 std::to_string(x.truncation()));
    ChainComplex c;
    c.max_degree = max_degree;
    c.generators.resize(max_degree + 1);
    c.boundaries.resize(max_degree + 1);
    for (std::size_t k = 0; k <= max_degree; ++k) {
        const SimplexId n = x.level_size(k);
        for (SimplexId s = 0; s < n; ++s)
            if (!is_degenerate(x, k, s))
                c.generators[k].push_back(s);
    }
    for (std::size_t k = 1; k <= max_degree; ++k) {
        auto& m = c.boundaries[k];
        m.rows = c.rank(k - 1);
        m.cols = c.rank(k);
        const auto& below = c.generators[k - 1];
        std::vector<std::pair<std::size_t, std::int64_t>> col;
        for (std::size_t j = 0; j < c.rank(k); ++j) {
            col.clear();
            for (std::size_t i = 0; i <= k; ++i) {
                const SimplexId y = x.face(k, i, c.generators[k][j]);
                auto it = std::lower_bound(below.begin(), below.end(), y);
                if (it == below.end() || *it != y)
                    continue;
                col.emplace_back(static_cast<std::size_t>(it - below.begin()), i % 2 == 0 ? 1 : -1);
            }
            std::sort(col.begin(), col.end());
            for (std::size_t a = 0; a < col.size();) {
                std::size_t b = a;
                std::int64_t sum = 0;
                while (b < col.size() && col[b].first == col[a].first)
                    sum += col[b++].second;
                if (sum != 0)
                    m.entries.push_back({col[a].first, j, sum});
                a = b;
            }
        }
    }
    for (std::size_t k = 2; k <= max_degree; ++k)
        detail::require_square_zero(c, k);
    return c;
}

enum class DegreeStatus { computed, not_computed };

struct DegreeHomology {
    std::size_t degree = 0;
    DegreeStatus status = DegreeStatus::not_computed;
    std::size_t betti = 0;
    std::vector<BigInt> torsion;  // each > 1, each dividing the next

    friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;

    /// "0", "Z", "Z^2 + Z/2 + Z/4", or "?" when not computed.
    std::string to_string() const
    {
        if (status == DegreeStatus::not_computed)
            return "?";
        std::vector<std::string> parts;
        if (betti == 1)
            parts.push_back("Z");
        else if (betti > 1)
            parts.push_back("Z^" + std::to_string(betti));
        for (const auto& t : torsion)
            parts.push_back("Z/" + t.str());
        if (parts.empty())
            return "0";
        std::string s = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i)
            s += " + " + parts[i];
        return s;
    }
};

struct HomologyGroups {
    std::vector<DegreeHomology> degrees;

    const DegreeHomology& operator[](std::size_t k) const { return degrees.at(k); }
    std::size_t size() const noexcept { return degrees.size(); }
    friend bool operator==(const HomologyGroups&, const HomologyGroups&) = default;

    std::string to_string() const
    {
        std::string s;
        for (std::size_t k = 0; k < degrees.size(); ++k)
            s += (k ? "; " : "") + degrees[k].to_string();
        return "(" + s + ")";
    }
};

/// A computed group given by its Betti number and torsion coefficients.
inline DegreeHomology group(std::size_t degree, std::size_t betti, std::vector<BigInt> torsion = {})
{
    return DegreeHomology{degree, DegreeStatus::computed, betti, std::move(torsion)};
}

inline HomologyGroups homology(const ChainComplex& c)
{
    const std::size_t top = c.max_degree;
    // Boundary ranks and invariant factors; independent matrices run concurrently.
    std::vector<std::future<SmithResult>> jobs;
    for (std::size_t k = 1; k <= top; ++k)
        jobs.push_back(std::async(std::launch::async, [&c, k] { return smith_normal_form(c.boundaries[k]); }));
    std::vector<SmithResult> snf(top + 1);
    for (std::size_t k = 1; k <= top; ++k)
        snf[k] = jobs[k - 1].get();

    HomologyGroups h;
    for (std::size_t k = 0; k <= top; ++k) {
        if (k == top) {
            h.degrees.push_back(DegreeHomology{k, DegreeStatus::not_computed, 0, {}});
            continue;
        }
        const std::size_t rank_out = k == 0 ? 0 : snf[k].rank;
        const std::size_t rank_in = snf[k + 1].rank;
        DegreeHomology d = group(k, c.rank(k) - rank_out - rank_in);
        for (const auto& f : snf[k + 1].factors)
            if (f > 1)
                d.torsion.push_back(f);
        h.degrees.push_back(std::move(d));
    }
    return h;
}

/// Homology of X in degrees 0..max_degree (chains are built one degree higher).
inline HomologyGroups homology_through(const SimplicialSet& x, std::size_t max_degree)
{
    auto h = homology(normalized_chains(x, max_degree + 1));
    h.degrees.pop_back();
    return h;
}

/// Abelianization of a finite group as Z^|G| modulo the relations e_g + e_h - e_gh.
inline DegreeHomology abelianization(const FiniteMonoid& g, std::size_t degree = 1)
{
    const std::size_t n = g.size();
    IntMatrix rel{n * n, n, {}};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t r = a * n + b;
            rel.entries.push_back({r, a, 1});
            rel.entries.push_back({r, b, 1});
            rel.entries.push_back({r, g.mul(a, b), -1});
        }
    const auto snf = smith_normal_form(rel);
    DegreeHomology d = group(degree, n - snf.rank);
    for (const auto& f : snf.factors)
        if (f > 1)
            d.torsion.push_back(f);
    return d;
}

}  // namespace segal
