#pragma once

// The n-fold reduced bar construction of a finite monoid M.
//
// The multilevel (k_1, ..., k_n) is the set of n-dimensional grids of
// elements of M of shape k_1 x ... x k_n.  In direction t an arrow
// theta : [l] -> [k] of the simplicial category acts by replacing the
// hyperplane slices 1..k with the l slices
//
//     slice'_j = slice_{theta(j-1)+1} . ... . slice_{theta(j)}   (pointwise),
//
// an empty product being the unit.  So inner faces multiply adjacent slices,
// outer faces drop a slice and degeneracies insert a slice of units.  For
// n >= 2 the actions in different directions commute only when M is
// commutative, which the constructor enforces.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "segal/cat.hpp"
#include "segal/segal_condition.hpp"
#include "segal/sset.hpp"

namespace segal {

struct Grid {
    std::vector<std::size_t> shape;
    std::vector<std::uint32_t> cells;  // row-major, last direction fastest
    friend bool operator==(const Grid&, const Grid&) = default;
};

inline std::size_t cell_count(std::span<const std::size_t> shape)
{
    std::size_t n = 1;
    for (auto k : shape)
        n *= k;
    return n;
}

struct BarOptions {
    /// Test-only switch: when false, n >= 2 is accepted for noncommutative
    /// monoids and the result fails the interchange laws.
    bool enforce_commutativity = true;
};

class BarConstruction final : public MultiSimplicialSet {
public:
    BarConstruction(FiniteMonoid m, std::vector<std::size_t> trunc, BarOptions opt = {})
        : m_(std::move(m)), trunc_(std::move(trunc))
    {
        if (trunc_.empty())
            throw ValidationError("bar: fold must be at least 1");
        if (trunc_.size() >= 2 && opt.enforce_commutativity) {
            if (auto w = m_.noncommuting_pair())
                throw NonCommutative("bar: the " + std::to_string(trunc_.size()) +
                                         "-fold bar construction needs a commutative monoid; " + m_.name(w->first) +
                                         "." + m_.name(w->second) + " = " + m_.name(m_.mul(w->first, w->second)) +
                                         " but " + m_.name(w->second) + "." + m_.name(w->first) + " = " +
                                         m_.name(m_.mul(w->second, w->first)),
                                     w->first, w->second);
        }
        for (SimplexId p = 1;;) {
            powers_.push_back(p);
            auto next = checked_product(p, m_.size());
            if (!next || m_.size() == 1 || powers_.size() > 64)
                break;
            p = *next;
        }
    }

    const std::vector<std::size_t>& truncation() const override { return trunc_; }
    const FiniteMonoid& monoid() const noexcept { return m_; }
    std::size_t fold() const noexcept { return trunc_.size(); }

    /// |M|^(k_1 ... k_n), or nullopt when the level cannot be indexed in 63 bits.
    std::optional<SimplexId> indexable_size(std::span<const std::size_t> level) const
    {
        if (m_.size() == 1)
            return 1;
        const std::size_t cells = cell_count(level);
        if (cells >= powers_.size())
            return std::nullopt;
        return powers_[cells];
    }

    Grid decode(std::span<const std::size_t> level, SimplexId id) const
    {
        Grid g{std::vector<std::size_t>(level.begin(), level.end()), {}};
        g.cells.resize(cell_count(level));
        for (std::size_t c = g.cells.size(); c-- > 0;) {
            g.cells[c] = static_cast<std::uint32_t>(id % m_.size());
            id /= m_.size();
        }
        return g;
    }

    SimplexId encode(const Grid& g) const
    {
        if (!indexable_size(g.shape))
            throw Overflow("bar: grid level too large to index");
        SimplexId id = 0;
        for (auto c : g.cells)
            id = id * m_.size() + c;
        return id;
    }

    /// Action of theta^op in one direction.
    Grid act_grid_along(std::size_t t, const OpArrow& f, const Grid& g) const
    {
        if (g.shape.at(t) != f.source())
            throw RankMismatch("bar: arrow does not leave the grid's level in direction " + std::to_string(t));
        const auto& theta = f.underlying().values();
        const std::size_t l = theta.size() - 1;
        std::size_t outer = 1, inner = 1;
        for (std::size_t u = 0; u < t; ++u)
            outer *= g.shape[u];
        for (std::size_t u = t + 1; u < g.shape.size(); ++u)
            inner *= g.shape[u];
        const std::size_t k = g.shape[t];
        Grid out{g.shape, {}};
        out.shape[t] = l;
        out.cells.assign(outer * l * inner, static_cast<std::uint32_t>(m_.unit()));
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t j = 1; j <= l; ++j)
                for (std::size_t i = theta[j - 1]; i < theta[j]; ++i)
                    for (std::size_t in = 0; in < inner; ++in) {
                        auto& dst = out.cells[(o * l + (j - 1)) * inner + in];
                        dst = static_cast<std::uint32_t>(m_.mul(dst, g.cells[(o * k + i) * inner + in]));
                    }
        return out;
    }

    /// Applies the components in direction order 0, 1, ..., n-1.
    Grid act_grid(const MultiArrow& f, Grid g) const
    {
        for (std::size_t t = 0; t < f.arity(); ++t)
            if (!f[t].is_identity())
                g = act_grid_along(t, f[t], g);
        return g;
    }

protected:
    SimplexId do_level_size(std::span<const std::size_t> level) const override
    {
        auto n = indexable_size(level);
        if (!n)
            throw Overflow("bar: level with " + std::to_string(cell_count(level)) + " cells of " +
                           std::to_string(m_.size()) + " elements is too large to index");
        return *n;
    }

    SimplexId do_act(const MultiArrow& f, SimplexId x) const override
    {
        return encode(act_grid(f, decode(f.source(), x)));
    }

    // Same rule as act_grid_along, read straight off the digits of x.
    SimplexId do_act_along(std::size_t t, const OpArrow& f, std::span<const std::size_t> level,
                           SimplexId x) const override
    {
        const auto& theta = f.underlying().values();
        const std::size_t l = theta.size() - 1;
        const std::size_t k = level[t];
        std::size_t outer = 1, inner = 1;
        for (std::size_t u = 0; u < t; ++u)
            outer *= level[u];
        for (std::size_t u = t + 1; u < level.size(); ++u)
            inner *= level[u];
        const SimplexId order = m_.size();
        if (order > 1 && outer * l * inner >= powers_.size())
            throw Overflow("bar: grid level too large to index");
        if (order == 1)
            return 0;
        // Only the digits the arrow reads are extracted.
        const std::size_t last = outer * k * inner - 1;
        auto digit = [&](std::size_t c) { return static_cast<std::size_t>(x / powers_[last - c] % order); };
        SimplexId id = 0;
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t j = 1; j <= l; ++j)
                for (std::size_t in = 0; in < inner; ++in) {
                    std::size_t v = m_.unit();
                    for (std::size_t i = theta[j - 1]; i < theta[j]; ++i)
                        v = m_.mul(v, digit((o * k + i) * inner + in));
                    id = id * order + v;
                }
        return id;
    }

private:
    FiniteMonoid m_;
    std::vector<std::size_t> trunc_;
    std::vector<SimplexId> powers_;  // |M|^e while it fits in 63 bits
};

using BarPtr = std::shared_ptr<const BarConstruction>;

/// The fold-n reduced bar construction with ceiling `trunc` in every direction.
inline BarPtr bar(const FiniteMonoid& m, std::size_t fold, std::size_t trunc, BarOptions opt = {})
{
    return std::make_shared<BarConstruction>(m, std::vector<std::size_t>(fold, trunc), opt);
}

inline BarPtr bar(const FiniteMonoid& m, std::vector<std::size_t> trunc, BarOptions opt = {})
{
    return std::make_shared<BarConstruction>(m, std::move(trunc), opt);
}

/// Functoriality and interchange audit on grids; covers levels too large to index.
inline AuditReport audit_bar(const BarConstruction& b, const AuditOptions& opt = {})
{
    AuditReport r;
    std::mt19937_64 rng(opt.seed);
    const auto& d = b.truncation();
    const std::size_t n = d.size();
    const std::size_t order = b.monoid().size();

    auto sample = [&](const std::vector<std::size_t>& lv) {
        std::vector<Grid> grids;
        const auto size = b.indexable_size(lv);
        if (size && *size <= opt.exhaustive_limit) {
            for (SimplexId id = 0; id < *size; ++id)
                grids.push_back(b.decode(lv, id));
        } else {
            std::uniform_int_distribution<std::uint32_t> cell(0, static_cast<std::uint32_t>(order - 1));
            for (std::size_t s = 0; s < opt.samples; ++s) {
                Grid g{lv, std::vector<std::uint32_t>(cell_count(lv))};
                for (auto& c : g.cells)
                    c = cell(rng);
                grids.push_back(std::move(g));
            }
        }
        return grids;
    };

    for_each_multilevel(d, [&](const std::vector<std::size_t>& lv) {
        const auto grids = sample(lv);
        for (std::size_t t = 0; t < n; ++t)
            for (const auto& f : generators_from(lv[t], d[t])) {
                for (const auto& g : generators_from(f.target(), d[t])) {
                    const OpArrow gf = compose_op(g, f);
                    for (const auto& x : grids) {
                        ++r.checks;
                        if (b.act_grid_along(t, gf, x) != b.act_grid_along(t, g, b.act_grid_along(t, f, x)))
                            detail::record(r, opt, "composition in direction " + std::to_string(t) + ": " +
                                                       g.to_string() + " after " + f.to_string());
                    }
                }
                for (std::size_t u = t + 1; u < n; ++u)
                    for (const auto& g : generators_from(lv[u], d[u]))
                        for (const auto& x : grids) {
                            ++r.checks;
                            if (b.act_grid_along(u, g, b.act_grid_along(t, f, x)) !=
                                b.act_grid_along(t, f, b.act_grid_along(u, g, x)))
                                detail::record(r, opt, "interchange of " + f.to_string() + " (direction " +
                                                           std::to_string(t) + ") and " + g.to_string() +
                                                           " (direction " + std::to_string(u) + ")");
                        }
            }
    });
    return r;
}

// ---------------------------------------------------------------------------
// H-space structure on X_1

struct HSpaceStructure {
    std::size_t carrier = 0;         // |X_1|
    std::vector<std::size_t> table;  // table[a * carrier + b] = m(a, b)
    std::size_t unit = 0;

    std::size_t mul(std::size_t a, std::size_t b) const { return table[a * carrier + b]; }
    friend bool operator==(const HSpaceStructure&, const HSpaceStructure&) = default;
};

/// m(a, b) = d^2_1(p_2^{-1}(a, b)) with unit s^1_0 of the unique vertex.
///
/// In the discrete setting p_2 must be a bijection, so its inverse is exact
/// and the resulting multiplication is associative and unital on the nose;
/// both laws are checked.
inline HSpaceStructure hspace_structure(const SimplicialSet& x)
{
    if (x.truncation() < 2)
        throw SegalViolation("hspace_structure: truncation must be at least 2");
    const auto report = check_segal(x, 2);
    if (const auto* bad = report.first_failure())
        throw SegalViolation(std::string("hspace_structure: Segal map p_") + std::to_string(bad->m) + " is " +
                             to_string(bad->verdict));

    HSpaceStructure h;
    h.carrier = x.level_size(1);
    const std::size_t n = h.carrier;
    std::vector<SimplexId> inverse(n * n);
    for (SimplexId s = 0; s < x.level_size(2); ++s) {
        const auto t = segal_map(x, 2, s);
        inverse[t[0] * n + t[1]] = s;
    }
    h.table.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            h.table[a * n + b] = x.face(2, 1, inverse[a * n + b]);
    h.unit = x.degeneracy(1, 0, 0);

    for (std::size_t a = 0; a < n; ++a)
        if (h.mul(h.unit, a) != a || h.mul(a, h.unit) != a)
            throw ValidationError("hspace_structure: unit law fails at " + std::to_string(a));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (h.mul(h.mul(a, b), c) != h.mul(a, h.mul(b, c)))
                    throw ValidationError("hspace_structure: associativity fails at (" + std::to_string(a) + ", " +
                                          std::to_string(b) + ", " + std::to_string(c) + ")");
    return h;
}

/// Every carrier element has a two-sided inverse.
inline bool is_grouplike(const HSpaceStructure& h)
{
    for (std::size_t a = 0; a < h.carrier; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < h.carrier && !found; ++b)
            found = h.mul(a, b) == h.unit && h.mul(b, a) == h.unit;
        if (!found)
            return false;
    }
    return true;
}

}  // namespace segal
