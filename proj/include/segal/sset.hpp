#pragma once

// Truncated simplicial and multisimplicial sets.
//
// A simplicial set is an interface: a truncation ceiling D, a cardinality for
// each level k <= D, and the action of every arrow of the opposite category
// between levels <= D.  Simplices of a level are the integers
// 0 .. level_size(k)-1.  Providers compute actions on demand and hold no
// mutable state, so every object may be shared freely across threads.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "segal/delta.hpp"
#include "segal/error.hpp"

namespace segal {

using SimplexId = std::uint64_t;

/// a * b, or nullopt past 2^63.
inline std::optional<std::uint64_t> checked_product(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r) || r > (std::uint64_t{1} << 63))
        return std::nullopt;
    return r;
}

inline std::optional<std::uint64_t> checked_power(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        auto next = checked_product(r, base);
        if (!next)
            return std::nullopt;
        r = *next;
    }
    return r;
}

namespace detail {

/// Applies the arrow through its normal form: faces first (outermost coface
/// first), then degeneracies.
template <class FaceFn, class DegeneracyFn>
SimplexId act_by_generators(const OpArrow& f, SimplexId x, FaceFn&& face, DegeneracyFn&& degeneracy)
{
    const NormalForm nf = normal_form(f.underlying());
    for (const auto& g : nf.cofaces)
        x = face(g.rank, g.index, x);
    for (const auto& g : nf.codegeneracies)
        x = degeneracy(g.rank, g.index, x);
    return x;
}

}  // namespace detail

class SimplicialSet {
public:
    virtual ~SimplicialSet() = default;

    virtual std::size_t truncation() const = 0;

    SimplexId level_size(std::size_t k) const
    {
        require_level(k);
        return do_level_size(k);
    }

    /// X(f)(x) for f : [k] -> [l] in the opposite category and x in X_k.
    SimplexId act(const OpArrow& f, SimplexId x) const
    {
        require_level(f.source());
        require_level(f.target());
        if (x >= do_level_size(f.source()))
            throw IndexOutOfRange("simplex " + std::to_string(x) + " not in level " + std::to_string(f.source()));
        return do_act(f, x);
    }

    /// d^n_i applied to x in X_n.
    SimplexId face(std::size_t n, std::size_t i, SimplexId x) const { return act(face_op(n, i), x); }
    /// s^n_i applied to x in X_{n-1}.
    SimplexId degeneracy(std::size_t n, std::size_t i, SimplexId x) const { return act(degeneracy_op(n, i), x); }

    void require_level(std::size_t k) const
    {
        if (k > truncation())
            throw TruncationExceeded("level " + std::to_string(k) + " exceeds truncation " +
                                     std::to_string(truncation()));
    }

protected:
    virtual SimplexId do_level_size(std::size_t k) const = 0;
    virtual SimplexId do_act(const OpArrow& f, SimplexId x) const = 0;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

class MultiSimplicialSet {
public:
    virtual ~MultiSimplicialSet() = default;

    virtual const std::vector<std::size_t>& truncation() const = 0;
    std::size_t arity() const { return truncation().size(); }

    SimplexId level_size(std::span<const std::size_t> level) const
    {
        require_level(level);
        return do_level_size(level);
    }

    SimplexId act(const MultiArrow& f, SimplexId x) const
    {
        const auto src = f.source();
        require_level(src);
        require_level(f.target());
        if (x >= do_level_size(src))
            throw IndexOutOfRange("simplex " + std::to_string(x) + " not in multilevel");
        return do_act(f, x);
    }

    /// `f` in one direction, identities at `level` elsewhere.
    SimplexId act_along(std::size_t direction, const OpArrow& f, std::span<const std::size_t> level, SimplexId x) const
    {
        require_level(level);
        if (direction >= level.size())
            throw IndexOutOfRange("direction " + std::to_string(direction) + " out of range");
        if (level[direction] != f.source())
            throw RankMismatch("arrow does not leave the level in direction " + std::to_string(direction));
        if (f.target() > truncation()[direction])
            throw TruncationExceeded("level " + std::to_string(f.target()) + " in direction " +
                                     std::to_string(direction) + " exceeds truncation " +
                                     std::to_string(truncation()[direction]));
        if (x >= do_level_size(level))
            throw IndexOutOfRange("simplex " + std::to_string(x) + " not in multilevel");
        return do_act_along(direction, f, level, x);
    }

    void require_level(std::span<const std::size_t> level) const
    {
        const auto& d = truncation();
        if (level.size() != d.size())
            throw RankMismatch("multilevel of arity " + std::to_string(level.size()) + " for arity " +
                               std::to_string(d.size()));
        for (std::size_t t = 0; t < d.size(); ++t)
            if (level[t] > d[t])
                throw TruncationExceeded("level " + std::to_string(level[t]) + " in direction " + std::to_string(t) +
                                         " exceeds truncation " + std::to_string(d[t]));
    }

protected:
    virtual SimplexId do_level_size(std::span<const std::size_t> level) const = 0;
    virtual SimplexId do_act(const MultiArrow& f, SimplexId x) const = 0;
    /// Providers with a cheaper single-direction action may override this.
    virtual SimplexId do_act_along(std::size_t direction, const OpArrow& f, std::span<const std::size_t> level,
                                   SimplexId x) const
    {
        return do_act(MultiArrow::along(direction, f, level), x);
    }
};

using MultiPtr = std::shared_ptr<const MultiSimplicialSet>;

// ---------------------------------------------------------------------------
// Providers

/// A simplicial set given by explicit face and degeneracy tables.
///
/// faces[k][i][x] = d^k_i(x) for x in X_k (k >= 1);
/// degeneracies[k][i][x] = s^k_i(x) for x in X_{k-1} (k >= 1).
class TableSimplicialSet final : public SimplicialSet {
public:
    using Tables = std::vector<std::vector<std::vector<SimplexId>>>;

    TableSimplicialSet(std::vector<SimplexId> level_sizes, Tables faces, Tables degeneracies)
        : sizes_(std::move(level_sizes)), faces_(std::move(faces)), degeneracies_(std::move(degeneracies))
    {
        if (sizes_.empty())
            throw ValidationError("table simplicial set: no levels");
        const std::size_t d = sizes_.size() - 1;
        faces_.resize(d + 1);
        degeneracies_.resize(d + 1);
        for (std::size_t k = 1; k <= d; ++k) {
            if (faces_[k].size() != k + 1)
                throw ValidationError("table simplicial set: level " + std::to_string(k) + " needs " +
                                      std::to_string(k + 1) + " face tables");
            if (degeneracies_[k].size() != k)
                throw ValidationError("table simplicial set: level " + std::to_string(k) + " needs " +
                                      std::to_string(k) + " degeneracy tables");
            for (std::size_t i = 0; i <= k; ++i)
                check_table(faces_[k][i], sizes_[k], sizes_[k - 1], "d^" + std::to_string(k) + "_" + std::to_string(i));
            for (std::size_t i = 0; i < k; ++i)
                check_table(degeneracies_[k][i], sizes_[k - 1], sizes_[k],
                            "s^" + std::to_string(k) + "_" + std::to_string(i));
        }
    }

    std::size_t truncation() const override { return sizes_.size() - 1; }
    const std::vector<SimplexId>& level_sizes() const { return sizes_; }
    const Tables& faces() const { return faces_; }
    const Tables& degeneracies() const { return degeneracies_; }

protected:
    SimplexId do_level_size(std::size_t k) const override { return sizes_[k]; }
    SimplexId do_act(const OpArrow& f, SimplexId x) const override
    {
        return detail::act_by_generators(
            f, x, [&](std::size_t n, std::size_t i, SimplexId y) { return faces_[n][i][y]; },
            [&](std::size_t n, std::size_t i, SimplexId y) { return degeneracies_[n][i][y]; });
    }

private:
    static void check_table(const std::vector<SimplexId>& t, SimplexId domain, SimplexId codomain,
                            const std::string& name)
    {
        if (t.size() != domain)
            throw ValidationError("table simplicial set: " + name + " has " + std::to_string(t.size()) +
                                  " entries, expected " + std::to_string(domain));
        for (std::size_t x = 0; x < t.size(); ++x)
            if (t[x] >= codomain)
                throw ValidationError("table simplicial set: " + name + "(" + std::to_string(x) +
                                      ") = " + std::to_string(t[x]) + " out of range");
    }

    std::vector<SimplexId> sizes_;
    Tables faces_;
    Tables degeneracies_;
};

/// `points` simplices in every level, every action the identity.
class ConstantSimplicialSet final : public SimplicialSet {
public:
    ConstantSimplicialSet(SimplexId points, std::size_t trunc) : points_(points), trunc_(trunc) {}
    std::size_t truncation() const override { return trunc_; }

protected:
    SimplexId do_level_size(std::size_t) const override { return points_; }
    SimplexId do_act(const OpArrow&, SimplexId x) const override { return x; }

private:
    SimplexId points_;
    std::size_t trunc_;
};

inline SSetPtr terminal(std::size_t trunc) { return std::make_shared<ConstantSimplicialSet>(1, trunc); }

/// Levelwise Cartesian product; (x, y) is encoded as x * |Y_k| + y.
class ProductSimplicialSet final : public SimplicialSet {
public:
    ProductSimplicialSet(SSetPtr x, SSetPtr y)
        : x_(std::move(x)), y_(std::move(y)), trunc_(std::min(x_->truncation(), y_->truncation()))
    {
    }
    std::size_t truncation() const override { return trunc_; }

    SimplexId encode(std::size_t k, SimplexId a, SimplexId b) const { return a * y_->level_size(k) + b; }
    std::pair<SimplexId, SimplexId> decode(std::size_t k, SimplexId id) const
    {
        const SimplexId ny = y_->level_size(k);
        return {id / ny, id % ny};
    }

protected:
    SimplexId do_level_size(std::size_t k) const override
    {
        auto n = checked_product(x_->level_size(k), y_->level_size(k));
        if (!n)
            throw Overflow("product: level " + std::to_string(k) + " too large to index");
        return *n;
    }
    SimplexId do_act(const OpArrow& f, SimplexId id) const override
    {
        auto [a, b] = decode(f.source(), id);
        return encode(f.target(), x_->act(f, a), y_->act(f, b));
    }

private:
    SSetPtr x_, y_;
    std::size_t trunc_;
};

inline SSetPtr product(SSetPtr x, SSetPtr y) { return std::make_shared<ProductSimplicialSet>(std::move(x), std::move(y)); }

/// k |-> X_{k...k}, acting by (f, ..., f).
class DiagonalSimplicialSet final : public SimplicialSet {
public:
    explicit DiagonalSimplicialSet(MultiPtr x) : x_(std::move(x))
    {
        trunc_ = *std::min_element(x_->truncation().begin(), x_->truncation().end());
    }
    std::size_t truncation() const override { return trunc_; }

protected:
    SimplexId do_level_size(std::size_t k) const override
    {
        const std::vector<std::size_t> lv(x_->arity(), k);
        return x_->level_size(lv);
    }
    SimplexId do_act(const OpArrow& f, SimplexId x) const override
    {
        return x_->act(MultiArrow(std::vector<OpArrow>(x_->arity(), f)), x);
    }

private:
    MultiPtr x_;
    std::size_t trunc_;
};

inline SSetPtr diag(MultiPtr x) { return std::make_shared<DiagonalSimplicialSet>(std::move(x)); }

/// The simplicial set in direction `free` with the first `free` indices pinned
/// at 1 and the remaining ones pinned at `pin`.
class SliceSimplicialSet final : public SimplicialSet {
public:
    SliceSimplicialSet(MultiPtr x, std::size_t free, std::size_t pin) : x_(std::move(x)), free_(free), pin_(pin)
    {
        const auto& d = x_->truncation();
        if (free_ >= d.size())
            throw IndexOutOfRange("slice_ones: l=" + std::to_string(free_) + " must be below arity " +
                                  std::to_string(d.size()));
        for (std::size_t t = 0; t < d.size(); ++t) {
            const std::size_t need = t < free_ ? 1 : (t > free_ ? pin_ : 0);
            if (need > d[t])
                throw TruncationExceeded("slice_ones: pinned index " + std::to_string(need) + " in direction " +
                                         std::to_string(t) + " exceeds truncation " + std::to_string(d[t]));
        }
        for (std::size_t k = 0; k <= d[free_]; ++k) {
            std::vector<std::size_t> lv(d.size());
            for (std::size_t t = 0; t < lv.size(); ++t)
                lv[t] = t < free_ ? 1 : (t == free_ ? k : pin_);
            levels_.push_back(std::move(lv));
        }
    }
    std::size_t truncation() const override { return x_->truncation()[free_]; }

protected:
    SimplexId do_level_size(std::size_t k) const override { return x_->level_size(levels_[k]); }
    SimplexId do_act(const OpArrow& f, SimplexId x) const override
    {
        return x_->act_along(free_, f, levels_[f.source()], x);
    }

private:
    MultiPtr x_;
    std::size_t free_, pin_;
    std::vector<std::vector<std::size_t>> levels_;
};

inline SSetPtr slice_ones(MultiPtr x, std::size_t l, std::size_t k)
{
    return std::make_shared<SliceSimplicialSet>(std::move(x), l, k);
}

/// A simplicial set viewed as a multisimplicial set of arity 1.
class ArityOneMulti final : public MultiSimplicialSet {
public:
    explicit ArityOneMulti(SSetPtr x) : x_(std::move(x)), trunc_{x_->truncation()} {}
    const std::vector<std::size_t>& truncation() const override { return trunc_; }

protected:
    SimplexId do_level_size(std::span<const std::size_t> level) const override { return x_->level_size(level[0]); }
    SimplexId do_act(const MultiArrow& f, SimplexId x) const override { return x_->act(f[0], x); }

private:
    SSetPtr x_;
    std::vector<std::size_t> trunc_;
};

inline MultiPtr as_multi(SSetPtr x) { return std::make_shared<ArityOneMulti>(std::move(x)); }

/// (A boxtimes B)_{k,l} = A_k x B_l.
class ExternalProduct final : public MultiSimplicialSet {
public:
    ExternalProduct(SSetPtr a, SSetPtr b) : a_(std::move(a)), b_(std::move(b)), trunc_{a_->truncation(), b_->truncation()}
    {
    }
    const std::vector<std::size_t>& truncation() const override { return trunc_; }

protected:
    SimplexId do_level_size(std::span<const std::size_t> level) const override
    {
        auto n = checked_product(a_->level_size(level[0]), b_->level_size(level[1]));
        if (!n)
            throw Overflow("external product: level too large to index");
        return *n;
    }
    SimplexId do_act(const MultiArrow& f, SimplexId id) const override
    {
        const SimplexId nb = b_->level_size(f[1].source());
        const SimplexId a = a_->act(f[0], id / nb);
        const SimplexId b = b_->act(f[1], id % nb);
        return a * b_->level_size(f[1].target()) + b;
    }

private:
    SSetPtr a_, b_;
    std::vector<std::size_t> trunc_;
};

inline MultiPtr external_product(SSetPtr a, SSetPtr b)
{
    return std::make_shared<ExternalProduct>(std::move(a), std::move(b));
}

/// Collapses the last p directions into one by the diagonal:
/// level (k_1..k_{n-p}, l) = X_{k_1..k_{n-p}, l..l}.
class PartialDiagonal final : public MultiSimplicialSet {
public:
    PartialDiagonal(MultiPtr x, std::size_t p) : x_(std::move(x)), p_(p)
    {
        const auto& d = x_->truncation();
        if (p_ < 1 || p_ > d.size())
            throw IndexOutOfRange("partial_diag: p=" + std::to_string(p_) + " must lie in 1.." +
                                  std::to_string(d.size()));
        const std::size_t keep = d.size() - p_;
        trunc_.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(keep));
        trunc_.push_back(*std::min_element(d.begin() + static_cast<std::ptrdiff_t>(keep), d.end()));
    }
    const std::vector<std::size_t>& truncation() const override { return trunc_; }

protected:
    SimplexId do_level_size(std::span<const std::size_t> level) const override { return x_->level_size(expand(level)); }
    SimplexId do_act(const MultiArrow& f, SimplexId x) const override
    {
        std::vector<OpArrow> c(f.components().begin(), f.components().end() - 1);
        for (std::size_t i = 0; i < p_; ++i)
            c.push_back(f.components().back());
        return x_->act(MultiArrow(std::move(c)), x);
    }

private:
    std::vector<std::size_t> expand(std::span<const std::size_t> level) const
    {
        std::vector<std::size_t> lv(level.begin(), level.end() - 1);
        lv.insert(lv.end(), p_, level.back());
        return lv;
    }

    MultiPtr x_;
    std::size_t p_;
    std::vector<std::size_t> trunc_;
};

inline MultiPtr partial_diag(MultiPtr x, std::size_t p) { return std::make_shared<PartialDiagonal>(std::move(x), p); }

// ---------------------------------------------------------------------------
// Degeneracy

/// True iff x in X_k lies in the image of some degeneracy.
inline bool is_degenerate(const SimplicialSet& x_set, std::size_t k, SimplexId x)
{
    for (std::size_t i = 0; i < k; ++i)
        if (x_set.degeneracy(k, i, x_set.face(k, i, x)) == x)
            return true;
    return false;
}

/// The unique pair (surjection, nondegenerate simplex) with x = X(surjection^op)(simplex).
struct Core {
    MonotoneMap surjection;  // [k] -> [level]
    SimplexId simplex;
    std::size_t level;

    /// Canonical degeneracy word s^{r_1}_{i_1} o ... (outermost first); empty iff x is nondegenerate.
    std::vector<Generator> degeneracy_word() const { return normal_form(surjection).codegeneracies; }
    OpArrow degeneracy() const { return OpArrow(surjection); }
};

inline Core core(const SimplicialSet& x_set, std::size_t k, SimplexId x)
{
    x_set.require_level(k);
    MonotoneMap acc = identity(k);
    std::size_t level = k;
    SimplexId cur = x;
    bool reduced = true;
    while (reduced && level > 0) {
        reduced = false;
        for (std::size_t i = 0; i < level; ++i) {
            const SimplexId below = x_set.face(level, i, cur);
            if (x_set.degeneracy(level, i, below) == cur) {
                acc = compose(codegeneracy(level, i), acc);
                cur = below;
                --level;
                reduced = true;
                break;
            }
        }
    }
    return Core{std::move(acc), cur, level};
}

// ---------------------------------------------------------------------------
// Audits

struct AuditOptions {
    /// Levels up to this size are checked exhaustively; larger ones are sampled.
    SimplexId exhaustive_limit = 4096;
    std::size_t samples = 64;
    std::uint64_t seed = 0x5e9a1u;
    std::size_t max_violations = 8;
};

struct AuditReport {
    std::size_t checks = 0;
    std::vector<std::string> violations;
    bool passed() const { return violations.empty(); }
};

namespace detail {

inline std::vector<SimplexId> audit_sample(SimplexId size, const AuditOptions& opt, std::mt19937_64& rng)
{
    std::vector<SimplexId> ids;
    if (size <= opt.exhaustive_limit) {
        ids.resize(size);
        for (SimplexId i = 0; i < size; ++i)
            ids[i] = i;
    } else {
        std::uniform_int_distribution<SimplexId> dist(0, size - 1);
        for (std::size_t i = 0; i < opt.samples; ++i)
            ids.push_back(dist(rng));
    }
    return ids;
}

inline void record(AuditReport& r, const AuditOptions& opt, std::string msg)
{
    if (r.violations.size() < opt.max_violations)
        r.violations.push_back(std::move(msg));
}

}  // namespace detail

/// Identity and composition laws on every pair of composable generators within the truncation.
inline AuditReport audit_functoriality(const SimplicialSet& x_set, const AuditOptions& opt = {})
{
    AuditReport r;
    std::mt19937_64 rng(opt.seed);
    const std::size_t d = x_set.truncation();
    for (std::size_t k = 0; k <= d; ++k) {
        const auto ids = detail::audit_sample(x_set.level_size(k), opt, rng);
        const OpArrow id = identity_op(k);
        for (auto x : ids) {
            ++r.checks;
            if (x_set.act(id, x) != x)
                detail::record(r, opt, "identity at level " + std::to_string(k) + " moves " + std::to_string(x));
        }
        for (const auto& f : generators_from(k, d))
            for (const auto& g : generators_from(f.target(), d)) {
                const OpArrow gf = compose_op(g, f);
                for (auto x : ids) {
                    ++r.checks;
                    const SimplexId lhs = x_set.act(gf, x);
                    const SimplexId rhs = x_set.act(g, x_set.act(f, x));
                    if (lhs != rhs)
                        detail::record(r, opt, "composition " + g.to_string() + " after " + f.to_string() + " on " +
                                                   std::to_string(x) + ": " + std::to_string(lhs) +
                                                   " != " + std::to_string(rhs));
                }
            }
    }
    return r;
}

/// Calls fn(level) for every multilevel within the ceilings.
template <class Fn>
void for_each_multilevel(std::span<const std::size_t> ceilings, Fn&& fn)
{
    std::vector<std::size_t> lv(ceilings.size(), 0);
    while (true) {
        fn(std::as_const(lv));
        std::size_t t = 0;
        while (t < lv.size() && lv[t] == ceilings[t])
            lv[t++] = 0;
        if (t == lv.size())
            return;
        ++lv[t];
    }
}

/// Per-direction functoriality and commutation of generators in distinct directions.
inline AuditReport audit_functoriality(const MultiSimplicialSet& x_set, const AuditOptions& opt = {})
{
    AuditReport r;
    std::mt19937_64 rng(opt.seed);
    const auto& d = x_set.truncation();
    const std::size_t n = d.size();
    for_each_multilevel(d, [&](const std::vector<std::size_t>& lv) {
        SimplexId size;
        try {
            size = x_set.level_size(lv);
        } catch (const Overflow&) {
            detail::record(r, opt, "level too large to index; use a grid-level audit");
            return;
        }
        const auto ids = detail::audit_sample(size, opt, rng);
        for (std::size_t t = 0; t < n; ++t)
            for (const auto& f : generators_from(lv[t], d[t])) {
                auto mid = lv;
                mid[t] = f.target();
                // Same direction: composition law.
                for (const auto& g : generators_from(f.target(), d[t])) {
                    const OpArrow gf = compose_op(g, f);
                    for (auto x : ids) {
                        ++r.checks;
                        if (x_set.act_along(t, gf, lv, x) != x_set.act_along(t, g, mid, x_set.act_along(t, f, lv, x)))
                            detail::record(r, opt, "composition in direction " + std::to_string(t) + ": " +
                                                       g.to_string() + " after " + f.to_string());
                    }
                }
                // Distinct directions: interchange.
                for (std::size_t u = t + 1; u < n; ++u)
                    for (const auto& g : generators_from(lv[u], d[u])) {
                        auto other = lv;
                        other[u] = g.target();
                        for (auto x : ids) {
                            ++r.checks;
                            const SimplexId a = x_set.act_along(u, g, mid, x_set.act_along(t, f, lv, x));
                            const SimplexId b = x_set.act_along(t, f, other, x_set.act_along(u, g, lv, x));
                            if (a != b)
                                detail::record(r, opt, "interchange of " + f.to_string() + " (direction " +
                                                           std::to_string(t) + ") and " + g.to_string() +
                                                           " (direction " + std::to_string(u) + ") on simplex " +
                                                           std::to_string(x));
                        }
                    }
            }
    });
    return r;
}

// ---------------------------------------------------------------------------
// Simplicial maps

/// phi(k, x) for x in X_k.
using LevelMap = std::function<SimplexId(std::size_t, SimplexId)>;

/// Checks that phi commutes with every generator action up to `max_level`;
/// returns a description of the first failure.
inline std::optional<std::string> check_simplicial_map(const SimplicialSet& x_set, const SimplicialSet& y_set,
                                                       const LevelMap& phi, std::size_t max_level)
{
    for (std::size_t k = 0; k <= max_level; ++k) {
        const SimplexId nx = x_set.level_size(k);
        const SimplexId ny = y_set.level_size(k);
        for (SimplexId x = 0; x < nx; ++x)
            if (phi(k, x) >= ny)
                return "image of " + std::to_string(x) + " at level " + std::to_string(k) + " out of range";
        for (const auto& f : generators_from(k, max_level))
            for (SimplexId x = 0; x < nx; ++x)
                if (phi(f.target(), x_set.act(f, x)) != y_set.act(f, phi(k, x)))
                    return "map does not commute with " + f.to_string() + " at simplex " + std::to_string(x) +
                           " of level " + std::to_string(k);
    }
    return std::nullopt;
}

/// An action-equivariant levelwise bijection up to `max_level`.
inline std::optional<std::string> check_isomorphism(const SimplicialSet& x_set, const SimplicialSet& y_set,
                                                    const LevelMap& phi, std::size_t max_level)
{
    if (auto err = check_simplicial_map(x_set, y_set, phi, max_level))
        return err;
    for (std::size_t k = 0; k <= max_level; ++k) {
        const SimplexId n = x_set.level_size(k);
        if (n != y_set.level_size(k))
            return "level " + std::to_string(k) + " cardinalities differ: " + std::to_string(n) + " vs " +
                   std::to_string(y_set.level_size(k));
        std::vector<bool> hit(n, false);
        for (SimplexId x = 0; x < n; ++x) {
            const SimplexId y = phi(k, x);
            if (hit[y])
                return "level " + std::to_string(k) + " not injective at image " + std::to_string(y);
            hit[y] = true;
        }
    }
    return std::nullopt;
}

}  // namespace segal
