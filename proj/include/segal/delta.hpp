#pragma once

// Arrow calculus of the simplicial category and its opposite.
//
// An arrow [m] -> [n] is stored as its full value table; words in the
// generators are derived views (see normal_form).  Objects are the nonempty
// ordinals [0], [1], ... identified with their ranks.

#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "segal/error.hpp"

namespace segal {

class MonotoneMap {
public:
    /// Validates the table: length m+1, nondecreasing, bounded by target_rank.
    MonotoneMap(std::size_t target_rank, std::vector<std::size_t> values)
        : target_rank_(target_rank), values_(std::move(values))
    {
        if (values_.empty())
            throw ValidationError("monotone map: empty value table (the empty ordinal is not an object)");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (values_[i] > target_rank_)
                throw ValidationError("monotone map: value " + std::to_string(values_[i]) + " at position " +
                                      std::to_string(i) + " exceeds target rank " + std::to_string(target_rank_));
            if (i > 0 && values_[i - 1] > values_[i])
                throw ValidationError("monotone map: decreasing at position " + std::to_string(i));
        }
    }

    std::size_t source_rank() const noexcept { return values_.size() - 1; }
    std::size_t target_rank() const noexcept { return target_rank_; }
    const std::vector<std::size_t>& values() const noexcept { return values_; }
    std::size_t operator()(std::size_t i) const { return values_.at(i); }

    bool is_identity() const noexcept
    {
        if (source_rank() != target_rank_)
            return false;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] != i)
                return false;
        return true;
    }
    bool is_injective() const noexcept
    {
        for (std::size_t i = 1; i < values_.size(); ++i)
            if (values_[i - 1] == values_[i])
                return false;
        return true;
    }
    bool is_surjective() const noexcept
    {
        return values_.front() == 0 && values_.back() == target_rank_ &&
               [this] {
                   for (std::size_t i = 1; i < values_.size(); ++i)
                       if (values_[i] > values_[i - 1] + 1)
                           return false;
                   return true;
               }();
    }

    std::string to_string() const
    {
        std::ostringstream os;
        os << '[' << source_rank() << "]->[" << target_rank_ << "] (";
        for (std::size_t i = 0; i < values_.size(); ++i)
            os << (i ? "," : "") << values_[i];
        os << ')';
        return os.str();
    }

    friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
    friend auto operator<=>(const MonotoneMap&, const MonotoneMap&) = default;

private:
    std::size_t target_rank_;
    std::vector<std::size_t> values_;
};

/// An arrow of the opposite category: [n] -> [m] wrapping a monotone map [m] -> [n].
class OpArrow {
public:
    explicit OpArrow(MonotoneMap underlying) : underlying_(std::move(underlying)) {}

    std::size_t source() const noexcept { return underlying_.target_rank(); }
    std::size_t target() const noexcept { return underlying_.source_rank(); }
    const MonotoneMap& underlying() const noexcept { return underlying_; }
    bool is_identity() const noexcept { return underlying_.is_identity(); }

    std::string to_string() const { return "op " + underlying_.to_string(); }

    friend bool operator==(const OpArrow&, const OpArrow&) = default;
    friend auto operator<=>(const OpArrow&, const OpArrow&) = default;

private:
    MonotoneMap underlying_;
};

inline MonotoneMap identity(std::size_t n)
{
    std::vector<std::size_t> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        v[i] = i;
    return MonotoneMap(n, std::move(v));
}

/// delta^n_i : [n-1] -> [n], the injection whose image omits i.
inline MonotoneMap coface(std::size_t n, std::size_t i)
{
    if (n < 1 || i > n)
        throw IndexOutOfRange("coface: need n >= 1 and 0 <= i <= n, got n=" + std::to_string(n) +
                              ", i=" + std::to_string(i));
    std::vector<std::size_t> v(n);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = j < i ? j : j + 1;
    return MonotoneMap(n, std::move(v));
}

/// sigma^n_i : [n] -> [n-1], the surjection hitting i twice.
inline MonotoneMap codegeneracy(std::size_t n, std::size_t i)
{
    if (n < 1 || i >= n)
        throw IndexOutOfRange("codegeneracy: need n >= 1 and 0 <= i <= n-1, got n=" + std::to_string(n) +
                              ", i=" + std::to_string(i));
    std::vector<std::size_t> v(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        v[j] = j <= i ? j : j - 1;
    return MonotoneMap(n - 1, std::move(v));
}

/// g o f.
inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f)
{
    if (f.target_rank() != g.source_rank())
        throw RankMismatch("compose: " + g.to_string() + " after " + f.to_string());
    std::vector<std::size_t> v(f.values().size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = g.values()[f.values()[i]];
    return MonotoneMap(g.target_rank(), std::move(v));
}

inline OpArrow op(MonotoneMap f) { return OpArrow(std::move(f)); }
inline OpArrow identity_op(std::size_t n) { return OpArrow(identity(n)); }

/// d^n_i : [n] -> [n-1].
inline OpArrow face_op(std::size_t n, std::size_t i) { return OpArrow(coface(n, i)); }
/// s^n_i : [n-1] -> [n].
inline OpArrow degeneracy_op(std::size_t n, std::size_t i) { return OpArrow(codegeneracy(n, i)); }

/// g o f in the opposite category; the underlying map is f.underlying o g.underlying.
inline OpArrow compose_op(const OpArrow& g, const OpArrow& f)
{
    if (f.target() != g.source())
        throw RankMismatch("compose_op: " + g.to_string() + " after " + f.to_string());
    return OpArrow(compose(f.underlying(), g.underlying()));
}

/// i_j : [m] -> [1] in the opposite category, underlying map (j-1, j).
inline OpArrow segal_arrow(std::size_t j, std::size_t m)
{
    if (m < 1 || j < 1 || j > m)
        throw IndexOutOfRange("segal_arrow: need 1 <= j <= m, got j=" + std::to_string(j) +
                              ", m=" + std::to_string(m));
    return OpArrow(MonotoneMap(m, {j - 1, j}));
}

/// A generator delta^rank_index or sigma^rank_index.
struct Generator {
    std::size_t rank;
    std::size_t index;
    friend bool operator==(const Generator&, const Generator&) = default;
    friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// Unique epi-mono factorization f = delta... o sigma...
///
/// Both lists are in composition order, outermost first.  Coface indices are
/// strictly decreasing; codegeneracy indices are strictly increasing.
struct NormalForm {
    std::vector<Generator> cofaces;
    std::vector<Generator> codegeneracies;
    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline NormalForm normal_form(const MonotoneMap& f)
{
    const auto& v = f.values();
    const std::size_t m = f.source_rank();
    const std::size_t n = f.target_rank();

    // Repeated positions j with f(j) = f(j+1), increasing.
    std::vector<std::size_t> repeats;
    for (std::size_t j = 0; j < m; ++j)
        if (v[j] == v[j + 1])
            repeats.push_back(j);
    // Points of [n] missed by f, decreasing.
    std::vector<bool> hit(n + 1, false);
    for (auto x : v)
        hit[x] = true;
    std::vector<std::size_t> missed;
    for (std::size_t i = n + 1; i-- > 0;)
        if (!hit[i])
            missed.push_back(i);

    NormalForm nf;
    const std::size_t t = repeats.size();
    for (std::size_t a = 0; a < t; ++a)
        nf.codegeneracies.push_back({m - t + a + 1, repeats[a]});
    for (std::size_t a = 0; a < missed.size(); ++a)
        nf.cofaces.push_back({n - a, missed[a]});
    return nf;
}

/// Recomposes a normal form; `source_rank` is needed only when both lists are empty.
inline MonotoneMap recompose(const NormalForm& nf, std::size_t source_rank)
{
    std::size_t rank = source_rank;
    if (!nf.codegeneracies.empty())
        rank = nf.codegeneracies.back().rank;
    MonotoneMap result = identity(rank);
    for (auto it = nf.codegeneracies.rbegin(); it != nf.codegeneracies.rend(); ++it)
        result = compose(codegeneracy(it->rank, it->index), result);
    for (auto it = nf.cofaces.rbegin(); it != nf.cofaces.rend(); ++it)
        result = compose(coface(it->rank, it->index), result);
    return result;
}

/// Composite of a word of opposite-category arrows; word[0] is applied last.
inline OpArrow evaluate(std::span<const OpArrow> word)
{
    if (word.empty())
        throw ValidationError("evaluate: empty word");
    OpArrow result = word.back();
    for (std::size_t i = word.size() - 1; i-- > 0;)
        result = compose_op(word[i], result);
    return result;
}

/// Decides whether two words denote the same arrow.
inline bool equal_composites(std::span<const OpArrow> word1, std::span<const OpArrow> word2)
{
    const OpArrow a = evaluate(word1);
    const OpArrow b = evaluate(word2);
    if (a.source() != b.source() || a.target() != b.target())
        throw RankMismatch("equal_composites: endpoints differ: " + a.to_string() + " vs " + b.to_string());
    return a == b;
}

inline bool equal_composites(std::initializer_list<OpArrow> word1, std::initializer_list<OpArrow> word2)
{
    return equal_composites(std::span<const OpArrow>(word1.begin(), word1.size()),
                            std::span<const OpArrow>(word2.begin(), word2.size()));
}

/// binomial(n+m+1, m+1), the number of monotone maps [m] -> [n].
inline std::uint64_t count_arrows(std::size_t m, std::size_t n)
{
    const std::uint64_t top = n + m + 1;
    std::uint64_t k = m + 1;
    if (k > top - k)
        k = top - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        std::uint64_t next;
        if (__builtin_mul_overflow(r, top - k + i, &next))
            throw Overflow("count_arrows: result exceeds 64 bits");
        r = next / i;
    }
    return r;
}

/// Every monotone map [m] -> [n], in lexicographic order of value tables.
inline std::vector<MonotoneMap> enumerate_arrows(std::size_t m, std::size_t n)
{
    std::vector<MonotoneMap> out;
    std::vector<std::size_t> v(m + 1, 0);
    while (true) {
        out.emplace_back(n, v);
        std::size_t i = m + 1;
        while (i-- > 0) {
            if (v[i] < n) {
                ++v[i];
                for (std::size_t j = i + 1; j <= m; ++j)
                    v[j] = v[i];
                break;
            }
            if (i == 0)
                return out;
        }
    }
}

/// The generator arrows (faces and degeneracies) leaving level k in the opposite category,
/// restricted to targets <= ceiling.
inline std::vector<OpArrow> generators_from(std::size_t k, std::size_t ceiling)
{
    std::vector<OpArrow> out;
    if (k >= 1)
        for (std::size_t i = 0; i <= k; ++i)
            out.push_back(face_op(k, i));
    if (k + 1 <= ceiling)
        for (std::size_t i = 0; i <= k; ++i)
            out.push_back(degeneracy_op(k + 1, i));
    return out;
}

/// An arrow of the n-fold product of the opposite category.
class MultiArrow {
public:
    explicit MultiArrow(std::vector<OpArrow> components) : components_(std::move(components))
    {
        if (components_.empty())
            throw ValidationError("multi-arrow: arity must be at least 1");
    }

    /// `f` in direction `direction`, identities at `levels` elsewhere.
    static MultiArrow along(std::size_t direction, const OpArrow& f, std::span<const std::size_t> levels)
    {
        if (direction >= levels.size())
            throw IndexOutOfRange("multi-arrow: direction " + std::to_string(direction) + " out of range");
        if (levels[direction] != f.source())
            throw RankMismatch("multi-arrow: " + f.to_string() + " does not leave level " +
                               std::to_string(levels[direction]));
        std::vector<OpArrow> c;
        c.reserve(levels.size());
        for (std::size_t t = 0; t < levels.size(); ++t)
            c.push_back(t == direction ? f : identity_op(levels[t]));
        return MultiArrow(std::move(c));
    }

    std::size_t arity() const noexcept { return components_.size(); }
    const std::vector<OpArrow>& components() const noexcept { return components_; }
    const OpArrow& operator[](std::size_t t) const { return components_.at(t); }

    std::vector<std::size_t> source() const
    {
        std::vector<std::size_t> s;
        for (const auto& c : components_)
            s.push_back(c.source());
        return s;
    }
    std::vector<std::size_t> target() const
    {
        std::vector<std::size_t> s;
        for (const auto& c : components_)
            s.push_back(c.target());
        return s;
    }

    friend bool operator==(const MultiArrow&, const MultiArrow&) = default;

private:
    std::vector<OpArrow> components_;
};

inline MultiArrow compose_multi(const MultiArrow& g, const MultiArrow& f)
{
    if (g.arity() != f.arity())
        throw RankMismatch("compose_multi: arity mismatch");
    std::vector<OpArrow> c;
    for (std::size_t t = 0; t < g.arity(); ++t)
        c.push_back(compose_op(g[t], f[t]));
    return MultiArrow(std::move(c));
}

}  // namespace segal
