#pragma once

// Finite categories and monoids given by explicit composition tables,
// functors and natural transformations between them, the nerve, and the
// correspondence between natural transformations F => G : C -> D and functors
// C x 2 -> D restricting to F and G along the two endpoint inclusions.

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "segal/error.hpp"
#include "segal/segal_condition.hpp"
#include "segal/sset.hpp"

namespace segal {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct ArrowInfo {
    std::string name;
    std::size_t source;
    std::size_t target;
    friend bool operator==(const ArrowInfo&, const ArrowInfo&) = default;
};

class FiniteCategory {
public:
    /// composition[g * arrows + f] = g o f when target(f) = source(g), npos otherwise.
    FiniteCategory(std::vector<std::string> objects, std::vector<ArrowInfo> arrows, std::vector<std::size_t> identities,
                   std::vector<std::size_t> composition)
        : objects_(std::move(objects)), arrows_(std::move(arrows)), identities_(std::move(identities)),
          composition_(std::move(composition))
    {
        validate();
    }

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t arrow_count() const noexcept { return arrows_.size(); }
    const std::string& object_name(std::size_t o) const { return objects_.at(o); }
    const std::string& arrow_name(std::size_t a) const { return arrows_.at(a).name; }
    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const std::vector<ArrowInfo>& arrows() const noexcept { return arrows_; }
    std::size_t source(std::size_t a) const { return arrows_.at(a).source; }
    std::size_t target(std::size_t a) const { return arrows_.at(a).target; }
    std::size_t identity(std::size_t o) const { return identities_.at(o); }
    bool is_identity(std::size_t a) const { return identities_[source(a)] == a; }
    bool composable(std::size_t g, std::size_t f) const { return target(f) == source(g); }

    /// g o f.
    std::size_t compose(std::size_t g, std::size_t f) const
    {
        const std::size_t r = composition_.at(g * arrows_.size() + f);
        if (r == npos)
            throw RankMismatch("compose: " + arrow_name(g) + " o " + arrow_name(f) + " is not composable");
        return r;
    }

    std::vector<std::size_t> hom(std::size_t a, std::size_t b) const
    {
        std::vector<std::size_t> out;
        for (std::size_t f = 0; f < arrows_.size(); ++f)
            if (arrows_[f].source == a && arrows_[f].target == b)
                out.push_back(f);
        return out;
    }

    std::optional<std::size_t> find_object(const std::string& name) const
    {
        auto it = std::find(objects_.begin(), objects_.end(), name);
        if (it == objects_.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - objects_.begin());
    }
    std::optional<std::size_t> find_arrow(const std::string& name) const
    {
        for (std::size_t a = 0; a < arrows_.size(); ++a)
            if (arrows_[a].name == name)
                return a;
        return std::nullopt;
    }

    const std::vector<std::size_t>& composition_table() const noexcept { return composition_; }
    const std::vector<std::size_t>& identities() const noexcept { return identities_; }

    friend bool operator==(const FiniteCategory&, const FiniteCategory&) = default;

private:
    void validate() const
    {
        const std::size_t na = arrows_.size();
        const std::size_t no = objects_.size();
        if (identities_.size() != no)
            throw ValidationError("category: one identity per object required");
        if (composition_.size() != na * na)
            throw ValidationError("category: composition table must be arrows x arrows");
        for (const auto& a : arrows_)
            if (a.source >= no || a.target >= no)
                throw ValidationError("category: arrow " + a.name + " has an unknown endpoint");
        for (std::size_t o = 0; o < no; ++o) {
            const std::size_t i = identities_[o];
            if (i >= na || arrows_[i].source != o || arrows_[i].target != o)
                throw ValidationError("category: identity of object " + objects_[o] + " is not an endomorphism of it");
        }
        for (std::size_t g = 0; g < na; ++g)
            for (std::size_t f = 0; f < na; ++f) {
                const std::size_t r = composition_[g * na + f];
                const bool ok = arrows_[f].target == arrows_[g].source;
                if (!ok && r != npos)
                    throw ValidationError("category: composition defined on non-composable pair (" + arrows_[g].name +
                                          ", " + arrows_[f].name + ")");
                if (ok && (r >= na || arrows_[r].source != arrows_[f].source || arrows_[r].target != arrows_[g].target))
                    throw ValidationError("category: composite " + arrows_[g].name + " o " + arrows_[f].name +
                                          " missing or has wrong endpoints");
            }
        for (std::size_t f = 0; f < na; ++f) {
            if (composition_[identities_[arrows_[f].target] * na + f] != f)
                throw ValidationError("category: left identity law fails for " + arrows_[f].name);
            if (composition_[f * na + identities_[arrows_[f].source]] != f)
                throw ValidationError("category: right identity law fails for " + arrows_[f].name);
        }
        for (std::size_t h = 0; h < na; ++h)
            for (std::size_t g = 0; g < na; ++g) {
                if (arrows_[g].target != arrows_[h].source)
                    continue;
                for (std::size_t f = 0; f < na; ++f) {
                    if (arrows_[f].target != arrows_[g].source)
                        continue;
                    const std::size_t hg = composition_[h * na + g];
                    const std::size_t gf = composition_[g * na + f];
                    if (composition_[hg * na + f] != composition_[h * na + gf])
                        throw ValidationError("category: associativity fails for (" + arrows_[h].name + ", " +
                                              arrows_[g].name + ", " + arrows_[f].name + ")");
                }
            }
    }

    std::vector<std::string> objects_;
    std::vector<ArrowInfo> arrows_;
    std::vector<std::size_t> identities_;
    std::vector<std::size_t> composition_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

// ---------------------------------------------------------------------------
// Monoids

class FiniteMonoid {
public:
    /// table[a * size + b] = a . b
    FiniteMonoid(std::vector<std::string> elements, std::size_t unit, std::vector<std::size_t> table)
        : elements_(std::move(elements)), unit_(unit), table_(std::move(table))
    {
        const std::size_t n = elements_.size();
        if (n == 0)
            throw ValidationError("monoid: no elements");
        if (unit_ >= n)
            throw ValidationError("monoid: unit out of range");
        if (table_.size() != n * n)
            throw ValidationError("monoid: multiplication table must be " + std::to_string(n) + "x" +
                                  std::to_string(n));
        for (std::size_t i = 0; i < table_.size(); ++i)
            if (table_[i] >= n)
                throw ValidationError("monoid: table entry out of range at (" + elements_[i / n] + ", " +
                                      elements_[i % n] + ")");
        for (std::size_t a = 0; a < n; ++a)
            if (mul(unit_, a) != a || mul(a, unit_) != a)
                throw ValidationError("monoid: unit law fails for " + elements_[a]);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw ValidationError("monoid: associativity fails for (" + elements_[a] + ", " + elements_[b] +
                                              ", " + elements_[c] + ")");
        commutative_ = !noncommuting_pair().has_value();
    }

    std::size_t size() const noexcept { return elements_.size(); }
    std::size_t unit() const noexcept { return unit_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * elements_.size() + b]; }
    const std::vector<std::size_t>& table() const noexcept { return table_; }
    const std::vector<std::string>& elements() const noexcept { return elements_; }
    const std::string& name(std::size_t a) const { return elements_.at(a); }
    bool commutative() const noexcept { return commutative_; }

    /// First (a, b) in index order with ab != ba.
    std::optional<std::pair<std::size_t, std::size_t>> noncommuting_pair() const
    {
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = a + 1; b < size(); ++b)
                if (mul(a, b) != mul(b, a))
                    return std::pair{a, b};
        return std::nullopt;
    }

    friend bool operator==(const FiniteMonoid&, const FiniteMonoid&) = default;

private:
    std::vector<std::string> elements_;
    std::size_t unit_;
    std::vector<std::size_t> table_;
    bool commutative_ = false;
};

/// True iff every element has a two-sided inverse.
inline bool is_group(const FiniteMonoid& m)
{
    for (std::size_t a = 0; a < m.size(); ++a) {
        bool found = false;
        for (std::size_t b = 0; b < m.size() && !found; ++b)
            found = m.mul(a, b) == m.unit() && m.mul(b, a) == m.unit();
        if (!found)
            return false;
    }
    return true;
}

inline FiniteMonoid cyclic_group(std::size_t n)
{
    if (n == 0)
        throw ValidationError("Z/n needs n >= 1");
    std::vector<std::string> names;
    std::vector<std::size_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(std::to_string(a));
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = (a + b) % n;
    }
    return FiniteMonoid(std::move(names), 0, std::move(table));
}

/// Pairs (a, b) are indexed a * |N| + b.
inline FiniteMonoid direct_product(const FiniteMonoid& m, const FiniteMonoid& n)
{
    const std::size_t s = m.size() * n.size();
    std::vector<std::string> names;
    std::vector<std::size_t> table(s * s);
    for (std::size_t a = 0; a < s; ++a) {
        names.push_back("(" + m.name(a / n.size()) + "," + n.name(a % n.size()) + ")");
        for (std::size_t b = 0; b < s; ++b)
            table[a * s + b] = m.mul(a / n.size(), b / n.size()) * n.size() + n.mul(a % n.size(), b % n.size());
    }
    return FiniteMonoid(std::move(names), m.unit() * n.size() + n.unit(), std::move(table));
}

inline FiniteMonoid trivial_monoid() { return FiniteMonoid({"1"}, 0, {0}); }

/// {1, a} with a.a = a.
inline FiniteMonoid idempotent2() { return FiniteMonoid({"1", "a"}, 0, {0, 1, 1, 1}); }

/// {1, a, b} with x.y = x for x, y in {a, b}; noncommutative.
inline FiniteMonoid leftzero3() { return FiniteMonoid({"1", "a", "b"}, 0, {0, 1, 2, 1, 1, 1, 2, 2, 2}); }

/// Resolves "Z/n", products such as "Z/2xZ/2" or "Z/2xZ/3", "idempotent2", "leftzero3", "trivial".
inline FiniteMonoid builtin_monoid(const std::string& name)
{
    if (name == "idempotent2")
        return idempotent2();
    if (name == "leftzero3")
        return leftzero3();
    if (name == "trivial")
        return trivial_monoid();
    std::optional<FiniteMonoid> acc;
    std::size_t pos = 0;
    while (pos <= name.size()) {
        const std::size_t next = std::min(name.find('x', pos), name.size());
        const std::string part = name.substr(pos, next - pos);
        if (part.size() < 3 || part.compare(0, 2, "Z/") != 0 ||
            part.find_first_not_of("0123456789", 2) != std::string::npos)
            throw ValidationError("unknown built-in monoid '" + name + "'");
        const std::size_t order = std::stoul(part.substr(2));
        if (order == 0 || order > 64)
            throw ValidationError("built-in monoid '" + name + "': order must lie in 1..64");
        auto z = cyclic_group(order);
        acc = acc ? direct_product(*acc, z) : z;
        pos = next + 1;
    }
    return *acc;
}

inline const std::vector<std::string>& builtin_commutative_monoid_names()
{
    static const std::vector<std::string> names = {"trivial", "Z/2", "Z/3", "Z/4", "Z/2xZ/2", "idempotent2"};
    return names;
}

// ---------------------------------------------------------------------------
// Categories

/// One object; arrows are the elements; arrows compose in diagrammatic order,
/// g o f = f . g, so that a composable string (a_1, ..., a_k) multiplies out
/// as a_1 . ... . a_k.
inline FiniteCategory monoid_as_category(const FiniteMonoid& m)
{
    const std::size_t n = m.size();
    std::vector<ArrowInfo> arrows;
    for (std::size_t a = 0; a < n; ++a)
        arrows.push_back({m.name(a), 0, 0});
    std::vector<std::size_t> comp(n * n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t f = 0; f < n; ++f)
            comp[g * n + f] = m.mul(f, g);
    return FiniteCategory({"*"}, std::move(arrows), {m.unit()}, std::move(comp));
}

/// Objects 0 and 1, arrows id_0, id_1 and h : 0 -> 1 (indices 0, 1, 2).
inline FiniteCategory two_category()
{
    std::vector<ArrowInfo> arrows = {{"id_0", 0, 0}, {"id_1", 1, 1}, {"h", 0, 1}};
    std::vector<std::size_t> comp(9, npos);
    comp[0 * 3 + 0] = 0;
    comp[1 * 3 + 1] = 1;
    comp[2 * 3 + 0] = 2;
    comp[1 * 3 + 2] = 2;
    return FiniteCategory({"0", "1"}, std::move(arrows), {0, 1}, std::move(comp));
}

inline FiniteCategory terminal_category() { return monoid_as_category(trivial_monoid()); }

/// The poset 0 < 1 < ... < n-1; arrow i->j exists iff i <= j.
inline FiniteCategory chain_poset(std::size_t n)
{
    std::vector<ArrowInfo> arrows;
    std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n, npos));
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            index[i][j] = arrows.size();
            arrows.push_back({i == j ? "id_" + std::to_string(i) : std::to_string(i) + "<" + std::to_string(j), i, j});
            if (i == j)
                ids[i] = index[i][j];
        }
    const std::size_t na = arrows.size();
    std::vector<std::size_t> comp(na * na, npos);
    for (std::size_t g = 0; g < na; ++g)
        for (std::size_t f = 0; f < na; ++f)
            if (arrows[f].target == arrows[g].source)
                comp[g * na + f] = index[arrows[f].source][arrows[g].target];
    return FiniteCategory([n] {
        std::vector<std::string> o;
        for (std::size_t i = 0; i < n; ++i)
            o.push_back(std::to_string(i));
        return o;
    }(), std::move(arrows), std::move(ids), std::move(comp));
}

/// Objects (c, d) are indexed c * |obj D| + d; arrows (f, g) are indexed f * |arr D| + g.
inline FiniteCategory product_category(const FiniteCategory& c, const FiniteCategory& d)
{
    const std::size_t co = c.object_count(), dob = d.object_count();
    const std::size_t ca = c.arrow_count(), da = d.arrow_count();
    std::vector<std::string> objects;
    for (std::size_t x = 0; x < co; ++x)
        for (std::size_t y = 0; y < dob; ++y)
            objects.push_back("(" + c.object_name(x) + "," + d.object_name(y) + ")");
    std::vector<ArrowInfo> arrows;
    for (std::size_t f = 0; f < ca; ++f)
        for (std::size_t g = 0; g < da; ++g)
            arrows.push_back({"(" + c.arrow_name(f) + "," + d.arrow_name(g) + ")", c.source(f) * dob + d.source(g),
                              c.target(f) * dob + d.target(g)});
    std::vector<std::size_t> ids;
    for (std::size_t x = 0; x < co; ++x)
        for (std::size_t y = 0; y < dob; ++y)
            ids.push_back(c.identity(x) * da + d.identity(y));
    const std::size_t na = ca * da;
    std::vector<std::size_t> comp(na * na, npos);
    for (std::size_t g = 0; g < na; ++g)
        for (std::size_t f = 0; f < na; ++f) {
            const std::size_t g1 = g / da, g2 = g % da, f1 = f / da, f2 = f % da;
            if (c.composable(g1, f1) && d.composable(g2, f2))
                comp[g * na + f] = c.compose(g1, f1) * da + d.compose(g2, f2);
        }
    return FiniteCategory(std::move(objects), std::move(arrows), std::move(ids), std::move(comp));
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

class Functor {
public:
    Functor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> on_objects,
            std::vector<std::size_t> on_arrows)
        : source_(std::move(source)), target_(std::move(target)), objects_(std::move(on_objects)),
          arrows_(std::move(on_arrows))
    {
        if (auto err = violation(*source_, *target_, objects_, arrows_))
            throw ValidationError(*err);
    }

    /// Description of the first violated functor law, if any.
    static std::optional<std::string> violation(const FiniteCategory& c, const FiniteCategory& d,
                                                const std::vector<std::size_t>& obj, const std::vector<std::size_t>& arr)
    {
        if (obj.size() != c.object_count() || arr.size() != c.arrow_count())
            return "functor: map sizes do not match the source category";
        for (auto o : obj)
            if (o >= d.object_count())
                return "functor: object image out of range";
        for (std::size_t f = 0; f < arr.size(); ++f) {
            if (arr[f] >= d.arrow_count())
                return "functor: arrow image out of range";
            if (d.source(arr[f]) != obj[c.source(f)] || d.target(arr[f]) != obj[c.target(f)])
                return "functor: does not preserve endpoints of " + c.arrow_name(f);
        }
        for (std::size_t o = 0; o < obj.size(); ++o)
            if (arr[c.identity(o)] != d.identity(obj[o]))
                return "functor: does not preserve the identity of " + c.object_name(o);
        for (std::size_t g = 0; g < arr.size(); ++g)
            for (std::size_t f = 0; f < arr.size(); ++f)
                if (c.composable(g, f) && arr[c.compose(g, f)] != d.compose(arr[g], arr[f]))
                    return "functor: does not preserve the composite " + c.arrow_name(g) + " o " + c.arrow_name(f);
        return std::nullopt;
    }

    const CategoryPtr& source() const noexcept { return source_; }
    const CategoryPtr& target() const noexcept { return target_; }
    std::size_t object(std::size_t o) const { return objects_.at(o); }
    std::size_t arrow(std::size_t a) const { return arrows_.at(a); }
    const std::vector<std::size_t>& object_map() const noexcept { return objects_; }
    const std::vector<std::size_t>& arrow_map() const noexcept { return arrows_; }

    friend bool operator==(const Functor& a, const Functor& b)
    {
        return *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.objects_ == b.objects_ &&
               a.arrows_ == b.arrows_;
    }

private:
    CategoryPtr source_, target_;
    std::vector<std::size_t> objects_, arrows_;
};

/// g o f.
inline Functor compose(const Functor& g, const Functor& f)
{
    if (!(*f.target() == *g.source()))
        throw RankMismatch("compose: functors are not composable");
    std::vector<std::size_t> obj, arr;
    for (auto o : f.object_map())
        obj.push_back(g.object(o));
    for (auto a : f.arrow_map())
        arr.push_back(g.arrow(a));
    return Functor(f.source(), g.target(), std::move(obj), std::move(arr));
}

inline Functor identity_functor(const CategoryPtr& c)
{
    std::vector<std::size_t> obj(c->object_count()), arr(c->arrow_count());
    std::iota(obj.begin(), obj.end(), 0);
    std::iota(arr.begin(), arr.end(), 0);
    return Functor(c, c, std::move(obj), std::move(arr));
}

class NaturalTransformation {
public:
    NaturalTransformation(Functor from, Functor to, std::vector<std::size_t> components)
        : from_(std::move(from)), to_(std::move(to)), components_(std::move(components))
    {
        if (!(*from_.source() == *to_.source()) || !(*from_.target() == *to_.target()))
            throw ValidationError("natural transformation: functors have different source or target");
        if (auto err = violation(from_, to_, components_))
            throw ValidationError(*err);
    }

    static std::optional<std::string> violation(const Functor& f, const Functor& g,
                                                const std::vector<std::size_t>& alpha)
    {
        const auto& c = *f.source();
        const auto& d = *f.target();
        if (alpha.size() != c.object_count())
            return "natural transformation: one component per object required";
        for (std::size_t o = 0; o < alpha.size(); ++o)
            if (alpha[o] >= d.arrow_count() || d.source(alpha[o]) != f.object(o) || d.target(alpha[o]) != g.object(o))
                return "natural transformation: component at " + c.object_name(o) + " has wrong endpoints";
        for (std::size_t a = 0; a < c.arrow_count(); ++a) {
            const std::size_t lhs = d.compose(g.arrow(a), alpha[c.source(a)]);
            const std::size_t rhs = d.compose(alpha[c.target(a)], f.arrow(a));
            if (lhs != rhs)
                return "natural transformation: naturality square fails at " + c.arrow_name(a) + " (" +
                       d.arrow_name(lhs) + " != " + d.arrow_name(rhs) + ")";
        }
        return std::nullopt;
    }

    const Functor& from() const noexcept { return from_; }
    const Functor& to() const noexcept { return to_; }
    std::size_t component(std::size_t o) const { return components_.at(o); }
    const std::vector<std::size_t>& components() const noexcept { return components_; }

    friend bool operator==(const NaturalTransformation&, const NaturalTransformation&) = default;

private:
    Functor from_, to_;
    std::vector<std::size_t> components_;
};

inline NaturalTransformation identity_transformation(const Functor& f)
{
    std::vector<std::size_t> comps;
    for (std::size_t o = 0; o < f.source()->object_count(); ++o)
        comps.push_back(f.target()->identity(f.object(o)));
    return NaturalTransformation(f, f, std::move(comps));
}

/// I_e : C -> C x 2, C |-> (C, e), f |-> (f, 1_e).
inline Functor endpoint_inclusion(const CategoryPtr& c, const CategoryPtr& c_times_two, std::size_t endpoint)
{
    std::vector<std::size_t> obj, arr;
    for (std::size_t o = 0; o < c->object_count(); ++o)
        obj.push_back(o * 2 + endpoint);
    for (std::size_t a = 0; a < c->arrow_count(); ++a)
        arr.push_back(a * 3 + endpoint);
    return Functor(c, c_times_two, std::move(obj), std::move(arr));
}

/// The functor A : C x 2 -> D with A(-, 0) = F, A(-, 1) = G and A(f, h) = Gf o alpha_C.
inline Functor nat_to_functor(const NaturalTransformation& alpha)
{
    const auto& f = alpha.from();
    const auto& g = alpha.to();
    const auto c = f.source();
    const auto& d = *f.target();
    auto cx2 = std::make_shared<const FiniteCategory>(product_category(*c, two_category()));
    std::vector<std::size_t> obj(cx2->object_count()), arr(cx2->arrow_count());
    for (std::size_t o = 0; o < c->object_count(); ++o) {
        obj[o * 2 + 0] = f.object(o);
        obj[o * 2 + 1] = g.object(o);
    }
    for (std::size_t a = 0; a < c->arrow_count(); ++a) {
        arr[a * 3 + 0] = f.arrow(a);
        arr[a * 3 + 1] = g.arrow(a);
        const std::size_t via_g = d.compose(g.arrow(a), alpha.component(c->source(a)));
        const std::size_t via_f = d.compose(alpha.component(c->target(a)), f.arrow(a));
        if (via_g != via_f)
            throw ValidationError("nat_to_functor: the two formulas for A(" + c->arrow_name(a) + ", h) disagree");
        arr[a * 3 + 2] = via_g;
    }
    return Functor(cx2, f.target(), std::move(obj), std::move(arr));
}

/// alpha_C = A(1_C, h), natural from A o I_0 to A o I_1.
inline NaturalTransformation functor_to_nat(const CategoryPtr& c, const Functor& a)
{
    if (!(*a.source() == product_category(*c, two_category())))
        throw ValidationError("functor_to_nat: source of A is not C x 2");
    const Functor f = compose(a, endpoint_inclusion(c, a.source(), 0));
    const Functor g = compose(a, endpoint_inclusion(c, a.source(), 1));
    std::vector<std::size_t> comps;
    for (std::size_t o = 0; o < c->object_count(); ++o)
        comps.push_back(a.arrow(c->identity(o) * 3 + 2));
    return NaturalTransformation(f, g, std::move(comps));
}

/// Every functor C -> D.  Arrow images are chosen in index order and pruned as
/// soon as a composite relation among assigned arrows fails.
inline std::vector<Functor> enumerate_functors(const CategoryPtr& c, const CategoryPtr& d)
{
    std::vector<Functor> out;
    const std::size_t no = c->object_count(), na = c->arrow_count();
    // Relations g o f = h grouped by the largest index among g, f, h.
    std::vector<std::vector<std::array<std::size_t, 3>>> relations(na);
    for (std::size_t g = 0; g < na; ++g)
        for (std::size_t f = 0; f < na; ++f)
            if (c->composable(g, f)) {
                const std::size_t h = c->compose(g, f);
                relations[std::max({g, f, h})].push_back({g, f, h});
            }

    std::vector<std::size_t> obj(no, 0), arr(na, 0);
    std::vector<std::vector<std::size_t>> choices(na);
    auto assign_arrows = [&](auto&& self, std::size_t i) -> void {
        if (i == na) {
            out.emplace_back(c, d, obj, arr);
            return;
        }
        for (auto cand : choices[i]) {
            arr[i] = cand;
            bool ok = true;
            for (const auto& [g, f, h] : relations[i])
                if (d->compose(arr[g], arr[f]) != arr[h]) {
                    ok = false;
                    break;
                }
            if (ok)
                self(self, i + 1);
        }
    };
    while (true) {
        for (std::size_t a = 0; a < na; ++a) {
            if (c->is_identity(a))
                choices[a] = {d->identity(obj[c->source(a)])};
            else
                choices[a] = d->hom(obj[c->source(a)], obj[c->target(a)]);
        }
        assign_arrows(assign_arrows, 0);
        std::size_t t = 0;
        while (t < no && ++obj[t] == d->object_count())
            obj[t++] = 0;
        if (t == no)
            break;
    }
    return out;
}

/// Every natural transformation F => G.
inline std::vector<NaturalTransformation> enumerate_transformations(const Functor& f, const Functor& g)
{
    std::vector<NaturalTransformation> out;
    const auto& c = *f.source();
    const auto& d = *f.target();
    const std::size_t no = c.object_count();
    std::vector<std::vector<std::size_t>> choices(no);
    for (std::size_t o = 0; o < no; ++o) {
        choices[o] = d.hom(f.object(o), g.object(o));
        if (choices[o].empty())
            return out;
    }
    std::vector<std::size_t> pick(no, 0);
    while (true) {
        std::vector<std::size_t> comps(no);
        for (std::size_t o = 0; o < no; ++o)
            comps[o] = choices[o][pick[o]];
        if (!NaturalTransformation::violation(f, g, comps))
            out.emplace_back(f, g, std::move(comps));
        std::size_t t = 0;
        while (t < no && ++pick[t] == choices[t].size())
            pick[t++] = 0;
        if (t == no)
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nerve

/// Level k is the set of composable strings (a_1, ..., a_k), a_1 applied
/// first; level 0 is the set of objects.  Strings are listed in
/// lexicographic order of arrow indices.
class Nerve final : public SimplicialSet {
public:
    static constexpr SimplexId default_level_limit = SimplexId{1} << 22;

    Nerve(CategoryPtr c, std::size_t trunc, SimplexId level_limit = default_level_limit)
        : c_(std::move(c)), trunc_(trunc)
    {
        chains_.resize(trunc_ + 1);
        index_.resize(trunc_ + 1);
        for (std::size_t o = 0; o < c_->object_count(); ++o)
            chains_[0].push_back({o});
        if (trunc_ >= 1)
            for (std::size_t a = 0; a < c_->arrow_count(); ++a)
                chains_[1].push_back({a});
        for (std::size_t k = 2; k <= trunc_; ++k) {
            for (const auto& ch : chains_[k - 1])
                for (std::size_t a = 0; a < c_->arrow_count(); ++a)
                    if (c_->source(a) == c_->target(ch.back())) {
                        auto next = ch;
                        next.push_back(a);
                        chains_[k].push_back(std::move(next));
                    }
            if (chains_[k].size() > level_limit)
                throw TruncationExceeded("nerve: level " + std::to_string(k) + " has more than " +
                                         std::to_string(level_limit) + " simplices");
        }
        for (std::size_t k = 0; k <= trunc_; ++k)
            for (SimplexId i = 0; i < chains_[k].size(); ++i)
                index_[k].emplace(chains_[k][i], i);
    }

    std::size_t truncation() const override { return trunc_; }
    const CategoryPtr& category() const noexcept { return c_; }

    /// The string of arrows (or the single object at level 0).
    const std::vector<std::size_t>& chain(std::size_t k, SimplexId x) const { return chains_.at(k).at(x); }

    SimplexId index_of(std::size_t k, const std::vector<std::size_t>& chain) const
    {
        auto it = index_.at(k).find(chain);
        if (it == index_.at(k).end())
            throw ValidationError("nerve: not a composable string at level " + std::to_string(k));
        return it->second;
    }

protected:
    SimplexId do_level_size(std::size_t k) const override { return chains_[k].size(); }

    SimplexId do_act(const OpArrow& f, SimplexId x) const override
    {
        const auto& theta = f.underlying().values();  // [l] -> [k]
        const std::size_t k = f.source();
        const auto& ch = chains_[k][x];
        auto vertex = [&](std::size_t j) -> std::size_t {
            if (k == 0)
                return ch[0];
            return j == 0 ? c_->source(ch[0]) : c_->target(ch[j - 1]);
        };
        if (theta.size() == 1)
            return index_[0].at({vertex(theta[0])});
        std::vector<std::size_t> out;
        out.reserve(theta.size() - 1);
        for (std::size_t j = 1; j < theta.size(); ++j) {
            std::size_t a = c_->identity(vertex(theta[j - 1]));
            for (std::size_t i = theta[j - 1]; i < theta[j]; ++i)
                a = c_->compose(ch[i], a);
            out.push_back(a);
        }
        return index_[theta.size() - 1].at(out);
    }

private:
    CategoryPtr c_;
    std::size_t trunc_;
    std::vector<std::vector<std::vector<std::size_t>>> chains_;
    std::vector<std::unordered_map<std::vector<std::size_t>, SimplexId, detail::TupleHash>> index_;
};

inline std::shared_ptr<const Nerve> nerve(CategoryPtr c, std::size_t trunc)
{
    return std::make_shared<Nerve>(std::move(c), trunc);
}

inline std::shared_ptr<const Nerve> nerve(const FiniteCategory& c, std::size_t trunc)
{
    return nerve(std::make_shared<const FiniteCategory>(c), trunc);
}

inline std::shared_ptr<const Nerve> nerve(const FiniteMonoid& m, std::size_t trunc)
{
    return nerve(monoid_as_category(m), trunc);
}

/// The simplicial map N(F) : N(C) -> N(D).
inline LevelMap nerve_map(const Functor& f, std::shared_ptr<const Nerve> from, std::shared_ptr<const Nerve> to)
{
    return [f, from, to](std::size_t k, SimplexId x) {
        const auto& ch = from->chain(k, x);
        std::vector<std::size_t> image;
        image.reserve(ch.size());
        for (auto a : ch)
            image.push_back(k == 0 ? f.object(a) : f.arrow(a));
        return to->index_of(k, image);
    };
}

/// The canonical comparison N(C x D) -> N(C) x N(D): a string of pairs goes to the pair of strings.
inline LevelMap nerve_product_comparison(std::shared_ptr<const Nerve> of_product, std::shared_ptr<const Nerve> nc,
                                         std::shared_ptr<const Nerve> nd, std::shared_ptr<const ProductSimplicialSet> prod)
{
    return [=](std::size_t k, SimplexId x) {
        const auto& ch = of_product->chain(k, x);
        const std::size_t width = k == 0 ? nd->category()->object_count() : nd->category()->arrow_count();
        std::vector<std::size_t> left, right;
        for (auto a : ch) {
            left.push_back(a / width);
            right.push_back(a % width);
        }
        return prod->encode(k, nc->index_of(k, left), nd->index_of(k, right));
    };
}

}  // namespace segal
