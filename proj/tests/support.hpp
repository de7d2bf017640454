#pragma once

// Independent fixtures for the test suites.

#include <map>
#include <memory>
#include <vector>

#include "segal/segal.hpp"

namespace testing_support {

using namespace segal;

/// The standard simplex Delta[n] up to level `trunc`: level k lists the
/// monotone maps [k] -> [n] in lexicographic order, and theta^op acts by
/// precomposition.  Tables are built directly from value tables.
inline std::shared_ptr<const TableSimplicialSet> standard_simplex(std::size_t n, std::size_t trunc)
{
    std::vector<std::vector<std::vector<std::size_t>>> levels(trunc + 1);
    std::vector<std::map<std::vector<std::size_t>, SimplexId>> index(trunc + 1);
    for (std::size_t k = 0; k <= trunc; ++k) {
        std::vector<std::size_t> v(k + 1, 0);
        while (true) {
            if (std::is_sorted(v.begin(), v.end())) {
                index[k][v] = levels[k].size();
                levels[k].push_back(v);
            }
            std::size_t i = k + 1;
            while (i > 0 && ++v[i - 1] > n)
                v[--i] = 0;
            if (i == 0)
                break;
        }
    }
    std::vector<SimplexId> sizes;
    for (const auto& l : levels)
        sizes.push_back(l.size());
    TableSimplicialSet::Tables faces(trunc + 1), degens(trunc + 1);
    for (std::size_t k = 1; k <= trunc; ++k) {
        for (std::size_t i = 0; i <= k; ++i) {
            std::vector<SimplexId> t;
            for (const auto& x : levels[k]) {
                auto y = x;
                y.erase(y.begin() + static_cast<std::ptrdiff_t>(i));
                t.push_back(index[k - 1].at(y));
            }
            faces[k].push_back(std::move(t));
        }
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<SimplexId> t;
            for (const auto& x : levels[k - 1]) {
                auto y = x;
                y.insert(y.begin() + static_cast<std::ptrdiff_t>(i), x[i]);
                t.push_back(index[k].at(y));
            }
            degens[k].push_back(std::move(t));
        }
    }
    return std::make_shared<TableSimplicialSet>(sizes, faces, degens);
}

/// Digits of a nerve/bar simplex: first entry most significant.
inline std::vector<std::size_t> digits(SimplexId id, std::size_t count, std::size_t base)
{
    std::vector<std::size_t> out(count);
    for (std::size_t i = count; i-- > 0;) {
        out[i] = static_cast<std::size_t>(id % base);
        id /= base;
    }
    return out;
}

inline SimplexId undigits(const std::vector<std::size_t>& d, std::size_t base)
{
    SimplexId id = 0;
    for (auto x : d)
        id = id * base + x;
    return id;
}

/// Classical face formula on bar tuples (a_1, ..., a_k):
/// d_0 drops a_1, d_k drops a_k, d_i multiplies a_i a_{i+1}.
inline std::vector<std::size_t> bar_face(const FiniteMonoid& m, const std::vector<std::size_t>& a, std::size_t i)
{
    const std::size_t k = a.size();
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < k; ++j) {
        if ((i == 0 && j == 0) || (i == k && j == k - 1))
            continue;
        if (i > 0 && i < k && j == i - 1) {
            out.push_back(m.mul(a[j], a[j + 1]));
            ++j;
            continue;
        }
        out.push_back(a[j]);
    }
    return out;
}

/// s_i inserts a unit before position i.
inline std::vector<std::size_t> bar_degeneracy(const FiniteMonoid& m, const std::vector<std::size_t>& a, std::size_t i)
{
    auto out = a;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), m.unit());
    return out;
}

inline CategoryPtr share(FiniteCategory c) { return std::make_shared<const FiniteCategory>(std::move(c)); }

/// Objects 0, 1 and two parallel arrows f, g : 0 -> 1.
inline FiniteCategory parallel_pair()
{
    std::vector<ArrowInfo> arrows = {{"id_0", 0, 0}, {"id_1", 1, 1}, {"f", 0, 1}, {"g", 0, 1}};
    std::vector<std::size_t> comp(16, npos);
    comp[0 * 4 + 0] = 0;
    comp[1 * 4 + 1] = 1;
    comp[2 * 4 + 0] = 2;
    comp[3 * 4 + 0] = 3;
    comp[1 * 4 + 2] = 2;
    comp[1 * 4 + 3] = 3;
    return FiniteCategory({"0", "1"}, std::move(arrows), {0, 1}, std::move(comp));
}

/// a <- c -> b.
inline FiniteCategory span_category()
{
    std::vector<ArrowInfo> arrows = {{"id_a", 0, 0}, {"id_b", 1, 1}, {"id_c", 2, 2}, {"p", 2, 0}, {"q", 2, 1}};
    std::vector<std::size_t> comp(25, npos);
    for (std::size_t i = 0; i < 3; ++i)
        comp[i * 5 + i] = i;
    comp[3 * 5 + 2] = 3;
    comp[0 * 5 + 3] = 3;
    comp[4 * 5 + 2] = 4;
    comp[1 * 5 + 4] = 4;
    return FiniteCategory({"a", "b", "c"}, std::move(arrows), {0, 1, 2}, std::move(comp));
}

/// Two objects, no nonidentity arrows.
inline FiniteCategory discrete2()
{
    return FiniteCategory({"x", "y"}, {{"id_x", 0, 0}, {"id_y", 1, 1}}, {0, 1}, {0, npos, npos, 1});
}

/// Every category in the exhaustive pool has at most 3 objects and 6 arrows.
inline std::vector<CategoryPtr> small_categories()
{
    return {share(terminal_category()),       share(two_category()),
            share(chain_poset(3)),            share(monoid_as_category(cyclic_group(2))),
            share(monoid_as_category(cyclic_group(3))), share(monoid_as_category(idempotent2())),
            share(monoid_as_category(leftzero3())),     share(parallel_pair()),
            share(span_category()),           share(discrete2())};
}

// Fixture: Z/n acts on the periodic free resolution
//   Z[G] <-(t-1)- Z[G] <-(N)- Z[G] <-(t-1)- ...
// and tensoring with Z over Z[G] leaves Z <-0- Z <-n- Z <-0- Z <-n- ...
// So the boundary out of degree k is multiplication by c_k with c_k = 0 for
// k odd and c_k = n for k even, k >= 2.  With scalar maps on Z the homology
// is read off directly: ker(c_k) is Z iff c_k = 0, and the image of c_{k+1}
// is c_{k+1} Z.
inline HomologyGroups periodic_resolution_fixture(std::size_t n, std::size_t max_degree)
{
    auto c = [n](std::size_t k) -> std::size_t { return k == 0 || k % 2 == 1 ? 0 : n; };
    HomologyGroups h;
    for (std::size_t k = 0; k <= max_degree; ++k) {
        if (c(k) != 0) {
            h.degrees.push_back(group(k, 0));
            continue;
        }
        const std::size_t next = c(k + 1);
        if (next == 0)
            h.degrees.push_back(group(k, 1));
        else if (next == 1)
            h.degrees.push_back(group(k, 0));
        else
            h.degrees.push_back(group(k, 0, {BigInt(next)}));
    }
    return h;
}

// Fixture for diag bar(Z/2, 2), a model of K(Z/2, 2) through degree 3.
// It is simply connected, so H_1 = 0, and Hurewicz gives H_2 = pi_2 = Z/2.
// H^*(K(Z/2,2); F_2) is polynomial on i_2, Sq^1 i_2, Sq^2 Sq^1 i_2, ..., so
// H^3(-; Z/2) = Z/2.  Universal coefficients give
// H^3(-; Z/2) = Hom(H_3, Z/2) + Ext(H_2, Z/2) = Hom(H_3, Z/2) + Z/2, so H_3 has
// no Z/2 quotient.  Homotopy groups are 2-groups, so reduced homology with Z/p
// coefficients vanishes for odd p, and H_3 = 0.
inline HomologyGroups two_fold_z2_fixture()
{
    HomologyGroups h;
    h.degrees = {group(0, 1), group(1, 0), group(2, 0, {BigInt(2)}), group(3, 0)};
    return h;
}

}  // namespace testing_support
