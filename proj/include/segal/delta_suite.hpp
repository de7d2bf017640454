#pragma once

// Machine-checked identity suites for the simplicial category: the
// cosimplicial identities, the face/degeneracy equations used to prove
// associativity of the Segal H-space multiplication, normal-form soundness
// and arrow counting.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "segal/delta.hpp"

namespace segal {

struct SuiteEntry {
    std::string name;
    bool passed = true;
    std::size_t instances = 0;
    std::string detail;  // offending composites on failure

    explicit SuiteEntry(std::string n = {}) : name(std::move(n)) {}
};

struct SuiteReport {
    std::vector<SuiteEntry> entries;
    bool passed() const
    {
        for (const auto& e : entries)
            if (!e.passed)
                return false;
        return true;
    }
};

struct DeltaSuiteOptions {
    std::size_t identity_rank = 10;
    std::size_t normal_form_rank = 6;
    std::size_t contravariance_rank = 5;
    /// Test mode: replaces the right-hand side of one low-rank composite equation by a wrong composite.
    bool inject_fault = false;
};

namespace detail {

inline void check_equal(SuiteEntry& e, const MonotoneMap& lhs, const MonotoneMap& rhs, const std::string& what)
{
    ++e.instances;
    if (lhs == rhs || !e.passed)
        return;
    e.passed = false;
    e.detail = what + ": " + lhs.to_string() + " != " + rhs.to_string();
}

inline void check_word(SuiteEntry& e, std::vector<OpArrow> lhs, std::vector<OpArrow> rhs,
                       const std::string& lhs_name, const std::string& rhs_name)
{
    ++e.instances;
    const OpArrow a = evaluate(lhs);
    const OpArrow b = evaluate(rhs);
    if (a == b)
        return;
    e.passed = false;
    e.detail = lhs_name + " = " + a.to_string() + " but " + rhs_name + " = " + b.to_string();
}

}  // namespace detail

inline SuiteReport run_delta_suite(const DeltaSuiteOptions& opt = {})
{
    SuiteReport report;
    const std::size_t top = opt.identity_rank;

    {
        SuiteEntry e{"coface-coface"};
        for (std::size_t n = 1; n + 1 <= top; ++n)
            for (std::size_t j = 1; j <= n + 1; ++j)
                for (std::size_t i = 0; i < j; ++i)
                    detail::check_equal(e, compose(coface(n + 1, j), coface(n, i)),
                                        compose(coface(n + 1, i), coface(n, j - 1)),
                                        "n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
        report.entries.push_back(std::move(e));
    }
    {
        SuiteEntry e{"codegeneracy-codegeneracy"};
        for (std::size_t n = 1; n + 1 <= top; ++n)
            for (std::size_t j = 0; j + 1 <= n; ++j)
                for (std::size_t i = 0; i <= j; ++i)
                    detail::check_equal(e, compose(codegeneracy(n, j), codegeneracy(n + 1, i)),
                                        compose(codegeneracy(n, i), codegeneracy(n + 1, j + 1)),
                                        "n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
        report.entries.push_back(std::move(e));
    }
    {
        SuiteEntry lower{"codegeneracy-coface (i < j)"};
        SuiteEntry ident{"codegeneracy-coface (i = j, j+1)"};
        SuiteEntry upper{"codegeneracy-coface (i > j+1)"};
        for (std::size_t n = 1; n <= top; ++n)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i <= n; ++i) {
                    const auto lhs = compose(codegeneracy(n, j), coface(n, i));
                    const std::string where =
                        "n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
                    if (i < j)
                        detail::check_equal(lower, lhs, compose(coface(n - 1, i), codegeneracy(n - 1, j - 1)), where);
                    else if (i == j || i == j + 1)
                        detail::check_equal(ident, lhs, identity(n - 1), where);
                    else
                        detail::check_equal(upper, lhs, compose(coface(n - 1, i - 1), codegeneracy(n - 1, j)), where);
                }
        report.entries.push_back(std::move(lower));
        report.entries.push_back(std::move(ident));
        report.entries.push_back(std::move(upper));
    }

    // Equations used in the associativity and unit arguments for the Segal
    // H-space.  Degeneracy equations are stated in the simplicial category,
    // the rest in its opposite.
    {
        struct Eq {
            std::string lhs_name;
            std::vector<OpArrow> lhs;
            std::string rhs_name;
            std::vector<OpArrow> rhs;
        };
        const auto d = face_op;
        const auto s = degeneracy_op;
        std::vector<Eq> eqs = {
            {"d^2_1 o s^2_1", {d(2, 1), s(2, 1)}, "1", {identity_op(1)}},
            {"d^2_2 o s^2_1", {d(2, 2), s(2, 1)}, "1", {identity_op(1)}},
            {"d^2_0 o s^2_1", {d(2, 0), s(2, 1)}, "s^1_0 o d^1_0", {s(1, 0), d(1, 0)}},
            {"i_1", {segal_arrow(1, 3)}, "d^2_2 o d^3_3", {d(2, 2), d(3, 3)}},
            {"i_2", {segal_arrow(2, 3)}, "d^2_0 o d^3_3", {d(2, 0), d(3, 3)}},
            {"i_1", {segal_arrow(1, 3)}, "d^2_2 o d^3_2", {d(2, 2), d(3, 2)}},
            {"d^2_1 o d^3_3", {d(2, 1), d(3, 3)}, "d^2_2 o d^3_1", {d(2, 2), d(3, 1)}},
            {"d^2_1 o d^3_0", {d(2, 1), d(3, 0)}, "d^2_0 o d^3_2", {d(2, 0), d(3, 2)}},
            {"d^2_1 o d^3_1", {d(2, 1), d(3, 1)}, "d^2_1 o d^3_2", {d(2, 1), d(3, 2)}},
            {"i_3", {segal_arrow(3, 3)}, "d^2_0 o d^3_1", {d(2, 0), d(3, 1)}},
        };
        if (opt.inject_fault) {
            eqs[6].rhs_name = "d^2_2 o d^3_2";
            eqs[6].rhs = {d(2, 2), d(3, 2)};
        }
        for (auto& eq : eqs) {
            SuiteEntry e{eq.lhs_name + " = " + eq.rhs_name};
            detail::check_word(e, eq.lhs, eq.rhs, eq.lhs_name, eq.rhs_name);
            report.entries.push_back(std::move(e));
        }
    }

    {
        SuiteEntry counts{"arrow counts"};
        SuiteEntry nf{"normal form"};
        for (std::size_t m = 0; m <= opt.normal_form_rank; ++m)
            for (std::size_t n = 0; n <= opt.normal_form_rank; ++n) {
                const auto all = enumerate_arrows(m, n);
                ++counts.instances;
                if (all.size() != count_arrows(m, n) && counts.passed) {
                    counts.passed = false;
                    counts.detail = "m=" + std::to_string(m) + " n=" + std::to_string(n) + ": enumerated " +
                                    std::to_string(all.size()) + ", formula " + std::to_string(count_arrows(m, n));
                }
                std::set<std::pair<std::vector<Generator>, std::vector<Generator>>> seen;
                for (const auto& f : all) {
                    const auto form = normal_form(f);
                    detail::check_equal(nf, recompose(form, m), f, "recompose");
                    if (!seen.insert({form.cofaces, form.codegeneracies}).second && nf.passed) {
                        nf.passed = false;
                        nf.detail = "two arrows share a normal form, one is " + f.to_string();
                    }
                }
            }
        report.entries.push_back(std::move(counts));
        report.entries.push_back(std::move(nf));
    }

    {
        SuiteEntry e{"contravariance"};
        const std::size_t r = opt.contravariance_rank;
        for (std::size_t a = 0; a <= r; ++a)
            for (std::size_t b = 0; b <= r; ++b)
                for (std::size_t c = 0; c <= r; ++c)
                    for (const auto& f : enumerate_arrows(a, b))
                        for (const auto& g : enumerate_arrows(b, c)) {
                            ++e.instances;
                            if (compose_op(op(f), op(g)) != op(compose(g, f)) && e.passed) {
                                e.passed = false;
                                e.detail = "f=" + f.to_string() + " g=" + g.to_string();
                            }
                        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

}  // namespace segal
