// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace segal;
using namespace testing_support;

namespace {

/// Thrown by `require` with a description of the first failed check.
struct Failed {
    std::string why;
};

void require(bool ok, const std::string& why)
{
    if (!ok)
        throw Failed{why};
}

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<std::string()> body;  // returns a short summary
};

// ---------------------------------------------------------------------------
// Oracles

/// Pascal's triangle.
std::uint64_t binomial(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::uint64_t>> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        t[i].assign(i + 1, 1);
        for (std::size_t j = 1; j < i; ++j)
            t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return k > n ? 0 : t[n][k];
}

/// Every monotone map [m] -> [n], by filtering all functions.
std::vector<std::vector<std::size_t>> brute_force_monotone(std::size_t m, std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> v(m + 1, 0);
    while (true) {
        if (std::is_sorted(v.begin(), v.end()))
            out.push_back(v);
        std::size_t i = 0;
        while (i <= m && ++v[i] > n)
            v[i++] = 0;
        if (i > m)
            break;
    }
    return out;
}

std::vector<std::size_t> product_table(const FiniteMonoid& m)
{
    std::vector<std::size_t> t;
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b)
            t.push_back(m.mul(a, b));
    return t;
}

std::string run_cli(const std::string& args, int& code)
{
    const std::string cmd = std::string(SEGAL_CLI) + " " + args + " 2>&1";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw Failed{"cannot start " + cmd};
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, n);
    const int status = pclose(pipe);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

// ---------------------------------------------------------------------------
// Criteria

std::string identity_suite()
{
    DeltaSuiteOptions opt;
    opt.identity_rank = 10;
    opt.normal_form_rank = 0;
    opt.contravariance_rank = 0;
    const auto report = run_delta_suite(opt);
    std::size_t composites = 0, instances = 0;
    for (const auto& e : report.entries) {
        require(e.passed, e.name + ": " + e.detail);
        instances += e.instances;
        composites += e.name.find(" o ") != std::string::npos;
    }
    require(composites >= 9, "only " + std::to_string(composites) + " composite equations in the suite");
    return std::to_string(report.entries.size()) + " identities, " + std::to_string(composites) +
           " composite equations, " + std::to_string(instances) + " instances";
}

std::string normal_forms()
{
    std::size_t maps = 0;
    for (std::size_t m = 0; m <= 6; ++m)
        for (std::size_t n = 0; n <= 6; ++n) {
            const auto oracle = brute_force_monotone(m, n);
            const auto all = enumerate_arrows(m, n);
            require(oracle.size() == binomial(n + m + 1, m + 1), "brute force count disagrees with binomial");
            require(all.size() == oracle.size(), "enumerate_arrows count differs at m=" + std::to_string(m) +
                                                     " n=" + std::to_string(n));
            std::set<std::vector<std::size_t>> expected(oracle.begin(), oracle.end()), listed;
            for (const auto& f : all)
                listed.insert(f.values());
            require(listed == expected, "enumerate_arrows differs from the oracle at m=" + std::to_string(m) +
                                            " n=" + std::to_string(n));
            std::set<std::pair<std::vector<Generator>, std::vector<Generator>>> seen;
            for (std::size_t i = 0; i < all.size(); ++i) {
                const auto nf = normal_form(all[i]);
                require(recompose(nf, m) == all[i], "recompose fails for " + all[i].to_string());
                for (std::size_t a = 0; a < nf.cofaces.size(); ++a) {
                    require(nf.cofaces[a].rank == n - a, "coface ranks not n, n-1, ...");
                    if (a > 0)
                        require(nf.cofaces[a].index < nf.cofaces[a - 1].index, "coface indices not decreasing");
                }
                for (std::size_t a = 0; a < nf.codegeneracies.size(); ++a) {
                    require(nf.codegeneracies[a].rank == m - nf.codegeneracies.size() + a + 1,
                            "codegeneracy ranks do not end at m");
                    if (a > 0)
                        require(nf.codegeneracies[a].index > nf.codegeneracies[a - 1].index,
                                "codegeneracy indices not increasing");
                }
                require(seen.insert({nf.cofaces, nf.codegeneracies}).second, "two maps share a normal form");
                ++maps;
            }
        }
    return std::to_string(maps) + " maps factored, recomposed and distinct";
}

std::string nerve_products()
{
    const std::vector<CategoryPtr> pool = {share(two_category()), share(monoid_as_category(cyclic_group(2))),
                                           share(monoid_as_category(cyclic_group(3))), share(chain_poset(3))};
    std::size_t pairs = 0;
    for (const auto& c : pool)
        for (const auto& d : pool) {
            const auto nc = nerve(c, 4), nd = nerve(d, 4);
            const auto ncd = nerve(product_category(*c, *d), 4);
            const auto prod = std::make_shared<ProductSimplicialSet>(nc, nd);
            const auto err = check_isomorphism(*ncd, *prod, nerve_product_comparison(ncd, nc, nd, prod), 4);
            require(!err, *err);
            ++pairs;
        }
    return std::to_string(pairs) + " pairs isomorphic through level 4";
}

std::string segal_conditions()
{
    std::size_t slices = 0;
    for (const auto& name : {"Z/2", "Z/3", "Z/4", "Z/2xZ/2"})
        for (std::size_t n = 1; n <= 2; ++n) {
            const auto r = check_segal_multi(bar(builtin_monoid(name), n, 4), 4, 3);
            for (const auto& s : r.slices)
                if (const auto* bad = s.report.first_failure())
                    throw Failed{std::string(name) + " n=" + std::to_string(n) + " l=" + std::to_string(s.l) +
                                 " m=" + std::to_string(bad->m) + " " + to_string(bad->verdict)};
            slices += r.slices.size();
        }
    return std::to_string(slices) + " slices bijective for m <= 4";
}

std::string hspace_extraction()
{
    std::size_t checked = 0;
    for (const auto& name : builtin_commutative_monoid_names()) {
        const auto m = builtin_monoid(name);
        const auto expected = product_table(m);
        const auto h1 = hspace_structure(*diag(bar(m, 1, 2)));
        require(h1.table == expected && h1.unit == m.unit(), name + ": bar(M,1) table differs");
        const auto b2 = bar(m, 2, 2);
        for (std::size_t l = 0; l < 2; ++l) {
            const auto h = hspace_structure(*slice_ones(b2, l, 1));
            require(h.table == expected && h.unit == m.unit(), name + ": slice l=" + std::to_string(l) + " differs");
            ++checked;
        }
        ++checked;
    }
    return std::to_string(checked) + " tables recovered";
}

std::string transformation_round_trip()
{
    const auto pool = small_categories();
    std::size_t transformations = 0, functors = 0;
    for (const auto& c : pool) {
        require(c->object_count() <= 3 && c->arrow_count() <= 6, "pool category too large");
        const auto cx2 = share(product_category(*c, two_category()));
        const auto nc = nerve(c, 3), ncx2 = nerve(cx2, 3);
        const LevelMap i0 = nerve_map(endpoint_inclusion(c, cx2, 0), nc, ncx2);
        const LevelMap i1 = nerve_map(endpoint_inclusion(c, cx2, 1), nc, ncx2);
        for (const auto& d : pool) {
            const auto nd = nerve(d, 3);
            const auto fs = enumerate_functors(c, d);
            std::size_t nat_total = 0;
            for (const auto& f : fs)
                for (const auto& g : fs)
                    for (const auto& alpha : enumerate_transformations(f, g)) {
                        ++nat_total;
                        const Functor a = nat_to_functor(alpha);
                        require(functor_to_nat(c, a) == alpha, "functor_to_nat o nat_to_functor is not the identity");
                        const LevelMap na = nerve_map(a, ncx2, nd);
                        const LevelMap nf = nerve_map(f, nc, nd), ng = nerve_map(g, nc, nd);
                        for (std::size_t k = 0; k <= 3; ++k)
                            for (SimplexId x = 0; x < nc->level_size(k); ++x)
                                require(na(k, i0(k, x)) == nf(k, x) && na(k, i1(k, x)) == ng(k, x),
                                        "nerve endpoint restriction differs");
                    }
            const auto as = enumerate_functors(cx2, d);
            require(as.size() == nat_total, "functors out of C x 2 do not match transformations in number");
            for (const auto& a : as)
                require(nat_to_functor(functor_to_nat(c, a)) == a, "nat_to_functor o functor_to_nat is not the identity");
            transformations += nat_total;
            functors += as.size();
        }
    }
    return std::to_string(transformations) + " transformations and " + std::to_string(functors) +
           " functors out of C x 2 round-tripped";
}

std::string one_fold_homology()
{
    const auto h2 = homology_through(*nerve(cyclic_group(2), 6), 5);
    require(h2 == periodic_resolution_fixture(2, 5), "N(Z/2) gave " + h2.to_string());
    const auto h3 = homology_through(*nerve(cyclic_group(3), 4), 3);
    require(h3 == periodic_resolution_fixture(3, 3), "N(Z/3) gave " + h3.to_string());
    return "N(Z/2) " + h2.to_string() + ", N(Z/3) " + h3.to_string();
}

std::string two_fold_homology()
{
    const auto h = homology_through(*diag(bar(cyclic_group(2), 2, 4)), 3);
    require(h == two_fold_z2_fixture(), "diag bar(Z/2,2) gave " + h.to_string());
    return "diag bar(Z/2,2) " + h.to_string();
}

std::string kunneth()
{
    const SSetPtr a = nerve(cyclic_group(2), 4), b = nerve(cyclic_group(3), 4);
    const auto lhs = homology_through(*diag(external_product(a, b)), 3);
    const auto rhs = homology_through(*nerve(cyclic_group(6), 4), 3);
    require(lhs == rhs, "diag product " + lhs.to_string() + " but N(Z/6) " + rhs.to_string());
    require(rhs == periodic_resolution_fixture(6, 3), "N(Z/6) gave " + rhs.to_string());
    return lhs.to_string();
}

std::string negative_tests()
{
    const auto m = leftzero3();
    try {
        bar(m, 2, 2);
        throw Failed{"bar(leftzero3, 2) was accepted"};
    } catch (const NonCommutative& e) {
        require(m.mul(e.left(), e.right()) != m.mul(e.right(), e.left()), "witness pair commutes");
    }
    BarOptions unsafe;
    unsafe.enforce_commutativity = false;
    const auto audit = audit_bar(*bar(m, 2, 2, unsafe));
    require(!audit.passed(), "audit passed with the gate bypassed");
    require(audit.violations.front().find("interchange") != std::string::npos,
            "first violation is not an interchange: " + audit.violations.front());
    require(!is_grouplike(hspace_structure(*nerve(idempotent2(), 2))), "idempotent2 reported grouplike");
    int code = 0;
    const std::string out = run_cli("deloop --monoid idempotent2", code);
    require(code == 1, "deloop exit code " + std::to_string(code));
    require(out.find("hypothesis violation") != std::string::npos, "deloop output: " + out);
    return "witness, interchange violation, hypothesis violation";
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "delta identity suite", 1, identity_suite},
        {2, "normal-form soundness", 5, normal_forms},
        {3, "nerve preserves products", 0, nerve_products},
        {4, "Segal conditions of bar(M, n)", 0, segal_conditions},
        {5, "H-space extraction", 0, hspace_extraction},
        {6, "natural transformations as functors out of C x 2", 0, transformation_round_trip},
        {7, "homology of nerve(Z/2) and nerve(Z/3)", 30, one_fold_homology},
        {8, "homology of diag bar(Z/2, 2)", 600, two_fold_homology},
        {9, "Kunneth through the diagonal", 0, kunneth},
        {10, "negative tests", 0, negative_tests},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string summary;
        bool ok = true;
        try {
            summary = c.body();
        } catch (const Failed& f) {
            ok = false;
            summary = f.why;
        } catch (const std::exception& e) {
            ok = false;
            summary = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && c.budget_seconds > 0 && secs > c.budget_seconds) {
            ok = false;
            summary += " (over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget)";
        }
        all = all && ok;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " [" << secs << " s] " << c.title << ": "
             << summary;
        std::cout << line.str() << std::endl;
    }
    return all ? 0 : 1;
}
