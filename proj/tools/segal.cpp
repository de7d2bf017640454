// segal: batch driver for the segal library.
//
// Exit codes: 0 every verdict holds, 1 a verdict fails, 2 input or validation error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "segal/delta_suite.hpp"
#include "segal/io.hpp"
#include "segal/segal.hpp"

using namespace segal;

namespace {

enum Exit { pass = 0, verdict_failure = 1, input_error = 2 };

struct RunConfig {
    std::string monoid;
    std::string category;
    std::string target;
    std::string sset;
    std::string spec;
    std::size_t fold = 1;
    std::optional<std::size_t> trunc;
    std::optional<std::size_t> max_m;
    std::size_t max_k = 3;
    std::optional<std::size_t> max_degree;
    std::string format = "human";
    SimplexId size_limit = SimplexId{1} << 22;
    bool inject_fault = false;
};

/// Raised when a configuration would build a level above --size-limit.
class TooLarge : public Error {
public:
    using Error::Error;
};

struct Input {
    std::string label;
    std::optional<FiniteMonoid> monoid;  // set for --monoid
    MultiPtr multi;                      // bar(M, n), or the arity-one view of a simplicial set
    SSetPtr simplicial;                  // the diagonal
};

std::size_t count_sources(const RunConfig& cfg)
{
    return !cfg.monoid.empty() + !cfg.category.empty() + !cfg.sset.empty();
}

/// Resolves --monoid, --category or --sset into a construction truncated at `trunc`.
Input resolve_input(const RunConfig& cfg, std::size_t trunc)
{
    if (count_sources(cfg) != 1)
        throw ValidationError("exactly one of --monoid, --category, --sset is required");
    Input in;
    if (!cfg.monoid.empty()) {
        in.monoid = resolve_monoid(cfg.monoid);
        in.label = "bar(" + cfg.monoid + ", " + std::to_string(cfg.fold) + ")";
        in.multi = bar(*in.monoid, cfg.fold, trunc);
        in.simplicial = diag(in.multi);
        return in;
    }
    if (cfg.fold != 1)
        throw ValidationError("--fold applies to --monoid only");
    if (!cfg.category.empty()) {
        in.label = "nerve(" + cfg.category + ")";
        in.simplicial = nerve(resolve_category(cfg.category), trunc);
    } else {
        in.label = cfg.sset;
        auto x = load_simplicial_set(read_file(cfg.sset));
        if (x->truncation() < trunc)
            throw TruncationExceeded(cfg.sset + ": truncation " + std::to_string(x->truncation()) +
                                     " is below the required " + std::to_string(trunc));
        in.simplicial = x;
    }
    in.multi = as_multi(in.simplicial);
    return in;
}

std::string size_text(std::optional<SimplexId> n) { return n ? std::to_string(*n) : std::string("more than 2^64"); }

void require_within_limit(const RunConfig& cfg, const std::string& what, std::optional<SimplexId> size)
{
    if (!size || *size > cfg.size_limit)
        throw TooLarge("size limit: " + what + " has " + size_text(size) + " simplices, above --size-limit " +
                       std::to_string(cfg.size_limit));
}

template <class F>
std::optional<SimplexId> guarded_size(F&& f)
{
    try {
        return f();
    } catch (const Overflow&) {
        return std::nullopt;
    }
}

void emit(const RunConfig& cfg, const ordered_json& j, const std::string& human)
{
    if (cfg.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human;
}

// ---------------------------------------------------------------------------
// delta-suite

int cmd_delta_suite(const RunConfig& cfg)
{
    DeltaSuiteOptions opt;
    opt.inject_fault = cfg.inject_fault;
    const auto report = run_delta_suite(opt);
    ordered_json entries = ordered_json::array();
    std::string human;
    for (const auto& e : report.entries) {
        entries.push_back({{"name", e.name}, {"passed", e.passed}, {"instances", e.instances}, {"detail", e.detail}});
        human += std::string(e.passed ? "pass " : "FAIL ") + e.name + " (" + std::to_string(e.instances) + ")\n";
        if (!e.passed)
            human += "  " + e.detail + "\n";
    }
    human += report.passed() ? "all identities hold\n" : "identity suite FAILED\n";
    ordered_json j;
    j["format"] = "segal-delta-suite";
    j["passed"] = report.passed();
    j["entries"] = entries;
    emit(cfg, j, human);
    return report.passed() ? pass : verdict_failure;
}

// ---------------------------------------------------------------------------
// segal

std::string witness_text(const std::vector<SimplexId>& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? "," : "") + std::to_string(w[i]);
    return "{" + s + "}";
}

int cmd_segal(const RunConfig& cfg)
{
    const std::size_t max_m = cfg.max_m.value_or(3);
    const std::size_t trunc = cfg.trunc.value_or(std::max(max_m, cfg.max_k));
    if (!cfg.sset.empty() && cfg.trunc)
        throw ValidationError("--trunc does not apply to --sset");
    const Input in = resolve_input(cfg, cfg.sset.empty() ? trunc : max_m);

    std::vector<std::size_t> widest(in.multi->arity(), in.multi->arity() > 1 ? cfg.max_k : 1);
    widest[0] = max_m;
    require_within_limit(cfg, in.label + " at multilevel (" + [&] {
        std::string s;
        for (std::size_t t = 0; t < widest.size(); ++t)
            s += (t ? "," : "") + std::to_string(widest[t]);
        return s;
    }() + ")", guarded_size([&] { return in.multi->level_size(widest); }));

    const auto report = check_segal_multi(in.multi, max_m, cfg.max_k);
    ordered_json j = to_json(report);
    j["source"] = in.label;

    std::string human = in.label + "\n";
    for (const auto& s : report.slices) {
        human += "  slice l=" + std::to_string(s.l) + " k=" + (s.k ? std::to_string(*s.k) : std::string("-")) + ":";
        for (const auto& l : s.report.levels) {
            human += " m=" + std::to_string(l.m) + " " + to_string(l.verdict);
            if (l.verdict != SegalVerdict::bijective)
                human += " witness " + witness_text(l.witness);
        }
        human += "\n";
    }
    human += report.all_bijective() ? "all Segal maps bijective\n" : "Segal condition FAILED\n";
    emit(cfg, j, human);
    return report.all_bijective() ? pass : verdict_failure;
}

// ---------------------------------------------------------------------------
// homology

HomologyGroups guarded_homology(const RunConfig& cfg, const Input& in, std::size_t max_degree)
{
    require_within_limit(cfg, "level " + std::to_string(max_degree + 1) + " of diag " + in.label,
                         guarded_size([&] { return in.simplicial->level_size(max_degree + 1); }));
    return homology_through(*in.simplicial, max_degree);
}

std::string homology_lines(const HomologyGroups& h)
{
    std::string s;
    for (const auto& d : h.degrees)
        s += "  H_" + std::to_string(d.degree) + " = " + d.to_string() + "\n";
    return s;
}

int cmd_homology(const RunConfig& cfg)
{
    const std::size_t max_degree = cfg.max_degree.value_or(3);
    if (!cfg.sset.empty() && cfg.trunc)
        throw ValidationError("--trunc does not apply to --sset");
    const Input in = resolve_input(cfg, cfg.trunc.value_or(max_degree + 1));
    const auto h = guarded_homology(cfg, in, max_degree);
    ordered_json j = to_json(h);
    j["source"] = "diag " + in.label;
    emit(cfg, j, "diag " + in.label + "\n" + homology_lines(h) + "  " + h.to_string() + "\n");
    return pass;
}

// ---------------------------------------------------------------------------
// deloop

int cmd_deloop(const RunConfig& cfg)
{
    if (cfg.monoid.empty() || count_sources(cfg) != 1)
        throw ValidationError("deloop needs --monoid and no other input");
    const std::size_t n = cfg.fold;
    const std::size_t max_degree = cfg.max_degree.value_or(n + 1);
    if (max_degree < n)
        throw ValidationError("--max-degree must be at least --fold");
    const Input in = resolve_input(cfg, cfg.trunc.value_or(max_degree + 1));
    const FiniteMonoid& m = *in.monoid;

    ordered_json j;
    j["format"] = "segal-deloop-report";
    j["source"] = in.label;
    const auto hs = hspace_structure(*slice_ones(in.multi, n - 1, 1));
    std::optional<std::size_t> no_inverse;
    for (std::size_t a = 0; a < hs.carrier && !no_inverse; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < hs.carrier && !found; ++b)
            found = hs.mul(a, b) == hs.unit && hs.mul(b, a) == hs.unit;
        if (!found)
            no_inverse = a;
    }
    j["grouplike"] = !no_inverse.has_value();
    if (no_inverse) {
        const std::string msg = "hypothesis violation: " + cfg.monoid + " is not grouplike; element " +
                                m.name(*no_inverse) + " has no inverse";
        j["hypothesis_violation"] = msg;
        j["passed"] = false;
        emit(cfg, j, in.label + "\n" + msg + "\n");
        return verdict_failure;
    }

    const auto h = guarded_homology(cfg, in, max_degree);
    ordered_json verdicts = ordered_json::array();
    bool ok = true;
    std::string human = "diag " + in.label + "\n" + homology_lines(h);
    for (std::size_t k = 0; k <= n; ++k) {
        const DegreeHomology expected = k == 0 ? group(0, 1) : k < n ? group(k, 0) : abelianization(m, n);
        const bool holds = h[k] == expected;
        ok = ok && holds;
        verdicts.push_back({{"degree", k}, {"expected", expected.to_string()}, {"actual", h[k].to_string()},
                            {"holds", holds}});
        human += std::string(holds ? "  pass" : "  FAIL") + " H_" + std::to_string(k) + " expected " +
                 expected.to_string() + "\n";
    }
    j["homology"] = to_json(h);
    j["verdicts"] = verdicts;
    j["passed"] = ok;
    human += ok ? "delooping verdicts hold\n" : "delooping verdicts FAILED\n";
    emit(cfg, j, human);
    return ok ? pass : verdict_failure;
}

// ---------------------------------------------------------------------------
// nat-check

struct NatOutcome {
    std::size_t checked = 0;
    std::optional<std::string> failure;
};

void check_round_trip(const NaturalTransformation& alpha, std::size_t trunc, NatOutcome& out)
{
    ++out.checked;
    const auto c = alpha.from().source();
    const Functor a = nat_to_functor(alpha);
    if (!(functor_to_nat(c, a) == alpha)) {
        out.failure = "functor_to_nat(nat_to_functor(alpha)) differs from alpha";
        return;
    }
    if (!(nat_to_functor(functor_to_nat(c, a)) == a)) {
        out.failure = "nat_to_functor(functor_to_nat(A)) differs from A";
        return;
    }
    const auto nc = nerve(c, trunc), nd = nerve(alpha.from().target(), trunc), ncx2 = nerve(a.source(), trunc);
    const LevelMap na = nerve_map(a, ncx2, nd);
    for (std::size_t e = 0; e < 2; ++e) {
        const LevelMap ni = nerve_map(endpoint_inclusion(c, a.source(), e), nc, ncx2);
        const LevelMap nf = nerve_map(e == 0 ? alpha.from() : alpha.to(), nc, nd);
        for (std::size_t k = 0; k <= trunc; ++k)
            for (SimplexId x = 0; x < nc->level_size(k); ++x)
                if (na(k, ni(k, x)) != nf(k, x)) {
                    out.failure = "nerve(A) restricted along endpoint " + std::to_string(e) + " differs from nerve(" +
                                  (e == 0 ? "F" : "G") + ") at simplex " + std::to_string(x) + " of level " +
                                  std::to_string(k);
                    return;
                }
    }
}

int cmd_nat_check(const RunConfig& cfg)
{
    const std::size_t trunc = cfg.trunc.value_or(3);
    NatOutcome out;
    std::string label;
    if (!cfg.spec.empty()) {
        if (!cfg.category.empty() || !cfg.target.empty())
            throw ValidationError("--spec excludes --category and --target");
        label = cfg.spec;
        check_round_trip(transformation_from_json(parse_json(read_file(cfg.spec), cfg.spec)), trunc, out);
    } else {
        if (cfg.category.empty())
            throw ValidationError("nat-check needs --spec or --category");
        const auto c = std::make_shared<const FiniteCategory>(resolve_category(cfg.category));
        const auto d = cfg.target.empty() ? c : std::make_shared<const FiniteCategory>(resolve_category(cfg.target));
        label = cfg.category + " -> " + (cfg.target.empty() ? cfg.category : cfg.target);
        const auto functors = enumerate_functors(c, d);
        for (const auto& f : functors)
            for (const auto& g : functors)
                for (const auto& alpha : enumerate_transformations(f, g)) {
                    check_round_trip(alpha, trunc, out);
                    if (out.failure)
                        goto done;
                }
    }
done:
    ordered_json j;
    j["format"] = "segal-nat-check";
    j["source"] = label;
    j["transformations"] = out.checked;
    j["passed"] = !out.failure;
    j["failure"] = out.failure ? ordered_json(*out.failure) : ordered_json(nullptr);
    emit(cfg, j,
         label + "\n  transformations checked: " + std::to_string(out.checked) + "\n" +
             (out.failure ? "  FAIL " + *out.failure + "\n" : std::string("  round trip holds\n")));
    return out.failure ? verdict_failure : pass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Segal spaces: simplicial identities, Segal conditions, bar constructions and homology"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"human", "json"}));
    };
    auto inputs = [&](CLI::App* sub) {
        sub->add_option("--monoid", cfg.monoid, "Monoid: built-in name or JSON path");
        sub->add_option("--category", cfg.category, "Category: built-in name or JSON path");
        sub->add_option("--sset", cfg.sset, "Simplicial set JSON path");
        sub->add_option("--fold", cfg.fold, "Fold n of the bar construction")->check(CLI::Range(1, 8));
        sub->add_option("--trunc", cfg.trunc, "Truncation ceiling")->check(CLI::PositiveNumber);
        sub->add_option("--size-limit", cfg.size_limit, "Largest admissible level cardinality")
            ->check(CLI::PositiveNumber);
    };

    auto* suite = app.add_subcommand("delta-suite", "Cosimplicial identities, low-rank composite equations, normal forms");
    suite->add_flag("--inject-fault", cfg.inject_fault, "Test mode: corrupt one low-rank composite equation");
    common(suite);

    auto* segal_cmd = app.add_subcommand("segal", "Segal maps of a nerve, table or bar construction");
    inputs(segal_cmd);
    segal_cmd->add_option("--max-m", cfg.max_m, "Largest Segal level m");
    segal_cmd->add_option("--max-k", cfg.max_k, "Largest pinned level k in the multisimplicial slices");
    common(segal_cmd);

    auto* hom = app.add_subcommand("homology", "Integer homology of the diagonal");
    inputs(hom);
    hom->add_option("--max-degree", cfg.max_degree, "Largest homology degree");
    common(hom);

    auto* deloop = app.add_subcommand("deloop", "Homology of diag bar(A, n) against the expected shift");
    inputs(deloop);
    deloop->add_option("--max-degree", cfg.max_degree, "Largest homology degree");
    common(deloop);

    auto* nat = app.add_subcommand("nat-check", "Natural transformations against functors out of C x 2");
    nat->add_option("--spec", cfg.spec, "segal-transformation JSON path");
    nat->add_option("--category", cfg.category, "Source category for the exhaustive check");
    nat->add_option("--target", cfg.target, "Target category for the exhaustive check (default: the source)");
    nat->add_option("--trunc", cfg.trunc, "Nerve truncation for the endpoint check");
    common(nat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? pass : input_error;
    }

    try {
        if (suite->parsed())
            return cmd_delta_suite(cfg);
        if (segal_cmd->parsed())
            return cmd_segal(cfg);
        if (hom->parsed())
            return cmd_homology(cfg);
        if (deloop->parsed())
            return cmd_deloop(cfg);
        return cmd_nat_check(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    }
}
