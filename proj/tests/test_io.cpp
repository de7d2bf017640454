#include <gtest/gtest.h>

#include "segal/io.hpp"
#include "support.hpp"

using namespace segal;

namespace {

std::string error_of(auto&& f)
{
    try {
        f();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

bool same_monoid(const FiniteMonoid& a, const FiniteMonoid& b)
{
    if (a.elements() != b.elements() || a.unit() != b.unit())
        return false;
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < a.size(); ++y)
            if (a.mul(x, y) != b.mul(x, y))
                return false;
    return true;
}

bool same_category(const FiniteCategory& a, const FiniteCategory& b)
{
    if (a.objects() != b.objects() || a.arrow_count() != b.arrow_count())
        return false;
    for (std::size_t f = 0; f < a.arrow_count(); ++f) {
        if (a.arrow_name(f) != b.arrow_name(f) || a.source(f) != b.source(f) || a.target(f) != b.target(f))
            return false;
        for (std::size_t g = 0; g < a.arrow_count(); ++g)
            if (a.composable(g, f) && a.compose(g, f) != b.compose(g, f))
                return false;
    }
    return true;
}

}  // namespace

TEST(SimplicialSetFormat, RoundTripIsByteStable)
{
    const std::vector<std::shared_ptr<const SimplicialSet>> sources = {
        testing_support::standard_simplex(2, 3), nerve(cyclic_group(3), 3), diag(bar(cyclic_group(2), 2, 2)),
        std::make_shared<ConstantSimplicialSet>(2, 2)};
    for (const auto& x : sources) {
        const std::string first = save_simplicial_set(*x);
        const auto loaded = load_simplicial_set(first);
        EXPECT_EQ(save_simplicial_set(*loaded), first);
        EXPECT_EQ(check_isomorphism(*loaded, *x, [](std::size_t, SimplexId s) { return s; }, x->truncation()),
                  std::nullopt);
    }
}

TEST(SimplicialSetFormat, KeyOrderDoesNotMatter)
{
    const std::string canonical = save_simplicial_set(*nerve(cyclic_group(2), 2));
    json j = json::parse(canonical);
    ordered_json shuffled;
    for (const char* key : {"degeneracies", "faces", "level_sizes", "truncation", "version", "format"})
        shuffled[key] = j[key];
    EXPECT_EQ(save_simplicial_set(*load_simplicial_set(shuffled.dump(2))), canonical);
}

TEST(SimplicialSetFormat, RejectsBrokenInput)
{
    const std::string good = save_simplicial_set(*testing_support::standard_simplex(1, 2));
    EXPECT_NE(error_of([&] { load_simplicial_set(std::string("{")); }), "");
    EXPECT_NE(error_of([&] { load_simplicial_set(std::string(R"({"format": "segal-monoid"})")); }).find("format"), std::string::npos);

    json j = json::parse(good);
    j["level_sizes"] = {2, 3};
    EXPECT_NE(error_of([&] { load_simplicial_set(j.dump()); }), "");

    j = json::parse(good);
    j["faces"][0]["table"][0] = 7;
    EXPECT_NE(error_of([&] { load_simplicial_set(j.dump()); }), "");

    // Swapping d_0 and d_1 on level 1 breaks the simplicial identities.
    j = json::parse(good);
    std::swap(j["faces"][0]["table"], j["faces"][1]["table"]);
    EXPECT_NE(error_of([&] { load_simplicial_set(j.dump()); }), "");
}

TEST(MonoidFormat, RoundTrip)
{
    for (const auto& m : {cyclic_group(4), builtin_monoid("Z/2xZ/2"), idempotent2(), leftzero3()})
        EXPECT_TRUE(same_monoid(monoid_from_json(monoid_to_json(m)), m));
}

TEST(MonoidFormat, ErrorsNameTheLawAndWitness)
{
    const json bad_assoc = {{"format", "segal-monoid"},
                            {"elements", {"1", "a", "b"}},
                            {"unit", "1"},
                            {"table", {{"1", "a", "b"}, {"a", "b", "1"}, {"b", "b", "a"}}}};
    const std::string msg = error_of([&] { monoid_from_json(bad_assoc); });
    EXPECT_NE(msg.find("associativity"), std::string::npos) << msg;
    EXPECT_NE(msg.find("("), std::string::npos) << msg;

    const json bad_unit = {{"format", "segal-monoid"},
                           {"elements", {"1", "a"}},
                           {"unit", "1"},
                           {"table", json::array({json::array({"1", "1"}), json::array({"a", "a"})})}};
    EXPECT_NE(error_of([&] { monoid_from_json(bad_unit); }).find("unit law"), std::string::npos);

    const json unknown = {{"format", "segal-monoid"}, {"elements", {"1"}}, {"unit", "e"}, {"table", {{"1"}}}};
    EXPECT_NE(error_of([&] { monoid_from_json(unknown); }).find("unknown element 'e'"), std::string::npos);

    const json ragged = {{"format", "segal-monoid"}, {"elements", {"1", "a"}}, {"unit", "1"}, {"table", json::array({json::array({"1", "a"})})}};
    EXPECT_NE(error_of([&] { monoid_from_json(ragged); }), "");
}

TEST(MonoidFormat, BuiltinNames)
{
    EXPECT_EQ(resolve_monoid("Z/5").size(), 5u);
    EXPECT_EQ(resolve_monoid("Z/2xZ/2").size(), 4u);
    EXPECT_EQ(resolve_monoid("idempotent2").size(), 2u);
    EXPECT_NE(error_of([] { resolve_monoid("Z/0"); }), "");
    EXPECT_NE(error_of([] { resolve_monoid("nonsense"); }), "");
}

TEST(CategoryFormat, RoundTrip)
{
    for (const auto& name : {"2", "terminal", "poset3", "Z/3"}) {
        const auto c = builtin_category(name);
        EXPECT_TRUE(same_category(category_from_json(category_to_json(c)), c)) << name;
    }
}

TEST(CategoryFormat, ImplicitIdentities)
{
    const json j = {{"format", "segal-category"},
                    {"objects", {"x", "y"}},
                    {"arrows", {{{"name", "f"}, {"source", "x"}, {"target", "y"}}}}};
    const auto c = category_from_json(j);
    EXPECT_EQ(c.arrow_count(), 3u);
    EXPECT_EQ(c.arrow_name(c.identity(0)), "id_x");
}

TEST(CategoryFormat, Errors)
{
    json missing = {{"format", "segal-category"},
                    {"objects", {"x"}},
                    {"arrows", {{{"name", "e"}, {"source", "x"}, {"target", "x"}}}}};
    EXPECT_NE(error_of([&] { category_from_json(missing); }).find("missing composite e o e"), std::string::npos);

    json bad_endpoint = {{"format", "segal-category"},
                         {"objects", {"x"}},
                         {"arrows", {{{"name", "f"}, {"source", "x"}, {"target", "z"}}}}};
    EXPECT_NE(error_of([&] { category_from_json(bad_endpoint); }).find("unknown object 'z'"), std::string::npos);

    // a o (b o a) = b but (a o b) o a = a.
    json assoc = {{"format", "segal-category"},
                  {"objects", {"x"}},
                  {"arrows",
                   {{{"name", "a"}, {"source", "x"}, {"target", "x"}},
                    {{"name", "b"}, {"source", "x"}, {"target", "x"}}}},
                  {"composition",
                   {{{"first", "a"}, {"then", "a"}, {"result", "b"}},
                    {{"first", "a"}, {"then", "b"}, {"result", "a"}},
                    {{"first", "b"}, {"then", "a"}, {"result", "b"}},
                    {{"first", "b"}, {"then", "b"}, {"result", "b"}}}}};
    EXPECT_NE(error_of([&] { category_from_json(assoc); }).find("associativity"), std::string::npos);
}

TEST(TransformationFormat, IdentityRoundTrip)
{
    const json j = {{"format", "segal-transformation"},
                    {"source", "2"},
                    {"target", "poset3"},
                    {"from", {{"objects", {{"0", "0"}, {"1", "2"}}}, {"arrows", {{"h", "0<2"}}}}},
                    {"to", {{"objects", {{"0", "0"}, {"1", "2"}}}, {"arrows", {{"h", "0<2"}}}}},
                    {"components", {{"0", "id_0"}, {"1", "id_2"}}}};
    const auto alpha = transformation_from_json(j);
    EXPECT_EQ(functor_to_nat(alpha.from().source(), nat_to_functor(alpha)), alpha);
}

TEST(HomologyFormat, SchemaAndRoundTrip)
{
    const auto h = homology(normalized_chains(*nerve(cyclic_group(2), 3), 3));
    const auto j = to_json(h);
    EXPECT_EQ(j["format"], "segal-homology");
    ASSERT_EQ(j["degrees"].size(), 4u);
    EXPECT_EQ(j["degrees"][1]["betti"], 0);
    EXPECT_EQ(j["degrees"][1]["torsion"], ordered_json::array({2}));
    EXPECT_EQ(j["degrees"][3]["status"], "not_computed");
    EXPECT_TRUE(j["degrees"][3]["betti"].is_null());
    EXPECT_EQ(homology_from_json(json::parse(j.dump())), h);
}

TEST(SegalReportFormat, Schema)
{
    const auto r = check_segal_multi(bar(cyclic_group(2), 2, 2), 2, 1);
    const auto j = to_json(r);
    EXPECT_EQ(j["format"], "segal-segal-report");
    EXPECT_TRUE(j["all_bijective"].get<bool>());
    ASSERT_FALSE(j["slices"].empty());
    EXPECT_EQ(j["slices"][0]["levels"][0]["verdict"], "bijective");
    EXPECT_TRUE(j["slices"].back()["k"].is_null());
}
