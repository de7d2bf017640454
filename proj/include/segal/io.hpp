#pragma once

// JSON text formats.
//
//   segal-simplicial-set   explicit face/degeneracy tables
//   segal-monoid           element list, unit, multiplication table
//   segal-category         objects, arrows, composition of non-identity pairs
//   segal-transformation   two functors and a natural transformation between them
//   segal-homology         homology report
//   segal-segal-report     Segal verdicts per slice and level
//
// The schemas are documented in README.md.  Simplicial-set files written by
// save_simplicial_set are canonical: loading and saving them reproduces the
// same bytes.

#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "segal/bar.hpp"
#include "segal/cat.hpp"
#include "segal/homology.hpp"
#include "segal/segal_condition.hpp"
#include "segal/sset.hpp"

namespace segal {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline void require_format(const json& j, const std::string& format)
{
    const auto& f = require(j, "format", format);
    if (!f.is_string() || f.get<std::string>() != format)
        throw ValidationError(format + ": field 'format' must be \"" + format + "\"");
}

template <class T>
T get_as(const json& j, const std::string& where)
{
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

/// One line per element of a top-level array of objects, everything else compact.
inline std::string canonical_dump(const json& j)
{
    std::ostringstream os;
    os << "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        os << "  " << json(it.key()).dump() << ": ";
        const auto& v = it.value();
        if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << "[\n";
            for (std::size_t e = 0; e < v.size(); ++e)
                os << "    " << v[e].dump() << (e + 1 < v.size() ? ",\n" : "\n");
            os << "  ]";
        } else {
            os << v.dump();
        }
        os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << "}\n";
    return os.str();
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p);
    if (!in)
        throw ValidationError("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline json parse_json(const std::string& text, const std::string& where)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Simplicial sets

/// Tabulates levels 0..trunc of any provider.
inline json simplicial_set_to_json(const SimplicialSet& x, std::size_t trunc)
{
    json j;
    j["format"] = "segal-simplicial-set";
    j["version"] = 1;
    j["truncation"] = trunc;
    std::vector<SimplexId> sizes;
    for (std::size_t k = 0; k <= trunc; ++k)
        sizes.push_back(x.level_size(k));
    j["level_sizes"] = sizes;
    json faces = json::array(), degens = json::array();
    for (std::size_t k = 1; k <= trunc; ++k) {
        for (std::size_t i = 0; i <= k; ++i) {
            std::vector<SimplexId> t(sizes[k]);
            for (SimplexId s = 0; s < sizes[k]; ++s)
                t[s] = x.face(k, i, s);
            faces.push_back({{"rank", k}, {"index", i}, {"table", t}});
        }
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<SimplexId> t(sizes[k - 1]);
            for (SimplexId s = 0; s < sizes[k - 1]; ++s)
                t[s] = x.degeneracy(k, i, s);
            degens.push_back({{"rank", k}, {"index", i}, {"table", t}});
        }
    }
    j["faces"] = faces;
    j["degeneracies"] = degens;
    return j;
}

inline std::string save_simplicial_set(const SimplicialSet& x) { return detail::canonical_dump(simplicial_set_to_json(x, x.truncation())); }

/// Parses and validates: table shapes, then the simplicial identities exhaustively.
inline std::shared_ptr<const TableSimplicialSet> load_simplicial_set(const json& j)
{
    const std::string where = "segal-simplicial-set";
    detail::require_format(j, where);
    const auto trunc = detail::get_as<std::size_t>(detail::require(j, "truncation", where), where + ".truncation");
    auto sizes = detail::get_as<std::vector<SimplexId>>(detail::require(j, "level_sizes", where), where + ".level_sizes");
    if (sizes.size() != trunc + 1)
        throw ValidationError(where + ": level_sizes must have truncation+1 entries");
    TableSimplicialSet::Tables faces(trunc + 1), degens(trunc + 1);
    for (std::size_t k = 1; k <= trunc; ++k) {
        faces[k].resize(k + 1);
        degens[k].resize(k);
    }
    auto fill = [&](const char* key, TableSimplicialSet::Tables& dst, bool is_face) {
        std::map<std::pair<std::size_t, std::size_t>, bool> seen;
        for (const auto& g : detail::require(j, key, where)) {
            const auto rank = detail::get_as<std::size_t>(detail::require(g, "rank", where), where + "." + key);
            const auto index = detail::get_as<std::size_t>(detail::require(g, "index", where), where + "." + key);
            const std::string name = std::string(is_face ? "d^" : "s^") + std::to_string(rank) + "_" + std::to_string(index);
            if (rank < 1 || rank > trunc || index > (is_face ? rank : rank - 1))
                throw ValidationError(where + ": generator " + name + " out of range");
            if (seen[{rank, index}])
                throw ValidationError(where + ": generator " + name + " listed twice");
            seen[{rank, index}] = true;
            dst[rank][index] = detail::get_as<std::vector<SimplexId>>(detail::require(g, "table", where), name);
        }
        for (std::size_t k = 1; k <= trunc; ++k)
            for (std::size_t i = 0; i < (is_face ? k + 1 : k); ++i)
                if (!seen[{k, i}])
                    throw ValidationError(where + std::string(": missing generator ") + (is_face ? "d^" : "s^") +
                                          std::to_string(k) + "_" + std::to_string(i));
    };
    fill("faces", faces, true);
    fill("degeneracies", degens, false);
    auto x = std::make_shared<const TableSimplicialSet>(std::move(sizes), std::move(faces), std::move(degens));
    AuditOptions opt;
    opt.exhaustive_limit = std::numeric_limits<SimplexId>::max();
    opt.max_violations = 1;
    const auto audit = audit_functoriality(*x, opt);
    if (!audit.passed())
        throw ValidationError(where + ": simplicial identity violated: " + audit.violations.front());
    return x;
}

inline std::shared_ptr<const TableSimplicialSet> load_simplicial_set(const std::string& text)
{
    return load_simplicial_set(parse_json(text, "segal-simplicial-set"));
}

// ---------------------------------------------------------------------------
// Monoids and categories

inline json monoid_to_json(const FiniteMonoid& m)
{
    json table = json::array();
    for (std::size_t a = 0; a < m.size(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < m.size(); ++b)
            row.push_back(m.name(m.mul(a, b)));
        table.push_back(row);
    }
    return {{"format", "segal-monoid"}, {"elements", m.elements()}, {"unit", m.name(m.unit())}, {"table", table}};
}

inline FiniteMonoid monoid_from_json(const json& j)
{
    const std::string where = "segal-monoid";
    detail::require_format(j, where);
    auto elements = detail::get_as<std::vector<std::string>>(detail::require(j, "elements", where), where + ".elements");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (!index.emplace(elements[i], i).second)
            throw ValidationError(where + ": duplicate element '" + elements[i] + "'");
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end())
            throw ValidationError(where + ": unknown element '" + name + "'");
        return it->second;
    };
    const std::size_t unit = lookup(detail::get_as<std::string>(detail::require(j, "unit", where), where + ".unit"));
    const auto rows =
        detail::get_as<std::vector<std::vector<std::string>>>(detail::require(j, "table", where), where + ".table");
    const std::size_t n = elements.size();
    if (rows.size() != n)
        throw ValidationError(where + ": table needs " + std::to_string(n) + " rows");
    std::vector<std::size_t> table;
    for (std::size_t a = 0; a < n; ++a) {
        if (rows[a].size() != n)
            throw ValidationError(where + ": table row " + elements[a] + " needs " + std::to_string(n) + " entries");
        for (const auto& e : rows[a])
            table.push_back(lookup(e));
    }
    return FiniteMonoid(std::move(elements), unit, std::move(table));
}

inline json category_to_json(const FiniteCategory& c)
{
    json arrows = json::array(), comp = json::array(), ids = json::object();
    for (std::size_t o = 0; o < c.object_count(); ++o)
        ids[c.object_name(o)] = c.arrow_name(c.identity(o));
    for (std::size_t a = 0; a < c.arrow_count(); ++a)
        arrows.push_back({{"name", c.arrow_name(a)},
                          {"source", c.object_name(c.source(a))},
                          {"target", c.object_name(c.target(a))}});
    for (std::size_t f = 0; f < c.arrow_count(); ++f)
        for (std::size_t g = 0; g < c.arrow_count(); ++g)
            if (c.composable(g, f) && !c.is_identity(f) && !c.is_identity(g))
                comp.push_back({{"first", c.arrow_name(f)}, {"then", c.arrow_name(g)}, {"result", c.arrow_name(c.compose(g, f))}});
    return {{"format", "segal-category"}, {"objects", c.objects()}, {"arrows", arrows}, {"identities", ids},
            {"composition", comp}};
}

/// Identities may be listed under "identities" (object -> arrow name); any
/// object without one gets a fresh arrow "id_<object>".  "composition" must
/// give "then o first" for every composable pair of non-identity arrows.
inline FiniteCategory category_from_json(const json& j)
{
    const std::string where = "segal-category";
    detail::require_format(j, where);
    auto objects = detail::get_as<std::vector<std::string>>(detail::require(j, "objects", where), where + ".objects");
    std::map<std::string, std::size_t> obj_index;
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (!obj_index.emplace(objects[i], i).second)
            throw ValidationError(where + ": duplicate object '" + objects[i] + "'");
    auto object = [&](const json& v, const std::string& ctx) {
        const auto name = detail::get_as<std::string>(v, ctx);
        auto it = obj_index.find(name);
        if (it == obj_index.end())
            throw ValidationError(where + ": " + ctx + " names unknown object '" + name + "'");
        return it->second;
    };
    std::vector<ArrowInfo> arrows;
    std::map<std::string, std::size_t> arrow_index;
    for (const auto& a : detail::require(j, "arrows", where)) {
        const auto name = detail::get_as<std::string>(detail::require(a, "name", where), where + ".arrows.name");
        if (!arrow_index.emplace(name, arrows.size()).second)
            throw ValidationError(where + ": duplicate arrow '" + name + "'");
        arrows.push_back({name, object(detail::require(a, "source", where), "arrow " + name + " source"),
                          object(detail::require(a, "target", where), "arrow " + name + " target")});
    }
    auto arrow = [&](const json& v, const std::string& ctx) {
        const auto name = detail::get_as<std::string>(v, ctx);
        auto it = arrow_index.find(name);
        if (it == arrow_index.end())
            throw ValidationError(where + ": " + ctx + " names unknown arrow '" + name + "'");
        return it->second;
    };
    std::vector<std::size_t> ids(objects.size(), npos);
    if (j.contains("identities"))
        for (auto it = j.at("identities").begin(); it != j.at("identities").end(); ++it)
            ids[object(json(it.key()), "identities")] = arrow(it.value(), "identity of " + it.key());
    for (std::size_t o = 0; o < objects.size(); ++o)
        if (ids[o] == npos) {
            const std::string name = "id_" + objects[o];
            if (!arrow_index.emplace(name, arrows.size()).second)
                throw ValidationError(where + ": arrow '" + name + "' clashes with an implicit identity");
            ids[o] = arrows.size();
            arrows.push_back({name, o, o});
        }
    const std::size_t na = arrows.size();
    std::vector<bool> is_id(na, false);
    for (auto i : ids)
        is_id[i] = true;
    std::vector<std::size_t> comp(na * na, npos);
    for (std::size_t f = 0; f < na; ++f)
        for (std::size_t g = 0; g < na; ++g)
            if (arrows[f].target == arrows[g].source) {
                if (is_id[f])
                    comp[g * na + f] = g;
                else if (is_id[g])
                    comp[g * na + f] = f;
            }
    if (j.contains("composition"))
        for (const auto& e : j.at("composition")) {
            const auto f = arrow(detail::require(e, "first", where), "composition.first");
            const auto g = arrow(detail::require(e, "then", where), "composition.then");
            const auto r = arrow(detail::require(e, "result", where), "composition.result");
            if (arrows[f].target != arrows[g].source)
                throw ValidationError(where + ": composite " + arrows[g].name + " o " + arrows[f].name +
                                      " given for a non-composable pair");
            comp[g * na + f] = r;
        }
    for (std::size_t f = 0; f < na; ++f)
        for (std::size_t g = 0; g < na; ++g)
            if (arrows[f].target == arrows[g].source && comp[g * na + f] == npos)
                throw ValidationError(where + ": missing composite " + arrows[g].name + " o " + arrows[f].name);
    return FiniteCategory(std::move(objects), std::move(arrows), std::move(ids), std::move(comp));
}

/// "2", "terminal", "poset<n>", or any built-in monoid name viewed as a one-object category.
inline FiniteCategory builtin_category(const std::string& name)
{
    if (name == "2")
        return two_category();
    if (name == "terminal")
        return terminal_category();
    if (name.rfind("poset", 0) == 0 && name.size() > 5 && name.find_first_not_of("0123456789", 5) == std::string::npos) {
        const std::size_t n = std::stoul(name.substr(5));
        if (n == 0 || n > 16)
            throw ValidationError("built-in category '" + name + "': size must lie in 1..16");
        return chain_poset(n);
    }
    try {
        return monoid_as_category(builtin_monoid(name));
    } catch (const ValidationError&) {
        throw ValidationError("unknown built-in category '" + name + "'");
    }
}

/// A path to an existing file, or else a built-in name.
inline FiniteMonoid resolve_monoid(const std::string& spec)
{
    if (std::filesystem::is_regular_file(spec))
        return monoid_from_json(parse_json(read_file(spec), spec));
    return builtin_monoid(spec);
}

inline FiniteCategory resolve_category(const std::string& spec)
{
    if (std::filesystem::is_regular_file(spec)) {
        const json j = parse_json(read_file(spec), spec);
        if (j.is_object() && j.value("format", "") == "segal-monoid")
            return monoid_as_category(monoid_from_json(j));
        return category_from_json(j);
    }
    return builtin_category(spec);
}

namespace detail {

inline CategoryPtr category_field(const json& j, const char* key, const std::string& where)
{
    const auto& v = require(j, key, where);
    if (v.is_string())
        return std::make_shared<const FiniteCategory>(builtin_category(v.get<std::string>()));
    if (v.is_object() && v.value("format", "") == "segal-monoid")
        return std::make_shared<const FiniteCategory>(monoid_as_category(monoid_from_json(v)));
    return std::make_shared<const FiniteCategory>(category_from_json(v));
}

inline Functor functor_field(const json& j, const char* key, const CategoryPtr& c, const CategoryPtr& d,
                             const std::string& where)
{
    const auto& v = require(j, key, where);
    const auto& objs = require(v, "objects", where + "." + key);
    std::vector<std::size_t> om(c->object_count(), npos), am(c->arrow_count(), npos);
    for (std::size_t o = 0; o < c->object_count(); ++o) {
        if (!objs.contains(c->object_name(o)))
            throw ValidationError(where + "." + key + ": no image for object '" + c->object_name(o) + "'");
        auto img = d->find_object(get_as<std::string>(objs.at(c->object_name(o)), where));
        if (!img)
            throw ValidationError(where + "." + key + ": image of '" + c->object_name(o) + "' is not an object");
        om[o] = *img;
    }
    const json arrs = v.contains("arrows") ? v.at("arrows") : json::object();
    for (std::size_t a = 0; a < c->arrow_count(); ++a) {
        if (arrs.contains(c->arrow_name(a))) {
            auto img = d->find_arrow(get_as<std::string>(arrs.at(c->arrow_name(a)), where));
            if (!img)
                throw ValidationError(where + "." + key + ": image of '" + c->arrow_name(a) + "' is not an arrow");
            am[a] = *img;
        } else if (c->is_identity(a)) {
            am[a] = d->identity(om[c->source(a)]);
        } else {
            throw ValidationError(where + "." + key + ": no image for arrow '" + c->arrow_name(a) + "'");
        }
    }
    return Functor(c, d, std::move(om), std::move(am));
}

}  // namespace detail

/// {"format": "segal-transformation", "source": C, "target": D, "from": F, "to": G,
///  "components": {object: arrow}}; C and D are category objects or built-in names.
inline NaturalTransformation transformation_from_json(const json& j)
{
    const std::string where = "segal-transformation";
    detail::require_format(j, where);
    const auto c = detail::category_field(j, "source", where);
    const auto d = detail::category_field(j, "target", where);
    Functor f = detail::functor_field(j, "from", c, d, where);
    Functor g = detail::functor_field(j, "to", c, d, where);
    const auto& comps = detail::require(j, "components", where);
    std::vector<std::size_t> alpha;
    for (std::size_t o = 0; o < c->object_count(); ++o) {
        if (!comps.contains(c->object_name(o)))
            throw ValidationError(where + ": no component at object '" + c->object_name(o) + "'");
        auto a = d->find_arrow(detail::get_as<std::string>(comps.at(c->object_name(o)), where));
        if (!a)
            throw ValidationError(where + ": component at '" + c->object_name(o) + "' is not an arrow");
        alpha.push_back(*a);
    }
    return NaturalTransformation(std::move(f), std::move(g), std::move(alpha));
}

// ---------------------------------------------------------------------------
// Reports

inline ordered_json to_json(const BigInt& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline ordered_json to_json(const HomologyGroups& h)
{
    ordered_json degrees = ordered_json::array();
    for (const auto& d : h.degrees) {
        ordered_json e;
        e["degree"] = d.degree;
        if (d.status == DegreeStatus::computed) {
            e["betti"] = d.betti;
            ordered_json t = ordered_json::array();
            for (const auto& x : d.torsion)
                t.push_back(to_json(x));
            e["torsion"] = t;
        } else {
            e["betti"] = nullptr;
            e["torsion"] = nullptr;
        }
        e["status"] = d.status == DegreeStatus::computed ? "computed" : "not_computed";
        degrees.push_back(std::move(e));
    }
    ordered_json j;
    j["format"] = "segal-homology";
    j["degrees"] = degrees;
    return j;
}

inline HomologyGroups homology_from_json(const json& j)
{
    const std::string where = "segal-homology";
    detail::require_format(j, where);
    HomologyGroups h;
    for (const auto& e : detail::require(j, "degrees", where)) {
        DegreeHomology d;
        d.degree = detail::get_as<std::size_t>(detail::require(e, "degree", where), where + ".degree");
        const auto status = detail::get_as<std::string>(detail::require(e, "status", where), where + ".status");
        if (status == "computed") {
            d.status = DegreeStatus::computed;
            d.betti = detail::get_as<std::size_t>(detail::require(e, "betti", where), where + ".betti");
            for (const auto& t : detail::require(e, "torsion", where))
                d.torsion.push_back(t.is_string() ? BigInt(t.get<std::string>()) : BigInt(t.get<std::int64_t>()));
        } else if (status != "not_computed") {
            throw ValidationError(where + ": unknown status '" + status + "'");
        }
        h.degrees.push_back(std::move(d));
    }
    return h;
}

inline ordered_json to_json(const SegalReport& r)
{
    ordered_json levels = ordered_json::array();
    for (const auto& l : r.levels) {
        ordered_json e;
        e["m"] = l.m;
        e["verdict"] = to_string(l.verdict);
        e["witness"] = l.witness;
        levels.push_back(std::move(e));
    }
    return levels;
}

inline ordered_json to_json(const MultiSegalReport& r)
{
    ordered_json slices = ordered_json::array();
    for (const auto& s : r.slices) {
        ordered_json e;
        e["l"] = s.l;
        e["k"] = s.k ? ordered_json(*s.k) : ordered_json(nullptr);
        e["levels"] = to_json(s.report);
        slices.push_back(std::move(e));
    }
    ordered_json j;
    j["format"] = "segal-segal-report";
    j["all_bijective"] = r.all_bijective();
    j["slices"] = slices;
    return j;
}

}  // namespace segal
