#pragma once

/**
 * JSON instance files. Every rational is a "p/q" string in lowest terms and
 * serialisation is canonical (sorted keys, no whitespace), so a parsed file
 * re-serialises to the same bytes.
 */

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fuzzyvc/errors.hpp"
#include "fuzzyvc/fuzzy_core.hpp"
#include "fuzzyvc/rational.hpp"
#include "fuzzyvc/width_metrics.hpp"

namespace fuzzyvc {

using Json = nlohmann::json;

using InstanceFile = std::variant<FuzzySetSystem, SetSystem, FunctionClass, FuzzyRelation, DiscreteMeasure>;

inline const char* type_tag(const InstanceFile& f)
{
    static constexpr const char* tags[] = {"fuzzy_system", "set_system", "function_class", "fuzzy_relation", "measure"};
    return tags[f.index()];
}

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline void expect_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys)
{
    if (!j.is_object())
        throw ParseError(path + ": expected an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k))
            throw ParseError(child(path, k) + ": unexpected field");
    for (const char* k : keys)
        if (!j.contains(k))
            throw ParseError(child(path, k) + ": missing field");
}

inline std::size_t read_count(const Json& j, const std::string& path)
{
    if (!j.is_number_unsigned())
        throw ParseError(path + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

inline const Json& read_array(const Json& j, const std::string& path)
{
    if (!j.is_array())
        throw ParseError(path + ": expected an array");
    return j;
}

inline IndexSet read_index_set(const Json& j, const std::string& path, std::size_t ground)
{
    IndexSet out;
    const auto& a = read_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const std::size_t v = read_count(a[i], child(path, i));
        if (v >= ground)
            throw ParseError(child(path, i) + ": index " + std::to_string(v) + " outside ground set");
        if (!out.empty() && v <= out.back())
            throw ParseError(child(path, i) + ": indices must be strictly ascending");
        out.push_back(v);
    }
    return out;
}

inline Rational read_rational(const Json& j, const std::string& path)
{
    if (!j.is_string())
        throw ParseError(path + ": expected a \"p/q\" string");
    try
    {
        return parse_rational(j.get<std::string>());
    }
    catch (const std::exception& e)
    {
        throw ParseError(path + ": " + e.what());
    }
}

inline Membership read_membership(const Json& j, const std::string& path)
{
    if (j.is_string())
    {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "+")
            return Membership::Plus;
        if (s == "-")
            return Membership::Minus;
        if (s == "*")
            return Membership::Star;
    }
    throw ParseError(path + ": expected one of \"+\", \"-\", \"*\"");
}

inline const char* membership_text(Membership m)
{
    switch (m)
    {
        case Membership::Plus: return "+";
        case Membership::Minus: return "-";
        case Membership::Star: return "*";
    }
    return "*";
}

/** Runs a constructor and turns its invariant failures into ParseErrors under `path`. */
template <typename F>
auto validated(const std::string& path, F&& make)
{
    try
    {
        return make();
    }
    catch (const DomainError& e)
    {
        throw ParseError(path + "." + e.what());
    }
}

}   // namespace detail

inline InstanceFile instance_from_json(const Json& j)
{
    using namespace detail;
    const std::string root = "$";
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ParseError(root + ".type: missing or not a string");
    const std::string type = j["type"].get<std::string>();

    if (type == "fuzzy_system")
    {
        expect_keys(j, root, {"type", "ground_size", "sets"});
        const std::size_t ground = read_count(j["ground_size"], root + ".ground_size");
        const auto& arr = read_array(j["sets"], root + ".sets");
        std::vector<FuzzySet> sets;
        for (std::size_t k = 0; k < arr.size(); ++k)
        {
            const std::string p = child(root + ".sets", k);
            expect_keys(arr[k], p, {"plus", "minus"});
            FuzzySet s{read_index_set(arr[k]["plus"], p + ".plus", ground),
                       read_index_set(arr[k]["minus"], p + ".minus", ground)};
            if (!disjoint(s.plus, s.minus))
                throw ParseError(p + ": plus and minus must be disjoint");
            sets.push_back(std::move(s));
        }
        return validated(root, [&] { return FuzzySetSystem(ground, std::move(sets)); });
    }
    if (type == "set_system")
    {
        expect_keys(j, root, {"type", "ground_size", "sets"});
        const std::size_t ground = read_count(j["ground_size"], root + ".ground_size");
        const auto& arr = read_array(j["sets"], root + ".sets");
        std::vector<IndexSet> sets;
        for (std::size_t k = 0; k < arr.size(); ++k)
            sets.push_back(read_index_set(arr[k], child(root + ".sets", k), ground));
        return validated(root, [&] { return SetSystem(ground, std::move(sets)); });
    }
    if (type == "function_class")
    {
        expect_keys(j, root, {"type", "points", "values"});
        const std::size_t points = read_count(j["points"], root + ".points");
        const auto& arr = read_array(j["values"], root + ".values");
        std::vector<std::vector<Rational>> rows;
        for (std::size_t k = 0; k < arr.size(); ++k)
        {
            const std::string p = child(root + ".values", k);
            const auto& row = read_array(arr[k], p);
            if (row.size() != points)
                throw ParseError(p + ": expected " + std::to_string(points) + " values");
            std::vector<Rational> vals;
            for (std::size_t x = 0; x < row.size(); ++x)
            {
                vals.push_back(read_rational(row[x], child(p, x)));
                if (vals.back() < 0 || vals.back() > 1)
                    throw ParseError(child(p, x) + ": value outside [0,1]");
            }
            rows.push_back(std::move(vals));
        }
        return validated(root, [&] { return FunctionClass(points, std::move(rows)); });
    }
    if (type == "fuzzy_relation")
    {
        expect_keys(j, root, {"type", "rows", "cols", "entries"});
        const std::size_t rows = read_count(j["rows"], root + ".rows");
        const std::size_t cols = read_count(j["cols"], root + ".cols");
        const auto& arr = read_array(j["entries"], root + ".entries");
        if (arr.size() != rows)
            throw ParseError(root + ".entries: expected " + std::to_string(rows) + " rows");
        std::vector<Membership> entries;
        for (std::size_t x = 0; x < rows; ++x)
        {
            const std::string p = child(root + ".entries", x);
            const auto& row = read_array(arr[x], p);
            if (row.size() != cols)
                throw ParseError(p + ": expected " + std::to_string(cols) + " entries");
            for (std::size_t y = 0; y < cols; ++y)
                entries.push_back(read_membership(row[y], child(p, y)));
        }
        return validated(root, [&] { return FuzzyRelation(rows, cols, std::move(entries)); });
    }
    if (type == "measure")
    {
        expect_keys(j, root, {"type", "weights"});
        const auto& arr = read_array(j["weights"], root + ".weights");
        std::vector<Rational> w;
        for (std::size_t i = 0; i < arr.size(); ++i)
            w.push_back(read_rational(arr[i], child(root + ".weights", i)));
        return validated(root, [&] { return DiscreteMeasure(std::move(w)); });
    }
    throw ParseError(root + ".type: unknown type \"" + type + "\"");
}

inline InstanceFile parse_instance(std::string_view bytes)
{
    Json j;
    try
    {
        j = Json::parse(bytes.begin(), bytes.end());
    }
    catch (const Json::parse_error& e)
    {
        throw ParseError(std::string("$: malformed JSON: ") + e.what());
    }
    return instance_from_json(j);
}

inline Json to_json(const InstanceFile& file)
{
    Json j;
    j["type"] = type_tag(file);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FuzzySetSystem>)
            {
                j["ground_size"] = v.ground_size();
                j["sets"] = Json::array();
                for (const auto& s : v.sets())
                    j["sets"].push_back({{"plus", s.plus}, {"minus", s.minus}});
            }
            else if constexpr (std::is_same_v<T, SetSystem>)
            {
                j["ground_size"] = v.ground_size();
                j["sets"] = Json::array();
                for (const auto& s : v.sets())
                    j["sets"].push_back(s);
            }
            else if constexpr (std::is_same_v<T, FunctionClass>)
            {
                j["points"] = v.point_count();
                j["values"] = Json::array();
                for (const auto& row : v.rows())
                {
                    Json r = Json::array();
                    for (const auto& x : row)
                        r.push_back(to_string(x));
                    j["values"].push_back(std::move(r));
                }
            }
            else if constexpr (std::is_same_v<T, FuzzyRelation>)
            {
                j["rows"] = v.x_size();
                j["cols"] = v.y_size();
                j["entries"] = Json::array();
                for (std::size_t x = 0; x < v.x_size(); ++x)
                {
                    Json r = Json::array();
                    for (std::size_t y = 0; y < v.y_size(); ++y)
                        r.push_back(detail::membership_text(v.at(x, y)));
                    j["entries"].push_back(std::move(r));
                }
            }
            else
            {
                j["weights"] = Json::array();
                for (const auto& w : v.weights())
                    j["weights"].push_back(to_string(w));
            }
        },
        file);
    return j;
}

/** Canonical bytes: nlohmann objects keep keys sorted, dump() adds no whitespace. */
inline std::string serialize_instance(const InstanceFile& file) { return to_json(file).dump(); }

template <typename T>
const T& instance_as(const InstanceFile& file, const std::string& what)
{
    if (const T* v = std::get_if<T>(&file))
        return *v;
    throw ParseError("$.type: " + what + " expected, got " + type_tag(file));
}

}   // namespace fuzzyvc
