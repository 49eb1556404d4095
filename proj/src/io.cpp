#include "extcore/io.hpp"

#include "extcore/errors.hpp"

#include <fstream>
#include <sstream>

namespace extcore {

namespace {

template <class F>
auto guarded(const char* what, F&& f)
{
    try {
        return f();
    } catch (const Json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

VertexId vertex_from(const Json& j)
{
    const auto v = j.get<std::int64_t>();
    if (v < 0 || v >= static_cast<std::int64_t>(kNoVertex))
        throw InputError("vertex id out of range: " + std::to_string(v));
    return static_cast<VertexId>(v);
}

Json sets_to_object(const std::vector<ColorSet>& sets, bool skip_empty)
{
    Json out = Json::object();
    for (std::size_t v = 0; v < sets.size(); ++v)
        if (!skip_empty || !sets[v].empty())
            out[std::to_string(v)] = sets[v];
    return out;
}

std::vector<ColorSet> sets_from_object(const Json& obj, std::size_t n, bool require_all)
{
    if (!obj.is_object())
        throw InputError("expected an object keyed by vertex id");
    std::vector<ColorSet> out(n);
    std::vector<char> seen(n, 0);
    for (const auto& [key, value] : obj.items()) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(key, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != key.size() || key.empty() || v >= n)
            throw InputError("bad vertex key '" + key + "'");
        out[v] = make_color_set(value.get<std::vector<Color>>());
        if (out[v].size() != value.size())
            throw InputError("repeated color at vertex " + key);
        seen[v] = 1;
    }
    if (require_all)
        for (std::size_t v = 0; v < n; ++v)
            if (!seen[v])
                throw InputError("no list for vertex " + std::to_string(v));
    return out;
}

Json vertex_array(const std::vector<VertexId>& vs) { return Json(vs); }

std::vector<VertexId> vertices_from(const Json& j)
{
    std::vector<VertexId> out;
    for (const auto& v : j)
        out.push_back(vertex_from(v));
    return out;
}

} // namespace

Json read_json_file(const std::filesystem::path& path)
{
    const auto text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(1) + "\n"); }

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << text;
}

Json graph_to_json(const Graph& g)
{
    Json edges = Json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    return {{"n", g.size()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j)
{
    return guarded("graph JSON", [&] {
        const auto n = j.at("n").get<std::int64_t>();
        if (n < 0)
            throw InputError("negative vertex count");
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw InputError("edges must be pairs");
            edges.emplace_back(vertex_from(e[0]), vertex_from(e[1]));
        }
        return Graph(static_cast<std::size_t>(n), edges);
    });
}

Json lists_to_json(const ColorList& lists) { return {{"lists", sets_to_object(lists, false)}}; }

ColorList lists_from_json(const Json& j, std::size_t n)
{
    return guarded("lists JSON", [&] { return sets_from_object(j.at("lists"), n, true); });
}

Json choice_to_json(const ChoiceAssignment& c) { return {{"choice", sets_to_object(c, true)}}; }

ChoiceAssignment choice_from_json(const Json& j, std::size_t n)
{
    return guarded("choice JSON", [&] { return sets_from_object(j.at("choice"), n, false); });
}

Json verdict_to_json(const Verdict& v)
{
    Json j{{"holds", v.holds}, {"mode", to_string(v.mode)}, {"lists_checked", v.lists_checked},
        {"proof", v.is_proof()}};
    j["seed"] = v.seed ? Json(*v.seed) : Json(nullptr);
    j["counterexample"] = v.counterexample ? lists_to_json(*v.counterexample)["lists"] : Json(nullptr);
    j["witness"] = v.witness ? choice_to_json(*v.witness)["choice"] : Json(nullptr);
    return j;
}

Json trace_to_json(const ReductionTrace& t)
{
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        if (s.is_vertex()) {
            steps.push_back({{"kind", "vertex"}, {"v", std::get<VertexId>(s.payload)}});
            continue;
        }
        const auto& h = s.handle();
        Json extra = Json::object();
        if (h.next)
            extra["next"] = *h.next;
        if (h.prev)
            extra["prev"] = *h.prev;
        if (!h.witness.empty())
            extra["witness"] = vertex_array(h.witness);
        steps.push_back({{"kind", "handle"}, {"handle_kind", to_string(h.kind)}, {"path", vertex_array(h.path)},
            {"interior", vertex_array(h.interior())}, {"extra", extra}});
    }
    return {{"x", t.x.str()}, {"level", static_cast<int>(t.level)}, {"variant", to_string(t.variant)},
        {"steps", steps}, {"core", vertex_array(t.core)}};
}

ReductionTrace trace_from_json(const Json& j)
{
    return guarded("trace JSON", [&] {
        ReductionTrace t;
        const auto& x = j.at("x");
        t.x = x.is_string() ? Rational::parse(x.get<std::string>()) : Rational(x.get<std::int64_t>());
        const int level = j.at("level").get<int>();
        if (level != 1 && level != 2)
            throw InputError("trace level must be 1 or 2");
        t.level = static_cast<CoreLevel>(level);
        t.variant = parse_core_variant(j.at("variant").get<std::string>());
        for (const auto& s : j.at("steps")) {
            const auto kind = s.at("kind").get<std::string>();
            if (kind == "vertex") {
                t.steps.push_back({vertex_from(s.at("v")), {}});
                continue;
            }
            if (kind != "handle")
                throw InputError("unknown step kind '" + kind + "'");
            HandleDescriptor h;
            h.kind = parse_handle_kind(s.at("handle_kind").get<std::string>());
            h.path = vertices_from(s.at("path"));
            if (s.contains("extra")) {
                const auto& extra = s["extra"];
                if (extra.contains("next"))
                    h.next = vertex_from(extra["next"]);
                if (extra.contains("prev"))
                    h.prev = vertex_from(extra["prev"]);
                if (extra.contains("witness"))
                    h.witness = vertices_from(extra["witness"]);
            }
            if (s.contains("interior") && vertices_from(s["interior"]) != h.interior())
                throw InputError("handle interior does not match its path");
            t.steps.push_back({std::move(h), {}});
        }
        t.core = vertices_from(j.at("core"));
        return t;
    });
}

std::string region_to_text(const LatticeRegion& r, const std::vector<std::string>& header)
{
    std::ostringstream out;
    for (const auto& line : header)
        out << "# " << line << '\n';
    for (const auto& c : r.coords())
        out << c.x << ' ' << c.y << '\n';
    return out.str();
}

LatticeRegion region_from_text(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<LatticeCoord> coords;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        LatticeCoord c;
        if (!(ls >> c.x)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw InputError("region line " + std::to_string(lineno) + ": expected 'x y'");
            continue;
        }
        std::string rest;
        if (!(ls >> c.y) || (ls >> rest))
            throw InputError("region line " + std::to_string(lineno) + ": expected 'x y'");
        coords.push_back(c);
    }
    return LatticeRegion(coords);
}

Json region_sidecar(const LatticeRegion& r)
{
    Json coords = Json::array();
    for (const auto& c : r.coords())
        coords.push_back({c.x, c.y});
    return {{"coords", coords}};
}

LatticeRegion region_from_sidecar(const Json& sidecar, const Graph& g)
{
    return guarded("coordinate sidecar", [&] {
        std::vector<LatticeCoord> coords;
        for (const auto& c : sidecar.at("coords"))
            coords.push_back({c.at(0).get<std::int64_t>(), c.at(1).get<std::int64_t>()});
        LatticeRegion r(coords);
        if (r.coords() != coords || r.graph().edges() != g.edges() || r.size() != g.size())
            throw InputError("coordinate sidecar does not match the graph");
        return r;
    });
}

} // namespace extcore
