#include "visrdv/io/environment_io.hpp"

#include <fstream>
#include <stdexcept>

namespace visrdv {

Environment environment_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw InvalidEnvironment("expected an object with a \"vertices\" array");
    std::vector<Point> pts;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw InvalidEnvironment("each vertex must be a pair of numbers");
        pts.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return make_environment(std::move(pts));
}

nlohmann::json environment_to_json(const Environment& env) {
    nlohmann::json verts = nlohmann::json::array();
    for (const Point& p : env.vertices) verts.push_back({p.x, p.y});
    return {{"vertices", verts}};
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Environment load_environment(const std::string& path) { return environment_from_json(read_json_file(path)); }

void save_environment(const Environment& env, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << environment_to_json(env).dump(2) << "\n";
}

}  // namespace visrdv
