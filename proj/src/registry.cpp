#include "dcmapf/registry.hpp"

#include <sstream>

#include "dcmapf/errors.hpp"

namespace dcmapf {

void GadgetRegistry::name_vertex(const std::string& name, Vertex v) {
    if (!vertices_.emplace(name, v).second) throw PreconditionError("duplicate vertex name " + name);
}

void GadgetRegistry::name_agents(const std::string& name, std::vector<AgentId> agents) {
    if (!groups_.emplace(name, std::move(agents)).second)
        throw PreconditionError("duplicate agent group " + name);
}

Vertex GadgetRegistry::vertex(const std::string& name) const {
    auto it = vertices_.find(name);
    if (it == vertices_.end()) throw PreconditionError("unknown vertex name " + name);
    return it->second;
}

const std::vector<AgentId>& GadgetRegistry::agents(const std::string& name) const {
    auto it = groups_.find(name);
    if (it == groups_.end()) throw PreconditionError("unknown agent group " + name);
    return it->second;
}

std::string serialize_registry(const GadgetRegistry& r) {
    std::ostringstream out;
    for (const auto& [name, v] : r.vertices()) out << "name " << name << " vertex " << v << '\n';
    for (const auto& [name, ids] : r.groups()) {
        out << "name " << name << " agents";
        for (AgentId a : ids) out << ' ' << a;
        out << '\n';
    }
    return out.str();
}

GadgetRegistry parse_registry(std::string_view text) {
    GadgetRegistry r;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::istringstream words(line);
        std::string kw, name, kind;
        if (!(words >> kw)) continue;
        if (kw != "name" || !(words >> name >> kind)) throw ParseError(number, "malformed entry");
        if (kind == "vertex") {
            Vertex v;
            if (!(words >> v)) throw ParseError(number, "missing vertex id");
            r.name_vertex(name, v);
        } else if (kind == "agents") {
            std::vector<AgentId> ids;
            AgentId a;
            while (words >> a) ids.push_back(a);
            r.name_agents(name, std::move(ids));
        } else {
            throw ParseError(number, "unknown entry kind " + kind);
        }
    }
    return r;
}

std::string indexed(std::string_view base, long i) {
    return std::string(base) + "[" + std::to_string(i) + "]";
}

}  // namespace dcmapf
