#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dcmapf/model.hpp"

namespace dcmapf {

// Symbolic names for the vertices and agent groups of a generated instance.
class GadgetRegistry {
public:
    void name_vertex(const std::string& name, Vertex v);
    void name_agents(const std::string& name, std::vector<AgentId> agents);

    Vertex vertex(const std::string& name) const;
    const std::vector<AgentId>& agents(const std::string& name) const;
    bool has_vertex(const std::string& name) const { return vertices_.count(name) > 0; }
    bool has_agents(const std::string& name) const { return groups_.count(name) > 0; }

    const std::map<std::string, Vertex>& vertices() const { return vertices_; }
    const std::map<std::string, std::vector<AgentId>>& groups() const { return groups_; }

private:
    std::map<std::string, Vertex> vertices_;
    std::map<std::string, std::vector<AgentId>> groups_;
};

// Lines `name <symbol> vertex <id>` and `name <symbol> agents <id...>`,
// vertices first, each block sorted by symbol.
std::string serialize_registry(const GadgetRegistry& r);
GadgetRegistry parse_registry(std::string_view text);

std::string indexed(std::string_view base, long i);

}  // namespace dcmapf
