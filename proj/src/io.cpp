#include "dcmapf/io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

#include "dcmapf/errors.hpp"

namespace dcmapf {

namespace {

struct Line {
    int number;
    std::vector<std::string_view> words;
};

// Splits into non-empty, comment-stripped lines of whitespace separated words.
std::vector<Line> tokenize(std::string_view text) {
    if (!text.empty() && text.back() != '\n') {
        int last = 1;
        for (char c : text) last += c == '\n';
        throw ParseError(last, "missing trailing newline");
    }
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            if (j > i) line.words.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (!line.words.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

long to_int(const Line& line, std::string_view word) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || ptr != word.data() + word.size())
        throw ParseError(line.number, "expected integer, got '" + std::string(word) + "'");
    return value;
}

void expect_arity(const Line& line, std::size_t n) {
    if (line.words.size() != n)
        throw ParseError(line.number, "expected " + std::to_string(n - 1) + " value(s) after '" +
                                          std::string(line.words[0]) + "'");
}

Vertex to_vertex(const Line& line, std::string_view word, int vertex_count) {
    long v = to_int(line, word);
    if (v < 0 || v >= vertex_count)
        throw ParseError(line.number, "unknown vertex " + std::string(word));
    return static_cast<Vertex>(v);
}

// Shared header, vertex and edge handling for both instance flavours.
struct GraphReader {
    Graph graph;
    bool have_vertices = false;
    std::optional<int> limit;

    bool consume(const Line& line) {
        auto key = line.words[0];
        if (key == "vertices") {
            expect_arity(line, 2);
            if (have_vertices) throw ParseError(line.number, "repeated vertices line");
            long n = to_int(line, line.words[1]);
            if (n < 0) throw ParseError(line.number, "negative vertex count");
            graph = Graph(static_cast<int>(n));
            have_vertices = true;
            return true;
        }
        if (key == "edge") {
            expect_arity(line, 3);
            need_vertices(line);
            Vertex u = to_vertex(line, line.words[1], graph.size());
            Vertex v = to_vertex(line, line.words[2], graph.size());
            if (u == v) throw ParseError(line.number, "self-loop");
            if (graph.adjacent(u, v)) throw ParseError(line.number, "duplicate edge");
            graph.add_edge(u, v);
            return true;
        }
        if (key == "limit") {
            expect_arity(line, 2);
            if (limit) throw ParseError(line.number, "repeated limit line");
            long l = to_int(line, line.words[1]);
            if (l < 0) throw ParseError(line.number, "negative limit");
            limit = static_cast<int>(l);
            return true;
        }
        return false;
    }

    void need_vertices(const Line& line) const {
        if (!have_vertices) throw ParseError(line.number, "'vertices' must come first");
    }
};

void expect_header(const std::vector<Line>& lines, std::string_view magic) {
    if (lines.empty()) throw ParseError(1, "empty input");
    const Line& h = lines[0];
    if (h.words.size() != 2 || h.words[0] != magic || h.words[1] != "1")
        throw ParseError(h.number, "expected header '" + std::string(magic) + " 1'");
}

void write_graph(std::ostringstream& out, const Graph& g) {
    out << "vertices " << g.size() << '\n';
    for (auto [u, v] : g.edges()) out << "edge " << u << ' ' << v << '\n';
}

}  // namespace

Instance parse_instance(std::string_view text) {
    auto lines = tokenize(text);
    expect_header(lines, "mapf");
    GraphReader reader;
    Instance inst;
    std::vector<bool> start_used, target_used;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (reader.consume(line)) continue;
        if (line.words[0] != "agent")
            throw ParseError(line.number, "unknown directive '" + std::string(line.words[0]) + "'");
        expect_arity(line, 3);
        reader.need_vertices(line);
        int n = reader.graph.size();
        start_used.resize(n, false);
        target_used.resize(n, false);
        Vertex s = to_vertex(line, line.words[1], n);
        Vertex t = to_vertex(line, line.words[2], n);
        if (start_used[s]) throw ParseError(line.number, "duplicate start " + std::to_string(s));
        if (target_used[t]) throw ParseError(line.number, "duplicate target " + std::to_string(t));
        start_used[s] = target_used[t] = true;
        inst.start.push_back(s);
        inst.target.push_back(t);
    }
    if (!reader.have_vertices) throw ParseError(lines.back().number, "missing vertices line");
    if (inst.start.empty()) throw ParseError(lines.back().number, "no agent lines");
    inst.graph = std::move(reader.graph);
    inst.makespan_limit = reader.limit;
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "mapf 1\n";
    write_graph(out, inst.graph);
    for (AgentId a = 0; a < inst.agent_count(); ++a)
        out << "agent " << inst.start[a] << ' ' << inst.target[a] << '\n';
    if (inst.makespan_limit) out << "limit " << *inst.makespan_limit << '\n';
    return out.str();
}

bool is_colored_text(std::string_view text) {
    try {
        auto lines = tokenize(text);
        return !lines.empty() && lines[0].words[0] == "cmapf";
    } catch (const ParseError&) {
        return false;
    }
}

ColoredInstance parse_colored_instance(std::string_view text) {
    auto lines = tokenize(text);
    expect_header(lines, "cmapf");
    GraphReader reader;
    ColoredInstance inst;
    enum class Expect { any, starts, targets } expect = Expect::any;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        auto key = line.words[0];
        if (expect == Expect::any && reader.consume(line)) continue;
        if (key == "group" && expect == Expect::any) {
            expect_arity(line, 2);
            reader.need_vertices(line);
            long g = to_int(line, line.words[1]);
            if (g != static_cast<long>(inst.groups.size()) + 1)
                throw ParseError(line.number, "groups must be numbered 1, 2, ... in order");
            inst.groups.emplace_back();
            expect = Expect::starts;
        } else if (key == "starts" && expect == Expect::starts) {
            for (std::size_t w = 1; w < line.words.size(); ++w)
                inst.groups.back().starts.push_back(
                    to_vertex(line, line.words[w], reader.graph.size()));
            expect = Expect::targets;
        } else if (key == "targets" && expect == Expect::targets) {
            for (std::size_t w = 1; w < line.words.size(); ++w)
                inst.groups.back().targets.push_back(
                    to_vertex(line, line.words[w], reader.graph.size()));
            if (inst.groups.back().targets.size() != inst.groups.back().starts.size())
                throw ParseError(line.number, "group start/target count mismatch");
            expect = Expect::any;
        } else {
            throw ParseError(line.number, "unexpected '" + std::string(key) + "'");
        }
    }
    if (expect != Expect::any) throw ParseError(lines.back().number, "incomplete group");
    if (!reader.have_vertices) throw ParseError(lines.back().number, "missing vertices line");
    inst.graph = std::move(reader.graph);
    inst.makespan_limit = reader.limit;
    try {
        inst.check();
    } catch (const PreconditionError& e) {
        throw ParseError(lines.back().number, e.what());
    }
    return inst;
}

std::string serialize_colored_instance(const ColoredInstance& inst) {
    std::ostringstream out;
    out << "cmapf 1\n";
    write_graph(out, inst.graph);
    for (std::size_t g = 0; g < inst.groups.size(); ++g) {
        out << "group " << g + 1 << "\nstarts";
        for (Vertex v : inst.groups[g].starts) out << ' ' << v;
        out << "\ntargets";
        for (Vertex v : inst.groups[g].targets) out << ' ' << v;
        out << '\n';
    }
    if (inst.makespan_limit) out << "limit " << *inst.makespan_limit << '\n';
    return out.str();
}

Schedule parse_schedule(std::string_view text, int agent_count) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty schedule");
    const Line& head = lines[0];
    if (head.words[0] != "schedule") throw ParseError(head.number, "expected 'schedule <m>'");
    expect_arity(head, 2);
    long m = to_int(head, head.words[1]);
    if (m < 0) throw ParseError(head.number, "negative makespan");
    if (static_cast<long>(lines.size()) - 1 != m)
        throw ParseError(lines.back().number, "expected " + std::to_string(m) + " turn lines, found " +
                                                  std::to_string(lines.size() - 1));
    Schedule s;
    for (long i = 1; i <= m; ++i) {
        const Line& line = lines[i];
        if (line.words.size() < 2 || line.words[0] != "turn" ||
            line.words[1] != std::to_string(i) + ":")
            throw ParseError(line.number, "expected 'turn " + std::to_string(i) + ":'");
        if (static_cast<int>(line.words.size()) - 2 != agent_count)
            throw ParseError(line.number, "arity: expected " + std::to_string(agent_count) +
                                              " positions, found " +
                                              std::to_string(line.words.size() - 2));
        Placement p;
        for (std::size_t w = 2; w < line.words.size(); ++w) {
            long v = to_int(line, line.words[w]);
            if (v < 0) throw ParseError(line.number, "negative vertex");
            p.push_back(static_cast<Vertex>(v));
        }
        s.turns.push_back(std::move(p));
    }
    return s;
}

std::string serialize_schedule(const Schedule& s) {
    std::ostringstream out;
    out << "schedule " << s.makespan() << '\n';
    for (int i = 0; i < s.makespan(); ++i) {
        out << "turn " << i + 1 << ':';
        for (Vertex v : s.turns[i]) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

}  // namespace dcmapf
