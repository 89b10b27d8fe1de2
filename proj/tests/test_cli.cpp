#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcmapf/cli.hpp"
#include "dcmapf/io.hpp"
#include "dcmapf/random_instance.hpp"

using namespace dcmapf;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "dcmapf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    explicit TempDir(const std::string& name)
        : path_(fs::temp_directory_path() / ("dcmapf_test_" + name)) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& text = "") const {
        std::string p = (path_ / name).string();
        if (!text.empty()) std::ofstream(p) << text;
        return p;
    }
    std::string str() const { return path_.string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kK4Swap = "mapf 1\nvertices 4\nedge 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\nedge 2 3\n"
                      "agent 0 1\nagent 1 0\n";
const char* kEdgeSwap = "mapf 1\nvertices 2\nedge 0 1\nagent 0 1\nagent 1 0\n";

}  // namespace

TEST_CASE("solve") {
    TempDir dir("solve");
    std::string inst = dir.file("k4.mapf", kK4Swap);
    std::string sched = dir.file("k4.sched");
    Result r = call({"solve", inst, "--algo", "clique", "-o", sched});
    CHECK(r.code == 0);
    CHECK(r.err.find("makespan=2") != std::string::npos);
    CHECK(call({"validate", inst, sched}).code == 0);

    Result printed = call({"solve", inst});
    CHECK(printed.code == 0);
    CHECK(printed.out.rfind("schedule 2\n", 0) == 0);
    CHECK(printed.err.find("algo=clique") != std::string::npos);

    CHECK(call({"solve", dir.file("edge.mapf", kEdgeSwap), "--algo", "fpt"}).code == 1);
    CHECK(call({"solve", dir.file("edge.mapf"), "--algo", "oracle"}).code == 1);

    std::string big = dir.file("big.mapf", serialize_instance(random_instance({9, 2, 6, 3})));
    Result guard = call({"solve", big, "--algo", "oracle", "--state-limit", "10"});
    CHECK(guard.code == 3);
    CHECK(guard.err.find("resource-guard") != std::string::npos);

    CHECK(call({"solve", dir.file("missing.mapf")}).code == 2);
    CHECK(call({"solve", dir.file("bad.mapf", "mapf 1\nvertices 2\nagent 0 0\nagent 0 1\n")}).code == 2);
    CHECK(call({"solve", inst, "--algo", "magic"}).code == 2);
    CHECK(call({"solve", dir.file("edge.mapf"), "--algo", "clique"}).code == 1);
    CHECK(call({}).code == 2);
}

TEST_CASE("validate") {
    TempDir dir("validate");
    std::string inst = dir.file("k4.mapf", kK4Swap);
    std::string sched = dir.file("k4.sched");
    REQUIRE(call({"solve", inst, "--algo", "oracle", "-o", sched}).code == 0);
    CHECK(call({"validate", inst, sched}).code == 0);

    std::string swap = dir.file("swap.sched", "schedule 1\nturn 1: 1 0\n");
    Result bad = call({"validate", inst, swap});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("swap") != std::string::npos);
    CHECK(bad.err.find("turn 1") != std::string::npos);

    std::string cut = dir.file("cut.sched", "schedule 2\nturn 1: 2 0\n");
    CHECK(call({"validate", inst, cut}).code == 2);
}

TEST_CASE("generate three-partition") {
    TempDir dir("tp");
    std::string prefix = dir.str() + "/tp";
    Result r = call({"generate", "three-partition", "--betas", "1", "1", "1", "1", "1", "1",
                     "--partition", "1", "2", "3", "4", "5", "6", "-o", prefix});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("limit=258") != std::string::npos);
    CHECK(call({"validate", prefix + ".mapf", prefix + ".sched"}).code == 0);
    CHECK(slurp(prefix + ".sched").rfind("schedule 258\n", 0) == 0);
    CHECK(slurp(prefix + ".reg").find("name u1 vertex 0") != std::string::npos);

    CHECK(call({"generate", "three-partition", "--betas", "1", "2", "3", "3", "2", "1", "--partition",
                "1", "4", "6", "2", "3", "5", "-o", prefix})
              .code == 2);
    CHECK(call({"generate", "three-partition", "--betas", "1", "1", "1", "1", "1", "1", "--partition",
                "1", "2", "3", "4", "-o", prefix})
              .code == 2);
    CHECK(call({"generate", "three-partition", "--betas", "1", "1", "1"}).code == 2);
}

TEST_CASE("generate pancake and colored") {
    TempDir dir("pancake");
    std::string prefix = dir.str() + "/p";
    Result r = call({"generate", "pancake", "--perm", "2", "1", "--flips", "1", "--flip-seq", "2",
                     "-o", prefix});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("limit=12") != std::string::npos);
    CHECK(slurp(prefix + ".mapf").find("limit 12\n") != std::string::npos);
    CHECK(call({"validate", prefix + ".mapf", prefix + ".sched"}).code == 0);
    CHECK(call({"generate", "pancake", "--perm", "2", "1", "--flips", "1", "--flip-seq", "1"}).code == 2);
    CHECK(call({"generate", "pancake", "--perm", "2", "2", "--flips", "1"}).code == 2);

    std::string cp = dir.str() + "/c";
    Result c = call({"generate", "colored", "--alpha", "100", "--beta", "001", "--flips", "1",
                     "--flip-seq", "3", "-o", cp});
    REQUIRE(c.code == 0);
    CHECK(c.err.find("groups=6") != std::string::npos);
    CHECK(call({"validate", cp + ".cmapf", cp + ".sched"}).code == 0);
    CHECK(call({"solve", cp + ".cmapf"}).code == 2);
    CHECK(call({"generate", "colored", "--alpha", "100", "--beta", "001", "--flips", "1",
                "--flip-seq", "2"})
              .code == 2);
}

TEST_CASE("generate random is deterministic") {
    Result a = call({"generate", "random", "--vertices", "8", "--dc", "2", "--agents", "4", "--seed", "7"});
    Result b = call({"generate", "random", "--vertices", "8", "--dc", "2", "--agents", "4", "--seed", "7"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    Instance inst = parse_instance(a.out);
    CHECK(inst.graph.size() == 8);
    CHECK(inst.agent_count() == 4);
    CHECK(clique_split(inst.graph).distance() <= 2);
    CHECK(call({"generate", "random", "--vertices", "3", "--dc", "1", "--agents", "4", "--seed", "1"})
              .code == 2);
}

TEST_CASE("bench") {
    TempDir empty("bench_empty");
    Result e = call({"bench", empty.str()});
    CHECK(e.code == 0);
    CHECK(e.out == "instance\talgo\tfeasible\tmakespan\tstates\tms\n");

    TempDir dir("bench");
    for (int i = 0; i < 20; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "r%02d.mapf", i);
        dir.file(name, serialize_instance(random_instance({7, i % 3, 1 + i % 4, 100u + i})));
    }
    Result r = call({"bench", dir.str()});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 41);
    CHECK(r.out.find("r00.mapf\toracle\t") != std::string::npos);

    TempDir inf("bench_inf");
    inf.file("edge.mapf", kEdgeSwap);
    Result i = call({"bench", inf.str()});
    CHECK(i.code == 0);
    CHECK(i.out.find("edge.mapf\toracle\tno\t-") != std::string::npos);
    CHECK(i.out.find("edge.mapf\tfpt\tno\t-") != std::string::npos);

    CHECK(call({"bench", dir.file("nope")}).code == 2);
}
