#include "dcmapf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dcmapf/clique.hpp"
#include "dcmapf/errors.hpp"
#include "dcmapf/fpt.hpp"
#include "dcmapf/io.hpp"
#include "dcmapf/oracle.hpp"
#include "dcmapf/pancake.hpp"
#include "dcmapf/random_instance.hpp"
#include "dcmapf/three_partition.hpp"

namespace dcmapf {

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kNo = 1, kUsage = 2, kGuard = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw UsageError("cannot write " + path);
}

bool is_complete(const Graph& g) {
    const long n = g.size();
    return g.edge_count() == n * (n - 1) / 2;
}

}  // namespace

std::string RunReport::describe() const {
    std::ostringstream ss;
    ss << "algo=" << algorithm << " feasible=" << (resource_guard ? "unknown" : feasible ? "yes" : "no")
       << " makespan=";
    if (makespan) ss << *makespan;
    else ss << '-';
    ss << " states=" << states << " ms=" << std::fixed << std::setprecision(1) << ms;
    if (resource_guard) ss << " resource-guard";
    return ss.str();
}

RunReport run_solver(const Instance& inst, const std::string& algorithm, std::size_t state_limit,
                     Schedule* schedule) {
    RunReport report;
    report.algorithm = algorithm;
    if (algorithm == "auto") report.algorithm = is_complete(inst.graph) ? "clique" : "fpt";
    const auto begin = std::chrono::steady_clock::now();
    std::optional<Solution> sol;
    try {
        if (report.algorithm == "oracle") {
            OracleOptions options;
            options.cap = inst.makespan_limit.value_or(INT_MAX);
            options.state_limit = state_limit;
            SearchStats stats;
            try {
                sol = optimal_schedule(inst, options, &stats);
            } catch (const ResourceLimitError&) {
                report.states = state_limit;
                throw;
            }
            report.states = stats.states;
        } else if (report.algorithm == "clique") {
            sol = solve_clique(inst);
            if (sol && inst.makespan_limit && sol->makespan() > *inst.makespan_limit) sol.reset();
        } else if (report.algorithm == "fpt") {
            FptOptions options;
            options.state_limit = state_limit;
            FptStats stats;
            sol = solve_fpt(inst, options, &stats);
            report.states = stats.states;
        } else {
            throw PreconditionError("unknown algorithm " + algorithm);
        }
    } catch (const ResourceLimitError&) {
        report.resource_guard = true;
    }
    report.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin)
                    .count();
    if (sol) {
        report.feasible = true;
        report.makespan = sol->makespan();
        if (schedule) *schedule = std::move(sol->schedule);
    }
    return report;
}

namespace {

struct SolveArgs {
    std::string instance, algo = "auto", output = "-";
    std::size_t state_limit = kDefaultStateLimit;
};

struct ValidateArgs {
    std::string instance, schedule;
};

struct GenerateArgs {
    std::string output = "-";
    std::vector<std::int64_t> betas;
    std::vector<int> partition;
    bool raw = false;
    std::vector<int> perm, flip_seq;
    int flips = 1;
    std::string alpha, beta;
    int vertices = 6, dc = 1, agents = 3;
    std::uint64_t seed = 0;
};

struct BenchArgs {
    std::string directory;
    std::size_t state_limit = kDefaultStateLimit;
};

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int solve(const SolveArgs& a) {
        std::string text = read_file(a.instance);
        if (is_colored_text(text)) throw UsageError("colored instances can only be validated");
        Instance inst = parse_instance(text);
        if (a.algo == "clique" && !is_complete(inst.graph))
            throw UsageError("the clique solver needs a complete graph");
        Schedule s;
        RunReport report = run_solver(inst, a.algo, a.state_limit, &s);
        err_ << report.describe() << '\n';
        if (report.resource_guard) return kGuard;
        if (!report.feasible) return kNo;
        emit(a.output, serialize_schedule(s));
        return kOk;
    }

    int validate(const ValidateArgs& a) {
        std::string text = read_file(a.instance);
        std::string sched = read_file(a.schedule);
        Verdict v;
        if (is_colored_text(text)) {
            ColoredInstance inst = parse_colored_instance(text);
            v = validate_colored_schedule(inst, parse_schedule(sched, inst.agent_count()));
        } else {
            Instance inst = parse_instance(text);
            v = validate_schedule(inst, parse_schedule(sched, inst.agent_count()));
        }
        if (v.ok()) {
            err_ << "valid\n";
            return kOk;
        }
        err_ << "invalid: " << v.violation->describe() << '\n';
        return kNo;
    }

    int three_partition(const GenerateArgs& a) {
        ThreePartitionInstance tp = make_three_partition(a.betas);
        if (!a.raw) tp = preprocess_three_partition(tp);
        GeneratedInstance g = build_three_partition_instance(tp);
        std::optional<Schedule> witness;
        if (!a.partition.empty()) {
            if (a.partition.size() % 3 != 0) throw UsageError("--partition needs triples");
            std::vector<Triple> triples;
            for (std::size_t i = 0; i < a.partition.size(); i += 3)
                triples.push_back({a.partition[i], a.partition[i + 1], a.partition[i + 2]});
            witness = three_partition_forward_schedule(g.instance, g.registry, triples);
        }
        write_generated(a.output, serialize_instance(g.instance), ".mapf", &g.registry, witness);
        err_ << "vertices=" << g.instance.graph.size() << " agents=" << g.instance.agent_count()
             << " limit=" << *g.instance.makespan_limit << '\n';
        return kOk;
    }

    int pancake(const GenerateArgs& a) {
        PancakeInstance p{a.perm, a.flips};
        GeneratedInstance g = build_pancake_instance(p);
        std::optional<Schedule> witness;
        if (!a.flip_seq.empty()) {
            if (static_cast<int>(a.flip_seq.size()) != a.flips)
                throw UsageError("--flip-seq needs exactly k entries");
            witness = pancake_forward_schedule(g.instance, g.registry, a.flip_seq);
        }
        write_generated(a.output, serialize_instance(g.instance), ".mapf", &g.registry, witness);
        err_ << "vertices=" << g.instance.graph.size() << " agents=" << g.instance.agent_count()
             << " limit=" << *g.instance.makespan_limit << '\n';
        return kOk;
    }

    int colored(const GenerateArgs& a) {
        GeneratedColoredInstance g = build_colored_pancake_instance(a.alpha, a.beta, a.flips);
        std::optional<Schedule> witness;
        if (!a.flip_seq.empty()) {
            if (static_cast<int>(a.flip_seq.size()) != a.flips)
                throw UsageError("--flip-seq needs exactly k entries");
            witness = colored_pancake_forward_schedule(g.instance, g.registry, a.alpha, a.beta,
                                                       a.flip_seq);
        }
        write_generated(a.output, serialize_colored_instance(g.instance), ".cmapf", &g.registry,
                        witness);
        err_ << "vertices=" << g.instance.graph.size() << " agents=" << g.instance.agent_count()
             << " groups=" << g.instance.groups.size() << " limit=" << *g.instance.makespan_limit
             << '\n';
        return kOk;
    }

    int random(const GenerateArgs& a) {
        Instance inst = random_instance({a.vertices, a.dc, a.agents, a.seed});
        write_generated(a.output, serialize_instance(inst), ".mapf", nullptr, std::nullopt);
        return kOk;
    }

    int bench(const BenchArgs& a) {
        if (!fs::is_directory(a.directory)) throw UsageError("not a directory: " + a.directory);
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(a.directory))
            if (entry.is_regular_file() && entry.path().extension() == ".mapf")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        out_ << "instance\talgo\tfeasible\tmakespan\tstates\tms\n";
        bool mismatch = false, guard = false;
        for (const auto& path : files) {
            Instance inst = parse_instance(read_file(path.string()));
            RunReport oracle = run_solver(inst, "oracle", a.state_limit);
            RunReport fpt = run_solver(inst, "fpt", a.state_limit);
            for (const RunReport* r : {&oracle, &fpt}) {
                out_ << path.filename().string() << '\t' << r->algorithm << '\t'
                     << (r->resource_guard ? "guard" : r->feasible ? "yes" : "no") << '\t';
                if (r->makespan) out_ << *r->makespan;
                else out_ << '-';
                out_ << '\t' << r->states << '\t' << std::fixed << std::setprecision(1) << r->ms
                     << '\n';
            }
            if (oracle.resource_guard || fpt.resource_guard) {
                guard = true;
                continue;
            }
            if (oracle.feasible != fpt.feasible || oracle.makespan != fpt.makespan) {
                mismatch = true;
                err_ << "mismatch: " << path.filename().string() << '\n';
            }
        }
        if (mismatch) return kNo;
        return guard ? kGuard : kOk;
    }

private:
    void emit(const std::string& target, const std::string& text) {
        if (target == "-") out_ << text;
        else write_file(target, text);
    }

    // `-` prints the instance only; otherwise PREFIX<ext>, PREFIX.reg and
    // PREFIX.sched are written.
    void write_generated(const std::string& output, const std::string& instance,
                         const std::string& ext, const GadgetRegistry* registry,
                         const std::optional<Schedule>& witness) {
        if (output == "-") {
            out_ << instance;
            return;
        }
        write_file(output + ext, instance);
        if (registry) write_file(output + ".reg", serialize_registry(*registry));
        if (witness) write_file(output + ".sched", serialize_schedule(*witness));
    }

    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Makespan-optimal multi-agent path finding on graphs close to a clique", "dcmapf"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print the schedule");
    solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
    solve_cmd->add_option("--algo", solve.algo, "oracle, clique, fpt or auto")
        ->check(CLI::IsMember({"oracle", "clique", "fpt", "auto"}));
    solve_cmd->add_option("-o,--output", solve.output, "Schedule file, - for standard output");
    solve_cmd->add_option("--state-limit", solve.state_limit, "Search state guard");

    ValidateArgs validate;
    auto* validate_cmd = app.add_subcommand("validate", "Check a schedule against an instance");
    validate_cmd->add_option("instance", validate.instance, "Instance file")->required();
    validate_cmd->add_option("schedule", validate.schedule, "Schedule file")->required();

    GenerateArgs gen;
    auto* gen_cmd = app.add_subcommand("generate", "Generate instances");
    gen_cmd->require_subcommand(1);
    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", gen.output, "Output prefix, - for the instance on standard output");
    };
    auto* tp_cmd = gen_cmd->add_subcommand("three-partition", "Tree instance from 3-Partition values");
    tp_cmd->add_option("--betas", gen.betas, "3n positive values")->required();
    tp_cmd->add_option("--partition", gen.partition, "1-based value indices, grouped in triples");
    tp_cmd->add_flag("--raw", gen.raw, "Skip the value rescaling");
    add_output(tp_cmd);
    auto* pc_cmd = gen_cmd->add_subcommand("pancake", "Tree instance from a prefix reversal problem");
    pc_cmd->add_option("--perm", gen.perm, "Start position of each agent")->required();
    pc_cmd->add_option("--flips", gen.flips, "Number of flips k")->required();
    pc_cmd->add_option("--flip-seq", gen.flip_seq, "Prefix lengths of a sorting sequence");
    add_output(pc_cmd);
    auto* col_cmd = gen_cmd->add_subcommand("colored", "Colored instance from binary strings");
    col_cmd->add_option("--alpha", gen.alpha, "Start string")->required();
    col_cmd->add_option("--beta", gen.beta, "Target string")->required();
    col_cmd->add_option("--flips", gen.flips, "Number of flips k")->required();
    col_cmd->add_option("--flip-seq", gen.flip_seq, "Prefix lengths turning alpha into beta");
    add_output(col_cmd);
    auto* rnd_cmd = gen_cmd->add_subcommand("random", "Seeded random instance");
    rnd_cmd->add_option("--vertices", gen.vertices, "Vertex count")->required();
    rnd_cmd->add_option("--dc", gen.dc, "Distance to clique bound")->required();
    rnd_cmd->add_option("--agents", gen.agents, "Agent count")->required();
    rnd_cmd->add_option("--seed", gen.seed, "Random seed")->required();
    add_output(rnd_cmd);

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Cross-check oracle and fpt on a directory");
    bench_cmd->add_option("directory", bench.directory, "Directory of .mapf files")->required();
    bench_cmd->add_option("--state-limit", bench.state_limit, "Search state guard");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Runner runner(out, err);
    try {
        if (*solve_cmd) return runner.solve(solve);
        if (*validate_cmd) return runner.validate(validate);
        if (*tp_cmd) return runner.three_partition(gen);
        if (*pc_cmd) return runner.pancake(gen);
        if (*col_cmd) return runner.colored(gen);
        if (*rnd_cmd) return runner.random(gen);
        if (*bench_cmd) return runner.bench(bench);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceLimitError& e) {
        err << "resource guard: " << e.what() << '\n';
        return kGuard;
    }
    return kUsage;
}

}  // namespace dcmapf
