// zipcover command-line front end.
//
// Exit status: 0 success, 1 verification failure, 2 input error,
// 3 internal error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zipcover/zipcover.hpp"

namespace zc = zipcover;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

std::string read_text(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw zc::InputError("cannot read '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw zc::InputError("cannot write '" + path + "'");
    }
}

zc::Filter load_filter(const std::string& path, bool note_pruning) {
    auto filter = zc::parse_filter(read_text(path));
    if (note_pruning && !zc::is_reachable(filter)) {
        std::cerr << "zipcover: note: '" << path << "' has unreachable states; they are pruned\n";
    }
    return filter;
}

zc::SolveMode parse_mode(const std::string& name) {
    return name == "no-repair" ? zc::SolveMode::NoRepair : zc::SolveMode::Full;
}

std::string json_lines(const std::vector<zc::json>& lines) {
    std::string out;
    for (const auto& l : lines) {
        out += l.dump() + "\n";
    }
    return out;
}

struct Common {
    std::string input = "-";
    std::string output;
    std::string mode = "full";
    std::size_t jobs = 1;
    std::string report;
};

void add_mode(CLI::App* cmd, Common& c) {
    cmd->add_option("--mode", c.mode, "full: enumerate Z^2 minus repairable pairs; no-repair: all of Z^2")
        ->check(CLI::IsMember({"full", "no-repair"}))
        ->capture_default_str();
}

int cmd_validate(const Common& c) {
    const auto filter = zc::parse_filter(read_text(c.input));
    std::cout << "ok: " << filter.num_states() << " states, " << filter.num_observations()
              << " observations, " << filter.data().transitions.size() << " transitions\n";
    return kOk;
}

int cmd_minimize(const Common& c, bool cross_check) {
    const auto filter = load_filter(c.input, true);
    zc::SolveOptions options;
    options.mode = parse_mode(c.mode);
    options.jobs = c.jobs;
    options.keep_log = !c.report.empty();
    options.cross_check = cross_check;
    const auto result = zc::minimize_filter(filter, options);
    write_text(c.output, zc::serialize_filter(result.filter));
    if (!c.report.empty()) {
        const auto pruned = zc::prune_unreachable(filter).filter;
        write_text(c.report,
                   json_lines(zc::report_to_json_lines(result.report, zc::instance_from_filter(pruned))));
    }
    return kOk;
}

zc::PairPoset poset_for(const zc::MzccInstance& inst, zc::SolveMode mode, zc::PairSet* repairable,
                        zc::ZipperSystem& zs) {
    zs = zc::ZipperSystem(inst.constraints);
    zc::PairSet r = zs.empty_set();
    if (mode == zc::SolveMode::Full) {
        r = zs.to_set(zc::repairable_pairs(inst.graph, zs.pairs()));
    }
    if (repairable) {
        *repairable = r;
    }
    return zc::condensation_poset(zc::build_pair_graph(zs, zs.full_set() - r));
}

int cmd_graph(const Common& c, const std::string& kind) {
    const auto filter = load_filter(c.input, false);
    if (kind == "filter") {
        write_text(c.output, zc::export_dot(filter));
        return kOk;
    }
    const auto inst = zc::instance_from_filter(filter);
    if (kind == "compat") {
        std::vector<std::string> labels;
        for (zc::StateId s = 0; s < filter.num_states(); ++s) {
            labels.push_back(filter.label(s));
        }
        write_text(c.output, zc::export_dot(inst.graph, inst.constraints, inst.symbols, labels));
        return kOk;
    }
    zc::ZipperSystem zs;
    write_text(c.output, zc::export_dot(poset_for(inst, parse_mode(c.mode), nullptr, zs)));
    return kOk;
}

int cmd_constraints(const Common& c) {
    const auto filter = load_filter(c.input, false);
    const auto inst = zc::instance_from_filter(filter);
    zc::ZipperSystem zs;
    zc::PairSet r;
    const auto poset = poset_for(inst, parse_mode(c.mode), &r, zs);
    const auto sets = zc::pair_sets(inst.constraints);
    zc::json list = zc::json::array();
    for (const auto& z : inst.constraints) {
        list.push_back({{"U", {z.source.first, z.source.second}},
                        {"W", {z.target.first, z.target.second}},
                        {"y", inst.symbols[z.symbol]}});
    }
    zc::json doc = {{"version", zc::kFormatVersion},
                    {"states", filter.num_states()},
                    {"compatible_pairs", inst.graph.edge_count()},
                    {"constraints", list},
                    {"pairs", sets.all.size()},
                    {"sources", sets.sources.size()},
                    {"targets", sets.targets.size()},
                    {"repairable", zc::pairs_to_json(zs.to_pairs(r))},
                    {"domain", zs.size() - r.count()},
                    {"classes", poset.classes.size()},
                    {"height", poset.height},
                    {"width", poset.width},
                    {"bound", zc::prescription_bound(poset.height, poset.width)}};
    write_text(c.output, doc.dump(2) + "\n");
    return kOk;
}

int cmd_enum(const Common& c, std::size_t limit) {
    const auto filter = load_filter(c.input, false);
    const auto inst = zc::instance_from_filter(filter);
    const zc::ZipperSystem zs(inst.constraints);
    zc::PairSet r = zs.empty_set();
    if (parse_mode(c.mode) == zc::SolveMode::Full) {
        r = zs.to_set(zc::repairable_pairs(inst.graph, zs.pairs()));
    }
    const auto pg = zc::build_pair_graph(zs, zs.full_set() - r);
    std::ostringstream out;
    std::size_t index = 0;
    zc::enum_ds(pg, [&](const zc::Prescription& p) {
        if (limit && index >= limit) {
            return false;
        }
        zc::json line = {{"index", index++}};
        line.update(zc::prescription_to_json(p, zs));
        out << line.dump() << "\n";
        return true;
    });
    write_text(c.output, out.str());
    return kOk;
}

int cmd_cover(const Common& c, bool fallback) {
    const auto inst = zc::parse_instance(read_text(c.input));
    zc::SolveOptions options;
    options.mode = parse_mode(c.mode);
    options.jobs = c.jobs;
    options.keep_log = !c.report.empty();
    options.repair_fallback = fallback;
    const auto report = zc::solve_mzcc(inst, options);
    if (report.fell_back) {
        std::cerr << "zipcover: note: repair failed verification; solved without repair\n";
    }
    zc::json doc = {{"version", zc::kFormatVersion},
                    {"size", report.best.size()},
                    {"cover", zc::cover_to_json(report.best)}};
    write_text(c.output, doc.dump() + "\n");
    if (!c.report.empty()) {
        write_text(c.report, json_lines(zc::report_to_json_lines(report, inst)));
    }
    return kOk;
}

int cmd_verify(const std::string& spec_path, const std::string& cand_path) {
    const auto spec = zc::parse_filter(read_text(spec_path));
    const auto cand = zc::parse_filter(read_text(cand_path));
    const auto sim = zc::output_simulates(spec, cand);
    if (sim) {
        std::cout << "ok: candidate output-simulates the specification\n";
        return kOk;
    }
    std::cout << "fail: witness";
    if (sim.witness) {
        if (sim.witness->empty()) {
            std::cout << " (empty sequence)";
        }
        for (auto y : *sim.witness) {
            std::cout << " " << spec.observations()[y];
        }
    }
    std::cout << "\n";
    return kVerifyFailed;
}

int cmd_gen(const Common& c, zc::GenSpec spec, const std::string& spec_file) {
    if (!spec_file.empty()) {
        spec = zc::parse_gen_spec(read_text(spec_file));
    }
    write_text(c.output, zc::serialize_filter(zc::random_filter(spec)));
    return kOk;
}

struct BenchOptions {
    std::size_t n_max = 3;
    std::size_t random = 20;
    std::size_t min_states = 5;
    std::size_t max_states = 8;
    std::uint64_t seed = 1;
    std::string format = "jsonl";
};

int cmd_bench(const Common& c, const BenchOptions& b) {
    if (b.min_states == 0 || b.min_states > b.max_states) {
        throw zc::InputError("--min-states must be positive and at most --max-states");
    }
    zc::SolveOptions options;
    options.mode = parse_mode(c.mode);
    options.jobs = c.jobs;
    options.keep_log = false;

    std::ostringstream out;
    if (b.format == "table") {
        out << std::left << std::setw(8) << "source" << std::setw(8) << "index" << std::setw(8)
            << "states" << std::setw(8) << "solver" << std::setw(8) << "oracle" << std::setw(10)
            << "presc" << "match\n";
    }
    std::size_t mismatches = 0;
    auto run = [&](const std::string& source, std::size_t index, const zc::Filter& f) {
        const auto start = std::chrono::steady_clock::now();
        const auto result = zc::minimize_filter(f, options);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        const auto pruned = zc::prune_unreachable(f).filter;
        const auto oracle = zc::brute_force_mzcc(zc::instance_from_filter(pruned), pruned.num_states());
        const std::size_t oracle_size = oracle ? oracle->size() : 0;
        const bool match = oracle && oracle_size == result.filter.num_states();
        mismatches += match ? 0 : 1;
        if (b.format == "table") {
            out << std::left << std::setw(8) << source << std::setw(8) << index << std::setw(8)
                << pruned.num_states() << std::setw(8) << result.filter.num_states()
                << std::setw(8) << oracle_size << std::setw(10) << result.report.prescriptions
                << (match ? "yes" : "NO") << "\n";
        } else {
            out << zc::json{{"source", source},
                            {"index", index},
                            {"states", pruned.num_states()},
                            {"solver", result.filter.num_states()},
                            {"oracle", oracle_size},
                            {"prescriptions", result.report.prescriptions},
                            {"match", match},
                            {"ms", ms}}
                       .dump()
                << "\n";
        }
    };
    std::size_t index = 0;
    if (b.n_max > 0) {
        zc::enumerate_filters(b.n_max, 2, 2, [&](const zc::Filter& f) { run("enum", index++, f); });
    }
    const std::size_t span = b.max_states - b.min_states + 1;
    for (std::size_t i = 0; i < b.random; ++i) {
        zc::GenSpec spec;
        spec.states = b.min_states + i % span;
        spec.seed = b.seed + i;
        run("random", i, zc::random_filter(spec));
    }
    write_text(c.output, out.str());
    return mismatches == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimize deterministic combinatorial filters via zipped clique covers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "zipcover 1.0");

    Common c;
    std::function<int()> action;

    auto input = [&](CLI::App* cmd) { cmd->add_option("input", c.input, "input file, - for stdin"); };
    auto output = [&](CLI::App* cmd) { cmd->add_option("-o,--output", c.output, "output file"); };

    auto* validate = app.add_subcommand("validate", "check a filter document");
    input(validate);
    validate->callback([&] { action = [&] { return cmd_validate(c); }; });

    bool cross_check = false;
    auto* minimize = app.add_subcommand("minimize", "minimize a filter");
    input(minimize);
    output(minimize);
    add_mode(minimize, c);
    minimize->add_option("--jobs", c.jobs, "parallel prescription evaluations")
        ->check(CLI::PositiveNumber);
    minimize->add_option("--emit-report", c.report, "write a JSON-lines solve report");
    minimize->add_flag("--cross-check", cross_check, "also solve in the other mode and compare");
    minimize->callback([&] { action = [&] { return cmd_minimize(c, cross_check); }; });

    std::string kind = "compat";
    auto* graph = app.add_subcommand("graph", "export DOT");
    input(graph);
    output(graph);
    add_mode(graph, c);
    graph->add_option("--kind", kind, "compat, filter or poset")
        ->check(CLI::IsMember({"compat", "filter", "poset"}))
        ->capture_default_str();
    graph->callback([&] { action = [&] { return cmd_graph(c, kind); }; });

    auto* constraints = app.add_subcommand("constraints", "zipper constraint and poset statistics");
    input(constraints);
    output(constraints);
    add_mode(constraints, c);
    constraints->callback([&] { action = [&] { return cmd_constraints(c); }; });

    std::size_t limit = 0;
    auto* enumerate = app.add_subcommand("enum", "stream downstream-enabled prescriptions");
    input(enumerate);
    output(enumerate);
    add_mode(enumerate, c);
    enumerate->add_option("--limit", limit, "stop after this many (0: no limit)");
    enumerate->callback([&] { action = [&] { return cmd_enum(c, limit); }; });

    bool fallback = false;
    auto* cover = app.add_subcommand("cover", "solve a raw zipped clique cover instance");
    input(cover);
    output(cover);
    add_mode(cover, c);
    cover->add_option("--jobs", c.jobs, "parallel prescription evaluations")
        ->check(CLI::PositiveNumber);
    cover->add_option("--emit-report", c.report, "write a JSON-lines solve report");
    cover->add_flag("--fallback", fallback,
                    "if a repaired cover fails verification, solve without repair");
    cover->callback([&] { action = [&] { return cmd_cover(c, fallback); }; });

    std::string spec_path;
    std::string cand_path;
    auto* verify = app.add_subcommand("verify", "check that CANDIDATE output-simulates SPEC");
    verify->add_option("spec", spec_path, "specification filter")->required();
    verify->add_option("candidate", cand_path, "candidate filter")->required();
    verify->callback([&] { action = [&] { return cmd_verify(spec_path, cand_path); }; });

    zc::GenSpec gen_spec;
    std::string gen_file;
    auto* gen = app.add_subcommand("gen", "generate a random filter");
    output(gen);
    gen->add_option("--states", gen_spec.states)->capture_default_str();
    gen->add_option("--alphabet", gen_spec.alphabet)->capture_default_str();
    gen->add_option("--outputs", gen_spec.outputs)->capture_default_str();
    gen->add_option("--density", gen_spec.density)->capture_default_str();
    gen->add_option("--seed", gen_spec.seed)->capture_default_str();
    gen->add_option("--spec", gen_file, "JSON generator spec; overrides the flags");
    gen->callback([&] { action = [&] { return cmd_gen(c, gen_spec, gen_file); }; });

    BenchOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "compare solver against the brute-force oracle");
    output(bench);
    add_mode(bench, c);
    bench->add_option("--jobs", c.jobs)->check(CLI::PositiveNumber);
    bench->add_option("--n-max", bench_opts.n_max, "exhaustive filters up to this many states (0..4)")
        ->capture_default_str();
    bench->add_option("--random", bench_opts.random, "number of random filters")->capture_default_str();
    bench->add_option("--min-states", bench_opts.min_states)->capture_default_str();
    bench->add_option("--max-states", bench_opts.max_states)->capture_default_str();
    bench->add_option("--seed", bench_opts.seed, "first random seed")->capture_default_str();
    bench->add_option("--format", bench_opts.format)
        ->check(CLI::IsMember({"jsonl", "table"}))
        ->capture_default_str();
    bench->callback([&] { action = [&] { return cmd_bench(c, bench_opts); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        return action();
    } catch (const zc::Error& e) {
        std::cerr << "zipcover: " << zc::to_string(e.kind()) << ": " << e.what() << "\n";
        switch (e.kind()) {
            case zc::ErrorKind::Input:
            case zc::ErrorKind::Size:
                return kInputError;
            default:
                return kInternalError;
        }
    } catch (const std::exception& e) {
        std::cerr << "zipcover: internal error: " << e.what() << "\n";
        return kInternalError;
    }
}
