// Command-line front end: dataset generation, index construction and
// persistence, querying, and the accuracy/latency benchmark harness.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geraf/autoconfig.hpp"
#include "geraf/eval.hpp"
#include "geraf/forest.hpp"
#include "geraf/io.hpp"
#include "geraf/search.hpp"
#include "geraf/serialize.hpp"
#include "geraf/synthetic.hpp"
#include "geraf/threads.hpp"
#include "geraf/variance.hpp"

namespace {

using namespace geraf;
using json = nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Dataset load_vectors(const std::string& path) {
    if (path.size() >= 6 && path.compare(path.size() - 6, 6, ".bvecs") == 0)
        return load_bvecs(path);
    return load_fvecs(path);
}

struct ParamOverrides {
    std::optional<std::uint32_t> m, t, p, c;
    std::optional<double> epsilon;
    std::optional<bool> rotation, perturb, shuffle;
    std::optional<std::uint64_t> seed;

    void apply(ForestParams& params) const {
        if (m) params.num_trees = *m;
        if (t) params.num_split_dims = *t;
        if (p) params.max_leaf_points = *p;
        if (c) params.max_leaf_checks = *c;
        if (epsilon) params.epsilon = *epsilon;
        if (rotation) params.use_rotation = *rotation;
        if (perturb) params.use_split_perturbation = *perturb;
        if (shuffle) params.use_shuffling = *shuffle;
        if (seed) params.seed = *seed;
    }
};

ParamOverrides read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw FormatError("config " + path + ": " + e.what(), e.byte);
    }
    if (!doc.is_object())
        throw UsageError("config " + path + ": expected a JSON object");

    ParamOverrides over;
    for (const auto& [key, value] : doc.items()) {
        if (key == "m") over.m = value.get<std::uint32_t>();
        else if (key == "t") over.t = value.get<std::uint32_t>();
        else if (key == "p") over.p = value.get<std::uint32_t>();
        else if (key == "c") over.c = value.get<std::uint32_t>();
        else if (key == "epsilon") over.epsilon = value.get<double>();
        else if (key == "rotation") over.rotation = value.get<bool>();
        else if (key == "perturb") over.perturb = value.get<bool>();
        else if (key == "shuffle") over.shuffle = value.get<bool>();
        else if (key == "seed") over.seed = value.get<std::uint64_t>();
        else throw UsageError("config " + path + ": unknown key '" + key + "'");
    }
    return over;
}

void print_params(std::ostream& out, const ForestParams& params) {
    out << "m=" << params.num_trees << " t=" << params.num_split_dims
        << " p=" << params.max_leaf_points << " c=" << params.max_leaf_checks
        << " epsilon=" << params.epsilon
        << " rotation=" << (params.use_rotation ? "on" : "off")
        << " perturb=" << (params.use_split_perturbation ? "on" : "off")
        << " shuffle=" << (params.use_shuffling ? "on" : "off")
        << " seed=" << params.seed << "\n";
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
    std::string kind;
    std::uint32_t n = 1000;
    std::uint32_t d = 100;
    std::uint64_t seed = 0;
    double sigma = -1.0; // negative: per-generator default
    std::string out;
};

int run_gen(const GenArgs& args) {
    Rng rng(args.seed);
    Dataset data;
    if (args.kind == "sphere")
        data = args.sigma < 0 ? generate_sphere(args.n, args.d, rng)
                              : generate_sphere(args.n, args.d, rng, args.sigma);
    else
        data = args.sigma < 0 ? generate_klein_bottle(args.n, args.d, rng)
                              : generate_klein_bottle(args.n, args.d, rng, args.sigma);
    save_fvecs(args.out, data);
    std::cout << args.kind << ": n=" << data.size() << " d=" << data.dim() << " -> " << args.out
              << "\n";
    return 0;
}

// -------------------------------------------------------------- build ----

struct BuildArgs {
    std::string data_path;
    std::string index_out;
    std::string config_path;
    bool auto_config = false;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    ParamOverrides explicit_params;
};

ForestParams resolve_params(const Dataset& data, const BuildArgs& args) {
    ForestParams params;
    params.epsilon = args.epsilon;
    if (args.auto_config) {
        const auto variances = compute_variances(data);
        params = configure(make_config_input(data, args.epsilon, variances));
    } else {
        // Explicit mode: every structural knob must be given.
        const auto& e = args.explicit_params;
        if (!e.m || !e.t || !e.p || !e.c)
            throw UsageError("build: give --auto or all of -m, -t, -p, -c");
    }
    if (!args.config_path.empty())
        read_config_file(args.config_path).apply(params);
    args.explicit_params.apply(params);
    params.seed = args.explicit_params.seed.value_or(args.seed);
    return params;
}

int run_build(const BuildArgs& args) {
    const Dataset data = load_vectors(args.data_path);
    std::cout << "dataset: " << args.data_path << " (n=" << data.size() << ", d=" << data.dim()
              << ")\n";
    const ForestParams params = resolve_params(data, args);
    print_params(std::cout, params);

    const auto t0 = std::chrono::steady_clock::now();
    const Forest forest = build_forest(data, params);
    const double secs = seconds_since(t0);
    std::cout << "build: " << secs << " s (threads=" << effective_threads() << ")\n";

    save_forest(forest, args.index_out);
    std::cout << "index: " << args.index_out << " ("
              << std::filesystem::file_size(args.index_out) << " bytes)\n";
    return 0;
}

// -------------------------------------------------------------- query ----

struct QueryArgs {
    std::string index_path;
    std::string data_path;
    std::string query_path;
    std::string out;
    std::size_t k = 1;
    std::optional<std::uint32_t> c;
    std::optional<double> epsilon;
};

int run_query(const QueryArgs& args) {
    const Dataset data = load_vectors(args.data_path);
    const Forest forest = load_forest(args.index_path, data);
    const Dataset queries = load_vectors(args.query_path);

    SearchOptions options;
    options.max_leaf_checks = args.c;
    options.epsilon = args.epsilon;

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!args.out.empty()) {
        file.open(args.out);
        if (!file)
            throw std::runtime_error("cannot open for writing: " + args.out);
        out = &file;
    }

    *out << "query,rank,index,sq_dist\n";
    QueryScratch scratch;
    out->precision(9);
    for (index_t qi = 0; qi < queries.size(); ++qi) {
        const auto found = search(forest, queries.point(qi), args.k, scratch, options);
        for (std::size_t rank = 0; rank < found.size(); ++rank)
            *out << qi << ',' << rank << ',' << found[rank].index << ',' << found[rank].sq_dist
                 << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- bench ----

struct BenchArgs {
    std::string data_path;
    std::string query_path;
    std::string out;
    std::vector<double> epsilons{0.0};
    std::size_t k = 1;
    bool auto_config = true;
    bool table = false;
    std::uint64_t seed = 0;
    ParamOverrides explicit_params;
};

int run_bench(const BenchArgs& args) {
    const Dataset data = load_vectors(args.data_path);
    const Dataset queries = load_vectors(args.query_path);
    if (queries.empty())
        throw UsageError("bench: empty query set");

    std::cerr << "ground truth: n=" << data.size() << " queries=" << queries.size()
              << " k=" << args.k << "\n";
    const GroundTruth truth = compute_ground_truth(data, queries, args.k);

    std::vector<double> variances;
    if (args.auto_config)
        variances = compute_variances(data);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!args.out.empty()) {
        file.open(args.out);
        if (!file)
            throw std::runtime_error("cannot open for writing: " + args.out);
        out = &file;
    }

    const std::string name = std::filesystem::path(args.data_path).stem().string();
    *out << report_csv_header() << "\n";

    struct TableRow {
        double epsilon;
        EvalReport report;
    };
    std::vector<TableRow> rows;

    // One forest per distinct structural parameter set: epsilon only
    // affects the search, so consecutive epsilons often share the build.
    std::optional<Forest> forest;
    ForestParams built_params;
    double build_secs = 0.0;

    for (const double epsilon : args.epsilons) {
        ForestParams params;
        if (args.auto_config)
            params = configure(make_config_input(data, epsilon, variances));
        args.explicit_params.apply(params);
        params.seed = args.explicit_params.seed.value_or(args.seed);
        params.epsilon = epsilon;

        const bool reusable =
            forest && params.num_trees == built_params.num_trees &&
            params.num_split_dims == built_params.num_split_dims &&
            params.max_leaf_points == built_params.max_leaf_points &&
            params.use_rotation == built_params.use_rotation &&
            params.use_split_perturbation == built_params.use_split_perturbation &&
            params.use_shuffling == built_params.use_shuffling &&
            params.seed == built_params.seed;
        if (!reusable) {
            const auto t0 = std::chrono::steady_clock::now();
            forest.emplace(build_forest(data, params));
            build_secs = seconds_since(t0);
            built_params = params;
        } else {
            forest->params = params; // adopt the new c / epsilon defaults
        }

        EvalReport report = evaluate(*forest, queries, truth, args.k, epsilon);
        report.build_seconds = build_secs;
        *out << report_csv_row(name, data.size(), data.dim(), params, epsilon, report) << "\n";
        rows.push_back({epsilon, report});
    }

    if (args.table) {
        std::cout << "# epsilon miss_pct approx_miss_pct query_us_mean\n";
        char line[128];
        for (const TableRow& row : rows) {
            std::snprintf(line, sizeof line, "%-9g %-9.3f %-15.3f %-13.2f\n", row.epsilon,
                          row.report.miss_pct, row.report.approx_miss_pct,
                          row.report.query_us_mean);
            std::cout << line;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized randomized k-d forests for approximate nearest neighbors"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset (fvecs)");
    gen_cmd->add_option("kind", gen.kind, "sphere or klein")
        ->required()
        ->check(CLI::IsMember({"sphere", "klein"}));
    gen_cmd->add_option("--n", gen.n, "number of points");
    gen_cmd->add_option("--d", gen.d, "dimension");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--sigma", gen.sigma, "noise standard deviation override");
    gen_cmd->add_option("--out", gen.out, "output fvecs path")->required();

    BuildArgs build;
    CLI::App* build_cmd = app.add_subcommand("build", "build an index from a dataset");
    build_cmd->add_option("--data", build.data_path, "dataset (fvecs/bvecs)")->required();
    build_cmd->add_flag("--auto", build.auto_config, "pick m, t, p, c automatically");
    build_cmd->add_option("-m", build.explicit_params.m, "number of trees");
    build_cmd->add_option("-t", build.explicit_params.t, "split dimensions");
    build_cmd->add_option("-p", build.explicit_params.p, "max points per leaf");
    build_cmd->add_option("-c", build.explicit_params.c, "max leaf checks");
    build_cmd->add_option("--epsilon", build.epsilon, "approximation factor");
    build_cmd->add_flag("--rotation,!--no-rotation", build.explicit_params.rotation,
                        "random reflection per tree");
    build_cmd->add_flag("--perturb,!--no-perturb", build.explicit_params.perturb,
                        "randomized split values");
    build_cmd->add_flag("--shuffle,!--no-shuffle", build.explicit_params.shuffle,
                        "random point order per tree (default on)");
    build_cmd->add_option("--seed", build.seed, "master seed");
    build_cmd->add_option("--config", build.config_path,
                          "JSON file overriding individual parameters");
    build_cmd->add_option("--index-out", build.index_out, "output index path")->required();

    QueryArgs query;
    CLI::App* query_cmd = app.add_subcommand("query", "run queries against a saved index");
    query_cmd->add_option("--index", query.index_path, "index file")->required();
    query_cmd->add_option("--data", query.data_path, "dataset the index was built from")
        ->required();
    query_cmd->add_option("--query-file", query.query_path, "queries (fvecs/bvecs)")->required();
    query_cmd->add_option("-k", query.k, "neighbors per query");
    query_cmd->add_option("-c", query.c, "leaf-check budget override");
    query_cmd->add_option("--epsilon", query.epsilon, "approximation factor override");
    query_cmd->add_option("--out", query.out, "write CSV here instead of stdout");

    BenchArgs bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "measure miss rates and latency over an epsilon list");
    bench_cmd->add_option("--data", bench.data_path, "dataset (fvecs/bvecs)")->required();
    bench_cmd->add_option("--queries", bench.query_path, "query set (fvecs/bvecs)")->required();
    bench_cmd->add_option("--epsilon-list", bench.epsilons, "epsilons to sweep")->delimiter(',');
    bench_cmd->add_option("-k", bench.k, "neighbors per query");
    bench_cmd->add_flag("--auto,!--no-auto", bench.auto_config,
                        "auto-configure per epsilon (default on)");
    bench_cmd->add_option("-m", bench.explicit_params.m, "number of trees");
    bench_cmd->add_option("-t", bench.explicit_params.t, "split dimensions");
    bench_cmd->add_option("-p", bench.explicit_params.p, "max points per leaf");
    bench_cmd->add_option("-c", bench.explicit_params.c, "max leaf checks");
    bench_cmd->add_option("--seed", bench.seed, "master seed");
    bench_cmd->add_flag("--table", bench.table, "also print a gnuplot-ready table");
    bench_cmd->add_option("--out", bench.out, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
        if (*gen_cmd) return run_gen(gen);
        if (*build_cmd) return run_build(build);
        if (*query_cmd) return run_query(query);
        if (*bench_cmd) return run_bench(bench);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
