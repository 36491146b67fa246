// Command-line front end: family generators, norm evaluation, duality
// computations, extreme-point enumeration, and experiment recipes.
// Exit codes: 0 pass, 1 assertion failure, 2 input error, 3 resource cap.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "combinorm/experiments.hpp"

namespace {

using namespace combinorm;

struct OutputOptions {
    std::string format = "json";
    std::string out;
};

void flatten(const ordered_json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", rows);
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

void emit(const ordered_json& report, const OutputOptions& opt) {
    std::ostringstream body;
    if (opt.format == "json") {
        body << report.dump(2) << "\n";
    } else {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(report, "", rows);
        const char* sep = opt.format == "csv" ? "," : ": ";
        if (opt.format == "csv") body << "key,value\n";
        for (const auto& [k, v] : rows) body << k << sep << v << "\n";
    }
    if (opt.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(opt.out);
        if (!f) throw std::invalid_argument("cannot open " + opt.out);
        f << body.str();
    }
}

std::vector<IndexSet> parse_pieces(const std::string& text) {
    std::vector<IndexSet> pieces;
    std::stringstream outer(text);
    std::string piece;
    while (std::getline(outer, piece, ';')) {
        IndexSet p;
        std::stringstream inner(piece);
        std::string tok;
        while (std::getline(inner, tok, ',')) p.push_back(std::stoi(tok));
        pieces.push_back(canonical(std::move(p)));
    }
    return pieces;
}

SetFamily family_by_name(const std::string& name, int window, int order,
                         const std::string& pieces, int n) {
    if (name == "schreier") return schreier(window);
    if (name == "schreier-order") return schreier_order(order, window);
    if (name == "partition") return partition_family(parse_pieces(pieces), window);
    if (name == "tree") return tree_family(n).family;
    throw CLI::ValidationError("unknown family generator: " + name);
}

int run(int argc, char** argv) {
    CLI::App app{"exact norms induced by hereditary families of finite sets"};
    app.require_subcommand(1);
    OutputOptions out_opt;
    app.add_option("--format", out_opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--out", out_opt.out, "write output to this path");

    // family
    auto* fam_cmd = app.add_subcommand("family", "generate a set family");
    fam_cmd->fallthrough();
    std::string gen, pieces, windows_list;
    int window = 5, order = 1, depth = 1;
    fam_cmd->add_option("generator", gen, "schreier|schreier-order|partition|tree|sum")
        ->required();
    fam_cmd->add_option("--window", window, "window size");
    fam_cmd->add_option("--order", order, "iteration order for schreier-order");
    fam_cmd->add_option("--n", depth, "tree depth");
    fam_cmd->add_option("--pieces", pieces, "partition pieces, e.g. 1;2,3");
    fam_cmd->add_option("--windows", windows_list, "comma list of schreier windows for sum");

    // norm
    auto* norm_cmd = app.add_subcommand("norm", "evaluate a norm on a vector");
    norm_cmd->fallthrough();
    std::string vec_path, fam_path, which = "upper";
    int max_support = 22;
    long long time_cap_ms = -1;
    norm_cmd->add_option("--vector", vec_path, "vector JSON path or -")->required();
    norm_cmd->add_option("--family", fam_path, "family JSON path or -")->required();
    norm_cmd->add_option("--which", which, "lower|upper|sup")
        ->check(CLI::IsMember({"lower", "upper", "sup"}))
        ->capture_default_str();
    norm_cmd->add_option("--max-support", max_support, "bitmask DP support limit");
    norm_cmd->add_option("--time-cap-ms", time_cap_ms, "solver time cap, <0 for none");
    long long node_cap = -1;
    norm_cmd->add_option("--node-cap", node_cap, "branch-and-bound node cap, <0 for none");

    // dualnorm
    auto* dual_cmd = app.add_subcommand("dualnorm", "dual and envelope norm");
    dual_cmd->fallthrough();
    std::string dvec_path, dfam_path;
    dual_cmd->add_option("--vector", dvec_path, "vector JSON path or -")->required();
    dual_cmd->add_option("--family", dfam_path, "family JSON path or -")->required();

    // extremes
    auto* ext_cmd = app.add_subcommand("extremes", "enumerate extreme points");
    ext_cmd->fallthrough();
    std::string efam_path;
    ext_cmd->add_option("--family", efam_path, "family JSON path or -")->required();

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run a named scenario");
    exp_cmd->fallthrough();
    std::string exp_name, exp_family = "schreier", exp_pieces;
    int exp_window = 10, exp_trials = 100, exp_max_n = 3, exp_count = 4,
        exp_max_support = 6, exp_m = 0;
    unsigned exp_seed = 1;
    exp_cmd->add_option("name", exp_name,
                        "notnorm|tree-growth|schreier-witness|l1-blocks|"
                        "quasi-constant-sweep|duality-identities")
        ->required();
    exp_cmd->add_option("--family", exp_family, "family generator for sweeps");
    exp_cmd->add_option("--pieces", exp_pieces, "partition pieces for sweeps");
    exp_cmd->add_option("--window", exp_window, "window size");
    exp_cmd->add_option("--trials", exp_trials, "number of random trials");
    exp_cmd->add_option("--seed", exp_seed, "random seed");
    exp_cmd->add_option("--max-n", exp_max_n, "maximum depth for growth scans");
    exp_cmd->add_option("--n", exp_max_n, "alias of --max-n");
    exp_cmd->add_option("--count", exp_count, "blocks requested by l1-blocks");
    exp_cmd->add_option("--max-support", exp_max_support, "random support cap");
    exp_cmd->add_option("--m", exp_m, "growth parameter for schreier-witness");

    CLI11_PARSE(app, argc, argv);

    if (fam_cmd->parsed()) {
        SetFamily f;
        if (gen == "sum") {
            std::vector<SetFamily> parts;
            std::stringstream ss(windows_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) parts.push_back(schreier(std::stoi(tok)));
            if (parts.empty()) throw std::invalid_argument("--windows required for sum");
            f = disjoint_sum(parts).family;
        } else {
            f = family_by_name(gen, window, order, pieces, depth);
        }
        ordered_json rep = to_json(f);
        ordered_json maxl = ordered_json::array();
        for (const auto& m : f.maximal_sets()) maxl.push_back(to_json(m));
        rep["hereditary"] = f.hereditary();
        rep["covers_window"] = f.covers_window();
        rep["maximal_count"] = maxl.size();
        rep["maximal_sets"] = std::move(maxl);
        emit(rep, out_opt);
        return 0;
    }

    if (norm_cmd->parsed()) {
        SparseVector v = vector_from_json(read_json_source(vec_path));
        SetFamily f = family_from_json(read_json_source(fam_path));
        ordered_json rep{{"which", which}};
        if (which == "lower") {
            rep["value"] = to_string(norm_lower(v, f));
        } else if (which == "sup") {
            rep["value"] = to_string(sup_norm(v));
        } else {
            SolveCaps caps;
            caps.dp_support_limit = max_support;
            caps.time_cap_ms = time_cap_ms;
            caps.node_cap = node_cap;
            BoundedNormResult r = norm_upper_bounded(v, f, caps);
            if (r.status == SolveStatus::Exact) {
                rep["value"] = to_string(r.upper);
                rep["certificate"] = to_json(r.certificate);
            } else {
                rep["status"] = "incomplete";
                rep["lower_bound"] = to_string(r.lower);
                rep["upper_bound"] = to_string(r.upper);
                rep["certificate"] = to_json(r.certificate);
                emit(rep, out_opt);
                return 3;
            }
        }
        emit(rep, out_opt);
        return 0;
    }

    if (dual_cmd->parsed()) {
        SparseVector v = vector_from_json(read_json_source(dvec_path));
        SetFamily f = family_from_json(read_json_source(dfam_path));
        Rational dual = dual_norm(v, f);
        EnvelopeGaugeResult env = envelope_gauge(v, f);
        ordered_json decomp = ordered_json::array();
        for (const auto& [w, e] : env.decomposition)
            decomp.push_back(ordered_json{{"weight", to_string(w)}, {"point", to_json(e)}});
        emit(ordered_json{{"dual_norm", to_string(dual)},
                          {"envelope_gauge", to_string(env.value)},
                          {"strong_duality", dual == env.value},
                          {"decomposition", std::move(decomp)}},
             out_opt);
        return dual == env.value ? 0 : 1;
    }

    if (ext_cmd->parsed()) {
        SetFamily f = family_from_json(read_json_source(efam_path));
        auto pts = extreme_points(f);
        ordered_json arr = ordered_json::array();
        for (const auto& e : pts) arr.push_back(to_json(e));
        emit(ordered_json{{"count", pts.size()}, {"points", std::move(arr)}}, out_opt);
        return 0;
    }

    // experiment
    ExperimentResult r;
    if (exp_name == "notnorm") {
        r = experiment_notnorm();
    } else if (exp_name == "tree-growth") {
        r = experiment_tree_growth(exp_max_n);
    } else if (exp_name == "schreier-witness") {
        r = experiment_schreier_witness(exp_max_n, exp_m);
    } else if (exp_name == "l1-blocks") {
        r = experiment_l1_blocks(exp_count, exp_window, exp_trials, exp_seed);
    } else if (exp_name == "quasi-constant-sweep") {
        SetFamily f = family_by_name(exp_family, exp_window, 1, exp_pieces, exp_max_n);
        r = experiment_quasi_constant_sweep(f, exp_trials, exp_max_support, exp_seed);
    } else if (exp_name == "duality-identities") {
        SetFamily f = family_by_name(exp_family, exp_window, 1, exp_pieces, exp_max_n);
        r = experiment_duality_identities(f, exp_trials, exp_max_support, exp_seed,
                                          exp_family == "partition");
    } else {
        throw CLI::ValidationError("unknown experiment: " + exp_name);
    }
    emit(r.report, out_opt);
    return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const combinorm::ResourceCapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
