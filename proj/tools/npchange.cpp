// npchange: offline change-point detection in nonparametric regression.
//
// Subcommands: detect, segment, bandwidth, simulate, gen, replay.
// Exit codes: 0 success, 2 I/O error, 3 input schema error, 4 config error,
// 5 series too short for the trimmed scan.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <npchange/npchange.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace npchange;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitSchema = 3;
constexpr int kExitConfig = 4;
constexpr int kExitInfeasible = 5;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_human(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// CSV input

struct LoadedSeries {
    std::vector<double> x, y;
    std::vector<std::string> labels; // empty when no label column requested
    std::string digest;
    std::size_t rows = 0;
};

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

LoadedSeries load_csv(const std::string& path, const std::string& x_col, const std::string& y_col,
                      const std::string& label_col) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open input file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    LoadedSeries out;
    out.digest = fnv1a_hex(content);

    std::istringstream lines(content);
    std::string line;
    if (!std::getline(lines, line))
        throw SchemaError("empty input file: " + path);
    const auto header = split_csv_row(line);
    auto find_col = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return i;
        throw SchemaError("column '" + name + "' not found in header of " + path);
    };
    const std::size_t xi = find_col(x_col);
    const std::size_t yi = find_col(y_col);
    std::optional<std::size_t> li;
    if (!label_col.empty())
        li = find_col(label_col);

    std::size_t row = 1;
    auto parse = [&](const std::string& field, const std::string& col) {
        const char* begin = field.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            throw SchemaError("row " + std::to_string(row) + ": cannot parse " + col +
                              " value '" + field + "'");
        return v;
    };
    while (std::getline(lines, line)) {
        ++row;
        if (line.empty() || line == "\r")
            continue; // blank separator lines only; partial rows still error below
        const auto fields = split_csv_row(line);
        if (xi >= fields.size() || yi >= fields.size() ||
            (li && *li >= fields.size()))
            throw SchemaError("row " + std::to_string(row) + ": too few columns");
        out.x.push_back(parse(fields[xi], x_col));
        out.y.push_back(parse(fields[yi], y_col));
        if (li)
            out.labels.push_back(fields[*li]);
        ++out.rows;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shared flag bundles

struct InputFlags {
    std::string path;
    std::string x_col = "x";
    std::string y_col = "y";
    std::string label_col;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", path, "input CSV file")->required();
        cmd->add_option("--x-col", x_col, "regressor column name");
        cmd->add_option("--y-col", y_col, "response column name");
        cmd->add_option("--label-col", label_col,
                        "optional label column passed through to outputs");
    }
};

struct DetectionFlags {
    std::string bandwidth = "auto"; // real or "auto"
    std::size_t grid_m = 100;
    double lo_pct = 5.0;
    double hi_pct = 95.0;
    double trim = 0.05;
    std::string aggregation = "ss";
    std::string estimator = "nw";
    std::size_t permutations = 200;
    double level = 0.99;
    std::uint64_t seed = 0;
    std::size_t bandwidth_candidates = 50;

    void attach(CLI::App* cmd) {
        cmd->add_option("--bandwidth", bandwidth, "kernel bandwidth, or 'auto'");
        cmd->add_option("--grid-m", grid_m, "number of evaluation grid points");
        cmd->add_option("--lo-pct", lo_pct, "lower grid percentile");
        cmd->add_option("--hi-pct", hi_pct, "upper grid percentile");
        cmd->add_option("--trim", trim, "trim fraction delta in (0, 0.5)");
        cmd->add_option("--aggregation", aggregation, "ss | sup")
            ->check(CLI::IsMember({"ss", "sup"}));
        cmd->add_option("--estimator", estimator, "nw | ll")
            ->check(CLI::IsMember({"nw", "ll"}));
        cmd->add_option("--permutations", permutations, "permutation count for the threshold");
        cmd->add_option("--level", level, "threshold quantile level");
        cmd->add_option("--seed", seed, "master RNG seed");
        cmd->add_option("--bandwidth-candidates", bandwidth_candidates,
                        "candidate count for --bandwidth auto");
    }

    DetectionConfig config(double resolved_bandwidth) const {
        DetectionConfig c;
        c.bandwidth = resolved_bandwidth;
        c.grid_params = GridParams{grid_m, lo_pct, hi_pct};
        c.trim_fraction = trim;
        c.aggregation = aggregation == "sup" ? Aggregation::Supremum : Aggregation::SumOfSquares;
        c.estimator = estimator == "ll" ? Estimator::LocalLinear : Estimator::NadarayaWatson;
        return c;
    }

    PermutationPolicy policy() const { return PermutationPolicy{permutations, level, seed}; }
};

json config_json(const DetectionConfig& c) {
    json j;
    j["bandwidth"] = c.bandwidth;
    j["kernel"] = "epanechnikov";
    j["grid_m"] = c.grid_params.m;
    j["lo_pct"] = c.grid_params.lo_pct;
    j["hi_pct"] = c.grid_params.hi_pct;
    j["trim_fraction"] = c.trim_fraction;
    j["aggregation"] = c.aggregation == Aggregation::Supremum ? "sup" : "ss";
    j["estimator"] = c.estimator == Estimator::LocalLinear ? "ll" : "nw";
    return j;
}

// ---------------------------------------------------------------------------
// Output helpers

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << content;
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const std::vector<std::string>& argv, const json& config,
                    std::uint64_t seed, const LoadedSeries* input,
                    const std::string& input_path) {
    json m;
    m["command"] = command;
    m["argv"] = argv;
    m["config"] = config;
    m["seed"] = seed;
    m["library_version"] = npchange::version;
    if (input) {
        json in;
        in["path"] = input_path;
        in["digest"] = input->digest;
        in["rows"] = input->rows;
        m["input"] = in;
    }
    write_file(dir / "manifest.json", m.dump(2) + "\n");
}

std::string profile_tsv(const CusumProfile& profile) {
    std::string out = "t\tW\n";
    for (std::size_t i = 0; i < profile.size(); ++i)
        out += std::to_string(profile.t_at(i)) + "\t" + format_full(profile.values[i]) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Subcommand state

struct CommonOut {
    std::string out_dir = ".";
    void attach(CLI::App* cmd) {
        cmd->add_option("--out-dir", out_dir, "output directory (created if missing)");
    }
    fs::path prepare() const {
        fs::path dir(out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create output directory: " + out_dir);
        return dir;
    }
};

double resolve_bandwidth(const PairedSeries& series, const DetectionFlags& det) {
    if (det.bandwidth == "auto")
        return select_bandwidth(series, det.config(1.0), det.bandwidth_candidates).h_star;
    char* end = nullptr;
    const double h = std::strtod(det.bandwidth.c_str(), &end);
    if (end == det.bandwidth.c_str() || *end != '\0' || !(h > 0.0))
        throw ConfigError("--bandwidth must be a positive real or 'auto'");
    return h;
}

// argv as recorded in manifests (command first, --out-dir stripped).
std::vector<std::string> manifest_argv(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--out-dir") {
            ++i; // skip value
            continue;
        }
        if (args[i].rfind("--out-dir=", 0) == 0)
            continue;
        out.push_back(args[i]);
    }
    return out;
}

int run_command(const std::vector<std::string>& args);

void run_detect(const InputFlags& in, const DetectionFlags& det, const CommonOut& outflags,
                const std::vector<std::string>& argv) {
    const fs::path dir = outflags.prepare();
    const LoadedSeries loaded = load_csv(in.path, in.x_col, in.y_col, in.label_col);
    const PairedSeries series(loaded.x, loaded.y);

    const double h = resolve_bandwidth(series, det);
    const DetectionConfig config = det.config(h);
    const DetectionResult result = detect_full(series, config, det.policy());

    json summary;
    summary["command"] = "detect";
    summary["n"] = result.outcome.n;
    summary["change_detected"] = result.outcome.change_detected;
    if (result.outcome.k_hat) {
        summary["k_hat"] = *result.outcome.k_hat;
        if (!loaded.labels.empty())
            summary["k_hat_label"] = loaded.labels[*result.outcome.k_hat - 1];
    } else {
        summary["k_hat"] = nullptr;
    }
    summary["max_stat"] = result.outcome.max_stat;
    summary["threshold"] = result.outcome.threshold;
    summary["config"] = config_json(config);
    summary["permutations"] = det.permutations;
    summary["level"] = det.level;
    summary["seed"] = det.seed;
    summary["input_digest"] = loaded.digest;
    write_file(dir / "summary.json", summary.dump(2) + "\n");

    std::string human;
    human += "detect: n=" + std::to_string(result.outcome.n) + "\n";
    human += "  bandwidth  " + format_human(h) + (det.bandwidth == "auto" ? " (auto)" : "") + "\n";
    human += "  max W(t)   " + format_human(result.outcome.max_stat) + "\n";
    human += "  threshold  " + format_human(result.outcome.threshold) + "\n";
    if (result.outcome.change_detected) {
        human += "  change detected at k=" + std::to_string(*result.outcome.k_hat);
        if (!loaded.labels.empty())
            human += " (" + loaded.labels[*result.outcome.k_hat - 1] + ")";
        human += "\n";
    } else {
        human += "  no change detected\n";
    }
    write_file(dir / "summary.txt", human);

    write_file(dir / "profile.tsv", profile_tsv(result.profile));
    std::string maxima;
    for (double v : result.threshold.maxima)
        maxima += format_full(v) + "\n";
    write_file(dir / "perm_maxima.txt", maxima);
    write_manifest(dir, "detect", argv, summary["config"], det.seed, &loaded, in.path);
    std::cout << human;
}

void run_segment(const InputFlags& in, const DetectionFlags& det, const CommonOut& outflags,
                 std::size_t min_segment, bool rebandwidth,
                 const std::vector<std::string>& argv) {
    const fs::path dir = outflags.prepare();
    const LoadedSeries loaded = load_csv(in.path, in.x_col, in.y_col, in.label_col);
    const PairedSeries series(loaded.x, loaded.y);

    const double h = resolve_bandwidth(series, det);
    const DetectionConfig config = det.config(h);
    SegmentationOptions options;
    options.min_segment = min_segment;
    options.rebandwidth_per_segment = rebandwidth;
    options.bandwidth_candidates = det.bandwidth_candidates;
    const SegmentationResult result =
        binary_segmentation(series, config, det.policy(), options);

    std::string table = "start\tend\tlength\tstop\tk_hat\tmax_stat\tthreshold\n";
    for (const auto& rec : result.nodes) {
        table += std::to_string(rec.start) + "\t" + std::to_string(rec.end) + "\t" +
                 std::to_string(rec.end - rec.start + 1) + "\t" + to_string(rec.stop) + "\t" +
                 (rec.k_hat ? std::to_string(*rec.k_hat) : std::string("-")) + "\t" +
                 format_full(rec.max_stat) + "\t" + format_full(rec.threshold) + "\n";
    }
    write_file(dir / "segments.tsv", table);

    std::string cps;
    for (std::size_t k : result.change_points) {
        cps += std::to_string(k);
        if (!loaded.labels.empty())
            cps += "\t" + loaded.labels[k - 1];
        cps += "\n";
    }
    write_file(dir / "changepoints.txt", cps);

    json summary;
    summary["command"] = "segment";
    summary["n"] = series.size();
    summary["change_points"] = result.change_points;
    summary["tree_depth"] = result.tree_depth;
    summary["n_segments"] = result.segments.size();
    summary["config"] = config_json(config);
    summary["min_segment"] = min_segment;
    summary["rebandwidth_per_segment"] = rebandwidth;
    summary["permutations"] = det.permutations;
    summary["level"] = det.level;
    summary["seed"] = det.seed;
    summary["input_digest"] = loaded.digest;
    write_file(dir / "summary.json", summary.dump(2) + "\n");

    std::string human = "segment: n=" + std::to_string(series.size()) + ", " +
                        std::to_string(result.change_points.size()) + " change point(s)\n";
    for (std::size_t k : result.change_points) {
        human += "  k=" + std::to_string(k);
        if (!loaded.labels.empty())
            human += " (" + loaded.labels[k - 1] + ")";
        human += "\n";
    }
    write_file(dir / "summary.txt", human);
    write_manifest(dir, "segment", argv, summary["config"], det.seed, &loaded, in.path);
    std::cout << human;
}

void run_bandwidth(const InputFlags& in, const DetectionFlags& det, const CommonOut& outflags,
                   std::size_t candidates, const std::vector<std::string>& argv) {
    const fs::path dir = outflags.prepare();
    const LoadedSeries loaded = load_csv(in.path, in.x_col, in.y_col, in.label_col);
    const PairedSeries series(loaded.x, loaded.y);

    const BandwidthSearch search = select_bandwidth(series, det.config(1.0), candidates);

    std::string tsv = "h\tF\n";
    for (std::size_t j = 0; j < search.h_grid.size(); ++j)
        tsv += format_full(search.h_grid[j]) + "\t" + format_full(search.f_values[j]) + "\n";
    write_file(dir / "fh.tsv", tsv);

    json summary;
    summary["command"] = "bandwidth";
    summary["n"] = series.size();
    summary["h_star"] = search.h_star;
    summary["candidates"] = candidates;
    summary["config"] = config_json(det.config(search.h_star));
    summary["input_digest"] = loaded.digest;
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    write_file(dir / "summary.txt",
               "bandwidth: h_star = " + format_human(search.h_star) + " over " +
                   std::to_string(candidates) + " candidates\n");
    write_manifest(dir, "bandwidth", argv, summary["config"], det.seed, &loaded, in.path);
    std::cout << "h_star = " << format_human(search.h_star) << "\n";
}

struct SimulateFlags {
    std::string mode = "bias"; // bias | pdc | scaling
    std::string method = "nwss";
    std::string dgp = "arma"; // arma | arfima
    std::string model = "m41";
    double delta_phi = 0.0;
    std::size_t n = 500;
    double theta = 0.4;
    std::size_t replications = 200;
    double h = 1.0;
    double trim = 0.05;
    std::size_t grid_m = 100;
    std::size_t permutations = 200;
    double level = 0.99;
    double omega = 0.2;
    std::string n_list = "200,500,1000,2000";
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--mode", mode, "bias | pdc | scaling")
            ->check(CLI::IsMember({"bias", "pdc", "scaling"}));
        cmd->add_option("--method", method, "nwss | nwsup | llss | llsup")
            ->check(CLI::IsMember({"nwss", "nwsup", "llss", "llsup"}));
        cmd->add_option("--dgp", dgp, "arma | arfima")
            ->check(CLI::IsMember({"arma", "arfima"}));
        cmd->add_option("--model", model, "m41 | m42")->check(CLI::IsMember({"m41", "m42"}));
        cmd->add_option("--delta-phi", delta_phi, "change magnitude for m42");
        cmd->add_option("--n", n, "sample size");
        cmd->add_option("--theta", theta, "relative change position in (0, 1)");
        cmd->add_option("--N", replications, "replication count");
        cmd->add_option("--bandwidth", h, "bandwidth");
        cmd->add_option("--trim", trim, "trim fraction");
        cmd->add_option("--grid-m", grid_m, "grid point count");
        cmd->add_option("--permutations", permutations, "permutations (pdc mode)");
        cmd->add_option("--level", level, "threshold quantile level (pdc mode)");
        cmd->add_option("--omega", omega, "bandwidth exponent h=n^-omega (scaling mode)");
        cmd->add_option("--n-list", n_list, "comma-separated sample sizes (scaling mode)");
        cmd->add_option("--seed", seed, "master seed");
    }

    ExperimentSpec spec() const {
        ExperimentSpec s;
        if (dgp == "arma") {
            s.regressor_process = Arma11{0.5, 0.5, std::sqrt(3.0 / 7.0)};
            s.regressor_burn_in = 500;
            s.noise_process = Arma11{0.0, 0.0, 0.5};
            s.noise_burn_in = 500;
        } else {
            s.regressor_process =
                Arfima0d0{0.15, std::sqrt(std::tgamma(0.85) * std::tgamma(0.85) /
                                          std::tgamma(0.7))};
            s.regressor_burn_in = 1000;
            s.noise_process = Arfima0d0{0.35, 0.1};
            s.noise_burn_in = 1000;
        }
        if (model == "m41" && delta_phi != 0.0)
            throw ConfigError("--delta-phi applies to --model m42 only");
        s.model.model = model == "m41" ? ChangeModel::LinearToQuadratic
                                       : ChangeModel::QuadraticShift;
        s.model.theta = theta;
        s.model.delta_phi = delta_phi;
        s.n = n;
        s.method = method_from_string(method);
        s.detection.bandwidth = h;
        s.detection.trim_fraction = trim;
        s.detection.grid_params.m = grid_m;
        s.replications = replications;
        s.master_seed = seed;
        if (mode == "pdc")
            s.policy = PermutationPolicy{permutations, level, seed};
        return s;
    }
};

json report_json(const ExperimentReport& report, const SimulateFlags& sim) {
    json j;
    j["command"] = "simulate";
    j["mode"] = sim.mode;
    j["method"] = sim.method;
    j["dgp"] = sim.dgp;
    j["model"] = sim.model;
    j["delta_phi"] = sim.delta_phi;
    j["n"] = sim.n;
    j["theta"] = sim.theta;
    j["true_k"] = report.true_k;
    j["replications"] = report.replications;
    auto put = [&](const char* key, double v) {
        if (std::isnan(v))
            j[key] = nullptr;
        else
            j[key] = v;
    };
    put("bias", report.bias);
    put("abias", report.abias);
    put("bias_sd", report.bias_sd);
    put("abias_sd", report.abias_sd);
    put("pdc", report.pdc);
    j["seed"] = sim.seed;
    return j;
}

void run_simulate(const SimulateFlags& sim, const CommonOut& outflags,
                  const std::vector<std::string>& argv) {
    const fs::path dir = outflags.prepare();

    if (sim.mode == "scaling") {
        std::vector<std::size_t> ns;
        std::stringstream ss(sim.n_list);
        std::string tok;
        while (std::getline(ss, tok, ','))
            ns.push_back(static_cast<std::size_t>(std::stoull(tok)));
        if (ns.empty())
            throw ConfigError("--n-list is empty");
        ExperimentSpec spec = sim.spec();
        const auto points = scaling_probe(ns, spec, sim.omega);
        std::string tsv = "n\tmean_max_stat\tratio\n";
        json rows = json::array();
        for (const auto& p : points) {
            tsv += std::to_string(p.n) + "\t" + format_full(p.mean_max_stat) + "\t" +
                   format_full(p.ratio) + "\n";
            rows.push_back({{"n", p.n},
                            {"mean_max_stat", p.mean_max_stat},
                            {"ratio", p.ratio}});
        }
        write_file(dir / "scaling.tsv", tsv);
        json summary;
        summary["command"] = "simulate";
        summary["mode"] = "scaling";
        summary["omega"] = sim.omega;
        summary["replications"] = sim.replications;
        summary["seed"] = sim.seed;
        summary["points"] = rows;
        write_file(dir / "report.json", summary.dump(2) + "\n");
        write_file(dir / "report.txt", tsv);
        write_manifest(dir, "simulate", argv, summary, sim.seed, nullptr, "");
        std::cout << tsv;
        return;
    }

    const ExperimentSpec spec = sim.spec();
    const ExperimentReport report =
        sim.mode == "pdc" ? run_pdc_experiment(spec) : run_bias_experiment(spec);

    const json summary = report_json(report, sim);
    write_file(dir / "report.json", summary.dump(2) + "\n");

    std::string human = "simulate " + sim.mode + ": " + sim.method + ", dgp=" + sim.dgp +
                        ", model=" + sim.model + ", n=" + std::to_string(sim.n) +
                        ", theta=" + format_human(sim.theta) + ", N=" +
                        std::to_string(report.replications) + "\n";
    human += "  Bias    " + format_human(report.bias) + "\n";
    human += "  ABias   " + format_human(report.abias) + "\n";
    human += "  BiasSd  " + format_human(report.bias_sd) + "\n";
    human += "  ABiasSd " + format_human(report.abias_sd) + "\n";
    if (!std::isnan(report.pdc))
        human += "  PDC     " + format_human(report.pdc) + "\n";
    write_file(dir / "report.txt", human);

    std::string devs;
    for (double d : report.khat_deviation)
        devs += format_full(d) + "\n";
    write_file(dir / "khat_deviations.txt", devs);
    write_manifest(dir, "simulate", argv, summary, sim.seed, nullptr, "");
    std::cout << human;
}

void run_gen(const SimulateFlags& sim, const std::string& out_path) {
    ExperimentSpec spec = sim.spec();
    const PairedSeries series = simulate_replication(spec, 0);
    std::string csv = "t,x,y\n";
    for (std::size_t t = 0; t < series.size(); ++t)
        csv += std::to_string(t + 1) + "," + format_full(series.x[t]) + "," +
               format_full(series.y[t]) + "\n";
    write_file(out_path, csv);
    std::cout << "wrote " << series.size() << " rows to " << out_path << "\n";
}

int run_replay(const std::string& manifest_path, const std::string& out_dir) {
    std::ifstream in(manifest_path);
    if (!in)
        throw IoError("cannot open manifest: " + manifest_path);
    json m;
    try {
        in >> m;
    } catch (const json::exception& e) {
        throw SchemaError("cannot parse manifest: " + std::string(e.what()));
    }
    if (!m.contains("argv"))
        throw SchemaError("manifest has no argv record");
    std::vector<std::string> args = m["argv"].get<std::vector<std::string>>();
    args.push_back("--out-dir");
    args.push_back(out_dir);
    return run_command(args);
}

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"npchange: change-point detection in nonparametric regression"};
    app.require_subcommand(1);
    app.footer("Environment: NPCHANGE_THREADS overrides the worker count.\n"
               "Exit codes: 0 ok, 2 I/O error, 3 schema error, 4 config error,\n"
               "5 series too short for the trimmed scan.");

    InputFlags in_detect, in_segment, in_bandwidth;
    DetectionFlags det_detect, det_segment, det_bandwidth;
    CommonOut out_detect, out_segment, out_bandwidth, out_simulate;
    std::size_t min_segment = 50;
    bool rebandwidth = false;
    std::size_t bw_candidates = 50;
    SimulateFlags sim, gen;
    std::string gen_out = "series.csv";
    std::string replay_manifest, replay_out = ".";

    auto* detect_cmd = app.add_subcommand("detect", "detect a single change point");
    in_detect.attach(detect_cmd);
    det_detect.attach(detect_cmd);
    out_detect.attach(detect_cmd);

    auto* segment_cmd =
        app.add_subcommand("segment", "multiple change points by binary segmentation");
    in_segment.attach(segment_cmd);
    det_segment.attach(segment_cmd);
    out_segment.attach(segment_cmd);
    segment_cmd->add_option("--min-segment", min_segment, "smallest segment still scanned");
    segment_cmd->add_flag("--rebandwidth-per-segment", rebandwidth,
                          "re-run bandwidth selection on every segment");

    auto* bandwidth_cmd =
        app.add_subcommand("bandwidth", "data-driven bandwidth via F(h) = max W(t) * h");
    in_bandwidth.attach(bandwidth_cmd);
    det_bandwidth.attach(bandwidth_cmd);
    out_bandwidth.attach(bandwidth_cmd);
    bandwidth_cmd->add_option("--candidates", bw_candidates, "bandwidth candidate count");

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo experiment driver");
    sim.attach(simulate_cmd);
    out_simulate.attach(simulate_cmd);

    auto* gen_cmd = app.add_subcommand("gen", "generate a simulated series as CSV");
    gen.attach(gen_cmd);
    gen_cmd->add_option("--out", gen_out, "output CSV path");

    auto* replay_cmd = app.add_subcommand("replay", "re-run a command from its manifest");
    replay_cmd->add_option("manifest", replay_manifest, "manifest.json path")->required();
    replay_cmd->add_option("--out-dir", replay_out, "output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    const std::vector<std::string> recorded = manifest_argv(args);
    if (detect_cmd->parsed())
        run_detect(in_detect, det_detect, out_detect, recorded);
    else if (segment_cmd->parsed())
        run_segment(in_segment, det_segment, out_segment, min_segment, rebandwidth, recorded);
    else if (bandwidth_cmd->parsed())
        run_bandwidth(in_bandwidth, det_bandwidth, out_bandwidth, bw_candidates, recorded);
    else if (simulate_cmd->parsed())
        run_simulate(sim, out_simulate, recorded);
    else if (gen_cmd->parsed())
        run_gen(gen, gen_out);
    else if (replay_cmd->parsed())
        return run_replay(replay_manifest, replay_out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_command(args);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const ScanInfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
