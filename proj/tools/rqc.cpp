// rqc: exact moments, asymptotic predictions and Monte Carlo sampling for
// random quantum channel outputs.
//
// Subcommands: wg, moments, freeprob, predict, mc, compare, entropy-sweep, run.
// Exit codes: 0 pass, 1 comparison failure, 2 usage or capacity error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <rqc/freeprob.hpp>
#include <rqc/moments.hpp>
#include <rqc/montecarlo.hpp>
#include <rqc/noncrossing.hpp>
#include <rqc/predictions.hpp>
#include <rqc/weingarten.hpp>

using json = nlohmann::ordered_json;
using namespace rqc;

namespace {

constexpr const char* kCsvVersion = "# rqc-csv v1";

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    int threads = 0;  // 0 -> hardware concurrency
};

int effective_threads(const CommonOpts& c) {
    if (c.threads > 0) return c.threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Output path resolution: relative paths land in $RQC_OUTPUT_DIR when set.
std::filesystem::path resolve_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("RQC_OUTPUT_DIR")) p = std::filesystem::path(dir) / p;
    }
    return p;
}

// Streams to --out when given (deterministic file contents), else stdout.
class OutputSink {
  public:
    explicit OutputSink(const std::string& out_path) {
        if (!out_path.empty()) {
            file_.open(resolve_out(out_path));
            if (!file_) throw std::runtime_error("cannot open output file: " + out_path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    in >> j;
    if (!j.is_object()) throw std::runtime_error("config must be a flat JSON object");
    return j;
}

std::string config_value_text(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_array()) {
        std::string joined;
        for (const auto& v : value) {
            if (!joined.empty()) joined += ",";
            joined += v.is_string() ? v.get<std::string>() : v.dump();
        }
        return joined;
    }
    return value.dump();
}

// Flags override file values: config keys not already present on the command
// line are appended as --key=value tokens before parsing, so required-option
// checks and validators see the merged view.
std::vector<std::string> merge_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            config_path = args[i].substr(9);
    }
    if (config_path.empty() || (args.size() > 1 && args[1] == "run")) return args;
    const json cfg = load_config(config_path);
    for (const auto& [key, value] : cfg.items()) {
        if (key == "experiment") continue;
        const std::string flag = "--" + key;
        bool present = false;
        for (std::size_t i = 1; i < args.size(); ++i)
            if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) present = true;
        if (!present) args.push_back(flag + "=" + config_value_text(value));
    }
    return args;
}

Rational parse_rational(const json& v) {
    if (v.is_string()) return Rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number_float()) return Rational(mpq_class(v.get<double>()));
    throw std::runtime_error("expected a number or \"a/b\" string in moment list");
}

std::vector<Rational> load_moment_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open moment list: " + path);
    json j;
    in >> j;
    if (!j.is_array()) throw std::runtime_error("moment list must be a JSON array");
    std::vector<Rational> m;
    for (const auto& v : j) {
        m.push_back(parse_rational(v));
        m.back().canonicalize();
    }
    return m;
}

std::string partition_label(const std::vector<int>& parts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << '+';
        os << parts[i];
    }
    return os.str();
}

// ---------------------------------------------------------------- wg table
int cmd_wg(long n, int p, const CommonOpts& common) {
    const ClassFunction table = wg_exact(n, p);
    OutputSink sink(common.out_path);
    auto& out = sink.stream();
    out << kCsvVersion << ": wg table, n=" << n << ", p=" << p << "\n";
    out << "partition,wg\n";
    for (int c = 0; c < table.class_count(); ++c)
        out << partition_label(table.classes()[c]) << "," << to_string(table.at_index(c)) << "\n";
    return 0;
}

// ---------------------------------------------------------------- moments
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

int cmd_moments(const std::string& model, int p_max, long n, long k, std::optional<long> r,
                const std::string& input_moments, const std::string& sigma_cycles,
                const std::string& t_labels, const std::string& ks_list,
                const CommonOpts& common) {
    OutputSink sink(common.out_path);
    auto& out = sink.stream();
    out << kCsvVersion << ": moments, model=" << model << ", n=" << n << ", k=" << k << "\n";
    out << "model,p,n,k,exact,value\n";
    const int threads = effective_threads(common);

    if (model == "wishart" && !sigma_cycles.empty()) {
        // generalized trace E[trace_{sigma,t}(W_1..W_s)] for one explicit
        // wiring permutation given in cycle notation
        std::vector<long> ks{k};
        if (!ks_list.empty()) {
            ks.clear();
            for (int v : parse_int_list(ks_list)) ks.push_back(v);
        }
        std::vector<int> labels;
        if (!t_labels.empty()) {
            for (int v : parse_int_list(t_labels)) labels.push_back(v - 1);  // 1-based outside
        }
        const int p = labels.empty() ? p_max : static_cast<int>(labels.size());
        if (labels.empty()) labels.assign(p, 0);
        const Permutation sigma = Permutation::from_cycle_string(p, sigma_cycles);
        const Integer w = wishart_moment(sigma, labels, n, ks);
        out << "wishart(sigma=" << sigma.to_cycle_string() << ")," << p << "," << n << ",-,"
            << to_string(w) << "," << to_double(Rational(w)) << "\n";
        return 0;
    }

    if (k < 1) throw CLI::ValidationError("--k", "environment dimension k must be >= 1");
    MomentSequence seq{model, "raw", {}};
    for (int p = 1; p <= p_max; ++p) {
        Rational value;
        if (model == "wishart") {
            const Integer w = wishart_moment(canonical(CanonicalPerm::Gamma, p),
                                             std::vector<int>(p, 0), n, {k});
            value = Rational(w);
        } else if (model == "single") {
            if (r)
                value = general_input_moment(p, n, k, TraceFunctional::rank_r(p, *r), {}, threads);
            else if (!input_moments.empty())
                value = general_input_moment(
                    p, n, k, TraceFunctional::macroscopic(p, load_moment_list(input_moments)), {},
                    threads);
            else
                value = rank_one_output_moment(p, n, k);
        } else if (model == "bi-indep") {
            value = bi_channel_independent_moment(p, n, k, {}, threads);
        } else if (model == "bi-conj") {
            value = bi_channel_conjugate_moment(p, n, k, {}, threads);
        } else if (model == "qzq") {
            value = qzq_moment(p, n, k, {}, threads);
        } else {
            throw CLI::ValidationError("--model", "unknown model " + model);
        }
        seq.moments.push_back(value);
    }
    for (int p = 1; p <= p_max; ++p) {
        const Rational& value = seq.moments[p - 1];
        out << seq.model << "," << p << "," << n << "," << k << "," << to_string(value) << ","
            << to_double(value) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- freeprob
int cmd_freeprob_mp(double c, int p_max, const CommonOpts& common) {
    OutputSink sink(common.out_path);
    auto& out = sink.stream();
    out << kCsvVersion << ": mp moments, c=" << c << "\n";
    out << "p,moment\n";
    for (int p = 1; p <= p_max; ++p) out << p << "," << mp_moment(p, c) << "\n";
    return 0;
}

int cmd_freeprob_transform(const std::string& input, bool inverse, const CommonOpts& common) {
    const auto m = load_moment_list(input);
    const auto result = inverse ? free_cumulants_to_moments(m) : moments_to_free_cumulants(m);
    json j;
    j["input"] = json::array();
    j[inverse ? "moments" : "cumulants"] = json::array();
    j["values"] = json::array();
    for (const auto& q : m) j["input"].push_back(to_string(q));
    for (const auto& q : result) {
        j[inverse ? "moments" : "cumulants"].push_back(to_string(q));
        j["values"].push_back(to_double(q));
    }
    OutputSink sink(common.out_path);
    sink.stream() << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------- predict
Model parse_model(const std::string& name) {
    if (name == "single" || name == "single-rank1") return Model::SingleRank1;
    if (name == "single-rank-r") return Model::SingleRankR;
    if (name == "single-macro") return Model::SingleMacro;
    if (name == "bi-indep") return Model::BiIndep;
    if (name == "bi-conj") return Model::BiConj;
    if (name == "bell") return Model::BellFixedK;
    throw CLI::ValidationError("--model", "unknown model " + name);
}

Regime parse_regime(const std::string& name) {
    if (name == "i" || name == "I" || name == "n-fixed") return Regime::NFixed;
    if (name == "ii" || name == "II" || name == "k-fixed") return Regime::KFixed;
    if (name == "iii" || name == "III" || name == "ratio") return Regime::Ratio;
    throw CLI::ValidationError("--regime", "unknown regime " + name);
}

json law_to_json(const LimitingDistribution& law) {
    json j;
    switch (law.kind) {
        case LimitingDistribution::Kind::FreePoisson:
            j["kind"] = "free-poisson";
            j["c"] = law.c;
            break;
        case LimitingDistribution::Kind::Dirac:
            j["kind"] = "dirac";
            j["location"] = law.atoms.front().second;
            break;
        case LimitingDistribution::Kind::Atomic: {
            j["kind"] = "atomic";
            j["atoms"] = json::array();
            for (const auto& [w, x] : law.atoms) j["atoms"].push_back({{"weight", w}, {"location", x}});
            break;
        }
        case LimitingDistribution::Kind::MomentOnly:
            j["kind"] = "moments";
            j["moments"] = law.moments;
            break;
    }
    return j;
}

int cmd_predict(const std::string& model, const std::string& regime, std::optional<double> c,
                std::optional<long> n, std::optional<long> k, std::optional<long> r,
                const std::string& input_moments, const CommonOpts& common) {
    RegimeParams params;
    params.c = c;
    params.n = n;
    params.k = k;
    params.r = r;
    if (!input_moments.empty()) {
        std::vector<double> md;
        for (const auto& q : load_moment_list(input_moments)) md.push_back(to_double(q));
        params.input_moments = std::move(md);
    }
    const RegimePrediction pred = predict(parse_model(model), parse_regime(regime), params);
    json j;
    j["model"] = model;
    j["regime"] = regime;
    j["rescaling"] = pred.rescaling;
    if (pred.law) j["law"] = law_to_json(*pred.law);
    if (!pred.eigenvalues.empty()) {
        j["eigenvalues"] = json::array();
        for (const auto& [v, mult] : pred.eigenvalues)
            j["eigenvalues"].push_back({{"value", v}, {"multiplicity", mult}});
    }
    if (pred.outlier_limit) {
        j["outlier"] = {{"limit_of_cn_lambda1", *pred.outlier_limit},
                        {"in_probability_only", pred.outlier_in_probability_only}};
    }
    OutputSink sink(common.out_path);
    sink.stream() << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------- mc
struct McStat {
    std::string kind;  // "moment", "entropy"
    int p = 1;
};

McStat parse_stat(const std::string& text) {
    McStat s;
    if (text == "entropy") {
        s.kind = "entropy";
        return s;
    }
    if (text.rfind("moments:", 0) == 0) {
        s.kind = "moment";
        s.p = std::stoi(text.substr(8));
        if (s.p < 1) throw CLI::ValidationError("--stat", "moment order must be >= 1");
        return s;
    }
    if (text == "spectrum") {
        s.kind = "spectrum";
        return s;
    }
    throw CLI::ValidationError("--stat", "expected moments:p, entropy or spectrum");
}

std::vector<double> mc_spectrum_for_model(const std::string& model, int n, int k,
                                          mc::RngStream& rng) {
    if (model == "single") return mc::single_channel_spectrum(n, k, rng);
    if (model == "bi-conj")
        return mc::psd_factor_spectrum(mc::bi_channel_factor(mc::BiMode::Conjugate, n, k, rng));
    if (model == "bi-indep")
        return mc::psd_factor_spectrum(mc::bi_channel_factor(mc::BiMode::Independent, n, k, rng));
    if (model == "wishart") return mc::psd_factor_spectrum(mc::sample_ginibre(n, k, rng));
    throw CLI::ValidationError("--model", "unknown model " + model);
}

int cmd_mc(const std::string& model, int n, int k, long samples, std::uint64_t seed,
           const std::string& stat_text, const std::string& dump_spectrum, bool per_sample,
           const CommonOpts& common) {
    const McStat stat = parse_stat(stat_text);
    const int threads = effective_threads(common);

    std::ofstream dump;
    if (!dump_spectrum.empty()) {
        dump.open(resolve_out(dump_spectrum));
        if (!dump) throw std::runtime_error("cannot open spectrum dump file");
    }

    if (stat.kind == "spectrum") {
        OutputSink sink(common.out_path);
        auto& out = sink.stream();
        out << kCsvVersion << ": spectra, model=" << model << ", n=" << n << ", k=" << k
            << ", seed=" << seed << "\n";
        out << "sample,eigenvalues...\n";
        for (long i = 0; i < samples; ++i) {
            mc::RngStream rng = mc::RngStream::substream(seed, static_cast<std::uint64_t>(i));
            const auto eigs = mc_spectrum_for_model(model, n, k, rng);
            out << i;
            for (double v : eigs) out << "," << v;
            out << "\n";
        }
        return 0;
    }

    auto stat_fn = [&](mc::RngStream& rng, long) {
        const auto eigs = mc_spectrum_for_model(model, n, k, rng);
        if (stat.kind == "entropy") return mc::vn_entropy(eigs);
        double acc = 0;
        for (double v : eigs) acc += std::pow(v, stat.p);
        return acc;
    };

    // Per-sample CSV wants the values anyway; reuse the estimator for the
    // aggregate so the report matches the documented reduction exactly.
    const std::string stat_name =
        stat.kind == "entropy" ? "entropy" : "trace(Z^" + std::to_string(stat.p) + ")";
    const mc::EstimatorReport report =
        mc::estimate(stat_name, samples, seed, threads, stat_fn);

    if (per_sample) {
        OutputSink sink(common.out_path);
        auto& out = sink.stream();
        out << kCsvVersion << ": mc per-sample, model=" << model << ", stat=" << stat_name << "\n";
        out << "sample,value\n";
        for (long i = 0; i < samples; ++i) {
            mc::RngStream rng = mc::RngStream::substream(seed, static_cast<std::uint64_t>(i));
            out << i << "," << stat_fn(rng, i) << "\n";
        }
    }

    if (dump.is_open()) {
        dump << kCsvVersion << ": spectra, model=" << model << ", n=" << n << ", k=" << k
             << ", seed=" << seed << "\n";
        for (long i = 0; i < samples; ++i) {
            mc::RngStream rng = mc::RngStream::substream(seed, static_cast<std::uint64_t>(i));
            const auto eigs = mc_spectrum_for_model(model, n, k, rng);
            dump << i;
            for (double v : eigs) dump << "," << v;
            dump << "\n";
        }
    }

    json j;
    j["model"] = model;
    j["n"] = n;
    j["k"] = k;
    j["seed"] = seed;
    j["statistic"] = report.statistic;
    j["samples"] = report.samples;
    j["mean"] = report.mean;
    j["std_error"] = report.std_error;
    if (!per_sample || !common.out_path.empty()) std::cout << j.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------- compare
double asymptotic_trace_moment(const std::string& model, int p, long n, long k) {
    const double c = static_cast<double>(k) / static_cast<double>(n);
    const double nd = static_cast<double>(n);
    if (model == "single")  // (1/n) sum (cn lambda)^p -> mp_moment(p, c)
        return mp_moment(p, c) * std::pow(c * nd, -p) * nd;
    if (model == "bi-conj") {
        if (p == 1) return 1.0;
        if (p == 2) return (1.0 + 2.0 / (c * c)) / (nd * nd);
        return std::pow(c * nd, -p);
    }
    if (model == "bi-indep") {
        // n^(2-2p) sum_geodesic c^(2#a - 2p): the d -> infinity geodesic sum
        double acc = 0;
        const Permutation gamma = canonical(CanonicalPerm::Gamma, p);
        for (const auto& a : enumerate_geodesics(gamma))
            acc += std::pow(c, 2 * a.cycle_count() - 2 * p);
        return acc * std::pow(nd, 2 - 2 * p);
    }
    if (model == "wishart") return 0.0;  // exact value doubles as the prediction
    throw CLI::ValidationError("--model", "unknown model " + model);
}

int cmd_compare(const std::string& model, int n, int k, int p_max, long samples,
                std::uint64_t seed, const CommonOpts& common) {
    const int threads = effective_threads(common);
    OutputSink sink(common.out_path);
    auto& out = sink.stream();
    out << kCsvVersion << ": compare, model=" << model << ", n=" << n << ", k=" << k
        << ", samples=" << samples << ", seed=" << seed << ", tolerance=3se+1e-12\n";
    out << "statistic,exact,mc_mean,mc_se,prediction,pass\n";
    bool all_pass = true;
    for (int p = 1; p <= p_max; ++p) {
        Rational exact;
        if (model == "single")
            exact = rank_one_output_moment(p, n, k);
        else if (model == "bi-conj")
            exact = bi_channel_conjugate_moment(p, n, k, {}, threads);
        else if (model == "bi-indep")
            exact = bi_channel_independent_moment(p, n, k, {}, threads);
        else if (model == "wishart")
            exact = Rational(wishart_moment(canonical(CanonicalPerm::Gamma, p),
                                            std::vector<int>(p, 0), n, {k}));
        else
            throw CLI::ValidationError("--model", "unknown model " + model);

        const auto report = mc::estimate(
            "trace^" + std::to_string(p), samples, seed + static_cast<std::uint64_t>(p), threads,
            [&](mc::RngStream& rng, long) {
                const auto eigs = mc_spectrum_for_model(model, n, k, rng);
                double acc = 0;
                for (double v : eigs) acc += std::pow(v, p);
                return acc;
            },
            to_double(exact), "exact");

        const double target = to_double(exact);
        // the absolute floor covers statistics that are deterministic up to
        // float roundoff (trace(Z) = 1 has a standard error of a few ulps)
        const bool pass = std::abs(report.mean - target) <=
                          3.0 * report.std_error + 1e-12 * std::max(1.0, std::abs(target));
        all_pass = all_pass && pass;
        const double prediction =
            model == "wishart" ? target : asymptotic_trace_moment(model, p, n, k);
        out << "trace(Z^" << p << ")," << target << "," << report.mean << "," << report.std_error
            << "," << prediction << "," << (pass ? "pass" : "FAIL") << "\n";
    }
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------- entropy sweep
int cmd_entropy_sweep(const std::string& model, double c, const std::vector<long>& n_grid,
                      long samples, std::uint64_t seed, const CommonOpts& common) {
    const int threads = effective_threads(common);
    OutputSink sink(common.out_path);
    auto& out = sink.stream();
    out << kCsvVersion << ": entropy sweep, model=" << model << ", c=" << c
        << ", samples=" << samples << ", seed=" << seed << "\n";
    out << "n,k,mc_entropy,mc_se,asymptotic,diff\n";
    for (long n : n_grid) {
        const long k = std::lround(c * static_cast<double>(n));
        const auto report = mc::estimate(
            "entropy", samples, seed + static_cast<std::uint64_t>(n), threads,
            [&](mc::RngStream& rng, long) {
                if (model == "single")
                    return mc::vn_entropy(mc::single_channel_spectrum(static_cast<int>(n),
                                                                      static_cast<int>(k), rng));
                return mc::vn_entropy(mc::psd_factor_spectrum(mc::bi_channel_factor(
                    mc::BiMode::Conjugate, static_cast<int>(n), static_cast<int>(k), rng)));
            });
        const double pred = entropy_asymptotic(
            model == "single" ? EntropyModel::Single : EntropyModel::Bi, c, n);
        out << n << "," << k << "," << report.mean << "," << report.std_error << "," << pred << ","
            << report.mean - pred << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random quantum channel calculator"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--threads", common.threads, "worker threads (default: logical cores)");

    // wg
    auto* wg_cmd = app.add_subcommand("wg", "exact Weingarten table for (n, p)");
    long wg_n = 0;
    int wg_p = 0;
    wg_cmd->add_option("--n", wg_n, "dimension parameter")->required();
    wg_cmd->add_option("--p", wg_p, "symmetric group degree")->required();

    // moments
    auto* mom_cmd = app.add_subcommand("moments", "exact finite-(n,k) moments");
    std::string mom_model = "single";
    int mom_p = 3;
    long mom_n = 0, mom_k = 0;
    std::optional<long> mom_r;
    std::string mom_input;
    mom_cmd->add_option("--model", mom_model, "wishart|single|bi-indep|bi-conj|qzq");
    mom_cmd->add_option("--p", mom_p, "compute moments 1..p")->required();
    mom_cmd->add_option("--n", mom_n, "output dimension n")->required();
    mom_cmd->add_option("--k", mom_k, "environment dimension k (or use --ks with --sigma)");
    mom_cmd->add_option("--r", mom_r, "input projector rank (single model)");
    mom_cmd->add_option("--input-moments", mom_input, "JSON array of input power traces");
    std::string mom_sigma, mom_t, mom_ks;
    mom_cmd->add_option("--sigma", mom_sigma,
                        "wishart: wiring permutation in cycle notation, e.g. \"(2 1)\"");
    mom_cmd->add_option("--t", mom_t, "wishart: comma list of 1-based matrix labels per point");
    mom_cmd->add_option("--ks", mom_ks, "wishart: comma list of k parameters, one per label");

    // freeprob
    auto* fp_cmd = app.add_subcommand("freeprob", "free probability toolkit");
    auto* fp_mp = fp_cmd->add_subcommand("mp", "Marchenko-Pastur moments");
    double fp_c = 1.0;
    int fp_p = 6;
    fp_mp->add_option("--c", fp_c, "parameter c > 0")->required();
    fp_mp->add_option("--p", fp_p, "orders 1..p");
    auto* fp_tr = fp_cmd->add_subcommand("transform", "moment <-> free cumulant transform");
    std::string fp_input;
    bool fp_inverse = false;
    fp_tr->add_option("--input", fp_input, "JSON array of moments (numbers or \"a/b\")")
        ->required();
    fp_tr->add_flag("--inverse", fp_inverse, "treat input as cumulants, emit moments");

    // predict
    auto* pred_cmd = app.add_subcommand("predict", "closed-form asymptotic predictions");
    std::string pred_model, pred_regime;
    std::optional<double> pred_c;
    std::optional<long> pred_n, pred_k, pred_r;
    std::string pred_input;
    pred_cmd->add_option("--model", pred_model, "single|single-rank-r|single-macro|bi-indep|bi-conj|bell")
        ->required();
    pred_cmd->add_option("--regime", pred_regime, "i|ii|iii")->required();
    pred_cmd->add_option("--c", pred_c, "ratio k/n");
    pred_cmd->add_option("--n", pred_n, "n");
    pred_cmd->add_option("--k", pred_k, "k");
    pred_cmd->add_option("--r", pred_r, "input rank");
    pred_cmd->add_option("--input-moments", pred_input, "macroscopic input moments (JSON array)");

    // mc
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo sampling");
    std::string mc_model = "single", mc_stat = "moments:2", mc_dump;
    int mc_n = 0, mc_k = 0;
    long mc_samples = 1000;
    std::uint64_t mc_seed = 0;
    bool mc_per_sample = false;
    mc_cmd->add_option("--model", mc_model, "single|bi-conj|bi-indep|wishart");
    mc_cmd->add_option("--n", mc_n, "n")->required();
    mc_cmd->add_option("--k", mc_k, "k")->required();
    mc_cmd->add_option("--samples", mc_samples, "sample count");
    mc_cmd->add_option("--seed", mc_seed, "master seed")->required();
    mc_cmd->add_option("--stat", mc_stat, "moments:p | entropy | spectrum");
    mc_cmd->add_option("--dump-spectrum", mc_dump, "write per-sample eigenvalues to this file");
    mc_cmd->add_flag("--per-sample", mc_per_sample, "emit one CSV row per sample");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "exact vs MC vs prediction, 3 s.e. gate");
    std::string cmp_model = "single";
    int cmp_n = 0, cmp_k = 0, cmp_pmax = 3;
    long cmp_samples = 1000;
    std::uint64_t cmp_seed = 0;
    cmp_cmd->add_option("--model", cmp_model, "single|bi-conj|bi-indep|wishart");
    cmp_cmd->add_option("--n", cmp_n, "n")->required();
    cmp_cmd->add_option("--k", cmp_k, "k")->required();
    cmp_cmd->add_option("--p-max", cmp_pmax, "compare moments 1..p");
    cmp_cmd->add_option("--samples", cmp_samples, "sample count");
    cmp_cmd->add_option("--seed", cmp_seed, "master seed")->required();

    // entropy-sweep
    auto* sweep_cmd = app.add_subcommand("entropy-sweep", "MC entropy against the asymptote");
    std::string sweep_model = "bi-conj";
    double sweep_c = 1.0;
    std::vector<long> sweep_grid;
    long sweep_samples = 3;
    std::uint64_t sweep_seed = 0;
    sweep_cmd->add_option("--model", sweep_model, "bi-conj|single");
    sweep_cmd->add_option("--c", sweep_c, "ratio k/n");
    sweep_cmd->add_option("--n-grid", sweep_grid, "n values")->required()->delimiter(',');
    sweep_cmd->add_option("--samples", sweep_samples, "samples per n");
    sweep_cmd->add_option("--seed", sweep_seed, "master seed")->required();

    // run (config-file dispatch)
    auto* run_cmd = app.add_subcommand("run", "run an experiment described by a config file");
    std::string run_config;
    run_cmd->add_option("--config", run_config, "flat JSON config with an \"experiment\" key")
        ->required();

    for (auto* cmd : {wg_cmd, mom_cmd, mc_cmd, cmp_cmd, sweep_cmd, pred_cmd})
        cmd->add_option("--out", common.out_path, "output file (relative paths use RQC_OUTPUT_DIR)");
    for (auto* cmd : {wg_cmd, mom_cmd, mc_cmd, cmp_cmd, sweep_cmd, pred_cmd, fp_mp, fp_tr})
        cmd->add_option("--config", common.config_path, "flat JSON config; flags override");
    for (auto* cmd : {wg_cmd, mom_cmd, fp_cmd, pred_cmd, mc_cmd, cmp_cmd, sweep_cmd, run_cmd})
        cmd->fallthrough();  // app-level --threads may come from a config file
    fp_mp->fallthrough();
    fp_tr->fallthrough();

    try {
        const std::vector<std::string> merged = merge_config_args(argc, argv);
        std::vector<const char*> cargv;
        for (const auto& a : merged) cargv.push_back(a.c_str());
        app.parse(static_cast<int>(cargv.size()), cargv.data());

        if (run_cmd->parsed()) {
            // re-dispatch: config supplies the subcommand and its options
            const json cfg = load_config(run_config);
            if (!cfg.contains("experiment"))
                throw std::runtime_error("config needs an \"experiment\" key");
            std::vector<std::string> args{argv[0], cfg["experiment"].get<std::string>()};
            for (const auto& [key, value] : cfg.items()) {
                if (key == "experiment") continue;
                args.push_back("--" + key);
                args.push_back(config_value_text(value));
            }
            std::vector<char*> cargs;
            for (auto& a : args) cargs.push_back(a.data());
            return main(static_cast<int>(cargs.size()), cargs.data());
        }

        if (wg_cmd->parsed()) return cmd_wg(wg_n, wg_p, common);
        if (mom_cmd->parsed())
            return cmd_moments(mom_model, mom_p, mom_n, mom_k, mom_r, mom_input, mom_sigma, mom_t,
                               mom_ks, common);
        if (fp_cmd->parsed()) {
            if (fp_mp->parsed()) return cmd_freeprob_mp(fp_c, fp_p, common);
            if (fp_tr->parsed()) return cmd_freeprob_transform(fp_input, fp_inverse, common);
            throw CLI::CallForHelp();
        }
        if (pred_cmd->parsed())
            return cmd_predict(pred_model, pred_regime, pred_c, pred_n, pred_k, pred_r, pred_input,
                               common);
        if (mc_cmd->parsed())
            return cmd_mc(mc_model, mc_n, mc_k, mc_samples, mc_seed, mc_stat, mc_dump,
                          mc_per_sample, common);
        if (cmp_cmd->parsed())
            return cmd_compare(cmp_model, cmp_n, cmp_k, cmp_pmax, cmp_samples, cmp_seed, common);
        if (sweep_cmd->parsed())
            return cmd_entropy_sweep(sweep_model, sweep_c, sweep_grid, sweep_samples, sweep_seed,
                                     common);
        throw CLI::CallForHelp();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const WgSingularError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
