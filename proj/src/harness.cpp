#include "dcid/harness.hpp"

#include "dcid/error.hpp"
#include "dcid/log.hpp"
#include "dcid/rng.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

namespace dcid {
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kNoGrid = ~std::uint64_t{0};

std::string format_double(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n\r") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Job {
    SweepVariable variable = SweepVariable::none;
    double grid_value = 0.0;
    Index scenario = 0;
    Index seed = 0;
};

RunRecord blank_record(const Job& job, Method method, std::uint64_t dataset_seed, std::uint64_t rs,
                       const ScenarioConfig& config)
{
    RunRecord r;
    r.grid_variable = job.variable;
    r.grid_value = job.grid_value;
    r.scenario = job.scenario;
    r.seed = job.seed;
    r.method = method;
    r.dataset_seed = dataset_seed;
    r.run_seed = rs;
    r.config = config;
    return r;
}

template <typename Fn>
void guarded(RunRecord& record, Fn&& fn)
{
    const auto start = std::chrono::steady_clock::now();
    try {
        fn();
    } catch (const std::exception& e) {
        record.score.reset();
        record.error = e.what();
        log::warn("run failed (scenario " + std::to_string(record.scenario) + ", seed " +
                  std::to_string(record.seed) + ", " + to_string(record.method) + "): " + e.what());
    }
    record.duration_seconds += seconds_since(start);
}

std::vector<RunRecord> execute_job(const ExperimentConfig& cfg, const Job& job)
{
    const std::uint64_t ds_seed = scenario_seed(cfg.master_seed, job.scenario);
    const std::uint64_t rs = run_seed(ds_seed, job.seed);
    ScenarioConfig sc = cfg.scenario;
    sc.seed = ds_seed;
    if (job.variable == SweepVariable::tau) sc.tau = job.grid_value;
    if (job.variable == SweepVariable::kappa) sc.kappa = job.grid_value;

    std::vector<RunRecord> records;
    for (Method m : cfg.methods) {
        records.push_back(blank_record(job, m, ds_seed, rs, sc));
    }

    GroundTruthDataset dataset;
    try {
        ScenarioConfig base_cfg = cfg.scenario;
        base_cfg.seed = ds_seed;
        const GroundTruthDataset base = generate_dataset(base_cfg);
        dataset = with_resplit(job.variable == SweepVariable::none ? base : with_ratios(base, sc.tau, sc.kappa),
                               derive_seed(rs, "split"));
    } catch (const std::exception& e) {
        for (RunRecord& r : records) {
            r.error = e.what();
        }
        log::warn("scenario " + std::to_string(job.scenario) + " unavailable: " + e.what());
        return records;
    }
    const auto test_rows = dataset.rows_in(Split::test);
    const Matrix x_test = select_rows(dataset.x, test_rows);

    // dcid and raw-features share one fit.
    std::optional<SharedEstimate> estimate;
    std::string estimate_error;
    double estimate_seconds = 0.0;
    const auto need_estimate = [&] {
        if (estimate || !estimate_error.empty()) return;
        const auto start = std::chrono::steady_clock::now();
        DcidConfig dc = cfg.dcid;
        dc.net.seed = derive_seed(rs, "dcid.net");
        dc.train.shuffle_seed = derive_seed(rs, "dcid.train");
        try {
            estimate = fit_dcid(dataset, dc);
        } catch (const std::exception& e) {
            estimate_error = e.what();
        }
        estimate_seconds = seconds_since(start);
    };

    for (RunRecord& r : records) {
        switch (r.method) {
        case Method::oracle_z:
            guarded(r, [&] { r.score = score_icm(select_rows(dataset.z, test_rows), dataset, cfg.r2); });
            r.n_selected = dataset.z.cols();
            break;
        case Method::dcid:
        case Method::raw_features:
            need_estimate();
            r.duration_seconds = estimate_seconds;
            guarded(r, [&] {
                if (!estimate) throw Error(estimate_error);
                if (r.method == Method::dcid) {
                    r.n_selected = estimate->n_selected;
                    const Matrix z_hat =
                        estimate->n_selected > 0 ? predict_shared(*estimate, x_test) : Matrix(x_test.rows(), 0);
                    r.score = score_icm(z_hat, dataset, cfg.r2);
                } else {
                    const Matrix z_hat = estimate->features_1(x_test);
                    r.n_selected = z_hat.cols();
                    r.score = score_icm(z_hat, dataset, cfg.r2);
                }
            });
            break;
        case Method::mtl:
            guarded(r, [&] {
                MlpSpec spec = cfg.mtl.net;
                spec.seed = derive_seed(rs, "mtl.net");
                TrainConfig train_cfg = cfg.mtl.train;
                train_cfg.shuffle_seed = derive_seed(rs, "mtl.train");
                const MtlModel model = train_mtl(dataset, spec, train_cfg);
                const auto selected = select_shared_features(model, cfg.mtl.t_mtl);
                r.n_selected = static_cast<Index>(selected.size());
                r.score = score_icm(select_cols(model.net.features(x_test), selected), dataset, cfg.r2);
            });
            break;
        }
    }
    return records;
}

std::vector<RunRecord> execute(const ExperimentConfig& cfg, const std::vector<Job>& jobs)
{
    std::vector<std::vector<RunRecord>> slots(jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            slots[i] = execute_job(cfg, jobs[i]);
        }
    };
    const std::size_t n_threads = std::min(cfg.workers, jobs.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    std::vector<RunRecord> records;
    for (auto& slot : slots) {
        std::move(slot.begin(), slot.end(), std::back_inserter(records));
    }
    sort_records(records);
    return records;
}

double mean_of(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v)
{
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

std::string grid_cell(SweepVariable variable, double value)
{
    return variable == SweepVariable::none ? std::string() : format_double(value);
}

} // namespace

std::string to_string(Method method)
{
    switch (method) {
    case Method::dcid: return "dcid";
    case Method::mtl: return "mtl";
    case Method::oracle_z: return "oracle-z";
    case Method::raw_features: return "raw-features";
    }
    return "unknown";
}

Method parse_method(const std::string& text)
{
    if (text == "dcid") return Method::dcid;
    if (text == "mtl") return Method::mtl;
    if (text == "oracle-z") return Method::oracle_z;
    if (text == "raw-features") return Method::raw_features;
    throw ValidationError("unknown method '" + text + "' (expected dcid, mtl, oracle-z or raw-features)");
}

std::string to_string(SweepVariable variable)
{
    switch (variable) {
    case SweepVariable::none: return "none";
    case SweepVariable::tau: return "tau";
    case SweepVariable::kappa: return "kappa";
    }
    return "unknown";
}

SweepVariable parse_sweep_variable(const std::string& text)
{
    if (text == "tau") return SweepVariable::tau;
    if (text == "kappa") return SweepVariable::kappa;
    throw ValidationError("unknown sweep variable '" + text + "' (expected tau or kappa)");
}

void ExperimentConfig::validate() const
{
    if (methods.empty()) {
        throw ValidationError("experiment: methods list is empty");
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (std::find(methods.begin(), methods.begin() + static_cast<std::ptrdiff_t>(i), methods[i]) !=
            methods.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw ValidationError("experiment: method " + to_string(methods[i]) + " listed twice");
        }
    }
    if (scenarios < 1 || seeds < 1) {
        throw ValidationError("experiment: scenarios and seeds must be at least 1");
    }
    if (workers < 1) {
        throw ValidationError("experiment: workers must be at least 1");
    }
    scenario.validate();
    dcid.validate();
    if (!(mtl.t_mtl >= 0.0 && mtl.t_mtl <= 1.0)) {
        throw ValidationError("experiment: t_mtl must lie in [0, 1]");
    }
    MlpSpec probe = mtl.net;
    probe.input_dim = std::max<Index>(probe.input_dim, 1);
    probe.output_dim = 2;
    probe.validate();
    mtl.train.validate();
    if (r2.mode == ProbeMode::held_out && !(r2.probe_fraction > 0.0 && r2.probe_fraction < 1.0)) {
        throw ValidationError("experiment: r2 probe_fraction must lie in (0, 1)");
    }
}

void SweepSpec::validate() const
{
    if (variable == SweepVariable::none) {
        throw ValidationError("sweep: variable must be tau or kappa");
    }
    if (grid.empty()) {
        throw ValidationError("sweep: grid is empty");
    }
    for (double v : grid) {
        if (!(std::isfinite(v) && v > 0.0)) {
            throw ValidationError("sweep: grid values must be finite and positive, got " + format_double(v));
        }
    }
}

std::vector<double> log_grid(double lo, double hi, std::size_t points)
{
    if (!(lo > 0.0 && hi >= lo && std::isfinite(hi)) || points == 0 || (points == 1 && hi != lo)) {
        throw ValidationError("log_grid: need 0 < lo <= hi and at least one point (two if lo != hi)");
    }
    std::vector<double> grid(points);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = points == 1 ? lo : std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> default_grid(SweepVariable variable)
{
    if (variable == SweepVariable::tau) return log_grid(0.1, 10.0, 17);
    if (variable == SweepVariable::kappa) return log_grid(0.1, 1.0, 9);
    throw ValidationError("default_grid: variable must be tau or kappa");
}

std::uint64_t scenario_seed(std::uint64_t master, Index index)
{
    return derive_seed(derive_seed(master, "scenario"), static_cast<std::uint64_t>(index));
}

std::uint64_t run_seed(std::uint64_t dataset_seed, Index index)
{
    return derive_seed(derive_seed(dataset_seed, "run"), static_cast<std::uint64_t>(index));
}

std::vector<RunRecord> run_benchmark(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::vector<Job> jobs;
    for (Index s = 0; s < cfg.scenarios; ++s) {
        for (Index k = 0; k < cfg.seeds; ++k) {
            jobs.push_back(Job{SweepVariable::none, 0.0, s, k});
        }
    }
    return execute(cfg, jobs);
}

std::vector<RunRecord> run_sweep(const ExperimentConfig& cfg, const SweepSpec& sweep)
{
    cfg.validate();
    sweep.validate();
    std::vector<Job> jobs;
    for (double value : sweep.grid) {
        for (Index s = 0; s < cfg.scenarios; ++s) {
            for (Index k = 0; k < cfg.seeds; ++k) {
                jobs.push_back(Job{sweep.variable, value, s, k});
            }
        }
    }
    return execute(cfg, jobs);
}

void sort_records(std::vector<RunRecord>& records)
{
    std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tuple(a.grid_value, a.scenario, a.seed, static_cast<int>(a.method)) <
               std::tuple(b.grid_value, b.scenario, b.seed, static_cast<int>(b.method));
    });
}

std::string results_csv(const std::vector<RunRecord>& input)
{
    std::vector<RunRecord> records = input;
    sort_records(records);
    std::ostringstream out;
    out << "schema_version,version,grid_variable,grid_value,scenario,seed,method,dataset_seed,run_seed,"
           "n_samples,dim_shared,dim_indiv,dim_obs,target_map,obs_map,tau,kappa,noise_obs,"
           "informativeness,compactness,minimality,leakage,icm,n_selected,error\n";
    for (const RunRecord& r : records) {
        const ScenarioConfig& c = r.config;
        out << kCsvSchemaVersion << ',' << csv_field(r.version) << ',' << to_string(r.grid_variable) << ','
            << grid_cell(r.grid_variable, r.grid_value) << ',' << r.scenario << ',' << r.seed << ','
            << to_string(r.method) << ',' << r.dataset_seed << ',' << r.run_seed << ',' << c.n_samples << ','
            << c.dim_shared << ',' << c.dim_indiv << ',' << c.dim_obs << ',' << to_string(c.target_map) << ','
            << to_string(c.obs_map) << ',' << format_double(c.tau) << ',' << format_double(c.kappa) << ','
            << format_double(c.noise_obs) << ',';
        if (r.score) {
            const IcmScore& s = *r.score;
            out << format_double(s.informativeness) << ',' << format_double(s.compactness) << ','
                << format_double(s.minimality) << ',' << format_double(1.0 - s.minimality) << ','
                << format_double(s.icm) << ',' << r.n_selected << ',';
        } else {
            out << ",,,,,,";
        }
        out << csv_field(r.error) << '\n';
    }
    return out.str();
}

std::vector<MethodSummary> summarize(const std::vector<RunRecord>& records)
{
    using Key = std::tuple<double, int>;
    struct Acc {
        SweepVariable variable = SweepVariable::none;
        Index failures = 0;
        std::vector<double> icm, inf, cmp, mnm, leak, nsel;
    };
    std::map<Key, Acc> groups;
    for (const RunRecord& r : records) {
        Acc& acc = groups[Key{r.grid_value, static_cast<int>(r.method)}];
        acc.variable = r.grid_variable;
        if (!r.score) {
            ++acc.failures;
            continue;
        }
        acc.icm.push_back(r.score->icm);
        acc.inf.push_back(r.score->informativeness);
        acc.cmp.push_back(r.score->compactness);
        acc.mnm.push_back(r.score->minimality);
        acc.leak.push_back(1.0 - r.score->minimality);
        acc.nsel.push_back(static_cast<double>(r.n_selected));
    }
    std::vector<MethodSummary> out;
    for (const auto& [key, acc] : groups) {
        MethodSummary s;
        s.grid_variable = acc.variable;
        s.grid_value = std::get<0>(key);
        s.method = static_cast<Method>(std::get<1>(key));
        s.runs = static_cast<Index>(acc.icm.size());
        s.failures = acc.failures;
        s.icm_mean = mean_of(acc.icm);
        s.icm_std = std_of(acc.icm);
        s.informativeness_mean = mean_of(acc.inf);
        s.compactness_mean = mean_of(acc.cmp);
        s.minimality_mean = mean_of(acc.mnm);
        s.leakage_mean = mean_of(acc.leak);
        s.leakage_std = std_of(acc.leak);
        s.n_selected_mean = mean_of(acc.nsel);
        out.push_back(s);
    }
    return out;
}

std::string summary_csv(const std::vector<RunRecord>& records)
{
    std::ostringstream out;
    out << "schema_version,grid_variable,grid_value,method,runs,failures,icm_mean,icm_std,"
           "informativeness_mean,compactness_mean,minimality_mean,leakage_mean,leakage_std,n_selected_mean\n";
    const auto summaries = summarize(records);
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const MethodSummary& s = summaries[i];
        out << kCsvSchemaVersion << ',' << to_string(s.grid_variable) << ','
            << grid_cell(s.grid_variable, s.grid_value) << ',' << to_string(s.method) << ',' << s.runs << ','
            << s.failures << ',';
        if (s.runs > 0) {
            out << format_double(s.icm_mean) << ',' << format_double(s.icm_std) << ','
                << format_double(s.informativeness_mean) << ',' << format_double(s.compactness_mean) << ','
                << format_double(s.minimality_mean) << ',' << format_double(s.leakage_mean) << ','
                << format_double(s.leakage_std) << ',' << format_double(s.n_selected_mean) << '\n';
        } else {
            out << ",,,,,,,\n";
        }
        // Methods without an implementation keep their rows, empty.
        const bool last_of_grid = i + 1 == summaries.size() || summaries[i + 1].grid_value != s.grid_value;
        if (last_of_grid) {
            for (const char* name : {"mtfl", "adv-mtl"}) {
                out << kCsvSchemaVersion << ',' << to_string(s.grid_variable) << ','
                    << grid_cell(s.grid_variable, s.grid_value) << ',' << name << ",0,0,,,,,,,,\n";
            }
        }
    }
    return out.str();
}

std::string figure_csv(const std::vector<RunRecord>& records)
{
    std::ostringstream out;
    const auto summaries = summarize(records);
    const std::string variable = summaries.empty() ? "grid" : to_string(summaries.front().grid_variable);
    out << "schema_version," << variable << ",method,runs,icm_mean,icm_std,leakage_mean\n";
    for (const MethodSummary& s : summaries) {
        out << kCsvSchemaVersion << ',' << format_double(s.grid_value) << ',' << to_string(s.method) << ','
            << s.runs << ',';
        if (s.runs > 0) {
            out << format_double(s.icm_mean) << ',' << format_double(s.icm_std) << ','
                << format_double(s.leakage_mean) << '\n';
        } else {
            out << ",,\n";
        }
    }
    return out.str();
}

std::string timings_csv(const std::vector<RunRecord>& input)
{
    std::vector<RunRecord> records = input;
    sort_records(records);
    std::ostringstream out;
    out << "schema_version,grid_variable,grid_value,scenario,seed,method,duration_seconds\n";
    for (const RunRecord& r : records) {
        out << kCsvSchemaVersion << ',' << to_string(r.grid_variable) << ','
            << grid_cell(r.grid_variable, r.grid_value) << ',' << r.scenario << ',' << r.seed << ','
            << to_string(r.method) << ',' << format_double(r.duration_seconds) << '\n';
    }
    return out.str();
}

void emit_plotdata(const std::vector<RunRecord>& records, const ExperimentConfig& cfg, const SweepSpec* sweep,
                   const fs::path& out_dir)
{
    if (records.empty()) {
        throw ValidationError("emit_plotdata: no records");
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }
    write_text(out_dir / "results.csv", results_csv(records));
    write_text(out_dir / "summary.csv", summary_csv(records));
    write_text(out_dir / "timings.csv", timings_csv(records));
    if (sweep != nullptr) {
        write_text(out_dir / ("fig_" + to_string(sweep->variable) + ".csv"), figure_csv(records));
    }

    Index failures = 0;
    for (const RunRecord& r : records) {
        failures += r.score ? 0 : 1;
    }
    Json meta{{"schema_version", kSchemaVersion},
              {"csv_schema_version", kCsvSchemaVersion},
              {"version", kVersion},
              {"experiment", to_json(cfg)},
              {"records", records.size()},
              {"failures", failures},
              {"seeding", "scenario_seed = derive(derive(master, \"scenario\"), scenario); run_seed = "
                          "derive(derive(scenario_seed, \"run\"), seed)"},
              {"mtl_capacity", "trunk uses the mtl.net spec; defaults equal the per-target dcid net"},
              {"not_implemented", {"mtfl", "adv-mtl"}}};
    if (sweep != nullptr) {
        meta["sweep"] = to_json(*sweep);
    }
    write_json_file(out_dir / "metadata.json", meta);
}

Json to_json(const ExperimentConfig& cfg)
{
    Json methods = Json::array();
    for (Method m : cfg.methods) {
        methods.push_back(to_string(m));
    }
    return Json{{"scenario", to_json(cfg.scenario)},
                {"dcid", to_json(cfg.dcid)},
                {"mtl", {{"net", to_json(cfg.mtl.net)}, {"train", to_json(cfg.mtl.train)}, {"t_mtl", cfg.mtl.t_mtl}}},
                {"r2", to_json(cfg.r2)},
                {"benchmark",
                 {{"methods", methods},
                  {"scenarios", cfg.scenarios},
                  {"seeds", cfg.seeds},
                  {"master_seed", cfg.master_seed},
                  {"workers", cfg.workers}}}};
}

ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig cfg)
{
    require_known_keys(j, {"scenario", "dcid", "mtl", "r2", "benchmark", "sweep"}, "experiment config");
    if (j.contains("scenario")) cfg.scenario = scenario_config_from_json(j.at("scenario"), cfg.scenario);
    if (j.contains("dcid")) cfg.dcid = dcid_config_from_json(j.at("dcid"), cfg.dcid);
    if (j.contains("r2")) cfg.r2 = r2_options_from_json(j.at("r2"), cfg.r2);
    try {
        if (j.contains("mtl")) {
            const Json& m = j.at("mtl");
            require_known_keys(m, {"net", "train", "t_mtl"}, "mtl config");
            if (m.contains("net")) cfg.mtl.net = mlp_spec_from_json(m.at("net"), cfg.mtl.net);
            if (m.contains("train")) cfg.mtl.train = train_config_from_json(m.at("train"), cfg.mtl.train);
            if (m.contains("t_mtl")) cfg.mtl.t_mtl = m.at("t_mtl").get<double>();
        }
        if (j.contains("benchmark")) {
            const Json& b = j.at("benchmark");
            require_known_keys(b, {"methods", "scenarios", "seeds", "master_seed", "workers"}, "benchmark config");
            if (b.contains("methods")) {
                cfg.methods.clear();
                for (const Json& name : b.at("methods")) {
                    cfg.methods.push_back(parse_method(name.get<std::string>()));
                }
            }
            if (b.contains("scenarios")) cfg.scenarios = b.at("scenarios").get<Index>();
            if (b.contains("seeds")) cfg.seeds = b.at("seeds").get<Index>();
            if (b.contains("master_seed")) cfg.master_seed = b.at("master_seed").get<std::uint64_t>();
            if (b.contains("workers")) cfg.workers = b.at("workers").get<std::size_t>();
        }
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("experiment config: ") + e.what());
    }
    return cfg;
}

Json to_json(const SweepSpec& sweep)
{
    return Json{{"variable", to_string(sweep.variable)}, {"grid", sweep.grid}};
}

SweepSpec sweep_spec_from_json(const Json& j, SweepSpec sweep)
{
    require_known_keys(j, {"variable", "grid", "points", "min", "max"}, "sweep config");
    try {
        if (j.contains("variable")) sweep.variable = parse_sweep_variable(j.at("variable").get<std::string>());
        if (j.contains("grid") && j.contains("points")) {
            throw ValidationError("sweep config: give either grid or points, not both");
        }
        if (j.contains("grid")) sweep.grid = j.at("grid").get<std::vector<double>>();
        if (j.contains("points")) {
            if (!j.contains("min") || !j.contains("max")) {
                throw ValidationError("sweep config: points needs min and max");
            }
            sweep.grid = log_grid(j.at("min").get<double>(), j.at("max").get<double>(), j.at("points").get<std::size_t>());
        }
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("sweep config: ") + e.what());
    }
    if (sweep.grid.empty() && sweep.variable != SweepVariable::none) {
        sweep.grid = default_grid(sweep.variable);
    }
    return sweep;
}

} // namespace dcid
