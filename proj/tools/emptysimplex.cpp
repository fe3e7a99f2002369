#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emptysimplex/config.hpp"
#include "emptysimplex/covariogram.hpp"
#include "emptysimplex/csv.hpp"
#include "emptysimplex/degree.hpp"
#include "emptysimplex/errors.hpp"
#include "emptysimplex/experiments.hpp"
#include "emptysimplex/functionals.hpp"

namespace es = emptysimplex;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw es::ConfigError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw es::ConfigError("cannot write '" + path + "'");
        }
    }
    std::ostream& operator*() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string out;
    std::string mode;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--seed", c.seed, "master seed");
    app->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "output CSV path (stdout if omitted)");
    app->add_option("--mode", c.mode, "degree mode")->check(CLI::IsMember({"exact", "local"}));
}

es::ExperimentConfig config_from(const Common& c) {
    auto cfg = c.config.empty() ? es::ExperimentConfig{} : es::load_config(c.config);
    if (c.seed) cfg.seed = *c.seed;
    cfg.threads = c.threads;
    if (c.mode == "exact") cfg.degree_mode = es::DegreeMode::exact;
    if (c.mode == "local") cfg.degree_mode = es::DegreeMode::local_lower_bound;
    if (!c.out.empty()) cfg.output = c.out;
    cfg.validate();
    return cfg;
}

es::ConvexBody body_from(const std::string& body, const Common& c) {
    if (body.empty()) return config_from(c).body;
    if (body.front() == '{') return es::parse_body(body);
    return es::parse_body(read_file(body));
}

es::PointSet points_from(const std::string& path) {
    if (path == "-") return es::read_points(std::cin);
    std::ifstream in(path);
    if (!in) throw es::ConfigError("cannot open '" + path + "'");
    return es::read_points(in);
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Empty simplices, clustered-subset functionals and covariograms of convex bodies"};
    app.require_subcommand(1);

    Common sample_opts, degree_opts, func_opts, cov_opts, exp_opts;

    auto* sample = app.add_subcommand("sample", "draw i.i.d. uniform points from a body");
    std::string sample_body;
    std::size_t sample_n = 100;
    sample->add_option("--body", sample_body, "body as inline JSON or a JSON file (default: config body)");
    sample->add_option("-n,--count", sample_n, "number of points");
    add_common(sample, sample_opts);

    auto* degree = app.add_subcommand("degree", "degree of a point set read from CSV");
    std::string degree_in = "-";
    double degree_t = 0.0;
    degree->add_option("--in", degree_in, "points CSV ('-' for stdin)");
    degree->add_option("--T", degree_t, "cluster radius for local mode (default n^(-1/(M-1)))");
    add_common(degree, degree_opts);

    auto* func = app.add_subcommand("functionals", "N_T and F_T^(k) of a point set read from CSV");
    std::string func_in = "-";
    std::vector<double> func_t;
    std::vector<int> func_k{0, 1};
    func->add_option("--in", func_in, "points CSV ('-' for stdin)");
    func->add_option("--T", func_t, "radii (default n^(-1/(M-1)))");
    func->add_option("--k", func_k, "moment orders");
    add_common(func, func_opts);

    auto* cov = app.add_subcommand("covariogram", "directional covariogram profiles and perimeter");
    std::string cov_body;
    std::size_t cov_dirs = 0, cov_samples = std::size_t{1} << 16;
    cov->add_option("--body", cov_body, "body as inline JSON or a JSON file (default: config body)");
    cov->add_option("--directions", cov_dirs, "quadrature size (default 256 in the plane, 512 otherwise)");
    cov->add_option("--samples", cov_samples, "Monte Carlo samples per direction for bodies without a closed form");
    add_common(cov, cov_opts);

    auto* exp = app.add_subcommand("experiment", "run a named experiment");
    std::string exp_name;
    std::string names;
    for (auto n : es::experiment_names()) names += (names.empty() ? "" : ", ") + std::string(n);
    exp->add_option("name", exp_name, "one of: " + names)->required();
    add_common(exp, exp_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) {
            const auto body = body_from(sample_body, sample_opts);
            const std::uint64_t seed = sample_opts.seed.value_or(
                sample_opts.config.empty() ? 1 : es::load_config(sample_opts.config).seed);
            Sink out(sample_opts.out);
            es::write_points(*out, es::sample_uniform(body, sample_n, es::Seed{seed, 0}));
        } else if (*degree) {
            const auto pts = points_from(degree_in);
            const es::DegreeEngine engine(pts);
            const double t = degree_t > 0.0 ? degree_t
                                            : es::TRule{}.radius(pts.size(), pts.dim());
            const auto report = degree_opts.mode == "local"
                                    ? engine.degree_lower_bound_local(t)
                                    : engine.degree_of_set_exact({}, degree_opts.threads);
            Sink out(degree_opts.out);
            *out << "n,M,mode,T,degree,argmax,simplex_tests,subsets_examined\n"
                 << pts.size() << ',' << pts.dim() << ',' << es::to_string(report.mode) << ','
                 << (report.mode == es::DegreeMode::exact ? "" : es::format_number(t)) << ',' << report.degree
                 << ',' << join(report.argmax.indices) << ',' << report.simplex_tests << ','
                 << report.subsets_examined << '\n';
        } else if (*func) {
            const auto pts = points_from(func_in);
            if (func_t.empty()) func_t.push_back(es::TRule{}.radius(pts.size(), pts.dim()));
            const es::DegreeEngine engine(pts);
            Sink out(func_opts.out);
            *out << "T,k,value,subsets\n";
            for (double t : func_t)
                for (int k : func_k) {
                    const auto v = es::f_t_k(engine, t, k);
                    *out << es::format_number(t) << ',' << k << ',' << es::format_number(v.value) << ','
                         << v.subsets << '\n';
                }
        } else if (*cov) {
            const auto body = body_from(cov_body, cov_opts);
            const auto count = cov_dirs ? cov_dirs : es::default_direction_count(body.dim());
            es::McOptions mc;
            mc.samples = cov_samples;
            mc.seed = {cov_opts.seed.value_or(1), 0};
            mc.threads = cov_opts.threads;
            const auto per = es::perimeter_via_covariogram(body, count, es::default_step_schedule(body), mc);
            Sink out(cov_opts.out);
            for (int j = 0; j < body.dim(); ++j) *out << 'u' << j << ',';
            *out << "r,g,derivative,derivative_stderr,perimeter,perimeter_stderr\n";
            for (const auto& p : per.profiles)
                for (std::size_t i = 0; i < p.radii.size(); ++i) {
                    for (double x : p.direction) *out << es::format_number(x) << ',';
                    *out << es::format_number(p.radii[i]) << ',' << es::format_number(p.values[i]) << ','
                         << es::format_number(p.right_derivative) << ',' << es::format_number(p.stderr) << ','
                         << es::format_number(per.value) << ',' << es::format_number(per.stderr) << '\n';
                }
        } else if (*exp) {
            const auto cfg = config_from(exp_opts);
            const auto result = es::run_experiment(exp_name, cfg);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
            Sink out(cfg.output);
            es::write_result_header(*out);
            es::write_result_rows(*out, result.rows);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
