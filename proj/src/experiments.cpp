#include "emptysimplex/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "emptysimplex/errors.hpp"
#include "emptysimplex/functionals.hpp"
#include "emptysimplex/parallel.hpp"
#include "emptysimplex/stats.hpp"

namespace emptysimplex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream tags keep the experiments' random streams disjoint.
enum Tag : std::uint64_t {
    tag_expected_n_t = 1,
    tag_conditional = 2,
    tag_moment = 3,
    tag_markov = 4,
    tag_poisson = 5,
    tag_probe = 6,
    tag_mecke_lhs = 7,
    tag_mecke_rhs = 8,
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class R, class F>
std::vector<R> run_trials(const ExperimentConfig& cfg, Tag tag, std::size_t n, F&& trial) {
    std::vector<R> out(cfg.trials);
    const Seed root{cfg.seed, 0};
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) { out[i] = trial(derive(root, {tag, n, i})); });
    return out;
}

/// Rows of one experiment at one n share these columns.
class RowBuilder {
public:
    RowBuilder(ExperimentResult& result, const ExperimentConfig& cfg, std::size_t n, double t)
        : result_(result), cfg_(cfg), n_(n), t_(t), first_(result.rows.size()) {}

    ResultRow& add(std::string_view quantity, double estimate, double stderr = 0.0, int k = -1,
                   std::size_t trials = 0) {
        ResultRow r;
        r.experiment = result_.name + "." + std::string(quantity);
        r.dim = cfg_.dim;
        r.n = n_;
        r.k = k;
        r.t = t_;
        r.estimate = estimate;
        r.stderr = stderr;
        r.trials = trials == 0 ? cfg_.trials : trials;
        r.seed = cfg_.seed;
        result_.rows.push_back(std::move(r));
        return result_.rows.back();
    }

    void audit() {
        add("kappa_M", unit_ball_volume(cfg_.dim));
        add("binom_n_M", binomial(n_, static_cast<std::size_t>(cfg_.dim)));
        add("T", t_);
        add("K_n", cfg_.k_rule.threshold(n_, cfg_.dim));
    }

    void finish(Clock::time_point start) {
        const double ms = ms_since(start);
        for (auto i = first_; i < result_.rows.size(); ++i) result_.rows[i].elapsed_ms = ms;
    }

private:
    ExperimentResult& result_;
    const ExperimentConfig& cfg_;
    std::size_t n_;
    double t_;
    std::size_t first_;
};

void require_degree_inputs(const ExperimentConfig& cfg, std::size_t n) {
    if (n < static_cast<std::size_t>(cfg.dim) + 1)
        throw ConfigError("degree experiments need n >= M+1; got n = " + std::to_string(n));
}

bool use_exact(const ExperimentConfig& cfg, std::size_t n) {
    return cfg.degree_mode == DegreeMode::exact && n <= cfg.caps.for_dim(cfg.dim);
}

double power(double base, int k) { return k == 0 ? 1.0 : std::pow(base, k); }

std::vector<double> powers(const std::vector<double>& v, int k) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [k](double x) { return power(x, k); });
    return out;
}

double fraction(const std::vector<double>& v, auto pred) {
    if (v.empty()) return 0.0;
    return static_cast<double>(std::count_if(v.begin(), v.end(), pred)) / static_cast<double>(v.size());
}

bool clustered(std::span<const PointView> pts, double radius) {
    const double r2 = radius * radius;
    for (const auto& a : pts) {
        bool all = true;
        for (const auto& b : pts)
            if (squared_distance(a, b) > r2) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

bool pairwise_within(std::span<const PointView> pts, double cutoff) {
    const double c2 = cutoff * cutoff;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (squared_distance(pts[i], pts[j]) > c2) return false;
    return true;
}

}  // namespace

double TRule::radius(std::size_t n, int dim) const {
    if (kind == Kind::fixed) return value;
    if (n == 0) return std::numeric_limits<double>::infinity();
    return value * std::pow(static_cast<double>(n), -1.0 / (dim - 1));
}

double KRule::threshold(std::size_t n, int dim) const {
    if (n == 0) return kNaN;
    return factor.value_or(2.0 * (dim + 1)) * std::log(static_cast<double>(n));
}

std::string_view to_string(MeckeFunction f) {
    switch (f) {
        case MeckeFunction::constant_one: return "constant_one";
        case MeckeFunction::zero: return "zero";
        case MeckeFunction::n_t_indicator: return "n_t_indicator";
        case MeckeFunction::pairwise_cutoff: return "pairwise_cutoff";
    }
    return "?";
}

MeckeFunction parse_mecke_function(std::string_view name) {
    for (auto f : {MeckeFunction::constant_one, MeckeFunction::zero, MeckeFunction::n_t_indicator,
                   MeckeFunction::pairwise_cutoff})
        if (to_string(f) == name) return f;
    throw ConfigError("unknown mecke_function '" + std::string(name) +
                      "' (expected constant_one, zero, n_t_indicator or pairwise_cutoff)");
}

void ExperimentConfig::validate() const {
    if (dim < 2 || dim > kMaxDim) throw ConfigError("dim must lie in [2, " + std::to_string(kMaxDim) + "]");
    if (body.dim() != dim)
        throw ConfigError("body dimension " + std::to_string(body.dim()) + " differs from dim " + std::to_string(dim));
    if (n_grid.empty()) throw ConfigError("n_grid must not be empty");
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (std::any_of(k_list.begin(), k_list.end(), [](int k) { return k < 0; }))
        throw ConfigError("k_list entries must be nonnegative");
    if (!(t_rule.value > 0.0) || !std::isfinite(t_rule.value)) throw ConfigError("t_rule must be positive");
    if (rho && !(*rho > 0.0)) throw ConfigError("rho must be positive");
    if (k_rule.factor && !(*k_rule.factor > 0.0)) throw ConfigError("k_rule must be positive");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    if (integral_samples < 2) throw ConfigError("integral_samples must be at least 2");
    if (density != "uniform") throw ConfigError("density '" + density + "' is not supported; only 'uniform' is");
}

ResultRow::ResultRow() : bound_lower(kNaN), bound_upper(kNaN) {}

const ResultRow& ExperimentResult::row(std::string_view quantity, std::size_t n, int k) const& {
    const std::string id = name + "." + std::string(quantity);
    for (const auto& r : rows)
        if (r.experiment == id && r.n == n && (k < 0 || r.k == k)) return r;
    throw std::out_of_range("no row " + id + " for n = " + std::to_string(n));
}

std::vector<const ResultRow*> ExperimentResult::rows_for(std::string_view quantity) const& {
    const std::string id = name + "." + std::string(quantity);
    std::vector<const ResultRow*> out;
    for (const auto& r : rows)
        if (r.experiment == id) out.push_back(&r);
    return out;
}

double n_t_lower_bracket(int dim, std::size_t n, double t, double vol) {
    return std::pow(unit_ball_volume(dim), dim - 1) * binomial(n, static_cast<std::size_t>(dim)) *
           std::pow(t, dim * (dim - 1)) * vol;
}

double n_t_upper_bracket(int dim, std::size_t n, double t, double vol) {
    return dim * n_t_lower_bracket(dim, n, t, vol);
}

double conditional_degree_bound(int dim, std::size_t n, int k, double rho, double vol) {
    const double f = factorial(dim);
    const double two = std::ldexp(1.0, dim - 1);
    const double base = vol * std::pow(rho, dim - 1) * f / two * (1.0 - std::exp(-two * rho / (f * vol)));
    return power(static_cast<double>(n) * base, k);
}

PointSet pinned_points(const ExperimentConfig& cfg, std::size_t n) {
    const double offset = 0.5 * std::pow(static_cast<double>(n), -1.0 / (cfg.dim - 1));
    const double rho = cfg.rho_value();
    if (offset > rho)
        throw ConfigError("pinned offset " + std::to_string(offset) + " exceeds rho = " + std::to_string(rho));
    const auto& c = cfg.body.center();
    PointSet out(cfg.dim);
    out.push_back(c);
    for (int axis = 0; axis + 1 < cfg.dim; ++axis) {
        Point p = c;
        p[static_cast<std::size_t>(axis)] += offset;
        out.push_back(p);
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!cfg.body.contains(out[i])) throw ConfigError("pinned point lies outside the body");
    return out;
}

ExperimentResult estimate_expected_n_t(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res{"expected_n_t", {}, {}};
    const double vol = cfg.body.volume().value;
    for (auto n : cfg.n_grid) {
        const auto start = Clock::now();
        const double t = cfg.t_rule.radius(n, cfg.dim);
        const auto counts = run_trials<double>(cfg, tag_expected_n_t, n, [&](Seed s) {
            const auto pts = sample_uniform(cfg.body, n, s);
            return n < static_cast<std::size_t>(cfg.dim) ? 0.0 : static_cast<double>(n_t(pts, t));
        });
        const auto ms = summarize(counts);
        RowBuilder rb(res, cfg, n, t);
        auto& r = rb.add("mean", ms.mean, ms.stderr);
        r.bound_lower = n_t_lower_bracket(cfg.dim, n, t, vol);
        r.bound_upper = n_t_upper_bracket(cfg.dim, n, t, vol);
        rb.audit();
        rb.finish(start);
    }
    return res;
}

ExperimentResult conditional_degree_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res{"conditional_degree", {}, {}};
    const double vol = cfg.body.volume().value;
    const double rho = cfg.rho_value();
    const auto m = static_cast<std::size_t>(cfg.dim);
    for (auto n : cfg.n_grid) {
        require_degree_inputs(cfg, n);
        const auto start = Clock::now();
        const auto pinned = pinned_points(cfg, n);
        const auto degrees = run_trials<double>(cfg, tag_conditional, n, [&](Seed s) {
            auto pts = sample_uniform(cfg.body, n - m, s);
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < m; ++i) {
                idx.push_back(pts.size());
                pts.push_back(pinned[i]);
            }
            return static_cast<double>(DegreeEngine(pts).degree_of_subset(idx));
        });
        RowBuilder rb(res, cfg, n, cfg.t_rule.radius(n, cfg.dim));
        for (int k : cfg.k_list) {
            const auto ms = summarize(powers(degrees, k));
            auto& r = rb.add("mean_pow", ms.mean, ms.stderr, k);
            r.bound_lower = conditional_degree_bound(cfg.dim, n, k, rho, vol);
            const bool violated = ms.mean + 3.0 * ms.stderr < r.bound_lower;
            rb.add("bound_flag", violated ? 1.0 : 0.0, 0.0, k);
            if (violated)
                res.warnings.push_back("conditional_degree: estimate below the lower bound at n = " +
                                       std::to_string(n) + ", k = " + std::to_string(k) +
                                       " (the bound is asymptotic in n)");
        }
        const double over = fraction(degrees, [&](double d) { return d > static_cast<double>(n - m); });
        rb.add("consistency_violations", over * static_cast<double>(cfg.trials));
        rb.add("rho", rho);
        rb.audit();
        rb.finish(start);
    }
    return res;
}

ExperimentResult estimate_moment_deg(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res{"moment_deg", {}, {}};
    struct Trial {
        double degree = 0.0;
        double violations = 0.0;
    };
    for (auto n : cfg.n_grid) {
        require_degree_inputs(cfg, n);
        const auto start = Clock::now();
        const double t = cfg.t_rule.radius(n, cfg.dim);
        const bool exact = use_exact(cfg, n);
        if (!exact && cfg.degree_mode == DegreeMode::exact)
            res.warnings.push_back("moment_deg: n = " + std::to_string(n) +
                                   " exceeds the exact cap, reporting the local lower bound");
        const auto trials = run_trials<Trial>(cfg, tag_moment, n, [&](Seed s) {
            const auto pts = sample_uniform(cfg.body, n, s);
            const DegreeEngine engine(pts);
            const auto local = engine.degree_lower_bound_local(t).degree;
            Trial tr;
            std::size_t deg = local;
            if (exact) {
                deg = engine.degree_of_set_exact(cfg.caps).degree;
                if (local > deg) tr.violations += 1.0;
            }
            const auto nt = static_cast<double>(n_t(engine, t));
            for (int k : cfg.k_list)
                if (f_t_k(engine, t, k).value > nt * power(static_cast<double>(deg), k)) tr.violations += 1.0;
            tr.degree = static_cast<double>(deg);
            return tr;
        });
        std::vector<double> degrees;
        double violations = 0.0;
        for (const auto& tr : trials) {
            degrees.push_back(tr.degree);
            violations += tr.violations;
        }
        const auto md = summarize(degrees);
        const double log_n = std::log(static_cast<double>(n));
        RowBuilder rb(res, cfg, n, t);
        rb.add("mean_deg", md.mean, md.stderr, 1);
        rb.add("r_n", md.mean * log_n / static_cast<double>(n), md.stderr * log_n / static_cast<double>(n), 1);
        for (int k : cfg.k_list) {
            const auto mk = summarize(powers(degrees, k));
            rb.add("mean_pow", mk.mean, mk.stderr, k);
            rb.add("jensen_baseline", power(md.mean, k), 0.0, k);
        }
        rb.add("local_mode", exact ? 0.0 : 1.0);
        rb.add("consistency_violations", violations);
        rb.audit();
        rb.finish(start);
    }
    return res;
}

ExperimentResult markov_tail_check(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res{"markov_tail", {}, {}};
    struct Trial {
        double nt = 0.0;
        double n2t = 0.0;
    };
    for (auto n : cfg.n_grid) {
        if (n < 2) throw ConfigError("markov_tail needs n >= 2 so that ln n > 0");
        const auto start = Clock::now();
        const double t = cfg.t_rule.radius(n, cfg.dim);
        const double log_n = std::log(static_cast<double>(n));
        const double k_n = cfg.k_rule.threshold(n, cfg.dim);
        const auto trials = run_trials<Trial>(cfg, tag_markov, n, [&](Seed s) {
            const auto pts = sample_uniform(cfg.body, n, s);
            const DegreeEngine engine(pts);
            return Trial{static_cast<double>(n_t(engine, t)), static_cast<double>(n_t(engine, 2.0 * t))};
        });
        std::vector<double> nt, n2t;
        double violations = 0.0;
        for (const auto& tr : trials) {
            nt.push_back(tr.nt);
            n2t.push_back(tr.n2t);
            if (tr.n2t < tr.nt) violations += 1.0;
        }
        const auto m2 = summarize(n2t);
        const double p = fraction(n2t, [&](double v) { return v >= log_n; });
        const double p_k = fraction(nt, [&](double v) { return v >= k_n; });
        RowBuilder rb(res, cfg, n, t);
        auto& r = rb.add("p_n2t_ge_ln_n", p, proportion_stderr(p, cfg.trials));
        r.bound_upper = m2.mean / log_n;
        rb.add("markov_bound", m2.mean / log_n, m2.stderr / log_n);
        rb.add("mean_n2t", m2.mean, m2.stderr);
        rb.add("p_nt_ge_K_n", p_k, proportion_stderr(p_k, cfg.trials));
        rb.add("ln_n", log_n);
        rb.add("consistency_violations", violations);
        rb.audit();
        rb.finish(start);
    }
    return res;
}

ExperimentResult poisson_grid_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res{"poisson_grid", {}, {}};
    const double vol = cfg.body.volume().value;
    for (auto n : cfg.n_grid) {
        const auto start = Clock::now();
        const double mesh = std::pow(vol / static_cast<double>(std::max<std::size_t>(n, 1)), 1.0 / cfg.dim);
        const auto per_trial = run_trials<std::vector<std::size_t>>(cfg, tag_poisson, n, [&](Seed s) {
            return grid_cell_counts(sample_uniform(cfg.body, n, s), cfg.body, mesh);
        });
        std::vector<std::size_t> pooled;
        for (const auto& c : per_trial) pooled.insert(pooled.end(), c.begin(), c.end());
        const auto cells = per_trial.empty() ? 0 : per_trial.front().size();
        if (cells < 50)
            res.warnings.push_back("poisson_grid: only " + std::to_string(cells) + " contained cells at n = " +
                                   std::to_string(n) + "; increase n");

        const auto pmf = empirical_pmf(pooled);
        std::vector<double> as_double(pooled.begin(), pooled.end());
        const auto mc = summarize(as_double);
        RowBuilder rb(res, cfg, n, kNaN);
        rb.add("tv", tv_distance_to_poisson(pmf, 1.0));
        rb.add("mean_count", mc.mean, mc.stderr);
        rb.add("cells", static_cast<double>(cells));
        rb.add("mesh", mesh);
        for (std::size_t j = 0; j < pmf.size(); ++j) {
            rb.add("pmf", pmf[j], proportion_stderr(pmf[j], pooled.size()), static_cast<int>(j));
            rb.add("poisson_pmf", poisson_pmf(j, 1.0), 0.0, static_cast<int>(j));
        }
        rb.finish(start);
    }
    return res;
}

ExperimentResult convergence_probe(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res{"convergence_probe", {}, {}};
    for (auto n : cfg.n_grid) {
        require_degree_inputs(cfg, n);
        if (!use_exact(cfg, n))
            throw ConfigError("convergence_probe needs exact mode within the cap; n = " + std::to_string(n));
        const auto start = Clock::now();
        const auto degrees = run_trials<double>(cfg, tag_probe, n, [&](Seed s) {
            return static_cast<double>(degree_of_set_exact(sample_uniform(cfg.body, n, s), cfg.caps).degree);
        });
        const auto t = static_cast<double>(cfg.threshold);
        const double p = fraction(degrees, [&](double d) { return d <= t; });
        const auto md = summarize(degrees);
        RowBuilder rb(res, cfg, n, cfg.t_rule.radius(n, cfg.dim));
        rb.add("p_deg_le_t", p, proportion_stderr(p, cfg.trials), static_cast<int>(cfg.threshold));
        rb.add("mean_deg", md.mean, md.stderr);
        rb.finish(start);
    }
    return res;
}

ExperimentResult mecke_check(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res{"mecke_check", {}, {}};
    const auto m = static_cast<std::size_t>(cfg.dim);
    const auto f = cfg.mecke_function;
    for (auto n : cfg.n_grid) {
        const auto start = Clock::now();
        const double t = cfg.t_rule.radius(n, cfg.dim);
        const double subsets = binomial(n, m);

        const auto lhs_values = run_trials<double>(cfg, tag_mecke_lhs, n, [&](Seed s) -> double {
            switch (f) {
                case MeckeFunction::constant_one: return subsets;
                case MeckeFunction::zero: return 0.0;
                case MeckeFunction::n_t_indicator:
                    return n < m ? 0.0 : static_cast<double>(n_t(sample_uniform(cfg.body, n, s), t));
                case MeckeFunction::pairwise_cutoff: {
                    if (n < m) return 0.0;
                    const auto pts = sample_uniform(cfg.body, n, s);
                    const SpatialGrid grid(pts);
                    std::size_t count = 0;
                    std::vector<PointView> views(m);
                    for_each_clustered_subset(grid, 2.0 * t, [&](std::span<const std::size_t> idx) {
                        for (std::size_t i = 0; i < m; ++i) views[i] = pts[idx[i]];
                        if (pairwise_within(views, 2.0 * t)) ++count;
                    });
                    return static_cast<double>(count);
                }
            }
            return 0.0;
        });
        const auto lhs = summarize(lhs_values);

        // RHS: C(n,M) times E f(U_1..U_M) for i.i.d. uniform U_i, in fixed chunks.
        MeanStderr rhs{0.0, 0.0};
        if (f == MeckeFunction::constant_one) {
            rhs.mean = subsets;
        } else if (f != MeckeFunction::zero) {
            constexpr std::size_t chunks = 64;
            const Seed root{cfg.seed, 0};
            std::vector<double> hits(chunks, 0.0);
            parallel_for(chunks, cfg.threads, [&](std::size_t c) {
                const std::size_t begin = cfg.integral_samples * c / chunks;
                const std::size_t end = cfg.integral_samples * (c + 1) / chunks;
                auto rng = make_engine(derive(root, {tag_mecke_rhs, n, c}));
                std::vector<double> buf(m * m);
                std::vector<PointView> views(m);
                for (std::size_t i = 0; i < m; ++i) views[i] = PointView(buf.data() + i * m, m);
                double h = 0.0;
                for (auto s = begin; s < end; ++s) {
                    for (std::size_t i = 0; i < m; ++i) cfg.body.sample_point(rng, std::span<double>(buf.data() + i * m, m));
                    const bool in = f == MeckeFunction::n_t_indicator ? clustered(views, t) : pairwise_within(views, 2.0 * t);
                    h += in ? 1.0 : 0.0;
                }
                hits[c] = h;
            });
            double total = 0.0;
            for (double h : hits) total += h;
            const double p = total / static_cast<double>(cfg.integral_samples);
            rhs.mean = subsets * p;
            rhs.stderr = subsets * proportion_stderr(p, cfg.integral_samples);
        }

        RowBuilder rb(res, cfg, n, t);
        rb.add("lhs", lhs.mean, lhs.stderr);
        rb.add("rhs", rhs.mean, rhs.stderr, -1, cfg.integral_samples);
        rb.add("difference", lhs.mean - rhs.mean, std::hypot(lhs.stderr, rhs.stderr));
        rb.audit();
        rb.finish(start);
    }
    return res;
}

std::vector<std::string_view> experiment_names() {
    return {"expected_n_t", "conditional_degree", "moment_deg", "markov_tail",
            "poisson_grid", "convergence_probe",  "mecke_check"};
}

ExperimentResult run_experiment(std::string_view name, const ExperimentConfig& cfg) {
    if (name == "expected_n_t") return estimate_expected_n_t(cfg);
    if (name == "conditional_degree") return conditional_degree_experiment(cfg);
    if (name == "moment_deg") return estimate_moment_deg(cfg);
    if (name == "markov_tail") return markov_tail_check(cfg);
    if (name == "poisson_grid") return poisson_grid_experiment(cfg);
    if (name == "convergence_probe") return convergence_probe(cfg);
    if (name == "mecke_check") return mecke_check(cfg);
    std::string known;
    for (auto n : experiment_names()) known += (known.empty() ? "" : ", ") + std::string(n);
    throw ConfigError("unknown experiment '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace emptysimplex
