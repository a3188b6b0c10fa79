#include "levyig/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <random>
#include <sstream>
#include <thread>

#include "levyig/geometry.hpp"
#include "levyig/levy_core.hpp"
#include "levyig/nelder_mead.hpp"
#include "fft.hpp"

namespace levyig {

namespace {

constexpr double kPdfFloor = 1e-300;

void check_n_points(int n) {
    if (n < 1024 || (n & (n - 1)) != 0)
        throw domain_error("density grid: n_points must be a power of two >= 1024");
}

std::string model_fingerprint(const LevyModel& m) {
    std::ostringstream os;
    os << family_name(m.measure.family()) << ";sigma=" << m.sigma << ";gamma=" << m.gamma;
    if (const GtsParams* p = m.measure.shape_params()) {
        os << ";c+=" << p->c_plus << ";a+=" << p->a_plus << ";l+=" << p->lambda_plus
           << ";c-=" << p->c_minus << ";a-=" << p->a_minus << ";l-=" << p->lambda_minus;
    }
    return os.str();
}

// First two cumulants of X_t from the triplet.
void cumulants(const LevyModel& model, double t, const QuadratureConfig& q, double& mean,
               double& variance) {
    const double tail = model.measure.is_zero() ? 0.0 : jump_tail_mean(model.measure, q);
    const double m2 = model.measure.is_zero() ? 0.0 : jump_second_moment(model.measure, q);
    mean = t * (model.gamma + tail);
    variance = t * (model.sigma * model.sigma + m2);
}

DensityGrid build_grid(const LevyModel& model, double t, int n_points, double halfwidth,
                       const QuadratureConfig& q) {
    check_n_points(n_points);
    if (!(t > 0.0)) throw domain_error("density grid: t must be > 0");
    q.validate();

    double mean = 0.0, variance = 0.0;
    cumulants(model, t, q, mean, variance);
    if (!(variance > 0.0))
        throw domain_error("density grid: degenerate law (zero variance)");
    const double hw = halfwidth > 0.0 ? halfwidth : 12.0 * std::sqrt(variance);

    const std::size_t n = static_cast<std::size_t>(n_points);
    const double dx = 2.0 * hw / static_cast<double>(n);
    const double dz = 2.0 * M_PI / (static_cast<double>(n) * dx);
    const double center = mean;

    // psi_k = phi(z_k) e^{-i (k - N/2) dz c} (-1)^k with z_k = (k - N/2) dz;
    // the DFT then lands pdf(x_j) on x_j = c + (j - N/2) dx up to a global
    // (-1)^{N/2} sign (=+1 for N divisible by 4).
    ExponentEvaluator phi(model, q);
    std::vector<std::complex<double>> work(n);
    const std::size_t half = n / 2;
    for (std::size_t k = half; k < n; ++k) {
        const double z = (static_cast<double>(k) - static_cast<double>(half)) * dz;
        const std::complex<double> w = std::exp(phi(std::complex<double>(z, 0.0), t));
        const double angle = -z * center;
        const std::complex<double> tw(std::cos(angle), std::sin(angle));
        const double parity = (k % 2 == 0) ? 1.0 : -1.0;
        work[k] = w * tw * parity;
        const std::size_t mirror = n - k;  // z_{mirror} = -z
        if (mirror != k && mirror < n) work[mirror] = std::conj(work[k]);
    }
    {   // k = 0 has no mirror partner
        const double z = -static_cast<double>(half) * dz;
        const std::complex<double> w = std::exp(phi(std::complex<double>(z, 0.0), t));
        const std::complex<double> tw(std::cos(-z * center), std::sin(-z * center));
        work[0] = w * tw;  // (-1)^0 = 1
    }
    detail::fft_forward(work);

    DensityGrid grid;
    grid.t = t;
    grid.dx = dx;
    grid.x0 = center - static_cast<double>(half) * dx;
    grid.pdf.resize(n);
    double clipped = 0.0;
    const double scale = dz / (2.0 * M_PI);
    for (std::size_t j = 0; j < n; ++j) {
        const double parity = (j % 2 == 0) ? 1.0 : -1.0;
        double v = scale * parity * work[j].real();
        if (v < 0.0) {
            clipped += -v * dx;
            v = 0.0;
        }
        grid.pdf[j] = v;
    }
    double raw = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) raw += 0.5 * (grid.pdf[j] + grid.pdf[j + 1]) * dx;
    if (std::fabs(raw - 1.0) > 1e-3) {
        std::ostringstream os;
        os << "density grid too small: pdf mass " << raw << "; retry with halfwidth >= "
           << 1.5 * hw;
        throw numeric_error(os.str(), raw);
    }
    grid.truncation_error_bound = std::fabs(raw - 1.0) + clipped;
    for (double& v : grid.pdf) v /= raw;

    grid.cdf.resize(n);
    grid.cdf[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j)
        grid.cdf[j] = grid.cdf[j - 1] + 0.5 * (grid.pdf[j - 1] + grid.pdf[j]) * dx;
    for (std::size_t j = 0; j < n; ++j) grid.cdf[j] = std::min(grid.cdf[j], 1.0);
    grid.cdf[n - 1] = 1.0;
    return grid;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int env_threads() {
    if (const char* env = std::getenv("LEVY_IG_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

LevyModel with_rates(const LevyModel& base, double lp, double lm) {
    return LevyModel(base.sigma, base.gamma, measure_with_lambda(base.measure, lp, lm));
}

double grid_halfwidth_for_data(const LevyModel& model, double t, const SampleSet& data,
                               const QuadratureConfig& q) {
    double mean = 0.0, variance = 0.0;
    cumulants(model, t, q, mean, variance);
    double hw = 12.0 * std::sqrt(std::max(variance, 0.0));
    for (double x : data.values) hw = std::max(hw, 1.05 * std::fabs(x - mean));
    return hw;
}

}  // namespace

double DensityGrid::log_pdf(double xv) const {
    const double pos = (xv - x0) / dx;
    if (pos <= 0.0) return std::log(std::max(pdf.front(), kPdfFloor));
    if (pos >= static_cast<double>(size() - 1))
        return std::log(std::max(pdf.back(), kPdfFloor));
    const std::size_t j = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(j);
    const double la = std::log(std::max(pdf[j], kPdfFloor));
    const double lb = std::log(std::max(pdf[j + 1], kPdfFloor));
    return (1.0 - w) * la + w * lb;
}

double DensityGrid::quantile(double u) const {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.begin()) return x0;
    if (it == cdf.end()) return x(size() - 1);
    const std::size_t j = static_cast<std::size_t>(it - cdf.begin());
    const double c0 = cdf[j - 1], c1 = cdf[j];
    const double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
    return x(j - 1) + w * dx;
}

double DensityGrid::grid_mean() const {
    double m = 0.0;
    for (std::size_t j = 0; j + 1 < size(); ++j) {
        const double xm = 0.5 * (x(j) + x(j + 1));
        m += xm * 0.5 * (pdf[j] + pdf[j + 1]) * dx;
    }
    return m;
}

double DensityGrid::grid_variance() const {
    const double m = grid_mean();
    double v = 0.0;
    for (std::size_t j = 0; j + 1 < size(); ++j) {
        const double xm = 0.5 * (x(j) + x(j + 1));
        v += (xm - m) * (xm - m) * 0.5 * (pdf[j] + pdf[j + 1]) * dx;
    }
    return v;
}

DensityGrid density_grid(const LevyModel& model, double t, int n_points, double domain_halfwidth,
                         const QuadratureConfig& q) {
    return build_grid(model, t, n_points, domain_halfwidth, q);
}

SampleSet simulate(const LevyModel& model, double t, int n, std::uint64_t seed, int n_points,
                   const QuadratureConfig& q) {
    if (n < 1) throw precondition_error("simulate: n must be >= 1");
    DensityGrid grid = build_grid(model, t, n_points, 0.0, q);
    SampleSet s;
    s.seed = seed;
    s.t = t;
    s.fingerprint = model_fingerprint(model) + ";t=" + std::to_string(t) +
                    ";n=" + std::to_string(n) + ";seed=" + std::to_string(seed);
    s.values.resize(static_cast<std::size_t>(n));
    std::mt19937_64 rng(seed);
    for (double& v : s.values) v = grid.quantile(uniform01(rng));
    return s;
}

std::string sample_set_to_csv(const SampleSet& s, const std::string& family) {
    std::ostringstream os;
    os.precision(17);
    os << "# levy-sample v1; family=" << family << "; t=" << s.t << "; seed=" << s.seed << "\n";
    for (double v : s.values) os << v << "\n";
    return os.str();
}

SampleSet sample_set_from_csv(std::istream& in) {
    SampleSet s;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# levy-sample v1;", 0) != 0)
        throw config_error("sample CSV: missing '# levy-sample v1' header");
    const auto tpos = line.find("t=");
    const auto spos = line.find("seed=");
    if (tpos == std::string::npos || spos == std::string::npos)
        throw config_error("sample CSV: header must carry t= and seed=");
    s.t = std::stod(line.substr(tpos + 2));
    s.seed = std::stoull(line.substr(spos + 5));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        s.values.push_back(std::stod(line));
    }
    return s;
}

double log_likelihood(const LevyModel& model, const SampleSet& data, double t, int n_points,
                      const QuadratureConfig& q) {
    if (data.values.empty()) throw precondition_error("log_likelihood: empty data");
    const double hw = grid_halfwidth_for_data(model, t, data, q);
    DensityGrid grid = build_grid(model, t, n_points, hw, q);
    double ll = 0.0;
    for (double x : data.values) ll += grid.log_pdf(x);
    return ll;
}

double penalized_log_likelihood(const LevyModel& model, const SampleSet& data, double t,
                                int n_points, const QuadratureConfig& q) {
    const GtsParams* p = model.measure.shape_params();
    if (!p) throw domain_error("penalized likelihood requires a named measure shape");
    CoordinateChart chart = CoordinateChart::lambda_chart(p->lambda_plus, p->lambda_minus);
    const double prior = jeffreys_prior(LevyModel(model.sigma, model.gamma, model.measure),
                                        chart, t);
    return log_likelihood(model, data, t, n_points, q) + std::log(prior);
}

FitResult fit(const LevyModel& base, const SampleSet& data, double t, bool penalized,
              const FitOptions& options) {
    if (data.values.empty()) throw precondition_error("fit: empty data");
    const GtsParams* p = base.measure.shape_params();
    if (!p) throw domain_error("fit requires a named measure shape");
    std::array<double, 2> init = options.init;
    if (std::isnan(init[0])) init[0] = p->lambda_plus;
    if (std::isnan(init[1])) init[1] = p->lambda_minus;
    for (int i = 0; i < 2; ++i) {
        if (!(init[i] > options.lower[i]) || !(init[i] < options.upper[i]))
            throw precondition_error("fit: init must lie inside the bounds");
    }

    auto objective = [&](const std::vector<double>& x) {
        LevyModel m = with_rates(base, x[0], x[1]);
        const double v = penalized
                             ? penalized_log_likelihood(m, data, t, options.n_points,
                                                        options.quadrature)
                             : log_likelihood(m, data, t, options.n_points, options.quadrature);
        return -v;  // simplex minimizes
    };

    NelderMeadOptions nm;
    nm.max_iterations = options.max_iterations;
    const std::array<std::array<double, 2>, 3> jitter{{{1.0, 1.0}, {0.75, 1.3}, {1.35, 0.7}}};
    FitResult best;
    bool have_best = false;
    int total_iterations = 0;
    for (const auto& jf : jitter) {
        std::vector<double> x0{init[0] * jf[0], init[1] * jf[1]};
        NelderMeadResult r = nelder_mead_minimize(
            objective, x0, {options.lower[0], options.lower[1]},
            {options.upper[0], options.upper[1]}, nm);
        total_iterations += r.iterations;
        FitResult cand;
        cand.lambda_plus = r.x[0];
        cand.lambda_minus = r.x[1];
        cand.objective = -r.f;
        cand.converged = r.converged;
        cand.penalized = penalized;
        const bool better =
            !have_best || cand.objective > best.objective ||
            (cand.objective == best.objective &&
             std::make_pair(cand.lambda_plus, cand.lambda_minus) <
                 std::make_pair(best.lambda_plus, best.lambda_minus));
        if (better) best = cand;
        have_best = true;
    }
    best.iterations = total_iterations;
    return best;
}

BiasReport bias_benchmark(const LevyModel& truth, int n_per_replicate, int replicates, double t,
                          std::uint64_t seed, const FitOptions& options, int threads) {
    if (replicates < 50)
        throw precondition_error("bias_benchmark: at least 50 replicates required");
    if (n_per_replicate < 1) throw precondition_error("bias_benchmark: n must be >= 1");
    const GtsParams* p = truth.measure.shape_params();
    if (!p) throw domain_error("bias_benchmark requires a named measure shape");
    const double true_lp = p->lambda_plus, true_lm = p->lambda_minus;

    struct Row {
        bool ok = false;
        double plain_lp = 0.0, plain_lm = 0.0;
        double pen_lp = 0.0, pen_lm = 0.0;
    };
    std::vector<Row> rows(static_cast<std::size_t>(replicates));

    auto run_replicate = [&](int r) {
        Row row;
        try {
            SampleSet data = simulate(truth, t, n_per_replicate,
                                      seed + static_cast<std::uint64_t>(r), options.n_points,
                                      options.quadrature);
            FitResult plain = fit(truth, data, t, false, options);
            FitResult pen = fit(truth, data, t, true, options);
            if (plain.converged && pen.converged) {
                row.ok = true;
                row.plain_lp = plain.lambda_plus;
                row.plain_lm = plain.lambda_minus;
                row.pen_lp = pen.lambda_plus;
                row.pen_lm = pen.lambda_minus;
            }
        } catch (const std::exception&) {
            row.ok = false;
        }
        rows[static_cast<std::size_t>(r)] = row;
    };

    int nthreads = threads > 0 ? threads : env_threads();
    nthreads = std::clamp(nthreads, 1, replicates);
    if (nthreads == 1) {
        for (int r = 0; r < replicates; ++r) run_replicate(r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int tid = 0; tid < nthreads; ++tid)
            pool.emplace_back([&, tid] {
                for (int r = tid; r < replicates; r += nthreads) run_replicate(r);
            });
        for (auto& th : pool) th.join();
    }

    BiasReport rep;
    rep.replicates = replicates;
    double n_ok = 0.0;
    for (const Row& row : rows) {
        if (!row.ok) {
            ++rep.failures;
            continue;
        }
        n_ok += 1.0;
        rep.mean_bias_plain[0] += row.plain_lp - true_lp;
        rep.mean_bias_plain[1] += row.plain_lm - true_lm;
        rep.mean_bias_penalized[0] += row.pen_lp - true_lp;
        rep.mean_bias_penalized[1] += row.pen_lm - true_lm;
        rep.rmse_plain[0] += (row.plain_lp - true_lp) * (row.plain_lp - true_lp);
        rep.rmse_plain[1] += (row.plain_lm - true_lm) * (row.plain_lm - true_lm);
        rep.rmse_penalized[0] += (row.pen_lp - true_lp) * (row.pen_lp - true_lp);
        rep.rmse_penalized[1] += (row.pen_lm - true_lm) * (row.pen_lm - true_lm);
    }
    if (rep.failures > replicates / 10)
        throw numeric_error("bias_benchmark: more than 10% of replicates failed",
                            static_cast<double>(rep.failures));
    if (n_ok > 0.0) {
        for (int i = 0; i < 2; ++i) {
            rep.mean_bias_plain[i] /= n_ok;
            rep.mean_bias_penalized[i] /= n_ok;
            rep.rmse_plain[i] = std::sqrt(rep.rmse_plain[i] / n_ok);
            rep.rmse_penalized[i] = std::sqrt(rep.rmse_penalized[i] / n_ok);
        }
    }
    return rep;
}

}  // namespace levyig
