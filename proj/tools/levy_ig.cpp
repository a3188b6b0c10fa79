// levy-ig: command-line front end for the Levy information-geometry library.
// Exit codes: 0 success, 1 numeric/domain error (JSON error object on stdout),
// 2 usage/configuration error (message on stderr).

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "levyig/divergence.hpp"
#include "levyig/geometry.hpp"
#include "levyig/inference.hpp"
#include "levyig/json_writer.hpp"
#include "levyig/levy_core.hpp"
#include "levyig/model_io.hpp"
#include "levyig/models.hpp"

namespace {

using namespace levyig;

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw config_error("cannot open output file: " + path);
        out << text;
    }
};

void add_quadrature_options(CLI::App* cmd, QuadratureConfig& q) {
    cmd->add_option("--rel-tol", q.rel_tol, "quadrature relative tolerance");
    cmd->add_option("--abs-tol", q.abs_tol, "quadrature absolute tolerance");
    cmd->add_option("--inner-cut", q.inner_cut, "origin split radius");
    cmd->add_option("--outer-cut", q.outer_cut, "tail split point (0 = auto)");
    cmd->add_option("--max-subdiv", q.max_subdivisions, "max adaptive subdivisions");
}

void add_output_options(CLI::App* cmd, OutputTarget& out, std::string& format,
                        const std::string& default_format) {
    format = default_format;
    cmd->add_option("-o,--out", out.path, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw config_error(std::string("cannot parse ") + what + ": '" + item + "'");
        }
    }
    if (out.empty()) throw config_error(std::string("empty list for ") + what);
    return out;
}

JsonValue matrix_json(const MetricMatrix& g) {
    JsonValue rows = JsonValue::array();
    for (std::size_t i = 0; i < g.dim; ++i) {
        JsonValue row = JsonValue::array();
        for (std::size_t j = 0; j < g.dim; ++j) row.push_back(g.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

JsonValue tensor_json(const ConnectionTensor& c) {
    JsonValue out = JsonValue::array();
    for (std::size_t i = 0; i < c.dim; ++i) {
        JsonValue plane = JsonValue::array();
        for (std::size_t j = 0; j < c.dim; ++j) {
            JsonValue row = JsonValue::array();
            for (std::size_t k = 0; k < c.dim; ++k) row.push_back(c.at(i, j, k));
            plane.push_back(std::move(row));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

LevyModel force_generic(const LevyModel& m) {
    const GtsParams* p = m.measure.shape_params();
    if (!p) return m;
    return LevyModel(m.sigma, m.gamma, generic_from_shape(*p));
}

const char* method_name(DivergenceMethod m) {
    return m == DivergenceMethod::closed_form ? "closed_form" : "quadrature";
}

int run_divergence(const std::string& p_path, const std::string& q_path, double alpha, double T,
                   bool martingale, const std::string& method, const QuadratureConfig& q,
                   const OutputTarget& out) {
    LevyModel P = load_model_file(p_path, q);
    LevyModel Q = load_model_file(q_path, q);
    DivergenceRequest req{alpha, T, martingale, q};
    DivergenceResult r;
    if (method == "quadrature") {
        r = alpha_divergence(force_generic(P), force_generic(Q), req);
    } else if (method == "closed") {
        r = alpha_divergence(P, Q, req);
        if (r.method != DivergenceMethod::closed_form)
            throw domain_error("closed-form path unavailable for this pair "
                               "(needs a shared named family differing only in lambda)");
    } else {
        r = alpha_divergence(P, Q, req);
    }
    JsonValue doc = JsonValue::object();
    doc.set("value", r.value)
        .set("delta", r.delta)
        .set("drift_term", r.drift_term)
        .set("jump_term", r.jump_term)
        .set("method", method_name(r.method));
    out.write(doc.dump(2));
    return 0;
}

int run_check_equiv(const std::string& p_path, const std::string& q_path,
                    const QuadratureConfig& q, const OutputTarget& out) {
    LevyModel P = load_model_file(p_path, q);
    LevyModel Q = load_model_file(q_path, q);
    EquivalenceReport rep = check_equivalence(P, Q, q);
    JsonValue doc = JsonValue::object();
    doc.set("equivalent", rep.equivalent).set("sigma_match", rep.sigma_match);
    if (rep.hellinger_infinite)
        doc.set("hellinger_integral", nullptr);
    else
        doc.set("hellinger_integral", rep.hellinger_integral);
    doc.set("hellinger_infinite", rep.hellinger_infinite);
    doc.set("drift_condition_checked", rep.drift_condition_checked);
    doc.set("drift_condition_residual", rep.drift_condition_residual);
    JsonValue reasons = JsonValue::array();
    for (const std::string& r : rep.reasons) reasons.push_back(r);
    doc.set("reasons", std::move(reasons));
    out.write(doc.dump(2));
    return 0;
}

CoordinateChart chart_for(const LevyModel& m) {
    const GtsParams* p = m.measure.shape_params();
    if (!p) throw domain_error("this command requires a named-family model");
    return CoordinateChart::lambda_chart(p->lambda_plus, p->lambda_minus);
}

int run_metric(const std::string& model_path, double T, const std::string& method, double alpha,
               double step, const QuadratureConfig& q, const OutputTarget& out) {
    LevyModel m = load_model_file(model_path, q);
    CoordinateChart chart = chart_for(m);
    JsonValue doc = JsonValue::object();
    JsonValue names = JsonValue::array();
    for (const auto& n : chart.names) names.push_back(n);
    doc.set("names", std::move(names));
    if (method == "all") {
        MetricMatrix closed = closed_form_fisher_metric(m.measure, T);
        MetricMatrix quad = fisher_metric(m, chart, T, q);
        MetricMatrix fd = metric_from_divergence(m, chart, alpha, T, step, q);
        const double dev = std::max({metric_rel_deviation(closed, quad),
                                     metric_rel_deviation(closed, fd),
                                     metric_rel_deviation(quad, fd)});
        doc.set("closed_form", matrix_json(closed))
            .set("quadrature", matrix_json(quad))
            .set("finite_diff", matrix_json(fd))
            .set("max_rel_deviation", dev);
    } else if (method == "closed") {
        doc.set("matrix", matrix_json(closed_form_fisher_metric(m.measure, T)))
            .set("method", "closed_form");
    } else if (method == "finite-diff") {
        doc.set("matrix", matrix_json(metric_from_divergence(m, chart, alpha, T, step, q)))
            .set("method", "finite_diff");
    } else {
        doc.set("matrix", matrix_json(fisher_metric(m, chart, T, q)))
            .set("method", "quadrature");
    }
    out.write(doc.dump(2));
    return 0;
}

int run_connection(const std::string& model_path, double alpha, double T,
                   const std::string& method, double step, const QuadratureConfig& q,
                   const OutputTarget& out) {
    LevyModel m = load_model_file(model_path, q);
    CoordinateChart chart = chart_for(m);
    JsonValue doc = JsonValue::object();
    JsonValue names = JsonValue::array();
    for (const auto& n : chart.names) names.push_back(n);
    doc.set("names", std::move(names));
    doc.set("alpha", alpha);
    if (method == "all") {
        ConnectionTensor closed = closed_form_alpha_connection(m.measure, alpha, T);
        ConnectionTensor quad = alpha_connection(m, chart, alpha, T, q);
        ConnectionTensor fd = connection_from_divergence(m, chart, alpha, T, step, q);
        const double dev = std::max({connection_rel_deviation(closed, quad),
                                     connection_rel_deviation(closed, fd),
                                     connection_rel_deviation(quad, fd)});
        doc.set("closed_form", tensor_json(closed))
            .set("quadrature", tensor_json(quad))
            .set("finite_diff", tensor_json(fd))
            .set("max_rel_deviation", dev);
    } else if (method == "closed") {
        doc.set("tensor", tensor_json(closed_form_alpha_connection(m.measure, alpha, T)))
            .set("method", "closed_form");
    } else if (method == "finite-diff") {
        doc.set("tensor", tensor_json(connection_from_divergence(m, chart, alpha, T, step, q)))
            .set("method", "finite_diff");
    } else {
        doc.set("tensor", tensor_json(alpha_connection(m, chart, alpha, T, q)))
            .set("method", "quadrature");
    }
    out.write(doc.dump(2));
    return 0;
}

int run_jeffreys(const std::string& model_path, double T, const QuadratureConfig& q,
                 const OutputTarget& out) {
    LevyModel m = load_model_file(model_path, q);
    CoordinateChart chart = chart_for(m);
    JsonValue doc = JsonValue::object();
    doc.set("value", jeffreys_prior(m, chart, T));
    out.write(doc.dump(2));
    return 0;
}

int run_prior_scan(const std::string& model_path, const std::string& rho_kind, double k,
                   double c1, double c2, const std::string& grid_text, double T,
                   const QuadratureConfig& q, const OutputTarget& out) {
    LevyModel m = load_model_file(model_path, q);
    RhoSpec rho;
    rho.k = k;
    rho.c1 = c1;
    rho.c2 = c2;
    if (rho_kind == "power-plus")
        rho.kind = RhoSpec::Kind::power_plus;
    else if (rho_kind == "power-minus")
        rho.kind = RhoSpec::Kind::power_minus;
    else if (rho_kind == "linear-combo")
        rho.kind = RhoSpec::Kind::linear_combo;
    else
        rho.kind = RhoSpec::Kind::product;
    ScanReport rep =
        superharmonic_scan(m.measure, parse_number_list(grid_text, "--grid"), rho, T);
    JsonValue doc = JsonValue::object();
    JsonValue worst = JsonValue::array();
    for (double v : rep.worst_point) worst.push_back(v);
    doc.set("all_negative", rep.all_negative)
        .set("worst_point", std::move(worst))
        .set("worst_value", rep.worst_value)
        .set("points_evaluated", rep.points_evaluated);
    out.write(doc.dump(2));
    return 0;
}

int run_simulate(const std::string& model_path, double t, int n, std::uint64_t seed,
                 int n_points, const QuadratureConfig& q, const OutputTarget& out) {
    LevyModel m = load_model_file(model_path, q);
    SampleSet s = simulate(m, t, n, seed, n_points, q);
    out.write(sample_set_to_csv(s, family_name(m.measure.family())));
    return 0;
}

int run_fit(const std::string& model_path, const std::string& data_path, double t,
            const std::string& init_text, bool penalized, const std::string& lower_text,
            const std::string& upper_text, int n_points, const QuadratureConfig& q,
            const OutputTarget& out) {
    LevyModel m = load_model_file(model_path, q);
    std::ifstream in(data_path);
    if (!in) throw config_error("cannot open data file: " + data_path);
    SampleSet data = sample_set_from_csv(in);
    FitOptions opts;
    opts.n_points = n_points;
    opts.quadrature = q;
    if (!init_text.empty()) {
        auto v = parse_number_list(init_text, "--init");
        if (v.size() != 2) throw config_error("--init needs two comma-separated values");
        opts.init = {v[0], v[1]};
    }
    if (!lower_text.empty()) {
        auto v = parse_number_list(lower_text, "--lower");
        if (v.size() != 2) throw config_error("--lower needs two comma-separated values");
        opts.lower = {v[0], v[1]};
    }
    if (!upper_text.empty()) {
        auto v = parse_number_list(upper_text, "--upper");
        if (v.size() != 2) throw config_error("--upper needs two comma-separated values");
        opts.upper = {v[0], v[1]};
    }
    FitResult r = fit(m, data, t, penalized, opts);
    JsonValue doc = JsonValue::object();
    doc.set("lambda_plus", r.lambda_plus)
        .set("lambda_minus", r.lambda_minus)
        .set("objective", r.objective)
        .set("iterations", r.iterations)
        .set("converged", r.converged)
        .set("penalized", r.penalized);
    out.write(doc.dump(2));
    return 0;
}

JsonValue pair_json(const std::array<double, 2>& v) {
    JsonValue a = JsonValue::array();
    a.push_back(v[0]);
    a.push_back(v[1]);
    return a;
}

int run_bias_bench(const std::string& model_path, int n, int replicates, double t,
                   std::uint64_t seed, int n_points, const QuadratureConfig& q,
                   const OutputTarget& out) {
    LevyModel m = load_model_file(model_path, q);
    FitOptions opts;
    opts.n_points = n_points;
    opts.quadrature = q;
    BiasReport rep = bias_benchmark(m, n, replicates, t, seed, opts);
    JsonValue doc = JsonValue::object();
    doc.set("mean_bias_plain", pair_json(rep.mean_bias_plain))
        .set("mean_bias_penalized", pair_json(rep.mean_bias_penalized))
        .set("rmse_plain", pair_json(rep.rmse_plain))
        .set("rmse_penalized", pair_json(rep.rmse_penalized))
        .set("failures", rep.failures)
        .set("replicates", rep.replicates);
    out.write(doc.dump(2));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information geometry of Levy processes"};
    app.require_subcommand(1);

    QuadratureConfig q;
    std::string p_path, q_path, model_path, data_path, format;
    std::string method = "auto", rho_kind = "power-plus", grid_text = "0.5,1,2,4";
    std::string init_text, lower_text, upper_text;
    double alpha = 0.0, T = 1.0, t = 1.0, step_metric = 1e-3, step_conn = 1e-2;
    double k = 0.0, c1 = 1.0, c2 = 1.0;
    int n = 1000, replicates = 200, n_points = 1 << 14;
    std::uint64_t seed = 1;
    bool martingale = false, penalized = false;
    OutputTarget out;

    CLI::App* divergence = app.add_subcommand("divergence", "alpha-divergence between two models");
    divergence->add_option("--p", p_path, "P model file")->required();
    divergence->add_option("--q", q_path, "Q model file")->required();
    divergence->add_option("--alpha", alpha, "alpha parameter")->required();
    divergence->add_option("--T", T, "time horizon")->required();
    divergence->add_flag("--martingale", martingale, "use the martingale (risk-neutral) form");
    divergence->add_option("--method", method, "auto|closed|quadrature")
        ->check(CLI::IsMember({"auto", "closed", "quadrature"}));
    add_quadrature_options(divergence, q);
    add_output_options(divergence, out, format, "json");

    CLI::App* check = app.add_subcommand("check-equiv", "mutual absolute continuity report");
    check->add_option("--p", p_path, "P model file")->required();
    check->add_option("--q", q_path, "Q model file")->required();
    add_quadrature_options(check, q);
    add_output_options(check, out, format, "json");

    CLI::App* metric = app.add_subcommand("metric", "Fisher information matrix");
    metric->add_option("--model", model_path, "model file")->required();
    metric->add_option("--T", T, "time horizon")->required();
    metric->add_option("--method", method, "closed|quadrature|finite-diff|all")
        ->check(CLI::IsMember({"auto", "closed", "quadrature", "finite-diff", "all"}));
    metric->add_option("--alpha", alpha, "alpha for the finite-difference route");
    metric->add_option("--step", step_metric, "finite-difference base step");
    add_quadrature_options(metric, q);
    add_output_options(metric, out, format, "json");

    CLI::App* connection = app.add_subcommand("connection", "alpha-connection components");
    connection->add_option("--model", model_path, "model file")->required();
    connection->add_option("--alpha", alpha, "alpha parameter")->required();
    connection->add_option("--T", T, "time horizon")->required();
    connection->add_option("--method", method, "closed|quadrature|finite-diff|all")
        ->check(CLI::IsMember({"auto", "closed", "quadrature", "finite-diff", "all"}));
    connection->add_option("--step", step_conn, "finite-difference base step");
    add_quadrature_options(connection, q);
    add_output_options(connection, out, format, "json");

    CLI::App* jeffreys = app.add_subcommand("jeffreys", "unnormalized Jeffreys prior");
    jeffreys->add_option("--model", model_path, "model file")->required();
    jeffreys->add_option("--T", T, "time horizon")->required();
    add_quadrature_options(jeffreys, q);
    add_output_options(jeffreys, out, format, "json");

    CLI::App* scan = app.add_subcommand("prior-scan", "superharmonicity scan of a prior ratio");
    scan->add_option("--model", model_path, "model file")->required();
    scan->add_option("--rho", rho_kind, "power-plus|power-minus|linear-combo|product")
        ->check(CLI::IsMember({"power-plus", "power-minus", "linear-combo", "product"}));
    scan->add_option("--k", k, "power exponent")->required();
    scan->add_option("--c1", c1, "linear combination weight 1");
    scan->add_option("--c2", c2, "linear combination weight 2");
    scan->add_option("--grid", grid_text, "comma-separated lambda grid values");
    scan->add_option("--T", T, "time horizon")->required();
    add_quadrature_options(scan, q);
    add_output_options(scan, out, format, "json");

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "draw increments by inverse CDF");
    simulate_cmd->add_option("--model", model_path, "model file")->required();
    simulate_cmd->add_option("--t", t, "increment horizon")->required();
    simulate_cmd->add_option("--n", n, "number of draws")->required();
    simulate_cmd->add_option("--seed", seed, "RNG seed")->required();
    simulate_cmd->add_option("--points", n_points, "density grid size (power of two)");
    add_quadrature_options(simulate_cmd, q);
    add_output_options(simulate_cmd, out, format, "csv");

    CLI::App* fit_cmd = app.add_subcommand("fit", "maximum likelihood in (lambda+, lambda-)");
    fit_cmd->add_option("--model", model_path, "base model file (fixed shared parameters)")
        ->required();
    fit_cmd->add_option("--data", data_path, "sample CSV file")->required();
    fit_cmd->add_option("--t", t, "increment horizon")->required();
    fit_cmd->add_option("--init", init_text, "initial rates 'lp,lm' (default: model's)");
    fit_cmd->add_flag("--penalized", penalized, "Jeffreys-penalized objective");
    fit_cmd->add_option("--lower", lower_text, "lower bounds 'lp,lm'");
    fit_cmd->add_option("--upper", upper_text, "upper bounds 'lp,lm'");
    fit_cmd->add_option("--points", n_points, "density grid size");
    add_quadrature_options(fit_cmd, q);
    add_output_options(fit_cmd, out, format, "json");

    CLI::App* bench = app.add_subcommand("bias-bench", "plain vs penalized MLE bias experiment");
    bench->add_option("--model", model_path, "true model file")->required();
    bench->add_option("--n", n, "observations per replicate")->required();
    bench->add_option("--replicates", replicates, "number of replicates")->required();
    bench->add_option("--t", t, "increment horizon")->required();
    bench->add_option("--seed", seed, "base seed")->required();
    bench->add_option("--points", n_points, "density grid size");
    add_quadrature_options(bench, q);
    add_output_options(bench, out, format, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    const std::string active = app.get_subcommands().front()->get_name();
    try {
        if (format == "csv" && active != "simulate")
            throw config_error("csv output is only available for 'simulate'");
        if (active == "divergence")
            return run_divergence(p_path, q_path, alpha, T, martingale, method, q, out);
        if (active == "check-equiv") return run_check_equiv(p_path, q_path, q, out);
        if (active == "metric")
            return run_metric(model_path, T, method == "auto" ? "quadrature" : method, alpha,
                              step_metric, q, out);
        if (active == "connection")
            return run_connection(model_path, alpha, T, method == "auto" ? "quadrature" : method,
                                  step_conn, q, out);
        if (active == "jeffreys") return run_jeffreys(model_path, T, q, out);
        if (active == "prior-scan")
            return run_prior_scan(model_path, rho_kind, k, c1, c2, grid_text, T, q, out);
        if (active == "simulate") return run_simulate(model_path, t, n, seed, n_points, q, out);
        if (active == "fit")
            return run_fit(model_path, data_path, t, init_text, penalized, lower_text,
                           upper_text, n_points, q, out);
        if (active == "bias-bench")
            return run_bias_bench(model_path, n, replicates, t, seed, n_points, q, out);
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        const char* code = "numeric_error";
        if (dynamic_cast<const domain_error*>(&e)) code = "domain_error";
        if (dynamic_cast<const precondition_error*>(&e)) code = "precondition_error";
        JsonValue err = JsonValue::object();
        err.set("code", code).set("message", std::string(e.what())).set("context", active);
        std::cout << err.dump(2);
        return 1;
    }
}
