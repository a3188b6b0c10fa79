#pragma once

#include <functional>
#include <optional>
#include <string>

#include "levyig/quadrature.hpp"

namespace levyig {

enum class MeasureFamily { gts, cts, vg, vg_regularized, generic };

std::string family_name(MeasureFamily f);

/// Two-sided tempered-stable parameter block. CTS collapses it to shared
/// (C, a); VG uses a = 0 on both sides. c_plus/c_minus may be zero to drop a
/// side (a zero measure on both sides models a pure-diffusion process).
struct GtsParams {
    double c_plus = 0.0;
    double a_plus = 0.5;
    double lambda_plus = 1.0;
    double c_minus = 0.0;
    double a_minus = 0.5;
    double lambda_minus = 1.0;
};

/// User-supplied Levy density with behavioural hints for the quadrature
/// engine. Densities with an exponential tail should set the rates; without
/// them the engine falls back to truncation with a recorded error bound.
/// `shape` marks densities that follow a named-family form, which unlocks the
/// analytic score functions needed by the geometry module.
struct GenericSpec {
    std::function<double(double)> density;
    double tail_rate_plus = 0.0;
    double tail_rate_minus = 0.0;
    double power0_plus = std::numeric_limits<double>::quiet_NaN();
    double power0_minus = std::numeric_limits<double>::quiet_NaN();
    std::optional<GtsParams> shape;
};

class LevyMeasure {
  public:
    static LevyMeasure gts(const GtsParams& p);
    static LevyMeasure cts(double c, double a, double lambda_plus, double lambda_minus);
    static LevyMeasure vg(double c, double lambda_plus, double lambda_minus);
    static LevyMeasure vg_regularized(double c, double a, double lambda_plus, double lambda_minus);
    static LevyMeasure generic(GenericSpec spec, const QuadratureConfig& q = {});
    static LevyMeasure zero();

    MeasureFamily family() const { return family_; }
    /// Named-family parameters; also set for generic measures built from a
    /// named shape. Null for free-form generic densities.
    const GtsParams* shape_params() const;
    bool is_zero() const;
    bool one_sided() const { return is_zero() || !shape_ || shape_->c_minus == 0.0 || shape_->c_plus == 0.0; }

    /// dnu/dx at x != 0.
    double density(double x) const;

    // Hints for the quadrature engine, per side (positive s > 0 arguments).
    double density_pos(double s) const { return density(s); }
    double density_neg(double s) const { return density(-s); }
    double power0_plus() const { return power0_plus_; }
    double power0_minus() const { return power0_minus_; }
    double tail_rate_plus() const { return tail_rate_plus_; }
    double tail_rate_minus() const { return tail_rate_minus_; }
    double min_tail_rate() const;

  private:
    LevyMeasure() = default;
    MeasureFamily family_ = MeasureFamily::gts;
    std::optional<GtsParams> shape_;
    std::function<double(double)> generic_density_;
    double power0_plus_ = 0.0;
    double power0_minus_ = 0.0;
    double tail_rate_plus_ = 0.0;
    double tail_rate_minus_ = 0.0;
};

/// Levy triplet (sigma, nu, gamma). Named jump families carry sigma = 0;
/// generic measures may combine jumps with a diffusion part.
struct LevyModel {
    double sigma = 0.0;
    double gamma = 0.0;
    LevyMeasure measure = LevyMeasure::zero();

    LevyModel(double sigma_, double gamma_, LevyMeasure measure_);
};

/// dnu/dx of the model's measure at x != 0.
double levy_density(const LevyModel& model, double x);

/// Generic measure whose density follows a named shape; keeps every
/// downstream evaluation on the quadrature path while the analytic hints
/// (and score functions) stay available.
LevyMeasure generic_from_shape(const GtsParams& p);

/// Copy of a shaped measure with replaced tempering rates (NaN = keep).
LevyMeasure measure_with_lambda(const LevyMeasure& m, double lambda_plus, double lambda_minus);

}  // namespace levyig
