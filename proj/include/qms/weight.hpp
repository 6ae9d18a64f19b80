#ifndef QMS_WEIGHT_HPP
#define QMS_WEIGHT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qms/algebra.hpp"

namespace qms {

struct QuadratureSpec {
    double t_max = 10.0;
    int nodes = 2001;  // must be odd and >= 3
};

struct AdmissibilityReport {
    bool verdict = false;
    // "builtin-f0" for the distinguished weight; "ok", "failed", or
    // "not-verifiable" otherwise.
    std::string status;
    std::vector<std::string> violations;
};

// Weight f(t) entering the generator integral, together with its Fourier
// transform fhat(w) = int f(t) e^{iwt} dt.  f0 and sech_pi carry closed
// forms; sampled weights fall back to trapezoidal quadrature of the
// stored evaluator.
class WeightFunction {
public:
    enum class Kind { f0, sech_pi, sampled };

    using Evaluator = std::function<double(double)>;
    // Analytic continuation f(t + i s) for |s| <= 1/4; needed for the
    // strip condition of the admissibility check.
    using StripEvaluator = std::function<Complex(double, double)>;

    // f0(t) = 2 / (e^{2 pi t} + e^{-2 pi t}); fhat0(w) = sech(w/4) / 2.
    static WeightFunction f0();
    // f(t) = sech(pi t); fhat(w) = sech(w/2).
    static WeightFunction sech_pi();
    static WeightFunction sampled(Evaluator f, std::optional<StripEvaluator> strip = {},
                                  double decay_M = 0.0, double decay_p = 0.0);

    Kind kind() const { return kind_; }
    double operator()(double t) const { return eval_(t); }
    bool has_strip_data() const { return static_cast<bool>(strip_); }
    Complex strip_value(double t, double s) const;
    double decay_M() const { return decay_M_; }
    double decay_p() const { return decay_p_; }

    // fhat(w); closed form where available, else trapezoid on [-t_max, t_max].
    Complex spectral_weight(double omega, const QuadratureSpec& quad = {}) const;

    // Scale f by c > 0 (spectral transform scales along).
    WeightFunction scaled(double c) const;

private:
    WeightFunction() = default;

    Kind kind_ = Kind::sampled;
    Evaluator eval_;
    std::optional<StripEvaluator> strip_;
    double decay_M_ = 0.0;
    double decay_p_ = 0.0;
    double scale_ = 1.0;
};

// Eq.-style admissibility: (a) f >= 0 on the grid, (b) f(t+i/4)+f(t-i/4) >= 0
// (requires strip data), (c) declared decay bound |f(t+is)| <= M(1+|t|)^-p
// with p > 1 verified on the grid.  f0 bypasses with status "builtin-f0".
AdmissibilityReport check_admissible(const WeightFunction& f, const QuadratureSpec& grid);

}  // namespace qms

#endif
