#include "qms/weight.hpp"

#include <cmath>

namespace qms {

namespace {

void validate_quadrature(const QuadratureSpec& quad) {
    if (quad.nodes < 3 || quad.nodes % 2 == 0)
        throw argument_error("quadrature: nodes must be odd and >= 3");
    if (quad.t_max < 0.0) throw argument_error("quadrature: t_max must be >= 0");
}

Complex csech(Complex z) { return 1.0 / std::cosh(z); }

}  // namespace

WeightFunction WeightFunction::f0() {
    WeightFunction f;
    f.kind_ = Kind::f0;
    f.eval_ = [](double t) { return 2.0 / (std::exp(2.0 * M_PI * t) + std::exp(-2.0 * M_PI * t)); };
    // Analytic only on the open strip |s| < 1/4 (poles at t = +-i/4).
    f.strip_ = [](double t, double s) { return csech(2.0 * M_PI * Complex(t, s)); };
    f.decay_M_ = 2.0;
    f.decay_p_ = 2.0;
    return f;
}

WeightFunction WeightFunction::sech_pi() {
    WeightFunction f;
    f.kind_ = Kind::sech_pi;
    f.eval_ = [](double t) { return 1.0 / std::cosh(M_PI * t); };
    f.strip_ = [](double t, double s) { return csech(M_PI * Complex(t, s)); };
    f.decay_M_ = 4.0;
    f.decay_p_ = 2.0;
    return f;
}

WeightFunction WeightFunction::sampled(Evaluator f, std::optional<StripEvaluator> strip,
                                       double decay_M, double decay_p) {
    if (!f) throw argument_error("WeightFunction::sampled: evaluator required");
    WeightFunction w;
    w.kind_ = Kind::sampled;
    w.eval_ = std::move(f);
    w.strip_ = std::move(strip);
    w.decay_M_ = decay_M;
    w.decay_p_ = decay_p;
    return w;
}

Complex WeightFunction::strip_value(double t, double s) const {
    if (!strip_) throw capability_error("WeightFunction: no analytic continuation data");
    return (*strip_)(t, s);
}

Complex WeightFunction::spectral_weight(double omega, const QuadratureSpec& quad) const {
    switch (kind_) {
        case Kind::f0:
            return scale_ * 0.5 / std::cosh(omega / 4.0);
        case Kind::sech_pi:
            return scale_ * 1.0 / std::cosh(omega / 2.0);
        case Kind::sampled: {
            // eval_ already carries any scale factor
            validate_quadrature(quad);
            const int n = quad.nodes;
            const double h = 2.0 * quad.t_max / (n - 1);
            Complex sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double t = -quad.t_max + i * h;
                const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                sum += weight * eval_(t) * std::exp(Complex(0.0, omega * t));
            }
            return h * sum;
        }
    }
    throw std::logic_error("unreachable");
}

WeightFunction WeightFunction::scaled(double c) const {
    if (!(c > 0.0)) throw argument_error("WeightFunction::scaled: factor must be > 0");
    WeightFunction f = *this;
    const Evaluator base = eval_;
    f.eval_ = [base, c](double t) { return c * base(t); };
    if (strip_) {
        const StripEvaluator strip = *strip_;
        f.strip_ = [strip, c](double t, double s) { return c * strip(t, s); };
    }
    f.scale_ = scale_ * c;  // closed-form fhat paths
    f.decay_M_ = decay_M_ * c;
    return f;
}

AdmissibilityReport check_admissible(const WeightFunction& f, const QuadratureSpec& grid) {
    if (f.kind() == WeightFunction::Kind::f0)
        return {true, "builtin-f0", {}};

    validate_quadrature(grid);
    AdmissibilityReport rep;
    rep.status = "ok";
    const int n = grid.nodes;
    const double h = 2.0 * grid.t_max / (n - 1);

    // (a) pointwise nonnegativity on the real grid
    for (int i = 0; i < n; ++i) {
        const double t = -grid.t_max + i * h;
        if (f(t) < 0.0) {
            rep.violations.push_back("(a) f(" + std::to_string(t) + ") = " +
                                     std::to_string(f(t)) + " < 0");
            break;
        }
    }

    // (b) strip condition f(t+i/4) + f(t-i/4) >= 0
    if (!f.has_strip_data()) {
        rep.status = "not-verifiable";
        rep.violations.push_back("(b) skipped: no analytic continuation data for the strip check");
    } else {
        for (int i = 0; i < n; ++i) {
            const double t = -grid.t_max + i * h;
            const Complex sum = f.strip_value(t, 0.25) + f.strip_value(t, -0.25);
            if (std::abs(sum.imag()) > 1e-10 * std::max(1.0, std::abs(sum)) ||
                sum.real() < -1e-12) {
                rep.violations.push_back("(b) f(t+i/4)+f(t-i/4) = " + std::to_string(sum.real()) +
                                         " at t = " + std::to_string(t));
                break;
            }
        }
    }

    // (c) decay bound |f(t+is)| <= M (1+|t|)^-p, p > 1
    if (f.decay_p() <= 1.0 || f.decay_M() <= 0.0) {
        rep.violations.push_back("(c) no decay bound (M, p) with p > 1 declared");
    } else {
        const double strips[] = {-0.25, 0.0, 0.25};
        for (int i = 0; i < n && rep.violations.size() < 8; ++i) {
            const double t = -grid.t_max + i * h;
            const double bound = f.decay_M() * std::pow(1.0 + std::abs(t), -f.decay_p());
            for (double s : strips) {
                if (s != 0.0 && !f.has_strip_data()) continue;
                const double val = (s == 0.0) ? std::abs(f(t)) : std::abs(f.strip_value(t, s));
                if (val > bound) {
                    rep.violations.push_back("(c) |f(" + std::to_string(t) + " + i" +
                                             std::to_string(s) + ")| = " + std::to_string(val) +
                                             " exceeds declared bound " + std::to_string(bound));
                    break;
                }
            }
        }
    }

    rep.verdict = rep.violations.empty() && rep.status == "ok";
    if (!rep.verdict && rep.status == "ok") rep.status = "failed";
    return rep;
}

}  // namespace qms
