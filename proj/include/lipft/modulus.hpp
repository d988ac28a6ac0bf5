#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipft/errors.hpp"

namespace lipft {

enum class ModulusFamily { Power, PowerLog, PowerLogLog, Tabulated };

enum class Tristate { False, True, Unknown };

// A kth-order modulus of continuity as an abstract gauge function on
// [0, delta0], extended by the constant W beyond delta0. Immutable after
// construction; eval is pure.
//
// The log-type families are regularised so they stay positive and finite on
// the whole of (0, delta0]:
//   PowerLog:    t^gamma * (1 + log(delta0/t))^lambda
//   PowerLogLog: t^gamma * (1 + log(1 + log(delta0/t)))^lambda
// which matches the classical t^gamma (log 1/t)^lambda behaviour as t -> 0.
class Modulus {
public:
    static Modulus power(double gamma, double order_k, double delta0 = 1.0);
    static Modulus power_log(double gamma, double lambda_exp, double order_k, double delta0 = 1.0);
    static Modulus power_log_log(double gamma, double lambda_exp, double order_k, double delta0 = 1.0);
    // samples: (t, omega(t)) pairs with positive values, sorted by t,
    // covering (0, delta0]; interpolated log-linearly.
    static Modulus tabulated(std::vector<std::pair<double, double>> samples, double order_k,
                             double delta0 = 1.0);

    double eval(double t) const;

    ModulusFamily family() const { return family_; }
    double gamma() const { return gamma_; }
    double lambda_exp() const { return lambda_exp_; }
    double order_k() const { return order_k_; }
    double delta0() const { return delta0_; }
    double extension() const { return extension_; }
    std::size_t sample_count() const { return samples_.size(); }

    // Same pointwise evaluation, higher order label.
    Modulus promote_order(double new_k) const;

    std::string describe() const;

private:
    Modulus() = default;
    double eval_core(double t) const; // on (0, delta0], no extension logic

    ModulusFamily family_ = ModulusFamily::Power;
    double gamma_ = 0.0;
    double lambda_exp_ = 0.0;
    double order_k_ = 1.0;
    double delta0_ = 1.0;
    double extension_ = 1.0; // W
    std::vector<std::pair<double, double>> samples_;
};

struct MonotonicityReport {
    bool is_almost_increasing = false;
    double constant_up = 1.0;
    bool is_ratio_almost_decreasing = false;
    double constant_down = 1.0;
    double exponent_tested = 0.0;
};

struct MOIndices {
    double m_lower = 0.0;
    double M_upper = 0.0;
    std::vector<double> eps_grid;
    std::vector<double> t_grid;
};

enum class ZygmundKind { Z0, Zk };

struct ZygmundReport {
    ZygmundKind kind = ZygmundKind::Z0;
    Tristate holds = Tristate::Unknown;
    double constant = 0.0; // least C found over the base grid
    double worst_t = 0.0;
};

struct TailAssumptions {
    bool ok = false;
    double integral = 0.0; // value of the W^2/t^5 tail integral
};

MonotonicityReport check_monotonicity(const Modulus& m, int grid_size, double ratio_exponent,
                                      bool exhaustive_scan = false);

std::vector<double> default_mo_eps_grid(); // {2^-10, ..., 2^-24}
std::vector<double> default_mo_t_grid();   // log-spaced, both sides of 1

MOIndices mo_indices(const Modulus& m, const std::vector<double>& eps_grid,
                     const std::vector<double>& t_grid);
inline MOIndices mo_indices(const Modulus& m) {
    return mo_indices(m, default_mo_eps_grid(), default_mo_t_grid());
}

std::vector<double> default_zygmund_t_grid(double delta0, int depth = 20);

ZygmundReport zygmund_check(const Modulus& m, ZygmundKind kind, const std::vector<double>& t_grid,
                            double quad_tol = 1e-10);
inline ZygmundReport zygmund_check(const Modulus& m, ZygmundKind kind, double quad_tol = 1e-10) {
    return zygmund_check(m, kind, default_zygmund_t_grid(m.delta0()), quad_tol);
}

bool bary_stechkin(const Modulus& m);

TailAssumptions tail_assumptions_check(const Modulus& m);

} // namespace lipft
