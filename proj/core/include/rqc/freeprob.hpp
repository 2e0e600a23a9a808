#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rqc/rational.hpp"

namespace rqc {

// Marchenko-Pastur / free Poisson law pi_c: atom max(1-c, 0) at zero plus the
// density sqrt(4c - (x-1-c)^2) / (2 pi x) on [(1-sqrt c)^2, (1+sqrt c)^2].
// All free cumulants equal c.

// p-th moment sum_{sigma in NC(p)} c^{#sigma}, evaluated by streaming the
// geodesic permutations id -> gamma_p. Exact and double overloads.
Rational mp_moment(int p, const Rational& c);
double mp_moment(int p, double c);

double mp_density(double x, double c);
double mp_atom_weight(double c);           // max(1 - c, 0)
double mp_support_lower(double c);         // (1 - sqrt(c))^2
double mp_support_upper(double c);         // (1 + sqrt(c))^2

// K_c = int x log x dpi_c(x): 1/2 + c log c for c >= 1, c^2/2 for 0 < c < 1.
double mp_entropy_K(double c);
// Numeric companion evaluated by adaptive Gauss-Kronrod quadrature of the
// density part (the atom contributes nothing to x log x).
double mp_entropy_K_quadrature(double c);

// int f(x) dpi_c(x) over the density part, via the substitution
// x = 1 + c - 2 sqrt(c) cos(theta) which removes the square-root edges.
double mp_integrate(const std::function<double(double)>& f, double c, double abs_tol = 1e-9);

// Moment <-> free cumulant transforms through the non-crossing
// moment-cumulant relation; sequences are m_1..m_P (index 0 is order 1).
// Implemented by the first-block recursion; the NC(p) enumeration serves as
// an independent oracle in the tests.
std::vector<Rational> moments_to_free_cumulants(const std::vector<Rational>& m);
std::vector<Rational> free_cumulants_to_moments(const std::vector<Rational>& kappa);

// mu_(k) = (1 - 1/k) delta_0 + (1/k) mu at moment level: m_p -> m_p / k.
std::vector<Rational> dilate_mu_k(const std::vector<Rational>& m, long k);

// Free additive convolution power at moment level: cumulants scale by t.
// Defined here for t >= 1 only.
std::vector<Rational> boxplus_power(const std::vector<Rational>& m, const Rational& t);

// Limit object carried by the predictions module.
struct LimitingDistribution {
    enum class Kind { FreePoisson, Dirac, Atomic, MomentOnly };
    Kind kind = Kind::MomentOnly;
    double c = 0.0;                                  // FreePoisson parameter
    std::vector<std::pair<double, double>> atoms;    // (weight, location)
    std::vector<double> moments;                     // m_1.. when MomentOnly

    static LimitingDistribution free_poisson(double c);
    static LimitingDistribution dirac(double x);
    static LimitingDistribution atomic(std::vector<std::pair<double, double>> atoms);
    static LimitingDistribution moment_only(std::vector<double> moments);

    // p-th moment of the limit law (p >= 1).
    double moment(int p) const;
};

}  // namespace rqc
