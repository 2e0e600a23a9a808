#include "rqc/freeprob.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "rqc/permutation.hpp"

namespace rqc {

namespace {

constexpr double kPi = 3.14159265358979323846;

template <typename Number>
Number mp_moment_impl(int p, const Number& c) {
    if (p < 1 || p > 10) throw std::invalid_argument("mp_moment: need 1 <= p <= 10");
    const Permutation gamma = canonical(CanonicalPerm::Gamma, p);
    Number total(0);
    for_each_permutation(p, [&](const Permutation& a) {
        if (!is_geodesic(a, gamma)) return;
        Number term(1);
        for (int i = 0; i < a.cycle_count(); ++i) term *= c;
        total += term;
    });
    return total;
}

// Adaptive Gauss-Kronrod 7-15 on [a, b].
struct GK {
    // nodes on [-1, 1]; Kronrod 15 points, Gauss 7 embedded at odd indices
    static constexpr double xk[15] = {
        -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
        -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
        0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
        0.864864423359769,  0.949107912342759,  0.991455371120813};
    static constexpr double wk[15] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
        0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
        0.104790010322250, 0.063092092629979, 0.022935322010529};
    static constexpr double wg[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                     0.417959183673469, 0.381830050505119, 0.279705391489277,
                                     0.129484966168870};

    static void eval(const std::function<double(double)>& f, double a, double b, double& kron,
                     double& err) {
        const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
        double rk = 0, rg = 0;
        for (int i = 0; i < 15; ++i) {
            const double v = f(mid + h * xk[i]);
            rk += wk[i] * v;
            if (i % 2 == 1) rg += wg[i / 2] * v;
        }
        kron = rk * h;
        err = std::abs((rk - rg) * h);
    }

    static double integrate(const std::function<double(double)>& f, double a, double b,
                            double tol, int depth = 0) {
        double kron, err;
        eval(f, a, b, kron, err);
        if (err <= tol || depth >= 30) return kron;
        const double mid = 0.5 * (a + b);
        return integrate(f, a, mid, tol * 0.5, depth + 1) +
               integrate(f, mid, b, tol * 0.5, depth + 1);
    }
};

// h[j][s] = sum over j-tuples (i_1..i_j >= 0, sum = s) of prod m_{i_l}, m_0 = 1.
std::vector<std::vector<Rational>> composition_table(const std::vector<Rational>& m, int order) {
    std::vector<std::vector<Rational>> h(order + 1, std::vector<Rational>(order + 1, Rational(0)));
    h[0][0] = 1;
    for (int j = 1; j <= order; ++j)
        for (int s = 0; s <= order; ++s) {
            Rational acc = h[j - 1][s];  // t = 0, m_0 = 1
            for (int t = 1; t <= s; ++t) acc += h[j - 1][s - t] * m[t - 1];
            h[j][s] = acc;
        }
    return h;
}

}  // namespace

Rational mp_moment(int p, const Rational& c) { return mp_moment_impl<Rational>(p, c); }
double mp_moment(int p, double c) { return mp_moment_impl<double>(p, c); }

double mp_atom_weight(double c) { return std::max(1.0 - c, 0.0); }
double mp_support_lower(double c) {
    const double s = 1.0 - std::sqrt(c);
    return s * s;
}
double mp_support_upper(double c) {
    const double s = 1.0 + std::sqrt(c);
    return s * s;
}

double mp_density(double x, double c) {
    if (c <= 0) throw std::invalid_argument("mp_density: c must be positive");
    if (x <= mp_support_lower(c) || x >= mp_support_upper(c)) return 0.0;
    const double disc = 4.0 * c - (x - 1.0 - c) * (x - 1.0 - c);
    if (disc <= 0) return 0.0;
    return std::sqrt(disc) / (2.0 * kPi * x);
}

double mp_integrate(const std::function<double(double)>& f, double c, double abs_tol) {
    if (c <= 0) throw std::invalid_argument("mp_integrate: c must be positive");
    // x(theta) = 1 + c - 2 sqrt(c) cos(theta) turns the density part into the
    // smooth integrand f(x) * 4c sin^2(theta) / (2 pi x); no edge singularity
    // remains, the adaptive rule converges quickly.
    const double sc = std::sqrt(c);
    auto g = [&](double theta) {
        const double x = 1.0 + c - 2.0 * sc * std::cos(theta);
        const double s = std::sin(theta);
        return f(x) * (4.0 * c * s * s) / (2.0 * kPi * x);
    };
    return GK::integrate(g, 0.0, kPi, abs_tol);
}

double mp_entropy_K(double c) {
    if (c <= 0) throw std::invalid_argument("mp_entropy_K: c must be positive");
    if (c >= 1.0) return 0.5 + c * std::log(c);
    return 0.5 * c * c;
}

double mp_entropy_K_quadrature(double c) {
    return mp_integrate([](double x) { return x <= 0 ? 0.0 : x * std::log(x); }, c);
}

std::vector<Rational> free_cumulants_to_moments(const std::vector<Rational>& kappa) {
    const int order = static_cast<int>(kappa.size());
    std::vector<Rational> m(order);
    // m_p = sum_{j=1}^p kappa_j * sum_{i_1+..+i_j = p-j} m_{i_1}..m_{i_j}
    // (first-block decomposition of a non-crossing partition)
    for (int p = 1; p <= order; ++p) {
        std::vector<Rational> known(m.begin(), m.begin() + (p - 1));
        auto h = composition_table(known, p - 1);
        Rational acc = kappa[p - 1];  // j = p term: h[p][0] = 1
        for (int j = 1; j <= p - 1; ++j) acc += kappa[j - 1] * h[j][p - j];
        m[p - 1] = acc;
    }
    return m;
}

std::vector<Rational> moments_to_free_cumulants(const std::vector<Rational>& m) {
    const int order = static_cast<int>(m.size());
    if (order > 10) throw std::invalid_argument("moments_to_free_cumulants: order cap is 10");
    std::vector<Rational> kappa(order);
    for (int p = 1; p <= order; ++p) {
        std::vector<Rational> known(m.begin(), m.begin() + (p - 1));
        auto h = composition_table(known, p - 1);
        Rational acc = m[p - 1];
        for (int j = 1; j <= p - 1; ++j) acc -= kappa[j - 1] * h[j][p - j];
        kappa[p - 1] = acc;  // the j = p term is kappa_p * h[p][0] = kappa_p
    }
    return kappa;
}

std::vector<Rational> dilate_mu_k(const std::vector<Rational>& m, long k) {
    if (k < 1) throw std::invalid_argument("dilate_mu_k: k must be >= 1");
    std::vector<Rational> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i] = m[i] / Rational(k);
        out[i].canonicalize();
    }
    return out;
}

std::vector<Rational> boxplus_power(const std::vector<Rational>& m, const Rational& t) {
    if (t < 1) throw std::invalid_argument("boxplus_power: only powers t >= 1 are defined here");
    auto kappa = moments_to_free_cumulants(m);
    for (auto& kp : kappa) kp *= t;
    return free_cumulants_to_moments(kappa);
}

LimitingDistribution LimitingDistribution::free_poisson(double c) {
    LimitingDistribution d;
    d.kind = Kind::FreePoisson;
    d.c = c;
    return d;
}

LimitingDistribution LimitingDistribution::dirac(double x) {
    LimitingDistribution d;
    d.kind = Kind::Dirac;
    d.atoms = {{1.0, x}};
    return d;
}

LimitingDistribution LimitingDistribution::atomic(std::vector<std::pair<double, double>> atoms) {
    LimitingDistribution d;
    d.kind = Kind::Atomic;
    double w = 0;
    for (const auto& [weight, loc] : atoms) {
        (void)loc;
        w += weight;
    }
    if (std::abs(w - 1.0) > 1e-12)
        throw std::invalid_argument("LimitingDistribution::atomic: weights must sum to 1");
    d.atoms = std::move(atoms);
    return d;
}

LimitingDistribution LimitingDistribution::moment_only(std::vector<double> moments) {
    LimitingDistribution d;
    d.kind = Kind::MomentOnly;
    d.moments = std::move(moments);
    return d;
}

double LimitingDistribution::moment(int p) const {
    if (p < 1) throw std::invalid_argument("LimitingDistribution::moment: p >= 1");
    switch (kind) {
        case Kind::FreePoisson:
            return mp_moment(p, c);
        case Kind::Dirac:
        case Kind::Atomic: {
            double acc = 0;
            for (const auto& [w, x] : atoms) acc += w * std::pow(x, p);
            return acc;
        }
        case Kind::MomentOnly:
            if (p > static_cast<int>(moments.size()))
                throw std::out_of_range("LimitingDistribution::moment: order not available");
            return moments[p - 1];
    }
    throw std::logic_error("LimitingDistribution::moment: bad kind");
}

}  // namespace rqc
