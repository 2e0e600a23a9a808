#include "rqc/montecarlo.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rqc::mc {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

Eigen::VectorXcd bell_vector(int n) {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(static_cast<long>(n) * n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) phi(static_cast<long>(i) * n + i) = amp;
    return phi;
}

std::vector<double> sorted_clamped(Eigen::VectorXd vals, double neg_tol) {
    std::vector<double> out(vals.data(), vals.data() + vals.size());
    for (double& v : out) {
        if (v < 0.0) {
            if (v < -neg_tol) {
                std::ostringstream os;
                os << "spectrum: eigenvalue " << v << " below -" << neg_tol
                   << "; matrix is not PSD up to solver tolerance";
                throw std::runtime_error(os.str());
            }
            v = 0.0;
        }
    }
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

void phase_fix_columns(Matrix& q, const Matrix& qr_matrix) {
    for (long i = 0; i < q.cols(); ++i) {
        const std::complex<double> r = qr_matrix(i, i);
        const double a = std::abs(r);
        q.col(i) *= a == 0.0 ? 1.0 : r / a;
    }
}

}  // namespace

RngStream RngStream::substream(std::uint64_t master_seed, std::uint64_t index) {
    return RngStream(mix64(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    have_cached_ = true;
    cached_ = r * std::sin(kTwoPi * u2);
    return r * std::cos(kTwoPi * u2);
}

std::complex<double> RngStream::cnormal() {
    // real and imaginary parts N(0, 1/2), so E|z|^2 = 1
    const double s = 0.70710678118654752440;
    const double re = normal(), im = normal();
    return {re * s, im * s};
}

Matrix sample_ginibre(int rows, int cols, RngStream& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("sample_ginibre: empty shape");
    Matrix g(rows, cols);
    for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i) g(i, j) = rng.cnormal();
    return g;
}

Matrix sample_haar_unitary(int m, RngStream& rng) {
    Matrix g = sample_ginibre(m, m, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    phase_fix_columns(q, qr.matrixQR());
    return q;
}

Matrix sample_haar_columns(int rows, int cols, RngStream& rng) {
    if (cols > rows) throw std::invalid_argument("sample_haar_columns: cols must be <= rows");
    Matrix g = sample_ginibre(rows, cols, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    phase_fix_columns(q, qr.matrixQR());
    return q;
}

Matrix channel_apply(const Matrix& U, const Matrix& X, int k) {
    const int n = static_cast<int>(X.rows());
    if (X.cols() != n) throw std::invalid_argument("channel_apply: X must be square");
    const long nk = static_cast<long>(n) * k;
    if (U.rows() != nk || U.cols() != nk)
        throw std::invalid_argument("channel_apply: U must be nk x nk for X of size n");
    // Y = e_1 e_1*, so U (X (x) Y) U* = C X C* with C the columns of U at
    // input basis vectors |b> (x) |e_1>, i.e. column b*k.
    Matrix c(nk, n);
    for (int b = 0; b < n; ++b) c.col(b) = U.col(static_cast<long>(b) * k);
    const Matrix d = c * X;
    Matrix out = Matrix::Zero(n, n);
    Matrix cs(n, n), ds(n, n);
    for (int s = 0; s < k; ++s) {
        for (int a = 0; a < n; ++a) {
            cs.row(a) = c.row(static_cast<long>(a) * k + s);
            ds.row(a) = d.row(static_cast<long>(a) * k + s);
        }
        out.noalias() += ds * cs.adjoint();
    }
    return out;
}

std::vector<double> single_channel_spectrum(int n, int k, RngStream& rng) {
    const Matrix g = sample_ginibre(n, k, rng);
    std::vector<double> eigs = psd_factor_spectrum(g);
    double tr = 0.0;
    for (double v : eigs) tr += v;
    for (double& v : eigs) v /= tr;
    return eigs;
}

Matrix bi_channel_factor(BiMode mode, int n, int k, RngStream& rng) {
    const long nk = static_cast<long>(n) * k;
    const Matrix cu = sample_haar_columns(static_cast<int>(nk), n, rng);
    const Matrix cv = mode == BiMode::Conjugate ? cu.conjugate()
                                                : sample_haar_columns(static_cast<int>(nk), n, rng);
    // M[(a,b),(s,t)] = 1/sqrt(n) sum_i A_i[a,s] B_i[b,t] with A_i, B_i the
    // n x k reshapes of the i-th columns; Z = M M*.
    using RowMajorView =
        Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>;
    Matrix m = Matrix::Zero(static_cast<long>(n) * n, static_cast<long>(k) * k);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        RowMajorView a_i(cu.col(i).data(), n, k);
        RowMajorView b_i(cv.col(i).data(), n, k);
        for (int a = 0; a < n; ++a)
            for (int s = 0; s < k; ++s)
                m.block(static_cast<long>(a) * n, static_cast<long>(s) * k, n, k) +=
                    (amp * a_i(a, s)) * b_i;
    }
    return m;
}

Matrix bi_channel_output(BiMode mode, int n, int k, RngStream& rng,
                         const BiChannelLimits& limits) {
    if (n > limits.max_n) {
        std::ostringstream os;
        os << "bi_channel_output: n = " << n << " exceeds the memory guard " << limits.max_n
           << " (the output is n^2 x n^2)";
        throw CapacityError(os.str());
    }
    const Matrix m = bi_channel_factor(mode, n, k, rng);
    return m * m.adjoint();
}

std::vector<double> spectrum(const Matrix& H) {
    if (H.rows() != H.cols()) throw std::invalid_argument("spectrum: matrix must be square");
    const double scale = std::max(1.0, H.norm());
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("spectrum: matrix is not Hermitian within 1e-10");
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    es.compute(H, Eigen::EigenvaluesOnly);
    return sorted_clamped(es.eigenvalues(), 1e-10 * scale);
}

std::vector<double> psd_factor_spectrum(const Matrix& M) {
    const long rows = M.rows(), cols = M.cols();
    Matrix gram;
    if (cols <= rows)
        gram = M.adjoint() * M;  // same nonzero spectrum as M M*
    else
        gram = M * M.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    es.compute(gram, Eigen::EigenvaluesOnly);
    const double neg_tol = 1e-10 * std::max(1.0, gram.norm());
    std::vector<double> vals = sorted_clamped(es.eigenvalues(), neg_tol);
    vals.resize(static_cast<std::size_t>(rows), 0.0);  // pad ambient zeros
    return vals;
}

Matrix qzq_project_factor(const Matrix& M, int n) {
    if (M.rows() != static_cast<long>(n) * n)
        throw std::invalid_argument("qzq_project_factor: factor rows must be n^2");
    const Eigen::VectorXcd phi = bell_vector(n);
    Matrix out = M;
    out.noalias() -= phi * (phi.adjoint() * M);
    return out;
}

QzqSpectrum qzq_spectrum(const Matrix& Z, int n) {
    const long dim = static_cast<long>(n) * n;
    if (Z.rows() != dim || Z.cols() != dim)
        throw std::invalid_argument("qzq_spectrum: Z must be n^2 x n^2");
    const Eigen::VectorXcd phi = bell_vector(n);
    const Eigen::VectorXcd zphi = Z * phi;
    const std::complex<double> phizphi = phi.adjoint() * zphi;
    Matrix qzq = Z;
    qzq.noalias() -= phi * zphi.adjoint();
    qzq.noalias() -= zphi * phi.adjoint();
    qzq.noalias() += phizphi * phi * phi.adjoint();
    std::vector<double> vals = spectrum(qzq);
    // QZQ annihilates the Bell direction exactly; drop that structural zero.
    std::size_t drop = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (std::abs(vals[i]) < std::abs(vals[drop])) drop = i;
    QzqSpectrum out;
    out.trivial = vals[drop];
    vals.erase(vals.begin() + static_cast<long>(drop));
    out.values = std::move(vals);
    return out;
}

double vn_entropy(const std::vector<double>& eigs) {
    double h = 0.0;
    for (double v : eigs) {
        if (v < 0.0) {
            if (v < -1e-10) throw std::invalid_argument("vn_entropy: negative weight beyond tolerance");
            continue;
        }
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

SpectralSample bi_channel_spectrum_sample(BiMode mode, int n, int k, std::uint64_t seed,
                                          const BiChannelLimits& limits) {
    if (n > limits.max_n) {
        std::ostringstream os;
        os << "bi_channel_spectrum_sample: n = " << n << " exceeds the memory guard "
           << limits.max_n;
        throw CapacityError(os.str());
    }
    RngStream rng(seed);
    const Matrix m = bi_channel_factor(mode, n, k, rng);
    SpectralSample sample;
    sample.model = mode == BiMode::Conjugate ? "bi-conj" : "bi-indep";
    sample.n = n;
    sample.k = k;
    sample.seed = seed;
    sample.eigenvalues = psd_factor_spectrum(m);
    return sample;
}

namespace {

// Fixed-tree pairwise sum: value depends only on the array contents, never on
// the thread layout that produced them.
double pairwise_sum(const double* v, long count) {
    if (count <= 4) {
        double s = 0.0;
        for (long i = 0; i < count; ++i) s += v[i];
        return s;
    }
    const long half = count / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

}  // namespace

EstimatorReport estimate(const std::string& statistic, long samples, std::uint64_t master_seed,
                         int threads, const std::function<double(RngStream&, long)>& stat,
                         std::optional<double> target, std::string target_source) {
    if (samples < 2) throw std::invalid_argument("estimate: need at least 2 samples");
    std::vector<double> values(samples);
    threads = std::max(1, threads);
    if (threads == 1) {
        for (long i = 0; i < samples; ++i) {
            RngStream rng = RngStream::substream(master_seed, static_cast<std::uint64_t>(i));
            values[i] = stat(rng, i);
        }
    } else {
        std::vector<std::thread> pool;
        const long chunk = (samples + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long lo = t * chunk, hi = std::min(samples, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi]() {
                for (long i = lo; i < hi; ++i) {
                    RngStream rng = RngStream::substream(master_seed, static_cast<std::uint64_t>(i));
                    values[i] = stat(rng, i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    const double mean = pairwise_sum(values.data(), samples) / static_cast<double>(samples);
    std::vector<double> sq(samples);
    for (long i = 0; i < samples; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
    const double var = pairwise_sum(sq.data(), samples) / static_cast<double>(samples - 1);
    EstimatorReport report;
    report.statistic = statistic;
    report.mean = mean;
    report.std_error = std::sqrt(var / static_cast<double>(samples));
    report.samples = samples;
    report.target = target;
    report.target_source = std::move(target_source);
    return report;
}

}  // namespace rqc::mc
