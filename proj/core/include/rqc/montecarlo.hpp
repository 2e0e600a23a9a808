#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rqc/errors.hpp"

namespace rqc::mc {

using Matrix = Eigen::MatrixXcd;

// SplitMix64 stream with Box-Muller normals. Substreams are keyed by
// (master seed, sample index), so a sample's draw sequence never depends on
// which worker ran it or in what order.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}
    static RngStream substream(std::uint64_t master_seed, std::uint64_t index);

    std::uint64_t next_u64();
    double uniform();                 // [0, 1)
    double normal();                  // N(0, 1)
    std::complex<double> cnormal();   // E|z|^2 = 1

  private:
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

// i.i.d. entries with independent real/imaginary parts and E|G_ij|^2 = 1.
// This is the normalization under which E trace(G G*) = rows * cols and the
// Wishart moment formulas hold with unit covariance (the density written as
// exp(-N Tr GG*) elsewhere is a different scale).
Matrix sample_ginibre(int rows, int cols, RngStream& rng);

// QR of a Ginibre with the R-diagonal phase correction; plain QR is NOT
// Haar-distributed, the phase fix makes the law exactly Haar.
Matrix sample_haar_unitary(int m, RngStream& rng);

// First `cols` columns of a Haar unitary of size `rows` (a Haar isometry),
// sampled directly from a rows x cols Ginibre via thin QR + phase fix.
Matrix sample_haar_columns(int rows, int cols, RngStream& rng);

// Phi(X) = trace_k[ U (X (x) Y) U* ] with Y the projector onto the first
// environment basis vector. U is nk x nk, X is n x n with unit trace.
Matrix channel_apply(const Matrix& U, const Matrix& X, int k);

// Single channel with rank-one input: Z = W / trace(W) for W = G G* of
// parameters (n, k). Returns the sorted spectrum of Z.
std::vector<double> single_channel_spectrum(int n, int k, RngStream& rng);

enum class BiMode { Independent, Conjugate };

struct BiChannelLimits {
    int max_n = 80;  // n^2 x n^2 Hermitian eigensolves; 80 is ~6400^2
};

// Factor M (n^2 x k^2) of the bi-channel output: Z = M M*. Z depends on each
// interaction unitary only through its n columns U|i, e_1>, whose joint law
// is that of a Haar isometry, so only those columns are sampled.
Matrix bi_channel_factor(BiMode mode, int n, int k, RngStream& rng);

// The n^2 x n^2 output density matrix Z = [Phi^U (x) Phi^V](E_n).
Matrix bi_channel_output(BiMode mode, int n, int k, RngStream& rng,
                         const BiChannelLimits& limits = {});

// Eigenvalues of a Hermitian matrix, sorted descending; values within
// -1e-10 * max(1, ||H||_F) of zero are clamped to zero, anything more
// negative is an error rather than noise.
std::vector<double> spectrum(const Matrix& H);

// Eigenvalues of M M* via the smaller Gram side, padded with ambient zeros.
std::vector<double> psd_factor_spectrum(const Matrix& M);

// (I - E) M, projecting the Bell direction out of a bi-channel factor.
Matrix qzq_project_factor(const Matrix& M, int n);

struct QzqSpectrum {
    std::vector<double> values;  // the n^2 - 1 eigenvalues of QZQ on range(Q)
    double trivial = 0.0;        // the structural zero along the Bell direction
};

// Spectrum of (I-E) Z (I-E) with the trivial kernel direction along E
// reported separately.
QzqSpectrum qzq_spectrum(const Matrix& Z, int n);

// -sum lambda log lambda with 0 log 0 = 0; entries below -1e-10 are an error.
double vn_entropy(const std::vector<double>& eigs);

struct SpectralSample {
    std::string model;
    int n = 0, k = 0;
    std::uint64_t seed = 0;
    std::vector<double> eigenvalues;  // descending
};

SpectralSample bi_channel_spectrum_sample(BiMode mode, int n, int k, std::uint64_t seed,
                                          const BiChannelLimits& limits = {});

struct EstimatorReport {
    std::string statistic;
    double mean = 0.0;
    double std_error = 0.0;
    long samples = 0;
    std::optional<double> target;
    std::string target_source;
};

// Runs stat once per sample on its own substream and reduces by a fixed
// pairwise tree, so the report is bit-identical across runs and thread
// counts for a given master seed.
EstimatorReport estimate(const std::string& statistic, long samples, std::uint64_t master_seed,
                         int threads, const std::function<double(RngStream&, long)>& stat,
                         std::optional<double> target = std::nullopt,
                         std::string target_source = {});

}  // namespace rqc::mc
