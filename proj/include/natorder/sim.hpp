#ifndef NATORDER_SIM_HPP
#define NATORDER_SIM_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "natorder/util.hpp"

namespace natorder {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so trials can be evaluated in any order or in
// parallel without changing the output. The mixer is SplitMix64.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}
    uint64_t next_u64();
    double next_unit();  // uniform in [0, 1)
    // standard normal pair via Marsaglia polar rejection
    void next_gauss_pair(double& g1, double& g2);

  private:
    uint64_t seed_, stream_, counter_ = 0;
};

// matrix in row-major order, complex<double>
struct CdMat {
    int rows = 0, cols = 0;
    std::vector<std::complex<double>> a;
    CdMat() = default;
    CdMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    std::complex<double>& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const std::complex<double>& at(int r, int c) const {
        return a[size_t(r) * cols + c];
    }
};

// i.i.d. complex Gaussian channel matrix, Re/Im ~ N(0, sigma_h^2)
CdMat channel_sample(CounterRng& rng, int n_r_antennas, int n_t, double sigma_h);

// exhaustive ML decoding: argmin ||Y - H X||_F^2, ties to the lowest index
int ml_decode(const CdMat& y, const CdMat& h,
              const std::vector<CdMat>& codebook);

struct SimCodebook {
    std::string setup_id;
    int n = 0;  // n_t = T
    std::vector<CdMat> words;
    double avg_energy = 0;
    // derived from a codebook CSV (see lattice.hpp for the writer)
    static SimCodebook from_csv(const std::string& text);
    // rank-deficient baseline: every word replaced by its first row repeated
    SimCodebook repeat_first_row_baseline() const;
};

struct SimConfig {
    std::vector<double> snr_grid_db;  // strictly increasing
    long trials_per_point = 0;        // >= 1, <= 100000
    uint64_t seed = 0;
    double sigma_h = 0.7071067811865476;  // 1/sqrt(2) per real dimension
    double noise_scale_override = -1;     // > 0: fixed noise sigma, SNR ignored
};

struct ErrorRatePoint {
    double snr_db = 0;
    long trials = 0;
    long errors = 0;
    double cwer = 0;
    double ci95_halfwidth = 0;
};

struct ErrorRateTable {
    std::vector<ErrorRatePoint> rows;
    std::string config_echo;  // header comment block of the CSV
};

// Per SNR point: fresh H and N each trial, uniformly random codeword,
// exhaustive ML decoding. Noise variance from
//   SNR = E||HX||_F^2 / E||N||_F^2 = (2 sigma_h^2 n_r E_avg) / (2 sigma_n^2 n_r T),
// i.e. sigma_n^2 = sigma_h^2 * E_avg / (SNR * T), with E_avg the measured
// average codeword energy. Deterministic: identical config gives identical
// bytes.
ErrorRateTable simulate(const SimCodebook& cb, const SimConfig& cfg,
                        int n_r_antennas);

std::string error_table_csv(const ErrorRateTable& t);

// Wilson 95% interval halfwidth for k successes in n trials
double wilson_halfwidth(long k, long n);

}  // namespace natorder

#endif
