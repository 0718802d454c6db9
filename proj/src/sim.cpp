#include "natorder/sim.hpp"

#include <cmath>
#include <sstream>

namespace natorder {

namespace {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

uint64_t CounterRng::next_u64() {
    // mix the three words so that distinct (seed, stream, counter) triples
    // give independent-looking outputs
    uint64_t h = splitmix64(seed_ ^ 0x243f6a8885a308d3ULL);
    h = splitmix64(h ^ stream_);
    h = splitmix64(h ^ counter_++);
    return h;
}

double CounterRng::next_unit() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

void CounterRng::next_gauss_pair(double& g1, double& g2) {
    // Marsaglia polar method with rejection
    while (true) {
        double u = 2.0 * next_unit() - 1.0;
        double v = 2.0 * next_unit() - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            double f = std::sqrt(-2.0 * std::log(s) / s);
            g1 = u * f;
            g2 = v * f;
            return;
        }
    }
}

CdMat channel_sample(CounterRng& rng, int n_r_antennas, int n_t,
                     double sigma_h) {
    check(n_r_antennas >= 1 && n_t >= 1, "sim", "bad channel dimensions");
    CdMat h(n_r_antennas, n_t);
    for (auto& e : h.a) {
        double r, i;
        rng.next_gauss_pair(r, i);
        e = {r * sigma_h, i * sigma_h};
    }
    return h;
}

int ml_decode(const CdMat& y, const CdMat& h,
              const std::vector<CdMat>& codebook) {
    check(!codebook.empty(), "sim", "empty codebook");
    int best = 0;
    double best_d = 0;
    bool first = true;
    for (size_t w = 0; w < codebook.size(); ++w) {
        const CdMat& x = codebook[w];
        double d = 0;
        for (int r = 0; r < y.rows; ++r)
            for (int c = 0; c < y.cols; ++c) {
                std::complex<double> acc = 0;
                for (int k = 0; k < h.cols; ++k) acc += h.at(r, k) * x.at(k, c);
                acc = y.at(r, c) - acc;
                d += std::norm(acc);
            }
        if (first || d < best_d) {  // strict <: ties break to the lowest index
            best = int(w);
            best_d = d;
            first = false;
        }
    }
    return best;
}

SimCodebook SimCodebook::from_csv(const std::string& text) {
    SimCodebook cb;
    std::istringstream is(text);
    std::string line;
    int n = 0, z_rank = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto grab = [&](const char* key) -> std::string {
                std::string tag = std::string("# ") + key + ":";
                if (line.rfind(tag, 0) == 0)
                    return line.substr(tag.size());
                return "";
            };
            if (auto v = grab("setup"); !v.empty())
                cb.setup_id = v.substr(v.find_first_not_of(' '));
            if (auto v = grab("n"); !v.empty()) n = std::stoi(v);
            if (auto v = grab("z_rank"); !v.empty()) z_rank = std::stoi(v);
            if (auto v = grab("avg_energy"); !v.empty())
                cb.avg_energy = std::stod(v);
            continue;
        }
        check(n > 0 && z_rank > 0, "sim", "codebook CSV is missing n/z_rank");
        std::istringstream ls(line);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(ls, tok, ',')) vals.push_back(std::stod(tok));
        size_t expected = 1 + size_t(z_rank) + 2 * size_t(n) * n;
        check(vals.size() == expected, "sim", "codebook row has wrong arity");
        CdMat m(n, n);
        size_t off = 1 + z_rank;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                m.at(r, c) = {vals[off], vals[off + 1]};
                off += 2;
            }
        cb.words.push_back(std::move(m));
    }
    cb.n = n;
    check(!cb.words.empty(), "sim", "codebook CSV contains no codewords");
    if (cb.avg_energy <= 0) {
        double s = 0;
        for (const auto& w : cb.words)
            for (const auto& e : w.a) s += std::norm(e);
        cb.avg_energy = s / double(cb.words.size());
    }
    return cb;
}

SimCodebook SimCodebook::repeat_first_row_baseline() const {
    SimCodebook out = *this;
    for (auto& w : out.words)
        for (int r = 1; r < w.rows; ++r)
            for (int c = 0; c < w.cols; ++c) w.at(r, c) = w.at(0, c);
    double s = 0;
    for (const auto& w : out.words)
        for (const auto& e : w.a) s += std::norm(e);
    out.avg_energy = s / double(out.words.size());
    return out;
}

double wilson_halfwidth(long k, long n) {
    if (n == 0) return 0;
    const double z = 1.959963984540054;
    double p = double(k) / double(n);
    double z2n = z * z / double(n);
    double half = (z / (1.0 + z2n)) *
                  std::sqrt(p * (1.0 - p) / double(n) + z * z / (4.0 * double(n) * double(n)));
    return half;
}

ErrorRateTable simulate(const SimCodebook& cb, const SimConfig& cfg,
                        int n_r_antennas) {
    check(cfg.trials_per_point >= 1, "sim", "trials_per_point must be >= 1");
    check(cfg.trials_per_point <= 100000, "sim",
          "trials ceiling is 1e5 per point (desk scale); reduce trials");
    check(cb.words.size() <= 4096, "sim",
          "codebook ceiling is 4096 words (exhaustive ML cost); shrink it");
    for (size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
        check(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1], "sim",
              "snr grid must be strictly increasing");
    int n = cb.n;  // n_t = T

    ErrorRateTable table;
    std::ostringstream hdr;
    hdr << "# natorder simulation results\n";
    hdr << "# setup: " << cb.setup_id << "\n";
    hdr << "# codebook_words: " << cb.words.size() << "\n";
    hdr << "# n_t: " << n << "  T: " << n << "  n_r_antennas: " << n_r_antennas
        << "\n";
    hdr << "# trials_per_point: " << cfg.trials_per_point << "\n";
    hdr << "# seed: " << cfg.seed << "\n";
    hdr << "# sigma_h: " << cfg.sigma_h << " (per real dimension)\n";
    hdr << "# avg_codeword_energy: " << cb.avg_energy << "\n";
    hdr << "# snr definition: E||HX||^2 / E||N||^2 with measured codebook "
           "energy; sigma_n^2 = sigma_h^2 * E_avg / (snr * T)\n";
    if (cfg.noise_scale_override > 0)
        hdr << "# noise_scale_override: " << cfg.noise_scale_override << "\n";
    hdr << "# prng: splitmix64 counter streams keyed by (seed, snr_index, "
           "trial)\n";

    for (size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
        double snr = std::pow(10.0, cfg.snr_grid_db[si] / 10.0);
        double sigma_n =
            cfg.noise_scale_override > 0
                ? cfg.noise_scale_override
                : std::sqrt(cfg.sigma_h * cfg.sigma_h * cb.avg_energy /
                            (snr * double(n)));
        long errors = 0;
        for (long trial = 0; trial < cfg.trials_per_point; ++trial) {
            // one independent stream per (snr point, trial): order-free
            CounterRng rng(cfg.seed, (uint64_t(si) << 40) ^ uint64_t(trial));
            size_t sent = size_t(rng.next_u64() % cb.words.size());
            CdMat h = channel_sample(rng, n_r_antennas, n, cfg.sigma_h);
            CdMat y(n_r_antennas, n);
            for (int r = 0; r < n_r_antennas; ++r)
                for (int c = 0; c < n; ++c) {
                    std::complex<double> acc = 0;
                    for (int k = 0; k < n; ++k)
                        acc += h.at(r, k) * cb.words[sent].at(k, c);
                    double nr_, ni_;
                    rng.next_gauss_pair(nr_, ni_);
                    y.at(r, c) = acc + std::complex<double>(nr_ * sigma_n,
                                                            ni_ * sigma_n);
                }
            if (ml_decode(y, h, cb.words) != int(sent)) errors++;
        }
        ErrorRatePoint pt;
        pt.snr_db = cfg.snr_grid_db[si];
        pt.trials = cfg.trials_per_point;
        pt.errors = errors;
        pt.cwer = double(errors) / double(cfg.trials_per_point);
        pt.ci95_halfwidth = wilson_halfwidth(errors, cfg.trials_per_point);
        table.rows.push_back(pt);
    }
    table.config_echo = hdr.str();
    return table;
}

std::string error_table_csv(const ErrorRateTable& t) {
    std::ostringstream os;
    os << t.config_echo;
    os << "snr_db,trials,errors,cwer,ci95_halfwidth\n";
    for (const auto& r : t.rows) {
        os << r.snr_db << "," << r.trials << "," << r.errors << ",";
        std::ostringstream v;
        v.precision(12);
        v << r.cwer << "," << r.ci95_halfwidth;
        os << v.str() << "\n";
    }
    return os.str();
}

}  // namespace natorder
