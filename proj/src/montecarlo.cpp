#include "lowrf/montecarlo.hpp"

#include "lowrf/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lowrf {

namespace {
constexpr arma::uword kNumBatches = 32;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

void McConfig::validate() const {
    scenario.validate();
    if (num_trials < 1) throw std::invalid_argument("McConfig: need num_trials >= 1");
}

bool McReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

arma::cx_vec quantize_one_bit(const arma::cx_vec& y) {
    arma::cx_vec r(y.n_elem);
    for (arma::uword i = 0; i < y.n_elem; ++i) {
        const double re = y(i).real() >= 0.0 ? kInvSqrt2 : -kInvSqrt2;
        const double im = y(i).imag() >= 0.0 ? kInvSqrt2 : -kInvSqrt2;
        r(i) = {re, im};
    }
    return r;
}

namespace {

// Per-batch running sums; merging batches is plain addition.
struct BatchSums {
    arma::cx_mat rr;   // sum r r^H
    arma::cx_mat ry;   // sum r y^H
    arma::cx_mat xe;   // sum x e^H
    arma::vec err2;    // sum |x_k - xhat_k|^2
    std::uint64_t count = 0;

    BatchSums(arma::uword n, arma::uword k)
        : rr(n, n, arma::fill::zeros),
          ry(n, n, arma::fill::zeros),
          xe(k, n, arma::fill::zeros),
          err2(k, arma::fill::zeros) {}
};

// mean and batch-means standard error of one real statistic
void batch_stats(const std::vector<double>& means, double& mean, double& se) {
    const double b = static_cast<double>(means.size());
    double m = 0.0;
    for (double v : means) m += v;
    m /= b;
    double var = 0.0;
    for (double v : means) var += (v - m) * (v - m);
    var /= (b - 1.0);
    mean = m;
    se = std::sqrt(var / b);
}

void push_check(std::vector<McCheck>& checks, const std::string& name, double analytic,
                double empirical, double se, double gate) {
    McCheck c;
    c.name = name;
    c.analytic = analytic;
    c.empirical = empirical;
    c.std_error = se;
    c.gate_sigmas = gate;
    if (std::isnan(se)) {
        // too few batches for a standard error; gate is inconclusive
        c.z = se;
        c.pass = false;
    } else if (se > 0.0) {
        c.z = (empirical - analytic) / se;
        c.pass = std::abs(c.z) <= gate;
    } else {
        // degenerate statistic (deterministic entry): exact comparison
        c.z = 0.0;
        c.pass = std::abs(empirical - analytic) <= 1e-12;
    }
    checks.push_back(c);
}

// no commas here: the names land in a CSV column
std::string entry_name(const char* base, arma::uword i, arma::uword j, const char* part) {
    return std::string(base) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]." + part;
}

}  // namespace

McReport run_trials(const McConfig& cfg) {
    cfg.validate();
    const arma::cx_mat& h = cfg.scenario.channel.entries;
    const double rho = cfg.scenario.snr;
    const arma::uword n = h.n_rows;
    const arma::uword k = h.n_cols;
    const std::uint64_t trials = cfg.num_trials;

    const BussgangModel model = build_bussgang_model(cfg.scenario);

    // LMMSE receiver from the analytic model: W = rho H'^H C_r^{-1}
    arma::cx_mat s;
    if (!arma::solve(s, model.output_cov, model.effective_channel,
                     arma::solve_opts::likely_sympd))
        throw std::runtime_error("run_trials: output covariance is singular");
    const arma::cx_mat receiver = rho * s.t();  // K x N

    const arma::uword batches = std::min<std::uint64_t>(kNumBatches, trials);
    std::vector<BatchSums> sums(batches, BatchSums(n, k));

    arma::cx_vec x(k), y(n), z(n), r(n), e(n), xhat(k);
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 gen(child_seed(cfg.master_seed, t));
        double g1 = 0.0, g2 = 0.0;
        for (arma::uword i = 0; i < k; ++i) {
            gen.next_normal_pair(g1, g2);
            x(i) = std::sqrt(rho / 2.0) * std::complex<double>(g1, g2);
        }
        for (arma::uword i = 0; i < n; ++i) {
            gen.next_normal_pair(g1, g2);
            z(i) = kInvSqrt2 * std::complex<double>(g1, g2);
        }
        y = z;
        for (arma::uword j = 0; j < k; ++j) y += h.col(j) * x(j);
        r = quantize_one_bit(y);
        for (arma::uword i = 0; i < n; ++i)
            e(i) = r(i) - model.bussgang_gain_diag(i) * y(i);
        xhat = receiver * r;

        BatchSums& b = sums[(t * batches) / trials];
        for (arma::uword j = 0; j < n; ++j) {
            const std::complex<double> yj = std::conj(y(j));
            const double sre_j = r(j).real() > 0.0 ? 1.0 : -1.0;
            const double sim_j = r(j).imag() > 0.0 ? 1.0 : -1.0;
            for (arma::uword i = 0; i < n; ++i) {
                // r_i r_j^* accumulated from the sign products: exact halves,
                // so the unit diagonal stays exact over any trial count
                const double sre_i = r(i).real() > 0.0 ? 1.0 : -1.0;
                const double sim_i = r(i).imag() > 0.0 ? 1.0 : -1.0;
                b.rr(i, j) += std::complex<double>(0.5 * (sre_i * sre_j + sim_i * sim_j),
                                                   0.5 * (sim_i * sre_j - sre_i * sim_j));
                b.ry(i, j) += r(i) * yj;
            }
            const std::complex<double> ej = std::conj(e(j));
            for (arma::uword i = 0; i < k; ++i) b.xe(i, j) += x(i) * ej;
        }
        for (arma::uword i = 0; i < k; ++i) {
            const std::complex<double> d = x(i) - xhat(i);
            b.err2(i) += std::norm(d);
        }
        ++b.count;
    }

    McReport rep;
    rep.num_trials = trials;
    rep.master_seed = cfg.master_seed;
    rep.conclusive = trials >= kNumBatches;

    // assemble batch means and overall estimates
    rep.output_cov.zeros(n, n);
    rep.cross_cov.zeros(n, n);
    rep.input_error_corr.zeros(k, n);
    rep.output_cov_se_re.zeros(n, n);
    rep.output_cov_se_im.zeros(n, n);
    rep.cross_cov_se_re.zeros(n, n);
    rep.cross_cov_se_im.zeros(n, n);
    rep.input_error_se_re.zeros(k, n);
    rep.input_error_se_im.zeros(k, n);
    rep.lmmse_error_var.zeros(k);
    rep.sindr.zeros(k);
    rep.sindr_std_error.zeros(k);

    // getter maps one batch to its finished per-batch statistic
    std::vector<double> bm(batches);
    auto reduce_entry = [&](auto getter, double& mean, double& se) {
        for (arma::uword bi = 0; bi < batches; ++bi) bm[bi] = getter(sums[bi]);
        if (batches >= 2) {
            batch_stats(bm, mean, se);
        } else {
            mean = bm[0];
            se = std::numeric_limits<double>::quiet_NaN();
        }
    };

    const arma::cx_mat cry_analytic = [&] {
        arma::cx_mat cov_y = rho * (h * h.t());
        cov_y.diag() += 1.0;
        arma::cx_mat out = cov_y;
        out.each_col() %= arma::conv_to<arma::cx_vec>::from(model.bussgang_gain_diag);
        return out;
    }();

    auto& checks = rep.checks;
    for (arma::uword j = 0; j < n; ++j) {
        for (arma::uword i = 0; i < n; ++i) {
            double mre = 0.0, sre = 0.0, mim = 0.0, sim = 0.0;
            reduce_entry([&](const BatchSums& b) { return b.rr(i, j).real() / b.count; }, mre, sre);
            reduce_entry([&](const BatchSums& b) { return b.rr(i, j).imag() / b.count; }, mim, sim);
            rep.output_cov(i, j) = {mre, mim};
            rep.output_cov_se_re(i, j) = sre;
            rep.output_cov_se_im(i, j) = sim;
            if (j >= i) {  // Hermitian: lower triangle is redundant
                push_check(checks, entry_name("Cr", i, j, "re"),
                           model.output_cov(i, j).real(), mre, sre, 3.0);
                push_check(checks, entry_name("Cr", i, j, "im"),
                           model.output_cov(i, j).imag(), mim, sim, 3.0);
            }
            reduce_entry([&](const BatchSums& b) { return b.ry(i, j).real() / b.count; }, mre, sre);
            reduce_entry([&](const BatchSums& b) { return b.ry(i, j).imag() / b.count; }, mim, sim);
            rep.cross_cov(i, j) = {mre, mim};
            rep.cross_cov_se_re(i, j) = sre;
            rep.cross_cov_se_im(i, j) = sim;
            // C_ry is row-scaled, not Hermitian; every entry is informative
            push_check(checks, entry_name("Cry", i, j, "re"),
                       cry_analytic(i, j).real(), mre, sre, 3.0);
            push_check(checks, entry_name("Cry", i, j, "im"),
                       cry_analytic(i, j).imag(), mim, sim, 3.0);
        }
        for (arma::uword i = 0; i < k; ++i) {
            double mre = 0.0, sre = 0.0, mim = 0.0, sim = 0.0;
            reduce_entry([&](const BatchSums& b) { return b.xe(i, j).real() / b.count; }, mre, sre);
            reduce_entry([&](const BatchSums& b) { return b.xe(i, j).imag() / b.count; }, mim, sim);
            rep.input_error_corr(i, j) = {mre, mim};
            rep.input_error_se_re(i, j) = sre;
            rep.input_error_se_im(i, j) = sim;
            push_check(checks, entry_name("xe", i, j, "re"), 0.0, mre, sre, 4.0);
            push_check(checks, entry_name("xe", i, j, "im"), 0.0, mim, sim, 4.0);
        }
    }

    MimoScenario sc = cfg.scenario;
    for (arma::uword u = 0; u < k; ++u) {
        double mean_err = 0.0, se_err = 0.0;
        reduce_entry([&](const BatchSums& b) { return b.err2(u) / b.count; }, mean_err, se_err);
        rep.lmmse_error_var(u) = mean_err;
        // per-batch gamma, robust to the mild nonlinearity of rho/c - 1
        double mg = 0.0, sg = 0.0;
        reduce_entry(
            [&](const BatchSums& b) {
                return rho / (b.err2(u) / static_cast<double>(b.count)) - 1.0;
            },
            mg, sg);
        rep.sindr(u) = mg;
        rep.sindr_std_error(u) = sg;
        push_check(checks, "gamma[" + std::to_string(u) + "]", exact_sindr(model, sc, u),
                   mg, sg, 3.0);
    }

    return rep;
}

double empirical_sindr(const McConfig& cfg, arma::uword user) {
    cfg.validate();
    if (user >= cfg.scenario.channel.num_users())
        throw std::invalid_argument("empirical_sindr: user index out of range");
    return run_trials(cfg).sindr(user);
}

}  // namespace lowrf
