#include "subplanck/phonon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "subplanck/error.hpp"
#include "subplanck/special.hpp"
#include "subplanck/states.hpp"

namespace subplanck {

PhononDistribution phonon_stats(const std::vector<double>& populations) {
  validate_populations(populations);
  PhononDistribution d;
  d.populations = populations;
  double m = 0.0;
  for (std::size_t n = 0; n < populations.size(); ++n) m += static_cast<double>(n) * populations[n];
  double v = 0.0;
  for (std::size_t n = 0; n < populations.size(); ++n) {
    const double dn = static_cast<double>(n) - m;
    v += dn * dn * populations[n];
  }
  d.mean = m;
  d.variance = v;
  if (m > 0.0) d.fano = v / m;
  if (v > 0.0) d.snr = m / std::sqrt(v);
  return d;
}

void RabiModel::validate() const {
  if (!(omega01 > 0.0) || !std::isfinite(omega01)) throw Error(Errc::InvalidArgument, "omega01 must be positive");
  if (!(gamma_decay >= 0.0) || !std::isfinite(gamma_decay)) throw Error(Errc::InvalidArgument, "gamma_decay must be nonnegative");
  if (n_max < 1) throw Error(Errc::InvalidArgument, "n_max must be at least 1");
  if (scaling == RabiScaling::LambDicke && !(lamb_dicke > 0.0)) throw Error(Errc::InvalidArgument, "Lamb-Dicke parameter must be positive");
}

double RabiModel::rabi_frequency(int n) const {
  if (scaling == RabiScaling::Sqrt) return omega01 * std::sqrt(n + 1.0);
  // ratio of <n+1|e^{i eta (a + a^dag)}|n> to the n = 0 element
  const double e2 = lamb_dicke * lamb_dicke;
  return omega01 * laguerre(n, 1.0, e2) / (laguerre(0, 1.0, e2) * std::sqrt(n + 1.0));
}

namespace {

double basis(const RabiModel& m, int n, double t) {
  const double s = std::sin(0.5 * m.rabi_frequency(n) * t);
  return s * s * std::exp(-m.gamma_decay * t * std::pow(n + 1.0, m.decay_exponent));
}

Eigen::VectorXd softmax(const Eigen::VectorXd& th) {
  const double mx = th.maxCoeff();
  Eigen::VectorXd p = (th.array() - mx).exp();
  return p / p.sum();
}

struct LmResult {
  Eigen::VectorXd p;
  double cost;
};

LmResult levenberg_marquardt(const Eigen::MatrixXd& B, const Eigen::VectorXd& y, Eigen::VectorXd th, int max_iter) {
  const int K = static_cast<int>(th.size());
  Eigen::VectorXd p = softmax(th);
  Eigen::VectorXd r = B * p - y;
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < max_iter; ++it) {
    // dr/dtheta_k = p_k (B_k - B p)
    const Eigen::VectorXd bp = B * p;
    Eigen::MatrixXd J(B.rows(), K);
    for (int k = 0; k < K; ++k) J.col(k) = p(k) * (B.col(k) - bp);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() < 1e-15) break;
    bool improved = false;
    for (int tries = 0; tries < 20; ++tries) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal().array() += lambda * (JtJ.diagonal().array() + 1e-12);
      const Eigen::VectorXd step = A.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const Eigen::VectorXd th2 = th + step;
      const Eigen::VectorXd p2 = softmax(th2);
      const Eigen::VectorXd r2 = B * p2 - y;
      const double c2 = r2.squaredNorm();
      if (c2 < cost) {
        const double rel = (cost - c2) / std::max(cost, 1e-300);
        th = th2;
        p = p2;
        r = r2;
        cost = c2;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        if (rel < 1e-14) it = max_iter;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) break;
  }
  return {p, cost};
}

}  // namespace

double rabi_signal(const std::vector<double>& populations, const RabiModel& model, double t) {
  double s = 0.0;
  for (std::size_t n = 0; n < populations.size(); ++n)
    if (populations[n] != 0.0) s += populations[n] * basis(model, static_cast<int>(n), t);
  return std::clamp(s, 0.0, 1.0);
}

PhononDistribution fit_populations(std::span<const double> times, std::span<const double> pe, const RabiModel& model,
                                   const FitOptions& options) {
  model.validate();
  if (times.size() != pe.size()) throw Error(Errc::InvalidArgument, "time and signal columns differ in length");
  const int K = model.n_max + 1;
  if (times.size() < static_cast<std::size_t>(3 * K))
    throw Error(Errc::InsufficientData, "need at least 3 (n_max + 1) samples");
  const int S = static_cast<int>(times.size());
  Eigen::MatrixXd B(S, K);
  Eigen::VectorXd y(S);
  for (int i = 0; i < S; ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw Error(Errc::InvalidArgument, "times must be nonnegative");
    if (!(pe[i] >= 0.0 && pe[i] <= 1.0)) throw Error(Errc::InvalidArgument, "excited-state probabilities must lie in [0, 1]");
    y(i) = pe[i];
    for (int k = 0; k < K; ++k) B(i, k) = basis(model, k, times[i]);
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  LmResult best{Eigen::VectorXd::Constant(K, 1.0 / K), std::numeric_limits<double>::infinity()};
  for (int start = 0; start <= options.restarts; ++start) {
    Eigen::VectorXd th = Eigen::VectorXd::Zero(K);
    if (start > 0)
      for (int k = 0; k < K; ++k) th(k) = normal(rng);
    LmResult r = levenberg_marquardt(B, y, th, options.max_iterations);
    if (r.cost < best.cost) best = r;
  }
  if (!std::isfinite(best.cost)) throw Error(Errc::FitDiverged, "fit produced a non-finite residual");
  const double rms = std::sqrt(best.cost / S);
  if (rms > options.max_rms) throw Error(Errc::FitDiverged, "fit residual exceeds the threshold");

  std::vector<double> p(best.p.data(), best.p.data() + K);
  double s = 0.0;
  for (double v : p) s += v;
  for (double& v : p) v /= s;
  PhononDistribution d = phonon_stats(p);
  d.residual_norm = std::sqrt(best.cost);
  d.rms_residual = rms;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
  const auto sv = svd.singularValues();
  d.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  return d;
}

}  // namespace subplanck
