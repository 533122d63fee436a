#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "vrc/stats.hpp"

namespace vrc {

namespace {

const boost::math::normal_distribution<double> kNormal;

double normal_sf(double z) { return boost::math::cdf(boost::math::complement(kNormal, z)); }

double student_sf(double t, double df) {
  boost::math::students_t_distribution<double> dist(df);
  return boost::math::cdf(boost::math::complement(dist, t));
}

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& values) {
  size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double r = 0.5 * static_cast<double>(i + j) + 1.0;  // average 1-based rank of the run
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

ShapiroWilkResult shapiro_wilk(std::vector<double> x) {
  size_t n = x.size();
  if (n < 3) throw std::invalid_argument("shapiro_wilk: need at least 3 observations");
  if (n > 50) throw std::invalid_argument("shapiro_wilk: supported up to 50 observations");
  std::sort(x.begin(), x.end());
  if (x.front() == x.back())
    throw std::invalid_argument("shapiro_wilk: sample is constant");

  double nd = static_cast<double>(n);
  std::vector<double> m(n);
  double ssm = 0.0;
  for (size_t i = 0; i < n; ++i) {
    m[i] = boost::math::quantile(kNormal, (static_cast<double>(i) + 1.0 - 0.375) / (nd + 0.25));
    ssm += m[i] * m[i];
  }

  std::vector<double> a(n, 0.0);
  if (n == 3) {
    a[2] = std::sqrt(0.5);
    a[0] = -a[2];
  } else {
    double u = 1.0 / std::sqrt(nd);
    double rs = std::sqrt(ssm);
    double an = m[n - 1] / rs + u * (0.221157 +
                u * (-0.147981 + u * (-2.071190 + u * (4.434685 + u * -2.706056))));
    double phi;
    if (n > 5) {
      double an1 = m[n - 2] / rs + u * (0.042981 +
                   u * (-0.293762 + u * (-1.752461 + u * (5.682633 + u * -3.582633))));
      phi = (ssm - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
            (1.0 - 2.0 * an * an - 2.0 * an1 * an1);
      a[n - 1] = an;
      a[0] = -an;
      a[n - 2] = an1;
      a[1] = -an1;
      for (size_t i = 2; i + 2 < n; ++i) a[i] = m[i] / std::sqrt(phi);
    } else {
      phi = (ssm - 2.0 * m[n - 1] * m[n - 1]) / (1.0 - 2.0 * an * an);
      a[n - 1] = an;
      a[0] = -an;
      for (size_t i = 1; i + 1 < n; ++i) a[i] = m[i] / std::sqrt(phi);
    }
  }

  double mean = std::accumulate(x.begin(), x.end(), 0.0) / nd;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += a[i] * x[i];
    den += (x[i] - mean) * (x[i] - mean);
  }
  double w = std::min(num * num / den, 1.0);

  double p;
  if (n == 3) {
    p = 1.90985931710274 * (std::asin(std::sqrt(w)) - 1.04719755119660);
    p = std::clamp(p, 0.0, 1.0);
  } else if (n <= 11) {
    double g = -2.273 + 0.459 * nd;
    double y = -std::log(g - std::log1p(-w));
    double mu = 0.5440 + nd * (-0.39978 + nd * (0.025054 + nd * -0.0006714));
    double sd = std::exp(1.3822 + nd * (-0.77857 + nd * (0.062767 + nd * -0.0020322)));
    p = normal_sf((y - mu) / sd);
  } else {
    double ln = std::log(nd);
    double y = std::log1p(-w);
    double mu = -1.5861 + ln * (-0.31082 + ln * (-0.083751 + ln * 0.0038915));
    double sd = std::exp(-0.4803 + ln * (-0.082676 + ln * 0.0030302));
    p = normal_sf((y - mu) / sd);
  }
  return {w, std::clamp(p, 0.0, 1.0)};
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& diffs) {
  std::vector<double> d;
  for (double v : diffs) {
    if (!std::isfinite(v)) throw std::invalid_argument("wilcoxon: non-finite difference");
    if (v != 0.0) d.push_back(v);
  }
  size_t n = d.size();
  if (n == 0)
    throw std::invalid_argument("degenerate pairing: all differences are zero");
  if (n < 5)
    throw std::invalid_argument("wilcoxon: fewer than 5 non-zero differences");

  std::vector<double> mag(n);
  for (size_t i = 0; i < n; ++i) mag[i] = std::fabs(d[i]);
  std::vector<double> ranks = average_ranks(mag);

  WilcoxonResult res;
  res.n_eff = static_cast<int>(n);
  for (size_t i = 0; i < n; ++i) {
    if (d[i] > 0) res.w_plus += ranks[i];
    else res.w_minus += ranks[i];
  }

  double nd = static_cast<double>(n);
  double mn = nd * (nd + 1.0) / 4.0;
  // Tie correction: subtract (t^3 - t)/48 per group of tied magnitudes.
  std::vector<double> sorted_mag = mag;
  std::sort(sorted_mag.begin(), sorted_mag.end());
  double tie = 0.0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && sorted_mag[j + 1] == sorted_mag[i]) ++j;
    double t = static_cast<double>(j - i + 1);
    tie += t * t * t - t;
    i = j + 1;
  }
  double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie / 48.0;
  double se = std::sqrt(var);
  // Signed z from W+, so swapping the pairing flips the sign.
  double z = (res.w_plus - mn) / se;
  z -= (z > 0 ? 1.0 : z < 0 ? -1.0 : 0.0) * 0.5 / se;  // continuity correction
  res.statistic = z;

  if (n <= 12) {
    // Full enumeration over sign assignments; doubled ranks stay integral.
    std::vector<int> r2(n);
    for (size_t k = 0; k < n; ++k) r2[k] = static_cast<int>(std::lround(2.0 * ranks[k]));
    int w2 = static_cast<int>(std::lround(2.0 * res.w_plus));
    uint64_t le = 0, ge = 0;
    uint32_t total = uint32_t{1} << n;
    for (uint32_t mask = 0; mask < total; ++mask) {
      int s = 0;
      for (size_t k = 0; k < n; ++k)
        if (mask & (uint32_t{1} << k)) s += r2[k];
      if (s <= w2) ++le;
      if (s >= w2) ++ge;
    }
    res.p = std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) / total);
    res.exact = true;
  } else {
    res.p = std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
  }
  return res;
}

PairedTResult paired_t(const std::vector<double>& diffs) {
  size_t n = diffs.size();
  if (n < 2) throw std::invalid_argument("paired_t: need at least 2 differences");
  double nd = static_cast<double>(n);
  double mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) / nd;
  double ss = 0.0;
  for (double v : diffs) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / (nd - 1.0));
  if (sd == 0.0) throw std::invalid_argument("paired_t: differences have zero variance");
  PairedTResult res;
  res.statistic = mean / (sd / std::sqrt(nd));
  res.df = static_cast<int>(n) - 1;
  res.p = std::min(1.0, 2.0 * student_sf(std::fabs(res.statistic), nd - 1.0));
  return res;
}

SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  size_t n = x.size();
  if (n < 4) throw std::invalid_argument("spearman: need at least 4 pairs");
  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  double nd = static_cast<double>(n);
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / nd;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / nd;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw std::invalid_argument("spearman: constant input");
  SpearmanResult res;
  res.n = n;
  res.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (std::fabs(res.rho) == 1.0) {
    res.p = 0.0;
  } else {
    double t = res.rho * std::sqrt((nd - 2.0) / (1.0 - res.rho * res.rho));
    res.p = std::min(1.0, 2.0 * student_sf(std::fabs(t), nd - 2.0));
  }
  return res;
}

}  // namespace vrc
