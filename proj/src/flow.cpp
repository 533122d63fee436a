#include "vrc/flow.hpp"

#include <cmath>
#include <stdexcept>

#include "vrc/parallel.hpp"

namespace vrc {

namespace {

std::vector<double> luminance(const Image8& img) {
  std::vector<double> lum(static_cast<size_t>(img.width) * img.height);
  const uint8_t* p = img.rgb.data();
  for (size_t i = 0; i < lum.size(); ++i) {
    lum[i] = (0.299 * p[3 * i] + 0.587 * p[3 * i + 1] + 0.114 * p[3 * i + 2]) / 255.0;
  }
  return lum;
}

struct FlowKernel {
  const std::vector<double>& avg;
  const std::vector<double>& dt;
  int w, h;
  FlowField& out;

  void operator()(int y) const {
    for (int x = 3; x < w - 3; ++x) {
      double a = 0.0, b = 0.0, c = 0.0, bx = 0.0, by = 0.0;
      for (int j = y - 2; j <= y + 2; ++j) {
        for (int i = x - 2; i <= x + 2; ++i) {
          size_t k = static_cast<size_t>(j) * w + i;
          double gx = 0.5 * (avg[k + 1] - avg[k - 1]);
          double gy = 0.5 * (avg[k + w] - avg[k - w]);
          double it = dt[k];
          a += gx * gx;
          b += gx * gy;
          c += gy * gy;
          bx += gx * it;
          by += gy * it;
        }
      }
      double tr = a + c;
      double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
      double lmin = 0.5 * (tr - disc);
      if (lmin > kFlowTau) {
        double det = a * c - b * b;
        size_t k = out.idx(x, y);
        out.flow[2 * k] = static_cast<float>(-(c * bx - b * by) / det);
        out.flow[2 * k + 1] = static_cast<float>(-(a * by - b * bx) / det);
        out.valid[k] = 1;
      }
    }
  }
};

template <typename Loop>
FlowField flow_impl(const FrameBundle& prev, const FrameBundle& curr, Loop loop) {
  if (prev.width != curr.width || prev.height != curr.height)
    throw std::invalid_argument("flow estimation needs equally sized frames");
  int w = curr.width, h = curr.height;
  FlowField out(w, h);
  if (w < 7 || h < 7) return out;

  std::vector<double> l1 = luminance(prev.color);
  std::vector<double> l2 = luminance(curr.color);
  std::vector<double> avg(l1.size()), dt(l1.size());
  for (size_t i = 0; i < l1.size(); ++i) {
    avg[i] = 0.5 * (l1[i] + l2[i]);
    dt[i] = l2[i] - l1[i];
  }

  FlowKernel kernel{avg, dt, w, h, out};
  loop(3, h - 3, kernel);
  return out;
}

}  // namespace

FlowField estimate_flow(const FrameBundle& prev, const FrameBundle& curr) {
  return flow_impl(prev, curr, [](int lo, int hi, const FlowKernel& k) {
    parallel_for(hi - lo, [&](int r) { k(lo + r); });
  });
}

FlowField estimate_flow_reference(const FrameBundle& prev, const FrameBundle& curr) {
  return flow_impl(prev, curr, [](int lo, int hi, const FlowKernel& k) {
    for (int y = lo; y < hi; ++y) k(y);
  });
}

}  // namespace vrc
