#include "cqec/optim.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cqec {

uint64_t substream_seed(uint64_t master, uint64_t index) {
  // splitmix64 state advances by a fixed constant, so output k is O(1)
  uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<RealVector> latin_hypercube(int samples, int dims, double lo, double hi,
                                        uint64_t seed) {
  if (samples < 1 || dims < 1) throw std::invalid_argument("latin_hypercube: empty design");
  if (!(lo < hi)) throw std::invalid_argument("latin_hypercube: bounds must satisfy lo < hi");
  SplitMix64 rng(seed);
  std::vector<RealVector> points(samples, RealVector(dims));
  std::vector<int> perm(samples);
  for (int d = 0; d < dims; ++d) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = samples - 1; i > 0; --i) std::swap(perm[i], perm[uint64_t(rng.below(i + 1))]);
    for (int i = 0; i < samples; ++i) {
      const double cell = (perm[i] + rng.uniform()) / samples;
      points[i](d) = lo + cell * (hi - lo);
    }
  }
  return points;
}

SimplexResult nelder_mead(const Objective& f, const RealVector& x0, const SimplexOptions& opts) {
  const int n = int(x0.size());
  if (n < 1) throw std::invalid_argument("nelder_mead: empty parameter vector");

  std::vector<RealVector> pts(n + 1, x0);
  if (!opts.initial_simplex.empty()) {
    if (int(opts.initial_simplex.size()) != n + 1)
      throw std::invalid_argument("nelder_mead: explicit simplex needs dim+1 vertices");
    for (const auto& v : opts.initial_simplex)
      if (v.size() != n) throw std::invalid_argument("nelder_mead: simplex vertex dimension");
    pts = opts.initial_simplex;
  } else {
    for (int i = 0; i < n; ++i) pts[i + 1](i) += opts.initial_step;
  }
  std::vector<double> fv(n + 1);
  for (int i = 0; i <= n; ++i) fv[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  SimplexResult res;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    {
      std::vector<RealVector> p2(n + 1);
      std::vector<double> f2(n + 1);
      for (int i = 0; i <= n; ++i) {
        p2[i] = pts[order[i]];
        f2[i] = fv[order[i]];
      }
      pts.swap(p2);
      fv.swap(f2);
    }
    res.trace.push_back(fv[0]);
    if (fv[n] - fv[0] < opts.spread_tol) {
      res.converged = true;
      break;
    }

    RealVector centroid = RealVector::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;

    const RealVector xr = centroid + opts.reflection * (centroid - pts[n]);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const RealVector xe = centroid + opts.expansion * (xr - centroid);
      const double fe = f(xe);
      if (fe < fr) {
        pts[n] = xe;
        fv[n] = fe;
      } else {
        pts[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      pts[n] = xr;
      fv[n] = fr;
    } else if (fr < fv[n]) {
      // outside contraction toward the reflected point
      const RealVector xc = centroid + opts.contraction * (xr - centroid);
      const double fc = f(xc);
      if (fc <= fr) {
        pts[n] = xc;
        fv[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + opts.shrink * (pts[i] - pts[0]);
          fv[i] = f(pts[i]);
        }
      }
    } else {
      // inside contraction toward the worst point
      const RealVector xc = centroid + opts.contraction * (pts[n] - centroid);
      const double fc = f(xc);
      if (fc < fv[n]) {
        pts[n] = xc;
        fv[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + opts.shrink * (pts[i] - pts[0]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }

  const auto best = std::min_element(fv.begin(), fv.end()) - fv.begin();
  res.x = pts[best];
  res.value = fv[best];
  res.iterations = iter;
  return res;
}

RealVector central_difference_gradient(const Objective& f, const RealVector& x, double step) {
  RealVector g(x.size());
  RealVector probe = x;
  for (int i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + step;
    const double fp = f(probe);
    probe(i) = x(i) - step;
    const double fm = f(probe);
    probe(i) = x(i);
    g(i) = (fp - fm) / (2.0 * step);
  }
  return g;
}

LocalSearchResult lbfgs_minimize(const Objective& f, const RealVector& x0,
                                 const LocalSearchOptions& opts) {
  const int n = int(x0.size());
  if (n < 1) throw std::invalid_argument("lbfgs_minimize: empty parameter vector");

  LocalSearchResult res;
  auto eval = [&](const RealVector& p) {
    ++res.evaluations;
    return f(p);
  };
  auto grad = [&](const RealVector& p) {
    RealVector g(n);
    RealVector probe = p;
    for (int i = 0; i < n; ++i) {
      probe(i) = p(i) + opts.grad_step;
      const double fp = eval(probe);
      probe(i) = p(i) - opts.grad_step;
      const double fm = eval(probe);
      probe(i) = p(i);
      g(i) = (fp - fm) / (2.0 * opts.grad_step);
    }
    return g;
  };

  RealVector x = x0;
  double fx = eval(x);
  RealVector g = grad(x);
  res.trace.push_back(fx);

  std::vector<RealVector> s_hist, y_hist;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() < opts.grad_tol) {
      res.converged = true;
      break;
    }

    // two-loop recursion for the quasi-Newton direction
    RealVector q = g;
    const int m = int(s_hist.size());
    std::vector<double> alpha(m), rho(m);
    for (int i = m - 1; i >= 0; --i) {
      rho[i] = 1.0 / y_hist[i].dot(s_hist[i]);
      alpha[i] = rho[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (m > 0) q *= s_hist[m - 1].dot(y_hist[m - 1]) / y_hist[m - 1].squaredNorm();
    for (int i = 0; i < m; ++i) {
      const double beta = rho[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    RealVector dir = -q;
    double slope = dir.dot(g);
    if (!(slope < 0.0)) {
      dir = -g;
      slope = -g.squaredNorm();
    }

    // weak-Wolfe line search by bisection; the curvature condition keeps
    // s.y > 0 so the inverse-Hessian update stays well posed
    const double c1 = 1e-4, c2 = 0.9;
    double t = 1.0, t_lo = 0.0, t_hi = std::numeric_limits<double>::infinity();
    RealVector xnew, gnew;
    double fnew = fx;
    bool have_grad = false, wolfe = false, armijo = false;
    double f_armijo = fx;
    RealVector x_armijo;
    for (int ls = 0; ls < 60; ++ls) {
      xnew = x + t * dir;
      fnew = eval(xnew);
      if (!(fnew <= fx + c1 * t * slope)) {
        t_hi = t;
        t = 0.5 * (t_lo + t_hi);
        continue;
      }
      if (!armijo || fnew < f_armijo) {
        armijo = true;
        f_armijo = fnew;
        x_armijo = xnew;
      }
      gnew = grad(xnew);
      have_grad = true;
      if (dir.dot(gnew) < c2 * slope) {
        t_lo = t;
        t = std::isinf(t_hi) ? 2.0 * t : 0.5 * (t_lo + t_hi);
        have_grad = false;
        continue;
      }
      wolfe = true;
      break;
    }
    if (!wolfe) {
      if (!armijo) break;  // no decrease found along this direction
      xnew = x_armijo;
      fnew = f_armijo;
    }
    if (!have_grad) gnew = grad(xnew);

    const RealVector s = xnew - x;
    const RealVector y = gnew - g;
    if (s.dot(y) > 1e-10 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      if (int(s_hist.size()) > opts.memory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
      }
    } else {
      // stale curvature would freeze the direction; restart the memory
      s_hist.clear();
      y_hist.clear();
    }
    x = xnew;
    fx = fnew;
    g = gnew;
    res.trace.push_back(fx);
    res.iterations = iter + 1;
  }

  res.x = x;
  res.value = fx;
  return res;
}

}  // namespace cqec
