#include "semirad/radii.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <vector>

#include "semirad/rng.hpp"

namespace semirad {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void require_square_finite(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionMismatchError(std::string(who) + ": matrix must be square");
  if (!all_finite(m)) throw NonFiniteError(std::string(who) + ": non-finite entries");
}

// first component with non-negligible magnitude made real positive
void canonicalize_phase(ComplexVector& v) {
  const double big = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  if (big <= 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * big) {
      const Complex rot = std::conj(v(i)) / std::abs(v(i));
      v *= rot;
      return;
    }
  }
}

// Hermitian and anti-Hermitian parts so that
// Re(e^{i theta} M) = cos(theta) Hr + sin(theta) Hk.
struct Rotator {
  ComplexMatrix hr, hk;
  explicit Rotator(const ComplexMatrix& m)
      : hr(0.5 * (m + m.adjoint())), hk(Complex(0, 0.5) * (m - m.adjoint())) {}
  ComplexMatrix at(double theta) const {
    return std::cos(theta) * hr + std::sin(theta) * hk;
  }
};

struct ScanResult {
  double theta = 0.0;        // refined best angle
  double value = 0.0;        // refined best objective value
  double coarse_best = 0.0;  // best value on the coarse grid
  double grid_step = 0.0;
  double local_gap = 0.0;    // quadratic-fit headroom at the refined point
};

// Shared 1-D engine: maximize eval(theta) over [0, 2pi).  `band` gives, per
// coarse grid point value, the threshold above which the cell may still hold
// the global maximum and must be refined.
template <typename Eval, typename Band>
ScanResult rotation_scan(Eval&& eval, Band&& band, const RadiusConfig& cfg) {
  const int n = std::max(8, cfg.n_theta - cfg.n_theta % 2);
  const double h = kTwoPi / n;
  std::vector<double> vals(n);
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < n; ++i) {
    vals[i] = eval(h * i);
    if (vals[i] > best) {
      best = vals[i];
      best_i = i;
    }
  }

  const double cut = band(best);
  std::vector<char> mark(n, 0);
  for (int i = 0; i < n; ++i) mark[i] = vals[i] >= cut ? 1 : 0;

  // merge marked grid points into cyclic intervals [lo-h, hi+h]
  struct Interval {
    double a, b, peak;
  };
  std::vector<Interval> intervals;
  if (std::all_of(mark.begin(), mark.end(), [](char c) { return c == 1; })) {
    intervals.push_back({0.0, kTwoPi, best});
  } else {
    int start = 0;
    while (mark[start]) start = (start + 1) % n;  // begin outside a run
    for (int k = 0; k < n;) {
      const int i = (start + k) % n;
      if (!mark[i]) {
        ++k;
        continue;
      }
      int len = 0;
      double peak = -std::numeric_limits<double>::infinity();
      while (len < n && mark[(i + len) % n]) {
        peak = std::max(peak, vals[(i + len) % n]);
        ++len;
      }
      intervals.push_back({h * i - h, h * (i + len - 1) + h, peak});
      k += len;
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.peak > y.peak; });
  if (static_cast<int>(intervals.size()) > cfg.max_candidates)
    intervals.resize(cfg.max_candidates);

  ScanResult out;
  out.coarse_best = best;
  out.grid_step = h;
  out.theta = h * best_i;
  out.value = best;
  out.local_gap = 0.0;

  constexpr int kPoints = 9;
  for (const Interval& iv : intervals) {
    double a = iv.a, b = iv.b;
    double fb = -std::numeric_limits<double>::infinity(), tb = a;
    double f_left = fb, f_right = fb;
    for (int round = 0; round < cfg.refine_rounds; ++round) {
      const double step = (b - a) / (kPoints - 1);
      fb = -std::numeric_limits<double>::infinity();
      int jb = 0;
      double f[kPoints];
      for (int j = 0; j < kPoints; ++j) {
        f[j] = eval(a + step * j);
        if (f[j] > fb) {
          fb = f[j];
          jb = j;
        }
      }
      tb = a + step * jb;
      f_left = f[jb > 0 ? jb - 1 : jb];
      f_right = f[jb < kPoints - 1 ? jb + 1 : jb];
      a = tb - step;
      b = tb + step;
    }
    if (fb > out.value) {
      out.value = fb;
      out.theta = tb;
      // headroom of the quadratic through the final three points
      const double denom = 2.0 * fb - f_left - f_right;
      double head = 0.0;
      if (denom > 0.0) {
        const double d = f_right - f_left;
        head = d * d / (8.0 * denom);
      }
      out.local_gap = std::max(0.0, head);
    }
  }
  out.value = std::max(out.value, best);
  return out;
}

double lambda_max(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(h.rows() - 1);
}

double lambda_min(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double pair_objective(const ComplexMatrix& m1, const ComplexMatrix& m2,
                      const ComplexVector& x, Complex& q1, Complex& q2) {
  q1 = (x.adjoint() * (m1 * x))(0, 0);
  q2 = (x.adjoint() * (m2 * x))(0, 0);
  return std::norm(q1) + std::norm(q2);
}

}  // namespace

RadiusResult numerical_radius(const ComplexMatrix& m, const RadiusConfig& cfg) {
  require_square_finite(m, "numerical_radius");
  const Rotator rot(m);
  auto eval = [&rot](double th) { return lambda_max(rot.at(th)); };
  // support-function bound: the best coarse value is >= w * cos(h/2), so any
  // cell below that band cannot contain the maximizer
  const double h = kTwoPi / std::max(8, cfg.n_theta - cfg.n_theta % 2);
  auto band = [h](double best) {
    return best * std::cos(0.5 * h) - 1e-13 * (1.0 + std::abs(best));
  };
  ScanResult sc = rotation_scan(eval, band, cfg);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rot.at(sc.theta));
  ComplexVector v = es.eigenvectors().col(m.rows() - 1);
  canonicalize_phase(v);

  RadiusResult res;
  res.witness = v;
  res.theta = sc.theta;
  res.value = std::abs((v.adjoint() * (m * v))(0, 0));
  res.value = std::max(res.value, 0.0);
  res.direction = ErrorDirection::LowerEstimate;
  const double rigorous =
      std::max(0.0, sc.coarse_best / std::cos(0.5 * sc.grid_step) - res.value);
  const double local = sc.local_gap + 1e-13 * (1.0 + res.value);
  res.gap = std::min(rigorous, local);
  return res;
}

RadiusResult crawford(const ComplexMatrix& m, const RadiusConfig& cfg) {
  require_square_finite(m, "crawford");
  const Rotator rot(m);
  auto eval = [&rot](double th) { return lambda_min(rot.at(th)); };
  const double lip = m.norm();  // Frobenius bounds the spectral Lipschitz constant
  const double h = kTwoPi / std::max(8, cfg.n_theta - cfg.n_theta % 2);
  auto band = [lip, h](double best) { return best - lip * h; };
  ScanResult sc = rotation_scan(eval, band, cfg);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rot.at(sc.theta));
  ComplexVector v = es.eigenvectors().col(0);
  canonicalize_phase(v);

  RadiusResult res;
  res.witness = v;
  res.theta = sc.theta;
  const double upper = sc.coarse_best + 0.5 * lip * sc.grid_step;
  if (sc.value > 0.0) {
    res.value = sc.value;
    res.direction = ErrorDirection::LowerEstimate;
    res.gap = std::max(0.0, std::min(upper - sc.value,
                                     sc.local_gap + 1e-13 * (1.0 + sc.value)));
  } else {
    // no separating half-plane found; if even the rigorous upper bound is
    // negative the origin lies inside the numerical range and c = 0 exactly
    res.value = 0.0;
    if (upper < 0.0) {
      res.direction = ErrorDirection::Exact;
      res.gap = 0.0;
    } else {
      res.direction = ErrorDirection::LowerEstimate;
      res.gap = upper;
    }
  }
  return res;
}

RadiusResult op_norm(const ComplexMatrix& m) {
  if (!all_finite(m)) throw NonFiniteError("op_norm: non-finite entries");
  RadiusResult res;
  res.direction = ErrorDirection::Exact;
  res.gap = 0.0;
  if (m.size() == 0) {
    res.value = 0.0;
    return res;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinV);
  res.value = svd.singularValues()(0);
  ComplexVector v = svd.matrixV().col(0);
  canonicalize_phase(v);
  res.witness = v;
  return res;
}

RadiusResult euclidean_radius(const ComplexMatrix& m1, const ComplexMatrix& m2,
                              const RadiusConfig& cfg) {
  require_square_finite(m1, "euclidean_radius");
  require_square_finite(m2, "euclidean_radius");
  if (m1.rows() != m2.rows())
    throw DimensionMismatchError("euclidean_radius: operands differ in shape");
  const Eigen::Index n = m1.rows();
  const Rotator r1(m1), r2(m2);

  struct Best {
    double f = -1.0;
    ComplexVector x;
    Complex q1{0, 0}, q2{0, 0};
  } best;

  auto consider = [&](const ComplexVector& x0) {
    ComplexVector x = x0.normalized();
    Complex q1, q2;
    double f = pair_objective(m1, m2, x, q1, q2);
    for (int it = 0; it < cfg.pair_max_iter; ++it) {
      const double a1 = std::abs(q1), a2 = std::abs(q2);
      const double t = std::atan2(a2, a1);
      const double th = a1 > 0.0 ? -std::arg(q1) : 0.0;
      const double ph = (a2 > 0.0 ? -std::arg(q2) : 0.0) - th;
      const ComplexMatrix hmat =
          std::cos(t) * r1.at(th) + std::sin(t) * r2.at(th + ph);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hmat);
      ComplexVector xn = es.eigenvectors().col(n - 1);
      Complex p1, p2;
      const double fn = pair_objective(m1, m2, xn, p1, p2);
      if (fn <= f * (1.0 + cfg.pair_tol) + 1e-300) {
        if (fn > f) {
          f = fn;
          x = xn;
          q1 = p1;
          q2 = p2;
        }
        break;
      }
      f = fn;
      x = xn;
      q1 = p1;
      q2 = p2;
    }
    if (f > best.f) {
      best.f = f;
      best.x = x;
      best.q1 = q1;
      best.q2 = q2;
    }
  };

  // structured seeds: witnesses of the single-operator radii and of the four
  // canonical mixtures (t = pi/4, phi in {0, pi, pi/2, 3pi/2})
  RadiusConfig seed_cfg = cfg;
  seed_cfg.n_theta = 64;
  seed_cfg.refine_rounds = 6;
  seed_cfg.max_candidates = 4;
  const Complex iu(0, 1);
  consider(numerical_radius(m1, seed_cfg).witness);
  consider(numerical_radius(m2, seed_cfg).witness);
  consider(numerical_radius(m1 + m2, seed_cfg).witness);
  consider(numerical_radius(m1 - m2, seed_cfg).witness);
  consider(numerical_radius(m1 + iu * m2, seed_cfg).witness);
  consider(numerical_radius(m1 - iu * m2, seed_cfg).witness);

  // coarse joint grid over (t, phi, theta); top cells reseed the ascent
  {
    struct Cell {
      double f;
      double t, ph, th;
    };
    std::vector<Cell> top;
    const int nt = std::max(2, cfg.pair_grid_t);
    const int np = std::max(4, cfg.pair_grid_phi);
    const int nh = std::max(4, cfg.pair_grid_theta);
    for (int it = 0; it < nt; ++it) {
      const double t = 0.5 * M_PI * (it + 0.5) / nt;
      for (int ip = 0; ip < np; ++ip) {
        const double ph = kTwoPi * ip / np;
        for (int ih = 0; ih < nh; ++ih) {
          const double th = kTwoPi * ih / nh;
          const double f =
              lambda_max(std::cos(t) * r1.at(th) + std::sin(t) * r2.at(th + ph));
          if (top.size() < 3) {
            top.push_back({f, t, ph, th});
            std::sort(top.begin(), top.end(),
                      [](const Cell& a, const Cell& b) { return a.f > b.f; });
          } else if (f > top.back().f) {
            top.back() = {f, t, ph, th};
            std::sort(top.begin(), top.end(),
                      [](const Cell& a, const Cell& b) { return a.f > b.f; });
          }
        }
      }
    }
    for (const Cell& c : top) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
          std::cos(c.t) * r1.at(c.th) + std::sin(c.t) * r2.at(c.th + c.ph));
      consider(es.eigenvectors().col(n - 1));
    }
  }

  // deterministic random restarts keyed to the operands
  {
    SplitMix64 g(matrix_digest(m1) ^ (matrix_digest(m2) * 0x9E3779B97F4A7C15ULL));
    for (int k = 0; k < cfg.pair_random_seeds; ++k) {
      ComplexVector x(n);
      for (Eigen::Index i = 0; i < n; ++i) x(i) = g.complex_gaussian();
      consider(x);
    }
  }

  // certified rotation search in the best (t, phi) slice; its witness can
  // only raise the pair objective, so feed it back once
  const double a1 = std::abs(best.q1), a2 = std::abs(best.q2);
  double t_best = std::atan2(a2, a1);
  double phi_best = (a2 > 0.0 ? -std::arg(best.q2) : 0.0) -
                    (a1 > 0.0 ? -std::arg(best.q1) : 0.0);
  const ComplexMatrix slice =
      std::cos(t_best) * m1 +
      std::exp(Complex(0, phi_best)) * std::sin(t_best) * m2;
  RadiusResult slice_res = numerical_radius(slice, cfg);
  consider(slice_res.witness);

  RadiusResult res;
  res.value = std::sqrt(std::max(0.0, best.f));
  res.witness = best.x;
  canonicalize_phase(res.witness);
  const double b1 = std::abs(best.q1), b2 = std::abs(best.q2);
  res.theta = b1 > 0.0 ? -std::arg(best.q1) : 0.0;
  res.t = std::atan2(b2, b1);
  res.phi = (b2 > 0.0 ? -std::arg(best.q2) : 0.0) - res.theta;
  res.direction = ErrorDirection::LowerEstimate;
  res.gap = slice_res.gap + 1e-12 * (1.0 + res.value);
  return res;
}

double euclidean_seminorm_pair(const AContext& ctx, const ComplexMatrix& b,
                               const ComplexMatrix& c) {
  const ComplexMatrix mb = reduce(ctx, b);
  const ComplexMatrix mc = reduce(ctx, c);
  const ComplexMatrix g = mb.adjoint() * mb + mc.adjoint() * mc;
  return std::sqrt(std::max(0.0, lambda_max(0.5 * (g + g.adjoint()))));
}

RadiusResult a_numerical_radius(const AContext& ctx, const ComplexMatrix& t,
                                const RadiusConfig& cfg) {
  return numerical_radius(reduce(ctx, t), cfg);
}

RadiusResult a_crawford(const AContext& ctx, const ComplexMatrix& t,
                        const RadiusConfig& cfg) {
  return crawford(reduce(ctx, t), cfg);
}

RadiusResult a_op_norm(const AContext& ctx, const ComplexMatrix& t) {
  return op_norm(reduce(ctx, t));
}

RadiusResult a_euclidean_radius(const AContext& ctx, const ComplexMatrix& b,
                                const ComplexMatrix& c, const RadiusConfig& cfg) {
  return euclidean_radius(reduce(ctx, b), reduce(ctx, c), cfg);
}

}  // namespace semirad
