#pragma once

#include <cmath>

namespace cltlab {

struct gaussian_params {
  double a = 0.0;
  double sigma2 = 1.0;
};

// Rational Chebyshev approximation to erfc after W. J. Cody's CALERF,
// accurate to near machine precision over the full double range.
inline double erfc_cody(double x) {
  static constexpr double a[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                                  3.77485237685302021e2, 3.20937758913846947e3,
                                  1.85777706184603153e-1};
  static constexpr double b[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                                  1.28261652607737228e3, 2.84423683343917062e3};
  static constexpr double c[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                                  6.61191906371416295e1,  2.98635138197400131e2,
                                  8.81952221241769090e2,  1.71204761263407058e3,
                                  2.05107837782607147e3,  1.23033935479799725e3,
                                  2.15311535474403846e-8};
  static constexpr double d[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                                  5.37181101862009858e2, 1.62138957456669019e3,
                                  3.29079923573345963e3, 4.36261909014324716e3,
                                  3.43936767414372164e3, 1.23033935480374942e3};
  static constexpr double p[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                  1.25781726111229246e-1, 1.60837851487422766e-2,
                                  6.58749161529837803e-4, 1.63153871373020978e-2};
  static constexpr double q[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                                  5.27905102951428412e-1, 6.05183413124413191e-2,
                                  2.33520497626869185e-3};
  constexpr double sqrpi = 5.6418958354775628695e-1;
  constexpr double thresh = 0.46875;
  constexpr double xsmall = 1.11e-16;
  constexpr double xbig = 26.543;

  double y = std::fabs(x);
  double result;
  if (y <= thresh) {
    double ysq = y > xsmall ? y * y : 0.0;
    double xnum = a[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + a[i]) * ysq;
      xden = (xden + b[i]) * ysq;
    }
    return 1.0 - x * (xnum + a[3]) / (xden + b[3]);
  }
  if (y <= 4.0) {
    double xnum = c[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + c[i]) * y;
      xden = (xden + d[i]) * y;
    }
    result = (xnum + c[7]) / (xden + d[7]);
    double ysq = std::trunc(y * 16.0) / 16.0;
    double del = (y - ysq) * (y + ysq);
    result = std::exp(-ysq * ysq) * std::exp(-del) * result;
  } else if (y < xbig) {
    double ysq = 1.0 / (y * y);
    double xnum = p[5] * ysq;
    double xden = ysq;
    for (int i = 0; i < 4; ++i) {
      xnum = (xnum + p[i]) * ysq;
      xden = (xden + q[i]) * ysq;
    }
    result = ysq * (xnum + p[4]) / (xden + q[4]);
    result = (sqrpi - result) / y;
    double yint = std::trunc(y * 16.0) / 16.0;
    double del = (y - yint) * (y + yint);
    result = std::exp(-yint * yint) * std::exp(-del) * result;
  } else {
    result = 0.0;
  }
  if (x < 0.0) result = 2.0 - result;
  return result;
}

inline double std_normal_pdf(double z) {
  return 0.3989422804014326779 * std::exp(-0.5 * z * z);
}

inline double std_normal_cdf(double z) {
  return 0.5 * erfc_cody(-z * 0.70710678118654752440);
}

inline double gaussian_cdf(double x, gaussian_params g) {
  return std_normal_cdf((x - g.a) / std::sqrt(g.sigma2));
}

// Slow reference evaluator: composite 10-point Gauss-Legendre integration of
// the normal density from 0 to |z|, folded around the symmetry point.
inline double std_normal_cdf_quadrature(double z) {
  static constexpr double nodes[5] = {0.1488743389816312, 0.4333953941292472,
                                      0.6794095682990244, 0.8650633666889845,
                                      0.9739065285171717};
  static constexpr double weights[5] = {0.2955242247147529, 0.2692667193099963,
                                        0.2190863625159820, 0.1494513491505806,
                                        0.0666713443086881};
  double y = std::fabs(z);
  constexpr int panels = 128;
  double width = y / panels;
  double half = width * 0.5;
  long double acc = 0.0L;
  for (int k = 0; k < panels; ++k) {
    double mid = (k + 0.5) * width;
    long double s = 0.0L;
    for (int i = 0; i < 5; ++i) {
      double off = half * nodes[i];
      s += static_cast<long double>(weights[i]) *
           (std_normal_pdf(mid - off) + std_normal_pdf(mid + off));
    }
    acc += s * half;
  }
  double integral = static_cast<double>(acc);
  return z >= 0.0 ? 0.5 + integral : 0.5 - integral;
}

inline double gaussian_cdf_quadrature(double x, gaussian_params g) {
  return std_normal_cdf_quadrature((x - g.a) / std::sqrt(g.sigma2));
}

// Phi^{-1}(0.75), used to seed variance fits from the interquartile range.
inline constexpr double normal_quantile_075 = 0.6744897501960817;

}  // namespace cltlab
