#include "uamm/bd_rate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "uamm/error.hpp"

namespace uamm {

namespace {

struct CubicFit
{
  double center = 0.0;
  Eigen::Vector4d coeff; // in powers of (psnr - center)

  // Definite integral over [lo, hi] of the fitted log10(rate).
  double integrate(double lo, double hi) const
  {
    auto primitive = [this](double p) {
      const double u = p - center;
      return coeff[0] * u + coeff[1] * u * u / 2 + coeff[2] * u * u * u / 3 + coeff[3] * u * u * u * u / 4;
    };
    return primitive(hi) - primitive(lo);
  }
};

void validateCurve(std::span<const RdPoint> curve, const char* name)
{
  if (curve.size() < 4)
  {
    throw Error(std::string("BD-rate: curve ") + name + " needs at least 4 points, got " + std::to_string(curve.size()));
  }
  for (size_t i = 0; i < curve.size(); i++)
  {
    if (!(curve[i].rate > 0.0) || !std::isfinite(curve[i].rate) || !std::isfinite(curve[i].psnr))
    {
      throw Error(std::string("BD-rate: curve ") + name + " point " + std::to_string(i)
                  + " needs a positive finite rate and a finite PSNR");
    }
    if (i > 0 && (curve[i].rate <= curve[i - 1].rate || curve[i].psnr <= curve[i - 1].psnr))
    {
      throw Error(std::string("BD-rate: curve ") + name + " is not strictly increasing in rate and PSNR at point "
                  + std::to_string(i));
    }
  }
}

CubicFit fitLogRate(std::span<const RdPoint> curve)
{
  const auto n = static_cast<Eigen::Index>(curve.size());
  CubicFit fit;
  for (const RdPoint& p: curve)
  {
    fit.center += p.psnr;
  }
  fit.center /= static_cast<double>(n);

  Eigen::MatrixXd vander(n, 4);
  Eigen::VectorXd logRate(n);
  for (Eigen::Index i = 0; i < n; i++)
  {
    const double u = curve[static_cast<size_t>(i)].psnr - fit.center;
    vander(i, 0)   = 1.0;
    vander(i, 1)   = u;
    vander(i, 2)   = u * u;
    vander(i, 3)   = u * u * u;
    logRate[i]     = std::log10(curve[static_cast<size_t>(i)].rate);
  }
  fit.coeff = vander.colPivHouseholderQr().solve(logRate);
  return fit;
}

} // namespace

double bdRate(std::span<const RdPoint> anchor, std::span<const RdPoint> test)
{
  validateCurve(anchor, "A");
  validateCurve(test, "B");

  const double lo = std::max(anchor.front().psnr, test.front().psnr);
  const double hi = std::min(anchor.back().psnr, test.back().psnr);
  if (!(hi > lo))
  {
    throw Error("BD-rate: the curves do not overlap in PSNR");
  }

  const double intA    = fitLogRate(anchor).integrate(lo, hi);
  const double intB    = fitLogRate(test).integrate(lo, hi);
  const double avgDiff = (intB - intA) / (hi - lo);
  return 100.0 * (std::pow(10.0, avgDiff) - 1.0);
}

} // namespace uamm
