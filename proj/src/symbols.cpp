#include "na/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace na::symbols {

namespace {

constexpr double kUnimodularTol = 1e-10;
constexpr std::size_t kInnerGrid = 4096;

std::vector<Complex> single_factor_series(Complex lambda, std::size_t len) {
  // b_lambda(z) = -lambda + (1 - |lambda|^2) sum_{k>=1} conj(lambda)^{k-1} z^k
  std::vector<Complex> c(len, Complex{0.0, 0.0});
  c[0] = -lambda;
  if (len > 1) {
    const double defect = 1.0 - std::norm(lambda);
    Complex pw{1.0, 0.0};
    for (std::size_t k = 1; k < len; ++k) {
      c[k] = defect * pw;
      pw *= std::conj(lambda);
    }
  }
  return c;
}

std::vector<Complex> convolve_truncated(const std::vector<Complex>& a,
                                        const std::vector<Complex>& b, std::size_t len) {
  std::vector<Complex> out(len, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
    if (a[i] == Complex{0.0, 0.0}) continue;
    const std::size_t jmax = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Envelope constant for one factor: |b_lambda^(k)| <= B * |lambda|^k, k >= 0.
double factor_envelope(Complex lambda) {
  const double q = std::abs(lambda);
  return std::max(q, (1.0 - q * q) / q);
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(std::vector<Complex> zeros, Complex unimodular_constant)
    : zeros_(std::move(zeros)), constant_(unimodular_constant) {
  for (const Complex& z : zeros_) {
    if (!is_finite(z) || std::abs(z) > 1.0 - kZeroMargin) {
      throw std::invalid_argument("BlaschkeProduct: zero with |lambda| > 1 - 1e-8");
    }
  }
  if (std::abs(std::abs(constant_) - 1.0) > kUnimodularTol) {
    throw std::invalid_argument("BlaschkeProduct: constant is not unimodular");
  }
}

SingularInnerAtom::SingularInnerAtom(double mass_in, Complex boundary_point_in)
    : mass(mass_in), boundary_point(boundary_point_in) {
  if (!(mass > 0.0)) throw std::invalid_argument("SingularInnerAtom: mass must be > 0");
  if (std::abs(std::abs(boundary_point) - 1.0) > kUnimodularTol) {
    throw std::invalid_argument("SingularInnerAtom: boundary point must be unimodular");
  }
}

TrigPolynomial::TrigPolynomial(int degree, std::vector<Complex> coefficients)
    : degree_(degree), coeffs_(std::move(coefficients)) {
  if (degree_ < 0) throw std::invalid_argument("TrigPolynomial: degree must be >= 0");
  if (coeffs_.size() != static_cast<std::size_t>(2 * degree_ + 1)) {
    throw std::invalid_argument("TrigPolynomial: expected 2*degree + 1 coefficients");
  }
}

Complex TrigPolynomial::coefficient(int k) const {
  if (k < -degree_ || k > degree_) return {0.0, 0.0};
  return coeffs_[static_cast<std::size_t>(k + degree_)];
}

double TailCertificate::ell1_beyond(std::size_t m) const {
  if (bound == 0.0 || ratio == 0.0) return 0.0;
  return bound * std::pow(ratio, static_cast<double>(m + 1)) / (1.0 - ratio);
}

double TailCertificate::deriv_ell1_beyond(std::size_t m) const {
  if (bound == 0.0 || ratio == 0.0) return 0.0;
  const double k1 = static_cast<double>(m + 1);
  return bound * std::pow(ratio, k1) * (k1 - static_cast<double>(m) * ratio) /
         ((1.0 - ratio) * (1.0 - ratio));
}

double TailCertificate::second_deriv_ell1_beyond(std::size_t m) const {
  if (bound == 0.0 || ratio == 0.0) return 0.0;
  const double md = static_cast<double>(m);
  const double k1 = md + 1.0;
  const double one_minus = 1.0 - ratio;
  return bound * std::pow(ratio, k1) *
         (k1 * k1 - (2.0 * md * md + 2.0 * md - 1.0) * ratio + md * md * ratio * ratio) /
         (one_minus * one_minus * one_minus);
}

SymbolSeries::SymbolSeries(std::vector<Complex> a, std::vector<Complex> c, TailCertificate tail,
                           bool two_sided)
    : analytic_(std::move(a)), coanalytic_(std::move(c)), tail_(tail), two_sided_(two_sided) {
  if (analytic_.empty()) analytic_.push_back({0.0, 0.0});
  if (!(tail_.bound >= 0.0) || !(tail_.ratio >= 0.0) || !(tail_.ratio < 1.0)) {
    throw std::invalid_argument("SymbolSeries: tail certificate needs bound >= 0, 0 <= ratio < 1");
  }
}

SymbolSeries SymbolSeries::analytic(std::vector<Complex> coeffs, TailCertificate tail) {
  return SymbolSeries(std::move(coeffs), {}, tail, false);
}

SymbolSeries SymbolSeries::two_sided(std::vector<Complex> analytic_coeffs,
                                     std::vector<Complex> coanalytic_coeffs,
                                     TailCertificate tail) {
  return SymbolSeries(std::move(analytic_coeffs), std::move(coanalytic_coeffs), tail, true);
}

SymbolSeries SymbolSeries::constant(Complex c) { return SymbolSeries({c}, {}, {0.0, 0.0}, false); }

SymbolSeries SymbolSeries::from_trig(const TrigPolynomial& p) {
  std::vector<Complex> a, c;
  for (int k = 0; k <= p.degree(); ++k) a.push_back(p.coefficient(k));
  for (int k = 1; k <= p.degree(); ++k) c.push_back(p.coefficient(-k));
  return SymbolSeries(std::move(a), std::move(c), {0.0, 0.0}, true);
}

Complex SymbolSeries::coefficient(long k) const {
  if (k >= 0) {
    const auto idx = static_cast<std::size_t>(k);
    return idx < analytic_.size() ? analytic_[idx] : Complex{0.0, 0.0};
  }
  const auto idx = static_cast<std::size_t>(-k - 1);
  return idx < coanalytic_.size() ? coanalytic_[idx] : Complex{0.0, 0.0};
}

Complex SymbolSeries::eval_boundary(double t) const {
  const Complex w = std::polar(1.0, t);
  Complex acc{0.0, 0.0};
  Complex pw{1.0, 0.0};
  for (const Complex& c : analytic_) {
    acc += c * pw;
    pw *= w;
  }
  const Complex wc = std::conj(w);
  pw = wc;
  for (const Complex& c : coanalytic_) {
    acc += c * pw;
    pw *= wc;
  }
  return acc;
}

double SymbolSeries::eval_tail_ell1() const {
  double tail = tail_.ell1_beyond(analytic_.size() - 1);
  if (two_sided_) tail += tail_.ell1_beyond(coanalytic_.size());
  return tail;
}

double SymbolSeries::ell1_bound() const {
  double sum = 0.0;
  for (const Complex& c : analytic_) sum += std::abs(c);
  for (const Complex& c : coanalytic_) sum += std::abs(c);
  return sum + eval_tail_ell1();
}

double SymbolSeries::derivative_bound() const {
  double sum = 0.0;
  for (std::size_t k = 1; k < analytic_.size(); ++k)
    sum += static_cast<double>(k) * std::abs(analytic_[k]);
  for (std::size_t k = 1; k <= coanalytic_.size(); ++k)
    sum += static_cast<double>(k) * std::abs(coanalytic_[k - 1]);
  sum += tail_.deriv_ell1_beyond(analytic_.size() - 1);
  if (two_sided_) sum += tail_.deriv_ell1_beyond(coanalytic_.size());
  return sum;
}

double SymbolSeries::second_derivative_bound() const {
  double sum = 0.0;
  for (std::size_t k = 1; k < analytic_.size(); ++k)
    sum += static_cast<double>(k) * static_cast<double>(k) * std::abs(analytic_[k]);
  for (std::size_t k = 1; k <= coanalytic_.size(); ++k)
    sum += static_cast<double>(k) * static_cast<double>(k) * std::abs(coanalytic_[k - 1]);
  sum += tail_.second_deriv_ell1_beyond(analytic_.size() - 1);
  if (two_sided_) sum += tail_.second_deriv_ell1_beyond(coanalytic_.size());
  return sum;
}

SymbolSeries SymbolSeries::scaled(Complex factor) const {
  if (!is_finite(factor)) throw std::invalid_argument("SymbolSeries::scaled: non-finite factor");
  SymbolSeries out = *this;
  for (Complex& c : out.analytic_) c *= factor;
  for (Complex& c : out.coanalytic_) c *= factor;
  out.tail_.bound *= std::abs(factor);
  return out;
}

Complex blaschke_eval(const BlaschkeProduct& b, Complex z) {
  if (!is_finite(z) || std::abs(z) > 1.0 + 1e-12) {
    throw std::invalid_argument("blaschke_eval: requires |z| <= 1");
  }
  Complex out = b.unimodular_constant();
  for (const Complex& lambda : b.zeros()) {
    out *= (z - lambda) / (1.0 - std::conj(lambda) * z);
  }
  return out;
}

Complex singular_inner_eval(const SingularInnerAtom& s, Complex z) {
  if (!is_finite(z) || std::abs(z) >= 1.0) {
    throw std::invalid_argument("singular_inner_eval: requires |z| < 1");
  }
  const Complex zeta = s.boundary_point;
  return std::exp(-s.mass * (zeta + z) / (zeta - z));
}

SymbolSeries blaschke_fourier(const BlaschkeProduct& b, std::size_t n_terms) {
  if (n_terms < 1) throw std::invalid_argument("blaschke_fourier: n_terms must be >= 1");

  std::vector<Complex> coeffs{b.unimodular_constant()};
  for (const Complex& lambda : b.zeros()) {
    coeffs = convolve_truncated(coeffs, single_factor_series(lambda, n_terms), n_terms);
  }

  // Tail certificate. One factor admits the exact geometric law with ratio
  // |lambda|; a product needs a strictly larger ratio rho, because the
  // convolution of n geometric envelopes at the same ratio grows like
  // k^{n-1} q^k. Factoring out rho^k leaves a convergent geometric excess:
  //   |theta^(k)| <= prod_i B_i / (1 - q_i/rho) * rho^k,
  // with plain z-factors handled as exact coefficient shifts.
  TailCertificate tail{0.0, 0.0};
  double q = 0.0;
  std::size_t shifts = 0;
  for (const Complex& lambda : b.zeros()) {
    q = std::max(q, std::abs(lambda));
    if (std::abs(lambda) == 0.0) ++shifts;
  }
  const std::size_t nonzero = b.zeros().size() - shifts;

  if (nonzero == 1) {
    const Complex lambda = *std::find_if(b.zeros().begin(), b.zeros().end(),
                                         [](Complex l) { return std::abs(l) > 0.0; });
    // Plain z-factors shift indices, which costs a q^{-shifts} on the bound.
    tail = {factor_envelope(lambda) / std::pow(q, static_cast<double>(shifts)), q};
  } else if (nonzero > 1) {
    const double rho = (1.0 + q) / 2.0;
    double bound = 1.0;
    for (const Complex& lambda : b.zeros()) {
      const double ql = std::abs(lambda);
      if (ql == 0.0) continue;
      bound *= factor_envelope(lambda) / (1.0 - ql / rho);
    }
    bound /= std::pow(rho, static_cast<double>(shifts));
    tail = {bound, rho};
  }

  return SymbolSeries::analytic(std::move(coeffs), tail);
}

SymbolSeries quotient_fourier(const QuotientSymbol& q, std::size_t n_terms) {
  if (n_terms < 1) throw std::invalid_argument("quotient_fourier: n_terms must be >= 1");

  // Internal length: long enough that the truncated m-sums sit below 1e-18,
  // or full support when both factors are plain polynomials.
  const SymbolSeries psi_probe = blaschke_fourier(q.psi, 2);
  const SymbolSeries theta_probe = blaschke_fourier(q.theta, 2);
  const double qq = psi_probe.tail().ratio * theta_probe.tail().ratio;
  const double bb = std::max(1.0, psi_probe.tail().bound * theta_probe.tail().bound);
  std::size_t internal = std::max<std::size_t>(n_terms + 1, q.psi.degree() + q.theta.degree() + 1);
  if (qq > 0.0) {
    const double needed = std::log(1e-18 / (bb / (1.0 - qq))) / std::log(qq);
    internal = std::max(
        internal, static_cast<std::size_t>(std::min(
                      16384.0, std::ceil(std::max(0.0, needed)) + static_cast<double>(n_terms))));
  }
  if (psi_probe.tail().ratio == 0.0 || theta_probe.tail().ratio == 0.0) {
    // A pure-polynomial factor (all zeros at the origin) contributes an exact
    // index shift; the requested window must already cover its reach, or the
    // geometric tail below would miss finite-support coefficients.
    const std::size_t reach =
        std::max(psi_probe.tail().ratio == 0.0 ? q.psi.degree() : 0,
                 theta_probe.tail().ratio == 0.0 ? q.theta.degree() : 0);
    if (reach >= n_terms) {
      throw std::invalid_argument(
          "quotient_fourier: n_terms too small for the polynomial factor of degree " +
          std::to_string(reach));
    }
  }

  const SymbolSeries psi = blaschke_fourier(q.psi, internal);
  const SymbolSeries theta = blaschke_fourier(q.theta, internal);
  const auto& pc = psi.analytic_coeffs();
  const auto& tc = theta.analytic_coeffs();

  std::vector<Complex> analytic(n_terms, Complex{0.0, 0.0});
  std::vector<Complex> coanalytic(n_terms - 1, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n_terms; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t m = 0; m + k < internal; ++m) acc += std::conj(pc[m]) * tc[m + k];
    analytic[k] = acc;
  }
  for (std::size_t k = 1; k < n_terms; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t m = 0; m + k < internal; ++m) acc += std::conj(pc[m + k]) * tc[m];
    coanalytic[k - 1] = acc;
  }

  TailCertificate tail{0.0, 0.0};
  if (qq > 0.0) {
    tail.ratio = std::max(psi.tail().ratio, theta.tail().ratio);
    tail.bound = psi.tail().bound * theta.tail().bound / (1.0 - qq) + 1e-15;
  } else if (psi.tail().ratio > 0.0 || theta.tail().ratio > 0.0) {
    // z^d times a geometric series: an index shift by at most d, which the
    // stored window already covers (checked above), so the other factor's
    // certificate carries over unchanged.
    const SymbolSeries& geo = psi.tail().ratio > 0.0 ? psi : theta;
    tail = geo.tail();
  }

  return SymbolSeries::two_sided(std::move(analytic), std::move(coanalytic), tail);
}

SupNormEnclosure sup_norm_certified(const SymbolSeries& s, std::size_t grid_size) {
  if (grid_size < 16) throw std::invalid_argument("sup_norm_certified: grid_size must be >= 16");

  const double eval_tail = s.eval_tail_ell1();
  double sampled = 0.0;
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) /
                     static_cast<double>(grid_size);
    sampled = std::max(sampled, std::abs(s.eval_boundary(t)));
  }

  // The true max of |phi|^2 sits where its derivative vanishes, so the
  // nearest grid point (within pi/grid) misses it by at most half the
  // curvature times the squared distance:
  //   sup |phi|^2 <= grid max + (1/2) ||(|phi|^2)''|| (pi/grid)^2,
  // and ||(phi conj(phi))''|| <= 2 (M0 M2 + M1^2) from the coefficient sums.
  const double m0 = s.ell1_bound();
  const double m1 = s.derivative_bound();
  const double m2 = s.second_derivative_bound();
  const double curvature = 2.0 * (m0 * m2 + m1 * m1);
  const double half_spacing = std::numbers::pi / static_cast<double>(grid_size);
  const double grid_max_true = sampled + eval_tail;
  const double upper = std::sqrt(grid_max_true * grid_max_true +
                                 0.5 * curvature * half_spacing * half_spacing);
  return {std::max(0.0, sampled - eval_tail), upper};
}

namespace {

InnerTestEvidence grid_inner_test(const SymbolSeries& s, const TolerancePolicy& tol) {
  const double tolerance = std::max(tol.abs_eps * 1e3, 1e-6);
  const double eval_tail = s.eval_tail_ell1();
  double dev = 0.0;
  for (std::size_t j = 0; j < kInnerGrid; ++j) {
    const double t =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(kInnerGrid);
    dev = std::max(dev, std::abs(std::abs(s.eval_boundary(t)) - 1.0));
  }
  const double slack =
      s.derivative_bound() * (std::numbers::pi / static_cast<double>(kInnerGrid)) + eval_tail;
  return {dev <= tolerance, dev, tolerance, slack, kInnerGrid};
}

}  // namespace

InnerTestEvidence is_inner(const SymbolSeries& s, const TolerancePolicy& tol) {
  if (!s.is_analytic()) {
    throw std::invalid_argument("is_inner: series has a coanalytic part; analyticity is required");
  }
  return grid_inner_test(s, tol);
}

InnerTestEvidence is_inner(const BlaschkeProduct& b, const TolerancePolicy& tol) {
  // Inner by construction; the spot check on the boundary is evidence only.
  const double tolerance = std::max(tol.abs_eps * 1e3, 1e-6);
  constexpr std::size_t kSpotGrid = 256;
  double dev = 0.0;
  for (std::size_t j = 0; j < kSpotGrid; ++j) {
    const double t =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(kSpotGrid);
    dev = std::max(dev, std::abs(std::abs(blaschke_eval(b, std::polar(1.0, t))) - 1.0));
  }
  return {true, dev, tolerance, 0.0, kSpotGrid};
}

}  // namespace na::symbols
