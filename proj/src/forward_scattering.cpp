#include "bsq/forward_scattering.hpp"

#include <cmath>
// Boost 1.74 pchip calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "bsq/chebyshev.hpp"
#include "bsq/spectral_core.hpp"

namespace bsq {

InitialData InitialData::gaussian(double a, double w, double b, double wv, double c) {
  if (w <= 0 || wv <= 0) throw DomainError("gaussian widths must be positive");
  InitialData d;
  d.preset = "gaussian";
  d.u0 = [=](double x) { double y = (x - c) / w; return a * std::exp(-y * y); };
  d.u0x = [=](double x) { double y = (x - c) / w; return -2.0 * a * y / w * std::exp(-y * y); };
  d.v0 = [=](double x) { double y = (x - c) / wv; return b * std::exp(-y * y); };
  d.u1 = [=](double x) { double y = (x - c) / wv; return -2.0 * b * y / wv * std::exp(-y * y); };
  double half = 6.0 * std::max(w, wv);
  d.x_min = c - half;
  d.x_max = c + half;
  d.params = {{"u0_amplitude", a}, {"u0_width", w}, {"v0_amplitude", b}, {"v0_width", wv}, {"center", c}};
  return d;
}

InitialData InitialData::sech2(double a, double w, double b, double wv, double c) {
  if (w <= 0 || wv <= 0) throw DomainError("sech2 widths must be positive");
  auto s2 = [](double y) { double s = 1.0 / std::cosh(y); return s * s; };
  InitialData d;
  d.preset = "sech2";
  d.u0 = [=](double x) { return a * s2((x - c) / w); };
  d.u0x = [=](double x) { double y = (x - c) / w; return -2.0 * a / w * s2(y) * std::tanh(y); };
  d.v0 = [=](double x) { return b * s2((x - c) / wv); };
  d.u1 = [=](double x) { double y = (x - c) / wv; return -2.0 * b / wv * s2(y) * std::tanh(y); };
  double half = 16.0 * std::max(w, wv);
  d.x_min = c - half;
  d.x_max = c + half;
  d.params = {{"u0_amplitude", a}, {"u0_width", w}, {"v0_amplitude", b}, {"v0_width", wv}, {"center", c}};
  return d;
}

InitialData InitialData::table(const std::vector<double>& x, const std::vector<double>& u0,
                               const std::vector<double>& u1) {
  if (x.size() < 4 || x.size() != u0.size() || x.size() != u1.size())
    throw DomainError("table data needs at least four samples of x, u0, u1");
  for (size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DomainError("table x must be strictly increasing");
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  auto p0 = std::make_shared<Pchip>(std::vector<double>(x), std::vector<double>(u0));
  auto p1 = std::make_shared<Pchip>(std::vector<double>(x), std::vector<double>(u1));
  // running integral of the u1 interpolant, 3-point Gauss-Legendre per interval
  const double g = std::sqrt(0.6);
  auto piece = [p1, g](double a, double b) {
    double m = 0.5 * (a + b), r = 0.5 * (b - a);
    return r * (5.0 * (*p1)(m - r * g) + 8.0 * (*p1)(m) + 5.0 * (*p1)(m + r * g)) / 9.0;
  };
  auto xs = std::make_shared<std::vector<double>>(x);
  auto cum = std::make_shared<std::vector<double>>(x.size(), 0.0);
  for (size_t i = 1; i < x.size(); ++i) (*cum)[i] = (*cum)[i - 1] + piece(x[i - 1], x[i]);
  InitialData d;
  d.preset = "table";
  d.u0 = [p0](double t) { return (*p0)(t); };
  d.u0x = [p0](double t) { return p0->prime(t); };
  d.u1 = [p1](double t) { return (*p1)(t); };
  d.v0 = [xs, cum, piece](double t) {
    if (t <= xs->front()) return 0.0;
    if (t >= xs->back()) return cum->back();
    size_t i = std::upper_bound(xs->begin(), xs->end(), t) - xs->begin() - 1;
    return (*cum)[i] + piece((*xs)[i], t);
  };
  d.x_min = x.front();
  d.x_max = x.back();
  d.params = {{"x", x}, {"u0", u0}, {"u1", u1}};
  return d;
}

InitialData InitialData::from_json(const nlohmann::json& top) {
  if (!top.is_object()) throw DomainError("initial data must be a JSON object");
  nlohmann::json j = top;
  if (top.contains("params")) {
    if (!top["params"].is_object()) throw DomainError("params must be an object");
    j.update(top["params"]);
  }
  std::string p = j.value("preset", "");
  InitialData d;
  if (p == "zero") {
    d = gaussian(0.0, 1.0, 0.0, 1.0, 0.0);
    d.preset = "zero";
  } else if (p == "gaussian" || p == "sech2") {
    double a = j.value("u0_amplitude", 1.0), w = j.value("u0_width", 1.0);
    double b = j.value("v0_amplitude", 0.5), wv = j.value("v0_width", 1.0);
    double c = j.value("center", 0.0);
    d = p == "gaussian" ? gaussian(a, w, b, wv, c) : sech2(a, w, b, wv, c);
  } else if (p == "table") {
    d = table(j.at("x").get<std::vector<double>>(), j.at("u0").get<std::vector<double>>(),
              j.at("u1").get<std::vector<double>>());
  } else {
    throw DomainError("unknown initial data preset '" + p + "'");
  }
  d.x_min = j.value("x_min", d.x_min);
  d.x_max = j.value("x_max", d.x_max);
  d.n_samples = j.value("n_samples", d.n_samples);
  d.tail_tol = j.value("tail_tol", d.tail_tol);
  if (!(d.x_max > d.x_min) || d.n_samples < 8) throw DomainError("bad x window or n_samples");
  return d;
}

InitialData InitialData::scaled(double eps) const {
  InitialData d = *this;
  auto s = [eps](std::function<double(double)> f) {
    return std::function<double(double)>([f, eps](double x) { return eps * f(x); });
  };
  d.u0 = s(u0);
  d.u0x = s(u0x);
  d.u1 = s(u1);
  d.v0 = s(v0);
  d.params["scale"] = params.value("scale", 1.0) * eps;
  return d;
}

void InitialData::validate() const {
  for (double x : {x_min, x_max}) {
    if (std::abs(u0(x)) > tail_tol || std::abs(u0x(x)) > tail_tol || std::abs(u1(x)) > tail_tol)
      throw DomainError("initial data do not decay to tail_tol at the window edge");
  }
  if (std::abs(v0(x_min)) > tail_tol || std::abs(v0(x_max)) > tail_tol)
    throw DomainError("integral of u1 differs from zero by more than tail_tol");
}

Mat3 vandermonde_P(cd k) {
  Mat3 P;
  for (int j = 0; j < 3; ++j) {
    cd l = l_func(j + 1, k);
    P(0, j) = 1.0;
    P(1, j) = l;
    P(2, j) = l * l;
  }
  return P;
}

namespace {

struct PFactor {
  Mat3 P, Pinv;
};

PFactor p_factor(cd k) {
  Mat3 P = vandermonde_P(k);
  if (std::abs(P.determinant()) < 1e-10) throw NearSingularError("P(k) is nearly singular near Q hat");
  return {P, P.inverse()};
}

// U = P^{-1} M P with M nonzero only in its last row (m0, m1, 0).
Mat3 u_matrix(const PFactor& f, double u0, double u0x, double v0) {
  cd m0 = -u0x / 4.0 - kI * v0 / (4.0 * kSqrt3), m1 = -u0 / 2.0;
  Eigen::Matrix<cd, 1, 3> row = m0 * f.P.row(0) + m1 * f.P.row(1);
  return f.Pinv.col(2) * row;
}

}  // namespace

PU build_P_and_U(double x, cd k, const InitialData& d) {
  PFactor f = p_factor(k);
  return {f.P, u_matrix(f, d.u0(x), d.u0x(x), d.v0(x))};
}

VolterraResult solve_volterra(cd k, const InitialData& d, VolterraKind kind, int n_steps) {
  const int N = n_steps > 0 ? n_steps : d.n_samples;
  const double h = (d.x_max - d.x_min) / N;
  PFactor pf = p_factor(k);
  cd l[3] = {l_func(1, k), l_func(2, k), l_func(3, k)};
  const double sgn = kind == VolterraKind::X ? 1.0 : -1.0;
  Mat3 D, E;
  VolterraResult res;
  const double L = d.x_max - d.x_min;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      D(i, j) = sgn * (l[i] - l[j]);
      E(i, j) = std::exp(-h * D(i, j));
      res.growth[j] = std::max(res.growth[j], std::exp(std::max(0.0, -D(i, j).real()) * L));
    }
  auto V = [&](double x) {
    Mat3 U = u_matrix(pf, d.u0(x), d.u0x(x), d.v0(x));
    return kind == VolterraKind::X ? U : Mat3(-U.transpose());
  };
  static const double beta[4][4] = {{1.0, 0, 0, 0},
                                    {0.5, 0.5, 0, 0},
                                    {5.0 / 12, 8.0 / 12, -1.0 / 12, 0},
                                    {9.0 / 24, 19.0 / 24, -5.0 / 24, 1.0 / 24}};
  const Mat3 Id = Mat3::Identity();
  Mat3 I_prev = Mat3::Zero(), X = Id;
  Mat3 F[3];  // F_{n-1}, F_{n-2}, F_{n-3}
  F[0] = V(d.x_max) * X;
  F[1] = F[2] = Mat3::Zero();
  Mat3 E2 = E.cwiseProduct(E), E3 = E2.cwiseProduct(E);
  for (int n = 1; n <= N; ++n) {
    double x = d.x_max - n * h;
    int q = std::min(n, 3);
    const double* b = beta[q];
    Mat3 known = E.cwiseProduct(I_prev) + h * b[1] * E.cwiseProduct(F[0]);
    if (q >= 2) known += h * b[2] * E2.cwiseProduct(F[1]);
    if (q >= 3) known += h * b[3] * E3.cwiseProduct(F[2]);
    Mat3 Vn = V(x);
    Mat3 A = Id + h * b[0] * Vn;
    X = A.partialPivLu().solve(Id - known);
    F[2] = F[1];
    F[1] = F[0];
    F[0] = Vn * X;
    I_prev = Id - X;
  }
  res.X_min = X;
  res.s = Id;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) res.s(i, j) -= std::exp(-d.x_min * D(i, j)) * I_prev(i, j);
  return res;
}

std::vector<KNode> circle_grid(int per_sextant, double exclusion) {
  std::vector<KNode> out;
  for (int s = 0; s < 6; ++s)
    for (double th : cheb_nodes(per_sextant, s * kPi / 3, (s + 1) * kPi / 3)) {
      cd k = std::polar(1.0, th);
      bool near = false;
      for (int j = 1; j <= 6; ++j) near = near || std::abs(k - kappa(j)) < exclusion;
      if (!near) out.push_back({"circle", k});
    }
  return out;
}

std::vector<KNode> segment_grid(int n) {
  std::vector<KNode> out;
  for (int m = 0; m < n; ++m) {
    double y = 0.05 * std::pow(0.95 / 0.05, n > 1 ? double(m) / (n - 1) : 0.0);
    out.push_back({"segment_0i", cd(0.0, y)});
  }
  return out;
}

std::vector<KNode> ray_grid(int n) {
  std::vector<KNode> out;
  for (int m = 0; m < n; ++m) {
    double r = 1.05 * std::pow(20.0 / 1.05, n > 1 ? double(m) / (n - 1) : 0.0);
    out.push_back({"ray_minus_i", cd(0.0, -r)});
  }
  return out;
}

ForwardScattering::ForwardScattering(InitialData d, int n_steps, double growth_limit)
    : d_(std::move(d)), n_(n_steps > 0 ? n_steps : d_.n_samples), growth_limit_(growth_limit) {
  d_.validate();
}

void ForwardScattering::check(const VolterraResult& r, cd k, int ncols) const {
  for (int j = 0; j < ncols; ++j)
    if (r.growth[j] > growth_limit_) {
      std::ostringstream os;
      os << "Volterra kernel grows by " << r.growth[j] << " at k = " << k;
      throw ConvergenceError(os.str());
    }
  if (!r.s.allFinite()) throw ConvergenceError("non-finite scattering matrix");
}

Mat3 ForwardScattering::s(cd k) const {
  auto r = solve_volterra(k, d_, VolterraKind::X, n_);
  check(r, k, 3);
  return r.s;
}

Mat3 ForwardScattering::sA(cd k) const {
  auto r = solve_volterra(k, d_, VolterraKind::XA, n_);
  check(r, k, 3);
  return r.s;
}

cd ForwardScattering::s11(cd k) const {
  auto r = solve_volterra(k, d_, VolterraKind::X, n_);
  check(r, k, 1);
  return r.s(0, 0);
}

cd ForwardScattering::r1(cd k) const {
  auto r = solve_volterra(k, d_, VolterraKind::X, n_);
  check(r, k, 2);
  if (std::abs(r.s(0, 0)) < 1e-12) throw DivisionNearZero("s11 vanishes; possible soliton");
  return r.s(0, 1) / r.s(0, 0);
}

cd ForwardScattering::r2(cd k) const {
  auto r = solve_volterra(k, d_, VolterraKind::XA, n_);
  check(r, k, 2);
  if (std::abs(r.s(0, 0)) < 1e-12) throw DivisionNearZero("sA11 vanishes; possible soliton");
  return r.s(0, 1) / r.s(0, 0);
}

cd ForwardScattering::circle_limit(const std::function<cd(cd)>& fn, cd kstar, double sign,
                                   double h) const {
  double a = std::arg(kstar);
  cd v[3];
  for (int m = 1; m <= 3; ++m) v[m - 1] = fn(std::polar(1.0, a + sign * m * h));
  return 3.0 * v[0] - 3.0 * v[1] + v[2];
}

cd ForwardScattering::circle_limit_two_sided(const std::function<cd(cd)>& fn, cd kstar,
                                             double h) const {
  double a = std::arg(kstar);
  auto v = [&](double t) { return fn(std::polar(1.0, a + t)); };
  return (4.0 * (v(h) + v(-h)) - (v(2 * h) + v(-2 * h))) / 6.0;
}

std::vector<SpectralRecord> ForwardScattering::tabulate(const std::vector<KNode>& nodes,
                                                        std::vector<std::string>* skipped) const {
  std::vector<SpectralRecord> out;
  for (const auto& n : nodes) {
    try {
      SpectralRecord r{n.contour_id, n.k, 0.0, 0.0};
      if (n.contour_id == "circle") {
        r.r1 = r1(n.k);
        r.r2 = r2(n.k);
      } else if (n.contour_id == "segment_0i" || n.contour_id == "ray_minus_i") {
        r.r1 = r1(n.k);
        r.r2 = std::nan("");
      } else {
        throw DomainError("unknown contour id " + n.contour_id);
      }
      out.push_back(r);
    } catch (const Error& e) {
      if (skipped) skipped->push_back(n.contour_id + ": " + e.what());
    }
  }
  return out;
}

AssumptionReport check_assumptions(const ForwardScattering& fs, int circle_nodes, double tol) {
  AssumptionReport rep;
  rep.min_abs_s11 = INFINITY;
  std::vector<cd> pts;
  for (auto& n : circle_grid(std::max(2, circle_nodes / 6))) pts.push_back(n.k);
  for (double rho : {0.4, 0.6, 0.8})
    for (int i = 0; i <= 4; ++i) pts.push_back(std::polar(rho, 5 * kPi / 6 + i * kPi / 12));
  for (double rho : {1.25, 1.6, 2.0})
    for (int i = 0; i <= 4; ++i) pts.push_back(std::polar(rho, -kPi / 6 + i * kPi / 12));
  for (cd k : pts) {
    try {
      double a = std::abs(fs.s11(k));
      if (a < rep.min_abs_s11) rep.min_abs_s11 = a, rep.min_abs_s11_at = k;
    } catch (const Error& e) {
      rep.notes.push_back(std::string("(i) skipped point: ") + e.what());
    }
  }
  rep.no_solitons = rep.min_abs_s11 > tol;

  rep.generic = true;
  for (double ks : {1.0, -1.0}) {
    cd kstar = ks;
    std::string tag = ks > 0 ? "k=1" : "k=-1";
    auto lim = [&](const std::string& name, std::function<cd(cd)> fn) {
      cd v = fs.circle_limit(fn, kstar);
      rep.limits.push_back({name + " " + tag, v});
      if (!(std::abs(v) > tol) || !std::isfinite(std::abs(v))) rep.generic = false;
    };
    lim("(k-k*) s11", [&](cd k) { return (k - kstar) * fs.s(k)(0, 0); });
    lim("(k-k*) s13", [&](cd k) { return (k - kstar) * fs.s(k)(0, 2); });
    lim("s31", [&](cd k) { return fs.s(k)(2, 0); });
    lim("s33", [&](cd k) { return fs.s(k)(2, 2); });
    lim("(k-k*) sA11", [&](cd k) { return (k - kstar) * fs.sA(k)(0, 0); });
    lim("(k-k*) sA31", [&](cd k) { return (k - kstar) * fs.sA(k)(2, 0); });
    lim("sA13", [&](cd k) { return fs.sA(k)(0, 2); });
    lim("sA33", [&](cd k) { return fs.sA(k)(2, 2); });
  }

  for (auto& n : segment_grid(12)) {
    try {
      rep.max_abs_r1_segment = std::max(rep.max_abs_r1_segment, std::abs(fs.r1(n.k)));
    } catch (const Error& e) {
      rep.notes.push_back(std::string("(iii) skipped point: ") + e.what());
    }
  }
  rep.global = rep.max_abs_r1_segment < tol;
  return rep;
}

AssumptionReport check_assumptions(const SpectralData& sd, int segment_nodes, double tol) {
  AssumptionReport rep;
  rep.notes.push_back("(i) and (ii) need s(k); not evaluated for user supplied data");
  for (auto& n : segment_grid(segment_nodes))
    rep.max_abs_r1_segment = std::max(rep.max_abs_r1_segment, std::abs(sd.r1(n.k)));
  rep.global = rep.max_abs_r1_segment < tol;
  return rep;
}

nlohmann::json spectral_cache_json(const std::vector<SpectralRecord>& recs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : recs) {
    nlohmann::json o;
    o["contour_id"] = r.contour_id;
    o["k_re"] = r.k.real();
    o["k_im"] = r.k.imag();
    o["r1_re"] = r.r1.real();
    o["r1_im"] = r.r1.imag();
    // JSON has no NaN; missing r2 is stored as null
    if (std::isnan(r.r2.real())) {
      o["r2_re"] = nullptr;
      o["r2_im"] = nullptr;
    } else {
      o["r2_re"] = r.r2.real();
      o["r2_im"] = r.r2.imag();
    }
    arr.push_back(o);
  }
  return {{"records", arr}};
}

std::vector<SpectralRecord> spectral_cache_records(const nlohmann::json& j) {
  std::vector<SpectralRecord> out;
  for (const auto& o : j.at("records")) {
    SpectralRecord r;
    r.contour_id = o.at("contour_id").get<std::string>();
    r.k = cd(o.at("k_re").get<double>(), o.at("k_im").get<double>());
    r.r1 = cd(o.at("r1_re").get<double>(), o.at("r1_im").get<double>());
    if (o.at("r2_re").is_null())
      r.r2 = cd(std::nan(""), std::nan(""));
    else
      r.r2 = cd(o.at("r2_re").get<double>(), o.at("r2_im").get<double>());
    out.push_back(r);
  }
  return out;
}

void write_spectral_cache(const std::string& path, const std::vector<SpectralRecord>& recs) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << spectral_cache_json(recs).dump(1) << "\n";
  if (!f) throw IoError("write failed for " + path);
}

std::vector<SpectralRecord> read_spectral_cache(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  try {
    return spectral_cache_records(nlohmann::json::parse(f));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed spectral cache " + path + ": " + e.what());
  }
}

}  // namespace bsq
