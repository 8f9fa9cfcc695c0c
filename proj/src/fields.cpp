#include "lubrisim/fields.hpp"

#include "lubrisim/errors.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <functional>

namespace lubrisim {

namespace {

/// Polynomial in zeta, lowest power first.
using Poly = std::array<double, 5>;

double eval(const Poly& c, double z) {
  double acc = 0.0;
  for (std::size_t m = c.size(); m-- > 0;) acc = acc * z + c[m];
  return acc;
}

double eval_d1(const Poly& c, double z) {
  double acc = 0.0;
  for (std::size_t m = c.size(); m-- > 1;) acc = acc * z + static_cast<double>(m) * c[m];
  return acc;
}

double eval_d2(const Poly& c, double z) {
  double acc = 0.0;
  for (std::size_t m = c.size(); m-- > 2;) acc = acc * z + static_cast<double>(m * (m - 1)) * c[m];
  return acc;
}

double integral01(const Poly& c) {
  double acc = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) acc += c[m] / static_cast<double>(m + 1);
  return acc;
}

/// Local derivatives at one node.
struct Local {
  double h, hx, hxx, hxxx;
  double G, ten, ten_x, ten_xx;
};

struct Term {
  TermGroup group;
  Poly shape;
  std::function<double(const Local&)> amplitude;
};

struct Coefficients {
  double b_sin, b_cos, hamaker, tension_slope;
};

// The printed first term of u reads (zeta - zeta/2); the (zeta - zeta^2/2)
// used here is the form that integrates to the eta^3/3 draining flux.
std::vector<Term> u_terms(const Coefficients& c) {
  using G = TermGroup;
  return {
      {G::gravity_tangential, {0, 1, -0.5, 0, 0}, [c](const Local& l) { return c.b_sin * l.h * l.h; }},
      {G::van_der_waals, {0, 3, -1.5, 0, 0}, [c](const Local& l) { return c.hamaker * l.hx / (l.h * l.h); }},
      {G::gravity_normal, {0, 1, -0.5, 0, 0}, [c](const Local& l) { return -c.b_cos * l.h * l.h * l.hx; }},
      {G::gravity_tangential, {0, 2.5, -0.5, -1.0 / 3.0, 0},
       [c](const Local& l) { return c.b_sin * l.h * l.h * l.h * l.hxx; }},
      {G::capillary, {0, 1, -0.5, 0, 0}, [](const Local& l) { return l.ten * l.h * l.h * l.hxxx; }},
      {G::marangoni, {0, 1, 0, 0, 0}, [](const Local& l) { return l.h * l.ten_x; }},
  };
}

std::vector<Term> v_terms(const Coefficients& c) {
  using G = TermGroup;
  return {
      {G::gravity_tangential, {0, 0, -0.5, 0, 0}, [c](const Local& l) { return c.b_sin * l.h * l.h * l.hx; }},
      {G::van_der_waals, {0, 0, 4.5, -2, 0},
       [c](const Local& l) { return c.hamaker * l.hx * l.hx / (l.h * l.h); }},
      {G::gravity_normal, {0, 0, 0.5, 0, 0}, [c](const Local& l) { return c.b_cos * l.h * l.h * l.hx * l.hx; }},
      {G::van_der_waals, {0, 0, -1.5, 0.5, 0}, [c](const Local& l) { return c.hamaker * l.hxx / l.h; }},
      {G::gravity_normal, {0, 0, 0.5, -1.0 / 6.0, 0},
       [c](const Local& l) { return c.b_cos * l.h * l.h * l.h * l.hxx; }},
      {G::marangoni, {0, 0, -0.5, 0, 0}, [](const Local& l) { return l.h * l.h * l.ten_xx; }},
      {G::gravity_tangential, {0, 0, -2.5, 0, 0},
       [c](const Local& l) { return c.b_sin * l.h * l.h * l.hx * l.hx * l.hx; }},
      {G::gravity_tangential, {0, 0, -7.5, 0.5, 0},
       [c](const Local& l) { return c.b_sin * l.h * l.h * l.h * l.hx * l.hxx; }},
      {G::gravity_tangential, {0, 0, -1.25, 1.0 / 6.0, 1.0 / 12.0},
       [c](const Local& l) { return c.b_sin * l.h * l.h * l.h * l.h * l.hxxx; }},
  };
}

std::vector<Term> p_terms(const Coefficients& c) {
  using G = TermGroup;
  return {
      {G::capillary, {-1, 0, 0, 0, 0}, [](const Local& l) { return l.ten * l.hxx; }},
      {G::gravity_normal, {1, -1, 0, 0, 0}, [c](const Local& l) { return c.b_cos * l.h; }},
      {G::gravity_tangential, {-1, -1, 0, 0, 0}, [c](const Local& l) { return c.b_sin * l.h * l.hx; }},
      {G::gravity_normal, {1, 1, 0, 0, 0}, [c](const Local& l) { return c.b_cos * l.h * l.hx * l.hx; }},
      {G::gravity_normal, {0.5, 1, -0.5, 0, 0}, [c](const Local& l) { return c.b_cos * l.h * l.h * l.hxx; }},
      {G::van_der_waals, {3, 9, -6, 0, 0},
       [c](const Local& l) { return c.hamaker * l.hx * l.hx / (l.h * l.h * l.h); }},
      {G::van_der_waals, {-1.5, -3, 1.5, 0, 0}, [c](const Local& l) { return c.hamaker * l.hxx / (l.h * l.h); }},
      {G::gravity_tangential, {-9, -5, 0, 0, 0},
       [c](const Local& l) { return c.b_sin * l.h * l.hx * l.hx * l.hx; }},
      {G::gravity_tangential, {-13.5, -15, 1.5, 0, 0},
       [c](const Local& l) { return c.b_sin * l.h * l.h * l.hx * l.hxx; }},
      {G::capillary, {-1, 0, 0, 0, 0}, [c](const Local& l) { return (1.0 - l.G) * c.tension_slope * l.hxx; }},
      {G::marangoni, {-2, 0, 0, 0, 0}, [](const Local& l) { return l.hx * l.ten_x; }},
      {G::marangoni, {-1, -1, 0, 0, 0}, [](const Local& l) { return l.h * l.ten_xx; }},
  };
}

std::vector<Local> locals(const State& s, const Params& p, const StencilOps& ops) {
  p.validate();
  s.validate(ops.grid());
  const auto ten = surface_tension(s.gamma, p.tension_slope);
  const auto hx = ops.d1(s.eta), hxx = ops.d2(s.eta), hxxx = ops.d3(s.eta);
  const auto tx = ops.d1(ten), txx = ops.d2(ten);
  std::vector<Local> out(s.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = Local{s.eta[i], hx[i], hxx[i], hxxx[i], s.gamma[i], ten[i], tx[i], txx[i]};
  return out;
}

Coefficients coefficients(const Params& p) {
  return {p.bond * std::sin(p.incline), p.bond * std::cos(p.incline), p.hamaker, p.tension_slope};
}

template <class Reduce>
std::vector<double> reduce_u(const State& s, const Params& p, const StencilOps& ops, Reduce&& reduce) {
  const auto loc = locals(s, p, ops);
  const auto terms = u_terms(coefficients(p));
  std::vector<double> out(loc.size(), 0.0);
  for (std::size_t i = 0; i < loc.size(); ++i)
    for (const auto& t : terms)
      if (p.toggles.enabled(t.group)) out[i] += t.amplitude(loc[i]) * reduce(t.shape, loc[i]);
  return out;
}

} // namespace

std::vector<FieldSample> reconstruct(const State& s, const Params& p, const StencilOps& ops,
                                     std::span<const double> zeta_levels) {
  for (double z : zeta_levels)
    if (!(z >= 0.0 && z <= 1.0)) throw DomainError(fmt::format("zeta level {} outside [0, 1]", z));

  const auto loc = locals(s, p, ops);
  const auto c = coefficients(p);
  const auto u = u_terms(c), v = v_terms(c), pr = p_terms(c);

  auto sum = [&](const std::vector<Term>& terms, const Local& l, double z) {
    double acc = 0.0;
    for (const auto& t : terms)
      if (p.toggles.enabled(t.group)) acc += t.amplitude(l) * eval(t.shape, z);
    return acc;
  };

  std::vector<FieldSample> out;
  out.reserve(loc.size() * zeta_levels.size());
  for (std::size_t i = 0; i < loc.size(); ++i)
    for (double z : zeta_levels)
      out.push_back(FieldSample{ops.grid().x(i), z, sum(u, loc[i], z), sum(v, loc[i], z), sum(pr, loc[i], z)});
  return out;
}

std::vector<double> depth_flux(const State& s, const Params& p, const StencilOps& ops) {
  return reduce_u(s, p, ops, [](const Poly& shape, const Local& l) { return l.h * integral01(shape); });
}

std::vector<double> shear(const State& s, const Params& p, const StencilOps& ops, double zeta) {
  return reduce_u(s, p, ops, [zeta](const Poly& shape, const Local&) { return eval_d1(shape, zeta); });
}

std::vector<double> shear_rate_change(const State& s, const Params& p, const StencilOps& ops,
                                      double zeta) {
  return reduce_u(s, p, ops, [zeta](const Poly& shape, const Local&) { return eval_d2(shape, zeta); });
}

void write_fields_csv(std::ostream& os, const std::vector<FieldSample>& samples) {
  os << "x,zeta,u,v,p\n";
  for (const auto& f : samples)
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", f.x, f.zeta, f.u, f.v, f.p);
}

} // namespace lubrisim
