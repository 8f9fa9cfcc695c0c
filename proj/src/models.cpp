#include "lubrisim/models.hpp"

#include "lubrisim/errors.hpp"

#include <cmath>
#include <optional>

namespace lubrisim {

namespace {

/// Face and node quantities shared by every term group.
struct Kinematics {
  // faces
  FaceField eta, eta_x, eta_xx, eta_xxx;
  FaceField gam, gam_x;
  FaceField tension_x;   // gamma_x of the surface tension
  FaceField curvature_x; // (gamma eta_xx)_x
  // nodes
  std::vector<double> eta_n, eta_x_n, eta_xx_n, gam_n, gam_x_n;
};

Kinematics kinematics(const State& s, const Params& p, const StencilOps& ops) {
  const auto eta_e = ops.extend(s.eta);
  const auto gam_e = ops.extend(s.gamma);
  const auto eta_xx_e = ops.d2_extended(eta_e);

  std::vector<double> tension_e(gam_e.size());
  std::vector<double> curv_e(gam_e.size());
  for (std::size_t m = 0; m < gam_e.size(); ++m) {
    tension_e[m] = 1.0 + p.tension_slope * (1.0 - gam_e[m]);
    curv_e[m] = tension_e[m] * eta_xx_e[m];
  }

  Kinematics k;
  k.eta = ops.face_average(eta_e);
  k.eta_x = ops.face_gradient(eta_e);
  k.eta_xx = ops.face_average(eta_xx_e);
  k.eta_xxx = ops.face_gradient(eta_xx_e);
  k.gam = ops.face_average(gam_e);
  k.gam_x = ops.face_gradient(gam_e);
  k.tension_x = ops.face_gradient(tension_e);
  k.curvature_x = ops.face_gradient(curv_e);

  k.eta_n = s.eta;
  k.eta_x_n = ops.node_d1(eta_e);
  k.eta_xx_n = ops.node_d2(eta_e);
  k.gam_n = s.gamma;
  k.gam_x_n = ops.node_d1(gam_e);
  return k;
}

/// One displayed group: optional face fluxes for both equations plus
/// pointwise terms of the concentration equation.
struct GroupTerms {
  std::string name;
  TermGroup group;
  std::optional<FaceField> eta_flux;
  std::optional<FaceField> gamma_flux;
  std::optional<std::vector<double>> gamma_source;
};

template <class F>
FaceField on_faces(const Kinematics& k, F&& f) {
  FaceField out{std::vector<double>(k.eta.size())};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
  return out;
}

template <class F>
std::vector<double> on_nodes(const Kinematics& k, F&& f) {
  std::vector<double> out(k.eta_n.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(i);
  return out;
}

GroupTerms marangoni(const Kinematics& k) {
  GroupTerms g{"marangoni", TermGroup::marangoni, {}, {}, {}};
  g.eta_flux = on_faces(k, [&](std::size_t i) {
    const double h = k.eta[i];
    return -0.5 * h * h * k.tension_x[i];
  });
  g.gamma_flux = on_faces(k, [&](std::size_t i) { return -k.gam[i] * k.eta[i] * k.tension_x[i]; });
  return g;
}

GroupTerms capillary(const Kinematics& k) {
  GroupTerms g{"capillary", TermGroup::capillary, {}, {}, {}};
  g.eta_flux = on_faces(k, [&](std::size_t i) {
    const double h = k.eta[i];
    return -(1.0 / 3.0) * h * h * h * k.curvature_x[i];
  });
  g.gamma_flux = on_faces(k, [&](std::size_t i) {
    const double h = k.eta[i];
    return -0.5 * k.gam[i] * h * h * k.curvature_x[i];
  });
  return g;
}

GroupTerms gravity_tangential(const Kinematics& k, double b_sin, bool full) {
  GroupTerms g{"gravity_tangential", TermGroup::gravity_tangential, {}, {}, {}};
  g.eta_flux = on_faces(k, [&](std::size_t i) {
    const double h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i];
    const double h3 = h * h * h;
    double f = h3 / 3.0;
    if (full) f += (7.0 / 3.0) * h3 * hx * hx + h3 * h * hxx;
    return -f * b_sin;
  });
  g.gamma_flux = on_faces(k, [&](std::size_t i) {
    const double G = k.gam[i], h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i];
    double f = -0.5 * G * h * h;
    if (full) f += -(5.0 / 3.0) * G * h * h * h * hxx - (17.0 / 4.0) * G * h * h * hx * hx;
    return f * b_sin;
  });
  if (full) {
    g.gamma_source = on_nodes(k, [&](std::size_t i) {
      const double G = k.gam_n[i], Gx = k.gam_x_n[i], h = k.eta_n[i], hx = k.eta_x_n[i];
      return (1.5 * G * h * hx * hx * hx - 0.25 * Gx * h * h * hx * hx) * b_sin;
    });
  }
  return g;
}

GroupTerms gravity_normal(const Kinematics& k, double b_cos, bool full) {
  GroupTerms g{"gravity_normal", TermGroup::gravity_normal, {}, {}, {}};
  g.eta_flux = on_faces(k, [&](std::size_t i) {
    const double h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i], hxxx = k.eta_xxx[i];
    const double h3 = h * h * h;
    double f = h3 * hx / 3.0;
    if (full)
      f += 0.6 * h3 * h * h * hxxx + 4.0 * h3 * h * hx * hxx + (7.0 / 3.0) * h3 * hx * hx * hx;
    return f * b_cos;
  });
  g.gamma_flux = on_faces(k, [&](std::size_t i) {
    const double G = k.gam[i], h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i],
                 hxxx = k.eta_xxx[i];
    const double h2 = h * h;
    double f = 0.5 * G * h2 * hx;
    if (full)
      f += 4.0 * G * h2 * hx * hx * hx + (20.0 / 3.0) * G * h2 * h * hx * hxx +
           G * h2 * h2 * hxxx;
    return f * b_cos;
  });
  if (full) {
    g.gamma_source = on_nodes(k, [&](std::size_t i) {
      const double G = k.gam_n[i], Gx = k.gam_x_n[i], h = k.eta_n[i], hx = k.eta_x_n[i],
                   hxx = k.eta_xx_n[i];
      const double h2 = h * h, h3 = h2 * h, hx2 = hx * hx;
      return (-G * h * hx2 * hx2 + (1.0 / 3.0) * G * h3 * hxx * hxx + 0.5 * Gx * h2 * hx2 * hx +
              (1.0 / 3.0) * Gx * h3 * hx * hxx) *
             b_cos;
    });
  }
  return g;
}

GroupTerms van_der_waals(const Kinematics& k, double hamaker, bool full) {
  GroupTerms g{"van_der_waals", TermGroup::van_der_waals, {}, {}, {}};
  g.eta_flux = on_faces(k, [&](std::size_t i) {
    const double h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i], hxxx = k.eta_xxx[i];
    double f = -hx / h;
    if (full) f += 9.6 * hx * hxx - 1.8 * h * hxxx - 7.0 * hx * hx * hx / h;
    return f * hamaker;
  });
  g.gamma_flux = on_faces(k, [&](std::size_t i) {
    const double G = k.gam[i], h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i],
                 hxxx = k.eta_xxx[i];
    const double h2 = h * h;
    double f = -1.5 * G * hx / h2;
    if (full)
      f += -(32.0 / 3.0) * G * hx * hx * hx / h2 + 16.0 * G * hx * hxx / h - 3.0 * G * hxxx;
    return f * hamaker;
  });
  if (full) {
    g.gamma_source = on_nodes(k, [&](std::size_t i) {
      const double G = k.gam_n[i], Gx = k.gam_x_n[i], h = k.eta_n[i], hx = k.eta_x_n[i],
                   hxx = k.eta_xx_n[i];
      const double h2 = h * h, hx2 = hx * hx;
      return (-(1.0 / 3.0) * G * hx2 * hx2 / (h2 * h) - G * hxx * hxx / h +
              (7.0 / 6.0) * Gx * hx2 * hx / h2 - Gx * hx * hxx / h) *
             hamaker;
    });
  }
  return g;
}

GroupTerms hrb_tangential(const Kinematics& k, double coeff) {
  GroupTerms g{"inertia_cross_hrb_tangential", TermGroup::inertia_cross_hrb, {}, {}, {}};
  g.eta_flux = on_faces(k, [&](std::size_t i) {
    const double h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i];
    return ((32.0 / 105.0) * h * h * hx * hx - (10.0 / 21.0) * h * h * h * hxx) * coeff;
  });
  g.gamma_flux = on_faces(k, [&](std::size_t i) {
    const double G = k.gam[i], h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i];
    return (-(89.0 / 120.0) * G * h * h * hxx + (7.0 / 15.0) * G * h * hx * hx) * coeff;
  });
  return g;
}

GroupTerms hrb_normal(const Kinematics& k, double coeff) {
  GroupTerms g{"inertia_cross_hrb_normal", TermGroup::inertia_cross_hrb, {}, {}, {}};
  g.eta_flux = on_faces(k, [&](std::size_t i) {
    const double h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i], hxxx = k.eta_xxx[i];
    const double h2 = h * h;
    return ((44.0 / 105.0) * h2 * h * hx * hxx + (4.0 / 15.0) * h2 * h2 * hxxx -
            (4.0 / 105.0) * h2 * hx * hx * hx) *
           coeff;
  });
  g.gamma_flux = on_faces(k, [&](std::size_t i) {
    const double G = k.gam[i], h = k.eta[i], hx = k.eta_x[i], hxx = k.eta_xx[i],
                 hxxx = k.eta_xxx[i];
    const double h2 = h * h;
    return (0.65 * G * h2 * hx * hxx + (5.0 / 12.0) * G * h2 * h * hxxx - 0.05 * G * h * hx * hx * hx) *
           coeff;
  });
  return g;
}

GroupTerms diffusion(const Kinematics& k, const StencilOps& ops, double inv_peclet,
                     DiffusionForm form) {
  GroupTerms g{"diffusion", TermGroup::diffusion, {}, {}, {}};
  if (form == DiffusionForm::plain) {
    g.gamma_source = ops.div_flux(on_faces(k, [&](std::size_t i) { return inv_peclet * k.gam_x[i]; }));
    return g;
  }
  auto div = ops.div_flux(on_faces(k, [&](std::size_t i) {
    const double hx = k.eta_x[i];
    return k.gam_x[i] / (1.0 + hx * hx);
  }));
  for (std::size_t i = 0; i < div.size(); ++i) {
    const double hx = k.eta_x_n[i];
    div[i] *= inv_peclet / std::sqrt(1.0 + hx * hx);
  }
  g.gamma_source = std::move(div);
  return g;
}

std::vector<GroupTerms> active_groups(ModelVariant variant, const State& s, const Params& p,
                                      const StencilOps& ops) {
  p.validate();
  s.validate(ops.grid());

  const auto k = kinematics(s, p, ops);
  const auto& on = p.toggles;
  const double b_sin = p.bond * std::sin(p.incline);
  const double b_cos = p.bond * std::cos(p.incline);
  const double hrb = p.hamaker * p.reynolds * p.bond;
  const bool full = variant == ModelVariant::full_cm;
  const bool de_wit = variant == ModelVariant::de_wit;

  std::vector<GroupTerms> groups;
  if (on.marangoni) groups.push_back(marangoni(k));
  if (on.capillary) groups.push_back(capillary(k));
  if (!de_wit) {
    if (on.gravity_tangential) groups.push_back(gravity_tangential(k, b_sin, full));
    if (on.gravity_normal) groups.push_back(gravity_normal(k, b_cos, full));
  }
  if (on.van_der_waals) groups.push_back(van_der_waals(k, p.hamaker, full));
  if (full && on.inertia_cross_hrb) {
    groups.push_back(hrb_tangential(k, hrb * std::sin(p.incline)));
    groups.push_back(hrb_normal(k, hrb * std::cos(p.incline)));
  }
  if (on.diffusion)
    groups.push_back(diffusion(k, ops, p.inv_peclet, de_wit ? DiffusionForm::plain : p.diffusion_form));
  return groups;
}

void accumulate(FaceField& into, const FaceField& term) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += term[i];
}

void accumulate(std::vector<double>& into, const std::vector<double>& term) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += term[i];
}

} // namespace

const TermContribution* TermBreakdown::find(std::string_view name) const {
  for (const auto& t : terms)
    if (t.name == name) return &t;
  return nullptr;
}

Rhs TermBreakdown::sum() const {
  if (terms.empty()) return {};
  Rhs out{std::vector<double>(terms.front().deta_dt.size(), 0.0),
          std::vector<double>(terms.front().dgamma_dt.size(), 0.0)};
  for (const auto& t : terms) {
    accumulate(out.deta_dt, t.deta_dt);
    accumulate(out.dgamma_dt, t.dgamma_dt);
  }
  return out;
}

FluxForm flux_form(ModelVariant variant, const State& s, const Params& p, const StencilOps& ops) {
  const auto groups = active_groups(variant, s, p, ops);
  const std::size_t n = ops.size();

  FaceField eta_flux{std::vector<double>(n + 1, 0.0)};
  FaceField gamma_flux{std::vector<double>(n + 1, 0.0)};
  std::vector<double> gamma_source(n, 0.0);
  for (const auto& g : groups) {
    if (g.eta_flux) accumulate(eta_flux, *g.eta_flux);
    if (g.gamma_flux) accumulate(gamma_flux, *g.gamma_flux);
    if (g.gamma_source) accumulate(gamma_source, *g.gamma_source);
  }

  auto dgamma = ops.div_flux(gamma_flux);
  accumulate(dgamma, gamma_source);
  return FluxForm{std::move(eta_flux), std::move(dgamma)};
}

Rhs rhs(ModelVariant variant, const State& s, const Params& p, const StencilOps& ops) {
  auto form = flux_form(variant, s, p, ops);
  return Rhs{ops.div_flux(form.eta_flux), std::move(form.dgamma_dt)};
}

TermBreakdown rhs_breakdown(ModelVariant variant, const State& s, const Params& p,
                            const StencilOps& ops) {
  const auto groups = active_groups(variant, s, p, ops);
  const std::size_t n = ops.size();
  TermBreakdown out;
  // switched-off groups stay listed with zero contributions
  for (const auto& [name, group] : variant_groups(variant)) {
    TermContribution c{std::string(name), group, std::vector<double>(n, 0.0),
                       std::vector<double>(n, 0.0)};
    for (const auto& g : groups) {
      if (g.name != name) continue;
      if (g.eta_flux) c.deta_dt = ops.div_flux(*g.eta_flux);
      if (g.gamma_flux) c.dgamma_dt = ops.div_flux(*g.gamma_flux);
      if (g.gamma_source) accumulate(c.dgamma_dt, *g.gamma_source);
    }
    out.terms.push_back(std::move(c));
  }
  return out;
}

std::vector<std::pair<std::string_view, TermGroup>> variant_groups(ModelVariant variant) {
  using G = TermGroup;
  switch (variant) {
  case ModelVariant::full_cm:
    return {{"marangoni", G::marangoni},
            {"capillary", G::capillary},
            {"gravity_tangential", G::gravity_tangential},
            {"gravity_normal", G::gravity_normal},
            {"van_der_waals", G::van_der_waals},
            {"inertia_cross_hrb_tangential", G::inertia_cross_hrb},
            {"inertia_cross_hrb_normal", G::inertia_cross_hrb},
            {"diffusion", G::diffusion}};
  case ModelVariant::low_order_cm:
    return {{"marangoni", G::marangoni},         {"capillary", G::capillary},
            {"gravity_tangential", G::gravity_tangential}, {"gravity_normal", G::gravity_normal},
            {"van_der_waals", G::van_der_waals}, {"diffusion", G::diffusion}};
  case ModelVariant::de_wit:
    return {{"marangoni", G::marangoni},
            {"capillary", G::capillary},
            {"van_der_waals", G::van_der_waals},
            {"diffusion", G::diffusion}};
  }
  return {};
}

} // namespace lubrisim
