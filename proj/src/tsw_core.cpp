#include "tsw/tsw_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tsw/errors.hpp"
#include "tsw/quadrature.hpp"
#include "tsw/simd/kernels.hpp"

namespace tsw {

std::string_view to_string(Formulation f) { return f == Formulation::Mixed ? "mixed" : "coupled"; }

Formulation formulation_from_string(std::string_view name) {
  if (name == "mixed") return Formulation::Mixed;
  if (name == "coupled") return Formulation::Coupled;
  throw std::invalid_argument("unknown formulation '" + std::string(name) + "'");
}

std::string_view to_string(MassInverse m) { return m == MassInverse::Kronecker ? "kronecker" : "cg"; }

MassInverse mass_inverse_from_string(std::string_view name) {
  if (name == "kronecker") return MassInverse::Kronecker;
  if (name == "cg") return MassInverse::Cg;
  throw std::invalid_argument("unknown mass inverse '" + std::string(name) + "'");
}

namespace {

int quad_points(const DiscretizationConfig& cfg) {
  if (cfg.quad_points == 0) return default_gll_points(cfg.order);
  if (cfg.quad_points < 2) throw std::invalid_argument("quad_points must be at least 2");
  return cfg.quad_points;
}

// Reference 1D Gram matrices on a periodic line of ncells cells.
std::vector<double> closed_line_mass(const Lagrange1D& basis, const QuadRule& rule, int ncells) {
  const int k2 = basis.size(), k1 = k2 - 1, n = ncells * k1;
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0), v(k2);
  for (int q = 0; q < rule.size(); ++q) {
    basis.values(rule.points[q], v.data());
    for (int c = 0; c < ncells; ++c)
      for (int i = 0; i < k2; ++i)
        for (int j = 0; j < k2; ++j) {
          const int gi = (c * k1 + i) % n, gj = (c * k1 + j) % n;
          a[gi * n + gj] += rule.weights[q] * v[i] * v[j];
        }
  }
  return a;
}

std::vector<double> open_line_mass(const Lagrange1D& basis, const QuadRule& rule, int ncells) {
  const int k1 = basis.size(), n = ncells * k1;
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0), v(k1);
  for (int q = 0; q < rule.size(); ++q) {
    basis.values(rule.points[q], v.data());
    for (int c = 0; c < ncells; ++c)
      for (int i = 0; i < k1; ++i)
        for (int j = 0; j < k1; ++j) a[(c * k1 + i) * n + c * k1 + j] += rule.weights[q] * v[i] * v[j];
  }
  return a;
}

void add_scaled(std::vector<double>& y, double alpha, std::span<const double> x) {
  simd::kernels().axpy(alpha, x.data(), y.data(), y.size());
}

}  // namespace

TswModel::TswModel(const Mesh& mesh, const DiscretizationConfig& cfg)
    : mesh_(mesh),
      cfg_(cfg),
      v0_(mesh, Family::V0, cfg.order),
      v1_(mesh, Family::V1, cfg.order),
      v2_(mesh, Family::V2, cfg.order),
      asm_(v0_, v1_, v2_, gll_rule(quad_points(cfg))) {
  if (!(cfg.positivity_floor >= 0.0)) throw std::invalid_argument("positivity_floor must be >= 0");
  m0_ = asm_.mass(Family::V0);
  m1_ = asm_.mass(Family::V1);
  m2_ = asm_.mass(Family::V2);
  d2_ = asm_.div();
  d2t_ = d2_.transpose();
  r1_ = asm_.perp_curl();
  r1t_ = r1_.transpose();
  e10_ = strong_perp(v0_, v1_);
  e21_ = strong_div(v1_, v2_);

  const QuadRule& line = asm_.rule().line;
  const int k1 = cfg.order + 1;
  const int nxl = mesh.nx() * k1, nyl = mesh.ny() * k1;
  const double jx = mesh.jac_x(), jy = mesh.jac_y();
  const auto ax = closed_line_mass(v0_.closed_basis(), line, mesh.nx());
  const auto ay = closed_line_mass(v0_.closed_basis(), line, mesh.ny());
  const auto bx = open_line_mass(v0_.open_basis(), line, mesh.nx());
  const auto by = open_line_mass(v0_.open_basis(), line, mesh.ny());
  m0_kron_ = KroneckerSolver(ay, nyl, nyl, ax, nxl, jx * jy);
  m1x_kron_ = KroneckerSolver(by, nyl, k1, ax, nxl, jx / jy);
  m1y_kron_ = KroneckerSolver(bx, nxl, k1, ay, nyl, jy / jx);

  const int nb = v2_.num_local();
  std::vector<double> blocks(static_cast<std::size_t>(mesh.num_cells()) * nb * nb, 0.0);
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) {
        const long p = m2_.find(c * nb + i, c * nb + j);
        if (p >= 0) blocks[(static_cast<std::size_t>(c) * nb + i) * nb + j] = m2_.values()[p];
      }
  m2_solver_ = BlockDiagonalSolver(blocks, mesh.num_cells(), nb);
}

std::vector<double> TswModel::solve_m0(std::span<const double> r) const {
  if (cfg_.mass_inverse == MassInverse::Cg) return solve_spd(m0_, r, cfg_.solver);
  std::vector<double> x(r.size());
  m0_kron_.solve(r, x);
  return x;
}

std::vector<double> TswModel::solve_m1(std::span<const double> r) const {
  if (cfg_.mass_inverse == MassInverse::Cg) return solve_spd(m1_, r, cfg_.solver);
  if (static_cast<int>(r.size()) != v1_.ndof()) throw std::invalid_argument("solve_m1: size mismatch");
  std::vector<double> x(r.size());
  const std::size_t nxd = r.size() / 2;
  m1x_kron_.solve(r.subspan(0, nxd), std::span<double>(x).subspan(0, nxd));
  m1y_kron_.solve(r.subspan(nxd), std::span<double>(x).subspan(nxd));
  return x;
}

std::vector<double> TswModel::solve_m2(std::span<const double> r) const { return m2_solver_.solve(r); }

std::vector<double> TswModel::solve_weighted_m2(std::span<const double> w,
                                                std::span<const double> r) const {
  const SpaceTables& t = asm_.tables(Family::V2);
  const Channel& ch = t.value();
  const std::vector<double> wq = asm_.values(Family::V2, w);
  const auto qw = asm_.weights();
  const int nq = asm_.nq(), nb = ch.nb;
  std::vector<double> block(static_cast<std::size_t>(nb) * nb), x(r.begin(), r.end());
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    std::fill(block.begin(), block.end(), 0.0);
    for (int q = 0; q < nq; ++q) {
      const double wt = wq[c * nq + q] * qw[q];
      const double* tq = ch.t.data() + q * nb;
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) block[i * nb + j] += wt * tq[i] * tq[j];
    }
    DenseCholesky(block, nb).solve_in_place(std::span<double>(x).subspan(c * nb, nb));
  }
  return x;
}

namespace {

LinearMap diagonal_preconditioner(const SparseOperator& a) {
  std::vector<double> d = a.diagonal();
  for (double& v : d) v = 1.0 / v;
  return [d = std::move(d)](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = d[i] * x[i];
  };
}

}  // namespace

std::vector<double> TswModel::solve_weighted_m0(std::span<const double> w,
                                                std::span<const double> r) const {
  LinearMap op = [&](std::span<const double> x, std::span<double> y) {
    const auto v = asm_.weighted_mass_apply(Family::V0, w, x);
    std::copy(v.begin(), v.end(), y.begin());
  };
  LinearMap pre;
  switch (cfg_.weighted_preconditioner) {
    case Preconditioner::None: break;
    case Preconditioner::Diagonal: pre = diagonal_preconditioner(asm_.weighted_mass(Family::V0, w)); break;
    case Preconditioner::Operator:
      pre = [this](std::span<const double> x, std::span<double> y) {
        const auto v = solve_m0(x);
        std::copy(v.begin(), v.end(), y.begin());
      };
      break;
  }
  return conjugate_gradient(op, r, cfg_.solver, pre);
}

std::vector<double> TswModel::solve_weighted_m1(std::span<const double> w,
                                                std::span<const double> r) const {
  LinearMap op = [&](std::span<const double> x, std::span<double> y) {
    const auto v = asm_.weighted_mass_apply(Family::V1, w, x);
    std::copy(v.begin(), v.end(), y.begin());
  };
  LinearMap pre;
  switch (cfg_.weighted_preconditioner) {
    case Preconditioner::None: break;
    case Preconditioner::Diagonal: pre = diagonal_preconditioner(asm_.weighted_mass(Family::V1, w)); break;
    case Preconditioner::Operator:
      pre = [this](std::span<const double> x, std::span<double> y) {
        const auto v = solve_m1(x);
        std::copy(v.begin(), v.end(), y.begin());
      };
      break;
  }
  return conjugate_gradient(op, r, cfg_.solver, pre);
}

Field TswModel::project(Family family, const ScalarFunction& f) const {
  const auto rhs = asm_.load(family, f);
  switch (family) {
    case Family::V0: return Field(v0_, solve_m0(rhs));
    case Family::V2: return Field(v2_, solve_m2(rhs));
    case Family::V1: break;
  }
  throw std::invalid_argument("project: scalar function needs V0 or V2");
}

Field TswModel::project(const VectorFunction& f) const { return Field(v1_, solve_m1(asm_.load(f))); }

double TswModel::min_depth(std::span<const double> h) const {
  const auto hq = asm_.values(Family::V2, h);
  return *std::min_element(hq.begin(), hq.end());
}

void TswModel::check_positivity(std::span<const double> h) const {
  const auto hq = asm_.values(Family::V2, h);
  double lo = std::numeric_limits<double>::infinity();
  bool finite = true;
  for (double v : hq) {
    lo = std::min(lo, v);
    finite = finite && std::isfinite(v);
  }
  const double area = mesh_.lx() * mesh_.ly();
  const double mean = asm_.integrate(hq) / area;
  if (!finite || !(mean > 0.0) || !(lo >= cfg_.positivity_floor * mean))
    throw PositivityError("depth lost positivity (min h = " + std::to_string(lo) + ")", lo);
}

TswState TswModel::make_state(Formulation form) const {
  TswState s;
  s.form = form;
  s.u = Field(v1_);
  s.h = Field(v2_);
  if (form == Formulation::Mixed) s.b = Field(v2_);
  s.B = Field(v2_);
  s.f = Field(v0_);
  return s;
}

std::vector<double> TswModel::q_of(const TswState& s) const {
  std::vector<double> r = m0_.apply(s.f.coeffs);
  const std::vector<double> curl = r1t_.apply(s.u.coeffs);
  add_scaled(r, -1.0, curl);
  return solve_weighted_m0(s.h.coeffs, r);
}

std::vector<double> TswModel::flux_of(std::span<const double> u, std::span<const double> h) const {
  return solve_m1(asm_.weighted_mass_apply(Family::V1, h, u));
}

std::vector<double> TswModel::bprime_of(std::span<const double> h, std::span<const double> B) const {
  return solve_weighted_m2(h, m2_.apply(B));
}

Field TswModel::diagnose_q(const TswState& s) const {
  check_positivity(s.h.coeffs);
  return Field(v0_, q_of(s));
}

Field TswModel::diagnose_F(const TswState& s) const { return Field(v1_, flux_of(s.u.coeffs, s.h.coeffs)); }

std::pair<Field, Field> TswModel::diagnose_functional_derivatives(const TswState& s,
                                                                  Transport variant) const {
  std::vector<double> ke = asm_.k2(s.u.coeffs, s.u.coeffs);
  for (double& v : ke) v *= 0.5;
  if (variant == Transport::Material) {
    if (!s.b.space) throw std::invalid_argument("material derivatives need the buoyancy b");
    add_scaled(ke, 1.0, asm_.weighted_mass_apply(Family::V2, s.h.coeffs, s.b.coeffs));
    std::vector<double> t = asm_.weighted_mass_apply(Family::V2, s.h.coeffs, s.h.coeffs);
    for (double& v : t) v *= 0.5;
    return {Field(v2_, solve_m2(ke)), Field(v2_, solve_m2(t))};
  }
  std::vector<double> phi = solve_m2(ke);
  add_scaled(phi, 0.5, s.B.coeffs);
  std::vector<double> t(s.h.coeffs);
  for (double& v : t) v *= 0.5;
  return {Field(v2_, std::move(phi)), Field(v2_, std::move(t))};
}

Field TswModel::diagnose_bprime(const TswState& s) const {
  check_positivity(s.h.coeffs);
  return Field(v2_, bprime_of(s.h.coeffs, s.B.coeffs));
}

std::pair<Field, Field> TswModel::diagnose_bprime_G(const TswState& s) const {
  check_positivity(s.h.coeffs);
  std::vector<double> bp = bprime_of(s.h.coeffs, s.B.coeffs);
  std::vector<double> r = d2t_.apply(bp);
  for (double& v : r) v = -v;
  std::vector<double> g = solve_weighted_m1(s.h.coeffs, r);
  return {Field(v2_, std::move(bp)), Field(v1_, std::move(g))};
}

Tendency TswModel::rhs_coupled(const TswState& s, RhsTerms* terms) const {
  if (s.form != Formulation::Coupled) throw std::invalid_argument("rhs_coupled: state is not coupled");
  check_positivity(s.h.coeffs);
  const auto& u = s.u.coeffs;
  const auto& h = s.h.coeffs;
  const auto& B = s.B.coeffs;

  const std::vector<double> q = q_of(s);
  const std::vector<double> F = flux_of(u, h);
  const std::vector<double> bp = bprime_of(h, B);

  std::vector<double> phi = asm_.k2(u, u);
  for (double& v : phi) v *= 0.5;
  phi = solve_m2(phi);
  add_scaled(phi, 0.5, B);

  const std::vector<double> a1 = solve_m1(d2t_.apply(h));
  const std::vector<double> a2 = solve_m1(d2t_.apply(bp));
  const std::vector<double> t2 = d2t_.apply(solve_m2(asm_.weighted_mass_apply(Family::V2, bp, h)));

  std::vector<double> ru = asm_.c1(q, F);
  for (double& v : ru) v = -v;
  add_scaled(ru, 1.0, d2t_.apply(phi));
  add_scaled(ru, 0.25, asm_.weighted_mass_apply(Family::V1, bp, a1));
  add_scaled(ru, 0.25, t2);
  add_scaled(ru, -0.25, asm_.weighted_mass_apply(Family::V1, h, a2));

  const std::vector<double> divF = d2_.apply(F);
  std::vector<double> dh = solve_m2(divF);
  for (double& v : dh) v = -v;

  std::vector<double> rB = d2_.apply(solve_m1(asm_.weighted_mass_apply(Family::V1, bp, F)));
  for (double& v : rB) v *= -0.5;
  add_scaled(rB, 0.5, asm_.weighted_mass_apply(Family::V2, bp, dh));
  add_scaled(rB, 0.5, asm_.k2(a2, F));

  Tendency t;
  t.du = solve_m1(ru);
  t.dh = std::move(dh);
  t.dB = solve_m2(rB);
  if (terms) {
    *terms = {};
    terms->q = q;
    terms->F = F;
    terms->bprime = bp;
    terms->phi_f = std::move(phi);
    terms->t_f = std::vector<double>(h.begin(), h.end());
    for (double& v : terms->t_f) v *= 0.5;
  }
  return t;
}

Tendency TswModel::rhs_mixed(const TswState& s, RhsTerms* terms) const {
  if (s.form != Formulation::Mixed || !s.b.space)
    throw std::invalid_argument("rhs_mixed: state is not mixed");
  check_positivity(s.h.coeffs);
  const auto& u = s.u.coeffs;
  const auto& h = s.h.coeffs;
  const auto& b = s.b.coeffs;
  const auto& B = s.B.coeffs;

  const std::vector<double> q = q_of(s);
  const std::vector<double> F = flux_of(u, h);
  const std::vector<double> bp = bprime_of(h, B);
  std::vector<double> rg = d2t_.apply(bp);
  for (double& v : rg) v = -v;
  const std::vector<double> G = solve_weighted_m1(h, rg);

  std::vector<double> ke = asm_.k2(u, u);
  for (double& v : ke) v *= 0.5;
  std::vector<double> phi_f = solve_m2(ke);
  add_scaled(phi_f, 0.5, B);
  add_scaled(ke, 1.0, asm_.weighted_mass_apply(Family::V2, h, b));
  const std::vector<double> phi_m = solve_m2(ke);
  std::vector<double> t_m = asm_.weighted_mass_apply(Family::V2, h, h);
  for (double& v : t_m) v *= 0.5;
  t_m = solve_m2(t_m);
  std::vector<double> t_f(h.begin(), h.end());
  for (double& v : t_f) v *= 0.5;

  std::vector<double> phi_sum(phi_m);
  add_scaled(phi_sum, 1.0, phi_f);

  std::vector<double> ru = asm_.c1(q, F);
  for (double& v : ru) v = -v;
  add_scaled(ru, 0.5, d2t_.apply(phi_sum));
  add_scaled(ru, 0.5, asm_.weighted_mass_apply(Family::V1, t_m, G));
  add_scaled(ru, 0.5, asm_.weighted_mass_apply(Family::V1, b, solve_m1(d2t_.apply(t_f))));

  std::vector<double> dh = solve_m2(d2_.apply(F));
  for (double& v : dh) v = -v;
  std::vector<double> db = solve_m2(asm_.k2(G, F));
  for (double& v : db) v = -v;
  std::vector<double> dB = solve_m2(d2_.apply(solve_m1(asm_.weighted_mass_apply(Family::V1, b, F))));
  for (double& v : dB) v = -v;

  Tendency t;
  t.du = solve_m1(ru);
  t.dh = std::move(dh);
  t.db = std::move(db);
  t.dB = std::move(dB);
  if (terms) {
    terms->q = q;
    terms->F = F;
    terms->bprime = bp;
    terms->G = G;
    terms->phi_m = phi_m;
    terms->phi_f = std::move(phi_f);
    terms->t_m = std::move(t_m);
    terms->t_f = std::move(t_f);
  }
  return t;
}

Tendency TswModel::rhs(const TswState& s, RhsTerms* terms) const {
  return s.form == Formulation::Mixed ? rhs_mixed(s, terms) : rhs_coupled(s, terms);
}

}  // namespace tsw
