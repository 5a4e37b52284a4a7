#include "tsw/assembly.hpp"

#include <stdexcept>

#include "tsw/simd/kernels.hpp"

namespace tsw {

namespace {

Channel make_channel(int offset, int nb, int nq) {
  Channel ch;
  ch.offset = offset;
  ch.nb = nb;
  ch.t.assign(static_cast<std::size_t>(nq) * nb, 0.0);
  ch.tt.assign(ch.t.size(), 0.0);
  return ch;
}

void finish(Channel& ch, int nq) {
  for (int q = 0; q < nq; ++q)
    for (int i = 0; i < ch.nb; ++i) ch.tt[i * nq + q] = ch.t[q * ch.nb + i];
}

}  // namespace

SpaceTables::SpaceTables(const FunctionSpace& space, const QuadRule2D& rule)
    : space_(&space), nq_(rule.size()), ncells_(space.mesh().num_cells()) {
  const int nl = space.num_local();
  auto signs = space.cell_signs(0);
  switch (space.family()) {
    case Family::V0:
      value_ = make_channel(0, nl, nq_);
      perp_x_ = make_channel(0, nl, nq_);
      perp_y_ = make_channel(0, nl, nq_);
      for (int q = 0; q < nq_; ++q) {
        const BasisEval e = space.eval_basis(0, rule.points[q]);
        for (int i = 0; i < nl; ++i) {
          value_.t[q * nl + i] = e.value[i];
          perp_x_.t[q * nl + i] = e.perp[2 * i];
          perp_y_.t[q * nl + i] = e.perp[2 * i + 1];
        }
      }
      finish(value_, nq_);
      finish(perp_x_, nq_);
      finish(perp_y_, nq_);
      break;
    case Family::V1: {
      const int nlx = space.num_local_x();
      value_x_ = make_channel(0, nlx, nq_);
      value_y_ = make_channel(nlx, nl - nlx, nq_);
      div_ = make_channel(0, nl, nq_);
      for (int q = 0; q < nq_; ++q) {
        const BasisEval e = space.eval_basis(0, rule.points[q]);
        for (int i = 0; i < nl; ++i) {
          div_.t[q * nl + i] = signs[i] * e.div[i];
          if (i < nlx)
            value_x_.t[q * nlx + i] = signs[i] * e.value[2 * i];
          else
            value_y_.t[q * (nl - nlx) + i - nlx] = signs[i] * e.value[2 * i + 1];
        }
      }
      finish(value_x_, nq_);
      finish(value_y_, nq_);
      finish(div_, nq_);
      break;
    }
    case Family::V2:
      value_ = make_channel(0, nl, nq_);
      for (int q = 0; q < nq_; ++q) {
        const BasisEval e = space.eval_basis(0, rule.points[q]);
        for (int i = 0; i < nl; ++i) value_.t[q * nl + i] = e.value[i];
      }
      finish(value_, nq_);
      break;
  }
}

void SpaceTables::gather(const Channel& ch, std::span<const double> coeffs,
                         std::vector<double>& g) const {
  if (static_cast<int>(coeffs.size()) != space_->ndof())
    throw std::invalid_argument("SpaceTables: coefficient vector has the wrong size");
  g.resize(static_cast<std::size_t>(ncells_) * ch.nb);
  for (int c = 0; c < ncells_; ++c) {
    auto dofs = space_->cell_dofs(c);
    double* gc = g.data() + static_cast<std::size_t>(c) * ch.nb;
    for (int i = 0; i < ch.nb; ++i) gc[i] = coeffs[dofs[ch.offset + i]];
  }
}

std::vector<double> SpaceTables::evaluate(const Channel& ch, std::span<const double> coeffs) const {
  std::vector<double> g;
  gather(ch, coeffs, g);
  std::vector<double> out(static_cast<std::size_t>(ncells_) * nq_);
  simd::kernels().matmul(ncells_, ch.nb, nq_, g.data(), ch.tt.data(), out.data());
  return out;
}

void SpaceTables::test_add(const Channel& ch, std::span<const double> p,
                           std::span<double> dual) const {
  if (p.size() != static_cast<std::size_t>(ncells_) * nq_ ||
      static_cast<int>(dual.size()) != space_->ndof())
    throw std::invalid_argument("SpaceTables::test_add: size mismatch");
  std::vector<double> r(static_cast<std::size_t>(ncells_) * ch.nb);
  simd::kernels().matmul(ncells_, nq_, ch.nb, p.data(), ch.t.data(), r.data());
  for (int c = 0; c < ncells_; ++c) {
    auto dofs = space_->cell_dofs(c);
    const double* rc = r.data() + static_cast<std::size_t>(c) * ch.nb;
    for (int i = 0; i < ch.nb; ++i) dual[dofs[ch.offset + i]] += rc[i];
  }
}

Assembler::Assembler(const FunctionSpace& v0, const FunctionSpace& v1, const FunctionSpace& v2,
                     const QuadRule& line)
    : v0_(&v0),
      v1_(&v1),
      v2_(&v2),
      rule_(tensor_rule(line)),
      weights_(rule_.weights),
      t0_(v0, rule_),
      t1_(v1, rule_),
      t2_(v2, rule_) {
  if (v0.family() != Family::V0 || v1.family() != Family::V1 || v2.family() != Family::V2)
    throw std::invalid_argument("Assembler: spaces must be V0, V1, V2");
  if (!v0.same_mesh(v1) || !v0.same_mesh(v2) || v0.order() != v1.order() ||
      v0.order() != v2.order())
    throw std::invalid_argument("Assembler: spaces must share the mesh and order");
  for (double& w : weights_) w *= v2.mesh().det_jac();
}

const FunctionSpace& Assembler::space(Family f) const {
  return f == Family::V0 ? *v0_ : f == Family::V1 ? *v1_ : *v2_;
}

const SpaceTables& Assembler::tables(Family f) const {
  return f == Family::V0 ? t0_ : f == Family::V1 ? t1_ : t2_;
}

namespace {

// Adds sum_q w[c,q] test_i(q) trial_j(q) for every cell into the builder.
void add_block(TripletBuilder& tb, const FunctionSpace& test_space, const Channel& test,
               const FunctionSpace& trial_space, const Channel& trial, int nq,
               std::span<const double> w, bool per_cell) {
  const int ncells = test_space.mesh().num_cells();
  std::vector<double> local(static_cast<std::size_t>(test.nb) * trial.nb);
  for (int c = 0; c < ncells; ++c) {
    const double* wc = w.data() + (per_cell ? static_cast<std::size_t>(c) * nq : 0);
    if (c == 0 || per_cell) {
      std::fill(local.begin(), local.end(), 0.0);
      for (int q = 0; q < nq; ++q)
        for (int i = 0; i < test.nb; ++i) {
          const double ti = test.t[q * test.nb + i] * wc[q];
          if (ti == 0.0) continue;
          for (int j = 0; j < trial.nb; ++j) local[i * trial.nb + j] += ti * trial.t[q * trial.nb + j];
        }
    }
    auto rd = test_space.cell_dofs(c);
    auto cd = trial_space.cell_dofs(c);
    for (int i = 0; i < test.nb; ++i)
      for (int j = 0; j < trial.nb; ++j) {
        const double v = local[i * trial.nb + j];
        if (v != 0.0) tb.add(rd[test.offset + i], cd[trial.offset + j], v);
      }
  }
}

}  // namespace

SparseOperator Assembler::gram(Family family, std::span<const double> qp_weight) const {
  const FunctionSpace& s = space(family);
  const SpaceTables& t = tables(family);
  const bool per_cell = qp_weight.size() != weights_.size();
  TripletBuilder tb(s.ndof(), s.ndof());
  if (family == Family::V1) {
    add_block(tb, s, t.value_x(), s, t.value_x(), nq(), qp_weight, per_cell);
    add_block(tb, s, t.value_y(), s, t.value_y(), nq(), qp_weight, per_cell);
  } else {
    add_block(tb, s, t.value(), s, t.value(), nq(), qp_weight, per_cell);
  }
  return tb.build(true);
}

SparseOperator Assembler::mass(Family family) const { return gram(family, weights_); }

SparseOperator Assembler::weighted_mass(Family family, std::span<const double> w) const {
  std::vector<double> wq = values(Family::V2, w);
  const int n = nq();
  for (std::size_t p = 0; p < wq.size(); ++p) wq[p] *= weights_[p % n];
  return gram(family, wq);
}

SparseOperator Assembler::div() const {
  TripletBuilder tb(v2_->ndof(), v1_->ndof());
  add_block(tb, *v2_, t2_.value(), *v1_, t1_.div(), nq(), weights_, false);
  return tb.build();
}

SparseOperator Assembler::perp_curl() const {
  TripletBuilder tb(v1_->ndof(), v0_->ndof());
  add_block(tb, *v1_, t1_.value_x(), *v0_, t0_.perp_x(), nq(), weights_, false);
  add_block(tb, *v1_, t1_.value_y(), *v0_, t0_.perp_y(), nq(), weights_, false);
  return tb.build();
}

std::vector<double> Assembler::weighted_mass_apply(Family family, std::span<const double> w,
                                                   std::span<const double> x) const {
  const std::vector<double> wq = values(Family::V2, w);
  const int n = nq();
  const std::size_t np = wq.size();
  std::vector<double> out(space(family).ndof(), 0.0);
  auto weigh = [&](std::vector<double>& p) {
    for (std::size_t i = 0; i < np; ++i) p[i] *= wq[i] * weights_[i % n];
  };
  if (family == Family::V1) {
    std::vector<double> px = values_x(x), py = values_y(x);
    weigh(px);
    weigh(py);
    t1_.test_add(t1_.value_x(), px, out);
    t1_.test_add(t1_.value_y(), py, out);
  } else {
    std::vector<double> p = values(family, x);
    weigh(p);
    tables(family).test_add(tables(family).value(), p, out);
  }
  return out;
}

std::vector<double> Assembler::c1(std::span<const double> q, std::span<const double> flux) const {
  const std::vector<double> qv = values(Family::V0, q);
  const std::vector<double> fx = values_x(flux), fy = values_y(flux);
  const int n = nq();
  std::vector<double> px(qv.size()), py(qv.size());
  for (std::size_t i = 0; i < qv.size(); ++i) {
    const double w = qv[i] * weights_[i % n];
    px[i] = -w * fy[i];
    py[i] = w * fx[i];
  }
  std::vector<double> out(v1_->ndof(), 0.0);
  t1_.test_add(t1_.value_x(), px, out);
  t1_.test_add(t1_.value_y(), py, out);
  return out;
}

std::vector<double> Assembler::k2(std::span<const double> a, std::span<const double> b) const {
  const std::vector<double> ax = values_x(a), ay = values_y(a);
  const std::vector<double> bx = values_x(b), by = values_y(b);
  std::vector<double> p(ax.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = ax[i] * bx[i] + ay[i] * by[i];
  return test_v2(p);
}

std::vector<double> Assembler::test_v2(std::span<const double> p) const {
  const int n = nq();
  std::vector<double> pw(p.begin(), p.end());
  for (std::size_t i = 0; i < pw.size(); ++i) pw[i] *= weights_[i % n];
  std::vector<double> out(v2_->ndof(), 0.0);
  t2_.test_add(t2_.value(), pw, out);
  return out;
}

std::vector<double> Assembler::values(Family family, std::span<const double> coeffs) const {
  if (family == Family::V1) throw std::invalid_argument("Assembler::values: use values_x/values_y");
  return tables(family).evaluate(tables(family).value(), coeffs);
}

std::vector<double> Assembler::values_x(std::span<const double> u) const {
  return t1_.evaluate(t1_.value_x(), u);
}

std::vector<double> Assembler::values_y(std::span<const double> u) const {
  return t1_.evaluate(t1_.value_y(), u);
}

double Assembler::integrate(std::span<const double> p) const {
  const int n = nq();
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += weights_[i % n] * p[i];
  return s;
}

std::vector<double> Assembler::load(Family family, const ScalarFunction& f) const {
  if (family == Family::V1) throw std::invalid_argument("Assembler::load: scalar load on V1");
  const Mesh& m = v2_->mesh();
  const int n = nq();
  std::vector<double> p(static_cast<std::size_t>(num_cells()) * n);
  for (int c = 0; c < num_cells(); ++c)
    for (int q = 0; q < n; ++q) p[c * n + q] = f(m.map_to_physical(c, rule_.points[q])) * weights_[q];
  std::vector<double> out(space(family).ndof(), 0.0);
  tables(family).test_add(tables(family).value(), p, out);
  return out;
}

std::vector<double> Assembler::load(const VectorFunction& f) const {
  const Mesh& m = v2_->mesh();
  const int n = nq();
  std::vector<double> px(static_cast<std::size_t>(num_cells()) * n), py(px.size());
  for (int c = 0; c < num_cells(); ++c)
    for (int q = 0; q < n; ++q) {
      const Point2 v = f(m.map_to_physical(c, rule_.points[q]));
      px[c * n + q] = v[0] * weights_[q];
      py[c * n + q] = v[1] * weights_[q];
    }
  std::vector<double> out(v1_->ndof(), 0.0);
  t1_.test_add(t1_.value_x(), px, out);
  t1_.test_add(t1_.value_y(), py, out);
  return out;
}

SparseOperator strong_perp(const FunctionSpace& v0, const FunctionSpace& v1) {
  if (v0.family() != Family::V0 || v1.family() != Family::V1 || !v0.same_mesh(v1) ||
      v0.order() != v1.order())
    throw std::invalid_argument("strong_perp: expects V0 and V1 on the same mesh");
  const Mesh& m = v0.mesh();
  const int k1 = v0.order() + 1, k2 = k1 + 1;
  const int nxl = m.nx() * k1, nyl = m.ny() * k1;
  const auto& closed = v0.closed_basis();
  const auto& onodes = v0.open_basis().nodes();
  TripletBuilder tb(v1.ndof(), v0.ndof());
  for (int c = 0; c < m.num_cells(); ++c) {
    auto [ci, cj] = m.cell_ij(c);
    auto dofs = v1.cell_dofs(c);
    for (int b = 0; b < k1; ++b)
      for (int a = 0; a < k1; ++a) {
        // x-directed dof: -d/deta, node (a, b) of the closed x open grid
        const int row_x = dofs[a + k2 * b];
        const int gx = (ci * k1 + a) % nxl;
        for (int beta = 0; beta < k2; ++beta) {
          const double d = closed.derivative(beta, onodes[b]);
          tb.add(row_x, gx + nxl * ((cj * k1 + beta) % nyl), -d);
        }
        // y-directed dof: +d/dxi, node (b, a) of the open x closed grid
        const int row_y = dofs[v1.num_local_x() + b + k1 * a];
        const int gy = (cj * k1 + a) % nyl;
        for (int alpha = 0; alpha < k2; ++alpha) {
          const double d = closed.derivative(alpha, onodes[b]);
          tb.add(row_y, (ci * k1 + alpha) % nxl + nxl * gy, d);
        }
      }
  }
  return tb.build();
}

SparseOperator strong_div(const FunctionSpace& v1, const FunctionSpace& v2) {
  if (v1.family() != Family::V1 || v2.family() != Family::V2 || !v1.same_mesh(v2) ||
      v1.order() != v2.order())
    throw std::invalid_argument("strong_div: expects V1 and V2 on the same mesh");
  const Mesh& m = v1.mesh();
  const int k1 = v1.order() + 1, k2 = k1 + 1;
  const auto& closed = v1.closed_basis();
  const auto& onodes = v1.open_basis().nodes();
  const double inv_det = 1.0 / m.det_jac();
  TripletBuilder tb(v2.ndof(), v1.ndof());
  for (int c = 0; c < m.num_cells(); ++c) {
    auto d1 = v1.cell_dofs(c);
    auto d2 = v2.cell_dofs(c);
    for (int qq = 0; qq < k1; ++qq)
      for (int p = 0; p < k1; ++p) {
        const int row = d2[p + k1 * qq];
        for (int a = 0; a < k2; ++a)
          tb.add(row, d1[a + k2 * qq], closed.derivative(a, onodes[p]) * inv_det);
        for (int b = 0; b < k2; ++b)
          tb.add(row, d1[v1.num_local_x() + p + k1 * b], closed.derivative(b, onodes[qq]) * inv_det);
      }
  }
  return tb.build();
}

namespace {

struct Complex {
  FunctionSpace v0, v1, v2;
  Assembler a;
  explicit Complex(const FunctionSpace& s)
      : v0(s.mesh(), Family::V0, s.order()),
        v1(s.mesh(), Family::V1, s.order()),
        v2(s.mesh(), Family::V2, s.order()),
        a(v0, v1, v2, gll_rule(default_gll_points(s.order()))) {}
};

}  // namespace

SparseOperator assemble_mass(const FunctionSpace& space) {
  Complex cx(space);
  return cx.a.mass(space.family());
}

SparseOperator assemble_weighted_mass(const FunctionSpace& space, const Field& w) {
  if (!w.space || w.space->family() != Family::V2 || !w.space->same_mesh(space) ||
      w.space->order() != space.order())
    throw std::invalid_argument("assemble_weighted_mass: weight must be a V2 field on the same mesh");
  Complex cx(space);
  return cx.a.weighted_mass(space.family(), w.coeffs);
}

SparseOperator assemble_div(const FunctionSpace& v1, const FunctionSpace& v2) {
  if (!v1.same_mesh(v2) || v1.order() != v2.order() || v1.family() != Family::V1 ||
      v2.family() != Family::V2)
    throw std::invalid_argument("assemble_div: expects V1 and V2 on the same mesh");
  Complex cx(v1);
  return cx.a.div();
}

SparseOperator assemble_perp_curl(const FunctionSpace& v0, const FunctionSpace& v1) {
  if (!v0.same_mesh(v1) || v0.order() != v1.order() || v0.family() != Family::V0 ||
      v1.family() != Family::V1)
    throw std::invalid_argument("assemble_perp_curl: expects V0 and V1 on the same mesh");
  Complex cx(v0);
  return cx.a.perp_curl();
}

std::vector<double> apply_C1(const Field& q, const Field& flux) {
  if (!q.space || !flux.space || q.space->family() != Family::V0 ||
      flux.space->family() != Family::V1 || !q.space->same_mesh(*flux.space))
    throw std::invalid_argument("apply_C1: expects q in V0 and F in V1");
  Complex cx(*flux.space);
  return cx.a.c1(q.coeffs, flux.coeffs);
}

std::vector<double> apply_K2(const Field& a, const Field& b) {
  if (!a.space || !b.space || a.space->family() != Family::V1 || b.space->family() != Family::V1 ||
      !a.space->same_mesh(*b.space))
    throw std::invalid_argument("apply_K2: expects two V1 fields");
  Complex cx(*a.space);
  return cx.a.k2(a.coeffs, b.coeffs);
}

Field project(const FunctionSpace& space, const ScalarFunction& f, const SolverConfig& cfg) {
  Complex cx(space);
  auto rhs = cx.a.load(space.family(), f);
  return Field(space, solve_spd(cx.a.mass(space.family()), rhs, cfg));
}

Field project(const FunctionSpace& space, const VectorFunction& f, const SolverConfig& cfg) {
  if (space.family() != Family::V1) throw std::invalid_argument("project: vector function needs V1");
  Complex cx(space);
  auto rhs = cx.a.load(f);
  return Field(space, solve_spd(cx.a.mass(Family::V1), rhs, cfg));
}

}  // namespace tsw
