#include "kproj/flatness.hpp"

#include <sstream>

namespace kproj {

EngineConfig EngineConfig::for_ring(const Ring& ring) { return {ring.flat_dimension_bound()}; }

FlatRelation::FlatRelation(Matrix a_, Matrix z_)
    : a(std::move(a_)), z(std::move(z_)), target(FPModule::free(a.ring(), z.rows())) {}

FlatRelation::FlatRelation(Matrix a_, Matrix z_, FPModule target_)
    : a(std::move(a_)), z(std::move(z_)), target(std::move(target_)) {
  if (z.rows() != target.rank0()) throw DimensionError("flat relation: z does not live in the target");
}

bool FlatRelation::holds() const {
  if (a.rows() != 1 || a.cols() != z.cols()) throw DimensionError("flat relation: a must be a 1 x m row");
  return target.is_zero(z * a.transpose());
}

bool check_certificate(const FlatRelation& rel, const FlatCertificate& cert) {
  const Matrix& r = rel.target.presentation();
  if (cert.ast.rows() != rel.a.cols() || cert.q.cols() != cert.ast.cols()) return false;
  if (cert.sigma.cols() != cert.q.rows() || cert.sigma.rows() != rel.z.rows()) return false;
  if (cert.witness.rows() != r.cols() || cert.witness.cols() != rel.z.cols()) return false;
  if (!(rel.a * cert.ast).is_zero()) return false;
  return rel.z == cert.sigma * cert.q * cert.ast.transpose() + r * cert.witness;
}

std::optional<FlatCertificate> flat_certificate(const FlatRelation& rel) {
  if (!rel.holds()) throw std::invalid_argument("flat_certificate: relation does not hold");
  const Ring& ring = rel.a.ring();
  const FPModule& t = rel.target;
  Matrix e = Matrix::identity(ring, t.rank0());
  if (t.rank1() != 0) {
    auto section = is_projective(t);
    if (!section) return std::nullopt;
    e = section->matrix;
  }
  // E z satisfies the relation on the nose, inside the free module.
  Matrix zf = e * rel.z;
  Matrix ast = kernel(rel.a);
  auto q = solve(ast.transpose(), zf, Side::Left);
  if (!q) throw std::logic_error("flat_certificate: free relation outside the kernel span (solver bug)");
  auto witness = solve(t.presentation(), rel.z - *q * ast.transpose());
  if (!witness) throw std::logic_error("flat_certificate: section is not congruent to the identity (solver bug)");
  FlatCertificate cert{ast, *q, Matrix::identity(ring, t.rank0()), *witness};
  if (!check_certificate(rel, cert)) throw std::logic_error("flat_certificate: produced certificate fails its check");
  return cert;
}

FlatRelation sample_relation(const Ring& ring, std::mt19937& rng, std::size_t m, std::size_t rank, int bound) {
  Matrix a = sample_matrix(ring, rng, 1, m, bound);
  Matrix k = kernel(a);
  Matrix c = sample_matrix(ring, rng, k.cols(), rank, bound);
  return FlatRelation(a, (k * c).transpose());
}

CycleProbe cycle_flatness_probe(const Complex& q, int j, const FlatRelation& rel) {
  const Ring& ring = q.ring();
  if (rel.target.rank1() != 0 || rel.z.rows() != q.rank(j))
    throw DimensionError("cycle_flatness_probe: z must be given in the coordinates of Q^j");
  if (!(q.diff(j) * rel.z).is_zero()) throw std::invalid_argument("cycle_flatness_probe: z_s are not cycles");
  if (!rel.holds()) throw std::invalid_argument("cycle_flatness_probe: relation does not hold");

  Matrix s = kernel(rel.z);
  CycleProbe out;
  out.span_module = FPModule(s, q.side());
  if (first_non_exact_degree(q, {j, j})) {
    out.failure = "not exact at degree " + std::to_string(j);
    return out;
  }

  // H^0 Hom(M, Sigma^j Q): the classes of maps from the generator built on M.
  HomComplex h(source_of(out.span_module, 0), suspend(q, j), {0, 0});
  Subquotient h0 = h.homology(0);
  if (!structure(h0.module).is_zero()) {
    for (std::size_t k = 0; k < h0.module.rank0(); ++k) {
      Matrix ek(ring, h0.module.rank0(), 1);
      ek.set(k, 0, 1);
      if (!h0.module.is_zero(ek)) {
        out.obstruction_class = h0.generators.col(k);
        break;
      }
    }
    out.obstruction = std::move(h0);
    out.failure = "Hom vanishing hypothesis fails: H^0 Hom(M, Sigma^" + std::to_string(j) + " Q) = " +
                  structure(out.obstruction->module).to_string(ring);
    return out;
  }

  // f: M -> Q^{j-1} with d^{j-1} f = inclusion and f killing the relations of M.
  const Matrix d = q.diff(j - 1);
  const std::size_t r = q.rank(j - 1), m = rel.z.cols();
  Matrix lift_eq = kron(d, Matrix::identity(ring, m));
  Matrix rel_eq = kron(Matrix::identity(ring, r), s.transpose());
  auto v = solve(vconcat(lift_eq, rel_eq), vconcat(rel.z.vec(), Matrix(ring, rel_eq.rows(), 1)));
  if (!v) {
    out.failure = "inclusion of M does not factor through sigma";
    return out;
  }
  Matrix f = Matrix::unvec(*v, r, m);
  out.lift = f;

  auto pushed = flat_certificate(FlatRelation(rel.a, f));
  if (!pushed) throw std::logic_error("cycle_flatness_probe: free module failed to certify");
  FlatCertificate cert{pushed->ast, pushed->q, d, Matrix(ring, 0, m)};
  if (!check_certificate(rel, cert)) throw std::logic_error("cycle_flatness_probe: certificate fails its check");
  out.certificate = std::move(cert);
  out.ok = true;
  return out;
}

std::string to_string(CollapseKind k) {
  switch (k) {
    case CollapseKind::Collapsed:
      return "collapsed";
    case CollapseKind::WindowTooNarrow:
      return "window_too_narrow";
    case CollapseKind::NotExact:
      return "not_exact";
    case CollapseKind::NotFlat:
      return "not_flat";
    case CollapseKind::NotProjective:
      return "not_projective";
  }
  return "?";
}

CollapseVerdict pd_bound_collapse(const Complex& q, const EngineConfig& config, const Window& w) {
  CollapseVerdict v{CollapseKind::Collapsed, std::nullopt, {}, std::nullopt, std::nullopt, {}};
  if (config.n < 0) throw std::invalid_argument("pd_bound_collapse: N must be >= 0");
  if (w.hi - w.lo + 1 < config.n + 2) {
    v.kind = CollapseKind::WindowTooNarrow;
    v.detail = "window needs width at least N + 2 = " + std::to_string(config.n + 2);
    return v;
  }
  if (auto bad = first_non_exact_degree(q, w)) {
    v.kind = CollapseKind::NotExact;
    v.degree = bad;
    return v;
  }
  // Every relation among the chosen cycle generators is flat-certified.
  for (int j = w.lo; j <= w.hi; ++j) {
    Matrix k = kernel(q.diff(j));
    Matrix syz = kernel(k);
    for (std::size_t c = 0; c < syz.cols(); ++c) {
      CycleProbe p = cycle_flatness_probe(q, j, FlatRelation(syz.col(c).transpose(), k));
      if (!p.ok) {
        v.kind = CollapseKind::NotFlat;
        v.degree = j;
        v.counterexample = p.span_module;
        v.detail = p.failure;
        return v;
      }
      v.certificates.push_back(*p.certificate);
    }
  }
  // pd Z^{j+N} <= N along the exact window forces pd Z^j <= 0; confirm it.
  for (int j = w.lo; j <= w.hi; ++j) {
    CycleModule z = cycle_module(q, j);
    if (!is_projective(z.module)) {
      v.kind = CollapseKind::NotProjective;
      v.degree = j;
      v.counterexample = z.module;
      return v;
    }
  }
  SplitVerdict s = split_exactness_check(q, w);
  if (s.kind == SplitKind::NotExact) {
    v.kind = CollapseKind::NotExact;
    v.degree = s.degree;
  } else if (s.kind == SplitKind::ExactNotSplit) {
    v.kind = CollapseKind::NotProjective;
    v.degree = s.degree;
    v.counterexample = s.cycle;
  }
  v.split = std::move(s);
  return v;
}

}  // namespace kproj
