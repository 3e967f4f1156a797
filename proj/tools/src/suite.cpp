#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "carlab/cli/runner.hpp"
#include "carlab/modular_lab.hpp"
#include "carlab/pair_geometry.hpp"
#include "carlab/vn_alg.hpp"

namespace carlab::cli {

namespace {

class Recorder {
 public:
  void add(const std::string& name, const std::string& identity, double defect, double tol) {
    CheckRecord r{name, identity, defect, tol, defect <= tol ? "pass" : "fail", ""};
    if (!std::isfinite(defect)) r.verdict = "fail";
    if (excluding_) {
      r.verdict = "excluded";
      r.note = "ill-conditioned modular operator";
    }
    records_.push_back(std::move(r));
  }
  void flag(const std::string& name, const std::string& identity, bool ok) {
    add(name, identity, ok ? 0.0 : 1.0, 0.0);
  }
  void skip(const std::string& name, const std::string& identity, const std::string& why) {
    records_.push_back({name, identity, 0.0, 0.0, "skipped", why});
  }
  void annotate(const std::string& note) { records_.back().note = note; }
  void set_excluding(bool on) { excluding_ = on; }
  std::vector<CheckRecord> take() { return std::move(records_); }

 private:
  std::vector<CheckRecord> records_;
  bool excluding_ = false;
};

std::vector<ComplexVector> random_vectors(Index dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<ComplexVector> out;
  for (int k = 0; k < count; ++k) {
    ComplexVector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
    out.push_back(v);
  }
  return out;
}

double norm_of(const ComplexMatrix& m) { return op_norm(m); }

struct GenericPart {
  BasisProjection p;
  InvariantSubspace q;
  std::string block;
};

std::optional<GenericPart> generic_part(const Instance& inst) {
  if (is_generic_position(inst.p, inst.q)) return GenericPart{inst.p, inst.q, "h"};
  const HalmosDecomposition h = halmos(inst.p, inst.q);
  if (h.h1.is_zero()) return std::nullopt;
  BlockRestriction b = restrict_to_block(inst.p, inst.q, h.h1);
  return GenericPart{b.p, b.q, "h1"};
}

void car_checks(Recorder& rec, const Instance& inst, const FockSpace& fock,
                const ToleranceTable& tol, std::uint64_t seed) {
  const Index n = inst.space.dim();
  std::vector<ComplexVector> vectors;
  for (Index i = 0; i < n; ++i) vectors.push_back(ComplexMatrix::Identity(n, n).col(i));
  for (const ComplexVector& v : random_vectors(n, 4, seed)) vectors.push_back(v);
  const CarResiduals car = car_residuals(fock, inst.space.gamma(), inst.p.matrix(), vectors);
  rec.add("car.anticommutator", "{a(f), a(h)^*} = <f,h> 1", car.anticommutator, tol.car);
  rec.add("car.adjoint", "a(f)^* = a(Gamma f)", car.adjoint, tol.car);
  rec.add("car.antilinear", "a(c f) = conj(c) a(f)", car.antilinearity, tol.car);
  rec.add("car.fock_state", "<Omega, a(f)^* a(f) Omega> = ||(1-P) f||^2", car.vacuum, tol.car);

  const ParityOps ops = parity_ops(fock);
  double odd = 0.0;
  double twist = 0.0;
  double blocks = 0.0;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const ComplexMatrix a = fock.pi_a(vectors[k]);
    odd = std::max(odd, norm_of(ops.z * a * ops.z + a));
    twist = std::max(twist, norm_of(ops.z_tilde * a * ops.z_tilde.adjoint() - kI * ops.z * a));
    const ComplexMatrix word =
        a * fock.pi_a(vectors[(k + 1) % vectors.size()]) * fock.pi_a(vectors[(k + 2) % vectors.size()]);
    blocks = std::max(blocks, parity_blocks(word, ops.z).block_defect);
  }
  rec.add("car.parity_odd", "Z a(f) Z = -a(f)", odd, tol.car);
  rec.add("car.twist", "Z~ a(f) Z~^* = i Z a(f)", twist, tol.car);
  rec.add("car.parity_blocks", "E+ X_even E- = 0 = E+ X_odd E+", blocks, tol.car);
  const double vac = (ops.z_tilde * fock.vacuum() - fock.vacuum()).norm();
  rec.add("car.twist_vacuum", "Z~ Omega = Omega", vac, tol.car);
}

void formel_checks(Recorder& rec, const FockSpace& fock, const ToleranceTable& tol,
                   std::uint64_t seed, int n_max) {
  for (int n = 0; n <= n_max; ++n) {
    rec.add("formel.n" + std::to_string(n),
            "a(f_n)...a(f_1) Omega = signed pairing expansion",
            formel_deviation(fock, n, seed + static_cast<std::uint64_t>(n)), tol.formel);
  }
  int mismatches = 0;
  for (int n = 0; n <= 8; ++n) {
    for (int p = 0; 2 * p <= n; ++p) {
      const std::vector<PairingTerm> terms = enumerate_pairings(n, p);
      if (terms.size() != pairing_count(n, p)) ++mismatches;
    }
  }
  rec.add("formel.pairing_counts", "#pairings(n, p) = C(n,2p) (2p)! / (p! 2^p), n <= 8",
          static_cast<double>(mismatches), 0.0);
}

void kato_checks(Recorder& rec, const Instance& inst, const ToleranceTable& tol) {
  const HalmosDecomposition h = halmos(inst.p, inst.q);
  rec.add("halmos.structure", "h0 = four intersections, R0 commutes with P, Q, Gamma",
          check_halmos(h, inst.p, inst.q).max(), tol.structural);
  const ComplexMatrix pm = inst.p.matrix();
  const ComplexMatrix qm = inst.q.projection();
  const Index n = pm.rows();
  const double a = delta_norm(pm, qm);
  const double b = delta_norm(pm, ComplexMatrix(ComplexMatrix::Identity(n, n) - qm));
  const bool generic = is_generic_position(inst.p, inst.q);
  rec.flag("halmos.generic_iff_norms", "generic <=> max(||PQ||, ||PQ^perp||) < 1",
           generic == (std::max(a, b) < 1.0 - 1e-9));
}

void generic_checks(Recorder& rec, const GenericPart& g, const ToleranceTable& tol,
                    std::uint64_t seed) {
  const BasisProjection& p = g.p;
  const InvariantSubspace& q = g.q;
  const PairFrames f = pair_frames(p, q);
  const KatoReport kato = kato_identities(p, q);
  rec.add("kato.norms", "||P-Q|| = ||(1-Q)P|| = ||(1-Q)(1-P)|| = ||PQ||", kato.max_defect(),
          tol.structural);
  rec.flag("kato.bicontinuous", "the six restricted maps are invertible", kato.bicontinuous());
  rec.flag("kato.delta_below_one", "||PQ|| < 1", kato.delta < 1.0 - 1e-9);

  const GraphOperator phi = build_phi(p, q);
  const ComplexMatrix phi_m = phi.matrix();
  const GraphOperator rho_inverse =
      make_graph(-(f.Qperp * f.pperp), f.Q * f.pperp, Linearity::kLinear);
  rec.add("graphs.rho_inverse", "rho^{-1} = phi^*",
          norm_of(rho_inverse.matrix() - phi_m.adjoint()), tol.graph);
  double pp_graph = 0.0;
  for (Index k = 0; k < f.q.cols(); ++k) {
    const ComplexVector v = f.q.col(k);
    pp_graph = std::max(pp_graph, (phi_m.adjoint() * phi_m * (f.Q * f.P * v) -
                                   f.Q * f.Pperp * v).norm());
  }
  rec.add("graphs.phi_star_phi", "phi^* phi (QPq) = QP^perp q", pp_graph, tol.graph);
  const GraphOperator delta_q = make_graph(f.Q * f.P * f.q, f.Q * f.Pperp * f.q, Linearity::kLinear);
  rec.add("graphs.delta_q", "graph {(QPq, QP^perp q)} = phi^* phi",
          norm_of(delta_q.matrix() - phi_m.adjoint() * phi_m), tol.graph);

  const ComplexMatrix dp = delta_p(p, q);
  double dp_graph = 0.0;
  double cor = 0.0;
  for (Index k = 0; k < f.p.cols(); ++k) {
    const ComplexVector v = f.p.col(k);
    dp_graph = std::max(dp_graph, (dp * (f.P * f.Q * v) - f.P * f.Qperp * v).norm());
    cor = std::max(cor, (phi_m * (f.Q * v) - (dp * (f.P * f.Q * v) - f.Pperp * f.Q * v)).norm());
  }
  rec.add("graphs.delta_p", "Delta_p(PQp) = PQ^perp p", dp_graph, tol.graph);
  rec.add("graphs.phi_via_delta_p", "phi(Qp) = Delta_p(PQp) - P^perp Q p", cor, tol.graph);

  const AlphaBeta ab = build_alpha_beta(p, q);
  const AntilinearMap alpha = ab.alpha.antilinear();
  const AntilinearMap beta = ab.beta.antilinear();
  const ComplexMatrix dp_inv = psd_power(dp, -1.0);
  rec.add("graphs.beta_star_beta", "Delta_p = beta^* beta",
          norm_of(compose(beta.adjoint(), beta) - dp), tol.graph);
  rec.add("graphs.delta_p_inverse", "Delta_p^{-1} = beta beta^* = alpha^* alpha",
          std::max(norm_of(compose(beta, beta.adjoint()) - dp_inv),
                   norm_of(compose(alpha.adjoint(), alpha) - dp_inv)) /
              std::max(1.0, norm_of(dp_inv)),
          tol.graph);
  rec.add("graphs.alpha_is_beta_adjoint", "alpha = beta^*",
          norm_of(alpha.kernel() - beta.adjoint().kernel()), tol.graph);
  rec.add("graphs.involutions", "alpha^2 = beta^2 = 1 on p",
          std::max(norm_of(compose(alpha, alpha) - f.P), norm_of(compose(beta, beta) - f.P)),
          tol.graph);

  const Spectrum sp = spectrum(p, q);
  std::vector<double> ev = sp.eigenvalues_of_delta_p;
  std::vector<double> inv;
  for (double x : ev) inv.push_back(1.0 / x);
  std::sort(inv.begin(), inv.end());
  double sym = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) sym = std::max(sym, std::abs(ev[i] - inv[i]) / std::max(1.0, ev[i]));
  rec.add("graphs.spectrum_symmetry", "spec(Delta_p) = 1 / spec(Delta_p)", sym, tol.graph);
  if (sp.ill_conditioned) rec.annotate("condition number of Delta_p above 1e8, ||PQ|| close to 1");

  const PolarPhi polar = polar_phi(p, q);
  rec.add("polar.abs_phi", "|phi| = Delta_p^{1/2} P + Gamma Delta_p^{-1/2} P Gamma on q",
          norm_of(polar.abs_phi - polar.abs_phi_svd), tol.graph);
  rec.add("polar.sgn_phi", "sgn phi = Delta_p^{1/2} P - Gamma Delta_p^{1/2} P Gamma on q",
          norm_of(polar.sgn_phi - polar.sgn_phi_svd), tol.graph);
  rec.add("polar.sgn_isometry", "(sgn phi)^* sgn phi = Q, sgn phi (sgn phi)^* = Q^perp",
          std::max(norm_of(polar.sgn_phi.adjoint() * polar.sgn_phi - f.Q),
                   norm_of(polar.sgn_phi * polar.sgn_phi.adjoint() - f.Qperp)),
          tol.graph);
  const ComplexMatrix w = build_w(p, q);
  rec.add("w.unitary", "W^* W = Q, W W^* = P",
          std::max(norm_of(w.adjoint() * w - f.Q), norm_of(w * w.adjoint() - f.P)), tol.graph);
  rec.add("w.intertwines", "W |phi| = Delta_p^{1/2} W",
          norm_of(w * polar.abs_phi_svd - psd_power(dp, 0.5) * w), tol.graph);
  const AntilinearMap v = build_v(p, q);
  rec.add("v.two_forms", "-i Gamma sgn phi = i (Delta_p^{1/2} P Gamma - Gamma Delta_p^{1/2} P)",
          norm_of(v.kernel() - build_v_from_sgn(p, q).kernel()), tol.graph);

  // Modular objects on the Fock space over this generic pair.
  const FockSpace fock(p);
  const CyclicSeparating cs = cyclic_separating(p, q, fock);
  rec.flag("modular.cyclic_separating", "Pq = p and Pq^perp = p, matching span{A Omega} = F",
           cs.cyclic && cs.separating && cs.consistent());
  const ModularData md = tomita_S(p, q, fock);
  rec.set_excluding(md.ill_conditioned);
  rec.add("modular.axioms", "S = J Delta^{1/2}, J^2 = 1, J Delta J = Delta^{-1}, S Omega = Omega",
          check_modular_axioms(md, fock).max(), tol.modular);
  const RestrictionReport rr = check_particle_restrictions(md, fock, p, q, seed);
  rec.add("modular.block_diagonal", "S, Delta, J preserve particle number", rr.block_offdiagonal,
          tol.structural);
  rec.add("modular.s_on_p", "S restricted to p = beta", rr.s_on_p_beta, tol.modular);
  rec.add("modular.s_adjoint_on_p", "S^* restricted to p = alpha", rr.s_adjoint_on_p_alpha,
          tol.modular);
  rec.add("modular.s_wedges", "S(Pq_1 ^ ... ^ Pq_n) = P Gamma q_n ^ ... ^ P Gamma q_1",
          std::max({rr.s_wedge_reversal, rr.s_wedge_n2, rr.s_wedge_n3}), tol.modular);
  rec.add("modular.delta_on_p", "Delta restricted to p = Delta_p", rr.delta_on_p, tol.modular);
  rec.add("modular.delta_wedges", "Delta(p_1 ^ ... ^ p_n) = Delta_p p_1 ^ ... ^ Delta_p p_n",
          rr.delta_second_quantized, tol.modular);
  rec.add("modular.j_wedges", "J(p_1 ^ ... ^ p_n) = J p_n ^ ... ^ J p_1", rr.j_wedge_reversal,
          tol.modular);
  rec.add("modular.j_on_pq", "J(Pq) = Delta_p^{1/2} P Gamma q", rr.j_on_pq, tol.modular);
  rec.add("modular.s_on_pq", "S(Pq) = P Gamma q", rr.s_on_pq, tol.modular);
  rec.add("modular.t_on_pqperp", "T(Pq') = P Gamma q' = -S^*(Pq')",
          std::max(rr.t_on_pqperp, rr.t_minus_s_adjoint), tol.modular);
  rec.add("modular.graph_formula", "Delta(PQp_i) = PQ^perp p_i on the Fock space",
          rr.graph_formula, tol.modular);
  rec.add("modular.agreement_chain", "Delta on p = Delta_p = beta^* beta = W |phi|^2 W^*",
          rr.agreement_chain, tol.modular);

  const ConjugationReport cr = check_conjugation_identity(md, v, fock, q);
  rec.add("conjugation.jaz", "J a(v) J = Z~ a(Vv) Z~^*", cr.jaz_defect, tol.conjugation);
  rec.add("conjugation.v_isometry", "V^* V = Q, Vq in q^perp", std::max(cr.v_isometry, cr.v_range),
          tol.graph);
  rec.add("conjugation.jmj", "J M(q) J = Z~ M(q^perp) Z~^* = M(q)'",
          std::max(cr.jmj_vs_twisted, cr.jmj_vs_commutant), tol.conjugation);
  rec.set_excluding(false);

  const RealSubspaceReport rs = real_subspace_compare(p, q);
  rec.add("real.inclusion", "P(Re q^perp) inside i M'", rs.inclusion, tol.modular);
  rec.add("real.equality", "P(Re q^perp) = i M', M = P(Re q)", rs.distance, tol.modular);
  rec.add("real.symplectic", "i M' from Re<.,.> = i (M' from Im<.,.>)", rs.symplectic,
          tol.modular);
  rec.flag("real.dimensions", "dim_R M + dim_R i M' = 2 dim_C p",
           rs.dim_m + rs.dim_i_m_prime == 2 * rs.complex_dim_p);
}

void duality_checks(Recorder& rec, const Instance& inst, const FockSpace& fock,
                    const ToleranceTable& tol) {
  const DualityReport d = check_twisted_duality(inst.q.subspace(), fock, inst.id, tol.duality);
  rec.add("duality.causality", "Z~ M(q^perp) Z~^* inside M(q)'", d.inclusion_defect, tol.duality);
  rec.add("duality.equality", "M(q)' = Z~ M(q^perp) Z~^*",
          d.dim_m_commutant == d.dim_twisted ? d.equality_defect : 1.0, tol.duality);
  rec.add("duality.grading", "Z~ Y Z~^* = Y_even + i Z Y_odd on M(q^perp)", d.grading_defect,
          tol.duality);
  rec.add("duality.bicommutant", "M(q)'' = M(q)", d.bicommutant_defect, tol.duality);
  const GeneralDualityReport g = general_duality_pipeline(inst.p, inst.q, inst.id, tol.duality);
  rec.add("duality.split_blocks", "Q h01 = 0, Q h02 = h02",
          std::max(g.q_on_h01, g.q_on_h02), tol.structural);
  rec.add("duality.split_algebra", "M(q) = C1 (x) L(F02) (x) M(Q h1)", g.block_algebra,
          tol.duality);
  rec.add("duality.split_commutant", "M(q)' = L(F01) (x) C1 (x) M(Q h1)'", g.block_commutant,
          tol.duality);
  rec.add("duality.split_equality", "twisted duality on F01 (x) F02 (x) F1",
          g.split.verdict ? g.split.equality_defect : std::max(g.split.equality_defect, 1.0),
          tol.duality);
}

}  // namespace

double formel_deviation(const FockSpace& fock, int n, std::uint64_t seed, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::vector<ComplexVector> fs =
        random_vectors(fock.one_particle_dim(), n, seed * 1000003ULL + static_cast<std::uint64_t>(t));
    ComplexVector oracle = fock.vacuum();
    for (const ComplexVector& f : fs) oracle = fock.pi_a(f) * oracle;
    worst = std::max(worst, (vacuum_expansion(fs, fock) - oracle).norm());
  }
  return worst;
}

std::vector<CheckRecord> run_suite(const Instance& inst, const ToleranceTable& tol,
                                   std::uint64_t seed, int n_max) {
  Recorder rec;
  const FockSpace fock(inst.p);
  car_checks(rec, inst, fock, tol, seed);
  formel_checks(rec, fock, tol, seed, n_max);
  kato_checks(rec, inst, tol);
  const std::optional<GenericPart> g = generic_part(inst);
  if (g) {
    generic_checks(rec, *g, tol, seed);
  } else {
    rec.skip("generic", "graph, polar, modular and real-subspace identities",
             "the instance has no generic part (h1 = 0)");
  }
  duality_checks(rec, inst, fock, tol);
  std::vector<CheckRecord> out = rec.take();
  if (g && g->block != "h") {
    for (CheckRecord& r : out) {
      const bool generic_only = r.name.rfind("kato.", 0) == 0 || r.name.rfind("graphs.", 0) == 0 ||
                                r.name.rfind("polar.", 0) == 0 || r.name.rfind("w.", 0) == 0 ||
                                r.name.rfind("v.", 0) == 0 || r.name.rfind("modular.", 0) == 0 ||
                                r.name.rfind("conjugation.", 0) == 0 ||
                                r.name.rfind("real.", 0) == 0;
      if (generic_only && r.note.empty()) r.note = "evaluated on the generic block h1";
    }
  }
  return out;
}

}  // namespace carlab::cli
