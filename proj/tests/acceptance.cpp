// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "carlab/cli/runner.hpp"
#include "carlab/instances.hpp"
#include "carlab/modular_lab.hpp"
#include "carlab/pair_geometry.hpp"
#include "carlab/vn_alg.hpp"

using namespace carlab;

namespace {

struct Outcome {
  double worst = 0.0;
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double tol;
  double time_limit_s;  // 0 for none
  std::function<Outcome(double)> run;
};

ComplexVector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

double cnorm(const ComplexMatrix& m) { return op_norm(m); }

void track(Outcome& o, double defect, double tol) {
  o.worst = std::max(o.worst, defect);
  if (!(defect <= tol)) o.ok = false;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// The generic instance set shared by the modular criteria.
struct ModularCase {
  Instance inst;
  FockSpace fock;
  ModularData md;
};

std::vector<ModularCase>& modular_cases() {
  static std::vector<ModularCase> cases = [] {
    std::vector<ModularCase> out;
    auto add = [&](Index dim, std::uint64_t seed) {
      Instance inst = random_generic_instance(dim, seed);
      FockSpace fock(inst.p);
      ModularData md = tomita_S(inst.p, inst.q, fock);
      out.push_back({std::move(inst), std::move(fock), std::move(md)});
    };
    for (std::uint64_t s = 1; s <= 100; ++s) add(4, 1000 + s);
    for (std::uint64_t s = 1; s <= 10; ++s) add(6, 2000 + s);
    return out;
  }();
  return cases;
}

Outcome car_axioms(double tol) {
  Outcome o;
  for (Index dim : {2, 4, 6}) {
    const Instance inst = random_generic_instance(dim, 77 + static_cast<std::uint64_t>(dim));
    const FockSpace fock(inst.p);
    const ComplexMatrix id = ComplexMatrix::Identity(fock.fock_dim(), fock.fock_dim());
    std::mt19937_64 rng(static_cast<std::uint64_t>(dim));
    for (int k = 0; k < 50; ++k) {
      const ComplexVector f = random_vector(dim, rng);
      const ComplexVector h = random_vector(dim, rng);
      const ComplexMatrix af = fock.pi_a(f);
      const ComplexMatrix ah = fock.pi_a(h);
      track(o, cnorm(af * ah.adjoint() + ah.adjoint() * af - f.dot(h) * id), tol);
    }
  }
  o.detail = "150 pairs on dim h = 2, 4, 6";
  return o;
}

Outcome vacuum_formula(double tol) {
  Outcome o;
  for (Index d = 1; d <= 6; ++d) {
    const Instance inst = random_generic_instance(2 * d, 300 + static_cast<std::uint64_t>(d));
    const FockSpace fock(inst.p);
    std::mt19937_64 rng(static_cast<std::uint64_t>(d) * 11);
    for (int n = 0; n <= 6; ++n) {
      std::vector<ComplexVector> fs;
      for (int k = 0; k < n; ++k) fs.push_back(random_vector(2 * d, rng));
      ComplexVector product = fock.vacuum();
      for (const ComplexVector& f : fs) product = fock.pi_a(f) * product;
      track(o, (vacuum_expansion(fs, fock) - product).norm(), tol);
    }
  }
  int mismatches = 0;
  for (int n = 0; n <= 8; ++n) {
    for (int p = 0; 2 * p <= n; ++p) {
      const double expected = binomial(n, n - 2 * p) * factorial(2 * p) / (factorial(p) * std::pow(2.0, p));
      const auto listed = static_cast<double>(enumerate_pairings(n, p).size());
      if (listed != expected || static_cast<double>(pairing_count(n, p)) != expected) ++mismatches;
    }
  }
  if (mismatches > 0) o.ok = false;
  o.detail = "n <= 6, d <= 6; pairing count mismatches " + std::to_string(mismatches);
  return o;
}

Outcome kato_generic(double tol) {
  Outcome o;
  int wrong = 0;
  auto criterion = [&](const Instance& inst) {
    const double delta = delta_norm(inst.p.matrix(), inst.q.projection());
    if (is_generic_position(inst.p, inst.q) != (delta < 1.0 - 1e-9)) ++wrong;
  };
  for (std::uint64_t s = 1; s <= 100; ++s) {
    const Instance inst = random_generic_instance(4, 500 + s);
    const ComplexMatrix pm = inst.p.matrix();
    const ComplexMatrix qm = inst.q.projection();
    const ComplexMatrix qperp = ComplexMatrix::Identity(4, 4) - qm;
    const double delta = delta_norm(pm, qm);
    track(o, std::abs(cnorm(pm - qm) - delta), tol);
    track(o, std::abs(cnorm(qperp * pm) - delta), tol);
    criterion(inst);
  }
  // Non-generic controls of the same shape (dim q = dim p).
  criterion(instance_e3());
  for (std::uint64_t s = 1; s <= 10; ++s) criterion(random_mixed_instance({2, 2, 2}, 600 + s));
  if (wrong > 0) o.ok = false;
  o.detail = "100 generic + 11 non-generic controls; criterion mismatches " + std::to_string(wrong);
  return o;
}

Outcome modular_graph(double tol) {
  Outcome o;
  for (const ModularCase& c : modular_cases()) {
    const PairFrames f = pair_frames(c.inst.p, c.inst.q);
    for (Index k = 0; k < f.p.cols(); ++k) {
      const ComplexVector v = f.p.col(k);
      const ComplexVector x = c.fock.wedge(f.P * f.Q * v);
      const ComplexVector y = c.fock.wedge(f.P * f.Qperp * v);
      track(o, (c.md.delta * x - y).norm(), tol);
    }
  }
  o.detail = "100 instances at dim h = 4, 10 at dim h = 6";
  return o;
}

Outcome restrictions(double tol) {
  Outcome o;
  for (const ModularCase& c : modular_cases()) {
    const RestrictionReport r = check_particle_restrictions(c.md, c.fock, c.inst.p, c.inst.q, 7);
    for (double d : {r.s_on_p_beta, r.s_adjoint_on_p_alpha, r.s_wedge_n2, r.s_wedge_n3,
                     r.j_wedge_reversal, r.j_on_pq}) {
      track(o, d, tol);
    }
  }
  o.detail = "S|p = beta, S*|p = alpha, wedge reversal n = 2, 3, J(Pq)";
  return o;
}

Outcome polar_isometry(double tol) {
  Outcome o;
  for (const ModularCase& c : modular_cases()) {
    const PairFrames f = pair_frames(c.inst.p, c.inst.q);
    const PolarPhi polar = polar_phi(c.inst.p, c.inst.q);
    const ComplexMatrix w = build_w(c.inst.p, c.inst.q);
    const ComplexMatrix root = psd_power(delta_p(c.inst.p, c.inst.q), 0.5);
    track(o, cnorm(polar.sgn_phi_svd.adjoint() * polar.sgn_phi_svd - f.Q), tol);
    track(o, cnorm(w.adjoint() * w - f.Q), tol);
    track(o, cnorm(w * polar.abs_phi_svd - root * w), tol);
  }
  o.detail = "(sgn phi)* sgn phi = Q, W* W = 1 on q, W |phi| = Delta_p^1/2 W";
  return o;
}

Outcome conjugation(double tol) {
  Outcome o;
  for (const ModularCase& c : modular_cases()) {
    const ConjugationReport r =
        check_conjugation_identity(c.md, build_v(c.inst.p, c.inst.q), c.fock, c.inst.q);
    track(o, r.jaz_defect, tol);
  }
  o.detail = "max over an ONB of q";
  return o;
}

Outcome duality_generic(double tol) {
  Outcome o;
  std::vector<Instance> set{instance_e1(), instance_e2()};
  for (std::uint64_t s = 1; s <= 5; ++s) set.push_back(random_generic_instance(4, 700 + s));
  for (std::uint64_t s = 1; s <= 5; ++s) set.push_back(random_generic_instance(6, 800 + s));
  int dim_mismatch = 0;
  for (const Instance& inst : set) {
    const FockSpace fock(inst.p);
    const DualityReport r = check_twisted_duality(inst.q.subspace(), fock, inst.id, tol);
    if (r.dim_m_commutant != r.dim_twisted) ++dim_mismatch;
    track(o, r.equality_defect, tol);
  }
  if (dim_mismatch > 0) o.ok = false;
  o.detail = "E1, E2, 5 at Fock dim 4, 5 at Fock dim 8";
  return o;
}

Outcome duality_general(double tol) {
  Outcome o;
  const MixedLayout layouts[] = {{2, 2, 2}, {2, 0, 4}, {0, 2, 4}, {4, 0, 2}, {0, 4, 2}};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Instance inst = random_mixed_instance(layouts[s % 5], 900 + s);
    const GeneralDualityReport r = general_duality_pipeline(inst.p, inst.q, inst.id, tol);
    track(o, r.block_algebra, tol);
    track(o, r.block_commutant, tol);
    track(o, r.split.equality_defect, tol);
    track(o, r.unsplit.equality_defect, tol);
    if (!r.verdict) o.ok = false;
  }
  o.detail = "20 mixed instances, dim h = 6";
  return o;
}

Outcome tensor_variants(double tol) {
  Outcome o;
  const Instance a = instance_e1();
  const Instance b = random_generic_instance(2, 31);
  auto f0 = std::make_shared<const FockSpace>(a.p);
  auto f1 = std::make_shared<const FockSpace>(b.p);
  const CarSpace sum = direct_sum(a.space, b.space);
  ComplexMatrix p = ComplexMatrix::Zero(4, 4);
  p.topLeftCorner(2, 2) = a.p.matrix();
  p.bottomRightCorner(2, 2) = b.p.matrix();
  std::mt19937_64 rng(12);
  std::vector<ComplexVector> vs;
  for (Index i = 0; i < 4; ++i) vs.push_back(ComplexMatrix::Identity(4, 4).col(i));
  for (int k = 0; k < 6; ++k) vs.push_back(random_vector(4, rng));
  for (TensorVariant v : {TensorVariant::kA, TensorVariant::kB}) {
    const TensorRepresentation t(f0, f1, v);
    track(o, car_residuals(t, sum.gamma(), p, vs).max(), tol);
    const ComplexMatrix z = t.parity();
    for (std::size_t k = 0; k < vs.size(); ++k) {
      const ComplexMatrix x = t.pi_a(vs[k]);
      const ComplexMatrix y = t.pi_a(vs[(k + 1) % vs.size()]);
      track(o, parity_blocks(x * y + x * y * x, z).block_defect, tol);
      track(o, parity_blocks(x + y * x, z).block_defect, tol);
    }
  }
  o.detail = "both variants on C^2 (+) C^2";
  return o;
}

Outcome real_subspace(double tol) {
  Outcome o;
  for (std::uint64_t s = 1; s <= 50; ++s) {
    const Instance inst = random_generic_instance(4, 1100 + s);
    track(o, real_subspace_compare(inst.p, inst.q).distance, tol);
  }
  o.detail = "50 instances at dim h = 4";
  return o;
}

Outcome determinism(double) {
  Outcome o;
  for (const char* name : {"E1", "E2", "E3"}) {
    cli::RunConfig cfg;
    cfg.builtin = name;
    const cli::CommandResult first = cli::cmd_verify(cfg);
    const cli::CommandResult second = cli::cmd_verify(cfg);
    if (first.exit_code != 0) {
      o.ok = false;
      o.detail += std::string(name) + " failed; ";
    }
    if (first.report.dump(2) != second.report.dump(2)) {
      o.ok = false;
      o.detail += std::string(name) + " differs; ";
    }
  }
  if (o.detail.empty()) o.detail = "E1, E2, E3 pass, reports byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "CAR anticommutator", 1e-10, 5.0, car_axioms},
      {2, "vacuum expansion vs operator product, pairing counts", 1e-9, 30.0, vacuum_formula},
      {3, "Kato norms and generic position", 1e-9, 0.0, kato_generic},
      {4, "modular graph formula", 1e-8, 180.0, modular_graph},
      {5, "modular restrictions to the particle sectors", 1e-8, 0.0, restrictions},
      {6, "polar decomposition and W", 1e-8, 0.0, polar_isometry},
      {7, "J a(v) J = Z~ a(Vv) Z~*", 1e-7, 0.0, conjugation},
      {8, "twisted duality, generic position", 1e-7, 300.0, duality_generic},
      {9, "twisted duality, general position", 1e-7, 0.0, duality_general},
      {10, "tensor product representations", 1e-10, 0.0, tensor_variants},
      {11, "real subspace P(Re q^perp) = i M'", 1e-8, 0.0, real_subspace},
      {12, "determinism of verify on E1, E2, E3", 0.0, 0.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(c.tol);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      o.ok = false;
      o.detail += " (over the time limit)";
    }
    if (!o.ok) ++failures;
    std::printf("%s  %2d  %-52s worst=%.3e tol=%.0e  %.1fs  %s\n", o.ok ? "PASS" : "FAIL", c.id,
                c.title, o.worst, c.tol, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
