#include "skeinlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "skeinlab/arcring.hpp"
#include "skeinlab/pairing.hpp"
#include "skeinlab/skein.hpp"
#include "skeinlab/tlcalc.hpp"

namespace skeinlab {

bool SuiteReport::pass() const {
  if (report_only) return true;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool all_pass(const std::vector<SuiteReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.pass(); });
}

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}
  void check(const std::string& name, const std::function<void(Outcome&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      body(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r_.checks.push_back({name, o.pass, o.detail, s});
  }

 private:
  SuiteReport& r_;
};

long count_basis(int n, int k) {
  auto b = [](int a, int c) -> long { return c < 0 || c > a ? 0 : binomial(a, c).get_si(); };
  return b(2 * n, n + k) - b(2 * n, n + k + 1);
}

Rat at_v(const LaurentHalfQ& p, const Rat& v) {
  Rat acc = 0;
  for (auto& [e, c] : p.terms) {
    Rat base = e >= 0 ? v : Rat(1) / v, pw = 1;
    for (int i = 0; i < std::abs(e); ++i) pw *= base;
    acc += Rat(c) * pw;
  }
  return acc;
}

ClassicalElement at_zero(const EquivElement& e) {
  ClassicalElement r(Variant::Classical, e.n);
  for (auto& [d, c] : e.terms) r.add(d, c.eval(Rat(0), Rat(0)).get_num());
  return r;
}

std::string range(int lo, int hi) { return "n=" + std::to_string(lo) + ".." + std::to_string(hi); }

// ---------------------------------------------------------------- 1. rank formula

void suite_rank(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(4, o.max_n);
  rec.check("presentation rank " + range(0, N), [&](Outcome& out) {
    for (int n = 0; n <= N; ++n)
      for (int k = 0; k <= n; ++k) {
        auto p = presentation_rank(n, k, Variant::Classical);
        out.require(p.rank == count_basis(n, k), "rank of R_{" + std::to_string(n) + "," + std::to_string(k) +
                                                     "} is " + std::to_string(p.rank) + ", expected " +
                                                     std::to_string(count_basis(n, k)));
        out.require(p.torsion.empty(), "torsion at n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
  });
  rec.check("lattice-path bijection " + range(0, N), [&](Outcome& out) {
    for (int n = 0; n <= N; ++n)
      for (int k = 0; k <= n; ++k) {
        auto basis = enumerate_standard_basis(n, k);
        auto paths = enumerate_paths(n, k);
        out.require(static_cast<long>(paths.size()) == count_basis(n, k), "path count at n=" + std::to_string(n));
        std::set<LatticePath> images;
        for (auto& d : basis) {
          auto p = path_alpha(d);
          out.require(path_beta(p) == d, "path round trip fails at " + ascii(d));
          images.insert(p);
        }
        out.require(images == std::set<LatticePath>(paths.begin(), paths.end()), "path images differ at n=" + std::to_string(n));
      }
  });
}

// ---------------------------------------------------------------- 2. bilinear form

void suite_form(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(4, o.max_n);
  rec.check("relations pair to zero " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n) {
      auto basis = enumerate_standard_basis_all(n);
      for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
        for (auto& r : enumerate_relation_instances(n, kind, Variant::Classical)) {
          auto e = relation_element_classical(r);
          for (auto& b : basis)
            if (pair(e, b) != 0) out.fail("relation at " + ascii(r.base) + " pairs nontrivially with " + ascii(b));
        }
    }
  });
  rec.check("Gram matrix symmetric and nondegenerate " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n) {
      auto g = gram_matrix(n);
      out.require(g == g.transpose(), "G is not symmetric at n=" + std::to_string(n));
      Matrix<Rat> q(g.rows, g.cols);
      for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) q(i, j) = Rat(g(i, j));
      out.require(determinant(q) != 0, "det G = 0 at n=" + std::to_string(n));
    }
  });
}

// ---------------------------------------------------------------- 3. duality

void suite_duality(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(3, o.max_n);
  rec.check("projector duals give a signed identity " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n) {
      auto basis = enumerate_standard_basis_all(n);
      for (size_t j = 0; j < basis.size(); ++j) {
        auto c = dual_via_projectors(basis[j]);
        auto v = pairing_vector(c.dual);
        for (size_t i = 0; i < v.size(); ++i)
          if (v[i] != (i == j ? Rat(c.sign) : Rat(0)))
            out.fail("dual of " + ascii(basis[j]) + " pairs to " + rat_str(v[i]) + " with " + ascii(basis[i]));
      }
    }
  });
  rec.check("Gram-inverse oracle agrees up to recorded scalar " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n) {
      auto basis = enumerate_standard_basis_all(n);
      for (size_t j = 0; j < basis.size(); ++j) {
        auto c = dual_via_projectors(basis[j]);
        auto raw = pairing_vector(expand(c.builder).scaled(c.coefficient));
        auto oracle = pairing_vector(dual_via_gram(n, static_cast<int>(j)));
        for (size_t i = 0; i < raw.size(); ++i)
          if (raw[i] != oracle[i] * c.raw_pairing) out.fail("builder for " + ascii(basis[j]) + " disagrees with the oracle");
      }
    }
  });
}

// ---------------------------------------------------------------- 4. psi

void suite_psi(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(3, o.max_n);
  rec.check("derived quantum relations reduce to zero " + range(2, N), [&](Outcome& out) {
    for (int n = 2; n <= N; ++n)
      for (auto kind : {RelationKind::TypeI, RelationKind::TypeII})
        for (auto& r : enumerate_relation_instances(n, kind, Variant::Quantum))
          if (!reduce_quantum(derive_quantum_relation(r)).is_zero()) out.fail("relation at " + ascii(r.base) + " survives");
  });
  rec.check("psi images of B_{n,k} independent " + range(1, N), [&](Outcome& out) {
    const Rat v(3);
    for (int n = 1; n <= N; ++n)
      for (int k = 0; k <= n; ++k) {
        SSpace s{n, k};
        auto sb = enumerate_s_basis(s);
        std::map<TLPairing, int> col;
        for (auto& p : sb) col.emplace(p, static_cast<int>(col.size()));
        EchelonBasis<Rat> span(static_cast<int>(sb.size()));
        auto basis = enumerate_standard_basis(n, k);
        for (auto& b : basis) {
          std::vector<Rat> row(sb.size(), Rat(0));
          for (auto& [p, c] : s_normal_form(s, psi(b, k)).terms) row[static_cast<size_t>(col.at(p))] = at_v(c, v);
          span.insert(row);
        }
        out.require(span.rank() == static_cast<int>(basis.size()),
                    "rank " + std::to_string(span.rank()) + " < " + std::to_string(basis.size()) + " at n=" +
                        std::to_string(n) + " k=" + std::to_string(k));
      }
  });
  rec.check("reduce_quantum has integral q-powers and matches classical at q=-1 " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n)
      for (int k = 0; k <= n; ++k)
        for (auto& d : enumerate_dotted(n, k, 1)) {
          auto r = reduce_quantum(QuantumElement::single(Variant::Quantum, d, LaurentHalfQ(1L)));
          for (auto& [b, c] : r.terms)
            if (!c.even_exponents()) out.fail("half-integer power of q reducing " + ascii(d));
          auto cl = reduce_classical(ClassicalElement::single(Variant::Classical, d, Int(1)));
          if (!(specialize_q_minus_one(r) == cl)) out.fail("q=-1 specialization differs for " + ascii(d));
        }
  });
}

// ---------------------------------------------------------------- 5. braid actions

void suite_braid(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(3, o.max_n);
  rec.check("braid relations on S_{n,k} " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n)
      for (int k = 0; k <= n; ++k) {
        SSpace s{n, k};
        int g = 2 * n - 1;
        for (auto& d : enumerate_s_basis(s)) {
          auto x = SElement::from_pairing(d);
          std::string at = tl_str(d);
          for (int i = 1; i <= g; ++i) {
            out.require(braid_act(s, {i, -i}, x) == x && braid_act(s, {-i, i}, x) == x, "s" + std::to_string(i) + " not inverted at " + at);
            if (i + 1 <= g)
              out.require(braid_act(s, {i, i + 1, i}, x) == braid_act(s, {i + 1, i, i + 1}, x), "braid relation fails at " + at);
            for (int j = i + 2; j <= g; ++j)
              out.require(braid_act(s, {i, j}, x) == braid_act(s, {j, i}, x), "far commutation fails at " + at);
          }
        }
      }
  });
  rec.check("q=1 pullback is a local involution on B_{n,k} " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n)
      for (auto& b : enumerate_standard_basis_all(n))
        for (int i = 1; i < 2 * n; ++i) {
          auto r = pullback_act({i}, b, PullbackMode::BnkLocal);
          out.require(r.local, "nonlocal support for s" + std::to_string(i) + " on " + ascii(b));
          auto once = specialize_q_one(r.value);
          ClassicalElement twice(Variant::Classical, n);
          for (auto& [d, c] : once.terms) twice += specialize_q_one(pullback_act({i}, d, PullbackMode::BnkLocal).value).scaled(c);
          out.require(twice == ClassicalElement::single(Variant::Classical, b, Int(1)), "s" + std::to_string(i) + "^2 != id on " + ascii(b));
        }
  });
  rec.check("semi-local corrections vanish at q=+-1 " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n)
      for (int k = 1; k <= n; ++k)
        for (auto& d : enumerate_dotted(n, k, 1))
          for (int i = 1; i < 2 * n; ++i)
            out.require(pullback_act({i}, d, PullbackMode::FullSemilocal).semilocal_vanish_at_pm1,
                        "correction survives for s" + std::to_string(i) + " on " + ascii(d));
  });
}

// ---------------------------------------------------------------- 6. Jones-Wenzl

void suite_jw(Recorder& rec, const VerifyOptions& o) {
  int N2 = std::min(5, o.max_n + 2), NG = std::min(3, o.max_n);
  rec.check("delta=2 projectors idempotent and killed by U_i " + range(1, N2), [&](Outcome& out) {
    const Rat two(2);
    for (int n = 1; n <= N2; ++n) {
      auto p = jones_wenzl_delta2(n);
      out.require(compose(p, p, two) == p, "p_" + std::to_string(n) + "^2 != p_" + std::to_string(n));
      for (int i = 1; i < n; ++i) {
        auto u = TLElement<Rat>::from_pairing(tl_u(n, i));
        out.require(compose(p, u, two).is_zero() && compose(u, p, two).is_zero(), "p_n U_i != 0 at n=" + std::to_string(n));
      }
    }
  });
  rec.check("generic projectors: recursion equals definition " + range(1, NG), [&](Outcome& out) {
    RatFunc d(delta_q());
    for (int n = 1; n <= NG; ++n) {
      auto p = jones_wenzl_generic(n);
      out.require(p == jones_wenzl_generic_definition(n), "recursion and definition differ at n=" + std::to_string(n));
      out.require(compose(p, p, d) == p, "generic p_n not idempotent at n=" + std::to_string(n));
      out.require(specialize_jw(p) == jones_wenzl_delta2(n), "q=-1 specialization differs at n=" + std::to_string(n));
    }
  });
}

// ---------------------------------------------------------------- 7. quantum group matrices

void suite_qgroup(Recorder& rec, const VerifyOptions&) {
  rec.check("zig-zag and circle value", [&](Outcome& out) {
    auto m = intertwiner_matrices(3);
    auto id = identity_on(1);
    out.require(kron(id, m.eps1) * kron(m.delta1, id) == id, "right zig-zag");
    out.require(kron(m.eps1, id) * kron(id, m.delta1) == id, "left zig-zag");
    out.require(m.eps1 * m.delta1 == identity_on(0).scaled(parse_laurent("-q^-1 - q")), "eps1 delta1 != -q-q^-1");
  });
  rec.check("braid relations on V^3 and V^4", [&](Outcome& out) {
    auto m = intertwiner_matrices(3);
    out.require(m.T[1] * m.T[2] * m.T[1] == m.T[2] * m.T[1] * m.T[2], "T1 T2 T1 != T2 T1 T2");
    auto m4 = intertwiner_matrices(4);
    out.require(m4.T[1] * m4.T[3] == m4.T[3] * m4.T[1], "T1 T3 != T3 T1");
    out.require(m4.T[2] * m4.T[3] * m4.T[2] == m4.T[3] * m4.T[2] * m4.T[3], "T2 T3 T2 != T3 T2 T3");
  });
}

// ---------------------------------------------------------------- 8. HH0

void suite_hh0(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(4, o.max_n);
  for (int n = 1; n <= N; ++n)
    rec.check("HH0(H^" + std::to_string(n) + ")", [&, n](Outcome& out) {
      auto h = hh0(n, Frobenius::Classical);
      out.detail = "rank " + std::to_string(h.rank);
      out.require(h.rank == h.skein_rank, "rank " + std::to_string(h.rank) + " vs skein " + std::to_string(h.skein_rank));
      out.require(h.rank == binomial(2 * n, n).get_si(), "rank is not C(2n,n)");
      out.require(h.torsion.empty(), "torsion in HH0");
      out.require(h.phi_bijective, "phi is not bijective on the standard basis");
      out.require(h.lemma_span_equal, "reduced generator set spans a different lattice");
    });
}

// ---------------------------------------------------------------- 9. center

void suite_center(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(3, o.max_n);
  for (int n = 1; n <= N; ++n)
    rec.check("Z(H^" + std::to_string(n) + ")", [&, n](Outcome& out) {
      auto c = center(n, Frobenius::Classical);
      out.detail = "rank " + std::to_string(c.rank);
      out.require(c.rank == c.presentation_rank, "center rank " + std::to_string(c.rank) + " vs presentation " +
                                                      std::to_string(c.presentation_rank));
      out.require(c.cbar_central, "cbar not central");
      out.require(c.cbar_relations, "relations fail on the cbar's");
      out.require(c.generated_by_cbar, "cbar monomials do not span the center");
    });
  int P = std::min(4, o.max_n);
  rec.check("redundancy identities " + range(1, P), [&](Outcome& out) {
    for (int n = 1; n <= P; ++n)
      for (int k = 1; k <= n; ++k)
        out.require(polys_lemma_identity(n, k), "identity fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
  });
}

// ---------------------------------------------------------------- 10. kernel ideals

void suite_kernel(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(3, o.max_n), T = std::min(2, o.max_n);
  for (int n = 1; n <= N; ++n)
    rec.check("intersection of I_a equals (" + std::string(n == 1 ? "e_1" : "e_1..e_" + std::to_string(n)) + ")", [&, n](Outcome& out) {
      auto k = kernel_vert(n);
      out.require(k.ideal_in_intersection, "(e) not inside the intersection");
      out.require(k.intersection_in_ideal, "intersection not inside (e)");
      out.require(k.saturated, "ideal not saturated over Z");
      out.require(k.single_generator_over_q, "(e_1) does not generate over Q");
    });
  for (int n = 1; n <= T; ++n)
    rec.check("twisted kernel at n=" + std::to_string(n), [&, n](Outcome& out) {
      auto k = kernel_vert_t(n);
      out.require(k.ideal_in_intersection && k.intersection_in_ideal, "double inclusion fails in degrees 0.." + std::to_string(k.max_degree));
    });
  rec.check("e^t_2 and e^t_4 in eight variables", [&](Outcome& out) {
    auto e2 = et_function(2, 4) - elementary(8, 2, true);
    auto e4 = et_function(4, 4) - elementary(8, 4, true);
    out.require(e2 == SquareFreeElement::constant(8, true, PolyHT::mono(0, 1, 4)), "e^t_2 - e_2 = " + e2.str());
    out.require(e4 == SquareFreeElement::constant(8, true, PolyHT::mono(0, 2, -6)), "e^t_4 - e_4 = " + e4.str());
    out.require(et_function(3, 4) == elementary(8, 3, true), "e^t_3 != e_3");
  });
}

// ---------------------------------------------------------------- 11. equivariant deformation

void suite_equivariant(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(3, o.max_n);
  std::mt19937_64 g(o.seed);
  auto pick = [&] {
    Rat r(std::uniform_int_distribution<int>(-9, 9)(g), std::uniform_int_distribution<int>(1, 6)(g));
    r.canonicalize();
    return r;
  };
  Rat h = pick(), t = pick();
  if (h == 0 && t == 0) h = 1;
  for (auto [hv, tv] : std::vector<std::pair<Rat, Rat>>{{Rat(0), Rat(0)}, {h, t}})
    rec.check("ranks at (h,t)=(" + rat_str(hv) + "," + rat_str(tv) + ") " + range(1, N), [&, hv, tv](Outcome& out) {
      for (int n = 1; n <= N; ++n) {
        long want = binomial(2 * n, n).get_si();
        auto a = hh0(n, Frobenius::Equivariant, hv, tv);
        auto b = presentation_rank_equivariant(n, hv, tv);
        out.require(a.rank == want, "HH0 rank " + std::to_string(a.rank) + " at n=" + std::to_string(n));
        out.require(b.rank == want, "presentation rank " + std::to_string(b.rank) + " at n=" + std::to_string(n));
        out.require(a.phi_bijective, "phi not bijective at n=" + std::to_string(n));
      }
    });
  rec.check("confluence, 200 random trials " + range(2, N), [&](Outcome& out) {
    for (int n = 2; n <= N; ++n) {
      auto c = confluence_check(n, Variant::Equivariant, 200, o.seed + static_cast<std::uint64_t>(n));
      out.require(c.ok(), std::to_string(c.trials - c.agreements) + " disagreements at n=" + std::to_string(n) +
                              (c.failures.empty() ? "" : ": " + c.failures.front()));
    }
  });
  rec.check("h=t=0 recovers classical reduction " + range(1, N), [&](Outcome& out) {
    for (int n = 1; n <= N; ++n)
      for (int k = 0; k <= n; ++k)
        for (auto& d : enumerate_dotted(n, k, 1)) {
          auto e = reduce_equivariant(EquivElement::single(Variant::Equivariant, d, PolyHT(1L)));
          auto c = reduce_classical(ClassicalElement::single(Variant::Classical, d, Int(1)));
          if (!(at_zero(e) == c)) out.fail("specialization differs for " + ascii(d));
        }
  });
}

// ---------------------------------------------------------------- 12. Hom(1,1)

void suite_homring(Recorder& rec, const VerifyOptions&) {
  rec.check("Hom(1,1)", [&](Outcome& out) {
    auto r = hom_ring_checks(1, 1);
    out.detail = "dim Hom " + std::to_string(r.hom_dim) + ", center rank " + std::to_string(r.center_hom_rank);
    out.require(r.dim_h == 12, "dim H^2 = " + std::to_string(r.dim_h));
    out.require(r.idempotents_orthogonal, "idempotents not orthogonal");
    out.require(r.idempotents_complete, "idempotents do not sum to 1");
    out.require(r.idempotents_nonzero, "an idempotent vanishes in the quotient");
    out.require(r.tensor_rank == 4 && r.image_center_rank == r.tensor_rank,
                "image of the center has rank " + std::to_string(r.image_center_rank));
    out.require(r.center_equals_image, "Z(Hom(1,1)) has rank " + std::to_string(r.center_hom_rank));
  });
}

// ---------------------------------------------------------------- 13. positivity probe

void suite_positivity(Recorder& rec, const VerifyOptions& o) {
  int N = std::min(4, o.max_n);
  for (int n = 1; n <= N; ++n)
    rec.check("leading minors at n=" + std::to_string(n), [&, n](Outcome& out) {
      auto p = positivity_probe(n);
      std::ostringstream s;
      s << "positive definite: " << (p.positive_definite ? "yes" : "no")
        << "; against mirrored basis: " << (p.mirrored_positive_definite ? "yes" : "no");
      int nonpos = 0;
      for (auto& m : p.minors)
        if (sgn(m) <= 0) ++nonpos;
      s << "; nonpositive minors " << nonpos << "/" << p.minors.size();
      out.detail = s.str();
      out.pass = p.positive_definite;
    });
}

struct SuiteDef {
  const char* name;
  const char* title;
  bool report_only;
  void (*run)(Recorder&, const VerifyOptions&);
};

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> s{
      {"rank", "rank formula and lattice paths", false, suite_rank},
      {"form", "bilinear form well-defined, symmetric, nondegenerate", false, suite_form},
      {"duality", "projector duals", false, suite_duality},
      {"psi", "psi well-defined and injective", false, suite_psi},
      {"braid", "braid and symmetric group actions", false, suite_braid},
      {"jw", "Jones-Wenzl projectors", false, suite_jw},
      {"qgroup", "quantum group matrix model", false, suite_qgroup},
      {"hh0", "HH0 of the arc ring", false, suite_hh0},
      {"center", "center of the arc ring", false, suite_center},
      {"kernel", "kernel ideals", false, suite_kernel},
      {"equivariant", "equivariant deformation", false, suite_equivariant},
      {"homring", "Hom(1,1) checks", false, suite_homring},
      {"positivity", "positive-definiteness probe", true, suite_positivity},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& s : suites()) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& suite, const VerifyOptions& opt) {
  const auto& all = suites();
  auto it = std::find_if(all.begin(), all.end(), [&](const SuiteDef& d) { return suite == d.name; });
  if (it == all.end()) throw std::invalid_argument("unknown suite: " + suite);
  SuiteReport r;
  r.criterion = static_cast<int>(it - all.begin()) + 1;
  r.suite = it->name;
  r.title = it->title;
  r.report_only = it->report_only;
  auto t0 = std::chrono::steady_clock::now();
  Recorder rec(r);
  it->run(rec, opt);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<SuiteReport> run_suites(const std::string& which, const VerifyOptions& opt) {
  std::vector<std::string> names = which == "all" ? suite_names() : std::vector<std::string>{which};
  for (auto& n : names)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw std::invalid_argument("unknown suite: " + n);
  std::vector<SuiteReport> out(names.size());
  unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(names.size()));
  std::atomic<size_t> next{0};
  std::vector<std::future<void>> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.push_back(std::async(std::launch::async, [&] {
      for (size_t i = next++; i < names.size(); i = next++) out[i] = run_suite(names[i], opt);
    }));
  for (auto& f : pool) f.get();
  return out;
}

json report_to_json(const std::vector<SuiteReport>& reports, const VerifyOptions& opt) {
  json suites_j = json::array();
  for (auto& r : reports) {
    json checks = json::array();
    for (auto& c : r.checks)
      checks.push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}, {"seconds", c.seconds}});
    suites_j.push_back({{"criterion", r.criterion},
                        {"suite", r.suite},
                        {"title", r.title},
                        {"report_only", r.report_only},
                        {"status", r.pass() ? "pass" : "fail"},
                        {"seconds", r.seconds},
                        {"checks", checks}});
  }
  return json{{"max_n", opt.max_n}, {"seed", opt.seed}, {"status", all_pass(reports) ? "pass" : "fail"}, {"suites", suites_j}};
}

std::string report_ascii(const std::vector<SuiteReport>& reports, bool verbose) {
  std::ostringstream s;
  for (auto& r : reports) {
    const char* status = r.report_only ? "REPORT" : r.pass() ? "PASS" : "FAIL";
    s << "[" << status << "] " << r.criterion << ". " << r.suite << ": " << r.title;
    s << " (" << static_cast<long>(r.seconds * 1000) << " ms)\n";
    for (auto& c : r.checks) {
      if (!verbose && c.pass && !r.report_only) continue;
      s << "    " << (r.report_only ? "-" : c.pass ? "ok  " : "FAIL") << " " << c.name;
      if (!c.detail.empty()) s << ": " << c.detail;
      s << "\n";
    }
  }
  return s.str();
}

}  // namespace skeinlab
