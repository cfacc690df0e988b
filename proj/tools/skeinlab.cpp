#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "skeinlab/verify.hpp"

using namespace skeinlab;

namespace {

struct Global {
  std::string format = "ascii";
  std::uint64_t seed = 1;
};

int env_max_n() {
  const char* s = std::getenv("SKEINLAB_MAX_N");
  if (!s || !*s) return -1;
  return std::stoi(s);
}

void check_n(int n, const char* what = "--n") {
  if (n < 0) throw std::invalid_argument(std::string(what) + " must be nonnegative");
  int cap = env_max_n();
  if (cap >= 0 && n > cap)
    throw std::invalid_argument(std::string(what) + " = " + std::to_string(n) + " exceeds SKEINLAB_MAX_N = " + std::to_string(cap));
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::string render(const DottedMatching& d, const std::string& format) {
  if (format == "latex") return latex(d);
  return ascii(d);
}

template <class C, class F>
void print_element(const SkeinElement<C>& e, const std::string& format, F coeff) {
  if (e.is_zero()) {
    std::cout << "0\n";
    return;
  }
  for (auto& [d, c] : e.terms) std::cout << "(" << coeff(c) << ") " << render(d, format) << "\n";
}

void print_any(const AnyElement& e, const std::string& format) {
  if (format == "json") {
    std::cout << element_to_json(e).dump(2) << "\n";
    return;
  }
  auto str = [](auto& c) { return c.str(); };
  switch (e.variant) {
    case Variant::Quantum: print_element(e.quantum, format, str); break;
    case Variant::Equivariant: print_element(e.equivariant, format, str); break;
    default: print_element(e.integral, format, int_str); break;
  }
}

// "s1 s2^-1 s1", "1 -2 1" or "1,-2,1".
BraidWord parse_word(const std::string& w) {
  std::string s = w;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  BraidWord out;
  std::string tok;
  while (in >> tok) {
    int sign = 1;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      sign = -1;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (!tok.empty() && (tok[0] == 's' || tok[0] == 'S')) tok = tok.substr(1);
    int g = std::stoi(tok);
    if (g == 0) throw std::invalid_argument("braid generator index must be nonzero");
    out.push_back(sign * g);
  }
  if (out.empty()) throw std::invalid_argument("empty braid word");
  return out;
}

// Exact value of a v-Laurent polynomial at q; needs q to be a square when odd v-powers occur.
std::string at_q(const LaurentHalfQ& p, const Rat& q) {
  if (p.even_exponents()) return rat_str(specialize_q(p, q));
  Int num_root, den_root;
  mpz_sqrt(num_root.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den_root.get_mpz_t(), q.get_den_mpz_t());
  if (sgn(q) <= 0 || num_root * num_root != q.get_num() || den_root * den_root != q.get_den())
    throw std::domain_error("half-integer power of q at q = " + rat_str(q) + "; choose a square or 'generic'");
  Rat v(num_root, den_root), acc = 0;
  for (auto& [e, c] : p.terms) {
    Rat base = e >= 0 ? v : Rat(1) / v, pw = 1;
    for (int i = 0; i < std::abs(e); ++i) pw *= base;
    acc += Rat(c) * pw;
  }
  return rat_str(acc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with dotted crossingless matchings, Temperley-Lieb diagrams and arc rings"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "ascii", "latex"}));
  app.add_option("--seed", g.seed, "Random seed");

  int n = 1, k = 0, m = 0, max_n = 3;
  std::string variant = "classical", file = "-", diagram, method = "projectors", word, q = "generic", suite = "all";
  std::string h_str = "0", t_str = "0";
  bool twisted = false, verbose = false, table = false;
  unsigned threads = 0;

  auto* basis = app.add_subcommand("basis", "Standard basis B_{n,k}");
  basis->add_option("--n", n, "Number of arcs")->required();
  basis->add_option("--k", k, "Number of dots")->required();
  basis->add_option("--variant", variant, "Skein variant");

  auto* red = app.add_subcommand("reduce", "Reduce a skein element to standard form");
  red->add_option("file", file, "Element JSON (- for stdin)");
  red->add_option("--variant", variant, "Override the variant of the input");

  auto* gram = app.add_subcommand("gram", "Gram matrix of the bilinear form on B_n");
  gram->add_option("--n", n, "Number of arcs")->required();

  auto* dual = app.add_subcommand("dual", "Dual basis element of a standard diagram");
  dual->add_option("--n", n, "Number of arcs");
  dual->add_option("--diagram", diagram, "Diagram as JSON or e.g. \"((1 4)* (2 3))\"")->required();
  dual->add_option("--method", method, "Construction")->check(CLI::IsMember({"projectors", "gram"}));

  auto* hh = app.add_subcommand("hh0", "Zeroth Hochschild homology of the arc ring");
  hh->add_option("--n", n, "Number of arcs")->required();
  hh->add_option("--variant", variant, "classical, equivariant or x2t");
  hh->add_option("--h", h_str, "Value of h");
  hh->add_option("--t", t_str, "Value of t");
  hh->add_flag("--table", table, "Print the multiplication table of H^n instead");

  auto* ker = app.add_subcommand("kernel", "Kernel ideals and quotient skein modules");
  ker->add_option("--m", m, "Top points / 2 (0: vertical closure ideal)");
  ker->add_option("--n", n, "Bottom points / 2")->required();
  ker->add_flag("--t", twisted, "Use X^2 = t");

  auto* act = app.add_subcommand("act", "Braid group action pulled back to B_{n,k}");
  act->add_option("--word", word, "Braid word, e.g. \"s1 s2^-1\"")->required();
  act->add_option("--n", n, "Number of arcs")->required();
  act->add_option("--k", k, "Number of dots")->required();
  act->add_option("--q", q, "generic, an integer or a rational");

  auto* ver = app.add_subcommand("verify", "Run the theorem suites");
  ver->add_option("--suite", suite, "all or one suite name");
  ver->add_option("--max-n", max_n, "Largest n checked");
  ver->add_option("--threads", threads, "Worker threads");
  ver->add_flag("--verbose", verbose, "List passing checks too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string& fmt = g.format;

  try {
    if (*basis) {
      check_n(n);
      if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
      parse_variant(variant);
      auto b = enumerate_standard_basis(n, k);
      if (fmt == "json") {
        json arr = json::array();
        for (auto& d : b) arr.push_back(diagram_to_json(d));
        std::cout << json{{"n", n}, {"k", k}, {"variant", variant}, {"count", b.size()}, {"basis", arr}}.dump(2) << "\n";
      } else {
        for (auto& d : b) std::cout << render(d, fmt) << "\n";
      }
      return 0;
    }
    if (*red) {
      auto text = read_input(file);
      auto start = text.find_first_not_of(" \t\r\n");
      json j = start != std::string::npos && text[start] == '{'
                   ? json::parse(text)
                   : json{{"terms", json::array({json{{"diagram", text}, {"coeff", "1"}}})}};
      if (red->count("--variant")) j["variant"] = variant;
      auto e = element_from_json(j);
      check_n(e.n);
      print_any(reduce(e), fmt);
      return 0;
    }
    if (*gram) {
      check_n(n);
      auto G = gram_matrix(n);
      if (fmt == "json") {
        json labels = json::array();
        for (auto& d : enumerate_standard_basis_all(n)) labels.push_back(ascii(d));
        std::cout << json{{"n", n}, {"basis", labels}, {"gram", matrix_to_json(G)}}.dump(2) << "\n";
      } else {
        std::cout << matrix_to_json(G).dump() << "\n";
      }
      return 0;
    }
    if (*dual) {
      auto d = parse_diagram(diagram);
      if (dual->count("--n") && d.n() != n) throw std::invalid_argument("diagram has " + std::to_string(d.n()) + " arcs");
      check_n(d.n());
      if (!is_standard(d)) throw std::invalid_argument("diagram is not in the standard basis");
      if (method == "gram") {
        auto basis_all = enumerate_standard_basis_all(d.n());
        int idx = static_cast<int>(std::find(basis_all.begin(), basis_all.end(), d) - basis_all.begin());
        auto e = dual_via_gram(d.n(), idx);
        if (fmt == "json") {
          std::cout << dual_to_json(e).dump(2) << "\n";
        } else {
          for (auto& [caps, c] : e.terms) std::cout << "(" << rat_str(c) << ") " << ascii(caps, 'x') << "\n";
        }
        return 0;
      }
      auto c = dual_via_projectors(d);
      if (fmt == "json") {
        std::cout << construction_to_json(c).dump(2) << "\n";
      } else {
        std::cout << "target  " << render(d, fmt) << "\n";
        std::cout << "builder " << ascii(c.builder) << "\n";
        for (auto& s : c.steps) std::cout << "  rule " << s.rule << ": " << tuple_str(s.from) << " -> " << tuple_str(s.to) << "\n";
        std::cout << "sign " << c.sign << ", raw pairing " << rat_str(c.raw_pairing) << "\n";
        for (auto& [caps, co] : c.dual.terms) std::cout << "(" << rat_str(co) << ") " << ascii(caps, 'x') << "\n";
      }
      return 0;
    }
    if (*hh) {
      check_n(n);
      auto f = parse_frobenius(variant);
      if (table) {
        std::cout << multiplication_table(n, f).dump(fmt == "json" ? 2 : -1) << "\n";
        return 0;
      }
      auto r = hh0(n, f, parse_rat(h_str), parse_rat(t_str));
      json torsion = json::array();
      for (auto& d : r.torsion) torsion.push_back(int_str(d));
      bool ok = r.rank == r.skein_rank && r.torsion.empty() && r.phi_bijective;
      if (fmt == "json") {
        json j{{"n", n},         {"variant", frobenius_name(f)}, {"rank", r.rank}, {"torsion", torsion},
               {"skein_rank", r.skein_rank}, {"phi_bijective", r.phi_bijective}};
        if (f != Frobenius::Classical) j["h"] = rat_str(r.h), j["t"] = rat_str(r.t);
        if (f == Frobenius::Classical) j["generator_lemma"] = r.lemma_span_equal;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "rank " << r.rank << ", torsion " << (r.torsion.empty() ? "none" : torsion.dump()) << "\n";
        std::cout << "skein rank " << r.skein_rank << ", phi bijective " << (r.phi_bijective ? "yes" : "no") << "\n";
      }
      return ok ? 0 : 1;
    }
    if (*ker) {
      check_n(n);
      check_n(m, "--m");
      if (m == 0) {
        auto r = twisted ? kernel_vert_t(n) : kernel_vert(n);
        bool ok = r.ideal_in_intersection && r.intersection_in_ideal && (twisted || (r.saturated && r.single_generator_over_q));
        json gens = json::array();
        for (int i = 1; i <= n; ++i) gens.push_back(twisted ? et_function(i, n).str() : elementary(2 * n, i, false).str());
        json j{{"n", n},
               {"twisted", twisted},
               {"generators", gens},
               {"intersection_rank", r.intersection_rank},
               {"ideal_rank", r.ideal_rank},
               {"ideal_in_intersection", r.ideal_in_intersection},
               {"intersection_in_ideal", r.intersection_in_ideal}};
        if (!twisted) j["saturated"] = r.saturated, j["single_generator_over_q"] = r.single_generator_over_q;
        if (twisted) j["degrees_checked"] = r.max_degree + 1;
        if (fmt == "json") {
          std::cout << j.dump(2) << "\n";
        } else {
          for (auto& gs : gens) std::cout << "generator " << gs.get<std::string>() << "\n";
          std::cout << "double inclusion " << (ok ? "holds" : "FAILS") << " (rank " << r.ideal_rank << ")\n";
        }
        return ok ? 0 : 1;
      }
      if (twisted) throw std::invalid_argument("--t applies to the vertical closure (--m 0) only");
      if (m + n > 3) throw std::invalid_argument("quotient skein modules need m + n <= 3");
      auto r = quotient_skein(m, n);
      json gens = json::array();
      for (auto& [name, e] : r.generators) gens.push_back({{"name", name}, {"element", element_to_json(e)}});
      json torsion = json::array();
      for (auto& d : r.torsion) torsion.push_back(int_str(d));
      bool ok = r.rank == r.arc_ring_rank && r.torsion == r.arc_ring_torsion;
      if (fmt == "json") {
        std::cout << json{{"m", m}, {"n", n}, {"rank", r.rank}, {"torsion", torsion}, {"arc_ring_rank", r.arc_ring_rank},
                          {"generators", gens}}
                         .dump(2)
                  << "\n";
      } else {
        for (auto& [name, e] : r.generators) {
          std::cout << name << ":";
          for (auto& [d, c] : e.terms) std::cout << " (" << int_str(c) << ") " << ascii(d);
          std::cout << "\n";
        }
        std::cout << "rank " << r.rank << ", torsion " << (r.torsion.empty() ? "none" : torsion.dump()) << "\n";
      }
      return ok ? 0 : 1;
    }
    if (*act) {
      check_n(n);
      if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
      auto w = parse_word(word);
      if (w.empty()) throw std::invalid_argument("empty braid word");
      for (int x : w)
        if (std::abs(x) >= 2 * n) throw std::invalid_argument("generator index out of range 1.." + std::to_string(2 * n - 1));
      bool generic = q == "generic";
      Rat qv = generic ? Rat(0) : parse_rat(q);
      json out = json::array();
      for (auto& b : enumerate_standard_basis(n, k)) {
        auto cur = pullback_act({w.front()}, b, PullbackMode::FullSemilocal).value;
        for (std::size_t j = 1; j < w.size(); ++j) {
          QuantumElement next(cur.variant, n);
          for (auto& [d, c] : cur.terms) next += pullback_act({w[j]}, d, PullbackMode::FullSemilocal).value.scaled(c);
          cur = next;
        }
        json terms = json::array();
        for (auto& [d, c] : cur.terms)
          terms.push_back({{"diagram", fmt == "json" ? diagram_to_json(d) : json(render(d, fmt))},
                           {"coeff", generic ? c.str() : at_q(c, qv)}});
        out.push_back({{"input", fmt == "json" ? diagram_to_json(b) : json(render(b, fmt))}, {"result", terms}});
      }
      if (fmt == "json") {
        std::cout << json{{"word", w}, {"n", n}, {"k", k}, {"q", q}, {"action", out}}.dump(2) << "\n";
      } else {
        for (auto& e : out) {
          std::cout << e["input"].get<std::string>() << " ->";
          if (e["result"].empty()) std::cout << " 0";
          for (auto& t : e["result"]) std::cout << " (" << t["coeff"].get<std::string>() << ") " << t["diagram"].get<std::string>();
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (*ver) {
      int cap = env_max_n();
      if (cap >= 0) max_n = std::min(max_n, cap);
      if (max_n < 1) throw std::invalid_argument("--max-n must be at least 1");
      VerifyOptions opt{max_n, g.seed, threads};
      auto reports = run_suites(suite, opt);
      if (fmt == "json")
        std::cout << report_to_json(reports, opt).dump(2) << "\n";
      else
        std::cout << report_ascii(reports, verbose);
      return all_pass(reports) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
