#include "skeinlab/serialize.hpp"

#include <cctype>
#include <stdexcept>

namespace skeinlab {

std::string int_str(const Int& x) { return x.get_str(); }

std::string rat_str(const Rat& x) {
  Rat y = x;
  y.canonicalize();
  return y.get_str();
}

Int parse_int(const std::string& s) {
  Int r;
  if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: " + s);
  return r;
}

Rat parse_rat(const std::string& s) {
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- diagrams

json diagram_to_json(const DottedMatching& d, const std::string& mark_key) {
  json arcs = json::array();
  for (auto [l, r] : d.m.arcs()) arcs.push_back({l, r});
  json marks = json::object();
  for (auto& [l, c] : d.dots)
    if (c) marks[std::to_string(l)] = c;
  return json{{"n", d.n()}, {"arcs", arcs}, {mark_key, marks}};
}

DottedMatching diagram_from_json(const json& j, const std::string& mark_key) {
  if (j.is_string()) return parse_ascii_diagram(j.get<std::string>());
  if (!j.is_object() || !j.contains("n") || !j.contains("arcs")) throw std::invalid_argument("diagram JSON needs n and arcs");
  int n = j.at("n").get<int>();
  std::vector<Arc> arcs;
  for (auto& a : j.at("arcs")) {
    if (!a.is_array() || a.size() != 2) throw std::invalid_argument("arc must be a pair");
    int l = a[0].get<int>(), r = a[1].get<int>();
    arcs.emplace_back(std::min(l, r), std::max(l, r));
  }
  std::sort(arcs.begin(), arcs.end());
  CrossinglessMatching m(n, arcs);
  std::map<int, int> dots;
  if (j.contains(mark_key))
    for (auto& [k, v] : j.at(mark_key).items()) {
      int l = std::stoi(k), c = v.get<int>();
      if (c < 0) throw std::invalid_argument("negative dot count");
      if (m.partner(l) < l) throw std::invalid_argument("dots must be keyed by a left endpoint");
      if (c) dots[l] = c;
    }
  return DottedMatching(m, dots);
}

DottedMatching parse_ascii_diagram(const std::string& s) {
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= s.size() || s[i] != c) throw std::invalid_argument("malformed diagram: " + s);
    ++i;
  };
  auto number = [&] {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw std::invalid_argument("malformed diagram: " + s);
    return std::stoi(s.substr(start, i - start));
  };
  std::vector<Arc> arcs;
  std::map<int, int> dots;
  expect('(');
  skip();
  while (i < s.size() && s[i] == '(') {
    ++i;
    int l = number(), r = number();
    expect(')');
    if (l > r) std::swap(l, r);
    arcs.emplace_back(l, r);
    while (i < s.size() && s[i] == '*') ++dots[l], ++i;
    skip();
  }
  expect(')');
  skip();
  if (i != s.size()) throw std::invalid_argument("trailing text in diagram: " + s);
  std::sort(arcs.begin(), arcs.end());
  return DottedMatching(CrossinglessMatching(static_cast<int>(arcs.size()), arcs), dots);
}

DottedMatching parse_diagram(const std::string& s) {
  auto first = s.find_first_not_of(" \t\n");
  if (first != std::string::npos && s[first] == '{') return diagram_from_json(json::parse(s));
  return parse_ascii_diagram(s);
}

// ---------------------------------------------------------------- skein elements

namespace {

template <class C, class F>
json terms_json(const SkeinElement<C>& e, F coeff) {
  json terms = json::array();
  for (auto& [d, c] : e.terms) terms.push_back({{"diagram", diagram_to_json(d)}, {"coeff", coeff(c)}});
  return terms;
}

}  // namespace

json element_to_json(const ClassicalElement& e) {
  return json{{"variant", variant_name(e.variant)}, {"n", e.n}, {"terms", terms_json(e, int_str)}};
}

json element_to_json(const QuantumElement& e) {
  return json{{"variant", variant_name(Variant::Quantum)}, {"n", e.n}, {"terms", terms_json(e, [](auto& c) { return c.str(); })}};
}

json element_to_json(const EquivElement& e) {
  return json{{"variant", variant_name(Variant::Equivariant)}, {"n", e.n}, {"terms", terms_json(e, [](auto& c) { return c.str(); })}};
}

json element_to_json(const AnyElement& e) {
  switch (e.variant) {
    case Variant::Quantum: return element_to_json(e.quantum);
    case Variant::Equivariant: return element_to_json(e.equivariant);
    default: {
      auto j = element_to_json(e.integral);
      j["variant"] = variant_name(e.variant);
      return j;
    }
  }
}

AnyElement element_from_json(const json& j) {
  AnyElement e;
  e.variant = parse_variant(j.value("variant", std::string("classical")));
  if (!j.contains("terms") || !j.at("terms").is_array()) throw std::invalid_argument("element JSON needs a terms array");
  std::vector<std::pair<DottedMatching, std::string>> terms;
  for (auto& t : j.at("terms")) {
    auto c = t.at("coeff");
    terms.emplace_back(diagram_from_json(t.at("diagram")), c.is_string() ? c.get<std::string>() : c.dump());
  }
  if (j.contains("n"))
    e.n = j.at("n").get<int>();
  else if (!terms.empty())
    e.n = terms.front().first.n();
  e.integral = ClassicalElement(e.variant, e.n);
  e.quantum = QuantumElement(Variant::Quantum, e.n);
  e.equivariant = EquivElement(Variant::Equivariant, e.n);
  for (auto& [d, c] : terms) {
    switch (e.variant) {
      case Variant::Quantum: e.quantum.add(d, parse_laurent(c)); break;
      case Variant::Equivariant: e.equivariant.add(d, parse_polyht(c)); break;
      default: e.integral.add(d, parse_int(c)); break;
    }
  }
  return e;
}

AnyElement reduce(const AnyElement& e) {
  AnyElement r = e;
  switch (e.variant) {
    case Variant::Classical: r.integral = reduce_classical(e.integral); break;
    case Variant::Q1: r.integral = reduce_q1(e.integral); break;
    case Variant::Quantum: r.quantum = reduce_quantum(e.quantum); break;
    case Variant::Equivariant: r.equivariant = reduce_equivariant(e.equivariant); break;
  }
  return r;
}

// ---------------------------------------------------------------- duals

json dual_to_json(const DualElement& d) {
  json terms = json::array();
  for (auto& [caps, c] : d.terms) terms.push_back({{"diagram", diagram_to_json(caps, "xs")}, {"coeff", rat_str(c)}});
  return json{{"n", d.n}, {"terms", terms}};
}

DualElement dual_from_json(const json& j) {
  DualElement d(j.at("n").get<int>());
  for (auto& t : j.at("terms")) {
    auto c = t.at("coeff");
    d.add(diagram_from_json(t.at("diagram"), "xs"), parse_rat(c.is_string() ? c.get<std::string>() : c.dump()));
  }
  return d;
}

json construction_to_json(const DualConstruction& c) {
  json projectors = json::array();
  for (auto [left, size] : c.builder.projectors) projectors.push_back({left + 1, size});
  json builder = diagram_to_json(c.builder.caps, "xs");
  builder["projectors"] = projectors;
  json steps = json::array();
  for (auto& s : c.steps)
    steps.push_back({{"rule", s.rule}, {"from", tuple_str(s.from)}, {"to", tuple_str(s.to)}, {"left", s.left},
                     {"size", s.size}, {"coeff", rat_str(s.coefficient)}});
  return json{{"target", diagram_to_json(c.target)}, {"builder", builder},       {"coefficient", rat_str(c.coefficient)},
              {"steps", steps},                      {"raw_pairing", rat_str(c.raw_pairing)}, {"sign", c.sign},
              {"dual", dual_to_json(c.dual)}};
}

// ---------------------------------------------------------------- slice words and TL elements

namespace {

const char* slice_name(SliceKind k) {
  switch (k) {
    case SliceKind::Cap: return "cap";
    case SliceKind::Cup: return "cup";
    case SliceKind::XP: return "xp";
    case SliceKind::XM: return "xm";
  }
  return "?";
}

SliceKind parse_slice(const std::string& s) {
  if (s == "cap") return SliceKind::Cap;
  if (s == "cup") return SliceKind::Cup;
  if (s == "xp") return SliceKind::XP;
  if (s == "xm") return SliceKind::XM;
  throw std::invalid_argument("unknown slice kind: " + s);
}

}  // namespace

json slice_word_to_json(const SliceWord& w) {
  json slices = json::array();
  for (auto& s : w.slices) slices.push_back({slice_name(s.kind), s.pos});
  return json{{"bottom", w.bottom}, {"slices", slices}};
}

SliceWord slice_word_from_json(const json& j) {
  SliceWord w;
  w.bottom = j.at("bottom").get<int>();
  for (auto& s : j.at("slices")) w.slices.push_back({parse_slice(s.at(0).get<std::string>()), s.at(1).get<int>()});
  return w;
}

json tl_pairing_to_json(const TLPairing& p) {
  json arcs = json::array();
  for (int i = 0; i < static_cast<int>(p.partner.size()); ++i)
    if (i < p.partner[static_cast<size_t>(i)]) arcs.push_back({i + 1, p.partner[static_cast<size_t>(i)] + 1});
  return json{{"bottom", p.b}, {"top", p.t}, {"arcs", arcs}};
}

json tl_element_to_json(const TLElement<LaurentHalfQ>& x) {
  json terms = json::array();
  for (auto& [p, c] : x.terms) terms.push_back({{"pairing", tl_pairing_to_json(p)}, {"coeff", c.str()}});
  return json{{"bottom", x.b}, {"top", x.t}, {"terms", terms}};
}

json matrix_to_json(const Matrix<Int>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) {
      const Int& x = m(i, j);
      if (x.fits_slong_p())
        row.push_back(x.get_si());
      else
        row.push_back(int_str(x));
    }
    rows.push_back(row);
  }
  return rows;
}

json matrix_to_json(const Matrix<Rat>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(rat_str(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------- arc ring tables

json multiplication_table(int n, Frobenius f) {
  const auto& R = ArcRing::get(n, f);
  auto arcs_of = [](const CrossinglessMatching& m) {
    json a = json::array();
    for (auto [l, r] : m.arcs()) a.push_back({l, r});
    return a;
  };
  json basis = json::array();
  for (int i = 0; i < R.dim(); ++i) {
    auto k = R.key(i);
    json labels = json::array();
    for (int c = 0; c < R.config(k.top, k.bottom).k; ++c) labels.push_back((k.labels >> c) & 1 ? "X" : "1");
    basis.push_back({{"index", i},
                     {"top", arcs_of(R.matchings()[static_cast<size_t>(k.top)])},
                     {"bottom", arcs_of(R.matchings()[static_cast<size_t>(k.bottom)])},
                     {"labels", labels},
                     {"degree", R.degree(k)}});
  }
  json products = json::array();
  for (int i = 0; i < R.dim(); ++i)
    for (int j = 0; j < R.dim(); ++j) {
      auto& p = R.product(i, j);
      if (p.empty()) continue;
      json out = json::array();
      for (auto& [idx, c] : p) out.push_back({idx, c.str()});
      products.push_back({{"left", i}, {"right", j}, {"result", out}});
    }
  return json{{"n", n}, {"variant", frobenius_name(f)}, {"dim", R.dim()}, {"basis", basis}, {"products", products}};
}

}  // namespace skeinlab
