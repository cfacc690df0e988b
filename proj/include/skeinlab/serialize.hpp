#pragma once

#include <string>

#include <json.hpp>

#include "skeinlab/arcring.hpp"
#include "skeinlab/diagrams.hpp"
#include "skeinlab/pairing.hpp"
#include "skeinlab/skein.hpp"
#include "skeinlab/tlcalc.hpp"

namespace skeinlab {

using json = nlohmann::ordered_json;

std::string int_str(const Int& x);
std::string rat_str(const Rat& x);
Int parse_int(const std::string& s);
Rat parse_rat(const std::string& s);

// {"n":2,"arcs":[[1,4],[2,3]],"dots":{"1":1}}; `mark_key` is "xs" for cap diagrams.
json diagram_to_json(const DottedMatching& d, const std::string& mark_key = "dots");
DottedMatching diagram_from_json(const json& j, const std::string& mark_key = "dots");
// Accepts "((1 4)* (2 3))".
DottedMatching parse_ascii_diagram(const std::string& s);
// JSON object text or the ASCII form.
DottedMatching parse_diagram(const std::string& s);

// A skein element of any variant.
struct AnyElement {
  Variant variant = Variant::Classical;
  int n = 0;
  ClassicalElement integral;  // classical and q1
  QuantumElement quantum;
  EquivElement equivariant;
};
json element_to_json(const AnyElement& e);
json element_to_json(const ClassicalElement& e);
json element_to_json(const QuantumElement& e);
json element_to_json(const EquivElement& e);
AnyElement element_from_json(const json& j);
AnyElement reduce(const AnyElement& e);

json dual_to_json(const DualElement& d);
DualElement dual_from_json(const json& j);
json construction_to_json(const DualConstruction& c);

json slice_word_to_json(const SliceWord& w);
SliceWord slice_word_from_json(const json& j);
json tl_pairing_to_json(const TLPairing& p);
json tl_element_to_json(const TLElement<LaurentHalfQ>& x);

json matrix_to_json(const Matrix<Int>& m);
json matrix_to_json(const Matrix<Rat>& m);

// Basis of H^n with structure constants of every nonzero product of basis elements.
json multiplication_table(int n, Frobenius f);

}  // namespace skeinlab
