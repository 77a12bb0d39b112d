#pragma once

#include "polyslice/bodies.hpp"

namespace polyslice {

enum class Method { ClosedForm, Integral, Exact, MonteCarlo };
const char* to_string(Method m);

struct SectionValue {
  double value = 0;
  Method method = Method::ClosedForm;
  RegimeTag regime = RegimeTag::General;
  bool warning = false;  // extremal_value outside the theorem's range
};

// Vertex-separating closed forms. Empty queries and a tie at the apex give 0;
// any other non-separating query throws RegimeViolation.
SectionValue closed_A(const SectionQuery& q);
SectionValue closed_P(const SectionQuery& q);

// Cap volume vol_n{x in K : <a,x> >= t} in the separating regime (pyramid).
double closed_cap(const SectionQuery& q);

// Cube: any t. Simplex perimeter: any t. Cross-polytope perimeter: t = 0.
SectionValue analytic_A_integral(const SectionQuery& q);
SectionValue analytic_P_integral(const SectionQuery& q);

// Maximal value at the canonical direction; warning set outside the range
// where the corresponding theorem asserts maximality.
SectionValue extremal_value(const Body& body, double t, Functional f);

struct ValidityRange {
  double lo;
  bool lo_open;
  double hi;
};
// Empty optional semantics: lo > hi means no range for this n.
ValidityRange extremal_range(const Body& body, Functional f);
bool in_range(const ValidityRange& r, double t);

Direction extremal_direction(const Body& body);

}  // namespace polyslice
