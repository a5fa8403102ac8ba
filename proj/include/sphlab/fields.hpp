#pragma once

#include <string>

namespace sphlab {

enum class FieldId { F1, F2 };

enum class Quantity { F, Fx, Fy, Fxx, Fxy, Fyy };

inline const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::F: return "f";
        case Quantity::Fx: return "fx";
        case Quantity::Fy: return "fy";
        case Quantity::Fxx: return "fxx";
        case Quantity::Fxy: return "fxy";
        case Quantity::Fyy: return "fyy";
    }
    return "?";
}

inline const char* field_name(FieldId id) { return id == FieldId::F1 ? "f1" : "f2"; }

// Analytic test fields on the closed unit square:
//   f1 = sin(pi x) sin(pi y)
//   f2 = x^(5/2) (20 y^5 + 8 x y^3 + x^2 y^2 + 1)
// Values and closed-form derivatives up to second order; rejects points
// outside [0,1]^2.
double exact_field(FieldId id, Quantity quantity, double x, double y);

}  // namespace sphlab
