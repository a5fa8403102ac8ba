#include "sphlab/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace sphlab {

namespace {

constexpr double pi = 3.14159265358979323846;

double f1_eval(Quantity q, double x, double y) {
    const double sx = std::sin(pi * x), cx = std::cos(pi * x);
    const double sy = std::sin(pi * y), cy = std::cos(pi * y);
    switch (q) {
        case Quantity::F: return sx * sy;
        case Quantity::Fx: return pi * cx * sy;
        case Quantity::Fy: return pi * sx * cy;
        case Quantity::Fxx: return -pi * pi * sx * sy;
        case Quantity::Fxy: return pi * pi * cx * cy;
        case Quantity::Fyy: return -pi * pi * sx * sy;
    }
    throw std::logic_error("unknown quantity");
}

// All terms carry non-negative powers of x, so the closed forms are defined
// on the whole closed domain (x^(1/2) etc. vanish at x = 0).
double f2_eval(Quantity q, double x, double y) {
    const double x12 = std::sqrt(x);
    const double x32 = x * x12;
    const double x52 = x * x32;
    const double x72 = x * x52;
    const double x92 = x * x72;
    const double y2 = y * y, y3 = y2 * y, y4 = y3 * y, y5 = y4 * y;
    switch (q) {
        case Quantity::F: return 20.0 * x52 * y5 + 8.0 * x72 * y3 + x92 * y2 + x52;
        case Quantity::Fx: return 50.0 * x32 * y5 + 28.0 * x52 * y3 + 4.5 * x72 * y2 + 2.5 * x32;
        case Quantity::Fy: return 100.0 * x52 * y4 + 24.0 * x72 * y2 + 2.0 * x92 * y;
        case Quantity::Fxx: return 75.0 * x12 * y5 + 70.0 * x32 * y3 + 15.75 * x52 * y2 + 3.75 * x12;
        case Quantity::Fxy: return 250.0 * x32 * y4 + 84.0 * x52 * y2 + 9.0 * x72 * y;
        case Quantity::Fyy: return 400.0 * x52 * y3 + 48.0 * x72 * y + 2.0 * x92;
    }
    throw std::logic_error("unknown quantity");
}

}  // namespace

double exact_field(FieldId id, Quantity quantity, double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw std::invalid_argument("exact_field: point outside the unit square");
    return id == FieldId::F1 ? f1_eval(quantity, x, y) : f2_eval(quantity, x, y);
}

}  // namespace sphlab
