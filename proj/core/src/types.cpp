#include "staeckel/types.hpp"

#include <sstream>
#include <stdexcept>

namespace staeckel {

namespace {

constexpr double kConstraintTol = 1e-12;

[[noreturn]] void throw_ordering(const std::string& what) {
    throw std::domain_error("parameter ordering violated: " + what);
}

}  // namespace

CotangentPoint::CotangentPoint(const Vec4& x, const Vec4& y) : x_(x), y_(y) {
    if (std::abs(x.squaredNorm() - 1.0) > kConstraintTol)
        throw std::invalid_argument("CotangentPoint: |x.x - 1| exceeds 1e-12");
    if (std::abs(x.dot(y)) > kConstraintTol)
        throw std::invalid_argument("CotangentPoint: |x.y| exceeds 1e-12");
}

std::string family_name(Family family) {
    switch (family) {
        case Family::Ellipsoidal: return "ellipsoidal";
        case Family::Prolate: return "prolate";
        case Family::Oblate: return "oblate";
        case Family::Lame: return "lame";
        case Family::Spherical23: return "spherical";
        case Family::Cylindrical: return "cylindrical";
    }
    return "unknown";
}

SystemSpec SystemSpec::ellipsoidal(double e1, double e2, double e3, double e4,
                                   double two_h) {
    SystemSpec s;
    s.family = Family::Ellipsoidal;
    s.e = {e1, e2, e3, e4};
    s.two_h = two_h;
    s.validate();
    return s;
}

SystemSpec SystemSpec::prolate(double b, double two_h) {
    SystemSpec s;
    s.family = Family::Prolate;
    s.b = b;
    s.two_h = two_h;
    s.validate();
    return s;
}

SystemSpec SystemSpec::oblate(double a, double two_h) {
    SystemSpec s;
    s.family = Family::Oblate;
    s.a = a;
    s.two_h = two_h;
    s.validate();
    return s;
}

SystemSpec SystemSpec::lame(double f1, double f2, double f3, double two_h) {
    SystemSpec s;
    s.family = Family::Lame;
    s.f = {f1, f2, f3};
    s.two_h = two_h;
    s.validate();
    return s;
}

SystemSpec SystemSpec::spherical23(double two_h) {
    SystemSpec s;
    s.family = Family::Spherical23;
    s.two_h = two_h;
    s.validate();
    return s;
}

SystemSpec SystemSpec::cylindrical(double two_h) {
    SystemSpec s;
    s.family = Family::Cylindrical;
    s.two_h = two_h;
    s.validate();
    return s;
}

void SystemSpec::validate() const {
    if (!(two_h > 0)) throw_ordering("casimir level 2h > 0");
    switch (family) {
        case Family::Ellipsoidal:
            if (!(e[0] < e[1] && e[1] < e[2] && e[2] < e[3])) {
                std::ostringstream os;
                os << "ellipsoidal requires e1 < e2 < e3 < e4, got (" << e[0]
                   << ", " << e[1] << ", " << e[2] << ", " << e[3] << ")";
                throw_ordering(os.str());
            }
            break;
        case Family::Prolate:
            if (!(b > 1)) throw_ordering("prolate requires b > 1");
            break;
        case Family::Oblate:
            if (!(a > 1)) throw_ordering("oblate requires a > 1");
            break;
        case Family::Lame:
            if (!(f[0] < f[1] && f[1] < f[2]))
                throw_ordering("lame requires f1 < f2 < f3");
            if (!(f[0] >= 0)) throw_ordering("lame requires f1 >= 0");
            break;
        case Family::Spherical23:
        case Family::Cylindrical:
            break;
    }
}

}  // namespace staeckel
