#include "lub/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lub {

CylinderPlaneGeometry::CylinderPlaneGeometry(double radius, double min_gap)
    : R(radius), h0(min_gap) {
    if (!(R > 0.0))
        throw std::invalid_argument("geometry: R must be positive");
    if (!(h0 > 0.0))
        throw std::invalid_argument("geometry: h0 must be positive");
    n = -R / (h0 + R);
    if (!(n > -1.0 && n < 0.0))
        throw std::invalid_argument("geometry: derived n outside (-1, 0)");
}

double CylinderPlaneGeometry::film_thickness(double theta) const {
    return -(R / n) * (1.0 + n * std::cos(theta));
}

double CylinderPlaneGeometry::dh_dtheta(double theta) const {
    return R * std::sin(theta);
}

double CylinderPlaneGeometry::dtheta_dx(double theta) const {
    const double c = std::cos(theta);
    if (c == 0.0 || std::abs(theta) >= std::numbers::pi / 2.0)
        throw std::domain_error("dtheta_dx: singular at |theta| = pi/2");
    return 1.0 / (R * c);
}

} // namespace lub
