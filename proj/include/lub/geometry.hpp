#pragma once

namespace lub {

/// Rigid cylinder of radius R rolling on a plane, minimum gap h0 at theta = 0.
/// The film thickness is parametrized by the angular coordinate theta with
/// x = R sin(theta); the admissible window is [-pi/2, pi/2].
struct CylinderPlaneGeometry {
    double R = 0.0;   // cylinder radius [m]
    double h0 = 0.0;  // minimum film thickness [m]
    double n = 0.0;   // -R/(h0+R), in (-1, 0)

    CylinderPlaneGeometry(double radius, double min_gap);

    /// h(theta) = -(R/n)(1 + n cos theta); equals h0 + R(1 - cos theta).
    double film_thickness(double theta) const;

    /// dh/dtheta = R sin theta.
    double dh_dtheta(double theta) const;

    /// dtheta/dx = 1/(R cos theta); singular at |theta| = pi/2.
    double dtheta_dx(double theta) const;
};

/// Tangential wall speeds: U0 on the plane (y = 0), Uh on the cylinder surface.
struct Kinematics {
    double U0 = 0.0;  // [m/s]
    double Uh = 0.0;  // [m/s]
};

} // namespace lub
