#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lub {

struct UniformMesh {
    double a = 0.0;
    double b = 1.0;
    int n_elems = 0;

    UniformMesh() = default;
    UniformMesh(double left, double right, int elems);

    double dx() const { return (b - a) / n_elems; }
    int n_nodes() const { return n_elems + 1; }
    double node(int i) const { return a + i * dx(); }
    double midpoint(int e) const { return a + (e + 0.5) * dx(); }
};

struct NodalField {
    UniformMesh mesh;
    std::vector<double> values;  // size n_nodes()

    NodalField() = default;
    NodalField(UniformMesh m, std::vector<double> v);
};

/// Galerkin P1 solution of d/dxi [ D(xi) du/dxi ] = f(xi) with Dirichlet data
/// u(a) = u_a, u(b) = u_b. One-point midpoint quadrature for both the
/// coefficient and the load; interior system solved by Thomas elimination.
/// Throws SolverError("singular_system") if any D(midpoint) = 0 or a zero
/// pivot is met.
NodalField solve_sturm_liouville(const std::function<double(double)>& D,
                                 const std::function<double(double)>& f,
                                 const UniformMesh& mesh,
                                 double u_a, double u_b);

/// Same, with coefficient and load already evaluated at element midpoints.
NodalField solve_sturm_liouville(std::span<const double> D_mid,
                                 std::span<const double> f_mid,
                                 const UniformMesh& mesh,
                                 double u_a, double u_b);

/// Element-wise constant derivative (u_{e+1} - u_e)/dx, size n_elems.
std::vector<double> gradient(const NodalField& field);

/// Nodal derivative recovery: interior nodes average the two adjacent element
/// gradients, boundary nodes take the one-sided element value.
std::vector<double> nodal_gradient(const NodalField& field);

/// Trapezoidal L2 norm of the field over its mesh.
double l2_norm(const NodalField& field);

/// L2 norm of (current - previous) over the CURRENT field's domain.
/// The previous field is sampled by linear interpolation at the current
/// nodes and extended by zero beyond its right endpoint; both fields must
/// share the left endpoint. Trapezoidal quadrature of the squared difference.
double l2_diff(const NodalField& current, const NodalField& previous);

} // namespace lub
