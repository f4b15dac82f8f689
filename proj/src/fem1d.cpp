#include "lub/fem1d.hpp"
#include "lub/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lub {

UniformMesh::UniformMesh(double left, double right, int elems)
    : a(left), b(right), n_elems(elems) {
    if (!(b > a))
        throw std::invalid_argument("mesh: right endpoint must exceed left");
    if (n_elems < 2)
        throw std::invalid_argument("mesh: need at least 2 elements");
}

NodalField::NodalField(UniformMesh m, std::vector<double> v)
    : mesh(m), values(std::move(v)) {
    if (static_cast<int>(values.size()) != mesh.n_nodes())
        throw std::invalid_argument("field: values length must equal node count");
}

NodalField solve_sturm_liouville(std::span<const double> D_mid,
                                 std::span<const double> f_mid,
                                 const UniformMesh& mesh,
                                 double u_a, double u_b) {
    const int ne = mesh.n_elems;
    if (static_cast<int>(D_mid.size()) != ne || static_cast<int>(f_mid.size()) != ne)
        throw std::invalid_argument("solve_sturm_liouville: midpoint array size mismatch");

    const double dx = mesh.dx();

    // Weak form: int D u' v' = -int f v.  Element stiffness D_e/dx, load f_e dx/2
    // per adjacent node. Interior unknowns 1..ne-1.
    const int ni = ne - 1;
    std::vector<double> diag(ni), rhs(ni);
    std::vector<double> off(ni > 0 ? ni - 1 : 0);  // sub/super (symmetric)

    for (int e = 0; e < ne; ++e) {
        if (D_mid[e] == 0.0)
            throw SolverError("singular_system",
                              "solve_sturm_liouville: zero coefficient at element midpoint");
    }

    for (int i = 0; i < ni; ++i) {
        const double kl = D_mid[i] / dx;       // element i (nodes i, i+1)
        const double kr = D_mid[i + 1] / dx;   // element i+1 (nodes i+1, i+2)
        diag[i] = kl + kr;
        rhs[i] = -(f_mid[i] + f_mid[i + 1]) * dx / 2.0;
    }
    for (int i = 0; i + 1 < ni; ++i)
        off[i] = -D_mid[i + 1] / dx;

    // Dirichlet lift.
    if (ni > 0) {
        rhs[0] += (D_mid[0] / dx) * u_a;
        rhs[ni - 1] += (D_mid[ne - 1] / dx) * u_b;
    }

    // Thomas elimination.
    std::vector<double> c(ni), d(ni);
    for (int i = 0; i < ni; ++i) {
        const double lower = (i > 0) ? off[i - 1] : 0.0;
        const double denom = diag[i] - ((i > 0) ? lower * c[i - 1] : 0.0);
        if (denom == 0.0)
            throw SolverError("singular_system", "solve_sturm_liouville: zero pivot");
        c[i] = (i + 1 < ni) ? off[i] / denom : 0.0;
        d[i] = (rhs[i] - ((i > 0) ? lower * d[i - 1] : 0.0)) / denom;
    }

    std::vector<double> u(mesh.n_nodes());
    u.front() = u_a;
    u.back() = u_b;
    for (int i = ni - 1; i >= 0; --i)
        u[i + 1] = d[i] - ((i + 1 < ni) ? c[i] * u[i + 2] : 0.0);

    return NodalField(mesh, std::move(u));
}

NodalField solve_sturm_liouville(const std::function<double(double)>& D,
                                 const std::function<double(double)>& f,
                                 const UniformMesh& mesh,
                                 double u_a, double u_b) {
    std::vector<double> D_mid(mesh.n_elems), f_mid(mesh.n_elems);
    for (int e = 0; e < mesh.n_elems; ++e) {
        const double m = mesh.midpoint(e);
        D_mid[e] = D(m);
        f_mid[e] = f(m);
    }
    return solve_sturm_liouville(D_mid, f_mid, mesh, u_a, u_b);
}

std::vector<double> gradient(const NodalField& field) {
    const double dx = field.mesh.dx();
    std::vector<double> g(field.mesh.n_elems);
    for (int e = 0; e < field.mesh.n_elems; ++e)
        g[e] = (field.values[e + 1] - field.values[e]) / dx;
    return g;
}

std::vector<double> nodal_gradient(const NodalField& field) {
    const std::vector<double> g = gradient(field);
    const int nn = field.mesh.n_nodes();
    std::vector<double> gn(nn);
    gn.front() = g.front();
    gn.back() = g.back();
    for (int i = 1; i + 1 < nn; ++i)
        gn[i] = 0.5 * (g[i - 1] + g[i]);
    return gn;
}

double l2_norm(const NodalField& field) {
    const double dx = field.mesh.dx();
    double acc = 0.0;
    for (int i = 0; i < field.mesh.n_nodes(); ++i) {
        const double w = (i == 0 || i == field.mesh.n_nodes() - 1) ? 0.5 : 1.0;
        acc += w * field.values[i] * field.values[i];
    }
    return std::sqrt(acc * dx);
}

namespace {

// Linear interpolation of a nodal field, zero beyond the right endpoint.
double sample_zero_extended(const NodalField& f, double x) {
    const double dx = f.mesh.dx();
    if (x >= f.mesh.b)
        return (x <= f.mesh.b + 1e-12 * dx) ? f.values.back() : 0.0;
    const double s = (x - f.mesh.a) / dx;
    int e = static_cast<int>(std::floor(s));
    e = std::clamp(e, 0, f.mesh.n_elems - 1);
    const double t = s - e;
    return (1.0 - t) * f.values[e] + t * f.values[e + 1];
}

} // namespace

double l2_diff(const NodalField& current, const NodalField& previous) {
    const double scale = std::max(std::abs(current.mesh.a), current.mesh.dx());
    if (std::abs(current.mesh.a - previous.mesh.a) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("l2_diff: fields must share the left endpoint");

    const double dx = current.mesh.dx();
    double acc = 0.0;
    for (int i = 0; i < current.mesh.n_nodes(); ++i) {
        const double x = current.mesh.node(i);
        const double d = current.values[i] - sample_zero_extended(previous, x);
        const double w = (i == 0 || i == current.mesh.n_nodes() - 1) ? 0.5 : 1.0;
        acc += w * d * d;
    }
    return std::sqrt(acc * dx);
}

} // namespace lub
