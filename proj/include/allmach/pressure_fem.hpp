#pragma once

#include <vector>

#include "allmach/bc.hpp"
#include "allmach/fields.hpp"
#include "allmach/transport.hpp"

namespace allmach {

// Symmetric sparse matrix in CSR form over the pressure unknowns.
struct SparseMatrix {
    int n = 0;
    std::vector<int> row_ptr, col;
    std::vector<double> val;

    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    double coeff(int r, int c) const;
};

struct PressureSystem {
    SparseMatrix A;  // M/(gamma-1) + dt^2 K_H
    std::vector<double> b;
    std::vector<char> dirichlet;
    bool zero_mean = false;
    const std::vector<double>* weights = nullptr;  // lumped dof areas for the mean
};

struct CGResult {
    int iters = 0;
    double rel_residual = 0.0;
};

// Conjugate gradients with a positive-curvature guard. Deterministic for any
// thread count (blocked reductions).
CGResult solve_spd(const PressureSystem& sys, std::vector<double>& x, double tol = 1e-10,
                   int max_iter = -1);

// Area-weighted transfer of dual-cell values to primal triangles; each
// triangle averages the three subelement (edge) values.
std::vector<double> dual_to_primal(const std::vector<double>& cell_vals, const PrimalMesh& primal,
                                   const DualMesh& dual);

struct ProjectionOptions {
    int n_pic = 2;
    double cg_tol = 1e-10;
    int cg_max_factor = 10;          // max iterations = factor * n_dofs
    bool zero_mean = false;          // project out the mean pressure correction
    bool energy_increment = false;   // low-dissipation energy update variant
};

struct ProjectionResult {
    std::vector<double> P;             // vertex pressure at the new time
    std::vector<double> dP;            // last pressure correction
    std::vector<double> mom_x, mom_y;  // corrected momentum per dual cell
    std::vector<double> E;             // updated total energy density per dual cell
    int cg_iters = 0;
    double cg_residual = 0.0;
};

class PressureSolver {
public:
    PressureSolver(const PrimalMesh& primal, const DualMesh& dual);

    // Pre-projection transfers, Picard iterations on the pressure correction,
    // momentum correction, and the post-projection energy update.
    ProjectionResult run(const TransportResult& tr, const FieldSet& fn, const FluidParams& par,
                         const BoundaryTable& bcs, double dt, double time,
                         const ProjectionOptions& opt,
                         const std::vector<double>* warm_start = nullptr) const;

    PressureSystem assemble(const std::vector<double>& H_tri, const std::vector<double>& rhoK_tri,
                            const std::vector<double>& We_tri, const std::vector<Vec2>& Wu_tri,
                            const std::vector<double>& Pn, const std::vector<double>& H_cell,
                            const FluidParams& par, const BoundaryTable& bcs, double dt,
                            double time, bool zero_mean) const;

    const SparseMatrix& pattern() const { return pattern_; }

private:
    int primal_owner(int edge) const;

    const PrimalMesh& pm_;
    const DualMesh& dm_;
    SparseMatrix pattern_;                                 // values unused
    std::vector<std::vector<std::pair<int, int>>> dof_tris_;   // dof -> (tri, local vertex)
    std::vector<std::vector<int>> dof_bedges_;             // dof -> boundary primal edges
    std::vector<Vec2> grad_phi_;                           // 3 per triangle
};

// Total-energy update after the Picard loop. The divergence of the enthalpy
// flux is accumulated on primal cells and interpolated back to the dual mesh,
// either through the full field (base) or through the increment only.
std::vector<double> post_projection_energy(const std::vector<double>& We_dual,
                                           const std::vector<double>& We_tri,
                                           const std::vector<double>& H_cell,
                                           const std::vector<double>& mom_x,
                                           const std::vector<double>& mom_y,
                                           const PrimalMesh& primal, const DualMesh& dual,
                                           const FluidParams& par, const BoundaryTable& bcs,
                                           double dt, double time, bool increment_variant);

} // namespace allmach
