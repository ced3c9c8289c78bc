#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

#include "relcap/potential.hpp"

namespace relcap {

double grid_green_regular_part(const CartesianMask& mask, Point z, const GridBoundaryRule& rule,
                               const GridSolveOptions& options) {
  mask.validate();
  const GridBoundaryRule bc =
      rule ? rule : GridBoundaryRule([z](Point, Point ext) {
        return GridBoundary{std::log(std::abs(ext - z)), 1.0};
      });
  const int nx = mask.nx;
  const int ny = mask.ny;
  auto is_unknown = [&](int ix, int iy) {
    return ix > 0 && iy > 0 && ix < nx - 1 && iy < ny - 1 && mask.at(ix, iy);
  };

  const double fx = (z.real() - mask.bbox.xmin) / mask.dx() - 0.5;
  const double fy = (z.imag() - mask.bbox.ymin) / mask.dy() - 0.5;
  const int zx = static_cast<int>(std::lround(fx));
  const int zy = static_cast<int>(std::lround(fy));
  if (std::abs(fx - zx) > 1e-6 || std::abs(fy - zy) > 1e-6 || !is_unknown(zx, zy)) {
    throw SolverError("z must be an interior node of the domain mask");
  }

  std::vector<int> index(static_cast<std::size_t>(nx) * ny, -1);
  int unknowns = 0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      if (is_unknown(ix, iy)) {
        index[static_cast<std::size_t>(iy) * nx + ix] = unknowns++;
      }
    }
  }

  // Rows are the Shortley-Weller stencil scaled by the squared spacing of
  // each axis; with all fractions 1 this is the 5-point Laplacian.
  const double hx2 = 1.0 / (mask.dx() * mask.dx());
  const double hy2 = 1.0 / (mask.dy() * mask.dy());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(unknowns) * 5);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  for (int iy = 1; iy < ny - 1; ++iy) {
    for (int ix = 1; ix < nx - 1; ++ix) {
      const int row = index[static_cast<std::size_t>(iy) * nx + ix];
      if (row < 0) {
        continue;
      }
      const Point p = mask.cell_mid(ix, iy);
      const int nbx[4] = {ix + 1, ix - 1, ix, ix};
      const int nby[4] = {iy, iy, iy + 1, iy - 1};
      double theta[4];
      double value[4];
      int col[4];
      for (int k = 0; k < 4; ++k) {
        col[k] = index[static_cast<std::size_t>(nby[k]) * nx + nbx[k]];
        theta[k] = 1.0;
        value[k] = 0.0;
        if (col[k] < 0) {
          const GridBoundary b = bc(p, mask.cell_mid(nbx[k], nby[k]));
          theta[k] = std::clamp(b.fraction, 1e-6, 1.0);
          value[k] = b.value;
        }
      }
      double diag = 0.0;
      for (int axis = 0; axis < 2; ++axis) {
        const double scale = axis == 0 ? hx2 : hy2;
        const double t_plus = theta[2 * axis];
        const double t_minus = theta[2 * axis + 1];
        const double coeff[2] = {2.0 * scale / (t_plus * (t_plus + t_minus)),
                                 2.0 * scale / (t_minus * (t_plus + t_minus))};
        for (int side = 0; side < 2; ++side) {
          const int k = 2 * axis + side;
          diag += coeff[side];
          if (col[k] >= 0) {
            triplets.emplace_back(row, col[k], -coeff[side]);
          } else {
            rhs[row] += coeff[side] * value[k];
          }
        }
      }
      triplets.emplace_back(row, row, diag);
    }
  }

  Eigen::SparseMatrix<double, Eigen::RowMajor> a(unknowns, unknowns);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>, Eigen::IncompleteLUT<double>>
      solver;
  solver.preconditioner().setDroptol(1e-4);
  solver.preconditioner().setFillfactor(10);
  solver.setMaxIterations(options.max_iterations);
  solver.setTolerance(options.tolerance * 0.1);
  solver.compute(a);
  if (solver.info() != Eigen::Success) {
    throw SolverError("grid oracle preconditioner failed");
  }
  const Eigen::VectorXd u = solver.solve(rhs);
  const double bnorm = rhs.norm();
  const double residual = (rhs - a * u).norm() / (bnorm > 0.0 ? bnorm : 1.0);
  if (!(residual < options.tolerance)) {
    throw SolverError("grid oracle did not converge (relative residual " +
                      std::to_string(residual) + ")");
  }
  return u[index[static_cast<std::size_t>(zy) * nx + zx]];
}

double grid_log_inner_radius(const WalkDomain& w, Point z, const GridOracleOptions& options) {
  if (!w.contains(z)) {
    throw ValidationError("z must lie in the walk domain");
  }
  if (options.cells < 16) {
    throw ValidationError("grid oracle needs at least 16 cells");
  }
  CartesianMask mask;
  double h = 0.0;
  if (w.base == DomainTag::kUnitDisk) {
    h = 2.0 / options.cells;
    const int k = static_cast<int>(std::ceil((1.0 + std::max(std::abs(z.real()), std::abs(z.imag()))) / h)) + 2;
    mask.nx = mask.ny = 2 * k + 1;
    mask.bbox = {z.real() - (k + 0.5) * h, z.imag() - (k + 0.5) * h, z.real() + (k + 0.5) * h,
                 z.imag() + (k + 0.5) * h};
  } else {
    double extent = z.imag();
    if (auto box = w.obstacle.bounding_box()) {
      for (const Point c : {Point{box->xmin, box->ymin}, Point{box->xmax, box->ymax},
                            Point{box->xmin, box->ymax}, Point{box->xmax, box->ymin}}) {
        extent = std::max(extent, std::abs(c - Point{z.real(), 0.0}));
      }
    }
    const double half = options.window * extent;
    // The real axis is a node row and z a node.
    const int m = std::max(1, static_cast<int>(std::lround(z.imag() / (2.0 * half / options.cells))));
    h = z.imag() / m;
    const int k = static_cast<int>(std::ceil(half / h));
    mask.nx = 2 * k + 1;
    mask.ny = k + m + 1;
    mask.bbox = {z.real() - (k + 0.5) * h, -0.5 * h, z.real() + (k + 0.5) * h,
                 (mask.ny - 0.5) * h};
  }
  mask.cells.assign(static_cast<std::size_t>(mask.nx) * mask.ny, 0);
  for (int iy = 0; iy < mask.ny; ++iy) {
    for (int ix = 0; ix < mask.nx; ++ix) {
      mask.set(ix, iy, w.contains(mask.cell_mid(ix, iy)));
    }
  }
  const bool half_plane = w.base == DomainTag::kUpperHalfPlane;
  auto rule = [&](Point in, Point ext) -> GridBoundary {
    if (half_plane && w.contains(ext)) {
      // Outer frame of the H window.
      return {std::log(std::abs(ext - std::conj(z))), 1.0};
    }
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (w.contains(in + mid * (ext - in))) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const Point zeta = in + hi * (ext - in);
    return {std::log(std::abs(zeta - z)), hi};
  };
  return grid_green_regular_part(mask, z, rule, options.solve);
}

}  // namespace relcap
