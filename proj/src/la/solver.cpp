#include <xt/la/solver.hpp>

#include <algorithm>
#include <cmath>

namespace xt::la {

namespace {


bool known_type(const std::vector<std::string>& types, const std::string& type)
{
  return std::find(types.begin(), types.end(), type) != types.end();
}

std::string join_quoted(const std::vector<std::string>& items)
{
  std::string out;
  for (const auto& item : items)
    out += (out.empty() ? "'" : ", '") + item + "'";
  return out;
}

void check_finite(const std::vector<double>& values, const char* what)
{
  for (double value : values)
    if (!std::isfinite(value))
      throw SolverError(SolverFailureKind::inf_or_nan,
                        std::string(what) + " contains inf or nan entries");
}

// max_ij |a_ij - a_ji| <= tol * (1 + max_ij |a_ij|)
void check_symmetry(const DenseMatrix& matrix, double tol)
{
  double max_entry = 0.0;
  double max_asymmetry = 0.0;
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      max_entry = std::max(max_entry, std::abs(matrix.get_entry(i, j)));
      max_asymmetry =
          std::max(max_asymmetry, std::abs(matrix.get_entry(i, j) - matrix.get_entry(j, i)));
    }
  if (max_asymmetry > tol * (1.0 + max_entry))
    throw SolverError(SolverFailureKind::pre_check_failed,
                      "matrix is not symmetric (max asymmetry "
                          + common::format_scalar(max_asymmetry) + ", tolerance "
                          + common::format_scalar(tol * (1.0 + max_entry)) + ")");
}

void check_symmetry(const CsrMatrix& matrix, double tol)
{
  double max_entry = 0.0;
  double max_asymmetry = 0.0;
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j : matrix.pattern().inner(i)) {
      max_entry = std::max(max_entry, std::abs(matrix.get_entry(i, j)));
      max_asymmetry =
          std::max(max_asymmetry, std::abs(matrix.get_entry(i, j) - matrix.get_entry(j, i)));
    }
  if (max_asymmetry > tol * (1.0 + max_entry))
    throw SolverError(SolverFailureKind::pre_check_failed,
                      "matrix is not symmetric (max asymmetry "
                          + common::format_scalar(max_asymmetry) + ", tolerance "
                          + common::format_scalar(tol * (1.0 + max_entry)) + ")");
}


// ----- dense direct solvers on row-major work copies ------------------------

void solve_lu(std::vector<double> a, std::size_t n, std::vector<double> b, std::vector<double>& x)
{
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[pivot * n + k]))
        pivot = i;
    if (a[pivot * n + k] == 0.0)
      throw SolverError(SolverFailureKind::did_not_converge,
                        "lu factorization hit a zero pivot, matrix is singular");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a[k * n + j], a[pivot * n + j]);
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = a[i * n + k] / a[k * n + k];
      a[i * n + k] = 0.0;
      for (std::size_t j = k + 1; j < n; ++j)
        a[i * n + j] -= factor * a[k * n + j];
      b[i] -= factor * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double sum = b[i];
    for (std::size_t j = i + 1; j < n; ++j)
      sum -= a[i * n + j] * x[j];
    x[i] = sum / a[i * n + i];
  }
}

void solve_qr(std::vector<double> a, std::size_t n, std::vector<double> b, std::vector<double>& x)
{
  std::vector<double> v(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i)
      norm += a[i * n + k] * a[i * n + k];
    norm = std::sqrt(norm);
    if (norm == 0.0)
      throw SolverError(SolverFailureKind::did_not_converge,
                        "qr factorization hit a zero column, matrix is singular");
    const double alpha = a[k * n + k] >= 0.0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = a[i * n + k];
      if (i == k)
        v[i] -= alpha;
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 > 0.0) {
      // reflect the trailing columns and the right hand side
      for (std::size_t j = k; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i)
          dot += v[i] * a[i * n + j];
        const double factor = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < n; ++i)
          a[i * n + j] -= factor * v[i];
      }
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i)
        dot += v[i] * b[i];
      const double factor = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < n; ++i)
        b[i] -= factor * v[i];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    if (a[i * n + i] == 0.0)
      throw SolverError(SolverFailureKind::did_not_converge,
                        "qr back substitution hit a zero diagonal, matrix is singular");
    double sum = b[i];
    for (std::size_t j = i + 1; j < n; ++j)
      sum -= a[i * n + j] * x[j];
    x[i] = sum / a[i * n + i];
  }
}

void solve_ldlt(const std::vector<double>& a, std::size_t n, std::vector<double> b,
                std::vector<double>& x)
{
  std::vector<double> unit_lower(n * n, 0.0);
  std::vector<double> diagonal(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k)
      d -= unit_lower[j * n + k] * unit_lower[j * n + k] * diagonal[k];
    if (d == 0.0)
      throw SolverError(SolverFailureKind::did_not_converge,
                        "ldlt factorization hit a zero pivot, matrix is singular");
    diagonal[j] = d;
    unit_lower[j * n + j] = 1.0;
    for (std::size_t i = j + 1; i < n; ++i) {
      double sum = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k)
        sum -= unit_lower[i * n + k] * unit_lower[j * n + k] * diagonal[k];
      unit_lower[i * n + j] = sum / d;
    }
  }
  // L z = b, D y = z, L^T x = y
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k)
      b[i] -= unit_lower[i * n + k] * b[k];
  for (std::size_t i = 0; i < n; ++i)
    b[i] /= diagonal[i];
  x = std::move(b);
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t k = i + 1; k < n; ++k)
      x[i] -= unit_lower[k * n + i] * x[k];
}


// ----- iterative solvers on csr ---------------------------------------------

struct RawCsr
{
  explicit RawCsr(const CsrMatrix& matrix)
    : values(matrix.values())
  {
    offsets.reserve(matrix.rows() + 1);
    offsets.push_back(0);
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
      const auto& inner = matrix.pattern().inner(i);
      columns.insert(columns.end(), inner.begin(), inner.end());
      offsets.push_back(columns.size());
    }
  }

  void mv(const std::vector<double>& x, std::vector<double>& y) const
  {
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
      double sum = 0.0;
      for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
        sum += values[k] * x[columns[k]];
      y[i] = sum;
    }
  }

  std::vector<std::size_t> offsets;
  std::vector<std::size_t> columns;
  const std::vector<double>& values;
};

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += a[i] * b[i];
  return sum;
}

double norm2(const std::vector<double>& a)
{
  return std::sqrt(dot(a, a));
}

// Jacobi scaling; rows with a zero diagonal are left unscaled.
std::vector<double> inverse_diagonal(const CsrMatrix& matrix)
{
  std::vector<double> inverse(matrix.rows(), 1.0);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const double d = matrix.get_entry(i, i);
    if (d != 0.0)
      inverse[i] = 1.0 / d;
  }
  return inverse;
}

struct IterationResult
{
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

[[noreturn]] void fail_no_convergence(std::size_t iterations, double residual, double precision)
{
  throw SolverError(SolverFailureKind::did_not_converge,
                    "no convergence within " + std::to_string(iterations)
                        + " iterations (relative residual "
                        + common::format_scalar(residual) + ", requested "
                        + common::format_scalar(precision) + ")");
}

IterationResult solve_cg(const RawCsr& matrix, const std::vector<double>& rhs,
                         std::vector<double>& x, const std::vector<double>* scaling,
                         std::size_t max_iter, double precision)
{
  const std::size_t n = rhs.size();
  x.assign(n, 0.0);
  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0)
    return {0, 0.0};

  std::vector<double> r = rhs;
  std::vector<double> z(n), p(n), q(n);
  auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = scaling ? (*scaling)[i] * in[i] : in[i];
  };
  precondition(r, z);
  p = z;
  double rz = dot(r, z);
  double residual = 1.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    matrix.mv(p, q);
    const double pq = dot(p, q);
    if (pq == 0.0 || !std::isfinite(pq))
      throw SolverError(SolverFailureKind::did_not_converge, "cg breakdown, <p, Ap> is "
                                                                 + common::format_scalar(pq));
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    residual = norm2(r) / rhs_norm;
    if (residual <= precision)
      return {it, residual};
    precondition(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i)
      p[i] = z[i] + beta * p[i];
  }
  fail_no_convergence(max_iter, residual, precision);
}

IterationResult solve_bicgstab(const RawCsr& matrix, const std::vector<double>& rhs,
                               std::vector<double>& x, const std::vector<double>* scaling,
                               std::size_t max_iter, double precision)
{
  const std::size_t n = rhs.size();
  x.assign(n, 0.0);
  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0)
    return {0, 0.0};

  std::vector<double> r = rhs;
  const std::vector<double> r_hat = rhs;
  std::vector<double> p(n, 0.0), v(n, 0.0), p_hat(n), s(n), s_hat(n), t(n);
  auto precondition = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = scaling ? (*scaling)[i] * in[i] : in[i];
  };
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  double residual = 1.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    const double rho_next = dot(r_hat, r);
    if (rho_next == 0.0)
      throw SolverError(SolverFailureKind::did_not_converge, "bicgstab breakdown, rho is zero");
    if (it == 1) {
      p = r;
    } else {
      const double beta = (rho_next / rho) * (alpha / omega);
      for (std::size_t i = 0; i < n; ++i)
        p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    rho = rho_next;
    precondition(p, p_hat);
    matrix.mv(p_hat, v);
    const double rv = dot(r_hat, v);
    if (rv == 0.0 || !std::isfinite(rv))
      throw SolverError(SolverFailureKind::did_not_converge,
                        "bicgstab breakdown, <r_hat, Ap> is " + common::format_scalar(rv));
    alpha = rho / rv;
    for (std::size_t i = 0; i < n; ++i)
      s[i] = r[i] - alpha * v[i];
    residual = norm2(s) / rhs_norm;
    if (residual <= precision) {
      for (std::size_t i = 0; i < n; ++i)
        x[i] += alpha * p_hat[i];
      return {it, residual};
    }
    precondition(s, s_hat);
    matrix.mv(s_hat, t);
    const double tt = dot(t, t);
    if (tt == 0.0)
      throw SolverError(SolverFailureKind::did_not_converge, "bicgstab breakdown, ||As|| is zero");
    omega = dot(t, s) / tt;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p_hat[i] + omega * s_hat[i];
      r[i] = s[i] - omega * t[i];
    }
    residual = norm2(r) / rhs_norm;
    if (residual <= precision)
      return {it, residual};
    if (omega == 0.0)
      throw SolverError(SolverFailureKind::did_not_converge, "bicgstab breakdown, omega is zero");
  }
  fail_no_convergence(max_iter, residual, precision);
}


// ----- shared driver pieces --------------------------------------------------

std::vector<double> to_raw(const DenseVector& vector)
{
  return vector.storage();
}

DenseVector from_raw(const std::vector<double>& values)
{
  DenseVector result(values.size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i)
    result.set_entry(i, values[i]);
  return result;
}

template <class MatrixType>
void check_shapes(const MatrixType& matrix, const DenseVector& rhs)
{
  if (matrix.rows() != matrix.cols())
    throw SolverError(SolverFailureKind::shape_mismatch,
                      "matrix is not square (" + std::to_string(matrix.rows()) + "x"
                          + std::to_string(matrix.cols()) + ")");
  if (rhs.size() != matrix.rows())
    throw SolverError(SolverFailureKind::shape_mismatch,
                      "rhs has " + std::to_string(rhs.size()) + " entries but the matrix has "
                          + std::to_string(matrix.rows()) + " rows");
}

std::string read_type(const common::Configuration& options,
                      const std::vector<std::string>& available)
{
  if (!options.has_key("type"))
    throw SolverError(SolverFailureKind::unknown_type, "solver options do not name a type");
  const auto type = options.get<std::string>("type");
  if (!known_type(available, type))
    throw SolverError(SolverFailureKind::unknown_type,
                      "'" + type + "' is not a known solver type, available: "
                          + join_quoted(available));
  return type;
}

// ||Ax - b||_oo <= tol * (1 + ||b||_oo), plus the 2-norm ratio for reporting
template <class MatrixType>
double run_post_check(const MatrixType& matrix, const std::vector<double>& x,
                      const DenseVector& rhs, double tolerance)
{
  const DenseVector residual_base = matrix.mv(from_raw(x));
  double sup = 0.0, l2 = 0.0, rhs_sup = 0.0, rhs_l2 = 0.0;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    const double r = residual_base.get_entry(i) - rhs.get_entry(i);
    sup = std::max(sup, std::abs(r));
    l2 += r * r;
    rhs_sup = std::max(rhs_sup, std::abs(rhs.get_entry(i)));
    rhs_l2 += rhs.get_entry(i) * rhs.get_entry(i);
  }
  if (tolerance > 0.0 && sup > tolerance * (1.0 + rhs_sup))
    throw SolverError(SolverFailureKind::post_check_failed,
                      "the computed solution does not solve the system (sup residual "
                          + common::format_scalar(sup) + ", tolerance "
                          + common::format_scalar(tolerance * (1.0 + rhs_sup)) + ")");
  return std::sqrt(l2) / (rhs_l2 > 0.0 ? std::sqrt(rhs_l2) : 1.0);
}

common::Configuration base_options(const std::string& type)
{
  common::Configuration options;
  options.set("type", type);
  options.set("post_check_solves_system", 1e-5);
  options.set("check_for_inf_nan", 1);
  return options;
}


} // namespace


const char* to_string(SolverFailureKind kind)
{
  switch (kind) {
    case SolverFailureKind::pre_check_failed:
      return "pre_check_failed";
    case SolverFailureKind::did_not_converge:
      return "did_not_converge";
    case SolverFailureKind::inf_or_nan:
      return "inf_or_nan";
    case SolverFailureKind::post_check_failed:
      return "post_check_failed";
    case SolverFailureKind::unknown_type:
      return "unknown_type";
    case SolverFailureKind::shape_mismatch:
      return "shape_mismatch";
  }
  return "unknown";
}


std::vector<std::string> Solver<DenseMatrix>::types()
{
  return {"lu.partialpiv", "qr.householder", "ldlt"};
}

common::Configuration Solver<DenseMatrix>::options(const std::string& type)
{
  const auto available = types();
  const std::string chosen = type.empty() ? available[0] : type;
  if (!known_type(available, chosen))
    throw SolverError(SolverFailureKind::unknown_type,
                      "'" + chosen + "' is not a known solver type, available: "
                          + join_quoted(available));
  auto result = base_options(chosen);
  if (chosen == "ldlt")
    result.set("pre_check_symmetry", 1e-8);
  return result;
}

SolverReport Solver<DenseMatrix>::apply(const DenseVector& rhs, DenseVector& solution) const
{
  return apply(rhs, solution, types()[0]);
}

SolverReport Solver<DenseMatrix>::apply(const DenseVector& rhs, DenseVector& solution,
                                        const std::string& type) const
{
  return apply(rhs, solution, options(type));
}

SolverReport Solver<DenseMatrix>::apply(const DenseVector& rhs, DenseVector& solution,
                                        const common::Configuration& opts) const
{
  const std::string type = read_type(opts, types());
  check_shapes(matrix_, rhs);
  const bool inf_nan = opts.get<bool>("check_for_inf_nan", true);
  if (inf_nan) {
    check_finite(matrix_.storage(), "the matrix");
    check_finite(rhs.storage(), "the rhs");
  }
  const double symmetry_tol = opts.get<double>("pre_check_symmetry", 0.0);
  if (symmetry_tol > 0.0)
    check_symmetry(matrix_, symmetry_tol);

  const std::size_t n = matrix_.rows();
  std::vector<double> x;
  if (type == "lu.partialpiv")
    solve_lu(matrix_.storage(), n, to_raw(rhs), x);
  else if (type == "qr.householder")
    solve_qr(matrix_.storage(), n, to_raw(rhs), x);
  else
    solve_ldlt(matrix_.storage(), n, to_raw(rhs), x);

  if (inf_nan)
    check_finite(x, "the solution");
  SolverReport report;
  report.type = type;
  report.iterations = 0;
  report.relative_residual =
      run_post_check(matrix_, x, rhs, opts.get<double>("post_check_solves_system", 1e-5));
  solution = from_raw(x);
  return report;
}


std::vector<std::string> Solver<CsrMatrix>::types()
{
  return {"bicgstab.diagonal", "bicgstab.identity", "cg.diagonal", "cg.identity"};
}

common::Configuration Solver<CsrMatrix>::options(const std::string& type)
{
  const auto available = types();
  const std::string chosen = type.empty() ? available[0] : type;
  if (!known_type(available, chosen))
    throw SolverError(SolverFailureKind::unknown_type,
                      "'" + chosen + "' is not a known solver type, available: "
                          + join_quoted(available));
  auto result = base_options(chosen);
  result.set("max_iter", 1000);
  result.set("precision", 1e-14);
  return result;
}

SolverReport Solver<CsrMatrix>::apply(const DenseVector& rhs, DenseVector& solution) const
{
  return apply(rhs, solution, types()[0]);
}

SolverReport Solver<CsrMatrix>::apply(const DenseVector& rhs, DenseVector& solution,
                                      const std::string& type) const
{
  return apply(rhs, solution, options(type));
}

SolverReport Solver<CsrMatrix>::apply(const DenseVector& rhs, DenseVector& solution,
                                      const common::Configuration& opts) const
{
  const std::string type = read_type(opts, types());
  check_shapes(matrix_, rhs);
  const bool inf_nan = opts.get<bool>("check_for_inf_nan", true);
  if (inf_nan) {
    check_finite(matrix_.values(), "the matrix");
    check_finite(rhs.storage(), "the rhs");
  }
  const double symmetry_tol = opts.get<double>("pre_check_symmetry", 0.0);
  if (symmetry_tol > 0.0)
    check_symmetry(matrix_, symmetry_tol);

  const auto max_iter = static_cast<std::size_t>(opts.get<long long>("max_iter", 1000));
  const double precision = opts.get<double>("precision", 1e-14);
  const RawCsr raw(matrix_);
  std::vector<double> scaling_storage;
  const std::vector<double>* scaling = nullptr;
  if (type == "cg.diagonal" || type == "bicgstab.diagonal") {
    scaling_storage = inverse_diagonal(matrix_);
    scaling = &scaling_storage;
  }

  std::vector<double> x;
  IterationResult iteration;
  if (type == "cg.diagonal" || type == "cg.identity")
    iteration = solve_cg(raw, to_raw(rhs), x, scaling, max_iter, precision);
  else
    iteration = solve_bicgstab(raw, to_raw(rhs), x, scaling, max_iter, precision);

  if (inf_nan)
    check_finite(x, "the solution");
  SolverReport report;
  report.type = type;
  report.iterations = iteration.iterations;
  run_post_check(matrix_, x, rhs, opts.get<double>("post_check_solves_system", 1e-5));
  report.relative_residual = iteration.relative_residual;
  solution = from_raw(x);
  return report;
}


} // namespace xt::la
