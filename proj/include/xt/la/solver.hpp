#pragma once

#include <xt/common/configuration.hpp>
#include <xt/common/exceptions.hpp>
#include <xt/la/containers.hpp>

#include <string>
#include <vector>

namespace xt::la {


enum class SolverFailureKind
{
  pre_check_failed,
  did_not_converge,
  inf_or_nan,
  post_check_failed,
  unknown_type,
  shape_mismatch
};

const char* to_string(SolverFailureKind kind);

// what() always starts with the kind's name, so callers that only see the
// message still learn what went wrong.
class SolverError : public Exception
{
public:
  SolverError(SolverFailureKind kind, const std::string& message)
    : Exception(std::string(to_string(kind)) + ": " + message)
    , kind_(kind)
  {}

  SolverFailureKind kind() const { return kind_; }

private:
  SolverFailureKind kind_;
};

// Iteration data of the last solve; direct solvers report 0 iterations and
// the recomputed relative residual.
struct SolverReport
{
  std::string type;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};


// One solver front end per matrix type.  An options tree selects the
// algorithm and the safety checks around it:
//   check_for_inf_nan      scan matrix/rhs before and solution after
//   pre_check_symmetry     if > 0: max asymmetry <= tol * (1 + max entry)
//   post_check_solves_system  if > 0: ||Ax-b||_oo <= tol * (1 + ||b||_oo)
template <class MatrixType>
class Solver;


template <>
class Solver<DenseMatrix>
{
public:
  explicit Solver(const DenseMatrix& matrix)
    : matrix_(matrix)
  {}

  static std::vector<std::string> types();
  static common::Configuration options(const std::string& type = "");

  SolverReport apply(const DenseVector& rhs, DenseVector& solution) const;
  SolverReport apply(const DenseVector& rhs, DenseVector& solution,
                     const std::string& type) const;
  SolverReport apply(const DenseVector& rhs, DenseVector& solution,
                     const common::Configuration& options) const;

private:
  DenseMatrix matrix_;
};


template <>
class Solver<CsrMatrix>
{
public:
  explicit Solver(const CsrMatrix& matrix)
    : matrix_(matrix)
  {}

  static std::vector<std::string> types();
  static common::Configuration options(const std::string& type = "");

  SolverReport apply(const DenseVector& rhs, DenseVector& solution) const;
  SolverReport apply(const DenseVector& rhs, DenseVector& solution,
                     const std::string& type) const;
  SolverReport apply(const DenseVector& rhs, DenseVector& solution,
                     const common::Configuration& options) const;

private:
  CsrMatrix matrix_;
};


} // namespace xt::la
