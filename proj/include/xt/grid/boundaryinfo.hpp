#pragma once

#include <xt/common/configuration.hpp>
#include <xt/grid/grid.hpp>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace xt::grid {


// Value type naming a kind of boundary condition; compares by id.
class BoundaryType
{
public:
  static BoundaryType dirichlet() { return BoundaryType("dirichlet boundary"); }
  static BoundaryType neumann() { return BoundaryType("neumann boundary"); }
  static BoundaryType robin() { return BoundaryType("robin boundary"); }
  static BoundaryType none() { return BoundaryType("no boundary"); }

  const std::string& id() const { return id_; }
  bool operator==(const BoundaryType&) const = default;

private:
  explicit BoundaryType(std::string id)
    : id_(std::move(id))
  {}

  std::string id_;
};


// Classifies intersections.  Everything that is not a boundary intersection
// (interior and periodic-wrap faces alike) reports "no boundary".
class BoundaryInfo
{
public:
  virtual ~BoundaryInfo() = default;
  virtual BoundaryType type(const Intersection& intersection) const = 0;
};

class AllDirichletBoundaryInfo : public BoundaryInfo
{
public:
  BoundaryType type(const Intersection& intersection) const override
  {
    return intersection.boundary() ? BoundaryType::dirichlet() : BoundaryType::none();
  }
};

class AllNeumannBoundaryInfo : public BoundaryInfo
{
public:
  BoundaryType type(const Intersection& intersection) const override
  {
    return intersection.boundary() ? BoundaryType::neumann() : BoundaryType::none();
  }
};

// Assigns a type per boundary face by matching the unit outer normal
// against a list of (type, normal) rules; unmatched faces fall back to the
// default type.  Rule normals are normalized on construction and matched
// componentwise with an absolute tolerance.
class NormalBasedBoundaryInfo : public BoundaryInfo
{
public:
  NormalBasedBoundaryInfo(int dim, BoundaryType default_type, double tolerance = 1e-10);

  void add_rule(BoundaryType type, const Point& normal);

  BoundaryType type(const Intersection& intersection) const override;

private:
  int dim_;
  BoundaryType default_type_;
  double tolerance_;
  std::vector<std::pair<BoundaryType, Point>> rules_;
};


struct BoundaryInfoFactory
{
  static std::vector<std::string> available();
  static std::unique_ptr<BoundaryInfo> create(const common::Configuration& config, int dim);
};


} // namespace xt::grid
