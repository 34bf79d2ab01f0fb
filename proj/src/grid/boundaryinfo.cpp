#include <xt/grid/boundaryinfo.hpp>

#include <xt/common/exceptions.hpp>
#include <xt/common/float_cmp.hpp>

#include <cmath>

namespace xt::grid {

namespace {


BoundaryType type_from_word(const std::string& word)
{
  if (word == "dirichlet")
    return BoundaryType::dirichlet();
  if (word == "neumann")
    return BoundaryType::neumann();
  if (word == "robin")
    return BoundaryType::robin();
  throw ConfigError("unknown boundary type '" + word
                    + "', expected 'dirichlet', 'neumann' or 'robin'");
}


} // namespace


NormalBasedBoundaryInfo::NormalBasedBoundaryInfo(int dim, BoundaryType default_type,
                                                 double tolerance)
  : dim_(dim)
  , default_type_(std::move(default_type))
  , tolerance_(tolerance)
{}

void NormalBasedBoundaryInfo::add_rule(BoundaryType type, const Point& normal)
{
  double norm = 0.0;
  for (int i = 0; i < dim_; ++i)
    norm += normal[i] * normal[i];
  norm = std::sqrt(norm);
  if (!(norm > 0.0))
    throw ConfigError("boundary rule normals must not be zero");
  Point unit{0, 0, 0};
  for (int i = 0; i < dim_; ++i)
    unit[i] = normal[i] / norm;
  rules_.emplace_back(std::move(type), unit);
}

BoundaryType NormalBasedBoundaryInfo::type(const Intersection& intersection) const
{
  if (!intersection.boundary())
    return BoundaryType::none();
  const common::float_cmp::Compare cmp{common::float_cmp::Style::absolute, tolerance_, 0.0};
  for (const auto& [rule_type, rule_normal] : rules_) {
    bool matches = true;
    for (int i = 0; i < dim_ && matches; ++i)
      matches = common::float_cmp::eq(intersection.unit_outer_normal[i], rule_normal[i], cmp);
    if (matches)
      return rule_type;
  }
  return default_type_;
}


std::vector<std::string> BoundaryInfoFactory::available()
{
  return {"xt.grid.boundaryinfo.alldirichlet", "xt.grid.boundaryinfo.allneumann",
          "xt.grid.boundaryinfo.normalbased"};
}

std::unique_ptr<BoundaryInfo> BoundaryInfoFactory::create(const common::Configuration& config,
                                                          int dim)
{
  const auto type_id = config.get<std::string>("type");
  if (type_id == "xt.grid.boundaryinfo.alldirichlet")
    return std::make_unique<AllDirichletBoundaryInfo>();
  if (type_id == "xt.grid.boundaryinfo.allneumann")
    return std::make_unique<AllNeumannBoundaryInfo>();
  if (type_id == "xt.grid.boundaryinfo.normalbased") {
    auto info = std::make_unique<NormalBasedBoundaryInfo>(
        dim, type_from_word(config.get<std::string>("default")),
        config.get<double>("tolerance", 1e-10));
    // rules are numbered consecutively per type and checked in this order
    for (const std::string word : {"dirichlet", "neumann", "robin"}) {
      for (std::size_t k = 0;; ++k) {
        const std::string key = word + "." + std::to_string(k);
        if (!config.has_key(key))
          break;
        const auto normal = config.get_vector(key, static_cast<std::size_t>(dim));
        Point point{0, 0, 0};
        for (int i = 0; i < dim; ++i)
          point[i] = normal[i];
        info->add_rule(type_from_word(word), point);
      }
    }
    return info;
  }
  std::string known;
  for (const auto& id : available())
    known += (known.empty() ? "'" : ", '") + id + "'";
  throw FactoryError("unknown boundary info '" + type_id + "', available: " + known);
}


} // namespace xt::grid
