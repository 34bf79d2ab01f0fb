#pragma once

#include <xt/common/exceptions.hpp>
#include <xt/common/string.hpp>

#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace xt::common {


// Flat, insertion-ordered key/value store with dotted key paths, an ini
// reader and typed extraction through the value grammar.  Subtrees remember
// where they were cut off so error messages can name the full path.
class Configuration
{
public:
  Configuration() = default;

  static Configuration from_ini(const std::string& text);
  static Configuration from_file(const std::string& path);

  // Later assignments override in place; a key may not be both a leaf and
  // a group prefix of another leaf.
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }

  template <class T>
    requires std::is_arithmetic_v<T>
  void set(const std::string& key, T value)
  {
    if constexpr (std::is_floating_point_v<T>)
      set(key, format_scalar(static_cast<double>(value)));
    else
      set(key, format_scalar(static_cast<long long>(value)));
  }

  bool has_key(const std::string& key) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // All leaf keys in insertion order.
  std::vector<std::string> keys() const;

  // Leaves under prefix, with the prefix removed, as their own tree.
  Configuration sub(const std::string& prefix) const;

  template <class T>
  T get(const std::string& key) const
  {
    return convert<T>(key, require(key));
  }

  template <class T>
  T get(const std::string& key, const T& default_value) const
  {
    if (!has_key(key))
      return default_value;
    return convert<T>(key, require(key));
  }

  std::string get_string(const std::string& key) const { return get<std::string>(key); }

  std::vector<double> get_vector(const std::string& key, std::size_t size = 0) const;
  std::vector<long long> get_integer_vector(const std::string& key, std::size_t size = 0) const;
  std::vector<std::vector<double>> get_matrix(const std::string& key, std::size_t rows = 0,
                                              std::size_t cols = 0) const;

  // Canonical ini text: one "key = value" line per leaf, full dotted paths,
  // insertion order.  Reparsing it yields an equal tree.
  std::string report() const;

  // Content equality, independent of insertion order.
  bool operator==(const Configuration& other) const;

private:
  const std::string& require(const std::string& key) const;
  std::string full_path(const std::string& key) const;

  template <class T>
  T convert(const std::string& key, const std::string& value) const;

  std::vector<std::pair<std::string, std::string>> entries_;
  std::string context_;
};


template <>
inline std::string Configuration::convert<std::string>(const std::string&,
                                                       const std::string& value) const
{
  return value;
}

template <class T>
T Configuration::convert(const std::string& key, const std::string& value) const
{
  static_assert(std::is_arithmetic_v<T>, "unsupported configuration value type");
  try {
    if constexpr (std::is_same_v<T, bool>) {
      const std::string body = trim(value);
      if (body == "true")
        return true;
      if (body == "false")
        return false;
      return parse_integer(body) != 0;
    } else if constexpr (std::is_floating_point_v<T>) {
      return static_cast<T>(parse_scalar(value));
    } else {
      return static_cast<T>(parse_integer(value));
    }
  } catch (const Exception& e) {
    throw ParseError("cannot read key '" + full_path(key) + "': " + e.what());
  }
}


} // namespace xt::common
