#include <xt/common/configuration.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace xt::common {

namespace {


void check_key_segments(const std::string& key)
{
  if (key.empty())
    throw UsageError("configuration keys must not be empty");
  std::size_t begin = 0;
  while (true) {
    const std::size_t dot = key.find('.', begin);
    const std::size_t end = (dot == std::string::npos) ? key.size() : dot;
    if (end == begin)
      throw UsageError("configuration key '" + key + "' contains an empty segment");
    if (dot == std::string::npos)
      break;
    begin = dot + 1;
  }
}

bool is_group_of(const std::string& prefix, const std::string& key)
{
  return key.size() > prefix.size() && key.compare(0, prefix.size(), prefix) == 0
         && key[prefix.size()] == '.';
}


} // namespace


Configuration Configuration::from_ini(const std::string& text)
{
  Configuration config;
  std::string prefix;
  std::size_t line_number = 0;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#')
      continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw ParseError("unterminated section header in line " + std::to_string(line_number)
                         + ": '" + body + "'");
      prefix = trim(body.substr(1, body.size() - 2));
      if (prefix.empty())
        throw ParseError("empty section header in line " + std::to_string(line_number));
      try {
        check_key_segments(prefix);
      } catch (const UsageError& e) {
        throw ParseError("invalid section header in line " + std::to_string(line_number) + ": "
                         + e.what());
      }
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value' in line " + std::to_string(line_number) + ": '"
                       + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw ParseError("missing key before '=' in line " + std::to_string(line_number));
    try {
      config.set(prefix.empty() ? key : prefix + "." + key, value);
    } catch (const UsageError& e) {
      throw ParseError("invalid entry in line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return config;
}

Configuration Configuration::from_file(const std::string& path)
{
  std::ifstream file(path);
  if (!file)
    throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream content;
  content << file.rdbuf();
  return from_ini(content.str());
}

void Configuration::set(const std::string& key, const std::string& value)
{
  check_key_segments(key);
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = value;
      return;
    }
    if (is_group_of(entry.first, key) || is_group_of(key, entry.first))
      throw UsageError("configuration key '" + full_path(key) + "' collides with existing leaf '"
                       + full_path(entry.first) + "'");
  }
  entries_.emplace_back(key, value);
}

bool Configuration::has_key(const std::string& key) const
{
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& entry) { return entry.first == key; });
}

std::vector<std::string> Configuration::keys() const
{
  std::vector<std::string> result;
  result.reserve(entries_.size());
  for (const auto& entry : entries_)
    result.push_back(entry.first);
  return result;
}

Configuration Configuration::sub(const std::string& prefix) const
{
  check_key_segments(prefix);
  Configuration result;
  result.context_ = full_path(prefix);
  for (const auto& entry : entries_)
    if (is_group_of(prefix, entry.first))
      result.entries_.emplace_back(entry.first.substr(prefix.size() + 1), entry.second);
  return result;
}

std::vector<double> Configuration::get_vector(const std::string& key, std::size_t size) const
{
  try {
    return parse_vector(require(key), size);
  } catch (const MissingKeyError&) {
    throw;
  } catch (const SizeError& e) {
    throw SizeError("cannot read key '" + full_path(key) + "': " + e.what());
  } catch (const Exception& e) {
    throw ParseError("cannot read key '" + full_path(key) + "': " + e.what());
  }
}

std::vector<long long> Configuration::get_integer_vector(const std::string& key,
                                                         std::size_t size) const
{
  try {
    return parse_integer_vector(require(key), size);
  } catch (const MissingKeyError&) {
    throw;
  } catch (const SizeError& e) {
    throw SizeError("cannot read key '" + full_path(key) + "': " + e.what());
  } catch (const Exception& e) {
    throw ParseError("cannot read key '" + full_path(key) + "': " + e.what());
  }
}

std::vector<std::vector<double>> Configuration::get_matrix(const std::string& key,
                                                           std::size_t rows,
                                                           std::size_t cols) const
{
  try {
    return parse_matrix(require(key), rows, cols);
  } catch (const MissingKeyError&) {
    throw;
  } catch (const SizeError& e) {
    throw SizeError("cannot read key '" + full_path(key) + "': " + e.what());
  } catch (const Exception& e) {
    throw ParseError("cannot read key '" + full_path(key) + "': " + e.what());
  }
}

std::string Configuration::report() const
{
  std::string out;
  for (const auto& entry : entries_) {
    out += entry.first;
    out += " = ";
    out += entry.second;
    out += '\n';
  }
  return out;
}

bool Configuration::operator==(const Configuration& other) const
{
  auto sorted = [](const Configuration& config) {
    auto copy = config.entries_;
    std::sort(copy.begin(), copy.end());
    return copy;
  };
  return sorted(*this) == sorted(other);
}

const std::string& Configuration::require(const std::string& key) const
{
  for (const auto& entry : entries_)
    if (entry.first == key)
      return entry.second;
  throw MissingKeyError("configuration has no key '" + full_path(key) + "'");
}

std::string Configuration::full_path(const std::string& key) const
{
  return context_.empty() ? key : context_ + "." + key;
}


} // namespace xt::common
