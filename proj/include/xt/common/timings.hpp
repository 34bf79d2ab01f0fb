#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

namespace xt::common {


// Accumulated wall/user/sys times of one named section, in microseconds.
struct TimingMeasure
{
  std::int64_t wall_us = 0;
  std::int64_t user_us = 0;
  std::int64_t sys_us = 0;
};

// Process-global registry of named timing sections.  Sections accumulate
// over repeated start/stop pairs; dotted names ("a.b") may nest freely.
class Timings
{
public:
  void start(const std::string& name);
  void stop(const std::string& name);
  void reset();

  bool known(const std::string& name) const;
  TimingMeasure measure(const std::string& name) const;

  // One header row, one data row.  Column order follows first start.
  // Durations are written as whole milliseconds, rounded down.
  void output_all_measures(std::ostream& out) const;
  std::string csv() const;

private:
  struct Section
  {
    std::string name;
    TimingMeasure total;
    bool running = false;
    std::chrono::steady_clock::time_point wall_start;
    std::int64_t user_start_us = 0;
    std::int64_t sys_start_us = 0;
  };

  Section* find(const std::string& name);
  const Section* find(const std::string& name) const;

  mutable std::mutex mutex_;
  std::vector<Section> sections_;
};

Timings& timings();

// Starts a section on construction, stops it on destruction.
class ScopedTiming
{
public:
  explicit ScopedTiming(const std::string& name, Timings& registry = timings())
    : registry_(registry)
    , name_(name)
  {
    registry_.start(name_);
  }

  ScopedTiming(const ScopedTiming&) = delete;
  ScopedTiming& operator=(const ScopedTiming&) = delete;

  ~ScopedTiming()
  {
    try {
      registry_.stop(name_);
    } catch (...) {
      // the section was stopped by hand mid-scope; nothing left to do
    }
  }

private:
  Timings& registry_;
  std::string name_;
};


} // namespace xt::common
