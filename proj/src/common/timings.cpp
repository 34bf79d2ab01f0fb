#include <xt/common/timings.hpp>

#include <xt/common/exceptions.hpp>

#include <sstream>
#include <thread>

#include <sys/resource.h>

namespace xt::common {

namespace {


std::int64_t to_us(const timeval& tv)
{
  return static_cast<std::int64_t>(tv.tv_sec) * 1000000 + tv.tv_usec;
}

void cpu_times_us(std::int64_t& user_us, std::int64_t& sys_us)
{
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  user_us = to_us(usage.ru_utime);
  sys_us = to_us(usage.ru_stime);
}

std::int64_t to_ms(std::int64_t us)
{
  return us / 1000;
}


} // namespace


void Timings::start(const std::string& name)
{
  std::lock_guard<std::mutex> lock(mutex_);
  Section* section = find(name);
  if (!section) {
    sections_.push_back(Section{name, {}, false, {}, 0, 0});
    section = &sections_.back();
  }
  if (section->running)
    throw UsageError("timing section '" + name + "' is already running");
  section->running = true;
  section->wall_start = std::chrono::steady_clock::now();
  cpu_times_us(section->user_start_us, section->sys_start_us);
}

void Timings::stop(const std::string& name)
{
  std::lock_guard<std::mutex> lock(mutex_);
  Section* section = find(name);
  if (!section || !section->running)
    throw UsageError("timing section '" + name + "' is not running");
  const auto wall_end = std::chrono::steady_clock::now();
  std::int64_t user_end_us = 0;
  std::int64_t sys_end_us = 0;
  cpu_times_us(user_end_us, sys_end_us);
  section->total.wall_us +=
      std::chrono::duration_cast<std::chrono::microseconds>(wall_end - section->wall_start)
          .count();
  section->total.user_us += user_end_us - section->user_start_us;
  section->total.sys_us += sys_end_us - section->sys_start_us;
  section->running = false;
}

void Timings::reset()
{
  std::lock_guard<std::mutex> lock(mutex_);
  sections_.clear();
}

bool Timings::known(const std::string& name) const
{
  std::lock_guard<std::mutex> lock(mutex_);
  return find(name) != nullptr;
}

TimingMeasure Timings::measure(const std::string& name) const
{
  std::lock_guard<std::mutex> lock(mutex_);
  const Section* section = find(name);
  if (!section)
    throw UsageError("unknown timing section '" + name + "'");
  return section->total;
}

void Timings::output_all_measures(std::ostream& out) const
{
  std::lock_guard<std::mutex> lock(mutex_);
  // Single process: one rank, averages equal maxima.
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  out << "threads,ranks,";
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    const auto& name = sections_[i].name;
    if (i > 0)
      out << ',';
    out << name << "_avg_usr," << name << "_max_usr," << name << "_avg_wall," << name
        << "_max_wall," << name << "_avg_sys," << name << "_max_sys";
  }
  out << '\n' << threads << ",1";
  for (const auto& section : sections_) {
    const auto usr = to_ms(section.total.user_us);
    const auto wall = to_ms(section.total.wall_us);
    const auto sys = to_ms(section.total.sys_us);
    out << ',' << usr << ',' << usr << ',' << wall << ',' << wall << ',' << sys << ',' << sys;
  }
  out << '\n';
}

std::string Timings::csv() const
{
  std::ostringstream out;
  output_all_measures(out);
  return out.str();
}

Timings::Section* Timings::find(const std::string& name)
{
  for (auto& section : sections_)
    if (section.name == name)
      return &section;
  return nullptr;
}

const Timings::Section* Timings::find(const std::string& name) const
{
  for (const auto& section : sections_)
    if (section.name == name)
      return &section;
  return nullptr;
}

Timings& timings()
{
  static Timings instance;
  return instance;
}


} // namespace xt::common
