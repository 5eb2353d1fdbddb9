#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace testutil {

// Composite Simpson integration; an oracle independent of the library's
// Gauss-Legendre quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  long double h = (static_cast<long double>(b) - a) / (2 * panels);
  long double acc = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i)
    acc += f(a + static_cast<double>(h * i)) * ((i % 2) ? 4.0L : 2.0L);
  return static_cast<double>(acc * h / 3.0L);
}

// Binomial(n, p) pmf by long double recurrence.
inline std::vector<long double> binomial_pmf(std::int64_t n, double p) {
  std::vector<long double> pmf(static_cast<std::size_t>(n) + 1);
  long double q = 1.0L - static_cast<long double>(p);
  pmf[0] = std::pow(q, static_cast<long double>(n));
  long double ratio = static_cast<long double>(p) / q;
  for (std::int64_t k = 0; k < n; ++k)
    pmf[static_cast<std::size_t>(k) + 1] =
        pmf[static_cast<std::size_t>(k)] * ratio * static_cast<long double>(n - k) /
        static_cast<long double>(k + 1);
  return pmf;
}

struct command_result {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

inline command_result run_command(const std::string& cmd) {
  command_result res;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

inline std::string env_or_fail(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) throw std::runtime_error(std::string("environment variable not set: ") + name);
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace testutil
