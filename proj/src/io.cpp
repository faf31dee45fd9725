#include "rmt/io.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "rmt/errors.hpp"

namespace rmt {

namespace fs = std::filesystem;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string format_exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_atomic(const fs::path& path, const std::string& content) {
  static std::atomic<unsigned> serial{0};
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(serial++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw ConfigError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

void write_csv(const fs::path& path, const CsvTable& table, const Json& meta) {
  write_atomic(path, table.str());
  fs::path side = path;
  side += ".meta.json";
  write_atomic(side, meta.dump(2) + "\n");
}

fs::path default_output_dir() {
  if (const char* dir = std::getenv("RMTLAB_OUTPUT_DIR"); dir && *dir) return dir;
  return fs::current_path();
}

fs::path resolve_output(const std::string& name) {
  const fs::path p(name);
  return p.is_absolute() ? p : default_output_dir() / p;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string serialize_tw_table(const TWTable& t) {
  std::string body = "s,q,qp,I,J,F1,F2\n";
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    body += format_exact(t.s[i]) + ',' + format_exact(t.q[i]) + ',' + format_exact(t.qp[i]) + ',' +
            format_exact(t.I[i]) + ',' + format_exact(t.J[i]) + ',' + format_exact(t.F1[i]) + ',' +
            format_exact(t.F2[i]) + '\n';
  }
  char head[64];
  std::snprintf(head, sizeof head, "# checksum %016llx\n", (unsigned long long)fnv1a(body));
  return head + body;
}

std::optional<TWTable> parse_tw_table(const std::string& text) {
  const std::size_t eol = text.find('\n');
  if (eol == std::string::npos) return std::nullopt;
  unsigned long long sum = 0;
  if (std::sscanf(text.c_str(), "# checksum %llx", &sum) != 1) return std::nullopt;
  const std::string body = text.substr(eol + 1);
  if (fnv1a(body) != sum) return std::nullopt;

  TWTable t;
  std::istringstream in(body);
  std::string line;
  std::getline(in, line);
  if (line != "s,q,qp,I,J,F1,F2") return std::nullopt;
  while (std::getline(in, line)) {
    double v[7];
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3],
                    &v[4], &v[5], &v[6]) != 7)
      return std::nullopt;
    t.s.push_back(v[0]);
    t.q.push_back(v[1]);
    t.qp.push_back(v[2]);
    t.I.push_back(v[3]);
    t.J.push_back(v[4]);
    t.F1.push_back(v[5]);
    t.F2.push_back(v[6]);
  }
  if (t.s.size() < 4) return std::nullopt;
  for (std::size_t i = 0; i < t.s.size(); ++i) {
    if (!(t.q[i] > 0.0) || !(t.F1[i] >= 0.0 && t.F1[i] <= 1.0) || !(t.F2[i] >= 0.0 && t.F2[i] <= 1.0))
      return std::nullopt;
    if (i > 0 && (!(t.s[i] > t.s[i - 1]) || t.F1[i] < t.F1[i - 1] || t.F2[i] < t.F2[i - 1]))
      return std::nullopt;
  }
  t.step = (t.s.back() - t.s.front()) / double(t.s.size() - 1);
  tw_finalize(t);
  return t;
}

fs::path tw_cache_path(const fs::path& dir, double s_min, double s_max, double step) {
  char name[96];
  std::snprintf(name, sizeof name, "tw_cache_%g_%g_%g.csv", s_min, s_max, step);
  return dir / name;
}

TWTable cached_tw_table(const fs::path& dir, double s_min, double s_max, double step,
                        bool* rebuilt) {
  const fs::path path = tw_cache_path(dir, s_min, s_max, step);
  if (fs::exists(path)) {
    std::optional<TWTable> t;
    try {
      t = parse_tw_table(read_file(path));
    } catch (const Error&) {
    }
    if (t && std::abs(t->s.front() - s_min) < 1e-12 && std::abs(t->s.back() - s_max) < 1e-12) {
      if (rebuilt) *rebuilt = false;
      return *t;
    }
  }
  TWTable t = tw_table(s_min, s_max, step);
  write_atomic(path, serialize_tw_table(t));
  if (rebuilt) *rebuilt = true;
  return t;
}

}  // namespace rmt
