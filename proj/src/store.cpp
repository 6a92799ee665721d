// Copyright 2026 The primegaps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "primegaps/store.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "primegaps/analysis.hpp"
#include "primegaps/constants.hpp"
#include "primegaps/errors.hpp"
#include "primegaps/models.hpp"

namespace fs = std::filesystem;

namespace primegaps {

namespace {

constexpr std::string_view kMagic = "primegaps-checkpoint";

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes `content` next to `target` under a unique name, then renames it over
// `target`.
void atomic_write(const fs::path& target, const std::string& content) {
  static std::atomic<std::uint64_t> counter{0};
  const std::size_t tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(tid) + "." +
         std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw StoreError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw StoreError("cannot rename " + tmp.string() + " to " + target.string() + ": " +
                     ec.message());
  }
}

std::uint64_t threshold_from_filename(const std::string& name) {
  unsigned hi = 0, lo = 0;
  if (std::sscanf(name.c_str(), "ckpt_%8x_%8x.v1", &hi, &lo) != 2) {
    throw UnrecoverableStateError("unexpected checkpoint file name " + name);
  }
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

nlohmann::json grid_to_json(const CheckpointGrid& g) {
  if (g.kind == GridKind::kPow2) return {{"kind", "pow2"}};
  return {{"kind", "geometric"}, {"base", g.base}, {"ratio", g.ratio}};
}

CheckpointGrid grid_from_json(const nlohmann::json& j) {
  CheckpointGrid g;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pow2") {
    g.kind = GridKind::kPow2;
  } else if (kind == "geometric") {
    g.kind = GridKind::kGeometric;
    g.base = j.at("base").get<double>();
    g.ratio = j.at("ratio").get<double>();
  } else {
    throw UnrecoverableStateError("unknown checkpoint grid '" + kind + "'");
  }
  return g;
}

// Line reader with positional error messages.
class LineReader {
 public:
  LineReader(std::istream& in, std::string origin) : in_(in), origin_(std::move(origin)) {}

  std::vector<std::string> next() {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file");
    ++line_no_;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    return tok;
  }

  std::vector<std::string> expect(std::string_view key, std::size_t values) {
    auto tok = next();
    if (tok.size() != values + 1 || tok[0] != key) {
      fail("expected '" + std::string(key) + "' with " + std::to_string(values) + " value(s)");
    }
    return tok;
  }

  std::uint64_t u64(const std::string& s) {
    std::uint64_t v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e) fail("bad integer '" + s + "'");
    return v;
  }

  double real(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) fail("bad real '" + s + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw UnrecoverableStateError(origin_ + ":" + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::string origin_;
  std::size_t line_no_ = 0;
};

std::string csv_real(double v) { return std::isfinite(v) ? format_real(v) : std::string(); }

template <class F>
std::string guarded(F&& f) {
  try {
    return csv_real(f());
  } catch (const DomainError&) {
    return {};
  }
}

}  // namespace

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 parse_u128(std::string_view s) {
  if (s.empty()) throw ArgumentError("empty integer");
  u128 v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ArgumentError("bad integer '" + std::string(s) + "'");
    }
    v = v * 10 + static_cast<unsigned>(ch - '0');
  }
  return v;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Manifest

fs::path RunManifest::path(const fs::path& dir) { return dir / "manifest.json"; }

RunManifest RunManifest::read(const fs::path& dir) {
  const fs::path p = path(dir);
  std::ifstream in(p);
  if (!in) throw UnrecoverableStateError("missing manifest " + p.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UnrecoverableStateError("corrupt manifest " + p.string() + ": " + e.what());
  }
  RunManifest m;
  try {
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kFormatVersion) {
      throw UpgradeRequiredError("manifest " + p.string() + " has format version " +
                                 std::to_string(m.format_version) + "; this build reads version " +
                                 std::to_string(kFormatVersion));
    }
    m.limit = j.at("limit").get<std::uint64_t>();
    m.grid = grid_from_json(j.at("checkpoint_grid"));
    m.segment_bits = j.at("segment_bits").get<std::uint64_t>();
    m.pair_dmax = j.at("pair_dmax").get<std::uint64_t>();
    m.created = j.at("created").get<std::string>();
    m.updated = j.at("updated").get<std::string>();
    m.completed_up_to = j.at("completed_up_to").get<std::uint64_t>();
    m.checkpoints = j.at("checkpoints").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw UnrecoverableStateError("corrupt manifest " + p.string() + ": " + e.what());
  }
  if (m.completed_up_to > m.limit) {
    throw UnrecoverableStateError("manifest " + p.string() + ": completed_up_to exceeds limit");
  }
  return m;
}

void RunManifest::write(const fs::path& dir) const {
  nlohmann::json j;
  j["format_version"] = format_version;
  j["limit"] = limit;
  j["checkpoint_grid"] = grid_to_json(grid);
  j["segment_bits"] = segment_bits;
  j["pair_dmax"] = pair_dmax;
  j["created"] = created;
  j["updated"] = updated;
  j["completed_up_to"] = completed_up_to;
  j["checkpoints"] = checkpoints;
  atomic_write(path(dir), j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Checkpoint files

std::string checkpoint_filename(std::uint64_t x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "ckpt_%08x_%08x.v1", static_cast<unsigned>(x >> 32),
                static_cast<unsigned>(x & 0xffffffffU));
  return buf;
}

void serialize_checkpoint(const Checkpoint& c, std::ostream& out) {
  const RunState& s = c.state;
  out << kMagic << " v" << kFormatVersion << '\n';
  out << "x " << c.x << '\n';
  out << "pi " << c.pi << '\n';
  out << "last_prime " << s.last_prime << '\n';
  out << "primes_seen " << s.primes_seen << '\n';
  out << "harmonic_sum " << format_real(s.harmonic_sum.sum) << ' '
      << format_real(s.harmonic_sum.comp) << '\n';
  out << "sum_sq_gaps " << to_string_u128(s.sum_sq_gaps) << '\n';
  out << "pair_dmax " << c.pair_dmax << '\n';

  const auto hist = s.histogram.entries();
  out << "[histogram] " << hist.size() << '\n';
  for (const auto& [d, n] : hist) out << d << ' ' << n << '\n';

  const auto brun = s.brun.entries();
  out << "[brun] " << brun.size() << '\n';
  for (const auto& [d, acc] : brun) {
    out << d << ' ' << format_real(acc.sum) << ' ' << format_real(acc.comp) << '\n';
  }

  out << "[max_gap_records] " << s.max_gap_records.size() << '\n';
  for (const auto& r : s.max_gap_records) {
    out << r.gap << ' ' << r.lower_prime << ' ' << r.upper_prime << ' ' << r.pi_upper << '\n';
  }

  const auto first = s.first_occurrences.entries();
  out << "[first_occurrences] " << first.size() << '\n';
  for (const auto& [d, p] : first) out << d << ' ' << p << '\n';

  out << "[pair_counts] " << c.pair_counts.size() << '\n';
  for (const auto& [d, n] : c.pair_counts) out << d << ' ' << n << '\n';
  out << "end\n";
}

Checkpoint parse_checkpoint(std::istream& in, const std::string& origin) {
  LineReader r(in, origin);
  {
    auto head = r.next();
    if (head.size() != 2 || head[0] != kMagic) r.fail("not a checkpoint file");
    if (head[1] != "v" + std::to_string(kFormatVersion)) {
      throw UpgradeRequiredError(origin + ": checkpoint format " + head[1] + " is not supported");
    }
  }
  Checkpoint c;
  RunState& s = c.state;
  c.x = r.u64(r.expect("x", 1)[1]);
  c.pi = r.u64(r.expect("pi", 1)[1]);
  s.last_prime = r.u64(r.expect("last_prime", 1)[1]);
  s.primes_seen = r.u64(r.expect("primes_seen", 1)[1]);
  {
    auto t = r.expect("harmonic_sum", 2);
    s.harmonic_sum = {r.real(t[1]), r.real(t[2])};
  }
  try {
    s.sum_sq_gaps = parse_u128(r.expect("sum_sq_gaps", 1)[1]);
  } catch (const ArgumentError& e) {
    r.fail(e.what());
  }
  c.pair_dmax = r.u64(r.expect("pair_dmax", 1)[1]);

  auto section = [&](std::string_view name, std::size_t cols, auto&& row) {
    const std::uint64_t n = r.u64(r.expect(name, 1)[1]);
    for (std::uint64_t i = 0; i < n; ++i) {
      auto t = r.next();
      if (t.size() != cols) r.fail("expected " + std::to_string(cols) + " fields");
      row(t);
    }
  };
  section("[histogram]", 2, [&](const auto& t) { s.histogram.add(r.u64(t[0]), r.u64(t[1])); });
  section("[brun]", 3, [&](const auto& t) {
    s.brun.set(r.u64(t[0]), CompensatedSum{r.real(t[1]), r.real(t[2])});
  });
  section("[max_gap_records]", 4, [&](const auto& t) {
    s.max_gap_records.push_back({r.u64(t[0]), r.u64(t[1]), r.u64(t[2]), r.u64(t[3])});
  });
  section("[first_occurrences]", 2,
          [&](const auto& t) { s.first_occurrences.set(r.u64(t[0]), r.u64(t[1])); });
  section("[pair_counts]", 2, [&](const auto& t) { c.pair_counts[r.u64(t[0])] = r.u64(t[1]); });
  if (auto t = r.next(); t.size() != 1 || t[0] != "end") r.fail("missing end marker");
  return c;
}

void write_checkpoint_file(const Checkpoint& c, const fs::path& file) {
  std::ostringstream ss;
  serialize_checkpoint(c, ss);
  atomic_write(file, ss.str());
}

Checkpoint read_checkpoint(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw StoreError("cannot open checkpoint " + file.string());
  return parse_checkpoint(in, file.string());
}

fs::path write_checkpoint(const Checkpoint& c, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StoreError("cannot create " + dir.string() + ": " + ec.message());
  const std::string name = checkpoint_filename(c.x);
  const fs::path file = dir / name;
  write_checkpoint_file(c, file);

  if (fs::exists(RunManifest::path(dir))) {
    RunManifest m = RunManifest::read(dir);
    if (std::find(m.checkpoints.begin(), m.checkpoints.end(), name) == m.checkpoints.end()) {
      m.checkpoints.push_back(name);
      std::sort(m.checkpoints.begin(), m.checkpoints.end(), [](const auto& a, const auto& b) {
        return threshold_from_filename(a) < threshold_from_filename(b);
      });
    }
    m.completed_up_to = std::max(m.completed_up_to, c.x);
    m.updated = now_utc();
    m.write(dir);
  }
  return file;
}

std::vector<Checkpoint> load_checkpoints(const fs::path& dir) {
  const RunManifest m = RunManifest::read(dir);
  std::vector<Checkpoint> out;
  out.reserve(m.checkpoints.size());
  for (const auto& name : m.checkpoints) out.push_back(read_checkpoint(dir / name));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return out;
}

ResumePoint resume(const fs::path& dir) {
  ResumePoint rp;
  if (!fs::exists(dir) || fs::is_empty(dir)) return rp;
  rp.manifest = RunManifest::read(dir);
  if (rp.manifest->checkpoints.empty()) return rp;
  try {
    rp.checkpoint = read_checkpoint(dir / rp.manifest->checkpoints.back());
  } catch (const UpgradeRequiredError&) {
    throw;
  } catch (const StoreError& e) {
    throw UnrecoverableStateError(std::string("latest checkpoint unreadable: ") + e.what());
  }
  rp.next_position = rp.checkpoint->x + 1;
  rp.status = rp.checkpoint->x >= rp.manifest->limit ? ResumeStatus::kComplete
                                                       : ResumeStatus::kPartial;
  return rp;
}

void collect_to_directory(const CollectOptions& options, const fs::path& dir,
                          const ProgressSink& progress) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StoreError("cannot create " + dir.string() + ": " + ec.message());
  if (fs::exists(RunManifest::path(dir))) {
    throw ConfigError(dir.string() + " already holds a run; resume it or pick another directory");
  }
  RunManifest m;
  m.limit = options.limit;
  m.grid = options.grid;
  m.segment_bits = options.segment_bits;
  m.pair_dmax = options.pair_dmax;
  m.created = m.updated = now_utc();
  m.write(dir);

  Collector collector(options.pair_dmax);
  run_collection(
      options, collector, [&](const Checkpoint& c) { write_checkpoint(c, dir); }, progress);
}

bool resume_directory(const fs::path& dir, unsigned threads, const ProgressSink& progress) {
  const ResumePoint rp = resume(dir);
  if (!rp.manifest || rp.status == ResumeStatus::kComplete) return false;
  const RunManifest& m = *rp.manifest;
  CollectOptions opt;
  opt.limit = m.limit;
  opt.grid = m.grid;
  opt.segment_bits = m.segment_bits;
  opt.pair_dmax = m.pair_dmax;
  opt.threads = threads;
  Collector collector = rp.checkpoint ? Collector::resume_from(*rp.checkpoint)
                                      : Collector(m.pair_dmax);
  run_collection(
      opt, collector, [&](const Checkpoint& c) { write_checkpoint(c, dir); }, progress);
  return true;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::array<std::pair<CsvKind, std::string_view>, 9> kCsvNames = {{
    {CsvKind::kTau, "tau"},
    {CsvKind::kPairs, "pairs"},
    {CsvKind::kBrun, "brun"},
    {CsvKind::kMaxGap, "maxgap"},
    {CsvKind::kFirstOcc, "firstocc"},
    {CsvKind::kTable1, "table1"},
    {CsvKind::kTable2, "table2"},
    {CsvKind::kScaling, "scaling"},
    {CsvKind::kMertens, "mertens"},
}};

}  // namespace

CsvKind parse_csv_kind(std::string_view name) {
  std::string lower;
  for (char ch : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  for (const auto& [k, n] : kCsvNames) {
    if (n == lower) return k;
  }
  throw ArgumentError("unknown export kind '" + std::string(name) + "'");
}

std::string_view csv_kind_name(CsvKind kind) {
  for (const auto& [k, n] : kCsvNames) {
    if (k == kind) return n;
  }
  return "unknown";
}

void write_csv(CsvKind kind, const std::vector<Checkpoint>& checkpoints, std::ostream& out,
               const ExportOptions& options) {
  std::vector<const Checkpoint*> sorted;
  for (const auto& c : checkpoints) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->x < b->x; });
  const Checkpoint* last = sorted.empty() ? nullptr : sorted.back();

  switch (kind) {
    case CsvKind::kTau:
      out << "x,d,tau,Sd,model_c1,model_c1pp,delta,flag\n";
      for (const Checkpoint* c : sorted) {
        const double x = static_cast<double>(c->x);
        const double pi = static_cast<double>(c->pi);
        for (const auto& [d, tau] : c->state.histogram.entries()) {
          out << c->x << ',' << d << ',' << tau << ',' << format_real(singular_series(d)) << ',';
          if (d <= 4) {
            // Gaps 2 and 4 are compared against the twin model.
            const std::string twin =
                guarded([&] { return twin_model(TwinVariant::kSquarePi, x, pi); });
            const std::string diff = guarded([&] {
              return static_cast<double>(tau) - twin_model(TwinVariant::kSquarePi, x, pi);
            });
            out << twin << ',' << twin << ',' << diff << ",twin\n";
            continue;
          }
          out << guarded([&] { return tau_model(TauVariant::kC1, x, pi, d); }) << ','
              << guarded([&] { return tau_model(TauVariant::kC1DoublePrime, x, pi, d); }) << ','
              << guarded([&] { return delta(x, pi, d, static_cast<double>(tau)); }) << ",\n";
        }
      }
      break;
    case CsvKind::kPairs:
      out << "x,d,pi_d,hl_model\n";
      for (const Checkpoint* c : sorted) {
        for (const auto& [d, n] : c->pair_counts) {
          out << c->x << ',' << d << ',' << n << ','
              << guarded([&] { return hl_pair_model(static_cast<double>(c->x), d); }) << '\n';
        }
      }
      break;
    case CsvKind::kBrun:
      out << "x,d,partial,extrapolated,c6\n";
      for (const Checkpoint* c : sorted) {
        const double x = static_cast<double>(c->x);
        for (const auto& [d, acc] : c->state.brun.entries()) {
          const double partial = acc.value();
          out << c->x << ',' << d << ',' << format_real(partial) << ','
              << guarded([&] { return brun_model(BrunVariant::kExtrapolated, d, x, partial); })
              << ',' << format_real(brun_model(BrunVariant::kC6, d)) << '\n';
        }
      }
      break;
    case CsvKind::kMaxGap:
      out << "gap,lower,upper,g_model,cramer\n";
      if (last) {
        for (const auto& r : last->state.max_gap_records) {
          const double x = static_cast<double>(r.upper_prime);
          out << r.gap << ',' << r.lower_prime << ',' << r.upper_prime << ','
              << (r.upper_prime >= 11 ? guarded([&] {
                    return gmax_model(GmaxVariant::kC4, x, static_cast<double>(r.pi_upper));
                  })
                                      : std::string())
              << ',' << format_real(gmax_model(GmaxVariant::kCramer, x)) << '\n';
        }
      }
      break;
    case CsvKind::kFirstOcc:
      out << "d,p_f,c7,shanks\n";
      if (last) {
        for (const auto& [d, p] : last->state.first_occurrences.entries()) {
          const double dd = static_cast<double>(d);
          out << d << ',' << p << ',' << format_real(pf_model(PfVariant::kC7, dd)) << ','
              << format_real(pf_model(PfVariant::kShanks, dd)) << '\n';
        }
      }
      break;
    case CsvKind::kTable1:
      out << "x,sum_sq,heath_brown,ratio_hb,conjecture5,ratio_c5\n";
      for (const auto& row : table1(checkpoints)) {
        out << row.x << ',' << to_string_u128(row.sum_sq) << ',' << to_string_u128(row.heath_brown)
            << ',' << format_real(row.heath_brown_ratio) << ',' << to_string_u128(row.conjecture5)
            << ',' << format_real(row.conjecture5_ratio) << '\n';
      }
      break;
    case CsvKind::kTable2:
      out << "n,p_n,p_next,d_n,A_n\n";
      for (const auto& row : andrica_table(options.andrica_limit, options.andrica_rows)) {
        out << row.n << ',' << row.p << ',' << row.next << ',' << row.gap << ','
            << format_real(row.a) << '\n';
      }
      break;
    case CsvKind::kScaling:
      out << "x,D,T\n";
      for (const Checkpoint* c : sorted) {
        for (const auto& p : scaling_collapse(*c)) {
          out << c->x << ',' << format_real(p.D) << ',' << format_real(p.T) << '\n';
        }
      }
      break;
    case CsvKind::kMertens:
      out << "x,sum,model,diff\n";
      for (const Checkpoint* c : sorted) {
        if (c->x < 2) continue;
        const double x = static_cast<double>(c->x);
        const double sum = c->state.harmonic_sum.value();
        const double model = mertens_model(x);
        out << c->x << ',' << format_real(sum) << ',' << format_real(model) << ','
            << format_real(sum - model) << '\n';
      }
      break;
  }
}

void export_csv(CsvKind kind, const std::vector<Checkpoint>& checkpoints, const fs::path& path,
                const ExportOptions& options) {
  std::ostringstream ss;
  write_csv(kind, checkpoints, ss, options);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  atomic_write(path, ss.str());
}

}  // namespace primegaps
