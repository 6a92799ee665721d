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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "primegaps/analysis.hpp"
#include "primegaps/constants.hpp"
#include "primegaps/errors.hpp"
#include "primegaps/models.hpp"
#include "primegaps/pipeline.hpp"
#include "primegaps/sieve.hpp"
#include "primegaps/store.hpp"

namespace py = pybind11;
using namespace primegaps;

namespace {

py::int_ to_pyint(u128 v) {
  const std::string s = to_string_u128(v);
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::dict histogram_dict(const GapHistogram& h) {
  py::dict out;
  for (const auto& [d, n] : h.entries()) out[py::int_(d)] = n;
  return out;
}

py::dict brun_dict(const BrunLedger& b) {
  py::dict out;
  for (const auto& [d, acc] : b.entries()) out[py::int_(d)] = acc.value();
  return out;
}

py::dict first_dict(const FirstOccurrences& f) {
  py::dict out;
  for (const auto& [d, p] : f.entries()) out[py::int_(d)] = p;
  return out;
}

CheckpointGrid make_grid(const std::string& kind, double base, double ratio) {
  CheckpointGrid g;
  if (kind == "pow2") {
    g.kind = GridKind::kPow2;
  } else if (kind == "geometric") {
    g.kind = GridKind::kGeometric;
  } else {
    throw ArgumentError("grid must be 'pow2' or 'geometric'");
  }
  g.base = base;
  g.ratio = ratio;
  return g;
}

CollectOptions make_options(std::uint64_t limit, std::uint64_t pair_dmax, const std::string& grid,
                            double grid_base, double grid_ratio, std::uint64_t segment_bits,
                            unsigned threads) {
  CollectOptions o;
  o.limit = limit;
  o.pair_dmax = pair_dmax;
  o.grid = make_grid(grid, grid_base, grid_ratio);
  o.segment_bits = segment_bits;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prime-gap statistics core";

  auto base = py::register_exception<StoreError>(m, "StoreError");
  py::register_exception<UnrecoverableStateError>(m, "UnrecoverableStateError", base.ptr());
  py::register_exception<UpgradeRequiredError>(m, "UpgradeRequiredError", base.ptr());
  py::register_exception<BoundsError>(m, "BoundsError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<OrderingError>(m, "OrderingError", PyExc_ValueError);
  py::register_exception<SequencingError>(m, "SequencingError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);

  // sieve
  m.def("base_primes", &base_primes, py::arg("n"));
  m.def("prime_count", py::overload_cast<std::uint64_t>(&prime_count), py::arg("x"));
  m.def(
      "primes_between",
      [](std::uint64_t lo, std::uint64_t hi, std::uint64_t segment_bits) {
        SieveConfig cfg;
        cfg.limit = std::max<std::uint64_t>(hi, 3);
        cfg.segment_bits = segment_bits;
        std::vector<std::uint64_t> out;
        {
          py::gil_scoped_release release;
          SegmentedSieve(cfg).stream_primes(lo, hi, [&](std::uint64_t p) { out.push_back(p); });
        }
        return out;
      },
      py::arg("lo"), py::arg("hi"), py::arg("segment_bits") = kMinSegmentBits,
      "Primes p with lo <= p < hi, ascending.");

  // constants
  py::class_<ConstantTable>(m, "ConstantTable")
      .def_readonly("C2", &ConstantTable::C2)
      .def_readonly("c2", &ConstantTable::c2)
      .def_readonly("mertens_M", &ConstantTable::mertens_M)
      .def_readonly("euler_gamma", &ConstantTable::euler_gamma)
      .def_readonly("log_C2", &ConstantTable::log_C2);
  m.def("constants", &constants, py::return_value_policy::reference);
  m.def("singular_series", &singular_series, py::arg("d"));
  m.def("odd_prime_divisors", &odd_prime_divisors, py::arg("d"));
  m.def("twin_constant_product", &twin_constant_product, py::arg("cutoff"));
  m.def("li2", &li2, py::arg("x"));

  // models
  m.def(
      "evaluate",
      [](const std::string& formula, std::optional<double> x, std::optional<double> pi_x,
         std::optional<std::uint64_t> d, std::optional<double> partial) {
        return evaluate(parse_formula(formula), ModelArgs{x, pi_x, d, partial}).value;
      },
      py::arg("formula"), py::kw_only(), py::arg("x") = py::none(), py::arg("pi_x") = py::none(),
      py::arg("d") = py::none(), py::arg("partial") = py::none(),
      "Evaluates a model by name, e.g. evaluate('TAU_C1', x=1e6, pi_x=78498, d=6).");

  // checkpoints
  py::class_<MaxGapRecord>(m, "MaxGapRecord")
      .def_readonly("gap", &MaxGapRecord::gap)
      .def_readonly("lower_prime", &MaxGapRecord::lower_prime)
      .def_readonly("upper_prime", &MaxGapRecord::upper_prime)
      .def_readonly("pi_upper", &MaxGapRecord::pi_upper)
      .def("__repr__", [](const MaxGapRecord& r) {
        return "MaxGapRecord(gap=" + std::to_string(r.gap) + ", lower=" +
               std::to_string(r.lower_prime) + ", upper=" + std::to_string(r.upper_prime) + ")";
      });

  py::class_<Checkpoint>(m, "Checkpoint")
      .def_readonly("x", &Checkpoint::x)
      .def_readonly("pi", &Checkpoint::pi)
      .def_property_readonly("last_prime", [](const Checkpoint& c) { return c.state.last_prime; })
      .def_property_readonly("harmonic_sum",
                             [](const Checkpoint& c) { return c.state.harmonic_sum.value(); })
      .def_property_readonly("sum_sq_gaps",
                             [](const Checkpoint& c) { return to_pyint(c.state.sum_sq_gaps); })
      .def_property_readonly("histogram",
                             [](const Checkpoint& c) { return histogram_dict(c.state.histogram); })
      .def_property_readonly("brun", [](const Checkpoint& c) { return brun_dict(c.state.brun); })
      .def_property_readonly("first_occurrences",
                             [](const Checkpoint& c) { return first_dict(c.state.first_occurrences); })
      .def_property_readonly("max_gap_records",
                             [](const Checkpoint& c) { return c.state.max_gap_records; })
      .def_readonly("pair_counts", &Checkpoint::pair_counts)
      .def("largest_gap", &Checkpoint::largest_gap)
      .def("first_occurrence", &Checkpoint::first_occurrence, py::arg("d"))
      .def("__eq__", [](const Checkpoint& a, const Checkpoint& b) { return a == b; })
      .def("__repr__", [](const Checkpoint& c) {
        return "Checkpoint(x=" + std::to_string(c.x) + ", pi=" + std::to_string(c.pi) + ")";
      });

  m.def(
      "collect",
      [](std::uint64_t limit, std::uint64_t pair_dmax, const std::string& grid, double grid_base,
         double grid_ratio, std::uint64_t segment_bits, unsigned threads) {
        const CollectOptions o =
            make_options(limit, pair_dmax, grid, grid_base, grid_ratio, segment_bits, threads);
        py::gil_scoped_release release;
        return collect(o);
      },
      py::arg("limit"), py::kw_only(), py::arg("pair_dmax") = 512, py::arg("grid") = "pow2",
      py::arg("grid_base") = 1000.0, py::arg("grid_ratio") = 1.03,
      py::arg("segment_bits") = kDefaultSegmentBits, py::arg("threads") = 1,
      "Sieves every prime <= limit and returns the checkpoints.");
  m.def("pair_counts", &pair_counts, py::arg("x"), py::arg("d_max"));

  // analysis
  py::class_<FitResult>(m, "FitResult")
      .def_readonly("a", &FitResult::a)
      .def_readonly("b", &FitResult::b)
      .def_readonly("residual_rms", &FitResult::residual_rms)
      .def_readonly("points_used", &FitResult::points_used);
  m.def(
      "fit_exponential",
      [](const std::vector<std::pair<double, double>>& points, bool log_weights) {
        return fit_exponential(points, log_weights ? Weighting::kLog : Weighting::kNone);
      },
      py::arg("points"), py::arg("log_weights") = false);
  m.def("scaling_slope", &scaling_slope, py::arg("checkpoint"), py::arg("tau_min") = 1000);

  m.def(
      "table1",
      [](const std::vector<Checkpoint>& cps) {
        py::list rows;
        for (const auto& r : table1(cps)) {
          rows.append(py::make_tuple(r.x, to_pyint(r.sum_sq), to_pyint(r.heath_brown),
                                     r.heath_brown_ratio, to_pyint(r.conjecture5),
                                     r.conjecture5_ratio));
        }
        return rows;
      },
      py::arg("checkpoints"));
  m.def(
      "andrica_table",
      [](std::uint64_t limit, std::size_t top_k) {
        py::list rows;
        for (const auto& r : andrica_table(limit, top_k)) {
          rows.append(py::make_tuple(r.n, r.p, r.next, r.gap, r.a));
        }
        return rows;
      },
      py::arg("limit") = 1000000, py::arg("top_k") = 10);
  m.def(
      "verify",
      [](const Checkpoint& c) { return verify_checkpoint(c).ok(); }, py::arg("checkpoint"),
      "True when every exact identity holds at the checkpoint.");

  // store
  m.def(
      "collect_to_directory",
      [](std::uint64_t limit, const std::filesystem::path& dir, std::uint64_t pair_dmax,
         const std::string& grid, std::uint64_t segment_bits, unsigned threads) {
        const CollectOptions o =
            make_options(limit, pair_dmax, grid, 1000.0, 1.03, segment_bits, threads);
        py::gil_scoped_release release;
        collect_to_directory(o, dir);
      },
      py::arg("limit"), py::arg("dir"), py::kw_only(), py::arg("pair_dmax") = 512,
      py::arg("grid") = "pow2", py::arg("segment_bits") = kDefaultSegmentBits,
      py::arg("threads") = 1);
  m.def(
      "resume_directory",
      [](const std::filesystem::path& dir, unsigned threads) {
        py::gil_scoped_release release;
        return resume_directory(dir, threads);
      },
      py::arg("dir"), py::arg("threads") = 1);
  m.def("load_checkpoints", &load_checkpoints, py::arg("dir"));
  m.def("write_checkpoint", &write_checkpoint, py::arg("checkpoint"), py::arg("dir"));
  m.def("read_checkpoint", &read_checkpoint, py::arg("file"));
  m.def(
      "export_csv",
      [](const std::string& kind, const std::vector<Checkpoint>& cps) {
        std::ostringstream ss;
        write_csv(parse_csv_kind(kind), cps, ss);
        return ss.str();
      },
      py::arg("kind"), py::arg("checkpoints"), "CSV text for the given export kind.");
}
