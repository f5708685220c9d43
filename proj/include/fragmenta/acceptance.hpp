// Copyright 2026 The Fragmenta Authors
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


#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fragmenta/report.hpp"

namespace fragmenta {

struct CriterionResult {
  CriterionResult(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  json detail = json::object();
  double seconds = 0;  // wall time; kept out of the JSON
};

namespace acceptance {

inline constexpr int kAcceptanceL = 4;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline CriterionResult frozen_count() {
  CriterionResult r{1, "frozen_state_count"};
  const Stopwatch total;
  const Lattice lat(kAcceptanceL);
  const Stopwatch brute_clock;
  const EnumerationReport brute = enumerate_frozen(lat);
  const double brute_seconds = brute_clock.seconds();
  const std::uint64_t transfer4 = count_code_states_transfer(4);
  json larger = json::array();
  for (int L : {6, 8}) {
    const EnumerationReport t = count_code_states_report(L);
    larger.push_back(to_json(t));
  }
  const double total_seconds = total.seconds();
  const bool agree = transfer4 == brute.count_code_states;
  const bool brute_fast = brute_seconds < 5.0;
  const bool total_fast = total_seconds < 60.0;
  r.passed = agree && brute_fast && total_fast;
  r.detail = {{"brute_force", to_json(brute)},
              {"transfer_L4", transfer4},
              {"transfer_equals_brute_force", agree},
              {"brute_force_under_5s", brute_fast},
              {"total_under_60s", total_fast},
              {"transfer_larger_L", larger}};
  r.summary = "N_f(L=4) brute=" + std::to_string(brute.count_code_states) + " transfer=" + std::to_string(transfer4) +
              " formula=" + std::to_string(brute.formula_value) + "; L=6 transfer=" +
              larger[0]["count_code_states"].dump() + " (formula 248), L=8 transfer=" +
              larger[1]["count_code_states"].dump() + " (formula 1016)";
  r.seconds = total.seconds();
  return r;
}

inline CriterionResult syndrome_conservation(std::uint64_t seed, int samples = 10000) {
  CriterionResult r{2, "syndrome_conservation"};
  const Stopwatch clock;
  const Lattice lat(kAcceptanceL);
  const PackedShifts shifts(lat);
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = lat.all_mask();
  std::uint64_t flips = 0, violations = 0;
  for (int n = 0; n < samples; ++n) {
    const SpinConfig cfg(rng() & mask, lat.size());
    const std::vector<int> before = cz_syndrome(cfg, lat);
    const std::uint64_t movable = shifts.flippable(cfg.bits());
    for (int i = 0; i < lat.num_sites(); ++i) {
      if (!((movable >> i) & 1U)) continue;
      ++flips;
      if (cz_syndrome(apply_flip(cfg, i), lat) != before) ++violations;
    }
  }
  r.passed = violations == 0 && samples >= 10000;
  r.detail = {{"samples", samples}, {"legal_flips", flips}, {"violations", violations}};
  r.summary = std::to_string(samples) + " samples, " + std::to_string(flips) + " flips, " + std::to_string(violations) +
              " violations";
  r.seconds = clock.seconds();
  return r;
}

inline CriterionResult stationarity(const BlockInventory& inv, const Lattice& lat, const SparseOperator& heff) {
  CriterionResult r{3, "stationarity"};
  const Stopwatch clock;
  std::size_t nonzero_rows = 0, nonzero_norms = 0, checked = 0;
  StateVector out(heff.dimension());
  for (const LogicalBlock& b : inv.blocks) {
    for (const SpinConfig& c : b.members) {
      ++checked;
      if (!heff.row_cols(c.index()).empty()) ++nonzero_rows;
      heff.multiply(basis_state(heff.dimension(), c.index()), out);
      if (norm(out) != 0.0) ++nonzero_norms;
    }
  }
  const double h = 1 / std::numbers::sqrt2;
  const StateVector psi0 = logical_state(inv.blocks.front(), lat, {Complex{h}, 0, Complex{h}, 0});
  const StateVector psit = evolve(psi0, heff, 100.0);
  const double overlap = std::abs(inner(psi0, psit));
  const bool stays = overlap >= 1 - 1e-8;
  r.passed = nonzero_rows == 0 && nonzero_norms == 0 && stays && checked == inv.code_states;
  r.detail = {{"code_states_checked", checked},
              {"nonzero_rows", nonzero_rows},
              {"nonzero_norms", nonzero_norms},
              {"overlap_t100", overlap}};
  r.summary = std::to_string(checked) + " code states annihilated by H_eff: " +
              (nonzero_rows == 0 && nonzero_norms == 0 ? "yes" : "no") + "; |<psi0|psi(100)>| = " + json(overlap).dump();
  r.seconds = clock.seconds();
  return r;
}

inline CriterionResult pauli_algebra(const BlockInventory& inv, const Lattice& lat) {
  CriterionResult r{4, "pauli_algebra"};
  const Stopwatch clock;
  double worst = 0;
  std::size_t checks = 0;
  for (const LogicalBlock& b : inv.blocks) {
    const AlgebraReport rep = verify_pauli_algebra(b, lat);
    worst = std::max(worst, rep.max_residual);
    checks += rep.checks.size();
  }
  const std::uint64_t nf = inv.code_states;
  const bool counts = 4 * inv.blocks.size() == nf && 2 * nf == 4 * inv.logical_qubits() && inv.degenerate.empty();
  r.passed = worst <= 1e-12 && counts;
  r.detail = {{"blocks", inv.blocks.size()},
              {"code_states", nf},
              {"logical_qubits", inv.logical_qubits()},
              {"identities_checked", checks},
              {"max_residual", worst}};
  r.summary = std::to_string(inv.blocks.size()) + " blocks, N_q=" + std::to_string(inv.logical_qubits()) +
              ", max residual " + json(worst).dump();
  r.seconds = clock.seconds();
  return r;
}

inline CriterionResult gates(const BlockInventory& inv, const Lattice& lat, std::uint64_t seed) {
  CriterionResult r{5, "gates"};
  const Stopwatch clock;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::normal_distribution<double> gauss;
  std::vector<double> phis(20);
  for (double& p : phis) p = angle(rng);

  double rz_error = 0, rz_leak = 0, rx_pi_fid = 1, rx_pi_phase = 0, rx_half_err = 0, cnot_err = 0, bell_err = 0;
  const Sublattice sides[2] = {Sublattice::A, Sublattice::B};
  for (const LogicalBlock& b : inv.blocks) {
    const LogicalOperators ops = logical_operators(b, lat);
    std::array<Complex, 4> amps;
    double n2 = 0;
    for (auto& a : amps) {
      a = {gauss(rng), gauss(rng)};
      n2 += std::norm(a);
    }
    for (auto& a : amps) a /= std::sqrt(n2);
    const StateVector psi = logical_state(b, lat, amps);
    for (int q = 0; q < 2; ++q) {
      for (double phi : phis) {
        const StateVector out = apply_rz(psi, b, lat, sides[q], phi);
        std::array<Complex, 4> want;
        for (int sa = 0; sa < 2; ++sa) {
          for (int sb = 0; sb < 2; ++sb) {
            const int bit = q == 0 ? sa : sb;
            want[member_index(sa, sb)] = amps[member_index(sa, sb)] * std::polar(1.0, -(bit ? -1.0 : 1.0) * phi / 2);
          }
        }
        rz_error = std::max(rz_error, max_abs_difference(out, logical_state(b, lat, want)));
        rz_leak = std::max(rz_leak, std::abs(1 - logical_tomography(out, ops).population));
      }
      const int ns = lat.sites_per_sublattice();
      Complex expected_phase{1, 0};
      for (int k = 0; k < ns; ++k) expected_phase *= Complex{0, -1};
      for (int sa = 0; sa < 2; ++sa) {
        for (int sb = 0; sb < 2; ++sb) {
          std::array<Complex, 4> in{}, flipped{};
          in[member_index(sa, sb)] = 1;
          flipped[member_index(q == 0 ? 1 - sa : sa, q == 1 ? 1 - sb : sb)] = 1;
          const StateVector basis = logical_state(b, lat, in);
          const StateVector out = apply_rx(basis, lat, sides[q], std::numbers::pi);
          const StateVector want = logical_state(b, lat, flipped);
          const GateReport rep = gate_report("rx", {{"theta", std::numbers::pi}}, "basis", basis, out, want, ops);
          rx_pi_fid = std::min(rx_pi_fid, rep.fidelity);
          rx_pi_phase = std::max(rx_pi_phase, std::abs(rep.global_phase - expected_phase));
          const StateVector half = apply_rx(basis, lat, sides[q], std::numbers::pi / 2);
          const double leak = 1 - logical_tomography(half, ops).population;
          rx_half_err =
              std::max(rx_half_err, std::abs(leak - (1 - rx_population_closed_form(std::numbers::pi / 2, ns))));
        }
      }
    }
    for (int sa = 0; sa < 2; ++sa) {
      for (int sb = 0; sb < 2; ++sb) {
        std::array<Complex, 4> in{}, want{};
        in[member_index(sa, sb)] = 1;
        want[member_index(sa, sb ^ sa)] = 1;
        const StateVector out = apply_logical_cnot(logical_state(b, lat, in), b, lat);
        cnot_err = std::max(cnot_err, max_abs_difference(out, logical_state(b, lat, want)));
      }
    }
    const double h = 1 / std::numbers::sqrt2;
    const StateVector bell = apply_logical_cnot(logical_state(b, lat, {Complex{h}, 0, Complex{h}, 0}), b, lat);
    const Tomography t = logical_tomography(bell, ops);
    bell_err = std::max({bell_err, std::abs(t.zz - 1), std::abs(t.xx - 1)});
  }
  const bool rz_ok = rz_error <= 1e-10 && rz_leak <= 1e-10;
  const bool rx_ok = rx_pi_fid >= 1 - 1e-10 && rx_pi_phase <= 1e-10;
  const bool half_ok = rx_half_err <= 1e-8;
  const bool cnot_ok = cnot_err == 0 && bell_err <= 1e-10;
  r.passed = rz_ok && rx_ok && half_ok && cnot_ok;
  r.detail = {{"blocks", inv.blocks.size()},
              {"rz_angles", phis},
              {"rz_max_error", rz_error},
              {"rz_max_leakage", rz_leak},
              {"rx_pi_min_fidelity", rx_pi_fid},
              {"rx_pi_phase_error", rx_pi_phase},
              {"rx_half_pi_leakage_error", rx_half_err},
              {"rx_half_pi_closed_form_leakage",
               1 - rx_population_closed_form(std::numbers::pi / 2, lat.sites_per_sublattice())},
              {"cnot_truth_table_max_error", cnot_err},
              {"bell_max_error", bell_err}};
  r.summary = std::string("Rz ") + (rz_ok ? "ok" : "FAIL") + ", Rx(pi) " + (rx_ok ? "ok" : "FAIL") + ", Rx(pi/2) leakage " +
              (half_ok ? "ok" : "FAIL") + ", CNOT/Bell " + (cnot_ok ? "ok" : "FAIL");
  r.seconds = clock.seconds();
  return r;
}

inline CriterionResult error_detection(const BlockInventory& inv, const Lattice& lat) {
  CriterionResult r{6, "error_detection"};
  const Stopwatch clock;
  std::size_t cases = 0, x_bad = 0, za_bad = 0, zb_bad = 0;
  for (const LogicalBlock& b : inv.blocks) {
    const LogicalOperators ops = logical_operators(b, lat);
    for (int site = 0; site < lat.num_sites(); ++site) {
      ++cases;
      const DetectionReport x = detection_experiment(b, lat, ops, site, Pauli::X);
      if (x.mixed || x.defects != 4) ++x_bad;
      const DetectionReport z = detection_experiment(b, lat, ops, site, Pauli::Z);
      const bool clean = !z.mixed && z.defects == 0 && std::abs(z.x_a_before - 1) <= 1e-10;
      if (lat.sublattice(site) == Sublattice::A) {
        if (!clean || std::abs(z.after.x[0] + 1) > 1e-10) ++za_bad;
      } else {
        if (!clean || std::abs(z.after.x[0] - 1) > 1e-10) ++zb_bad;
      }
    }
  }
  r.passed = x_bad + za_bad + zb_bad == 0;
  r.detail = {{"block_site_pairs", cases},
              {"x_exceptions", x_bad},
              {"z_a_exceptions", za_bad},
              {"z_b_exceptions", zb_bad}};
  r.summary = std::to_string(cases) + " (block, site) pairs, " + std::to_string(x_bad + za_bad + zb_bad) + " exceptions";
  r.seconds = clock.seconds();
  return r;
}

inline CriterionResult coherence_contrast(const BlockInventory& inv, const Lattice& lat, std::uint64_t seed,
                                          double lambda = 0.05, double tmax = 50.0, int steps = 50) {
  CriterionResult r{7, "coherence_contrast"};
  const Stopwatch clock;
  const LogicalBlock& b = inv.blocks.front();
  const std::vector<double> grid = uniform_grid(tmax, steps);
  ModelSpec sym;
  sym.perturbation = PerturbationKind::SymTransverse;
  sym.lambda = lambda;
  sym.seed = seed;
  ModelSpec brk = sym;
  brk.perturbation = PerturbationKind::BreakLongitudinalRandom;
  const CoherenceSeries s = coherence_experiment(b, lat, build_hamiltonian(lat, sym), grid);
  const CoherenceSeries k = coherence_experiment(b, lat, build_hamiltonian(lat, brk), grid);
  const double xs = std::abs(s.tomography.back().x[0]);
  const double xk = std::abs(k.tomography.back().x[0]);
  const bool passed = xs >= 10 * xk;
  // First-order dephasing of the A qubit: the two members differ in longitudinal energy by 2*lambda*imbalance.
  const auto signs = longitudinal_signs(lat, seed);
  int imbalance = 0;
  for (int i : lat.sites_of(Sublattice::A)) imbalance += b.reference_bit(i) ? -signs[i] : signs[i];
  r.passed = passed;
  r.detail = {{"L", lat.size()},
              {"lambda", lambda},
              {"tmax", tmax},
              {"steps", steps},
              {"seed", seed},
              {"block", 0},
              {"final_abs_X_A_symmetric", xs},
              {"final_abs_X_A_breaking", xk},
              {"ratio", xk > 0 ? json(xs / xk) : json("inf")},
              {"required_ratio", 10},
              {"breaking_imbalance", imbalance},
              {"breaking_predicted_X_A", std::cos(2 * lambda * imbalance * tmax)},
              {"symmetric", to_json(s)},
              {"breaking", to_json(k)}};
  r.summary = "|X_A(" + json(tmax).dump() + ")| sym=" + json(xs).dump() + " break=" + json(xk).dump() +
              " (need ratio >= 10)";
  r.seconds = clock.seconds();
  return r;
}

inline CriterionResult quadflip_check(int L = 2, int m = 3) {
  CriterionResult r{8, "quadflip"};
  const Stopwatch clock;
  const quadflip::ClockLattice lat(L);
  const Stopwatch decomp_clock;
  const quadflip::Decomposition d = quadflip::krylov_decompose_quadflip(lat, m);
  const double decomp_seconds = decomp_clock.seconds();
  const quadflip::MultipletAnalysis ma = quadflip::find_multiplets(d);
  bool sizes_ok = true;
  json orbit_sizes = json::object();
  for (const auto& [size, count] : ma.orbit_size_counts) {
    orbit_sizes[std::to_string(size)] = count;
    if (size != 1 && static_cast<int>(size) != m) sizes_ok = false;
  }
  double worst = 0;
  for (const auto& mp : ma.multiplets) worst = std::max(worst, quadflip::verify_qudit_algebra(quadflip::qudit_logicals(d, mp)).max());
  std::size_t label_violations = 0;
  std::set<quadflip::LoopLabel> labels;
  for (const auto& sec : d.sectors) {
    const quadflip::LoopLabel first = quadflip::loop_invariant(d.valid[sec.members.front()], lat);
    labels.insert(first);
    for (std::uint32_t idx : sec.members) {
      if (!(quadflip::loop_invariant(d.valid[idx], lat) == first)) ++label_violations;
    }
  }
  const bool fast = decomp_seconds < 10.0;
  r.passed = fast && sizes_ok && worst <= 1e-12 && label_violations == 0;
  r.detail = {{"L", L},
              {"m", m},
              {"valid_count", d.valid.size()},
              {"sector_count", d.sectors.size()},
              {"decomposition_under_10s", fast},
              {"orbit_size_counts", orbit_sizes},
              {"multiplets", ma.multiplets.size()},
              {"max_qudit_residual", worst},
              {"distinct_loop_labels", labels.size()},
              {"loop_label_violations", label_violations}};
  r.summary = std::to_string(d.valid.size()) + " valid, " + std::to_string(d.sectors.size()) + " sectors, " +
              std::to_string(ma.multiplets.size()) + " multiplets, residual " + json(worst).dump() + ", " +
              std::to_string(label_violations) + " label violations";
  r.seconds = clock.seconds();
  return r;
}

}  // namespace acceptance

/// Criteria 1 through 8. Determinism (criterion 9) is judged by the caller,
/// which compares serialized reports of repeated runs.
inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  const Lattice lat(acceptance::kAcceptanceL);
  const BlockInventory inv = enumerate_blocks(lat);
  std::vector<CriterionResult> out;
  out.push_back(acceptance::frozen_count());
  out.push_back(acceptance::syndrome_conservation(seed));
  out.push_back(acceptance::stationarity(inv, lat, build_heff(lat, 1.0)));
  out.push_back(acceptance::pauli_algebra(inv, lat));
  out.push_back(acceptance::gates(inv, lat, seed));
  out.push_back(acceptance::error_detection(inv, lat));
  out.push_back(acceptance::coherence_contrast(inv, lat, seed));
  out.push_back(acceptance::quadflip_check());
  return out;
}

inline json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"summary", r.summary}, {"detail", r.detail}};
}

inline json acceptance_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  json list = json::array();
  bool all = true;
  for (const auto& r : results) {
    list.push_back(to_json(r));
    all = all && r.passed;
  }
  return {{"schema", kSchemaVersion}, {"seed", seed}, {"criteria", list}, {"all_passed", all}};
}

}  // namespace fragmenta
