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


#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "fragmenta/fragmenta.hpp"

namespace {

using namespace fragmenta;

struct Common {
  std::string out;
  std::uint64_t seed = 7;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
}

std::string document(json j) {
  j["schema"] = kSchemaVersion;
  return j.dump(2) + "\n";
}

const LogicalBlock& pick_block(const BlockInventory& inv, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= inv.blocks.size()) {
    throw std::invalid_argument("block index out of range (0.." + std::to_string(inv.blocks.size() - 1) + ")");
  }
  return inv.blocks[index];
}

Sublattice parse_qubit(const std::string& s) {
  if (s == "A") return Sublattice::A;
  if (s == "B") return Sublattice::B;
  throw std::invalid_argument("qubit must be A or B");
}

json frozen_count(int L, const std::string& method) {
  json j{{"L", L}};
  std::optional<std::uint64_t> brute, transfer;
  if (method == "brute" || method == "both") {
    const EnumerationReport r = enumerate_frozen(Lattice(L));
    brute = r.count_code_states;
    j["brute_force"] = to_json(r);
  }
  if (method == "transfer" || method == "both") {
    const EnumerationReport r = count_code_states_report(L);
    transfer = r.count_code_states;
    j["transfer_matrix"] = to_json(r);
  }
  j["formula_value"] = frozen_formula(L);
  if (brute && transfer) j["methods_agree"] = *brute == *transfer;
  return j;
}

json krylov(int L) {
  const Lattice lat(L);
  const KrylovDecomposition d = krylov_decompose(lat);
  std::uint64_t frozen = 0;
  for (const auto& s : d.sectors) frozen += s.frozen ? 1 : 0;
  return {{"L", L}, {"sector_count", d.sectors.size()}, {"frozen_count", frozen}, {"sector_histogram", to_json(d.histogram())}};
}

json verify_algebra(int L, int block) {
  const Lattice lat(L);
  const BlockInventory inv = enumerate_blocks(lat);
  json list = json::array();
  double worst = 0;
  for (std::size_t k = 0; k < inv.blocks.size(); ++k) {
    if (block >= 0 && static_cast<int>(k) != block) continue;
    const AlgebraReport rep = verify_pauli_algebra(inv.blocks[k], lat);
    json entry = to_json(rep);
    entry["block"] = k;
    list.push_back(entry);
    worst = std::max(worst, rep.max_residual);
  }
  if (list.empty()) pick_block(inv, block);
  return {{"L", L}, {"blocks", list}, {"max_residual", worst}};
}

std::string gates_demo(int L, int block, const std::string& gate, const std::string& qubit, double theta, double phi) {
  const Lattice lat(L);
  const BlockInventory inv = enumerate_blocks(lat);
  const LogicalBlock& b = pick_block(inv, block);
  const LogicalOperators ops = logical_operators(b, lat);
  const Sublattice s = parse_qubit(qubit);
  Eigen::Matrix4cd u;
  std::vector<std::pair<std::string, double>> params;
  if (gate == "rx") {
    u = logical::on_qubit(s, logical::rx(theta));
    params = {{"theta", theta}};
  } else if (gate == "rz") {
    u = logical::on_qubit(s, logical::rz(phi));
    params = {{"phi", phi}};
  } else if (gate == "cnot") {
    u = logical::cnot_a_to_b();
  } else if (gate == "identity") {
    u = Eigen::Matrix4cd::Identity();
  } else {
    throw std::invalid_argument("unknown gate '" + gate + "'");
  }
  std::string out;
  for (int sa = 0; sa < 2; ++sa) {
    for (int sb = 0; sb < 2; ++sb) {
      std::array<Complex, 4> amps{};
      amps[member_index(sa, sb)] = 1;
      const StateVector in = logical_state(b, lat, amps);
      StateVector result;
      if (gate == "rx") {
        result = apply_rx(in, lat, s, theta);
      } else if (gate == "rz") {
        result = apply_rz(in, b, lat, s, phi);
      } else if (gate == "cnot") {
        result = apply_logical_cnot(in, b, lat);
      } else {
        result = in;
      }
      const StateVector expected = apply_logical_matrix(in, b, u);
      const std::string label = "|" + std::to_string(sa) + std::to_string(sb) + ">";
      json j = to_json(gate_report(gate, params, label, in, result, expected, ops));
      j["schema"] = kSchemaVersion;
      j["block"] = block;
      if (gate == "rx" || gate == "rz") j["qubit"] = qubit;
      if (gate == "rx") j["closed_form_population"] = rx_population_closed_form(theta, lat.sites_per_sublattice());
      out += j.dump() + "\n";
    }
  }
  return out;
}

json syndrome_demo(int L, int block, int site, const std::string& pauli) {
  const Lattice lat(L);
  const BlockInventory inv = enumerate_blocks(lat);
  const LogicalBlock& b = pick_block(inv, block);
  const LogicalOperators ops = logical_operators(b, lat);
  json list = json::array();
  for (int i = 0; i < lat.num_sites(); ++i) {
    if (site >= 0 && i != site) continue;
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      if (!pauli.empty() && parse_pauli(pauli) != p) continue;
      list.push_back(to_json(detection_experiment(b, lat, ops, i, p)));
    }
  }
  if (list.empty()) throw std::invalid_argument("site index out of range");
  return {{"L", L}, {"block", block}, {"code_syndrome", extract_syndrome(b.alpha, lat)}, {"reports", list}};
}

json quadflip_report(int L, int m) {
  const quadflip::ClockLattice lat(L);
  const quadflip::Decomposition d = quadflip::krylov_decompose_quadflip(lat, m);
  const quadflip::MultipletAnalysis ma = quadflip::find_multiplets(d);
  auto labels_of = [&](const std::vector<std::uint32_t>& sectors) {
    json arr = json::array();
    for (std::uint32_t s : sectors) arr.push_back(quadflip::loop_invariant(d.valid[d.sectors[s].members.front()], lat).str());
    return arr;
  };
  json multiplets = json::array(), residuals = json::array(), symmetric = json::array();
  for (const auto& mp : ma.multiplets) {
    const quadflip::QuditResiduals r = quadflip::verify_qudit_algebra(quadflip::qudit_logicals(d, mp));
    multiplets.push_back({{"size", mp.size()},
                          {"sector_size", d.sectors[mp.sectors.front()].members.size()},
                          {"sectors", mp.sectors},
                          {"invariant_labels", labels_of(mp.sectors)}});
    residuals.push_back({{"Z^m-I", r.z_power}, {"X^m-I", r.x_power}, {"ZX-wXZ", r.braiding}});
  }
  for (std::uint32_t s : ma.symmetric_sectors) {
    symmetric.push_back({{"sector", s}, {"size", d.sectors[s].members.size()}, {"invariant_label", labels_of({s})[0]}});
  }
  json orbit_sizes = json::object();
  for (const auto& [size, count] : ma.orbit_size_counts) orbit_sizes[std::to_string(size)] = count;
  return {{"L", L},
          {"m", m},
          {"valid_count", d.valid.size()},
          {"sector_count", d.sectors.size()},
          {"orbit_sizes", orbit_sizes},
          {"multiplets", multiplets},
          {"symmetric_sectors", symmetric},
          {"algebra_residuals", residuals}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fragmenta: Hilbert-space fragmentation and frozen-state logical qubits"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out", common.out, "Write the report to this file instead of stdout");
  app.add_option("--seed", common.seed, "Seed for every random choice");

  int L = 4;
  int block = 0;
  std::string method = "both";
  auto* fc = app.add_subcommand("frozen-count", "Count code states by brute force and/or transfer matrix");
  fc->add_option("--L", L, "Linear size")->capture_default_str();
  fc->add_option("--method", method, "brute|transfer|both")->check(CLI::IsMember({"brute", "transfer", "both"}))->capture_default_str();

  auto* kr = app.add_subcommand("krylov", "Full Krylov-sector decomposition and size histogram");
  kr->add_option("--L", L, "Linear size")->capture_default_str();

  auto* bl = app.add_subcommand("blocks", "Enumerate logical blocks");
  bl->add_option("--L", L, "Linear size")->capture_default_str();

  int alg_block = -1;
  auto* va = app.add_subcommand("verify-algebra", "Check the logical Pauli algebra on every block");
  va->add_option("--L", L, "Linear size")->capture_default_str();
  va->add_option("--block", alg_block, "Single block index (default: all)");

  std::string gate = "cnot", qubit = "A";
  double theta = std::numbers::pi, phi = std::numbers::pi / 2;
  auto* gd = app.add_subcommand("gates-demo", "Apply a transversal gate to each logical basis state (JSON lines)");
  gd->add_option("--L", L, "Linear size")->capture_default_str();
  gd->add_option("--block", block, "Block index")->capture_default_str();
  gd->add_option("--gate", gate, "rx|rz|cnot|identity")->check(CLI::IsMember({"rx", "rz", "cnot", "identity"}))->capture_default_str();
  gd->add_option("--qubit", qubit, "A|B")->check(CLI::IsMember({"A", "B"}))->capture_default_str();
  gd->add_option("--theta", theta, "R_x angle")->capture_default_str();
  gd->add_option("--phi", phi, "R_z angle")->capture_default_str();

  int site = -1;
  std::string pauli;
  auto* sd = app.add_subcommand("syndrome-demo", "Inject single Pauli errors and read the syndrome");
  sd->add_option("--L", L, "Linear size")->capture_default_str();
  sd->add_option("--block", block, "Block index")->capture_default_str();
  sd->add_option("--site", site, "Single site (default: all)");
  sd->add_option("--pauli", pauli, "X|Y|Z (default: all)")->check(CLI::IsMember({"X", "Y", "Z"}));

  std::string hamiltonian = "heff", perturbation = "none", csv;
  double lambda = 0, J = 1, h = 1, tmax = 50, tol = 1e-10;
  int steps = 50;
  auto* ev = app.add_subcommand("evolve", "Logical coherence under a (perturbed) Hamiltonian");
  ev->set_help_flag("--help", "Print this help message and exit");
  ev->add_option("--L", L, "Linear size")->capture_default_str();
  ev->add_option("--hamiltonian", hamiltonian, "heff|czp")->check(CLI::IsMember({"heff", "czp"}))->capture_default_str();
  ev->add_option("--perturbation", perturbation, "none|sym_transverse|sym_zz_nnn|break_longitudinal_random|break_zz_nn")
      ->check(CLI::IsMember({"none", "sym_transverse", "sym_zz_nnn", "break_longitudinal_random", "break_zz_nn"}))
      ->capture_default_str();
  ev->add_option("--lambda", lambda, "Perturbation strength")->capture_default_str();
  ev->add_option("--J", J, "Plaquette coupling (czp)")->capture_default_str();
  ev->add_option("--h", h, "Transverse field")->capture_default_str();
  ev->add_option("--tmax", tmax, "Final time")->capture_default_str();
  ev->add_option("--steps", steps, "Grid intervals")->check(CLI::PositiveNumber)->capture_default_str();
  ev->add_option("--tol", tol, "Propagator tolerance")->capture_default_str();
  ev->add_option("--block", block, "Block index")->capture_default_str();
  ev->add_option("--csv", csv, "Write the time series as CSV to this file");

  int m = 3;
  auto* qf = app.add_subcommand("quadflip", "Quad-flip clock model sectors and qudit multiplets");
  qf->add_option("--L", L, "Linear size")->capture_default_str();
  qf->add_option("--m", m, "Clock states")->capture_default_str();

  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fc) {
      emit(document(frozen_count(L, method)), common.out);
    } else if (*kr) {
      emit(document(krylov(L)), common.out);
    } else if (*bl) {
      emit(document(to_json(enumerate_blocks(Lattice(L)))), common.out);
    } else if (*va) {
      emit(document(verify_algebra(L, alg_block)), common.out);
    } else if (*gd) {
      emit(gates_demo(L, block, gate, qubit, theta, phi), common.out);
    } else if (*sd) {
      emit(document(syndrome_demo(L, block, site, pauli)), common.out);
    } else if (*ev) {
      const Lattice lat(L);
      const BlockInventory inv = enumerate_blocks(lat);
      const LogicalBlock& b = pick_block(inv, block);
      ModelSpec spec;
      spec.hamiltonian = parse_hamiltonian(hamiltonian);
      spec.perturbation = parse_perturbation(perturbation);
      spec.lambda = lambda;
      spec.J = J;
      spec.h = h;
      spec.seed = common.seed;
      const CoherenceSeries s = coherence_experiment(b, lat, build_hamiltonian(lat, spec), uniform_grid(tmax, steps), tol);
      if (!csv.empty()) emit(to_csv(s), csv);
      const Tomography& last = s.tomography.back();
      json j{{"L", L},
             {"hamiltonian", hamiltonian},
             {"perturbation", perturbation},
             {"lambda", lambda},
             {"J", J},
             {"h", h},
             {"tmax", tmax},
             {"steps", steps},
             {"tol", tol},
             {"seed", common.seed},
             {"block", block},
             {"final", to_json(last)},
             {"final_fidelity", s.fidelity.back()},
             {"series", to_json(s)}};
      emit(document(j), common.out);
    } else if (*qf) {
      emit(document(quadflip_report(L, m)), common.out);
    } else if (*st) {
      auto first = run_acceptance(common.seed);
      const std::string a = acceptance_json(first, common.seed).dump();
      const std::string b = acceptance_json(run_acceptance(common.seed), common.seed).dump();
      CriterionResult det{9, "determinism"};
      det.passed = a == b;
      det.summary = std::string("repeated in-process run ") + (det.passed ? "byte-identical" : "differs");
      det.detail = {{"bytes", a.size()}};
      first.push_back(det);
      bool all = true;
      for (const auto& r : first) {
        std::fprintf(stderr, "[%s] %d %s: %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                     r.summary.c_str(), r.seconds);
        all = all && r.passed;
      }
      emit(acceptance_json(first, common.seed).dump(2) + "\n", common.out);
      return all ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
