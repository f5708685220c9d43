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

#include <string>
#include <vector>

#include "json.hpp"

#include "fragmenta/dynamics.hpp"
#include "fragmenta/encoding.hpp"
#include "fragmenta/fragmentation.hpp"
#include "fragmenta/gates.hpp"
#include "fragmenta/quadflip.hpp"
#include "fragmenta/syndrome.hpp"

namespace fragmenta {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json to_json(const EnumerationReport& r) {
  json j{{"L", r.L},
         {"method", to_string(r.method)},
         {"count_code_states", r.count_code_states},
         {"formula_value", r.formula_value}};
  j["matches"]["code_states"] = r.code_states_match();
  if (r.count_unflippable) {
    j["count_unflippable"] = *r.count_unflippable;
    j["matches"]["unflippable"] = *r.unflippable_matches();
  }
  return j;
}

inline json to_json(const std::vector<SizeCount>& hist) {
  json arr = json::array();
  for (const auto& h : hist) arr.push_back({{"size", h.size}, {"count", h.count}});
  return arr;
}

inline json to_json(const LogicalBlock& b) {
  json members = json::array();
  for (const auto& m : b.members) members.push_back(format_config(m));
  return {{"representative", format_config(b.alpha)}, {"members", members}};
}

inline json to_json(const BlockInventory& inv) {
  json blocks = json::array();
  for (std::size_t k = 0; k < inv.blocks.size(); ++k) {
    json b = to_json(inv.blocks[k]);
    b["index"] = k;
    blocks.push_back(b);
  }
  json degenerate = json::array();
  for (const auto& c : inv.degenerate) degenerate.push_back(format_config(c));
  return {{"L", inv.L},
          {"code_states", inv.code_states},
          {"block_count", inv.blocks.size()},
          {"N_q", inv.logical_qubits()},
          {"degenerate_orbits", degenerate},
          {"blocks", blocks}};
}

inline json to_json(const AlgebraReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"identity", c.identity}, {"residual", c.residual}});
  return {{"max_residual", r.max_residual}, {"checks", checks}};
}

inline json to_json(const Tomography& t) {
  return {{"X_A", t.x[0]}, {"X_B", t.x[1]}, {"Y_A", t.y[0]}, {"Y_B", t.y[1]}, {"Z_A", t.z[0]},
          {"Z_B", t.z[1]}, {"ZZ", t.zz},    {"XX", t.xx},    {"YY", t.yy},    {"XZ", t.xz},
          {"population", t.population}};
}

inline json to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const GateReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return {{"gate", r.gate},
          {"params", params},
          {"input", r.input},
          {"before", to_json(r.before)},
          {"after", to_json(r.after)},
          {"population", r.population},
          {"leakage", r.leakage},
          {"fidelity", r.fidelity},
          {"global_phase", to_json(r.global_phase)}};
}

inline json to_json(const DetectionReport& r) {
  return {{"site", r.site},
          {"sublattice", std::string(1, to_char(r.sublattice))},
          {"pauli", std::string(1, to_char(r.pauli))},
          {"mixed_syndrome", r.mixed},
          {"defects", r.defects},
          {"detected", r.detected()},
          {"silent_logical_flip", r.silent_logical_flip()},
          {"X_A_before", r.x_a_before},
          {"after", to_json(r.after)}};
}

inline json to_json(const CoherenceSeries& s) {
  json t = json::array(), x = json::array(), y = json::array(), pop = json::array(), fid = json::array();
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    t.push_back(s.times[k]);
    x.push_back(s.tomography[k].x[0]);
    y.push_back(s.tomography[k].y[0]);
    pop.push_back(s.tomography[k].population);
    fid.push_back(s.fidelity[k]);
  }
  return {{"t", t}, {"X_A", x}, {"Y_A", y}, {"population", pop}, {"fidelity", fid}};
}

/// CSV rows t, reX, imX, population, fidelity, where reX + i imX is the
/// A-qubit coherence <X_A> + i <Y_A>.
inline std::string to_csv(const CoherenceSeries& s) {
  std::string out = "t,reX,imX,population,fidelity\n";
  char buf[256];
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.times[k], s.tomography[k].x[0],
                  s.tomography[k].y[0], s.tomography[k].population, s.fidelity[k]);
    out += buf;
  }
  return out;
}

}  // namespace fragmenta
