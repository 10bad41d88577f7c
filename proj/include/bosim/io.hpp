// Copyright 2026 The bosim Authors
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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bosim/distribution.hpp"
#include "bosim/interferometer.hpp"
#include "bosim/scattershot.hpp"
#include "bosim/validation.hpp"

namespace bosim {

/// Malformed or inconsistent input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

// Unitary: {"m": int, "re": [[...]], "im": [[...]]}
nlohmann::json unitary_to_json(const Unitary& u);
/// Rejects files whose unitarity deviation exceeds `tolerance`.
Unitary unitary_from_json(const nlohmann::json& j, double tolerance = 1e-6);

// Layout: [{"type":"coupler","modes":[i,i+1],"t2":x} | {"type":"phase","mode":i,"phi":x}, ...]
// m is the largest mode used. Layouts with untouched trailing modes are written
// as {"m": int, "elements": [...]}; both forms are read.
nlohmann::json layout_to_json(const CircuitLayout& layout);
CircuitLayout layout_from_json(const nlohmann::json& j);

// Bank: {"modes", "pulse_rate", "eta_detect", "sources": [{"id","epsilon",
// "eta_herald","input_mode","pulse_offset"}], "fixed_pair": {"modes",
// "epsilon","eta_herald","pulse_offset","required"}, "switcher": {"source","ports"}}
nlohmann::json bank_to_json(const SourceBank& bank);
SourceBank bank_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ValidationReport& report);

/// Reads a whole JSON file; FormatError on missing file or parse failure.
nlohmann::json read_json_file(const std::string& path);
/// Pretty-printed JSON plus trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& j);

Unitary load_unitary(const std::string& path, double tolerance = 1e-6);
CircuitLayout load_layout(const std::string& path);
SourceBank load_bank(const std::string& path);

/// Event log CSV: pulse_index,n,input,output with dash-separated input modes
/// and dash-separated occupied output modes (repeated per photon).
void write_event_log(std::ostream& out, const std::vector<Event>& events);
std::vector<Event> read_event_log(std::istream& in, int modes);
void save_event_log(const std::string& path, const std::vector<Event>& events);
std::vector<Event> load_event_log(const std::string& path, int modes);

/// occupation,probability
void write_distribution_csv(std::ostream& out, const OutputDistribution& dist);
/// event,step,counter
void write_trajectory_csv(std::ostream& out, const CounterTrajectory& trajectory);
/// N_set,P_success,stderr
void write_curve_csv(std::ostream& out, const SuccessCurve& curve);
/// step,mean,sigma,lo_<k>,hi_<k>...
void write_band_csv(std::ostream& out, const BandTable& table);
/// m x m grid of |u_ij|^2, rows are input modes.
void write_heatmap_csv(std::ostream& out, const Unitary& u);

std::string join_modes(const std::vector<int>& modes);
std::vector<int> parse_modes(const std::string& text);

}  // namespace bosim
